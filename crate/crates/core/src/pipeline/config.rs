use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::NormalScaling;
use crate::root_weyl::{CartanType, RootSystem, DEFAULT_RANK_CAP};
use crate::scalar::Scalar;

pub const RANK_CAP_ENV: &str = "WTORIC_RANK_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Classify,
    Algebra,
    Characters,
    Iso,
    Scaling,
    All,
}

impl CheckKind {
    pub const EACH: [CheckKind; 5] =
        [CheckKind::Classify, CheckKind::Algebra, CheckKind::Characters, CheckKind::Iso, CheckKind::Scaling];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Classify => "classify",
            CheckKind::Algebra => "algebra",
            CheckKind::Characters => "characters",
            CheckKind::Iso => "iso",
            CheckKind::Scaling => "scaling",
            CheckKind::All => "all",
        }
    }
}

/// A weight coordinate as written in the config: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    pub fn to_scalar(&self) -> Result<Scalar> {
        match self {
            Coord::Int(n) => Ok(Scalar::from_int(*n)),
            Coord::Text(s) => Scalar::parse_rational(s),
        }
    }
}

impl From<i64> for Coord {
    fn from(n: i64) -> Self {
        Coord::Int(n)
    }
}

/// One pipeline job, read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// `"A2"`, `"B3"`, `"I2(5)"`, or a bare family letter together with `rank`.
    pub type_label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Points of Λ in fundamental-weight coordinates.
    pub lambda_set: Vec<Vec<Coord>>,
    /// Simple-root indices, 1-based.
    #[serde(rename = "K", alias = "k", default)]
    pub k: Vec<usize>,
    pub checks: Vec<CheckKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rank_cap: Option<usize>,
    #[serde(default)]
    pub force_degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_scaling: Option<String>,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }

    /// Resolves `type_label` and `rank` to a Cartan type.
    pub fn cartan(&self) -> Result<CartanType> {
        let label = self.type_label.trim();
        let has_rank = label.chars().any(|c| c.is_ascii_digit());
        let cartan: CartanType = match (has_rank, self.rank) {
            (true, _) => label.parse()?,
            (false, Some(r)) => format!("{label}{r}").parse()?,
            (false, None) => return Err(Error::Config(format!("type {label:?} needs a rank"))),
        };
        if let Some(r) = self.rank {
            if r != cartan.rank {
                return Err(Error::Config(format!("rank {r} does not match type {cartan}")));
            }
        }
        Ok(cartan)
    }

    /// The requested checks with `all` expanded, in canonical order.
    pub fn expanded_checks(&self) -> BTreeSet<CheckKind> {
        if self.checks.contains(&CheckKind::All) {
            CheckKind::EACH.into_iter().collect()
        } else {
            self.checks.iter().copied().collect()
        }
    }

    pub fn scaling(&self) -> Result<NormalScaling> {
        match &self.normal_scaling {
            None => Ok(NormalScaling::Auto),
            Some(s) => NormalScaling::parse(s),
        }
    }

    /// Precedence: the config's own cap, then the environment, then the default.
    pub fn rank_cap(&self) -> Result<usize> {
        match self.max_rank_cap {
            Some(c) => Ok(c),
            None => env_rank_cap(),
        }
    }

    /// 0-based K, sorted and deduplicated.
    pub fn k_zero_based(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.k.iter().map(|&k| k - 1).collect();
        set.into_iter().collect()
    }

    /// Checks the config invariants and returns the parsed weight coordinates.
    pub fn validate(&self) -> Result<(CartanType, Vec<Vec<Scalar>>)> {
        let cartan = self.cartan()?;
        let n = cartan.rank;
        if self.checks.is_empty() {
            return Err(Error::Config("no checks requested".into()));
        }
        if self.lambda_set.is_empty() {
            return Err(Error::EmptyLambda);
        }
        if let Some(&k) = self.k.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::Config(format!("K index {k} is out of range 1..={n}")));
        }
        self.scaling()?;
        let mut coords = Vec::new();
        for (i, pt) in self.lambda_set.iter().enumerate() {
            if pt.len() != n {
                return Err(Error::Config(format!("lambda #{i} has {} coordinates, expected {n}", pt.len())));
            }
            let xs = pt.iter().map(Coord::to_scalar).collect::<Result<Vec<_>>>()?;
            if xs.iter().any(Scalar::is_negative) {
                return Err(Error::NotDominant(i));
            }
            coords.push(xs);
        }
        Ok((cartan, coords))
    }

    /// Λ in simple-root coordinates.
    pub fn lambda_vectors(&self, rs: &RootSystem, coords: &[Vec<Scalar>]) -> Result<Vec<crate::Vector>> {
        coords.iter().map(|c| rs.from_weight_coords(c)).collect()
    }
}

/// `WTORIC_RANK_CAP` if set, otherwise the default cap.
pub fn env_rank_cap() -> Result<usize> {
    match std::env::var(RANK_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{RANK_CAP_ENV}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_RANK_CAP),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> JobConfig {
        JobConfig::from_json(r#"{"type_label":"A2","lambda_set":[[1,1]],"K":[1,2],"checks":["all"]}"#).unwrap()
    }

    #[test]
    fn parse_and_validate() {
        let c = hexagon();
        let (t, coords) = c.validate().unwrap();
        assert_eq!(t.to_string(), "A2");
        assert_eq!(coords[0], vec![Scalar::one(), Scalar::one()]);
        assert_eq!(c.expanded_checks().len(), 5);
        assert_eq!(c.k_zero_based(), vec![0, 1]);
    }

    #[test]
    fn rational_strings_and_bare_family() {
        let c = JobConfig::from_json(
            r#"{"type_label":"B","rank":3,"lambda_set":[["1/2","0",2]],"k":[],"checks":["iso"]}"#,
        )
        .unwrap();
        let (t, coords) = c.validate().unwrap();
        assert_eq!(t.to_string(), "B3");
        assert_eq!(coords[0][0], Scalar::from_frac(1, 2));
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            r#"{"type_label":"A2","lambda_set":[[1,1]],"K":[3],"checks":["all"]}"#,
            r#"{"type_label":"A2","lambda_set":[[1,-1]],"K":[],"checks":["all"]}"#,
            r#"{"type_label":"A2","lambda_set":[[1,1]],"K":[],"checks":[]}"#,
            r#"{"type_label":"A2","lambda_set":[[1]],"K":[],"checks":["all"]}"#,
            r#"{"type_label":"E8","lambda_set":[[1]],"K":[],"checks":["all"]}"#,
            r#"{"type_label":"A2","rank":3,"lambda_set":[[1,1]],"K":[],"checks":["all"]}"#,
        ];
        for text in bad {
            assert!(JobConfig::from_json(text).and_then(|c| c.validate()).is_err(), "{text}");
        }
        assert!(JobConfig::from_json(r#"{"type_label":"A2","checks":["nope"]}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let c = hexagon();
        let again: JobConfig = serde_json::from_value(c.to_json()).unwrap();
        assert_eq!(c, again);
    }
}

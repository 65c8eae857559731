use serde_json::{json, Value};
use similar::TextDiff;

use super::config::JobConfig;
use super::report::{execute, Artifacts, Report, RunOptions};
use crate::error::{Error, Result};
use crate::polytope::FacetLabel;
use crate::scalar::Scalar;
use crate::sr_algebra::GradedAlgebra;

pub const EXAMPLE_NAMES: [&str; 2] = ["a2-hexagon", "i25-pentagon"];

const A2_HEXAGON_CONFIG: &str = r#"{
  "type_label": "A2",
  "lambda_set": [[1, 1]],
  "K": [1, 2],
  "checks": ["all"]
}"#;

const I25_PENTAGON_CONFIG: &str = r#"{
  "type_label": "I2(5)",
  "lambda_set": [[1, 0]],
  "K": [1, 2],
  "checks": ["all"]
}"#;

/// Hexagon facets are named E0..E5 counterclockwise starting from the facet
/// with functional (1, 0), i.e. by their pairings with (α₁, α₂).
const HEXAGON_LABELS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

const A2_HEXAGON_GOLDEN: &str = "\
order W = 6
I: X_{E0}X_{E2}
I: X_{E0}X_{E3}
I: X_{E0}X_{E4}
I: X_{E1}X_{E3}
I: X_{E1}X_{E4}
I: X_{E1}X_{E5}
I: X_{E2}X_{E4}
I: X_{E2}X_{E5}
I: X_{E3}X_{E5}
J: X_{E0} - X_{E2} - X_{E3} + X_{E5}
J: X_{E1} + X_{E2} - X_{E4} - X_{E5}
I_S: X_{E0}Y1
I_S: X_{E1}Y2
J_S: X_{E0} - 2Y1 + Y2
J_S: X_{E1} + Y1 - 2Y2
phi(X_{E0}) = X_{E0} + X_{E2} + X_{E4}
phi(X_{E1}) = X_{E1} + X_{E3} + X_{E5}
phi(Y1) = X_{E2} + X_{E3} + X_{E4}
phi(Y2) = X_{E3} + X_{E4} + X_{E5}
";

const I25_PENTAGON_GOLDEN: &str = "\
order W = 10
Tr(r1) on A^1 = 1
Tr(r2) on A^1 = 1 - √5
";

/// A canned run together with its comparison against the stored expectation.
pub struct ExampleOutcome {
    pub name: String,
    pub report: Report,
    pub expected: String,
    pub actual: String,
}

impl ExampleOutcome {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }

    /// Unified diff from expected to actual; empty when they agree.
    pub fn diff(&self) -> String {
        if self.matches() {
            return String::new();
        }
        TextDiff::from_lines(&self.expected, &self.actual)
            .unified_diff()
            .header(&format!("{}.golden", self.name), &format!("{}.actual", self.name))
            .to_string()
    }

    /// The report with a `golden` block appended.
    pub fn json(&self) -> Value {
        let mut doc = self.report.json.clone();
        doc.as_object_mut().expect("object").insert(
            "golden".into(),
            json!({
                "name": self.name,
                "matches": self.matches(),
                "expected": self.expected.lines().collect::<Vec<_>>(),
                "actual": self.actual.lines().collect::<Vec<_>>(),
                "diff": self.diff(),
            }),
        );
        doc
    }

    pub fn into_result(self) -> Result<ExampleOutcome> {
        if self.matches() {
            Ok(self)
        } else {
            Err(Error::GoldenMismatch { name: self.name.clone(), diff: self.diff() })
        }
    }
}

pub fn example_config(name: &str) -> Result<JobConfig> {
    match name {
        "a2-hexagon" => JobConfig::from_json(A2_HEXAGON_CONFIG),
        "i25-pentagon" => JobConfig::from_json(I25_PENTAGON_CONFIG),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

pub fn golden(name: &str) -> Result<&'static str> {
    match name {
        "a2-hexagon" => Ok(A2_HEXAGON_GOLDEN),
        "i25-pentagon" => Ok(I25_PENTAGON_GOLDEN),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// Runs a canned example and renders the lines its golden file covers.
pub fn example(name: &str) -> Result<ExampleOutcome> {
    let config = example_config(name)?;
    let (report, arts) = execute(&config, &RunOptions::default())?;
    let actual = match name {
        "a2-hexagon" => hexagon_lines(&arts),
        _ => pentagon_lines(&arts),
    }
    .unwrap_or_else(|e| format!("error: {e}\n"));
    Ok(ExampleOutcome { name: name.to_string(), report, expected: golden(name)?.to_string(), actual })
}

fn missing(what: &str) -> Error {
    Error::Config(format!("run produced no {what}"))
}

fn hexagon_lines(arts: &Artifacts) -> Result<String> {
    let p = arts.polytope.as_ref().ok_or_else(|| missing("polytope"))?;
    let a = arts.algebra.as_ref().ok_or_else(|| missing("algebra"))?;
    let iso = arts.iso.as_ref().ok_or_else(|| missing("quotient"))?;

    // E-index of each engine facet
    let e_index: Vec<usize> = p
        .facets
        .iter()
        .map(|f| {
            let key: Vec<Scalar> = f.functional.iter().cloned().collect();
            HEXAGON_LABELS
                .iter()
                .position(|&(x, y)| key == [Scalar::from_int(x), Scalar::from_int(y)])
                .unwrap_or(usize::MAX)
        })
        .collect();
    let x_name = |f: usize| -> String {
        match e_index[f] {
            usize::MAX => format!("X_{{F{f}}}"),
            e => format!("X_{{E{e}}}"),
        }
    };
    // quotient variables sort as X_{E*} by E-index, then Y_k
    let q_key = |l: usize| -> (usize, usize) {
        match iso.quotient.facets[l].label {
            FacetLabel::X(f) => (0, e_index[f]),
            FacetLabel::Y(k) => (1, k),
        }
    };
    let q_name = |l: usize| -> String {
        match iso.quotient.facets[l].label {
            FacetLabel::X(f) => x_name(f),
            FacetLabel::Y(k) => format!("Y{}", k + 1),
        }
    };

    let mut out = format!("order W = {}\n", arts.group.order());
    let mut products: Vec<(Vec<usize>, String)> = a
        .complex
        .minimal_non_faces()
        .iter()
        .map(|m| {
            let mut idx: Vec<usize> = m.iter().map(|&l| e_index[l as usize]).collect();
            idx.sort_unstable();
            let mut ls: Vec<usize> = m.iter().map(|&l| l as usize).collect();
            ls.sort_by_key(|&l| e_index[l]);
            (idx, ls.iter().map(|&l| x_name(l)).collect::<String>())
        })
        .collect();
    products.sort();
    for (_, s) in products {
        out += &format!("I: {s}\n");
    }
    for row in form_rows(a, |l| (0, e_index[l]), |l| x_name(l)) {
        out += &format!("J: {row}\n");
    }
    let qa = &iso.quotient_algebra;
    let mut qproducts: Vec<(Vec<(usize, usize)>, String)> = qa
        .complex
        .minimal_non_faces()
        .iter()
        .map(|m| {
            let mut ls: Vec<usize> = m.iter().map(|&l| l as usize).collect();
            ls.sort_by_key(|&l| q_key(l));
            (ls.iter().map(|&l| q_key(l)).collect(), ls.iter().map(|&l| q_name(l)).collect::<String>())
        })
        .collect();
    qproducts.sort();
    for (_, s) in qproducts {
        out += &format!("I_S: {s}\n");
    }
    for row in form_rows(qa, q_key, q_name) {
        out += &format!("J_S: {row}\n");
    }
    let mut order: Vec<usize> = (0..iso.quotient.facets.len()).collect();
    order.sort_by_key(|&l| q_key(l));
    for l in order {
        let terms = iso.psi.lifts[l].clone();
        let row = combination(terms, |f| (0, e_index[f]), x_name);
        out += &format!("phi({}) = {row}\n", q_name(l));
    }
    Ok(out)
}

fn pentagon_lines(arts: &Artifacts) -> Result<String> {
    let p = arts.polytope.as_ref().ok_or_else(|| missing("polytope"))?;
    let a = arts.algebra.as_ref().ok_or_else(|| missing("algebra"))?;
    let w = &arts.group;
    let mut out = format!("order W = {}\n", w.order());
    for i in 0..arts.root_system.rank() {
        let chi = a.graded_character(p.facet_perm(w.generator(i)))?;
        out += &format!("Tr(r{}) on A^1 = {}\n", i + 1, chi[1]);
    }
    Ok(out)
}

fn form_rows(
    a: &GradedAlgebra,
    key: impl Fn(usize) -> (usize, usize),
    name: impl Fn(usize) -> String,
) -> Vec<String> {
    (0..a.forms.rows())
        .map(|i| {
            let terms: Vec<(usize, Scalar)> =
                a.forms.row(i).iter().enumerate().map(|(l, c)| (l, c.clone())).collect();
            combination(terms, &key, &name)
        })
        .collect()
}

/// `X_{E0} - 2Y1 + Y2` style rendering, terms sorted by `key`.
fn combination(
    mut terms: Vec<(usize, Scalar)>,
    key: impl Fn(usize) -> (usize, usize),
    name: impl Fn(usize) -> String,
) -> String {
    terms.retain(|(_, c)| !c.is_zero());
    terms.sort_by_key(|(l, _)| key(*l));
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (l, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let coef = if mag.is_one() { String::new() } else { mag.to_string() };
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        s.push_str(&coef);
        s.push_str(&name(*l));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_golden_matches() {
        let out = example("a2-hexagon").unwrap();
        assert!(out.matches(), "{}", out.diff());
        assert!(out.report.passed());
    }

    #[test]
    fn pentagon_reports_engine_traces() {
        let out = example("i25-pentagon").unwrap();
        assert!(out.report.passed());
        assert!(out.actual.contains("Tr(r1) on A^1 = 1\n"));
        // an involution on a 3-dimensional space has an odd integer trace
        assert!(out.actual.contains("Tr(r2) on A^1 = 1\n"));
        assert!(out.diff().contains("-Tr(r2) on A^1 = 1 - √5"));
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(example("octagon"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn combination_rendering() {
        let t = vec![(2, Scalar::from_int(1)), (0, Scalar::from_int(-2)), (1, Scalar::zero())];
        assert_eq!(combination(t, |l| (0, l), |l| format!("Z{l}")), "-2Z0 + Z2");
    }
}

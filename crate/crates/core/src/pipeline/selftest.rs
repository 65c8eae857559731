use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::error::Result;
use crate::iso_map;
use crate::linalg::Vector;
use crate::polytope::{NormalScaling, WPolytope};
use crate::root_weyl::{CartanType, RootSystem, WeylGroup};
use crate::scalar::Scalar;
use crate::sr_algebra::{FaceComplex, GradedAlgebra};

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Largest rank swept.
    pub rank_cap: usize,
    /// Also sweep the degenerate polygons (λ on a wall).
    pub polygons: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { rank_cap: 3, polygons: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaKind {
    /// `{ρ}`.
    Rho,
    /// `{Nρ − α_i, Nρ − α_j}`, 1-based indices.
    TwoPoint { n: i64, i: usize, j: usize },
    /// `{ω_i}`, a point on every wall except `H_i`.
    Wall(usize),
}

impl LambdaKind {
    pub fn name(&self) -> String {
        match self {
            LambdaKind::Rho => "rho".into(),
            LambdaKind::TwoPoint { n, i, j } => format!("{n}rho-a{i},{n}rho-a{j}"),
            LambdaKind::Wall(i) => format!("w{i}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KResult {
    /// 1-based.
    pub k: Vec<usize>,
    pub dossier: bool,
    pub coefficients: bool,
    /// Structural invariants of the quotient algebra.
    pub structure: bool,
    pub error: Option<String>,
}

impl KResult {
    pub fn passed(&self) -> bool {
        self.dossier && self.coefficients && self.structure && self.error.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub cartan: CartanType,
    pub lambda: LambdaKind,
    pub nondegenerate: bool,
    pub structure: bool,
    /// Integrality of every graded trace; `None` when it is not expected.
    pub integral_characters: Option<bool>,
    pub k_results: Vec<KResult>,
    pub error: Option<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.structure
            && self.integral_characters != Some(false)
            && self.k_results.iter().all(KResult::passed)
    }
}

#[derive(Clone, Debug)]
pub struct SelftestSummary {
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    /// One row per case, one column per K subset.
    pub fn matrix(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let ks: Vec<String> = c
                .k_results
                .iter()
                .map(|r| format!("{}:{}", k_name(&r.k), if r.passed() { "ok" } else { "FAIL" }))
                .collect();
            let chars = match c.integral_characters {
                None => "-",
                Some(true) => "ok",
                Some(false) => "FAIL",
            };
            let _ = writeln!(
                s,
                "{:<6} {:<16} {:<4} struct:{:<4} chars:{:<4} {}{}",
                c.cartan.to_string(),
                c.lambda.name(),
                if c.passed() { "PASS" } else { "FAIL" },
                if c.structure { "ok" } else { "FAIL" },
                chars,
                ks.join(" "),
                c.error.as_ref().map(|e| format!("  error: {e}")).unwrap_or_default(),
            );
        }
        let total = self.cases.len();
        let good = self.cases.iter().filter(|c| c.passed()).count();
        let _ = writeln!(s, "{good}/{total} cases passed");
        s
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                json!({
                    "type": c.cartan.to_string(),
                    "lambda": c.lambda.name(),
                    "nondegenerate": c.nondegenerate,
                    "passed": c.passed(),
                    "structure": c.structure,
                    "integral_characters": c.integral_characters,
                    "error": c.error,
                    "K": c.k_results.iter().map(|r| json!({
                        "K": r.k,
                        "passed": r.passed(),
                        "dossier": r.dossier,
                        "coefficients": r.coefficients,
                        "structure": r.structure,
                        "error": r.error,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "passed": self.passed(), "cases": cases })
    }
}

fn k_name(k: &[usize]) -> String {
    if k.is_empty() {
        "-".into()
    } else {
        k.iter().map(|i| i.to_string()).collect()
    }
}

/// Every subset of `0..n`, by bitmask.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

/// The invariants every built algebra must satisfy; `perms` should act trivially on the top degree.
pub fn structural_invariants(a: &GradedAlgebra, perms: &[&[u32]]) -> bool {
    let n = a.rank();
    let dims = a.dims();
    (0..=n).all(|i| dims[i] as i64 == a.h[i] && a.h[i] == a.h[n - i])
        && a.pd_check()
        && a.vertex_monomial_consistency()
        && perms.iter().all(|p| a.acts_trivially_on_top(p))
}

/// `{Nρ − α_i, Nρ − α_j}` for the smallest `N` making both points
/// strictly dominant vertices of a simple polytope.
pub fn two_point_lambda(rs: &RootSystem, w: &WeylGroup) -> Option<(LambdaKind, WPolytope)> {
    let n = rs.rank();
    let pairs: &[(usize, usize)] = match n {
        0 | 1 => return None,
        2 => &[(0, 1)],
        _ => &[(1, 2), (0, 1), (0, 2)],
    };
    let rho = rs.rho();
    for big in 2..=12i64 {
        for &(i, j) in pairs {
            let base = rho.scale(&Scalar::from_int(big));
            let lambda: Vec<Vector> = [i, j].iter().map(|&k| base.sub(&rs.simple_root(k))).collect();
            if !lambda.iter().all(|l| rs.is_strictly_dominant(l)) {
                continue;
            }
            if let Ok(p) = WPolytope::build(rs, w, &lambda, NormalScaling::Auto) {
                if p.classification.simple {
                    return Some((LambdaKind::TwoPoint { n: big, i: i + 1, j: j + 1 }, p));
                }
            }
        }
    }
    None
}

/// Full dossier and structural checks for one polytope over every K.
pub fn check_case(rs: &RootSystem, w: &WeylGroup, p: &WPolytope, lambda: LambdaKind) -> CaseResult {
    let mut case = CaseResult {
        cartan: rs.cartan,
        lambda,
        nondegenerate: p.classification.nondegenerate,
        structure: false,
        integral_characters: None,
        k_results: Vec::new(),
        error: None,
    };
    let a = match GradedAlgebra::build(FaceComplex::from_polytope(p)) {
        Ok(a) => a,
        Err(e) => {
            case.error = Some(e.to_string());
            return case;
        }
    };
    let perms: Vec<&[u32]> = (0..w.order()).map(|g| p.facet_perm(g)).collect();
    case.structure = structural_invariants(&a, &perms);
    if rs.is_crystallographic() && p.classification.nondegenerate {
        let integral = w.conjugacy_classes().iter().all(|c| {
            a.graded_character(p.facet_perm(c[0])).map_or(false, |chi| chi.iter().all(Scalar::is_integer))
        });
        case.integral_characters = Some(integral);
    }
    for k in all_subsets(rs.rank()) {
        case.k_results.push(check_k(rs, w, p, &a, &k));
    }
    case
}

fn check_k(rs: &RootSystem, w: &WeylGroup, p: &WPolytope, a: &GradedAlgebra, k: &[usize]) -> KResult {
    let mut r = KResult {
        k: k.iter().map(|i| i + 1).collect(),
        dossier: false,
        coefficients: false,
        structure: false,
        error: None,
    };
    match iso_map::run_iso(rs, w, p, a, k) {
        Ok(iso) => {
            r.dossier = iso.dossier.all_passed();
            r.coefficients = iso.coefficients.all_hold();
            let id: Vec<u32> = (0..iso.quotient_algebra.complex.num_labels() as u32).collect();
            r.structure = structural_invariants(&iso.quotient_algebra, &[&id]);
        }
        Err(e) => r.error = Some(e.to_string()),
    }
    r
}

/// The polytopes of the sweep for one type: `{ρ}`, a two-point set, and
/// for rank 2 the points on the walls.
pub fn sweep_polytopes(
    rs: &RootSystem,
    w: &WeylGroup,
    polygons: bool,
) -> Vec<std::result::Result<(LambdaKind, WPolytope), (LambdaKind, String)>> {
    let mut out = Vec::new();
    let rho = rs.rho();
    out.push(
        WPolytope::build(rs, w, &[rho], NormalScaling::Auto)
            .map(|p| (LambdaKind::Rho, p))
            .map_err(|e| (LambdaKind::Rho, e.to_string())),
    );
    if rs.rank() >= 2 {
        match two_point_lambda(rs, w) {
            Some(x) => out.push(Ok(x)),
            None => out.push(Err((
                LambdaKind::TwoPoint { n: 0, i: 0, j: 0 },
                "no simple two-point polytope found".into(),
            ))),
        }
    }
    if polygons && rs.rank() == 2 {
        // I2(5) only with λ ∈ H₂, the other types with λ on each wall
        let walls: &[usize] = if rs.is_crystallographic() { &[0, 1] } else { &[0] };
        for &i in walls {
            let kind = LambdaKind::Wall(i + 1);
            out.push(
                WPolytope::build(rs, w, &[rs.fundamental_weight(i)], NormalScaling::Auto)
                    .map(|p| (kind.clone(), p))
                    .map_err(|e| (kind, e.to_string())),
            );
        }
    }
    out
}

pub fn selftest(options: &SelftestOptions) -> Result<SelftestSummary> {
    let start = Instant::now();
    let mut cases = Vec::new();
    for cartan in CartanType::supported().into_iter().filter(|t| t.rank <= options.rank_cap) {
        let rs = RootSystem::build(cartan, options.rank_cap)?;
        let w = WeylGroup::generate(&rs)?;
        for item in sweep_polytopes(&rs, &w, options.polygons) {
            cases.push(match item {
                Ok((kind, p)) => check_case(&rs, &w, &p, kind),
                Err((kind, e)) => CaseResult {
                    cartan,
                    lambda: kind,
                    nondegenerate: false,
                    structure: false,
                    integral_characters: None,
                    k_results: Vec::new(),
                    error: Some(e),
                },
            });
        }
    }
    Ok(SelftestSummary { cases, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets() {
        assert_eq!(all_subsets(2), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert_eq!(all_subsets(3).len(), 8);
    }

    #[test]
    fn rank_two_sweep_passes() {
        let s = selftest(&SelftestOptions { rank_cap: 2, polygons: true }).unwrap();
        // A1, A2, B2, G2, I2(5): ρ for all, two-point for rank 2, walls 2+2+2+1
        assert_eq!(s.cases.len(), 1 + 4 * 2 + 7);
        assert!(s.passed(), "{}", s.matrix());
    }

    #[test]
    fn two_point_sets_exist() {
        for label in ["A2", "B2", "G2", "I2(5)", "A3"] {
            let rs = RootSystem::from_label(label, 4).unwrap();
            let w = WeylGroup::generate(&rs).unwrap();
            let (_, p) = two_point_lambda(&rs, &w).unwrap();
            assert!(p.classification.simple && p.classification.nondegenerate);
            assert_eq!(p.lambda.len(), 2);
        }
    }
}

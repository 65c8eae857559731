//! Acceptance criteria, one PASS/FAIL line each.
//!
//! All checks are exact (zero tolerance). Runtime budgets are wall-clock limits
//! for this binary as built by `cargo test`. Criterion 8 runs only with
//! `WTORIC_ACCEPT_RANK4=1`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use wtoric_core::iso_map;
use wtoric_core::pipeline::selftest::{self, CaseResult, LambdaKind, SelftestOptions};
use wtoric_core::pipeline::{self};
use wtoric_core::polytope::{NormalScaling, WPolytope};
use wtoric_core::sr_algebra::{FaceComplex, GradedAlgebra};
use wtoric_core::{RootSystem, Scalar, WeylGroup};

const BUDGET_GOLDEN: Duration = Duration::from_secs(1);
const BUDGET_SWEEP: Duration = Duration::from_secs(5 * 60);
const BUDGET_POLYGONS: Duration = Duration::from_secs(30);
const BUDGET_SCALING: Duration = Duration::from_secs(60);
const BUDGET_RANK4: Duration = Duration::from_secs(30 * 60);
const RANK4_ENV: &str = "WTORIC_ACCEPT_RANK4";

struct Outcome {
    id: u32,
    title: &'static str,
    passed: Option<bool>,
    detail: String,
}

fn line(o: &Outcome) -> String {
    let verdict = match o.passed {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "SKIP",
    };
    format!("criterion {} [{}] {verdict}: {}", o.id, o.title, o.detail)
}

fn within(elapsed: Duration, budget: Duration) -> (bool, String) {
    (elapsed <= budget, format!("{:.2}s of {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()))
}

fn setup(label: &str) -> (RootSystem, WeylGroup) {
    let rs = RootSystem::from_label(label, 4).expect("supported type");
    let w = WeylGroup::generate(&rs).expect("group");
    (rs, w)
}

fn weights(rs: &RootSystem, xs: &[i64]) -> WPolytope {
    let (_, w) = setup(&rs.cartan.to_string());
    let coords: Vec<Scalar> = xs.iter().map(|&x| Scalar::from_int(x)).collect();
    let lambda = rs.from_weight_coords(&coords).unwrap();
    WPolytope::build(rs, &w, &[lambda], NormalScaling::Auto).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = pipeline::example("a2-hexagon").expect("example runs");
    let (fast, timing) = within(start.elapsed(), BUDGET_GOLDEN);

    // SR ideal: X_{Ei} X_{Ej} for i − j ≢ ±1 (mod 6), rebuilt independently of the golden text
    let expected_i: BTreeSet<String> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .filter(|(i, j)| (j - i) % 6 != 1 && (j - i) % 6 != 5)
        .map(|(i, j)| format!("I: X_{{E{i}}}X_{{E{j}}}"))
        .collect();
    let actual_i: BTreeSet<String> = out.actual.lines().filter(|l| l.starts_with("I: ")).map(String::from).collect();
    let ideal_ok = expected_i == actual_i && expected_i.len() == 9;
    let passed = out.matches() && ideal_ok && fast && out.report.passed();
    let mut detail = format!("golden {}, SR ideal {}, {timing}", out.matches(), ideal_ok);
    if !out.matches() {
        detail += &format!("\n{}", out.diff());
    }
    Outcome { id: 1, title: "A2 golden reproduction", passed: Some(passed), detail }
}

/// Criteria 2, 4 (rank ≤ 3 part), 5 and 6 (integrality part) share this sweep.
fn sweep() -> (Vec<CaseResult>, Duration) {
    let start = Instant::now();
    let s = selftest::selftest(&SelftestOptions { rank_cap: 3, polygons: false }).expect("sweep runs");
    (s.cases, start.elapsed())
}

fn polygons() -> (Vec<CaseResult>, Duration) {
    let start = Instant::now();
    let mut cases = Vec::new();
    for label in ["A2", "B2", "G2", "I2(5)"] {
        let (rs, w) = setup(label);
        // λ on each wall; for I₂(5) only λ ∈ H₂
        let walls: &[usize] = if label == "I2(5)" { &[0] } else { &[0, 1] };
        for &i in walls {
            let p = WPolytope::build(&rs, &w, &[rs.fundamental_weight(i)], NormalScaling::Auto).unwrap();
            assert!(!p.classification.nondegenerate);
            cases.push(selftest::check_case(&rs, &w, &p, LambdaKind::Wall(i + 1)));
        }
    }
    (cases, start.elapsed())
}

fn dossiers_pass(cases: &[CaseResult]) -> (bool, usize, Vec<String>) {
    let mut bad = Vec::new();
    let mut count = 0;
    for c in cases {
        if let Some(e) = &c.error {
            bad.push(format!("{} {}: {e}", c.cartan, c.lambda.name()));
        }
        for k in &c.k_results {
            count += 1;
            if !k.dossier || k.error.is_some() {
                bad.push(format!("{} {} K={:?}", c.cartan, c.lambda.name(), k.k));
            }
        }
    }
    (bad.is_empty(), count, bad)
}

fn criterion_2(cases: &[CaseResult], elapsed: Duration) -> Outcome {
    let (ok, count, bad) = dossiers_pass(cases);
    let simple = cases.iter().all(|c| c.error.is_none());
    let two_point = cases.iter().filter(|c| matches!(c.lambda, LambdaKind::TwoPoint { .. })).count();
    let (fast, timing) = within(elapsed, BUDGET_SWEEP);
    Outcome {
        id: 2,
        title: "isomorphism, rank <= 3 sweep",
        passed: Some(ok && simple && fast && two_point > 0),
        detail: format!("{count} (type, lambda, K) dossiers, {} failing {bad:?}, {timing}", bad.len()),
    }
}

fn criterion_3(cases: &[CaseResult], elapsed: Duration) -> Outcome {
    let (ok, count, bad) = dossiers_pass(cases);
    let (fast, timing) = within(elapsed, BUDGET_POLYGONS);
    Outcome {
        id: 3,
        title: "degenerate polygons",
        passed: Some(ok && fast && count == 7 * 4),
        detail: format!("{count} dossiers, {} failing {bad:?}, {timing}", bad.len()),
    }
}

fn criterion_4(cases: &[CaseResult]) -> Outcome {
    let mut algebras = 0;
    let mut bad = Vec::new();
    for c in cases {
        algebras += 1;
        if !c.structure {
            bad.push(format!("{} {}", c.cartan, c.lambda.name()));
        }
        for k in &c.k_results {
            algebras += 1;
            if !k.structure {
                bad.push(format!("{} {} K={:?}", c.cartan, c.lambda.name(), k.k));
            }
        }
    }
    Outcome {
        id: 4,
        title: "structural invariants",
        passed: Some(bad.is_empty()),
        detail: format!("{algebras} algebras, failing {bad:?}"),
    }
}

fn criterion_5(cases: &[CaseResult]) -> Outcome {
    let total: usize = cases.iter().map(|c| c.k_results.len()).sum();
    let bad: Vec<String> = cases
        .iter()
        .flat_map(|c| {
            c.k_results
                .iter()
                .filter(|k| !k.coefficients)
                .map(move |k| format!("{} {} K={:?}", c.cartan, c.lambda.name(), k.k))
        })
        .collect();
    Outcome {
        id: 5,
        title: "C-coefficient properties",
        passed: Some(bad.is_empty()),
        detail: format!("{total} coefficient systems, failing {bad:?}"),
    }
}

fn simple_traces(label: &str, xs: &[i64]) -> Vec<Scalar> {
    let (rs, w) = setup(label);
    let p = weights(&rs, xs);
    let a = GradedAlgebra::build(FaceComplex::from_polytope(&p)).unwrap();
    (0..rs.rank()).map(|i| a.graded_character(p.facet_perm(w.generator(i))).unwrap()[1].clone()).collect()
}

fn criterion_6(cases: &[CaseResult]) -> Outcome {
    let one = Scalar::one();
    let one_minus_sqrt5 = Scalar::one() - Scalar::sqrt_of(5).unwrap();

    let a2 = simple_traces("A2", &[1, 1]);
    let a2_ok = a2[0] == one && a2[1] == one;
    let i25 = simple_traces("I2(5)", &[1, 0]);
    let i25_ok = i25[0] == one && i25[1] == one_minus_sqrt5;

    let checked: Vec<&CaseResult> = cases.iter().filter(|c| c.integral_characters.is_some()).collect();
    let integral = checked.iter().all(|c| c.integral_characters == Some(true));

    Outcome {
        id: 6,
        title: "characters",
        passed: Some(a2_ok && i25_ok && integral && !checked.is_empty()),
        detail: format!(
            "A2 Tr(r1), Tr(r2) on A^1 = {}, {} (expected 1, 1); I2(5) Tr(r1), Tr(r2) on A^1 = {}, {} (expected 1, {}); \
             integral traces in {}/{} crystallographic non-degenerate cases",
            a2[0],
            a2[1],
            i25[0],
            i25[1],
            one_minus_sqrt5,
            checked.iter().filter(|c| c.integral_characters == Some(true)).count(),
            checked.len()
        ),
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut nontrivial = true;
    let mut runs = 0;
    for label in ["A3", "B3"] {
        let (rs, w) = setup(label);
        let rho = rs.rho();
        let root = WPolytope::build(&rs, &w, &[rho.clone()], NormalScaling::RootLattice).unwrap();
        let weight = WPolytope::build(&rs, &w, &[rho], NormalScaling::WeightLattice).unwrap();
        let factors = root.scaling_relative_to(&weight).unwrap();
        nontrivial &= factors.iter().any(|c| !c.is_one());
        for k in selftest::all_subsets(rs.rank()) {
            runs += 1;
            let r = iso_map::verify_scaling_invariance(&rs, &w, &root, &k, &factors).unwrap();
            if !r.passed() {
                bad.push(format!("{label} K={k:?}"));
            }
        }
    }
    let (fast, timing) = within(start.elapsed(), BUDGET_SCALING);
    Outcome {
        id: 7,
        title: "lattice independence",
        passed: Some(bad.is_empty() && nontrivial && fast),
        detail: format!("{runs} comparisons, non-trivial factors {nontrivial}, failing {bad:?}, {timing}"),
    }
}

fn criterion_8() -> Outcome {
    if std::env::var(RANK4_ENV).map_or(true, |v| v != "1") {
        return Outcome {
            id: 8,
            title: "rank-4 spot checks",
            passed: None,
            detail: format!("set {RANK4_ENV}=1 to run"),
        };
    }
    let mut passed = true;
    let mut parts = Vec::new();
    for label in ["A4", "B4"] {
        let start = Instant::now();
        let (rs, w) = setup(label);
        let p = WPolytope::build(&rs, &w, &[rs.rho()], NormalScaling::Auto).unwrap();
        let a = GradedAlgebra::build(FaceComplex::from_polytope(&p)).unwrap();
        for k in [vec![], vec![0], (0..rs.rank()).collect::<Vec<_>>()] {
            let ok = iso_map::run_iso(&rs, &w, &p, &a, &k).map_or(false, |r| r.dossier.all_passed());
            passed &= ok;
            parts.push(format!("{label} K={:?} {ok}", k.iter().map(|i| i + 1).collect::<Vec<_>>()));
        }
        let (fast, timing) = within(start.elapsed(), BUDGET_RANK4);
        passed &= fast;
        parts.push(timing);
    }
    Outcome { id: 8, title: "rank-4 spot checks", passed: Some(passed), detail: parts.join(", ") }
}

fn main() -> ExitCode {
    let mut outcomes = vec![criterion_1()];
    let (sweep_cases, sweep_time) = sweep();
    let (polygon_cases, polygon_time) = polygons();
    let all: Vec<CaseResult> = sweep_cases.iter().chain(&polygon_cases).cloned().collect();
    outcomes.push(criterion_2(&sweep_cases, sweep_time));
    outcomes.push(criterion_3(&polygon_cases, polygon_time));
    outcomes.push(criterion_4(&all));
    outcomes.push(criterion_5(&all));
    outcomes.push(criterion_6(&sweep_cases));
    outcomes.push(criterion_7());
    outcomes.push(criterion_8());

    for o in &outcomes {
        println!("{}", line(o));
    }
    let failed = outcomes.iter().filter(|o| o.passed == Some(false)).count();
    println!("acceptance: {} passed, {failed} failed, {} skipped", outcomes.iter().filter(|o| o.passed == Some(true)).count(), outcomes.iter().filter(|o| o.passed.is_none()).count());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::sync::OnceLock;

use proptest::prelude::*;

use wtoric_core::root_weyl::CartanType;
use wtoric_core::{RootSystem, Scalar, Vector, WeylGroup};

const LABELS: [&str; 6] = ["A2", "B2", "G2", "I2(5)", "A3", "H3"];

fn systems() -> &'static Vec<(RootSystem, WeylGroup)> {
    static CELL: OnceLock<Vec<(RootSystem, WeylGroup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        LABELS
            .iter()
            .map(|l| {
                let rs = RootSystem::from_label(l, 4).unwrap();
                let w = WeylGroup::generate(&rs).unwrap();
                (rs, w)
            })
            .collect()
    })
}

/// Σ c_i ω_i with `c_i ≥ 0` on `k_mask`, arbitrary sign elsewhere.
fn point(rs: &RootSystem, coeffs: &[i64], k_mask: u32) -> Vector {
    let c: Vec<Scalar> = coeffs
        .iter()
        .take(rs.rank())
        .enumerate()
        .map(|(i, &x)| Scalar::from_int(if k_mask >> i & 1 == 1 { x.abs() } else { x }))
        .collect();
    rs.from_weight_coords(&c).unwrap()
}

#[test]
fn every_element_is_an_isometry() {
    for cartan in CartanType::supported() {
        let rs = RootSystem::build(cartan, 4).unwrap();
        let w = WeylGroup::generate(&rs).unwrap();
        let g = rs.gram.matrix();
        for e in 0..w.order() {
            let m = &w.element(e).matrix;
            assert_eq!(m.transpose().mul(g).mul(m), *g, "{cartan} element {e}");
        }
    }
}

proptest! {
    #[test]
    fn chamber_partition(t in 0..LABELS.len(), coeffs in proptest::collection::vec(-3i64..=3, 3)) {
        let (rs, w) = &systems()[t];
        let x = point(rs, &coeffs, 0);
        let whole = w.whole();
        let mut dominant: Vec<Vector> = w.orbit(&whole, &x).into_iter().filter(|y| rs.is_dominant(y)).collect();
        dominant.dedup();
        prop_assert_eq!(dominant.len(), 1);
        let regular = rs.roots.iter().all(|a| !rs.inner(&x, a).is_zero());
        if regular {
            let hits = (0..w.order()).filter(|&g| rs.is_dominant(&w.apply(g, &x))).count();
            prop_assert_eq!(hits, 1);
        }
    }

    #[test]
    fn stabilizers_are_parabolic(t in 0..LABELS.len(), coeffs in proptest::collection::vec(-2i64..=2, 3), mask in 0u32..8) {
        let (rs, w) = &systems()[t];
        let n = rs.rank();
        let k: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let x = point(rs, &coeffs, mask);
        prop_assert!(rs.in_chamber(&x, &k));
        let sub = w.parabolic(&k);
        let stab = w.stabilizer_in(&sub, |g| w.apply(g, &x) == x);
        let fixing: Vec<usize> = k.iter().map(|&i| w.generator(i)).filter(|&g| w.apply(g, &x) == x).collect();
        prop_assert_eq!(stab.elements, w.generated_by(&fixing).elements);
    }

    #[test]
    fn dominance_drop(t in 0..LABELS.len(), coeffs in proptest::collection::vec(-3i64..=3, 3), mask in 0u32..8) {
        let (rs, w) = &systems()[t];
        let n = rs.rank();
        let k: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let x = point(rs, &coeffs, mask);
        for &s in &w.parabolic(&k).elements {
            let diff = w.apply(s, &x).sub(&x);
            for i in 0..n {
                if k.contains(&i) {
                    prop_assert!(!diff[i].is_positive());
                } else {
                    prop_assert!(diff[i].is_zero());
                }
            }
        }
    }
}

#[test]
fn classical_orders_and_root_counts() {
    // |W| from BFS against the classical formulas; root counts from the closure
    let expected_roots = [
        ("A1", 2),
        ("A4", 20),
        ("B4", 32),
        ("C4", 32),
        ("D4", 24),
        ("F4", 48),
        ("G2", 12),
        ("I2(5)", 10),
        ("H3", 30),
    ];
    for (label, roots) in expected_roots {
        let rs = RootSystem::from_label(label, 4).unwrap();
        assert_eq!(rs.roots.len(), roots, "{label}");
        let w = WeylGroup::generate(&rs).unwrap();
        assert_eq!(w.order(), rs.cartan.group_order(), "{label}");
    }
}

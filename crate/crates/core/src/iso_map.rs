//! The map from the algebra of the chamber quotient to the `W_K`-invariants of
//! the algebra of P, and its degree-by-degree verification.

use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, SparseRow, SparseRref, Vector};
use crate::polytope::{facet_orbits, quotient_polytope, FacetLabel, FacetOrbitData, QuotientPolytope, WPolytope};
use crate::root_weyl::{RootSystem, WeylGroup};
use crate::scalar::Scalar;
use crate::sr_algebra::{AlgebraElement, FaceComplex, GradedAlgebra, LabelPerm, Monomial};

/// Coefficients expressing `s(ℓ_F) − ℓ_F` in the wall normals `−α_k`, `k ∈ K`.
#[derive(Clone, Debug)]
pub struct CCoefficients {
    pub k: Vec<usize>,
    /// `values[r][c][j]` for representative r, coset c and `k = K[j]`.
    pub values: Vec<Vec<Vec<Scalar>>>,
    pub residual_zero: bool,
    pub nonnegative: bool,
    /// Positive only for `k` in the support of a reduced word of the coset representative.
    pub support: bool,
    /// Vanish on the identity coset.
    pub identity_zero: bool,
}

impl CCoefficients {
    pub fn all_hold(&self) -> bool {
        self.residual_zero && self.nonnegative && self.support && self.identity_zero
    }

    pub fn get(&self, rep: usize, coset: usize, k: usize) -> Option<&Scalar> {
        let j = self.k.iter().position(|&x| x == k)?;
        self.values.get(rep)?.get(coset)?.get(j)
    }
}

pub fn c_coefficients(p: &WPolytope, w: &WeylGroup, fo: &FacetOrbitData) -> Result<CCoefficients> {
    let n = p.rank;
    // columns −α_k for k ∈ K, in root coordinates
    let cols: Vec<Vector> = fo.k.iter().map(|&k| Vector::unit(n, k).neg()).collect();
    let a = if cols.is_empty() { Matrix::zeros(n, 0) } else { Matrix::from_columns(&cols) };
    let mut values = Vec::new();
    let (mut residual_zero, mut nonnegative, mut support, mut identity_zero) = (true, true, true, true);
    for (r, &f) in fo.reps.iter().enumerate() {
        let normal = &p.facets[f].normal;
        let mut per_coset = Vec::new();
        for (c, &s) in fo.cosets[r].iter().enumerate() {
            let diff = w.apply(s, normal).sub(normal);
            let x = if fo.k.is_empty() {
                if !diff.is_zero() {
                    return Err(Error::InconsistentCoefficients { facet: f, coset: c });
                }
                Vector::zeros(0)
            } else {
                solve(&a, &diff).ok_or(Error::InconsistentCoefficients { facet: f, coset: c })?
            };
            if !a.apply(&x).sub(&diff).is_zero() {
                residual_zero = false;
            }
            let letters = w.element(s).support();
            for (j, &k) in fo.k.iter().enumerate() {
                if x[j].is_negative() {
                    nonnegative = false;
                }
                if x[j].is_positive() && !letters.contains(&k) {
                    support = false;
                }
                if s == w.identity() && !x[j].is_zero() {
                    identity_zero = false;
                }
            }
            per_coset.push(x.0);
        }
        values.push(per_coset);
    }
    Ok(CCoefficients { k: fo.k.clone(), values, residual_zero, nonnegative, support, identity_zero })
}

/// Generator images of ψ in `A¹(P)`, one per quotient facet label.
#[derive(Clone, Debug)]
pub struct PsiMap {
    /// Images as linear combinations of the `X_F` before reduction modulo J.
    pub lifts: Vec<Vec<(usize, Scalar)>>,
    pub images: Vec<AlgebraElement>,
    /// Facet permutations of the simple reflections `r_k`, `k ∈ K`.
    pub k_generators: Vec<LabelPerm>,
}

pub fn build_psi(
    quotient: &QuotientPolytope,
    ambient: &GradedAlgebra,
    p: &WPolytope,
    fo: &FacetOrbitData,
    cc: &CCoefficients,
    w: &WeylGroup,
) -> Result<PsiMap> {
    let x_labels: Vec<usize> = quotient
        .facets
        .iter()
        .filter_map(|f| if let FacetLabel::X(i) = f.label { Some(i) } else { None })
        .collect();
    if x_labels != fo.reps {
        return Err(Error::LabelMismatch(format!("quotient X labels {x_labels:?}, representatives {:?}", fo.reps)));
    }
    let mut lifts = Vec::new();
    let mut images = Vec::new();
    for qf in &quotient.facets {
        let coeffs: Vec<(usize, Scalar)> = match qf.label {
            FacetLabel::X(f) => {
                let r = fo.reps.iter().position(|&x| x == f).expect("checked above");
                fo.facet_of[r].iter().map(|&g| (g, Scalar::one())).collect()
            }
            FacetLabel::Y(k) => {
                if !fo.k.contains(&k) {
                    return Err(Error::LabelMismatch(format!("wall {} is not in K", k + 1)));
                }
                let mut out = Vec::new();
                for (r, cosets) in fo.facet_of.iter().enumerate() {
                    for (c, &g) in cosets.iter().enumerate() {
                        let v = cc.get(r, c, k).expect("k in K");
                        if !v.is_zero() {
                            out.push((g, v.clone()));
                        }
                    }
                }
                out
            }
        };
        images.push(ambient.linear(&coeffs));
        lifts.push(coeffs);
    }
    let k_generators = fo.k.iter().map(|&k| p.facet_perm(w.generator(k)).to_vec()).collect();
    Ok(PsiMap { lifts, images, k_generators })
}

impl PsiMap {
    /// ψ of a quotient monomial, by multiplying generator images.
    pub fn evaluate(&self, ambient: &GradedAlgebra, m: &[u32]) -> AlgebraElement {
        m.iter().fold(ambient.one(), |acc, &l| ambient.multiply_or_zero(&acc, &self.images[l as usize]))
    }
}

/// A failed check instance: the monomial (as labels) and its reduced image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub input: Vec<String>,
    pub image: Vec<(String, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl Check {
    fn new() -> Self {
        Check { passed: true, witnesses: vec![] }
    }

    fn fail(&mut self, w: Witness) {
        self.passed = false;
        self.witnesses.push(w);
    }
}

#[derive(Clone, Debug)]
pub struct Dossier {
    pub kernel_i: Check,
    pub kernel_j: Check,
    pub invariance: Check,
    pub dimension: Check,
    pub bijectivity: Check,
    /// Every Stanley–Reisner generator of the quotient with its image.
    pub kernel_i_evaluations: Vec<Witness>,
    pub quotient_dims: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub image_ranks: Vec<usize>,
}

impl Dossier {
    pub fn all_passed(&self) -> bool {
        self.kernel_i.passed
            && self.kernel_j.passed
            && self.invariance.passed
            && self.dimension.passed
            && self.bijectivity.passed
    }
}

fn describe(ambient: &GradedAlgebra, x: &AlgebraElement) -> Vec<(String, Scalar)> {
    let basis = ambient.basis_monomials(x.degree);
    ambient
        .basis_coords(x)
        .into_iter()
        .zip(basis)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, m)| (monomial_name(&ambient.complex, m), c))
        .collect()
}

pub fn monomial_name(fc: &FaceComplex, m: &[u32]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|&l| fc.labels[l as usize].as_str()).collect::<Vec<_>>().join("*")
}

pub fn verify_psi(psi: &PsiMap, quotient: &GradedAlgebra, ambient: &GradedAlgebra) -> Result<Dossier> {
    let qc = &quotient.complex;
    let n = ambient.rank();

    let mut kernel_i = Check::new();
    let mut evaluations = Vec::new();
    for m in qc.minimal_non_faces() {
        let img = psi.evaluate(ambient, &m);
        let wit = Witness {
            input: m.iter().map(|&l| qc.labels[l as usize].clone()).collect(),
            image: if img.degree <= n { describe(ambient, &img) } else { vec![] },
        };
        if !img.is_zero() {
            kernel_i.fail(wit.clone());
        }
        evaluations.push(wit);
    }

    let mut kernel_j = Check::new();
    for i in 0..n {
        let mut acc = AlgebraElement { degree: 1, coords: SparseRow::new() };
        for (l, img) in psi.images.iter().enumerate() {
            let c = &quotient.forms[(i, l)];
            if !c.is_zero() {
                acc = acc.add(&img.scale(c));
            }
        }
        let acc = ambient.normal_form(&acc);
        if !acc.is_zero() {
            kernel_j.fail(Witness { input: vec![format!("eta{}", i + 1)], image: describe(ambient, &acc) });
        }
    }

    let mut invariance = Check::new();
    for (l, img) in psi.images.iter().enumerate() {
        for (gi, g) in psi.k_generators.iter().enumerate() {
            let moved = ambient.act(g, img);
            if moved != *img {
                invariance.fail(Witness {
                    input: vec![qc.labels[l].clone(), format!("generator {gi}")],
                    image: describe(ambient, &moved),
                });
            }
        }
    }

    let mut dimension = Check::new();
    let mut bijectivity = Check::new();
    let mut quotient_dims = Vec::new();
    let mut invariant_dims = Vec::new();
    let mut image_ranks = Vec::new();
    for d in 0..=n {
        let inv = ambient.invariant_basis(&psi.k_generators, d)?;
        let qdim = quotient.dim(d);
        quotient_dims.push(qdim);
        invariant_dims.push(inv.len());
        if qdim != inv.len() {
            dimension.fail(Witness {
                input: vec![format!("degree {d}")],
                image: vec![
                    ("quotient".into(), Scalar::from_int(qdim as i64)),
                    ("invariants".into(), Scalar::from_int(inv.len() as i64)),
                ],
            });
        }
        let images: Vec<SparseRow> = quotient
            .basis_monomials(d)
            .iter()
            .map(|m| psi.evaluate(ambient, m).coords)
            .collect();
        let cols = ambient.sr_dim(d);
        let rank = SparseRref::new(images.iter().filter(|r| !r.is_empty()).cloned().collect(), cols).rank();
        let mut union: Vec<SparseRow> = images.into_iter().filter(|r| !r.is_empty()).collect();
        union.extend(inv.iter().map(|x| x.coords.clone()));
        let union_rank = SparseRref::new(union, cols).rank();
        image_ranks.push(rank);
        if rank != qdim || rank != inv.len() || union_rank != inv.len() {
            bijectivity.fail(Witness {
                input: vec![format!("degree {d}")],
                image: vec![
                    ("rank".into(), Scalar::from_int(rank as i64)),
                    ("span with invariants".into(), Scalar::from_int(union_rank as i64)),
                ],
            });
        }
    }

    Ok(Dossier {
        kernel_i,
        kernel_j,
        invariance,
        dimension,
        bijectivity,
        kernel_i_evaluations: evaluations,
        quotient_dims,
        invariant_dims,
        image_ranks,
    })
}

/// Everything computed for one parabolic subgroup.
#[derive(Clone, Debug)]
pub struct IsoResult {
    pub orbits: FacetOrbitData,
    pub quotient: QuotientPolytope,
    pub quotient_algebra: GradedAlgebra,
    pub coefficients: CCoefficients,
    pub psi: PsiMap,
    pub dossier: Dossier,
}

/// Facet orbits, quotient, coefficients, ψ and its dossier for one K.
pub fn run_iso(rs: &RootSystem, w: &WeylGroup, p: &WPolytope, ambient: &GradedAlgebra, k: &[usize]) -> Result<IsoResult> {
    let orbits = facet_orbits(p, rs, w, k)?;
    let quotient = quotient_polytope(p, rs, &orbits)?;
    let quotient_algebra = GradedAlgebra::build(FaceComplex::from_quotient(&quotient))?;
    let coefficients = c_coefficients(p, w, &orbits)?;
    let psi = build_psi(&quotient, ambient, p, &orbits, &coefficients, w)?;
    let dossier = verify_psi(&psi, &quotient_algebra, ambient)?;
    Ok(IsoResult { orbits, quotient, quotient_algebra, coefficients, psi, dossier })
}

#[derive(Clone, Debug)]
pub struct ScalingReport {
    pub factors: Vec<Scalar>,
    pub dims_match: bool,
    /// The rescaled linear forms map into the original ideal.
    pub kernel_generators: bool,
    /// `X_F ↦ X_F / c_F` is bijective in every degree.
    pub bijective: bool,
    pub rescaled_dossier: bool,
}

impl ScalingReport {
    pub fn passed(&self) -> bool {
        self.dims_match && self.kernel_generators && self.bijective && self.rescaled_dossier
    }
}

/// Checks that `X_F ↦ X_F / c_F` identifies the algebra built from the
/// rescaled normals `c_F ℓ_F` with the original one, for P and for the quotient.
fn compare_rescaled(original: &GradedAlgebra, rescaled: &GradedAlgebra, factors: &[Scalar]) -> (bool, bool, bool) {
    let n = original.rank();
    let dims_match = original.dims() == rescaled.dims();
    let inv: Vec<Scalar> = factors.iter().map(|c| c.inverse().expect("positive")).collect();
    let sigma = |m: &Monomial| -> AlgebraElement {
        let c: Scalar = m.iter().map(|&l| inv[l as usize].clone()).product();
        original.monomial(m).expect("degree within range").scale(&c)
    };
    let kernel = (0..n).all(|i| {
        let coeffs: Vec<(usize, Scalar)> = (0..rescaled.complex.num_labels())
            .map(|l| (l, &rescaled.forms[(i, l)] * &inv[l]))
            .collect();
        original.linear(&coeffs).is_zero()
    });
    let bijective = dims_match
        && (0..=n).all(|d| {
            let rows: Vec<SparseRow> = rescaled.basis_monomials(d).iter().map(|m| sigma(m).coords).collect();
            SparseRref::new(rows, original.sr_dim(d)).rank() == original.dim(d)
        });
    (dims_match, kernel, bijective)
}

/// Rebuilds P, the quotient for `k` and both algebras with each facet orbit's
/// normals multiplied by `per_orbit[o] > 0`, and compares with the original.
pub fn verify_scaling_invariance(
    rs: &RootSystem,
    w: &WeylGroup,
    p: &WPolytope,
    k: &[usize],
    per_orbit: &[Scalar],
) -> Result<ScalingReport> {
    let q = p.rescaled(per_orbit)?;
    let a = GradedAlgebra::build(FaceComplex::from_polytope(p))?;
    let b = GradedAlgebra::build(FaceComplex::from_polytope(&q))?;
    let facet_factors: Vec<Scalar> = p.facets.iter().map(|f| per_orbit[f.orbit].clone()).collect();
    let (d1, k1, b1) = compare_rescaled(&a, &b, &facet_factors);

    let orig = run_iso(rs, w, p, &a, k)?;
    let resc = run_iso(rs, w, &q, &b, k)?;
    let quotient_factors: Vec<Scalar> = orig
        .quotient
        .facets
        .iter()
        .map(|f| match f.label {
            FacetLabel::X(i) => facet_factors[i].clone(),
            FacetLabel::Y(_) => Scalar::one(),
        })
        .collect();
    let (d2, k2, b2) = compare_rescaled(&orig.quotient_algebra, &resc.quotient_algebra, &quotient_factors);
    Ok(ScalingReport {
        factors: per_orbit.to_vec(),
        dims_match: d1 && d2,
        kernel_generators: k1 && k2,
        bijective: b1 && b2,
        rescaled_dossier: resc.dossier.all_passed(),
    })
}

/// Per-facet scalings must be positive and constant on W-orbits; returns the per-orbit factors.
pub fn orbit_factors(p: &WPolytope, per_facet: &[Scalar]) -> Result<Vec<Scalar>> {
    if per_facet.len() != p.num_facets() {
        return Err(Error::InvalidScaling(format!("expected {} factors, got {}", p.num_facets(), per_facet.len())));
    }
    let mut out: Vec<Option<Scalar>> = vec![None; p.num_orbits()];
    for (f, c) in p.facets.iter().zip(per_facet) {
        if !c.is_positive() {
            return Err(Error::InvalidScaling("factors must be positive".into()));
        }
        match &out[f.orbit] {
            Some(prev) if prev != c => {
                return Err(Error::InvalidScaling(format!("factor is not constant on orbit {}", f.orbit)))
            }
            _ => out[f.orbit] = Some(c.clone()),
        }
    }
    Ok(out.into_iter().map(|c| c.expect("every orbit is nonempty")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::NormalScaling;

    fn setup(label: &str, coords: &[i64]) -> (RootSystem, WeylGroup, WPolytope, GradedAlgebra) {
        let rs = RootSystem::from_label(label, 4).unwrap();
        let w = WeylGroup::generate(&rs).unwrap();
        let l: Vec<Scalar> = coords.iter().map(|&c| Scalar::from_int(c)).collect();
        let p = WPolytope::build(&rs, &w, &[rs.from_weight_coords(&l).unwrap()], NormalScaling::Auto).unwrap();
        let a = GradedAlgebra::build(FaceComplex::from_polytope(&p)).unwrap();
        (rs, w, p, a)
    }

    fn ints(v: &[Scalar]) -> Vec<i64> {
        v.iter().map(|x| x.to_f64() as i64).collect()
    }

    #[test]
    fn hexagon_coefficients() {
        let (rs, w, p, _) = setup("A2", &[1, 1]);
        let fo = facet_orbits(&p, &rs, &w, &[0, 1]).unwrap();
        let cc = c_coefficients(&p, &w, &fo).unwrap();
        assert!(cc.all_hold());
        // E0 orbit: cosets e, r1, r2 r1 land on E0, E2, E4
        let words: Vec<String> = fo.cosets[0].iter().map(|&s| w.element(s).word_string()).collect();
        assert_eq!(words, vec!["e", "r1", "r2 r1"]);
        assert_eq!(ints(&cc.values[0][0]), vec![0, 0]);
        assert_eq!(ints(&cc.values[0][1]), vec![1, 0]);
        assert_eq!(ints(&cc.values[0][2]), vec![1, 1]);
    }

    #[test]
    fn hexagon_psi() {
        let (rs, w, p, a) = setup("A2", &[1, 1]);
        let res = run_iso(&rs, &w, &p, &a, &[0, 1]).unwrap();
        let d = &res.dossier;
        assert!(d.all_passed(), "{d:?}");
        assert_eq!(d.quotient_dims, vec![1, 2, 1]);
        assert_eq!(d.invariant_dims, vec![1, 2, 1]);
        // X_E0 * Y1 maps to zero
        assert!(d.kernel_i_evaluations.iter().any(|e| e.input == ["X0", "Y1"] && e.image.is_empty()));
        // Y1 ↦ X_E2 + X_E3 + X_E4, which are facets 1, 5, 2
        let y1 = &res.psi.images[2];
        let expect = a.linear(&[(1, Scalar::one()), (5, Scalar::one()), (2, Scalar::one())]);
        assert_eq!(*y1, expect);
    }

    #[test]
    fn trivial_k_is_identity() {
        let (rs, w, p, a) = setup("B2", &[1, 1]);
        let res = run_iso(&rs, &w, &p, &a, &[]).unwrap();
        assert!(res.dossier.all_passed());
        for (l, img) in res.psi.images.iter().enumerate() {
            assert_eq!(*img, a.linear(&[(l, Scalar::one())]));
        }
    }

    #[test]
    fn pentagon_all_k() {
        let (rs, w, p, a) = setup("I2(5)", &[1, 0]);
        for k in [vec![], vec![0], vec![1], vec![0, 1]] {
            let res = run_iso(&rs, &w, &p, &a, &k).unwrap();
            assert!(res.dossier.all_passed(), "K = {k:?}");
            assert!(res.coefficients.all_hold());
        }
    }

    #[test]
    fn b2_single_wall_images() {
        let (rs, w, p, a) = setup("B2", &[1, 1]);
        let res = run_iso(&rs, &w, &p, &a, &[0]).unwrap();
        // independent orbit enumeration under {e, r1}
        let r1 = p.facet_perm(w.generator(0));
        for (l, qf) in res.quotient.facets.iter().enumerate() {
            if let FacetLabel::X(f) = qf.label {
                let mut orbit = vec![f, r1[f] as usize];
                orbit.sort();
                orbit.dedup();
                let coeffs: Vec<(usize, Scalar)> = orbit.into_iter().map(|g| (g, Scalar::one())).collect();
                assert_eq!(res.psi.images[l], a.linear(&coeffs));
            }
        }
        assert!(res.dossier.all_passed());
    }

    #[test]
    fn scaling_checks() {
        let (rs, w, p, _) = setup("A2", &[1, 1]);
        let ones = vec![Scalar::one(); p.num_orbits()];
        assert!(verify_scaling_invariance(&rs, &w, &p, &[0, 1], &ones).unwrap().passed());
        let three = vec![Scalar::from_int(3), Scalar::one()];
        assert!(verify_scaling_invariance(&rs, &w, &p, &[0, 1], &three).unwrap().passed());
        let neg = vec![Scalar::from_int(-1), Scalar::one()];
        assert!(matches!(verify_scaling_invariance(&rs, &w, &p, &[0, 1], &neg), Err(Error::InvalidScaling(_))));
        let mut per_facet = vec![Scalar::one(); p.num_facets()];
        per_facet[0] = Scalar::from_int(2);
        assert!(orbit_factors(&p, &per_facet).is_err());
    }
}

//! W-symmetric polytopes `conv(W·Λ)`, their facet orbits and chamber quotients.
//!
//! Facets are found by exact gift-wrapping. Symmetry enters only afterwards,
//! to fix the ordering and scaling of normals and to cross-check the hull.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Vector};
use crate::root_weyl::{RootSystem, Subgroup, WeylGroup};
use crate::scalar::Scalar;

/// How the normal of each facet-orbit representative is scaled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormalScaling {
    /// `RootLattice` for crystallographic types, `LeadingUnit` otherwise.
    #[default]
    Auto,
    /// `(⟨ℓ, αᵢ⟩)ᵢ` is a primitive integer vector.
    RootLattice,
    /// `(⟨ℓ, ωᵢ⟩)ᵢ` is a primitive integer vector.
    WeightLattice,
    /// First nonzero `⟨ℓ, αᵢ⟩` is ±1.
    LeadingUnit,
}

impl NormalScaling {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "root" | "root-lattice" => Ok(Self::RootLattice),
            "weight" | "weight-lattice" => Ok(Self::WeightLattice),
            "unit" | "leading-unit" => Ok(Self::LeadingUnit),
            other => Err(Error::Config(format!("unknown normal scaling {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Auto => "auto",
            Self::RootLattice => "root-lattice",
            Self::WeightLattice => "weight-lattice",
            Self::LeadingUnit => "leading-unit",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Facet {
    /// Outward normal ℓ in root coordinates.
    pub normal: Vector,
    /// `(⟨ℓ, αᵢ⟩)ᵢ`, so the facet is `{x : functional · x = offset}`.
    pub functional: Vector,
    pub offset: Scalar,
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// Index of the W-orbit of facets.
    pub orbit: usize,
    /// Element of W carrying the orbit representative onto this facet.
    pub word: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub nondegenerate: bool,
    pub simple: bool,
    pub flag: bool,
}

#[derive(Clone, Debug)]
pub struct WPolytope {
    pub rank: usize,
    pub lambda: Vec<Vector>,
    pub vertices: Vec<Vector>,
    pub facets: Vec<Facet>,
    /// Facets through each vertex, ascending.
    pub vertex_facets: Vec<Vec<usize>>,
    /// Facet index of each W-orbit representative (barycenter in the dominant chamber).
    pub orbit_reps: Vec<usize>,
    pub scaling: NormalScaling,
    pub classification: Classification,
    facet_perms: Vec<Vec<u32>>,
    facet_index: HashMap<Vec<usize>, usize>,
}

struct RawFacet {
    functional: Vector,
    offset: Scalar,
    points: Vec<usize>,
}

fn affine_rank(points: &[Vector], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let base = &points[idx[0]];
    let rows: Vec<Vec<Scalar>> = idx[1..].iter().map(|&i| points[i].sub(base).0).collect();
    Matrix::from_rows(rows).rank()
}

fn functional_rank<'a>(fs: impl Iterator<Item = &'a Vector>) -> usize {
    let rows: Vec<Vec<Scalar>> = fs.map(|f| f.0.clone()).collect();
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows).rank()
    }
}

fn drop_coord(v: &Vector, j: usize) -> Vector {
    v.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, x)| x.clone()).collect()
}

fn insert_zero(v: &Vector, j: usize) -> Vector {
    let mut out = v.0.clone();
    out.insert(j, Scalar::zero());
    Vector(out)
}

/// Facets of the convex hull of a full-dimensional point set, by gift-wrapping.
/// Each facet satisfies `functional · p ≤ offset` on every point.
fn hull(points: &[Vector]) -> Vec<RawFacet> {
    let m = points[0].dim();
    if m == 1 {
        let (mut lo, mut hi) = (0, 0);
        for (i, p) in points.iter().enumerate() {
            if p[0] < points[lo][0] {
                lo = i;
            }
            if p[0] > points[hi][0] {
                hi = i;
            }
        }
        let at = |v: &Scalar| (0..points.len()).filter(|&i| &points[i][0] == v).collect::<Vec<_>>();
        return vec![
            RawFacet { functional: Vector::from_ints(&[1]), offset: points[hi][0].clone(), points: at(&points[hi][0]) },
            RawFacet { functional: Vector::from_ints(&[-1]), offset: -&points[lo][0], points: at(&points[lo][0]) },
        ];
    }

    let mut facets = vec![initial_facet(points)];
    let mut known: HashSet<Vec<usize>> = HashSet::from([facets[0].points.clone()]);
    let mut ridges_done: HashSet<Vec<usize>> = HashSet::new();
    let mut head = 0;
    while head < facets.len() {
        let mut found = Vec::new();
        {
            let f = &facets[head];
            for (g, cg, ridge) in ridges_of(points, f) {
                if !ridges_done.insert(ridge) {
                    continue;
                }
                let nb = pivot(points, f, &g, &cg);
                if known.insert(nb.points.clone()) {
                    found.push(nb);
                }
            }
        }
        facets.extend(found);
        head += 1;
    }
    facets
}

fn tight(points: &[Vector], f: &Vector, c: &Scalar) -> Vec<usize> {
    (0..points.len()).filter(|&i| &f.dot(&points[i]) == c).collect()
}

fn initial_facet(points: &[Vector]) -> RawFacet {
    let m = points[0].dim();
    let mut proj: Vec<Vector> = Vec::new();
    let mut seen = HashSet::new();
    for p in points {
        let q = drop_coord(p, m - 1);
        if seen.insert(q.clone()) {
            proj.push(q);
        }
    }
    let sub = hull(&proj).swap_remove(0);
    let g = insert_zero(&sub.functional, m - 1);
    let c = sub.offset;
    let face = tight(points, &g, &c);
    if affine_rank(points, &face) == m - 1 {
        return RawFacet { functional: g, offset: c, points: face };
    }
    // The face is a ridge: rotate about its affine hull until another point is hit.
    let rows: Vec<Vec<Scalar>> = face
        .iter()
        .map(|&i| {
            let mut r = points[i].0.clone();
            r.push(Scalar::from_int(-1));
            r
        })
        .collect();
    let mut gc = g.0.clone();
    gc.push(c.clone());
    let other = kernel_basis(&Matrix::from_rows(rows))
        .into_iter()
        .find(|k| Matrix::from_rows(vec![gc.clone(), k.0.clone()]).rank() == 2)
        .expect("ridge has a two-dimensional pencil of hyperplanes");
    let mut f: Vector = other.0[..m].iter().cloned().collect();
    let mut cf = other.0[m].clone();
    let outside: Vec<usize> = (0..points.len()).filter(|i| !face.contains(i)).collect();
    if outside.iter().all(|&i| !(&f.dot(&points[i]) - &cf).is_positive()) {
        f = f.neg();
        cf = -cf;
    }
    let t = outside
        .iter()
        .filter_map(|&i| {
            let b = &f.dot(&points[i]) - &cf;
            b.is_positive().then(|| &(&c - &g.dot(&points[i])) / &b)
        })
        .min()
        .expect("some point lies beyond the rotated hyperplane");
    let h = g.add(&f.scale(&t));
    let ch = &c + &(&t * &cf);
    let pts = tight(points, &h, &ch);
    RawFacet { functional: h, offset: ch, points: pts }
}

/// Ridges of `f` as supporting functionals lifted from the facet's own hull.
fn ridges_of(points: &[Vector], f: &RawFacet) -> Vec<(Vector, Scalar, Vec<usize>)> {
    let j = f.functional.iter().position(|x| !x.is_zero()).expect("nonzero functional");
    let sub: Vec<Vector> = f.points.iter().map(|&i| drop_coord(&points[i], j)).collect();
    hull(&sub)
        .into_iter()
        .map(|r| {
            let ridge: Vec<usize> = r.points.iter().map(|&i| f.points[i]).collect();
            (insert_zero(&r.functional, j), r.offset, ridge)
        })
        .collect()
}

/// Rotates `f` about the ridge cut out by `g` to the neighboring facet.
fn pivot(points: &[Vector], f: &RawFacet, g: &Vector, cg: &Scalar) -> RawFacet {
    let on_f: HashSet<usize> = f.points.iter().copied().collect();
    let t = (0..points.len())
        .filter(|i| !on_f.contains(i))
        .map(|i| &(&g.dot(&points[i]) - cg) / &(&f.offset - &f.functional.dot(&points[i])))
        .max()
        .expect("full-dimensional point set");
    let h = g.add(&f.functional.scale(&t));
    let ch = cg + &(&t * &f.offset);
    let pts = tight(points, &h, &ch);
    RawFacet { functional: h, offset: ch, points: pts }
}

/// Positive factor making a rational vector primitive integral.
fn primitive_factor(v: &[Scalar]) -> Scalar {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.rational_part().denom()));
    let num = v
        .iter()
        .map(|x| (x.rational_part() * BigRational::from(den.clone())).to_integer())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    Scalar::from_rational(BigRational::new(den, num.abs()))
}

impl WPolytope {
    /// Builds `conv(W·Λ)` for dominant `lambda` given in root coordinates.
    pub fn build(rs: &RootSystem, w: &WeylGroup, lambda: &[Vector], scaling: NormalScaling) -> Result<Self> {
        let n = rs.rank();
        if lambda.is_empty() {
            return Err(Error::EmptyLambda);
        }
        for (i, l) in lambda.iter().enumerate() {
            if l.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: l.dim() });
            }
            if !rs.is_dominant(l) {
                return Err(Error::NotDominant(i));
            }
        }
        let scaling = match scaling {
            NormalScaling::Auto if rs.is_crystallographic() => NormalScaling::RootLattice,
            NormalScaling::Auto => NormalScaling::LeadingUnit,
            NormalScaling::RootLattice | NormalScaling::WeightLattice if !rs.is_crystallographic() => {
                return Err(Error::InvalidScaling(format!("{} needs a crystallographic type", scaling.name())))
            }
            s => s,
        };

        let all = w.whole();
        let mut vertices: Vec<Vector> = Vec::new();
        let mut vertex_index: HashMap<Vector, usize> = HashMap::new();
        let mut source: Vec<usize> = Vec::new();
        for (li, l) in lambda.iter().enumerate() {
            for v in w.orbit(&all, l) {
                if !vertex_index.contains_key(&v) {
                    vertex_index.insert(v.clone(), vertices.len());
                    vertices.push(v);
                    source.push(li);
                }
            }
        }
        let all_idx: Vec<usize> = (0..vertices.len()).collect();
        if affine_rank(&vertices, &all_idx) < n {
            return Err(Error::Degenerate);
        }

        let raw = hull(&vertices);
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (fi, f) in raw.iter().enumerate() {
            for &v in &f.points {
                incident[v].push(fi);
            }
        }
        for (v, fs) in incident.iter().enumerate() {
            if functional_rank(fs.iter().map(|&f| &raw[f].functional)) < n {
                return Err(Error::NotAVertex(source[v]));
            }
        }

        // W acts on vertices and hence on raw facets
        let raw_index: HashMap<Vec<usize>, usize> = raw.iter().enumerate().map(|(i, f)| (f.points.clone(), i)).collect();
        let gen_vertex_perms: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let m = &w.element(w.generator(i)).matrix;
                vertices.iter().map(|v| vertex_index[&m.apply(v)]).collect()
            })
            .collect();
        let permute_facets = |vp: &[usize]| -> Result<Vec<u32>> {
            raw.iter()
                .map(|f| {
                    let mut img: Vec<usize> = f.points.iter().map(|&v| vp[v]).collect();
                    img.sort_unstable();
                    raw_index.get(&img).map(|&x| x as u32).ok_or(Error::NotASymmetry)
                })
                .collect()
        };
        let gen_raw_perms: Vec<Vec<u32>> = gen_vertex_perms.iter().map(|vp| permute_facets(vp)).collect::<Result<_>>()?;
        let raw_perms = element_perms(w, &gen_raw_perms, raw.len());

        // orbits and their representatives
        let mut orbit_of = vec![usize::MAX; raw.len()];
        let mut orbits: Vec<usize> = Vec::new();
        for start in 0..raw.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut rep = None;
            for perm in &raw_perms {
                let f = perm[start] as usize;
                if orbit_of[f] == usize::MAX {
                    orbit_of[f] = id;
                }
                if rep.is_none() && rs.is_dominant(&barycenter(&vertices, &raw[f].points)) {
                    rep = Some(f);
                }
            }
            orbits.push(rep.ok_or(Error::LabelBijection)?);
        }
        let scaled: Vec<Vector> = orbits
            .iter()
            .map(|&r| scale_functional(rs, &raw[r].functional, scaling))
            .collect();
        let mut order: Vec<usize> = (0..orbits.len()).collect();
        order.sort_by(|&a, &b| scaled[b].cmp(&scaled[a]));

        let ginv = rs.gram.matrix().inverse().expect("definite");
        let mut facets: Vec<Facet> = Vec::new();
        let mut new_of_raw = vec![usize::MAX; raw.len()];
        let mut orbit_reps = Vec::new();
        for (oi, &o) in order.iter().enumerate() {
            let rep = orbits[o];
            let rep_normal = ginv.apply(&scaled[o]);
            orbit_reps.push(facets.len());
            for (wi, perm) in raw_perms.iter().enumerate() {
                let f = perm[rep] as usize;
                if new_of_raw[f] != usize::MAX {
                    continue;
                }
                let normal = w.apply(wi, &rep_normal);
                let functional = rs.pairings(&normal);
                // must agree with the hull's functional up to a positive factor
                let j = raw[f].functional.iter().position(|x| !x.is_zero()).expect("nonzero");
                let ratio = &functional[j] / &raw[f].functional[j];
                if !ratio.is_positive() || raw[f].functional.scale(&ratio) != functional {
                    return Err(Error::NotASymmetry);
                }
                let offset = functional.dot(&vertices[raw[f].points[0]]);
                new_of_raw[f] = facets.len();
                facets.push(Facet { normal, functional, offset, vertices: raw[f].points.clone(), orbit: oi, word: wi });
            }
        }
        let facet_perms: Vec<Vec<u32>> = raw_perms
            .iter()
            .map(|perm| {
                let mut out = vec![0u32; facets.len()];
                for (old, &img) in perm.iter().enumerate() {
                    out[new_of_raw[old]] = new_of_raw[img as usize] as u32;
                }
                out
            })
            .collect();
        let mut vertex_facets: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (fi, f) in facets.iter().enumerate() {
            for &v in &f.vertices {
                vertex_facets[v].push(fi);
            }
        }
        let facet_index = facets.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        let mut p = WPolytope {
            rank: n,
            lambda: lambda.to_vec(),
            vertices,
            facets,
            vertex_facets,
            orbit_reps,
            scaling,
            classification: Classification { nondegenerate: false, simple: false, flag: false },
            facet_perms,
            facet_index,
        };
        p.check_inequalities()?;
        p.classification = classify(&p, rs);
        Ok(p)
    }

    fn check_inequalities(&self) -> Result<()> {
        for f in &self.facets {
            if !f.offset.is_positive() {
                return Err(Error::Degenerate);
            }
            let mut on = f.vertices.iter().peekable();
            for (i, v) in self.vertices.iter().enumerate() {
                let val = f.functional.dot(v);
                let expect_on = on.peek() == Some(&&i);
                if expect_on {
                    on.next();
                }
                if (val == f.offset) != expect_on || val > f.offset {
                    return Err(Error::NotASymmetry);
                }
            }
        }
        Ok(())
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_reps.len()
    }

    /// Permutation of facet indices induced by element `w`.
    pub fn facet_perm(&self, w: usize) -> &[u32] {
        &self.facet_perms[w]
    }

    pub fn facet_by_vertices(&self, vs: &[usize]) -> Option<usize> {
        self.facet_index.get(vs).copied()
    }

    pub fn barycenter(&self, facet: usize) -> Vector {
        barycenter(&self.vertices, &self.facets[facet].vertices)
    }

    /// Same polytope with each orbit's normals multiplied by a positive factor.
    pub fn rescaled(&self, per_orbit: &[Scalar]) -> Result<WPolytope> {
        if per_orbit.len() != self.num_orbits() {
            return Err(Error::InvalidScaling(format!(
                "expected {} orbit factors, got {}",
                self.num_orbits(),
                per_orbit.len()
            )));
        }
        if let Some(i) = per_orbit.iter().position(|c| !c.is_positive()) {
            return Err(Error::InvalidScaling(format!("factor for orbit {i} is not positive")));
        }
        let mut p = self.clone();
        for f in &mut p.facets {
            let c = &per_orbit[f.orbit];
            f.normal = f.normal.scale(c);
            f.functional = f.functional.scale(c);
            f.offset = &f.offset * c;
        }
        Ok(p)
    }

    /// Per-orbit factors `c` with `other.normal = c · self.normal`.
    pub fn scaling_relative_to(&self, other: &WPolytope) -> Result<Vec<Scalar>> {
        if self.num_facets() != other.num_facets() || self.num_orbits() != other.num_orbits() {
            return Err(Error::InvalidScaling("polytopes differ".into()));
        }
        self.orbit_reps
            .iter()
            .map(|&r| {
                let a = &self.facets[r];
                let j = other
                    .facet_by_vertices(&a.vertices)
                    .ok_or_else(|| Error::InvalidScaling("facet sets differ".into()))?;
                let b = &other.facets[j];
                let k = a.functional.iter().position(|x| !x.is_zero()).expect("nonzero");
                let c = &b.functional[k] / &a.functional[k];
                if a.functional.scale(&c) != b.functional {
                    return Err(Error::InvalidScaling("normals are not parallel".into()));
                }
                Ok(c)
            })
            .collect()
    }
}

fn barycenter(vertices: &[Vector], idx: &[usize]) -> Vector {
    let n = vertices[0].dim();
    let sum = idx.iter().fold(Vector::zeros(n), |acc, &i| acc.add(&vertices[i]));
    sum.scale(&Scalar::from_frac(1, idx.len() as i64))
}

fn scale_functional(rs: &RootSystem, f: &Vector, scaling: NormalScaling) -> Vector {
    match scaling {
        NormalScaling::RootLattice => f.scale(&primitive_factor(f)),
        NormalScaling::WeightLattice => {
            let ginv = rs.gram.matrix().inverse().expect("definite");
            let normal = ginv.apply(f);
            let weights: Vec<Scalar> = (0..rs.rank())
                .map(|i| &(&normal[i] * rs.norm2(i)) / &Scalar::from_int(2))
                .collect();
            f.scale(&primitive_factor(&weights))
        }
        NormalScaling::LeadingUnit | NormalScaling::Auto => {
            let lead = f.iter().find(|x| !x.is_zero()).expect("nonzero");
            f.scale(&lead.abs().inverse().expect("nonzero"))
        }
    }
}

/// Permutations for every element of W, assembled from generator permutations
/// along each element's reduced word.
fn element_perms(w: &WeylGroup, gens: &[Vec<u32>], size: usize) -> Vec<Vec<u32>> {
    w.elements
        .iter()
        .map(|e| {
            (0..size as u32)
                .map(|x| e.word.iter().rev().fold(x, |acc, &l| gens[l as usize][acc as usize]))
                .collect()
        })
        .collect()
}

/// Non-degeneracy, simplicity and the flag property.
pub fn classify(p: &WPolytope, rs: &RootSystem) -> Classification {
    let nondegenerate = p.lambda.iter().all(|l| rs.is_strictly_dominant(l));
    let simple = p.vertex_facets.iter().all(|fs| fs.len() == p.rank);
    let sets: Vec<FixedBitSet> = p.facets.iter().map(|f| bitset(p.vertices.len(), &f.vertices)).collect();
    Classification { nondegenerate, simple, flag: is_flag(&sets) }
}

pub(crate) fn bitset(len: usize, members: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(len);
    for &m in members {
        b.insert(m);
    }
    b
}

/// Every family of pairwise-intersecting facets has a common vertex.
pub fn is_flag(facet_vertices: &[FixedBitSet]) -> bool {
    let m = facet_vertices.len();
    let adjacent: Vec<Vec<usize>> = (0..m)
        .map(|i| (i + 1..m).filter(|&j| !facet_vertices[i].is_disjoint(&facet_vertices[j])).collect())
        .collect();
    fn extend(
        common: &FixedBitSet,
        candidates: &[usize],
        sets: &[FixedBitSet],
        adjacent: &[Vec<usize>],
    ) -> bool {
        for (pos, &j) in candidates.iter().enumerate() {
            let next = {
                let mut c = common.clone();
                c.intersect_with(&sets[j]);
                c
            };
            if next.is_clear() {
                return false;
            }
            let rest: Vec<usize> =
                candidates[pos + 1..].iter().copied().filter(|k| adjacent[j].binary_search(k).is_ok()).collect();
            if !extend(&next, &rest, sets, adjacent) {
                return false;
            }
        }
        true
    }
    (0..m).all(|i| extend(&facet_vertices[i], &adjacent[i], facet_vertices, &adjacent))
}

/// Facet orbits of `W_K`, with representatives `𝓕_K`, stabilizers and cosets.
#[derive(Clone, Debug)]
pub struct FacetOrbitData {
    pub k: Vec<usize>,
    pub subgroup: Subgroup,
    /// Facets whose barycenter lies in `C_K`, ascending.
    pub reps: Vec<usize>,
    pub stabilizers: Vec<Subgroup>,
    /// Minimal coset representatives of `W_K / W_F`, per representative.
    pub cosets: Vec<Vec<usize>>,
    /// `facet_of[r][c]` is the facet `s_c(F_r)`.
    pub facet_of: Vec<Vec<usize>>,
    /// Inverse of `facet_of`: facet ↦ (representative position, coset position).
    pub label_of: Vec<(usize, usize)>,
    /// Each stabilizer is generated by the simple reflections in K fixing the barycenter.
    pub stabilizers_parabolic: bool,
}

pub fn facet_orbits(p: &WPolytope, rs: &RootSystem, w: &WeylGroup, k: &[usize]) -> Result<FacetOrbitData> {
    let subgroup = w.parabolic(k);
    let k = subgroup.k.clone();
    let reps: Vec<usize> = (0..p.num_facets())
        .filter(|&f| rs.in_chamber(&p.barycenter(f), &k))
        .collect();
    let mut stabilizers = Vec::new();
    let mut cosets = Vec::new();
    let mut facet_of = Vec::new();
    let mut label_of = vec![(usize::MAX, usize::MAX); p.num_facets()];
    let mut stabilizers_parabolic = true;
    for (ri, &f) in reps.iter().enumerate() {
        let stab = w.stabilizer_in(&subgroup, |s| p.facet_perm(s)[f] as usize == f);
        let b = p.barycenter(f);
        let fixing: Vec<usize> =
            k.iter().filter(|&&i| w.apply(w.generator(i), &b) == b).map(|&i| w.generator(i)).collect();
        if w.generated_by(&fixing).elements != stab.elements {
            stabilizers_parabolic = false;
        }
        let reps_c = w.cosets(&subgroup, &stab);
        let mut images = Vec::new();
        for (ci, &s) in reps_c.iter().enumerate() {
            let img = p.facet_perm(s)[f] as usize;
            if label_of[img].0 != usize::MAX {
                return Err(Error::LabelBijection);
            }
            label_of[img] = (ri, ci);
            images.push(img);
        }
        stabilizers.push(stab);
        cosets.push(reps_c);
        facet_of.push(images);
    }
    if label_of.iter().any(|l| l.0 == usize::MAX) {
        return Err(Error::LabelBijection);
    }
    Ok(FacetOrbitData { k, subgroup, reps, stabilizers, cosets, facet_of, label_of, stabilizers_parabolic })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetLabel {
    /// `F ∩ C_K` for the facet `F` of P (an element of `𝓕_K`).
    X(usize),
    /// The wall `H_k ∩ P`.
    Y(usize),
}

#[derive(Clone, Debug)]
pub struct QuotientFacet {
    pub label: FacetLabel,
    pub normal: Vector,
    pub functional: Vector,
    pub offset: Scalar,
    pub vertices: Vec<usize>,
}

/// `P ∩ C_K` with facets labeled by `𝓕_K ⊔ K`.
#[derive(Clone, Debug)]
pub struct QuotientPolytope {
    pub rank: usize,
    pub k: Vec<usize>,
    pub vertices: Vec<Vector>,
    /// X-labeled facets in the order of `𝓕_K`, then Y-labeled facets in K order.
    pub facets: Vec<QuotientFacet>,
    pub vertex_facets: Vec<Vec<usize>>,
}

impl QuotientPolytope {
    pub fn is_simple(&self) -> bool {
        self.vertex_facets.iter().all(|fs| fs.len() == self.rank)
    }

    pub fn is_flag(&self) -> bool {
        let sets: Vec<FixedBitSet> =
            self.facets.iter().map(|f| bitset(self.vertices.len(), &f.vertices)).collect();
        is_flag(&sets)
    }
}

/// Cuts P by the half-spaces `⟨α_k, x⟩ ≥ 0` for `k ∈ K`, one at a time.
pub fn quotient_polytope(p: &WPolytope, rs: &RootSystem, fo: &FacetOrbitData) -> Result<QuotientPolytope> {
    let n = p.rank;
    // constraints: P facets, then walls; functional · x ≤ offset
    let mut functionals: Vec<Vector> = p.facets.iter().map(|f| f.functional.clone()).collect();
    let mut offsets: Vec<Scalar> = p.facets.iter().map(|f| f.offset.clone()).collect();
    let mut verts: Vec<Vector> = p.vertices.clone();
    let total = p.num_facets() + fo.k.len();
    let mut tight: Vec<FixedBitSet> = p
        .vertex_facets
        .iter()
        .map(|fs| {
            let mut b = bitset(total, fs);
            b.grow(total);
            b
        })
        .collect();

    for (wi, &k) in fo.k.iter().enumerate() {
        let c = p.num_facets() + wi;
        let wall = rs.pairings(&rs.simple_root(k)).neg();
        let values: Vec<Scalar> = verts.iter().map(|v| -wall.dot(v)).collect();
        let mut next_v = Vec::new();
        let mut next_t = Vec::new();
        for (i, v) in verts.iter().enumerate() {
            if !values[i].is_negative() {
                let mut t = tight[i].clone();
                if values[i].is_zero() {
                    t.insert(c);
                }
                next_v.push(v.clone());
                next_t.push(t);
            }
        }
        for u in 0..verts.len() {
            if !values[u].is_positive() {
                continue;
            }
            for v in 0..verts.len() {
                if !values[v].is_negative() {
                    continue;
                }
                let mut common = tight[u].clone();
                common.intersect_with(&tight[v]);
                if common.count_ones(..) < n - 1 || functional_rank(common.ones().map(|j| &functionals[j])) != n - 1 {
                    continue;
                }
                // crossing point of the edge uv with the wall
                let t = &values[u] / &(&values[u] - &values[v]);
                let x = verts[u].add(&verts[v].sub(&verts[u]).scale(&t));
                common.insert(c);
                next_v.push(x);
                next_t.push(common);
            }
        }
        functionals.push(wall);
        offsets.push(Scalar::zero());
        verts = next_v;
        tight = next_t;
    }

    let all: Vec<usize> = (0..verts.len()).collect();
    if affine_rank(&verts, &all) < n {
        return Err(Error::LabelMatching("quotient is not full-dimensional".into()));
    }
    let mut facets = Vec::new();
    let mut x_found = Vec::new();
    for ci in 0..total {
        let on: Vec<usize> = (0..verts.len()).filter(|&v| tight[v].contains(ci)).collect();
        if on.len() < n || affine_rank(&verts, &on) != n - 1 {
            continue;
        }
        let label = if ci < p.num_facets() {
            x_found.push(ci);
            FacetLabel::X(ci)
        } else {
            FacetLabel::Y(fo.k[ci - p.num_facets()])
        };
        let normal = match label {
            FacetLabel::X(f) => p.facets[f].normal.clone(),
            FacetLabel::Y(k) => rs.simple_root(k).neg(),
        };
        facets.push(QuotientFacet { label, normal, functional: functionals[ci].clone(), offset: offsets[ci].clone(), vertices: on });
    }
    if x_found != fo.reps {
        return Err(Error::LabelMatching(format!(
            "X facets {:?} differ from chamber representatives {:?}",
            x_found, fo.reps
        )));
    }
    let y_found: Vec<usize> = facets
        .iter()
        .filter_map(|f| match f.label {
            FacetLabel::Y(k) => Some(k),
            _ => None,
        })
        .collect();
    if y_found != fo.k {
        return Err(Error::LabelMatching(format!("walls {:?} are not all facets", fo.k)));
    }
    let mut vertex_facets = vec![Vec::new(); verts.len()];
    for (fi, f) in facets.iter().enumerate() {
        for &v in &f.vertices {
            vertex_facets[v].push(fi);
        }
    }
    Ok(QuotientPolytope { rank: n, k: fo.k.clone(), vertices: verts, facets, vertex_facets })
}

/// Simplicity of P against simplicity of its chamber quotient: equivalent when
/// P is non-degenerate, and P simple implies the quotient simple in rank 3.
pub fn simplicity_transfer_check(p: &WPolytope, q: &QuotientPolytope) -> bool {
    let sp = p.classification.simple;
    let sq = q.is_simple();
    if p.classification.nondegenerate {
        sp == sq
    } else if p.rank == 3 {
        !sp || sq
    } else {
        true
    }
}

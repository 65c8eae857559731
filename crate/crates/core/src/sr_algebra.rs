//! Stanley–Reisner rings of labeled simple polytopes and their polytopal
//! algebras `SR(Q) / (I + J)`, graded by monomial degree.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseRow, SparseRref, Vector};
use crate::polytope::{bitset, FacetLabel, QuotientPolytope, WPolytope};
use crate::scalar::Scalar;

/// Sorted multiset of facet labels.
pub type Monomial = Vec<u32>;

/// Label permutation: label `i` goes to `perm[i]`.
pub type LabelPerm = Vec<u32>;

pub fn multiply_monomials(a: &[u32], b: &[u32]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn permute_monomial(perm: &[u32], m: &[u32]) -> Monomial {
    let mut out: Monomial = m.iter().map(|&x| perm[x as usize]).collect();
    out.sort_unstable();
    out
}

/// Facet labels of a polytope with their vertex sets and normals.
#[derive(Clone, Debug)]
pub struct FaceComplex {
    pub rank: usize,
    pub labels: Vec<String>,
    pub num_vertices: usize,
    /// `(⟨ℓ_F, αᵢ⟩)ᵢ` per label.
    pub functionals: Vec<Vector>,
    facet_vertices: Vec<FixedBitSet>,
    vertex_labels: Vec<Vec<u32>>,
}

impl FaceComplex {
    pub fn new(rank: usize, labels: Vec<String>, vertex_sets: &[Vec<usize>], num_vertices: usize, functionals: Vec<Vector>) -> Self {
        let facet_vertices: Vec<FixedBitSet> = vertex_sets.iter().map(|vs| bitset(num_vertices, vs)).collect();
        let mut vertex_labels = vec![Vec::new(); num_vertices];
        for (f, vs) in vertex_sets.iter().enumerate() {
            for &v in vs {
                vertex_labels[v].push(f as u32);
            }
        }
        FaceComplex { rank, labels, num_vertices, functionals, facet_vertices, vertex_labels }
    }

    pub fn from_polytope(p: &WPolytope) -> Self {
        let labels = (0..p.num_facets()).map(|i| format!("F{i}")).collect();
        let sets: Vec<Vec<usize>> = p.facets.iter().map(|f| f.vertices.clone()).collect();
        let fs = p.facets.iter().map(|f| f.functional.clone()).collect();
        Self::new(p.rank, labels, &sets, p.vertices.len(), fs)
    }

    pub fn from_quotient(q: &QuotientPolytope) -> Self {
        let labels = q
            .facets
            .iter()
            .map(|f| match f.label {
                FacetLabel::X(i) => format!("X{i}"),
                FacetLabel::Y(k) => format!("Y{}", k + 1),
            })
            .collect();
        let sets: Vec<Vec<usize>> = q.facets.iter().map(|f| f.vertices.clone()).collect();
        let fs = q.facets.iter().map(|f| f.functional.clone()).collect();
        Self::new(q.rank, labels, &sets, q.vertices.len(), fs)
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    /// Vertices common to every label in the support of `m`.
    pub fn common_vertices(&self, m: &[u32]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.num_vertices);
        out.insert_range(..);
        for &l in m {
            out.intersect_with(&self.facet_vertices[l as usize]);
        }
        out
    }

    /// The labels in `m` have a common vertex.
    pub fn is_face(&self, m: &[u32]) -> bool {
        m.is_empty() || !self.common_vertices(m).is_clear()
    }

    pub fn is_simple(&self) -> bool {
        self.vertex_labels.iter().all(|ls| ls.len() == self.rank)
    }

    /// Squarefree monomial of the facets through each vertex.
    pub fn vertex_monomials(&self) -> Vec<Monomial> {
        self.vertex_labels.clone()
    }

    /// Degree-d monomials supported on faces, in lexicographic order.
    pub fn sr_monomial_basis(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(d);
        let mut full = FixedBitSet::with_capacity(self.num_vertices);
        full.insert_range(..);
        self.extend_monomials(d, 0, &full, &mut current, &mut out);
        out
    }

    fn extend_monomials(&self, d: usize, start: u32, common: &FixedBitSet, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for l in start..self.num_labels() as u32 {
            let mut next = common.clone();
            next.intersect_with(&self.facet_vertices[l as usize]);
            if next.is_clear() {
                continue;
            }
            cur.push(l);
            self.extend_monomials(d, l, &next, cur, out);
            cur.pop();
        }
    }

    /// Minimal label sets without a common vertex: the Stanley–Reisner ideal generators.
    pub fn minimal_non_faces(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut stack: Vec<Monomial> = vec![vec![]];
        while let Some(face) = stack.pop() {
            let start = face.last().map_or(0, |&l| l + 1);
            for l in start..self.num_labels() as u32 {
                let mut t = face.clone();
                t.push(l);
                if self.is_face(&t) {
                    stack.push(t);
                } else if (0..t.len()).all(|i| {
                    let mut s = t.clone();
                    s.remove(i);
                    self.is_face(&s)
                }) {
                    out.push(t);
                }
            }
        }
        out.sort();
        out
    }

    /// `f_{i-1}` = number of faces of codimension i, for i = 0..=n.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut faces: HashSet<FixedBitSet> = HashSet::new();
        let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
        for s in &self.facet_vertices {
            if faces.insert(s.clone()) {
                queue.push_back(s.clone());
            }
        }
        while let Some(face) = queue.pop_front() {
            for s in &self.facet_vertices {
                let mut x = face.clone();
                x.intersect_with(s);
                if !x.is_clear() && faces.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        let mut f = vec![0usize; self.rank + 1];
        f[0] = 1;
        for face in &faces {
            let containing: Vec<Vec<Scalar>> = (0..self.num_labels())
                .filter(|&l| face.is_subset(&self.facet_vertices[l]))
                .map(|l| self.functionals[l].0.clone())
                .collect();
            let codim = Matrix::from_rows(containing).rank();
            f[codim] += 1;
        }
        f
    }

    pub fn h_vector(&self) -> Vec<i64> {
        h_from_f(&self.f_vector())
    }

    /// The n linear forms `ηᵢ = Σ_F ⟨αᵢ, ℓ_F⟩ X_F` as an n × labels matrix.
    pub fn linear_forms(&self) -> Matrix {
        let rows = (0..self.rank).map(|i| self.functionals.iter().map(|f| f[i].clone()).collect()).collect();
        Matrix::from_rows(rows)
    }

    /// `perm` maps vertex label-sets onto vertex label-sets.
    pub fn is_symmetry(&self, perm: &[u32]) -> bool {
        if perm.len() != self.num_labels() {
            return false;
        }
        let sets: HashSet<&Monomial> = self.vertex_labels.iter().collect();
        self.vertex_labels.iter().all(|m| sets.contains(&permute_monomial(perm, m)))
    }
}

/// Coefficients of `Σᵢ f_{i-1} tⁱ (1-t)^{n-i}`.
pub fn h_from_f(f: &[usize]) -> Vec<i64> {
    let n = f.len() - 1;
    let binom = |a: usize, b: usize| -> i64 {
        (0..b).fold(1i64, |acc, j| acc * (a - j) as i64 / (j + 1) as i64)
    };
    let mut h = vec![0i64; n + 1];
    for (i, &fi) in f.iter().enumerate() {
        for j in 0..=n - i {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            h[i + j] += sign * fi as i64 * binom(n - i, j);
        }
    }
    h
}

#[derive(Clone, Debug)]
struct Degree {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: SparseRref,
    /// Monomial indices spanning the quotient (non-pivot columns).
    basis: Vec<usize>,
}

/// Element of `A^d`, stored over the degree-d Stanley–Reisner monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub degree: usize,
    pub coords: SparseRow,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement { degree: self.degree, coords: self.coords.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        AlgebraElement { degree: self.degree, coords: self.coords.axpy(&Scalar::one(), &other.coords) }
    }
}

/// The graded polytopal algebra of a simple labeled polytope.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub complex: FaceComplex,
    pub forms: Matrix,
    pub h: Vec<i64>,
    degrees: Vec<Degree>,
    top_monomial: Monomial,
    top_scale: Scalar,
}

impl GradedAlgebra {
    pub fn build(complex: FaceComplex) -> Result<Self> {
        let n = complex.rank;
        let forms = complex.linear_forms();
        let h = complex.h_vector();
        let mut degrees: Vec<Degree> = Vec::with_capacity(n + 1);
        degrees.push(Degree {
            monomials: vec![vec![]],
            index: HashMap::from([(vec![], 0)]),
            relations: SparseRref::new(vec![], 1),
            basis: vec![0],
        });
        for d in 1..=n {
            let monomials = complex.sr_monomial_basis(d);
            let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            for i in 0..n {
                for m in &degrees[d - 1].monomials {
                    let row = SparseRow::from_entries(
                        (0..complex.num_labels())
                            .filter(|&l| !forms[(i, l)].is_zero())
                            .filter_map(|l| {
                                let prod = multiply_monomials(m, &[l as u32]);
                                index.get(&prod).map(|&c| (c, forms[(i, l)].clone()))
                            }),
                    );
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
            let relations = SparseRref::new(rows, monomials.len());
            let basis: Vec<usize> = (0..monomials.len()).filter(|&c| !relations.is_pivot(c)).collect();
            if basis.len() as i64 != h[d] {
                return Err(Error::HilbertMismatch { degree: d, dim: basis.len(), h: h[d] });
            }
            degrees.push(Degree { monomials, index, relations, basis });
        }
        if degrees[n].basis.len() != 1 {
            return Err(Error::TopDegree(degrees[n].basis.len()));
        }
        let mut vertex_monos: Vec<Monomial> =
            complex.vertex_monomials().into_iter().filter(|m| m.len() == n).collect();
        vertex_monos.sort();
        let top_monomial = vertex_monos.first().cloned().ok_or(Error::NotSimple)?;
        let mut ga = GradedAlgebra { complex, forms, h, degrees, top_monomial: top_monomial.clone(), top_scale: Scalar::one() };
        let top = ga.monomial(&top_monomial).expect("vertex monomials are faces");
        let scale = top.coords.get(ga.degrees[n].basis[0]).cloned().ok_or(Error::TopDegree(0))?;
        ga.top_scale = scale;
        Ok(ga)
    }

    pub fn rank(&self) -> usize {
        self.complex.rank
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |x| x.basis.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.rank()).map(|d| self.dim(d)).collect()
    }

    pub fn sr_dim(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |x| x.monomials.len())
    }

    /// Monomials forming the basis of `A^d`.
    pub fn basis_monomials(&self, d: usize) -> Vec<&Monomial> {
        self.degrees[d].basis.iter().map(|&i| &self.degrees[d].monomials[i]).collect()
    }

    pub fn basis_element(&self, d: usize, i: usize) -> AlgebraElement {
        AlgebraElement { degree: d, coords: SparseRow::from_entries([(self.degrees[d].basis[i], Scalar::one())]) }
    }

    /// Vertex monomial chosen as the top class.
    pub fn top_monomial(&self) -> &Monomial {
        &self.top_monomial
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement { degree: 0, coords: SparseRow::from_entries([(0, Scalar::one())]) }
    }

    /// Reduced class of a monomial; `None` above the top degree. Non-faces give zero.
    pub fn monomial(&self, m: &[u32]) -> Option<AlgebraElement> {
        let d = m.len();
        let deg = self.degrees.get(d)?;
        let coords = match deg.index.get(m) {
            Some(&c) => deg.relations.reduce(&SparseRow::from_entries([(c, Scalar::one())])),
            None => SparseRow::new(),
        };
        Some(AlgebraElement { degree: d, coords })
    }

    /// Degree-1 element `Σ c_l X_l`.
    pub fn linear(&self, coeffs: &[(usize, Scalar)]) -> AlgebraElement {
        let deg = &self.degrees[1];
        let row = SparseRow::from_entries(coeffs.iter().map(|(l, c)| (deg.index[&vec![*l as u32]], c.clone())));
        AlgebraElement { degree: 1, coords: deg.relations.reduce(&row) }
    }

    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { degree: x.degree, coords: self.degrees[x.degree].relations.reduce(&x.coords) }
    }

    /// Coordinates of a reduced element over the basis of `A^d`.
    pub fn basis_coords(&self, x: &AlgebraElement) -> Vec<Scalar> {
        let x = self.normal_form(x);
        self.degrees[x.degree]
            .basis
            .iter()
            .map(|&c| x.coords.get(c).cloned().unwrap_or_else(Scalar::zero))
            .collect()
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let d = x.degree + y.degree;
        if d > self.rank() {
            return Err(Error::DegreeOverflow(d));
        }
        let (dx, dy, dz) = (&self.degrees[x.degree], &self.degrees[y.degree], &self.degrees[d]);
        let mut entries = Vec::new();
        for (i, a) in x.coords.iter() {
            for (j, b) in y.coords.iter() {
                let m = multiply_monomials(&dx.monomials[*i], &dy.monomials[*j]);
                if let Some(&c) = dz.index.get(&m) {
                    entries.push((c, a * b));
                }
            }
        }
        Ok(AlgebraElement { degree: d, coords: dz.relations.reduce(&SparseRow::from_entries(entries)) })
    }

    /// Product that vanishes above the top degree.
    pub fn multiply_or_zero(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.multiply(x, y)
            .unwrap_or_else(|_| AlgebraElement { degree: x.degree + y.degree, coords: SparseRow::new() })
    }

    /// Coefficient of a top-degree element against the top class.
    pub fn top_coefficient(&self, x: &AlgebraElement) -> Scalar {
        assert_eq!(x.degree, self.rank(), "top coefficient of a non-top element");
        let x = self.normal_form(x);
        let c = x.coords.get(self.degrees[self.rank()].basis[0]).cloned().unwrap_or_else(Scalar::zero);
        &c / &self.top_scale
    }

    /// `w · x` for a label permutation `w`.
    pub fn act(&self, perm: &[u32], x: &AlgebraElement) -> AlgebraElement {
        let deg = &self.degrees[x.degree];
        let entries = x.coords.iter().map(|(c, a)| {
            let img = permute_monomial(perm, &deg.monomials[*c]);
            (deg.index[&img], a.clone())
        });
        AlgebraElement { degree: x.degree, coords: deg.relations.reduce(&SparseRow::from_entries(entries)) }
    }

    fn check_symmetry(&self, perm: &[u32]) -> Result<()> {
        if self.complex.is_symmetry(perm) {
            Ok(())
        } else {
            Err(Error::NotASymmetry)
        }
    }

    /// Matrix of `w` on `A^d`; column j is the image of basis element j.
    pub fn group_action(&self, perm: &[u32], d: usize) -> Result<Matrix> {
        self.check_symmetry(perm)?;
        let cols: Vec<Vector> = (0..self.dim(d))
            .map(|j| Vector(self.basis_coords(&self.act(perm, &self.basis_element(d, j)))))
            .collect();
        if cols.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        Ok(Matrix::from_columns(&cols))
    }

    pub fn trace(&self, perm: &[u32], d: usize) -> Result<Scalar> {
        self.check_symmetry(perm)?;
        let deg = &self.degrees[d];
        Ok(deg
            .basis
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                let img = self.act(perm, &self.basis_element(d, j));
                img.coords.get(c).cloned().unwrap_or_else(Scalar::zero)
            })
            .sum())
    }

    /// Traces of `w` on `A^0, …, A^n`.
    pub fn graded_character(&self, perm: &[u32]) -> Result<Vec<Scalar>> {
        (0..=self.rank()).map(|d| self.trace(perm, d)).collect()
    }

    /// `(1/|G|) Σ_g g·x` over the listed group elements.
    pub fn reynolds(&self, group: &[LabelPerm], x: &AlgebraElement) -> AlgebraElement {
        let mut acc = AlgebraElement { degree: x.degree, coords: SparseRow::new() };
        for g in group {
            acc = acc.add(&self.act(g, x));
        }
        acc.scale(&Scalar::from_frac(1, group.len() as i64))
    }

    /// Basis of `(A^d)^G` for the group generated by `generators`. Each basis
    /// monomial is averaged over its orbit, which is the Reynolds image up to a
    /// positive factor, and the results are row reduced.
    pub fn invariant_basis(&self, generators: &[LabelPerm], d: usize) -> Result<Vec<AlgebraElement>> {
        for g in generators {
            self.check_symmetry(g)?;
        }
        let deg = &self.degrees[d];
        let mut rows = Vec::new();
        for &b in &deg.basis {
            let orbit = monomial_orbit(generators, &deg.monomials[b]);
            let sum = SparseRow::from_entries(orbit.iter().map(|m| (deg.index[m], Scalar::one())));
            let reduced = deg.relations.reduce(&sum);
            if !reduced.is_empty() {
                rows.push(reduced);
            }
        }
        let r = SparseRref::new(rows, deg.monomials.len());
        Ok(r.rows.iter().map(|row| AlgebraElement { degree: d, coords: row.clone() }).collect())
    }

    /// `M[u][v]` = top coefficient of `b_u · b_v` for bases of `A^d` and `A^{n-d}`.
    pub fn pairing_matrix(&self, d: usize) -> Matrix {
        let n = self.rank();
        let (r, c) = (self.dim(d), self.dim(n - d));
        let mut m = Matrix::zeros(r, c);
        for u in 0..r {
            let bu = self.basis_element(d, u);
            for v in 0..c {
                let prod = self.multiply(&bu, &self.basis_element(n - d, v)).expect("complementary degrees");
                m[(u, v)] = self.top_coefficient(&prod);
            }
        }
        m
    }

    /// Every pairing `A^d × A^{n-d} → A^n` is perfect.
    pub fn pd_check(&self) -> bool {
        let n = self.rank();
        (0..=n).all(|d| {
            let m = self.pairing_matrix(d);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }

    /// Every vertex monomial is a positive multiple of the top class.
    pub fn vertex_monomial_consistency(&self) -> bool {
        self.complex.vertex_monomials().iter().all(|m| {
            m.len() == self.rank()
                && self.monomial(m).map_or(false, |x| self.top_coefficient(&x).is_positive())
        })
    }

    /// `w` fixes the top class.
    pub fn acts_trivially_on_top(&self, perm: &[u32]) -> bool {
        let top = self.monomial(&self.top_monomial).expect("top degree");
        self.top_coefficient(&self.act(perm, &top)).is_one()
    }

    /// `ηᵢ · SR^d ⊆ R^{d+1}` for every d below the top.
    pub fn relations_propagate(&self) -> bool {
        (0..self.rank()).all(|d| {
            let coeffs: Vec<Vec<(usize, Scalar)>> = (0..self.rank())
                .map(|i| (0..self.complex.num_labels()).map(|l| (l, self.forms[(i, l)].clone())).collect())
                .collect();
            coeffs.iter().all(|eta| {
                let eta = self.linear(eta);
                (0..self.sr_dim(d)).all(|m| {
                    let x = AlgebraElement { degree: d, coords: SparseRow::from_entries([(m, Scalar::one())]) };
                    self.multiply(&x, &eta).map_or(false, |p| p.is_zero())
                })
            })
        })
    }
}

/// Orbit of a monomial under the group generated by `generators`.
pub fn monomial_orbit(generators: &[LabelPerm], m: &[u32]) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::from([m.to_vec()]);
    let mut out = vec![m.to_vec()];
    let mut head = 0;
    while head < out.len() {
        for g in generators {
            let img = permute_monomial(g, &out[head]);
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        head += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hexagon with edges E0..E5 in cyclic order and the standard A2 normals.
    fn hexagon() -> FaceComplex {
        let labels = (0..6).map(|i| format!("E{i}")).collect();
        let sets: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let fs = [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]].iter().map(|f| Vector::from_ints(f)).collect();
        FaceComplex::new(2, labels, &sets, 6, fs)
    }

    /// Quadrilateral with labels X_E0, X_E1, Y1, Y2.
    fn quadrilateral() -> FaceComplex {
        let labels = ["XE0", "XE1", "Y1", "Y2"].iter().map(|s| s.to_string()).collect();
        // vertices: 0 = origin, 1 on H2 and E0, 2 = E0 ∩ E1, 3 on H1 and E1
        let sets = vec![vec![1, 2], vec![2, 3], vec![0, 3], vec![0, 1]];
        let fs = [[1, 0], [0, 1], [-2, 1], [1, -2]].iter().map(|f| Vector::from_ints(f)).collect();
        FaceComplex::new(2, labels, &sets, 4, fs)
    }

    #[test]
    fn hexagon_monomials() {
        let fc = hexagon();
        assert_eq!(fc.sr_monomial_basis(1).len(), 6);
        let d2 = fc.sr_monomial_basis(2);
        assert_eq!(d2.len(), 12);
        for m in &d2 {
            let diff = (m[0] as i32 - m[1] as i32).rem_euclid(6);
            assert!(matches!(diff, 0 | 1 | 5));
        }
        let nf = fc.minimal_non_faces();
        assert_eq!(nf.len(), 9);
        assert!(nf.iter().all(|m| {
            let diff = (m[0] as i32 - m[1] as i32).rem_euclid(6);
            !matches!(diff, 1 | 5)
        }));
    }

    #[test]
    fn quadrilateral_monomials() {
        let fc = quadrilateral();
        let d2 = fc.sr_monomial_basis(2);
        assert_eq!(d2.len(), 8);
        assert!(!d2.contains(&vec![0, 2]));
        assert!(!d2.contains(&vec![1, 3]));
        assert_eq!(fc.minimal_non_faces(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn f_and_h_vectors() {
        assert_eq!(hexagon().f_vector(), vec![1, 6, 6]);
        assert_eq!(hexagon().h_vector(), vec![1, 4, 1]);
        assert_eq!(quadrilateral().h_vector(), vec![1, 2, 1]);
        // A3 permutohedron f = (1, 14, 36, 24)
        assert_eq!(h_from_f(&[1, 14, 36, 24]), vec![1, 11, 11, 1]);
        assert_eq!(h_from_f(&[1, 5, 5]), vec![1, 3, 1]);
    }

    #[test]
    fn hexagon_algebra() {
        let ga = GradedAlgebra::build(hexagon()).unwrap();
        assert_eq!(ga.dims(), vec![1, 4, 1]);
        let one = Scalar::one();
        let m1 = Scalar::from_int(-1);
        let j1 = ga.linear(&[(0, one.clone()), (2, m1.clone()), (3, m1.clone()), (5, one.clone())]);
        assert!(j1.is_zero());
        let x0 = ga.monomial(&[0]).unwrap();
        let x2 = ga.monomial(&[2]).unwrap();
        assert!(ga.multiply(&x0, &x2).unwrap().is_zero());
        assert_eq!(ga.multiply(&ga.one(), &x0).unwrap(), x0);
        let adj: Vec<Scalar> = (0..6u32)
            .map(|i| {
                let mut m = vec![i, (i + 1) % 6];
                m.sort();
                ga.top_coefficient(&ga.monomial(&m).unwrap())
            })
            .collect();
        assert!(adj.iter().all(|c| c.is_positive()));
        assert!(ga.vertex_monomial_consistency());
        assert!(ga.pd_check());
        assert!(ga.relations_propagate());
        assert_eq!(ga.pairing_matrix(1).rank(), 4);
        assert!(matches!(ga.multiply(&x0, &ga.monomial(&[0, 1]).unwrap()), Err(Error::DegreeOverflow(3))));
    }

    #[test]
    fn normal_form_is_idempotent_and_linear() {
        let ga = GradedAlgebra::build(hexagon()).unwrap();
        let x = ga.linear(&[(0, Scalar::from_int(3)), (4, Scalar::from_frac(1, 2))]);
        assert_eq!(ga.normal_form(&x), x);
        let y = ga.linear(&[(1, Scalar::one())]);
        let s = ga.normal_form(&x.add(&y));
        assert_eq!(s, ga.normal_form(&ga.normal_form(&x).add(&ga.normal_form(&y))));
    }

    #[test]
    fn hexagon_characters_and_invariants() {
        let ga = GradedAlgebra::build(hexagon()).unwrap();
        // r1 swaps E0<->E2, E3<->E5 and fixes E1, E4; r2 swaps E1<->E5, E2<->E4 and fixes E0, E3
        let r1: LabelPerm = vec![2, 1, 0, 5, 4, 3];
        let r2: LabelPerm = vec![0, 5, 4, 3, 2, 1];
        let id: LabelPerm = (0..6).collect();
        assert_eq!(ga.trace(&id, 0).unwrap(), Scalar::one());
        // 2 fixed edges minus the trace 0 of a reflection on the plane
        assert_eq!(ga.trace(&r1, 1).unwrap(), Scalar::from_int(2));
        assert_eq!(ga.trace(&r2, 1).unwrap(), Scalar::from_int(2));
        assert!(ga.acts_trivially_on_top(&r1));
        let inv1 = ga.invariant_basis(&[r1.clone(), r2.clone()], 1).unwrap();
        assert_eq!(inv1.len(), 2);
        assert_eq!(ga.invariant_basis(&[r1.clone(), r2.clone()], 2).unwrap().len(), 1);
        assert_eq!(ga.invariant_basis(&[], 1).unwrap().len(), 4);
        let a = ga.group_action(&r1, 1).unwrap();
        let b = ga.group_action(&r2, 1).unwrap();
        let r1r2: LabelPerm = (0..6).map(|i| r1[r2[i] as usize]).collect();
        assert_eq!(ga.group_action(&r1r2, 1).unwrap(), a.mul(&b));
        let bad: LabelPerm = vec![1, 0, 2, 3, 4, 5];
        assert!(matches!(ga.trace(&bad, 1), Err(Error::NotASymmetry)));
    }

    #[test]
    fn hilbert_mismatch_on_nonsimple() {
        // square pyramid: apex lies on four facets
        let labels = (0..5).map(|i| format!("F{i}")).collect();
        let sets = vec![vec![0, 1, 2, 3], vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]];
        let fs = [[0, 0, -1], [0, -1, 1], [1, 0, 1], [0, 1, 1], [-1, 0, 1]]
            .iter()
            .map(|f| Vector::from_ints(f))
            .collect();
        let fc = FaceComplex::new(3, labels, &sets, 5, fs);
        assert!(!fc.is_simple());
        assert!(GradedAlgebra::build(fc).is_err());
    }
}

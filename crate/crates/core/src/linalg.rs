//! Dense and sparse exact linear algebra over [`Scalar`].
//!
//! Every elimination here uses the same pivot rule: the leftmost column that
//! still has a nonzero entry is pivoted next, and among the rows that could
//! serve as its pivot the one with the lowest original index wins. Pivots are
//! normalized to 1 and the output is fully reduced, so results are canonical.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coordinates of an element of V in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// Plain coordinate pairing `Σ xᵢ yᵢ` (a covector applied to a vector).
    pub fn dot(&self, other: &Vector) -> Scalar {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl Deref for Vector {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [Scalar] {
        &mut self.0
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.dim());
        let mut m = Self::zeros(r, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..r {
                m[(i, j)] = v[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vector {
        Vector(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum()).collect()
    }

    /// `vᵀ M`, i.e. M acting on a row covector.
    pub fn apply_left(&self, v: &Vector) -> Vector {
        self.transpose().apply(v)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let r = rref(&aug);
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r.reduced[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                for j in 0..n {
                    let t = m[(p, j)].clone();
                    m[(p, j)] = m[(c, j)].clone();
                    m[(c, j)] = t;
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &piv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(r, j)] -= &t;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// The inner product on V: `G[i][j] = ⟨αᵢ, αⱼ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    entries: Matrix,
}

impl GramForm {
    /// Checks symmetry and positive definiteness (leading principal minors).
    pub fn new(entries: Matrix) -> Result<Self> {
        let n = entries.rows();
        if entries.cols() != n {
            return Err(Error::BadGram("square"));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(Error::BadGram("symmetric"));
                }
            }
        }
        for k in 1..=n {
            let minor = Matrix::from_rows(
                (0..k).map(|i| (0..k).map(|j| entries[(i, j)].clone()).collect()).collect(),
            );
            if !minor.determinant().is_positive() {
                return Err(Error::BadGram("positive definite"));
            }
        }
        Ok(GramForm { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[(i, j)]
    }

    /// Covector `G v`: its i-th entry is `⟨v, αᵢ⟩`.
    pub fn lower(&self, v: &Vector) -> Vector {
        self.entries.apply(v)
    }
}

/// `uᵀ G v`.
pub fn inner_product(u: &Vector, v: &Vector, g: &GramForm) -> Result<Scalar> {
    let n = g.rank();
    if u.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: u.dim() });
    }
    if v.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.dim() });
    }
    Ok(u.dot(&g.lower(v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    /// Same shape as the input: pivot rows first (in pivot order), then zero rows.
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Rref {
    let sparse: Vec<SparseRow> = (0..m.rows()).map(|i| SparseRow::from_dense(m.row(i))).collect();
    let reduced = SparseRref::new(sparse, m.cols());
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for (i, row) in reduced.rows.iter().enumerate() {
        for (j, x) in row.iter() {
            out[(i, *j)] = x.clone();
        }
    }
    Rref { rank: reduced.rows.len(), reduced: out, pivots: reduced.pivots }
}

/// A solution of `a x = b` when one exists; free variables are set to zero.
pub fn solve(a: &Matrix, b: &Vector) -> Option<Vector> {
    assert_eq!(a.rows(), b.dim(), "solve: dimension mismatch");
    let n = a.cols();
    let rows: Vec<SparseRow> = (0..a.rows())
        .map(|i| {
            let mut row: Vec<Scalar> = a.row(i).to_vec();
            row.push(b[i].clone());
            SparseRow::from_dense(&row)
        })
        .collect();
    let r = SparseRref::new(rows, n + 1);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = Vector::zeros(n);
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        x[p] = row.get(n).cloned().unwrap_or_default();
    }
    Some(x)
}

/// Null-space basis: one vector per free column `f`, with `x_f = 1`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let r = rref(m);
    let pivot_set: BTreeSet<usize> = r.pivots.iter().copied().collect();
    (0..m.cols())
        .filter(|c| !pivot_set.contains(c))
        .map(|f| {
            let mut v = Vector::zeros(m.cols());
            v[f] = Scalar::one();
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = -&r.reduced[(i, f)];
            }
            v
        })
        .collect()
}

/// A sparse row: `(column, value)` pairs sorted by column, no zeros stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRow(Vec<(usize, Scalar)>);

impl SparseRow {
    pub fn new() -> Self {
        SparseRow(Vec::new())
    }

    pub fn from_dense(xs: &[Scalar]) -> Self {
        SparseRow(xs.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
    }

    /// From unsorted entries; duplicates are summed, zeros dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in entries {
            *acc.entry(c).or_default() += &x;
        }
        SparseRow(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, Scalar)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Option<&Scalar> {
        self.0.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &self.0[i].1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseRow {
        if c.is_zero() {
            return SparseRow::new();
        }
        SparseRow(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseRow) -> SparseRow {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|e| e.0);
            let cj = other.0.get(j).map(|e| e.0);
            match (ci, cj) {
                (Some(a), Some(b)) if a == b => {
                    let v = &self.0[i].1 + &(c * &other.0[j].1);
                    if !v.is_zero() {
                        out.push((a, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                (Some(a), None) => {
                    out.push((a, self.0[i].1.clone()));
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push((b, c * &other.0[j].1));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseRow(out)
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        for (c, x) in &self.0 {
            v[*c] = x.clone();
        }
        v
    }
}

impl FromIterator<(usize, Scalar)> for SparseRow {
    fn from_iter<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        SparseRow::from_entries(iter)
    }
}

/// Reduced row echelon form of a sparse matrix.
#[derive(Clone, Debug)]
pub struct SparseRref {
    pub cols: usize,
    /// Nonzero reduced rows, the i-th one with pivot `pivots[i]` (entry 1).
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

impl SparseRref {
    pub fn new(rows: Vec<SparseRow>, cols: usize) -> Self {
        // Invariant of the forward pass: after pivoting column c, no remaining
        // row has a nonzero entry at a column ≤ c, so the leftmost nonzero
        // column among remaining rows is the minimal leading column.
        let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut pending: Vec<Option<SparseRow>> = Vec::with_capacity(rows.len());
        for (i, r) in rows.into_iter().enumerate() {
            if let Some(c) = r.leading() {
                queue.insert((c, i));
            }
            pending.push(Some(r));
        }
        let mut echelon: Vec<SparseRow> = Vec::new();
        let mut pivots = Vec::new();
        while let Some(&(col, idx)) = queue.iter().next() {
            queue.remove(&(col, idx));
            let row = pending[idx].take().expect("row queued twice");
            let inv = row.0[0].1.inverse().expect("leading entry is nonzero");
            let prow = row.scale(&inv);
            let others: Vec<(usize, usize)> = queue.range((col, 0)..(col + 1, 0)).copied().collect();
            for key in others {
                queue.remove(&key);
                let r = pending[key.1].take().expect("queued row present");
                let f = -&r.0[0].1;
                let nr = r.axpy(&f, &prow);
                if let Some(c) = nr.leading() {
                    queue.insert((c, key.1));
                }
                pending[key.1] = Some(nr);
            }
            echelon.push(prow);
            pivots.push(col);
        }
        // back substitution, last pivot first
        let pos: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        for i in (0..echelon.len()).rev() {
            let mut row = std::mem::take(&mut echelon[i]);
            loop {
                let hit = row.0.iter().skip(1).find_map(|(c, x)| pos.get(c).map(|&k| (k, x.clone())));
                match hit {
                    Some((k, x)) => row = row.axpy(&-x, &echelon[k]),
                    None => break,
                }
            }
            echelon[i] = row;
        }
        SparseRref { cols, rows: echelon, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.binary_search(&col).is_ok()
    }

    /// Reduces `v` modulo the row space: the result vanishes on pivot columns.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(x) = out.get(p).cloned() {
                out = out.axpy(&-x, row);
            }
        }
        out
    }
}

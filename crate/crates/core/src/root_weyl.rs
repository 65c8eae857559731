//! Root systems in the simple-root basis and their finite reflection groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{inner_product, GramForm, Matrix, Vector};
use crate::scalar::Scalar;

pub const DEFAULT_RANK_CAP: usize = 4;
pub const DEFAULT_GROUP_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    F,
    G,
    /// The dihedral type I₂(5).
    I5,
    H,
}

/// A family together with its rank, e.g. `B3` or `I2(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=4).contains(&rank),
            Family::B => (2..=4).contains(&rank),
            Family::C => (3..=4).contains(&rank),
            Family::D => rank == 4,
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::I5 => rank == 2,
            Family::H => rank == 3,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    /// Every supported type, in table order.
    pub fn supported() -> Vec<CartanType> {
        use Family::*;
        let table = [
            (A, 1),
            (A, 2),
            (A, 3),
            (A, 4),
            (B, 2),
            (B, 3),
            (B, 4),
            (C, 3),
            (C, 4),
            (D, 4),
            (F, 4),
            (G, 2),
            (I5, 2),
            (H, 3),
        ];
        table.iter().map(|&(f, r)| CartanType { family: f, rank: r }).collect()
    }

    pub fn is_crystallographic(&self) -> bool {
        !matches!(self.family, Family::I5 | Family::H)
    }

    pub fn discriminant(&self) -> u32 {
        if self.is_crystallographic() {
            1
        } else {
            5
        }
    }

    /// Order of the reflection group, from the classical tables.
    pub fn group_order(&self) -> usize {
        let n = self.rank;
        let fact = |k: usize| (1..=k).product::<usize>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1 << n) * fact(n),
            Family::D => (1 << (n - 1)) * fact(n),
            Family::F => 1152,
            Family::G => 12,
            Family::I5 => 10,
            Family::H => 120,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I5 => write!(f, "I2(5)"),
            fam => write!(f, "{:?}{}", fam, self.rank),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        if t == "I2(5)" || t == "I5" {
            return CartanType::new(Family::I5, 2);
        }
        let unsupported = || Error::UnsupportedType(s.to_string());
        let mut chars = t.chars();
        let family = match chars.next().ok_or_else(unsupported)? {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'F' => Family::F,
            'G' => Family::G,
            'H' => Family::H,
            _ => return Err(unsupported()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        CartanType::new(family, rank).map_err(|_| unsupported())
    }
}

/// `(1 + √5)/2`.
fn golden() -> Scalar {
    let half = BigRational::new(1.into(), 2.into());
    Scalar::quadratic(half.clone(), half, 5).expect("5 is squarefree")
}

fn gram_matrix(t: CartanType) -> Matrix {
    let n = t.rank;
    let mut g = Matrix::zeros(n, n);
    let set = |g: &mut Matrix, i: usize, j: usize, v: Scalar| {
        g[(i, j)] = v.clone();
        g[(j, i)] = v;
    };
    let two = Scalar::from_int(2);
    let m1 = Scalar::from_int(-1);
    match t.family {
        Family::A => {
            for i in 0..n {
                g[(i, i)] = two.clone();
                if i + 1 < n {
                    set(&mut g, i, i + 1, m1.clone());
                }
            }
        }
        Family::B => {
            // α₁…α_{n−1} long (norm 2), αₙ short (norm 1)
            for i in 0..n {
                g[(i, i)] = if i + 1 == n { Scalar::one() } else { two.clone() };
                if i + 1 < n {
                    set(&mut g, i, i + 1, m1.clone());
                }
            }
        }
        Family::C => {
            // α₁…α_{n−1} short (norm 1), αₙ long (norm 2)
            for i in 0..n {
                g[(i, i)] = if i + 1 == n { two.clone() } else { Scalar::one() };
                if i + 2 < n {
                    set(&mut g, i, i + 1, Scalar::from_frac(-1, 2));
                }
            }
            set(&mut g, n - 2, n - 1, m1.clone());
        }
        Family::D => {
            // α₂ is the branch node
            for i in 0..n {
                g[(i, i)] = two.clone();
            }
            set(&mut g, 0, 1, m1.clone());
            set(&mut g, 1, 2, m1.clone());
            set(&mut g, 1, 3, m1.clone());
        }
        Family::F => {
            g[(0, 0)] = two.clone();
            g[(1, 1)] = two.clone();
            g[(2, 2)] = Scalar::one();
            g[(3, 3)] = Scalar::one();
            set(&mut g, 0, 1, m1.clone());
            set(&mut g, 1, 2, m1.clone());
            set(&mut g, 2, 3, Scalar::from_frac(-1, 2));
        }
        Family::G => {
            // α₁ short (norm 2/3), α₂ long (norm 2)
            g[(0, 0)] = Scalar::from_frac(2, 3);
            g[(1, 1)] = two.clone();
            set(&mut g, 0, 1, m1.clone());
        }
        Family::I5 => {
            g[(0, 0)] = two.clone();
            g[(1, 1)] = two.clone();
            set(&mut g, 0, 1, -golden());
        }
        Family::H => {
            for i in 0..3 {
                g[(i, i)] = two.clone();
            }
            set(&mut g, 0, 1, -golden());
            set(&mut g, 1, 2, m1.clone());
        }
    }
    g
}

/// Simple roots, all roots and the inner product, in root coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: CartanType,
    pub gram: GramForm,
    pub roots: Vec<Vector>,
    root_index: HashMap<Vector, usize>,
}

impl RootSystem {
    /// Builds the root system, refusing ranks above `rank_cap`.
    pub fn build(cartan: CartanType, rank_cap: usize) -> Result<Self> {
        if cartan.rank > rank_cap {
            return Err(Error::RankCap { rank: cartan.rank, cap: rank_cap });
        }
        let n = cartan.rank;
        let gram = GramForm::new(gram_matrix(cartan))?;
        let simple: Vec<Vector> = (0..n).map(|i| Vector::unit(n, i)).collect();
        let reflections: Vec<Matrix> = simple.iter().map(|a| reflection_matrix(&gram, a)).collect();
        let mut roots = simple.clone();
        let mut root_index: HashMap<Vector, usize> =
            simple.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut queue: VecDeque<usize> = (0..n).collect();
        while let Some(i) = queue.pop_front() {
            for r in &reflections {
                let img = r.apply(&roots[i]);
                if !root_index.contains_key(&img) {
                    root_index.insert(img.clone(), roots.len());
                    queue.push_back(roots.len());
                    roots.push(img);
                }
            }
        }
        Ok(RootSystem { cartan, gram, roots, root_index })
    }

    pub fn from_label(label: &str, rank_cap: usize) -> Result<Self> {
        Self::build(label.parse()?, rank_cap)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn discriminant(&self) -> u32 {
        self.cartan.discriminant()
    }

    pub fn is_crystallographic(&self) -> bool {
        self.cartan.is_crystallographic()
    }

    pub fn simple_root(&self, i: usize) -> Vector {
        Vector::unit(self.rank(), i)
    }

    pub fn root_position(&self, v: &Vector) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    pub fn inner(&self, u: &Vector, v: &Vector) -> Scalar {
        inner_product(u, v, &self.gram).expect("vectors live in V")
    }

    pub fn norm2(&self, i: usize) -> &Scalar {
        self.gram.entry(i, i)
    }

    /// Fundamental weight ωᵢ in root coordinates: `⟨ωᵢ, αⱼ^∨⟩ = δᵢⱼ`.
    pub fn fundamental_weight(&self, i: usize) -> Vector {
        let n = self.rank();
        let mut rhs = Vector::zeros(n);
        rhs[i] = self.norm2(i) / &Scalar::from_int(2);
        let ginv = self.gram.matrix().inverse().expect("Gram form is definite");
        ginv.apply(&rhs)
    }

    /// Converts fundamental-weight coordinates to root coordinates.
    pub fn from_weight_coords(&self, w: &[Scalar]) -> Result<Vector> {
        let n = self.rank();
        if w.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: w.len() });
        }
        let mut v = Vector::zeros(n);
        for (i, c) in w.iter().enumerate() {
            v = v.add(&self.fundamental_weight(i).scale(c));
        }
        Ok(v)
    }

    /// `(⟨x, αᵢ⟩)ᵢ`.
    pub fn pairings(&self, x: &Vector) -> Vector {
        self.gram.lower(x)
    }

    /// `⟨x, αᵢ⟩ ≥ 0` for all `i ∈ k`.
    pub fn in_chamber(&self, x: &Vector, k: &[usize]) -> bool {
        let p = self.pairings(x);
        k.iter().all(|&i| !p[i].is_negative())
    }

    pub fn is_dominant(&self, x: &Vector) -> bool {
        self.pairings(x).iter().all(|c| !c.is_negative())
    }

    pub fn is_strictly_dominant(&self, x: &Vector) -> bool {
        self.pairings(x).iter().all(Scalar::is_positive)
    }

    /// `ρ = Σ ωᵢ`.
    pub fn rho(&self) -> Vector {
        (0..self.rank()).fold(Vector::zeros(self.rank()), |acc, i| acc.add(&self.fundamental_weight(i)))
    }

    /// Reflection `x ↦ x − (2⟨x,α⟩/⟨α,α⟩)α` as a matrix on root coordinates.
    pub fn reflection(&self, alpha: &Vector) -> Result<Matrix> {
        if self.root_position(alpha).is_none() {
            return Err(Error::NotARoot);
        }
        Ok(reflection_matrix(&self.gram, alpha))
    }
}

fn reflection_matrix(gram: &GramForm, alpha: &Vector) -> Matrix {
    let n = gram.rank();
    let norm = inner_product(alpha, alpha, gram).expect("dimension");
    let factor = &Scalar::from_int(2) / &norm;
    let lowered = gram.lower(alpha);
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = &(&factor * &alpha[i]) * &lowered[j];
            m[(i, j)] -= &t;
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    /// Action on root coordinates.
    pub matrix: Matrix,
    /// `perm[i] = j` when the element sends root i to root j.
    pub perm: Vec<u32>,
    /// A reduced word in the simple reflections (0-based letters).
    pub word: Vec<u8>,
}

impl GroupElement {
    /// Simple reflections occurring in the reduced word; this is the
    /// generating set of the minimal parabolic subgroup containing the element.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.word.iter().map(|&l| l as usize).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".into()
        } else {
            self.word.iter().map(|l| format!("r{}", l + 1)).collect::<Vec<_>>().join(" ")
        }
    }
}

/// The finite reflection group W, listed in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<GroupElement>,
    index: HashMap<Vec<u32>, usize>,
    generators: Vec<usize>,
    rank: usize,
}

/// A parabolic subgroup `W_K`, or any element subset of W (e.g. a stabilizer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    /// Generating simple reflections when the subgroup is parabolic (0-based).
    pub k: Vec<usize>,
    /// Sorted indices into [`WeylGroup::elements`].
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: usize) -> bool {
        self.elements.binary_search(&w).is_ok()
    }
}

impl WeylGroup {
    pub fn generate(rs: &RootSystem) -> Result<Self> {
        Self::generate_capped(rs, DEFAULT_GROUP_CAP)
    }

    pub fn generate_capped(rs: &RootSystem, cap: usize) -> Result<Self> {
        let n = rs.rank();
        let simple: Vec<GroupElement> = (0..n)
            .map(|i| {
                let matrix = reflection_matrix(&rs.gram, &rs.simple_root(i));
                let perm = root_permutation(rs, &matrix);
                GroupElement { matrix, perm, word: vec![i as u8] }
            })
            .collect();
        let id = GroupElement {
            matrix: Matrix::identity(n),
            perm: (0..rs.roots.len() as u32).collect(),
            word: vec![],
        };
        let mut elements = vec![id];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(elements[0].perm.clone(), 0);
        let mut generators = vec![0; n];
        let mut head = 0;
        while head < elements.len() {
            for (i, s) in simple.iter().enumerate() {
                // w·rᵢ acts as rᵢ first, then w
                let perm: Vec<u32> = s.perm.iter().map(|&j| elements[head].perm[j as usize]).collect();
                if index.contains_key(&perm) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                let matrix = elements[head].matrix.mul(&s.matrix);
                let mut word = elements[head].word.clone();
                word.push(i as u8);
                index.insert(perm.clone(), elements.len());
                if head == 0 {
                    generators[i] = elements.len();
                }
                elements.push(GroupElement { matrix, perm, word });
            }
            head += 1;
        }
        Ok(WeylGroup { elements, index, generators, rank: n })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the simple reflection rᵢ.
    pub fn generator(&self, i: usize) -> usize {
        self.generators[i]
    }

    pub fn element(&self, w: usize) -> &GroupElement {
        &self.elements[w]
    }

    pub fn position_of_perm(&self, perm: &[u32]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// Index of `a ∘ b` (apply b first).
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let pa = &self.elements[a].perm;
        let perm: Vec<u32> = self.elements[b].perm.iter().map(|&j| pa[j as usize]).collect();
        self.index[&perm]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let p = &self.elements[a].perm;
        let mut inv = vec![0u32; p.len()];
        for (i, &j) in p.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        self.index[&inv]
    }

    pub fn apply(&self, w: usize, v: &Vector) -> Vector {
        self.elements[w].matrix.apply(v)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { k: (0..self.rank).collect(), elements: (0..self.order()).collect() }
    }

    /// `W_K` for `K ⊆ {0, …, n−1}`.
    pub fn parabolic(&self, k: &[usize]) -> Subgroup {
        let mut k: Vec<usize> = k.to_vec();
        k.sort_unstable();
        k.dedup();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(w) = stack.pop() {
            for &i in &k {
                let x = self.compose(w, self.generators[i]);
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        let elements = (0..self.order()).filter(|&i| seen[i]).collect();
        Subgroup { k, elements }
    }

    /// Deduplicated orbit of `v` under `sub`, in element order.
    pub fn orbit(&self, sub: &Subgroup, v: &Vector) -> Vec<Vector> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &w in &sub.elements {
            let img = self.apply(w, v);
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        out
    }

    /// Elements of `sub` satisfying `pred`.
    pub fn stabilizer_in(&self, sub: &Subgroup, mut pred: impl FnMut(usize) -> bool) -> Subgroup {
        Subgroup { k: vec![], elements: sub.elements.iter().copied().filter(|&w| pred(w)).collect() }
    }

    /// Left-coset representatives of `stab` in `sub`, each the element of
    /// least discovery index in its coset.
    pub fn cosets(&self, sub: &Subgroup, stab: &Subgroup) -> Vec<usize> {
        let mut covered = std::collections::HashSet::new();
        let mut reps = Vec::new();
        for &s in &sub.elements {
            if covered.contains(&s) {
                continue;
            }
            reps.push(s);
            for &h in &stab.elements {
                covered.insert(self.compose(s, h));
            }
        }
        reps
    }

    /// Subgroup generated by the given elements.
    pub fn generated_by(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(w) = stack.pop() {
            for &g in gens {
                let x = self.compose(w, g);
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        Subgroup { k: vec![], elements: (0..self.order()).filter(|&i| seen[i]).collect() }
    }
}

impl WeylGroup {
    /// Conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for x in 0..self.order() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[x] = id;
            let mut members = vec![x];
            let mut head = 0;
            while head < members.len() {
                let y = members[head];
                for &g in &self.generators {
                    // simple reflections are involutions, so g y g is a conjugate
                    let z = self.compose(g, self.compose(y, g));
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        members.push(z);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

fn root_permutation(rs: &RootSystem, m: &Matrix) -> Vec<u32> {
    rs.roots
        .iter()
        .map(|r| rs.root_position(&m.apply(r)).expect("group elements permute roots") as u32)
        .collect()
}

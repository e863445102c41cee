//! Subalgebras of N x N matrices spanned by disjoint 0/1 pattern matrices.
//!
//! A basis element is a pattern: a set of matrix positions, standing for the
//! 0/1 matrix with ones exactly there. Patterns must have pairwise disjoint
//! supports, the span must be closed under the ambient matrix product, and it
//! must contain the identity matrix. Closure validation precomputes the
//! structure constants `c[i][j][k]` with `b_i * b_j = sum_k c[i][j][k] b_k`,
//! and every later product is evaluated through that table.
//!
//! Row/column labels are 1-based throughout (as in `e_12`); basis indices are
//! 0-based array indices.

use crate::ring::{Ring, Zmod};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Errors from algebra construction and element arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("matrix size must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error("basis pattern at index {index} is empty")]
    EmptyPattern { index: usize },
    #[error("basis pattern at index {index} has position ({0}, {1}) outside a {ambient} x {ambient} matrix", position.0, position.1)]
    PositionOutOfRange {
        index: usize,
        position: (u32, u32),
        ambient: usize,
    },
    #[error("basis pattern at index {index} lists position ({0}, {1}) twice", position.0, position.1)]
    DuplicatePosition { index: usize, position: (u32, u32) },
    #[error("basis patterns at indices {first} and {second} overlap at position ({0}, {1})", position.0, position.1)]
    OverlappingPatterns {
        first: usize,
        second: usize,
        position: (u32, u32),
    },
    #[error("span is not closed under multiplication: the product of basis elements {left} and {right} is not a combination of basis elements")]
    NotClosed { left: usize, right: usize },
    #[error("the identity matrix is not in the span of the basis")]
    IdentityNotInSpan,
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("matrix is not in the span of the basis")]
    NotInSpan,
}

/// A basis pattern: the 0/1 matrix with ones at the listed positions.
/// Positions are (row, column) pairs with 1-based labels, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pattern {
    positions: Vec<(u32, u32)>,
}

impl Pattern {
    /// Builds a pattern from positions in any order; duplicates are rejected
    /// later, during algebra construction, so the offending index is known.
    pub fn new(mut positions: Vec<(u32, u32)>) -> Self {
        positions.sort_unstable();
        Pattern { positions }
    }

    pub fn singleton(row: u32, col: u32) -> Self {
        Pattern {
            positions: vec![(row, col)],
        }
    }

    pub fn positions(&self) -> &[(u32, u32)] {
        &self.positions
    }
}

/// How an algebra was constructed. Witness synthesis and coefficient tables
/// are only available for the two matrix-unit shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// All of M_n: every matrix unit `e_ij`, row-major.
    Full { n: usize },
    /// Upper triangular T_n: the units `e_ij` with `i <= j`, row-major.
    UpperTriangular { n: usize },
    /// An arbitrary validated pattern basis.
    Pattern,
}

/// A pattern-basis matrix algebra over a coefficient ring.
#[derive(Clone, Debug)]
pub struct Algebra<R: Ring> {
    ring: R,
    ambient_n: usize,
    kind: AlgebraKind,
    basis: Vec<Pattern>,
    /// Sparse structure constants: `products[i * d + j]` lists the nonzero
    /// `(k, c)` with `b_i * b_j = sum c * b_k`. For matrix-unit bases each
    /// list has at most one entry.
    products: Vec<Vec<(usize, R::Elem)>>,
    unit: Vec<R::Elem>,
    /// Position -> basis index, populated when every pattern is a singleton.
    singleton_index: Option<BTreeMap<(u32, u32), usize>>,
}

impl<R: Ring> PartialEq for Algebra<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.ambient_n == other.ambient_n
            && self.kind == other.kind
            && self.basis == other.basis
    }
}
impl<R: Ring> Eq for Algebra<R> {}

impl<R: Ring> Algebra<R> {
    /// The full matrix algebra M_n, basis `e_11, e_12, ..., e_nn` row-major.
    pub fn full(n: usize, ring: R) -> Result<Arc<Self>, AlgebraError> {
        if n < 1 {
            return Err(AlgebraError::InvalidSize(n));
        }
        let mut basis = Vec::with_capacity(n * n);
        for i in 1..=n as u32 {
            for j in 1..=n as u32 {
                basis.push(Pattern::singleton(i, j));
            }
        }
        Self::build(n, basis, ring, AlgebraKind::Full { n })
    }

    /// The upper triangular algebra T_n, basis `e_ij` with `i <= j` row-major.
    pub fn upper_triangular(n: usize, ring: R) -> Result<Arc<Self>, AlgebraError> {
        if n < 1 {
            return Err(AlgebraError::InvalidSize(n));
        }
        let mut basis = Vec::new();
        for i in 1..=n as u32 {
            for j in i..=n as u32 {
                basis.push(Pattern::singleton(i, j));
            }
        }
        Self::build(n, basis, ring, AlgebraKind::UpperTriangular { n })
    }

    /// An algebra from arbitrary patterns; validates disjointness, closure
    /// under the ambient product, and membership of the identity matrix.
    pub fn from_patterns(
        ambient_n: usize,
        patterns: Vec<Pattern>,
        ring: R,
    ) -> Result<Arc<Self>, AlgebraError> {
        if ambient_n < 1 {
            return Err(AlgebraError::InvalidSize(ambient_n));
        }
        Self::build(ambient_n, patterns, ring, AlgebraKind::Pattern)
    }

    fn build(
        ambient_n: usize,
        basis: Vec<Pattern>,
        ring: R,
        kind: AlgebraKind,
    ) -> Result<Arc<Self>, AlgebraError> {
        let n = ambient_n as u32;
        let mut seen: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for (index, pat) in basis.iter().enumerate() {
            if pat.positions.is_empty() {
                return Err(AlgebraError::EmptyPattern { index });
            }
            for w in pat.positions.windows(2) {
                if w[0] == w[1] {
                    return Err(AlgebraError::DuplicatePosition {
                        index,
                        position: w[0],
                    });
                }
            }
            for &(r, c) in &pat.positions {
                if r < 1 || c < 1 || r > n || c > n {
                    return Err(AlgebraError::PositionOutOfRange {
                        index,
                        position: (r, c),
                        ambient: ambient_n,
                    });
                }
                if let Some(&first) = seen.get(&(r, c)) {
                    return Err(AlgebraError::OverlappingPatterns {
                        first,
                        second: index,
                        position: (r, c),
                    });
                }
                seen.insert((r, c), index);
            }
        }

        let d = basis.len();
        // Rows of each pattern indexed by row label, for product matching.
        let by_row: Vec<BTreeMap<u32, Vec<u32>>> = basis
            .iter()
            .map(|p| {
                let mut m: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
                for &(r, c) in &p.positions {
                    m.entry(r).or_default().push(c);
                }
                m
            })
            .collect();

        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for (j, rows_j) in by_row.iter().enumerate() {
                // Ambient product of the two 0/1 matrices, with entries
                // already mapped into the coefficient ring.
                let mut entries: BTreeMap<(u32, u32), R::Elem> = BTreeMap::new();
                for &(r, t) in &basis[i].positions {
                    if let Some(cols) = rows_j.get(&t) {
                        for &c in cols {
                            let slot = entries.entry((r, c)).or_insert_with(|| ring.zero());
                            let one = ring.one();
                            ring.add_assign(slot, &one);
                        }
                    }
                }
                entries.retain(|_, v| !ring.is_zero(v));

                // Decompose over the basis: constant on each pattern,
                // nothing left outside the union of patterns.
                let mut decomp = Vec::new();
                for (k, pat) in basis.iter().enumerate() {
                    let first = entries.get(&pat.positions[0]).cloned();
                    match first {
                        None => {
                            if pat.positions.iter().any(|pos| entries.contains_key(pos)) {
                                return Err(AlgebraError::NotClosed { left: i, right: j });
                            }
                        }
                        Some(v) => {
                            if pat.positions.iter().any(|pos| entries.get(pos) != Some(&v)) {
                                return Err(AlgebraError::NotClosed { left: i, right: j });
                            }
                            for pos in &pat.positions {
                                entries.remove(pos);
                            }
                            decomp.push((k, v));
                        }
                    }
                }
                if !entries.is_empty() {
                    return Err(AlgebraError::NotClosed { left: i, right: j });
                }
                products.push(decomp);
            }
        }

        // Identity matrix: patterns fully on the diagonal get coefficient 1,
        // patterns fully off it get 0, anything mixed cannot match, and the
        // chosen patterns must cover the whole diagonal.
        let mut unit = Vec::with_capacity(d);
        let mut covered: BTreeSet<u32> = BTreeSet::new();
        for pat in &basis {
            let diag = pat.positions.iter().filter(|(r, c)| r == c).count();
            if diag == 0 {
                unit.push(ring.zero());
            } else if diag == pat.positions.len() {
                unit.push(ring.one());
                covered.extend(pat.positions.iter().map(|&(r, _)| r));
            } else {
                return Err(AlgebraError::IdentityNotInSpan);
            }
        }
        if covered.len() != ambient_n {
            return Err(AlgebraError::IdentityNotInSpan);
        }

        let singleton_index = basis.iter().all(|p| p.positions.len() == 1).then(|| {
            basis
                .iter()
                .enumerate()
                .map(|(k, p)| (p.positions[0], k))
                .collect()
        });

        Ok(Arc::new(Algebra {
            ring,
            ambient_n,
            kind,
            basis,
            products,
            unit,
            singleton_index,
        }))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    /// Basis length d (the algebra is a free module of rank d).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    /// Side length N of the ambient matrix space.
    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }
    pub fn basis_patterns(&self) -> &[Pattern] {
        &self.basis
    }
    pub fn unit_coords(&self) -> &[R::Elem] {
        &self.unit
    }

    /// Nonzero structure constants of `b_i * b_j`.
    pub fn product_decomp(&self, i: usize, j: usize) -> &[(usize, R::Elem)] {
        &self.products[i * self.dim() + j]
    }

    /// The structure constant `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> R::Elem {
        self.product_decomp(i, j)
            .iter()
            .find(|(t, _)| *t == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Basis index of the matrix unit `e_{row,col}` when the basis consists
    /// of singletons; `None` otherwise or when the unit is not in the basis.
    pub fn unit_index(&self, row: u32, col: u32) -> Option<usize> {
        self.singleton_index.as_ref()?.get(&(row, col)).copied()
    }

    /// For singleton bases, the (row, col) position of basis element `k`.
    pub fn unit_position(&self, k: usize) -> Option<(u32, u32)> {
        self.singleton_index.as_ref()?;
        Some(self.basis[k].positions[0])
    }

    /// Number of elements `|C|^d`, or `None` when infinite or overflowing.
    pub fn carrier_size(&self) -> Option<u64> {
        let c = self.ring.carrier_size()?;
        let mut total: u64 = 1;
        for _ in 0..self.dim() {
            total = total.checked_mul(c)?;
        }
        Some(total)
    }

    /// Low-level product on raw coordinate slices (all of length d).
    /// `out` is overwritten.
    pub fn mul_coords_into(&self, a: &[R::Elem], b: &[R::Elem], out: &mut [R::Elem]) {
        let d = self.dim();
        debug_assert!(a.len() == d && b.len() == d && out.len() == d);
        for slot in out.iter_mut() {
            self.ring.set_zero(slot);
        }
        for (i, ai) in a.iter().enumerate() {
            if self.ring.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if self.ring.is_zero(bj) {
                    continue;
                }
                let p = self.ring.mul(ai, bj);
                for (k, c) in self.product_decomp(i, j) {
                    self.ring.mul_add_assign(&mut out[*k], &p, c);
                }
            }
        }
    }
}

impl<R: Ring> Algebra<R> {
    pub fn elem(self: &Arc<Self>, coords: Vec<R::Elem>) -> Result<MatElem<R>, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::CoordinateCount {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        Ok(MatElem {
            algebra: self.clone(),
            coords,
        })
    }

    pub fn elem_from_i64(self: &Arc<Self>, coords: &[i64]) -> Result<MatElem<R>, AlgebraError> {
        let ring = self.ring();
        self.elem(coords.iter().map(|&v| ring.from_i64(v)).collect())
    }

    pub fn zero_elem(self: &Arc<Self>) -> MatElem<R> {
        let coords = vec![self.ring.zero(); self.dim()];
        MatElem {
            algebra: self.clone(),
            coords,
        }
    }

    pub fn unit_elem(self: &Arc<Self>) -> MatElem<R> {
        MatElem {
            algebra: self.clone(),
            coords: self.unit.clone(),
        }
    }

    /// The basis element `b_k` (0-based index; must be below d).
    pub fn basis_elem(self: &Arc<Self>, k: usize) -> MatElem<R> {
        assert!(k < self.dim(), "basis index {k} out of range");
        let mut coords = vec![self.ring.zero(); self.dim()];
        coords[k] = self.ring.one();
        MatElem {
            algebra: self.clone(),
            coords,
        }
    }

    /// Extracts coordinates from a dense ambient matrix; fails when the
    /// matrix is not in the span of the basis.
    pub fn from_dense(self: &Arc<Self>, rows: &[Vec<R::Elem>]) -> Result<MatElem<R>, AlgebraError> {
        let n = self.ambient_n;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::CoordinateCount {
                expected: n,
                got: rows.len(),
            });
        }
        let at = |r: u32, c: u32| &rows[(r - 1) as usize][(c - 1) as usize];
        let mut coords = Vec::with_capacity(self.dim());
        let mut claimed: BTreeSet<(u32, u32)> = BTreeSet::new();
        for pat in &self.basis {
            let (r0, c0) = pat.positions[0];
            let v = at(r0, c0).clone();
            if pat.positions.iter().any(|&(r, c)| at(r, c) != &v) {
                return Err(AlgebraError::NotInSpan);
            }
            claimed.extend(pat.positions.iter().copied());
            coords.push(v);
        }
        for r in 1..=n as u32 {
            for c in 1..=n as u32 {
                if !claimed.contains(&(r, c)) && !self.ring.is_zero(at(r, c)) {
                    return Err(AlgebraError::NotInSpan);
                }
            }
        }
        self.elem(coords)
    }
}

/// True when the two handles denote the same algebra (pointer or content).
pub fn same_algebra<R: Ring>(a: &Arc<Algebra<R>>, b: &Arc<Algebra<R>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An algebra element, stored as coordinates over the pattern basis.
#[derive(Clone, Debug)]
pub struct MatElem<R: Ring> {
    algebra: Arc<Algebra<R>>,
    coords: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for MatElem<R> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}
impl<R: Ring> Eq for MatElem<R> {}

impl<R: Ring> MatElem<R> {
    pub fn algebra(&self) -> &Arc<Algebra<R>> {
        &self.algebra
    }
    pub fn coords(&self) -> &[R::Elem] {
        &self.coords
    }
    pub fn into_coords(self) -> Vec<R::Elem> {
        self.coords
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        let ring = self.algebra.ring();
        self.coords.iter().all(|c| ring.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let ring = self.algebra.ring();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| ring.add(a, b))
            .collect();
        Ok(MatElem {
            algebra: self.algebra.clone(),
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let ring = self.algebra.ring();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| ring.sub(a, b))
            .collect();
        Ok(MatElem {
            algebra: self.algebra.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> Self {
        let ring = self.algebra.ring();
        MatElem {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|a| ring.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let ring = self.algebra.ring();
        MatElem {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|a| ring.mul(c, a)).collect(),
        }
    }

    /// Product in the algebra, evaluated through the structure constants.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = vec![self.algebra.ring().zero(); self.algebra.dim()];
        self.algebra
            .mul_coords_into(&self.coords, &other.coords, &mut out);
        Ok(MatElem {
            algebra: self.algebra.clone(),
            coords: out,
        })
    }

    /// The element as a dense N x N ambient matrix.
    pub fn to_dense(&self) -> Vec<Vec<R::Elem>> {
        let ring = self.algebra.ring();
        let n = self.algebra.ambient_n();
        let mut rows = vec![vec![ring.zero(); n]; n];
        for (k, pat) in self.algebra.basis_patterns().iter().enumerate() {
            for &(r, c) in pat.positions() {
                rows[(r - 1) as usize][(c - 1) as usize] = self.coords[k].clone();
            }
        }
        rows
    }

    /// Canonical text form: a sum of `coeff*e_rc` terms for singleton bases,
    /// or `coeff*b_k` terms otherwise; `0` for the zero element.
    pub fn render(&self) -> String {
        let ring = self.algebra.ring();
        let mut parts = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let name = match self.algebra.unit_position(k) {
                Some((r, cl)) => format!("e_{r}{cl}"),
                None => format!("b_{}", k + 1),
            };
            if ring.is_one(c) {
                parts.push(name);
            } else {
                parts.push(format!("{}*{}", ring.render(c), name));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<R: Ring> fmt::Display for MatElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The seven-dimensional triangular subalgebra of M_4 over Z/2 built from
/// the patterns `e11+e22`, `e33+e44`, `e12`, `e13`, `e14`, `e24`, `e34`.
/// Its unit is `b_1 + b_2`, and it carries the canonical Jordan-but-not-
/// Leibniz map returned by `linmap::example1_map`.
pub fn example1_algebra() -> Arc<Algebra<Zmod>> {
    let ring = Zmod::new(2).expect("modulus 2 is valid");
    let patterns = vec![
        Pattern::new(vec![(1, 1), (2, 2)]),
        Pattern::new(vec![(3, 3), (4, 4)]),
        Pattern::singleton(1, 2),
        Pattern::singleton(1, 3),
        Pattern::singleton(1, 4),
        Pattern::singleton(2, 4),
        Pattern::singleton(3, 4),
    ];
    Algebra::from_patterns(4, patterns, ring).expect("the example basis is closed and unital")
}

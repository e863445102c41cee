//! Exact solution spaces: every linear map of a given class on an algebra,
//! computed two independent ways.
//!
//! The basis-level conditions from the classifier are linear in the map's
//! image coordinates, so over a prime modulus the space of all Jordan
//! derivations (or derivations, or antiderivations) is the kernel of an
//! explicit matrix, computed by exact elimination. Over tiny finite
//! carriers the same space can instead be found by testing every candidate
//! map with the classifier. The two methods share no code beyond the
//! condition blocks themselves, so their agreement is a meaningful
//! cross-check, and both are exercised against each other in the tests.
//!
//! Enumeration beyond the plain-scan limit uses a staged search: image rows
//! are fixed one at a time and every condition block is applied as soon as
//! all image rows it reads are fixed (`Block::ready_at`). A full map
//! survives the staged search iff it survives the full scan, because each
//! block is checked at least once on every completed candidate; pruning
//! only removes prefixes that already violate a block, which no completion
//! can repair.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{same_algebra, Algebra};
use crate::classify::{block_holds, condition_blocks, Block, Factor, MapKind};
use crate::linmap::LinearMap;
use crate::ring::{Ring, Zmod};

/// Default cap on candidate maps visited by enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("kernel computation needs a prime modulus, got {modulus}")]
    NonPrimeModulus { modulus: u64 },
    /// `needed` is the exact demand when it is known up front, otherwise
    /// the candidate count reached when the budget cut the search off.
    #[error("search budget {budget} exceeded (candidate demand {needed})")]
    BudgetExceeded { budget: u64, needed: u64 },
    #[error("exhaustive enumeration needs a finite coefficient ring")]
    InfiniteRing,
    #[error("space is represented by generators only; full membership is not available")]
    GeneratorsOnly,
}

/// Which space a `MapSpace` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Jordan,
    Derivation,
    Antiderivation,
    Inner,
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::Jordan => "jordan",
            SpaceKind::Derivation => "derivation",
            SpaceKind::Antiderivation => "antiderivation",
            SpaceKind::Inner => "inner",
        }
    }
}

impl From<MapKind> for SpaceKind {
    fn from(kind: MapKind) -> Self {
        match kind {
            MapKind::Jordan => SpaceKind::Jordan,
            MapKind::Derivation => SpaceKind::Derivation,
            MapKind::Antiderivation => SpaceKind::Antiderivation,
        }
    }
}

// ---------------------------------------------------------------------------
// Constraint systems.
// ---------------------------------------------------------------------------

/// The basis-level conditions of one map class, linearized: one row per
/// output coordinate per condition block, over the d*d unknowns
/// `x_{s,c}` = coordinate c of the image of basis element s (flattened as
/// `s*d + c`, matching `LinearMap::flat`). All-zero rows are dropped.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<R: Ring> {
    algebra: Arc<Algebra<R>>,
    kind: MapKind,
    block_count: usize,
    rows: Vec<Vec<R::Elem>>,
}

impl<R: Ring> ConstraintSystem<R> {
    pub fn algebra(&self) -> &Arc<Algebra<R>> {
        &self.algebra
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Number of unknowns, d*d.
    pub fn unknowns(&self) -> usize {
        let d = self.algebra.dim();
        d * d
    }

    /// Number of condition blocks the rows came from.
    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn rows(&self) -> &[Vec<R::Elem>] {
        &self.rows
    }
}

/// Linearizes the conditions of `kind` into a constraint system.
pub fn build_constraints<R: Ring>(algebra: &Arc<Algebra<R>>, kind: MapKind) -> ConstraintSystem<R> {
    let ring = algebra.ring();
    let d = algebra.dim();
    let blocks = condition_blocks(algebra.as_ref(), kind);
    let block_count = blocks.len();
    let mut rows = Vec::new();
    for block in &blocks {
        let mut block_rows = vec![vec![ring.zero(); d * d]; d];
        for t in &block.terms {
            match t.factor {
                Factor::Plain => {
                    for (r, row) in block_rows.iter_mut().enumerate() {
                        ring.add_assign(&mut row[t.image * d + r], &t.coeff);
                    }
                }
                Factor::RightMulBasis(b) => {
                    for x in 0..d {
                        for (k, c) in algebra.product_decomp(x, b) {
                            let v = ring.mul(&t.coeff, c);
                            ring.add_assign(&mut block_rows[*k][t.image * d + x], &v);
                        }
                    }
                }
                Factor::LeftMulBasis(b) => {
                    for x in 0..d {
                        for (k, c) in algebra.product_decomp(b, x) {
                            let v = ring.mul(&t.coeff, c);
                            ring.add_assign(&mut block_rows[*k][t.image * d + x], &v);
                        }
                    }
                }
            }
        }
        for row in block_rows {
            if row.iter().any(|v| !ring.is_zero(v)) {
                rows.push(row);
            }
        }
    }
    ConstraintSystem {
        algebra: algebra.clone(),
        kind,
        block_count,
        rows,
    }
}

// ---------------------------------------------------------------------------
// Map spaces.
// ---------------------------------------------------------------------------

/// A computed solution space.
#[derive(Clone, Debug)]
pub struct MapSpace<R: Ring> {
    algebra: Arc<Algebra<R>>,
    kind: SpaceKind,
    repr: SpaceRepr<R>,
}

#[derive(Clone, Debug)]
enum SpaceRepr<R: Ring> {
    /// Nullspace basis over a prime modulus, in standard form: basis
    /// vector t has coordinate 1 at `free_cols[t]` and 0 at every other
    /// free column, so any solution equals the combination determined by
    /// its own free coordinates.
    Kernel {
        basis: Vec<Vec<R::Elem>>,
        free_cols: Vec<usize>,
    },
    /// Explicit maps, deduplicated and sorted by canonical key. With
    /// `exhaustive` false the list only generates the space (inner maps
    /// over the integers).
    List {
        members: Vec<LinearMap<R>>,
        keys: Vec<String>,
        exhaustive: bool,
    },
}

fn make_list<R: Ring>(
    algebra: &Arc<Algebra<R>>,
    kind: SpaceKind,
    maps: Vec<LinearMap<R>>,
    exhaustive: bool,
) -> MapSpace<R> {
    let mut dedup = std::collections::BTreeMap::new();
    for m in maps {
        dedup.insert(m.canonical_key(), m);
    }
    let (keys, members) = dedup.into_iter().unzip();
    MapSpace {
        algebra: algebra.clone(),
        kind,
        repr: SpaceRepr::List {
            members,
            keys,
            exhaustive,
        },
    }
}

impl<R: Ring> MapSpace<R> {
    pub fn algebra(&self) -> &Arc<Algebra<R>> {
        &self.algebra
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// Kernel dimension, when the space came from elimination.
    pub fn dimension(&self) -> Option<usize> {
        match &self.repr {
            SpaceRepr::Kernel { basis, .. } => Some(basis.len()),
            SpaceRepr::List { .. } => None,
        }
    }

    /// Exact member count, when known (and representable).
    pub fn count(&self) -> Option<u64> {
        match &self.repr {
            SpaceRepr::Kernel { basis, .. } => {
                let q = self.algebra.ring().carrier_size()?;
                let dim = u32::try_from(basis.len()).ok()?;
                q.checked_pow(dim)
            }
            SpaceRepr::List {
                members,
                exhaustive,
                ..
            } => exhaustive.then(|| members.len() as u64),
        }
    }

    /// True when the space's full membership is decidable from this
    /// representation.
    pub fn definite(&self) -> bool {
        match &self.repr {
            SpaceRepr::Kernel { .. } => true,
            SpaceRepr::List { exhaustive, .. } => *exhaustive,
        }
    }

    pub fn repr_name(&self) -> &'static str {
        match &self.repr {
            SpaceRepr::Kernel { .. } => "kernel basis",
            SpaceRepr::List {
                exhaustive: true, ..
            } => "explicit list",
            SpaceRepr::List {
                exhaustive: false, ..
            } => "generators",
        }
    }

    /// The stored maps: a kernel basis, the full member list, or the
    /// generator list, depending on the representation.
    pub fn representatives(&self) -> Vec<LinearMap<R>> {
        match &self.repr {
            SpaceRepr::Kernel { basis, .. } => basis
                .iter()
                .map(|v| {
                    LinearMap::from_flat(&self.algebra, v.clone())
                        .expect("basis vectors have d*d coordinates")
                })
                .collect(),
            SpaceRepr::List { members, .. } => members.clone(),
        }
    }

    /// Every map in the space. Expanding a kernel basis visits
    /// `q^dimension` maps and respects `budget`; a generators-only list
    /// refuses.
    pub fn members(&self, budget: u64) -> Result<Vec<LinearMap<R>>, SolverError> {
        match &self.repr {
            SpaceRepr::List {
                members,
                exhaustive,
                ..
            } => {
                if !exhaustive {
                    return Err(SolverError::GeneratorsOnly);
                }
                Ok(members.clone())
            }
            SpaceRepr::Kernel { basis, .. } => {
                let ring = self.algebra.ring();
                let needed = self.count().unwrap_or(u64::MAX);
                if needed > budget {
                    return Err(SolverError::BudgetExceeded { budget, needed });
                }
                let q = ring.carrier_size().expect("kernel rings are finite");
                let dim = basis.len();
                let len = self.unknown_count();
                let mut out = Vec::with_capacity(needed as usize);
                let mut idx = vec![0u64; dim];
                loop {
                    let mut flat = vec![ring.zero(); len];
                    for (t, &i) in idx.iter().enumerate() {
                        let c = ring.elem_at(i).expect("index below carrier size");
                        if ring.is_zero(&c) {
                            continue;
                        }
                        for (slot, bv) in flat.iter_mut().zip(&basis[t]) {
                            ring.mul_add_assign(slot, &c, bv);
                        }
                    }
                    out.push(
                        LinearMap::from_flat(&self.algebra, flat)
                            .expect("combinations have d*d coordinates"),
                    );
                    if !advance_odometer(&mut idx, q) {
                        return Ok(out);
                    }
                }
            }
        }
    }

    /// Canonical keys of all members, for set comparison.
    pub fn key_set(&self, budget: u64) -> Result<BTreeSet<String>, SolverError> {
        match &self.repr {
            SpaceRepr::List {
                keys,
                exhaustive: true,
                ..
            } => Ok(keys.iter().cloned().collect()),
            _ => Ok(self
                .members(budget)?
                .iter()
                .map(|m| m.canonical_key())
                .collect()),
        }
    }

    /// Membership test. A kernel decides by reconstructing the unique
    /// solution with the candidate's free coordinates; an exhaustive list
    /// decides by key lookup.
    pub fn contains(&self, map: &LinearMap<R>) -> Result<bool, SolverError> {
        if !same_algebra(map.algebra(), &self.algebra) {
            return Ok(false);
        }
        match &self.repr {
            SpaceRepr::List {
                keys, exhaustive, ..
            } => {
                if !exhaustive {
                    return Err(SolverError::GeneratorsOnly);
                }
                Ok(keys.binary_search(&map.canonical_key()).is_ok())
            }
            SpaceRepr::Kernel { basis, free_cols } => {
                let ring = self.algebra.ring();
                let flat = map.flat();
                let mut combo = vec![ring.zero(); flat.len()];
                for (bv, &f) in basis.iter().zip(free_cols) {
                    let c = &flat[f];
                    if ring.is_zero(c) {
                        continue;
                    }
                    for (slot, v) in combo.iter_mut().zip(bv) {
                        ring.mul_add_assign(slot, c, v);
                    }
                }
                Ok(combo.as_slice() == flat)
            }
        }
    }

    fn unknown_count(&self) -> usize {
        let d = self.algebra.dim();
        d * d
    }
}

/// Set equality of two computed spaces (the kinds may differ; that is the
/// interesting case). Both must be definite.
pub fn same_space<R: Ring>(a: &MapSpace<R>, b: &MapSpace<R>) -> Result<bool, SolverError> {
    if !a.definite() || !b.definite() {
        return Err(SolverError::GeneratorsOnly);
    }
    if !same_algebra(&a.algebra, &b.algebra) {
        return Ok(false);
    }
    match (&a.repr, &b.repr) {
        (SpaceRepr::Kernel { basis: ba, .. }, SpaceRepr::Kernel { basis: bb, .. }) => {
            if ba.len() != bb.len() {
                return Ok(false);
            }
            for v in a.representatives() {
                if !b.contains(&v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (SpaceRepr::Kernel { .. }, SpaceRepr::List { members, .. }) => {
            if a.count() != Some(members.len() as u64) {
                return Ok(false);
            }
            for m in members {
                if !a.contains(m)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (SpaceRepr::List { .. }, SpaceRepr::Kernel { .. }) => same_space(b, a),
        (SpaceRepr::List { keys: ka, .. }, SpaceRepr::List { keys: kb, .. }) => Ok(ka == kb),
    }
}

// ---------------------------------------------------------------------------
// Kernel computation over prime moduli.
// ---------------------------------------------------------------------------

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3u64;
    while f.checked_mul(f).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a nonzero mod p.
    pow_mod(a, p - 2, p)
}

/// Dense RREF over GF(p); returns the reduced rows and pivot columns.
fn rref_mod_p(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(r) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, r);
        let inv = inv_mod(m[rank][col], p);
        for v in &mut m[rank] {
            *v = mul_mod(*v, inv, p);
        }
        for r2 in 0..m.len() {
            if r2 == rank || m[r2][col] == 0 {
                continue;
            }
            let f = m[r2][col];
            let (head, tail) = m.split_at_mut(rank.max(r2));
            let (pivot_row, row) = if r2 > rank {
                (&head[rank], &mut tail[0])
            } else {
                (&tail[0], &mut head[r2])
            };
            for (slot, pv) in row.iter_mut().zip(pivot_row) {
                *slot = (*slot + p - mul_mod(*pv, f, p)) % p;
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    m.truncate(rank);
    (m, pivot_cols)
}

/// Bit-packed RREF over GF(2); returns packed reduced rows and pivot
/// columns. Each row is `(ncols + 63) / 64` words, bit `c % 64` of word
/// `c / 64` holding column c.
fn rref_gf2(rows: &[Vec<u64>], ncols: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
    let words = ncols.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut packed = vec![0u64; words];
            for (c, &v) in row.iter().enumerate() {
                if v & 1 == 1 {
                    packed[c / 64] |= 1u64 << (c % 64);
                }
            }
            packed
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let (w, b) = (col / 64, col % 64);
        let Some(r) = (rank..m.len()).find(|&r| (m[r][w] >> b) & 1 == 1) else {
            continue;
        };
        m.swap(rank, r);
        for r2 in 0..m.len() {
            if r2 != rank && (m[r2][w] >> b) & 1 == 1 {
                let (head, tail) = m.split_at_mut(rank.max(r2));
                let (pivot_row, row) = if r2 > rank {
                    (&head[rank], &mut tail[0])
                } else {
                    (&tail[0], &mut head[r2])
                };
                for (slot, pv) in row.iter_mut().zip(pivot_row) {
                    *slot ^= pv;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    m.truncate(rank);
    (m, pivot_cols)
}

/// Nullspace basis in standard form from an RREF entry accessor.
fn nullspace_from_rref(
    ncols: usize,
    pivot_cols: &[usize],
    p: u64,
    entry: impl Fn(usize, usize) -> u64,
) -> (Vec<Vec<u64>>, Vec<usize>) {
    let pivot_set: BTreeSet<usize> = pivot_cols.iter().copied().collect();
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut v = vec![0u64; ncols];
        v[f] = 1;
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            let e = entry(ri, f);
            if e != 0 {
                v[pc] = p - e;
            }
        }
        basis.push(v);
    }
    (basis, free_cols)
}

/// Solves a constraint system over a prime modulus by exact elimination.
/// GF(2) runs on bit-packed rows; other primes run dense.
pub fn kernel_mod_p(system: &ConstraintSystem<Zmod>) -> Result<MapSpace<Zmod>, SolverError> {
    let p = system.algebra().ring().modulus();
    if !is_prime(p) {
        return Err(SolverError::NonPrimeModulus { modulus: p });
    }
    let ncols = system.unknowns();
    let (basis, free_cols) = if p == 2 {
        let (rref, pivot_cols) = rref_gf2(system.rows(), ncols);
        nullspace_from_rref(ncols, &pivot_cols, 2, |r, c| {
            (rref[r][c / 64] >> (c % 64)) & 1
        })
    } else {
        let (rref, pivot_cols) = rref_mod_p(system.rows().to_vec(), ncols, p);
        nullspace_from_rref(ncols, &pivot_cols, p, |r, c| rref[r][c])
    };
    Ok(MapSpace {
        algebra: system.algebra().clone(),
        kind: system.kind().into(),
        repr: SpaceRepr::Kernel { basis, free_cols },
    })
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration.
// ---------------------------------------------------------------------------

/// Advances a mixed-radix counter (last digit fastest); false on wrap.
fn advance_odometer(idx: &mut [u64], q: u64) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < q {
            return true;
        }
        *slot = 0;
    }
    false
}

pub(crate) fn enumerate_plain<R: Ring>(
    algebra: &Arc<Algebra<R>>,
    kind: MapKind,
    q: u64,
) -> Vec<LinearMap<R>> {
    let ring = algebra.ring();
    let d = algebra.dim();
    let blocks = condition_blocks(algebra.as_ref(), kind);
    let mut survivors = Vec::new();
    let mut idx = vec![0u64; d * d];
    let mut scratch = Vec::new();
    loop {
        let flat: Vec<R::Elem> = idx
            .iter()
            .map(|&i| ring.elem_at(i).expect("index below carrier size"))
            .collect();
        if blocks
            .iter()
            .all(|b| block_holds(algebra.as_ref(), &flat, b, &mut scratch))
        {
            survivors.push(LinearMap::from_flat(algebra, flat).expect("d*d coordinates"));
        }
        if !advance_odometer(&mut idx, q) {
            return survivors;
        }
    }
}

pub(crate) fn enumerate_staged<R: Ring>(
    algebra: &Arc<Algebra<R>>,
    kind: MapKind,
    q: u64,
    budget: u64,
) -> Result<Vec<LinearMap<R>>, SolverError> {
    let ring = algebra.ring();
    let d = algebra.dim();
    let blocks = condition_blocks(algebra.as_ref(), kind);
    let mut by_level: Vec<Vec<&Block<R::Elem>>> = vec![Vec::new(); d];
    for b in &blocks {
        by_level[b.ready_at].push(b);
    }
    let mut scratch = Vec::new();
    let mut tested = 0u64;
    // Frontier of valid prefixes, growing by one image row per level.
    let mut frontier: Vec<Vec<R::Elem>> = vec![Vec::new()];
    for ready in &by_level {
        let mut next = Vec::new();
        let mut row_idx = vec![0u64; d];
        loop {
            let row: Vec<R::Elem> = row_idx
                .iter()
                .map(|&i| ring.elem_at(i).expect("index below carrier size"))
                .collect();
            for prefix in &frontier {
                tested += 1;
                if tested > budget {
                    return Err(SolverError::BudgetExceeded {
                        budget,
                        needed: tested,
                    });
                }
                let mut candidate = prefix.clone();
                candidate.extend(row.iter().cloned());
                if ready
                    .iter()
                    .all(|b| block_holds(algebra.as_ref(), &candidate, b, &mut scratch))
                {
                    next.push(candidate);
                }
            }
            if !advance_odometer(&mut row_idx, q) {
                break;
            }
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .map(|flat| LinearMap::from_flat(algebra, flat).expect("d*d coordinates"))
        .collect())
}

/// Finds every map of the class by testing candidates against the
/// classifier conditions. Small searches (`q^(d*d) <= budget`) scan every
/// map outright; larger ones run the staged search, where `budget` caps
/// the number of candidate prefixes visited.
pub fn enumerate_space<R: Ring>(
    algebra: &Arc<Algebra<R>>,
    kind: MapKind,
    budget: u64,
) -> Result<MapSpace<R>, SolverError> {
    let ring = algebra.ring();
    let q = ring.carrier_size().ok_or(SolverError::InfiniteRing)?;
    let d = algebra.dim();
    let total = u32::try_from(d * d).ok().and_then(|u| q.checked_pow(u));
    let survivors = match total {
        Some(t) if t <= budget => enumerate_plain(algebra, kind, q),
        _ => enumerate_staged(algebra, kind, q, budget)?,
    };
    Ok(make_list(algebra, kind.into(), survivors, true))
}

/// The space of inner maps `x -> b*x - x*b`. Over a finite ring every
/// element is tried (requires `q^d <= budget`) and duplicates collapse
/// (central elements all give the zero map); over the integers the inner
/// maps of the basis elements are returned as generators.
pub fn inner_space<R: Ring>(
    algebra: &Arc<Algebra<R>>,
    budget: u64,
) -> Result<MapSpace<R>, SolverError> {
    let ring = algebra.ring();
    let d = algebra.dim();
    match ring.carrier_size() {
        Some(q) => {
            let needed = u32::try_from(d)
                .ok()
                .and_then(|u| q.checked_pow(u))
                .unwrap_or(u64::MAX);
            if needed > budget {
                return Err(SolverError::BudgetExceeded { budget, needed });
            }
            let mut maps = Vec::with_capacity(needed as usize);
            let mut idx = vec![0u64; d];
            loop {
                let coords: Vec<R::Elem> = idx
                    .iter()
                    .map(|&i| ring.elem_at(i).expect("index below carrier size"))
                    .collect();
                let b = algebra.elem(coords).expect("d coordinates");
                maps.push(LinearMap::inner(&b));
                if !advance_odometer(&mut idx, q) {
                    break;
                }
            }
            Ok(make_list(algebra, SpaceKind::Inner, maps, true))
        }
        None => {
            let maps = (0..d)
                .map(|k| LinearMap::inner(&algebra.basis_elem(k)))
                .collect();
            Ok(make_list(algebra, SpaceKind::Inner, maps, false))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::example1_algebra;
    use crate::classify::{is_antiderivation, is_derivation, is_jordan};
    use crate::linmap::example1_map;
    use crate::ring::Integers;
    use proptest::prelude::*;

    fn z(m: u64) -> Zmod {
        Zmod::new(m).unwrap()
    }

    #[test]
    fn constraint_counts() {
        let t2 = Algebra::upper_triangular(2, z(2)).unwrap();
        let sys = build_constraints(&t2, MapKind::Jordan);
        assert_eq!(sys.unknowns(), 9);
        assert_eq!(sys.block_count(), 6);

        let m2 = Algebra::full(2, z(2)).unwrap();
        let sys = build_constraints(&m2, MapKind::Derivation);
        assert_eq!(sys.unknowns(), 16);
        assert_eq!(sys.block_count(), 16);

        let ex1 = example1_algebra();
        let sys = build_constraints(&ex1, MapKind::Jordan);
        assert_eq!(sys.unknowns(), 49);
    }

    #[test]
    fn kernel_requires_prime_modulus() {
        let alg = Algebra::upper_triangular(2, z(6)).unwrap();
        let sys = build_constraints(&alg, MapKind::Derivation);
        assert_eq!(
            kernel_mod_p(&sys).err(),
            Some(SolverError::NonPrimeModulus { modulus: 6 })
        );
    }

    #[test]
    fn enumeration_guards() {
        let algz = Algebra::upper_triangular(2, Integers).unwrap();
        assert_eq!(
            enumerate_space(&algz, MapKind::Jordan, 1_000).err(),
            Some(SolverError::InfiniteRing)
        );

        let alg5 = Algebra::upper_triangular(2, z(5)).unwrap();
        assert!(matches!(
            enumerate_space(&alg5, MapKind::Jordan, 10).err(),
            Some(SolverError::BudgetExceeded { budget: 10, .. })
        ));
    }

    #[test]
    fn kernel_matches_enumeration_on_small_cases() {
        for m in [2u64, 3] {
            for kind in [
                MapKind::Jordan,
                MapKind::Derivation,
                MapKind::Antiderivation,
            ] {
                let alg = Algebra::upper_triangular(2, z(m)).unwrap();
                let kernel = kernel_mod_p(&build_constraints(&alg, kind)).unwrap();
                let listed = enumerate_space(&alg, kind, DEFAULT_BUDGET).unwrap();
                assert!(
                    same_space(&kernel, &listed).unwrap(),
                    "mod {m}, {kind:?}: kernel and enumeration disagree"
                );
            }
        }
    }

    #[test]
    fn staged_agrees_with_plain() {
        let alg = Algebra::upper_triangular(2, z(2)).unwrap();
        for kind in [
            MapKind::Jordan,
            MapKind::Derivation,
            MapKind::Antiderivation,
        ] {
            let plain = enumerate_plain(&alg, kind, 2);
            let staged = enumerate_staged(&alg, kind, 2, DEFAULT_BUDGET).unwrap();
            let keys = |v: &[LinearMap<Zmod>]| -> BTreeSet<String> {
                v.iter().map(|m| m.canonical_key()).collect()
            };
            assert_eq!(keys(&plain), keys(&staged));
        }
    }

    #[test]
    fn triangular_two_by_two_space_shapes() {
        // Over Z/2 on T_2 the Jordan, derivation and inner spaces coincide
        // with dimension 2 (4 maps); the antiderivation space is the span
        // of the single map e11 -> e12, e22 -> e12.
        let alg = Algebra::upper_triangular(2, z(2)).unwrap();
        let jordan = kernel_mod_p(&build_constraints(&alg, MapKind::Jordan)).unwrap();
        assert_eq!(jordan.dimension(), Some(2));
        assert_eq!(jordan.count(), Some(4));

        let inner = inner_space(&alg, DEFAULT_BUDGET).unwrap();
        assert_eq!(inner.count(), Some(4));
        assert!(same_space(&jordan, &inner).unwrap());

        let anti = enumerate_space(&alg, MapKind::Antiderivation, DEFAULT_BUDGET).unwrap();
        let mut expected = BTreeSet::new();
        expected.insert(LinearMap::zero(&alg).canonical_key());
        expected.insert(
            LinearMap::from_rows(&alg, vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 1, 0]])
                .unwrap()
                .canonical_key(),
        );
        assert_eq!(anti.key_set(DEFAULT_BUDGET).unwrap(), expected);
    }

    #[test]
    fn example_algebra_jordan_space_strictly_contains_derivations() {
        let alg = example1_algebra();
        let jordan = kernel_mod_p(&build_constraints(&alg, MapKind::Jordan)).unwrap();
        let deriv = kernel_mod_p(&build_constraints(&alg, MapKind::Derivation)).unwrap();
        let jd = jordan.dimension().unwrap();
        let dd = deriv.dimension().unwrap();
        assert!(jd > dd, "jordan dim {jd} must exceed derivation dim {dd}");

        let d = example1_map(&alg);
        assert!(jordan.contains(&d).unwrap());
        assert!(!deriv.contains(&d).unwrap());

        // Every derivation is a Jordan derivation: basis containment.
        for m in deriv.representatives() {
            assert!(jordan.contains(&m).unwrap());
        }
    }

    #[test]
    fn kernel_members_expand_and_classify() {
        let alg = Algebra::upper_triangular(2, z(3)).unwrap();
        let space = kernel_mod_p(&build_constraints(&alg, MapKind::Derivation)).unwrap();
        let members = space.members(DEFAULT_BUDGET).unwrap();
        assert_eq!(members.len() as u64, space.count().unwrap());
        for m in &members {
            assert!(is_derivation(m).holds);
            assert!(space.contains(m).unwrap());
        }

        // Closure spot-checks: sums and scalar multiples stay inside.
        let a = &members[1 % members.len()];
        let b = &members[members.len() - 1];
        assert!(space.contains(&a.add(b).unwrap()).unwrap());
        assert!(space.contains(&a.scale(&2)).unwrap());
    }

    #[test]
    fn inner_space_over_the_integers_is_generators_only() {
        let alg = Algebra::upper_triangular(2, Integers).unwrap();
        let space = inner_space(&alg, DEFAULT_BUDGET).unwrap();
        assert!(!space.definite());
        assert_eq!(space.repr_name(), "generators");
        assert_eq!(space.representatives().len(), 3);
        assert_eq!(
            space.members(DEFAULT_BUDGET).err(),
            Some(SolverError::GeneratorsOnly)
        );
        for g in space.representatives() {
            assert!(is_derivation(&g).holds);
        }
    }

    #[test]
    fn enumerated_members_pass_their_classifier() {
        let alg = Algebra::upper_triangular(2, z(3)).unwrap();
        for (kind, check) in [
            (MapKind::Jordan, is_jordan as fn(&LinearMap<Zmod>) -> _),
            (MapKind::Derivation, is_derivation),
            (MapKind::Antiderivation, is_antiderivation),
        ] {
            let space = enumerate_space(&alg, kind, DEFAULT_BUDGET).unwrap();
            let members = space.members(DEFAULT_BUDGET).unwrap();
            assert!(!members.is_empty());
            for m in &members {
                assert!(check(m).holds);
            }
        }
    }

    proptest! {
        #[test]
        fn constraint_rows_linearize_the_blocks(
            idx in proptest::collection::vec(0u64..6, 9),
        ) {
            // A flat image vector violates some block iff some constraint
            // row fails to vanish on it.
            let alg = Algebra::upper_triangular(2, z(6)).unwrap();
            let ring = alg.ring();
            let flat: Vec<u64> = idx.iter().map(|&i| ring.elem_at(i).unwrap()).collect();
            for kind in [MapKind::Jordan, MapKind::Derivation, MapKind::Antiderivation] {
                let sys = build_constraints(&alg, kind);
                let rows_vanish = sys.rows().iter().all(|row| {
                    let mut acc = ring.zero();
                    for (c, x) in row.iter().zip(&flat) {
                        ring.mul_add_assign(&mut acc, c, x);
                    }
                    ring.is_zero(&acc)
                });
                let blocks = condition_blocks(alg.as_ref(), kind);
                let mut scratch = Vec::new();
                let blocks_hold = blocks
                    .iter()
                    .all(|b| block_holds(alg.as_ref(), &flat, b, &mut scratch));
                prop_assert_eq!(rows_vanish, blocks_hold);
            }
        }

        #[test]
        fn inner_maps_lie_in_kernel_spaces(
            coords in proptest::collection::vec(0u64..5, 6),
        ) {
            let alg = Algebra::upper_triangular(3, z(5)).unwrap();
            let b = alg.elem(coords).unwrap();
            let map = LinearMap::inner(&b);
            for kind in [MapKind::Jordan, MapKind::Derivation] {
                let space = kernel_mod_p(&build_constraints(&alg, kind)).unwrap();
                prop_assert!(space.contains(&map).unwrap());
            }
        }
    }
}

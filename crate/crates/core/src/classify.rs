//! Classification of linear maps: Jordan derivation, derivation,
//! antiderivation, with replayable failure certificates.
//!
//! All three properties are checked on basis elements only, which is
//! equivalent to the elementwise definitions by linearity. For the Jordan
//! square condition `D(a^2) = D(a)a + aD(a)` the reduction needs care, since
//! squaring is not linear: writing `a = sum c_k b_k`, both sides expand
//! bilinearly through the symmetrized products `b_i b_j + b_j b_i`, so the
//! condition for every `a` is equivalent to the square condition on each
//! basis element together with the polarized condition
//! `D(b_i b_j + b_j b_i) = D(b_i)b_j + b_i D(b_j) + D(b_j)b_i + b_j D(b_i)`
//! on each unordered pair. The argument uses no division, so it holds over
//! every commutative coefficient ring, including those with 2-torsion.
//!
//! Each failed check yields a certificate storing the offending basis pair
//! and both evaluated sides, so any reported failure can be replayed with
//! element arithmetic alone.

use crate::algebra::{example1_algebra, Algebra, AlgebraKind, MatElem};
use crate::linmap::{example1_map, CoefficientTable, LinearMap};
use crate::ring::{Ring, Zmod};

/// The three map classes this crate solves for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `D(a^2) = D(a)a + aD(a)`.
    Jordan,
    /// `D(ab) = D(a)b + aD(b)`.
    Derivation,
    /// `D(ab) = D(b)a + bD(a)`.
    Antiderivation,
}

impl MapKind {
    pub fn name(&self) -> &'static str {
        match self {
            MapKind::Jordan => "jordan",
            MapKind::Derivation => "derivation",
            MapKind::Antiderivation => "antiderivation",
        }
    }
}

/// Which basis-level check a certificate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// `D(b_k^2) = D(b_k)b_k + b_k D(b_k)`; left == right == k.
    JordanSquare,
    /// The polarized condition on an unordered pair, left < right.
    JordanPair,
    /// The Leibniz rule on an ordered pair.
    DerivationPair,
    /// The reversed Leibniz rule on an ordered pair.
    AntiderivationPair,
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::JordanSquare => "jordan_square",
            CertificateKind::JordanPair => "jordan_pair",
            CertificateKind::DerivationPair => "derivation_pair",
            CertificateKind::AntiderivationPair => "antiderivation_pair",
        }
    }
}

/// A replayable witness of one failed basis-level check: both sides of the
/// defining identity, evaluated on basis elements `left` and `right`
/// (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<R: Ring> {
    pub kind: CertificateKind,
    pub left: usize,
    pub right: usize,
    pub lhs: MatElem<R>,
    pub rhs: MatElem<R>,
}

/// Outcome of one property check. `holds` is true exactly when no
/// certificate was produced; certificates are listed in deterministic
/// order (squares first, then pairs lexicographically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult<R: Ring> {
    pub holds: bool,
    pub certificates: Vec<Certificate<R>>,
}

/// All three property checks for one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport<R: Ring> {
    pub jordan: CheckResult<R>,
    pub derivation: CheckResult<R>,
    pub antiderivation: CheckResult<R>,
}

impl<R: Ring> ClassificationReport<R> {
    pub fn is_jordan(&self) -> bool {
        self.jordan.holds
    }
    pub fn is_derivation(&self) -> bool {
        self.derivation.holds
    }
    pub fn is_antiderivation(&self) -> bool {
        self.antiderivation.holds
    }
}

// ---------------------------------------------------------------------------
// Condition blocks.
//
// Every basis-level condition is a linear expression in the map's image
// coordinates that must vanish. A block is a sum of terms, each scaling one
// image row, optionally multiplied by a fixed basis element on one side.
// The same blocks drive the boolean checks here, the constraint matrices in
// the solver, and the staged enumeration, so all three agree by
// construction.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub(crate) enum Factor {
    /// The image row itself.
    Plain,
    /// The image row right-multiplied by basis element `b`.
    RightMulBasis(usize),
    /// The image row left-multiplied by basis element `b`.
    LeftMulBasis(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Term<E> {
    pub coeff: E,
    pub image: usize,
    pub factor: Factor,
}

#[derive(Clone, Debug)]
pub(crate) struct Block<E> {
    pub kind: CertificateKind,
    pub left: usize,
    pub right: usize,
    pub terms: Vec<Term<E>>,
    /// Highest image index any term reads; the block is decidable as soon
    /// as images `0..=ready_at` are fixed.
    pub ready_at: usize,
}

impl<E> Block<E> {
    fn new(kind: CertificateKind, left: usize, right: usize, terms: Vec<Term<E>>) -> Self {
        let ready_at = terms.iter().map(|t| t.image).max().unwrap_or(0);
        Block {
            kind,
            left,
            right,
            terms,
            ready_at,
        }
    }
}

/// The complete list of basis-level conditions for a property, in the
/// deterministic order used for certificates.
pub(crate) fn condition_blocks<R: Ring>(alg: &Algebra<R>, kind: MapKind) -> Vec<Block<R::Elem>> {
    let ring = alg.ring();
    let d = alg.dim();
    let neg_one = ring.neg(&ring.one());
    let mut blocks = Vec::new();
    let plain_terms = |i: usize, j: usize, terms: &mut Vec<Term<R::Elem>>| {
        for (s, c) in alg.product_decomp(i, j) {
            terms.push(Term {
                coeff: c.clone(),
                image: *s,
                factor: Factor::Plain,
            });
        }
    };
    match kind {
        MapKind::Jordan => {
            for k in 0..d {
                let mut terms = Vec::new();
                plain_terms(k, k, &mut terms);
                terms.push(Term {
                    coeff: neg_one.clone(),
                    image: k,
                    factor: Factor::RightMulBasis(k),
                });
                terms.push(Term {
                    coeff: neg_one.clone(),
                    image: k,
                    factor: Factor::LeftMulBasis(k),
                });
                blocks.push(Block::new(CertificateKind::JordanSquare, k, k, terms));
            }
            for i in 0..d {
                for j in (i + 1)..d {
                    let mut terms = Vec::new();
                    plain_terms(i, j, &mut terms);
                    plain_terms(j, i, &mut terms);
                    for (image, factor) in [
                        (i, Factor::RightMulBasis(j)),
                        (j, Factor::LeftMulBasis(i)),
                        (j, Factor::RightMulBasis(i)),
                        (i, Factor::LeftMulBasis(j)),
                    ] {
                        terms.push(Term {
                            coeff: neg_one.clone(),
                            image,
                            factor,
                        });
                    }
                    blocks.push(Block::new(CertificateKind::JordanPair, i, j, terms));
                }
            }
        }
        MapKind::Derivation => {
            for i in 0..d {
                for j in 0..d {
                    let mut terms = Vec::new();
                    plain_terms(i, j, &mut terms);
                    terms.push(Term {
                        coeff: neg_one.clone(),
                        image: i,
                        factor: Factor::RightMulBasis(j),
                    });
                    terms.push(Term {
                        coeff: neg_one.clone(),
                        image: j,
                        factor: Factor::LeftMulBasis(i),
                    });
                    blocks.push(Block::new(CertificateKind::DerivationPair, i, j, terms));
                }
            }
        }
        MapKind::Antiderivation => {
            for i in 0..d {
                for j in 0..d {
                    let mut terms = Vec::new();
                    plain_terms(i, j, &mut terms);
                    terms.push(Term {
                        coeff: neg_one.clone(),
                        image: j,
                        factor: Factor::RightMulBasis(i),
                    });
                    terms.push(Term {
                        coeff: neg_one.clone(),
                        image: i,
                        factor: Factor::LeftMulBasis(j),
                    });
                    blocks.push(Block::new(CertificateKind::AntiderivationPair, i, j, terms));
                }
            }
        }
    }
    blocks
}

/// Evaluates a block on a flat image buffer into `out` (length d).
pub(crate) fn eval_block_into<R: Ring>(
    alg: &Algebra<R>,
    flat: &[R::Elem],
    block: &Block<R::Elem>,
    out: &mut [R::Elem],
) {
    let ring = alg.ring();
    let d = alg.dim();
    for slot in out.iter_mut() {
        ring.set_zero(slot);
    }
    for t in &block.terms {
        let row = &flat[t.image * d..(t.image + 1) * d];
        match t.factor {
            Factor::Plain => {
                for r in 0..d {
                    ring.mul_add_assign(&mut out[r], &t.coeff, &row[r]);
                }
            }
            Factor::RightMulBasis(b) => {
                for (x, v) in row.iter().enumerate() {
                    if ring.is_zero(v) {
                        continue;
                    }
                    let v = ring.mul(&t.coeff, v);
                    for (k, c) in alg.product_decomp(x, b) {
                        ring.mul_add_assign(&mut out[*k], &v, c);
                    }
                }
            }
            Factor::LeftMulBasis(b) => {
                for (x, v) in row.iter().enumerate() {
                    if ring.is_zero(v) {
                        continue;
                    }
                    let v = ring.mul(&t.coeff, v);
                    for (k, c) in alg.product_decomp(b, x) {
                        ring.mul_add_assign(&mut out[*k], &v, c);
                    }
                }
            }
        }
    }
}

/// True when the block's linear expression vanishes on the buffer.
pub(crate) fn block_holds<R: Ring>(
    alg: &Algebra<R>,
    flat: &[R::Elem],
    block: &Block<R::Elem>,
    scratch: &mut Vec<R::Elem>,
) -> bool {
    let ring = alg.ring();
    scratch.resize(alg.dim(), ring.zero());
    eval_block_into(alg, flat, block, scratch);
    scratch.iter().all(|v| ring.is_zero(v))
}

// ---------------------------------------------------------------------------
// Public checks.
// ---------------------------------------------------------------------------

fn build_certificate<R: Ring>(map: &LinearMap<R>, block: &Block<R::Elem>) -> Certificate<R> {
    let alg = map.algebra();
    let ok = "operands share one algebra";
    let bi = alg.basis_elem(block.left);
    let bj = alg.basis_elem(block.right);
    let di = map.image(block.left);
    let dj = map.image(block.right);
    let (lhs, rhs) = match block.kind {
        CertificateKind::JordanSquare => {
            let sq = bi.mul(&bi).expect(ok);
            let lhs = map.apply(&sq).expect(ok);
            let rhs = di
                .mul(&bi)
                .expect(ok)
                .add(&bi.mul(&di).expect(ok))
                .expect(ok);
            (lhs, rhs)
        }
        CertificateKind::JordanPair => {
            let sym = bi
                .mul(&bj)
                .expect(ok)
                .add(&bj.mul(&bi).expect(ok))
                .expect(ok);
            let lhs = map.apply(&sym).expect(ok);
            let rhs = di
                .mul(&bj)
                .expect(ok)
                .add(&bi.mul(&dj).expect(ok))
                .expect(ok)
                .add(&dj.mul(&bi).expect(ok))
                .expect(ok)
                .add(&bj.mul(&di).expect(ok))
                .expect(ok);
            (lhs, rhs)
        }
        CertificateKind::DerivationPair => {
            let prod = bi.mul(&bj).expect(ok);
            let lhs = map.apply(&prod).expect(ok);
            let rhs = di
                .mul(&bj)
                .expect(ok)
                .add(&bi.mul(&dj).expect(ok))
                .expect(ok);
            (lhs, rhs)
        }
        CertificateKind::AntiderivationPair => {
            let prod = bi.mul(&bj).expect(ok);
            let lhs = map.apply(&prod).expect(ok);
            let rhs = dj
                .mul(&bi)
                .expect(ok)
                .add(&bj.mul(&di).expect(ok))
                .expect(ok);
            (lhs, rhs)
        }
    };
    Certificate {
        kind: block.kind,
        left: block.left,
        right: block.right,
        lhs,
        rhs,
    }
}

fn run_checks<R: Ring>(map: &LinearMap<R>, kind: MapKind) -> CheckResult<R> {
    let alg = map.algebra();
    let blocks = condition_blocks(alg.as_ref(), kind);
    let mut scratch = Vec::new();
    let mut certificates = Vec::new();
    for block in &blocks {
        if !block_holds(alg.as_ref(), map.flat(), block, &mut scratch) {
            certificates.push(build_certificate(map, block));
        }
    }
    CheckResult {
        holds: certificates.is_empty(),
        certificates,
    }
}

/// Checks `D(a^2) = D(a)a + aD(a)` for all `a`, via the basis reduction
/// described in the module docs.
pub fn is_jordan<R: Ring>(map: &LinearMap<R>) -> CheckResult<R> {
    run_checks(map, MapKind::Jordan)
}

/// Checks the Leibniz rule `D(ab) = D(a)b + aD(b)` on all basis pairs.
pub fn is_derivation<R: Ring>(map: &LinearMap<R>) -> CheckResult<R> {
    run_checks(map, MapKind::Derivation)
}

/// Checks the reversed rule `D(ab) = D(b)a + bD(a)` on all basis pairs.
pub fn is_antiderivation<R: Ring>(map: &LinearMap<R>) -> CheckResult<R> {
    run_checks(map, MapKind::Antiderivation)
}

/// Runs all three checks.
pub fn classify_map<R: Ring>(map: &LinearMap<R>) -> ClassificationReport<R> {
    ClassificationReport {
        jordan: is_jordan(map),
        derivation: is_derivation(map),
        antiderivation: is_antiderivation(map),
    }
}

// ---------------------------------------------------------------------------
// The canonical 2-torsion counterexample.
// ---------------------------------------------------------------------------

/// Evaluation record for the canonical counterexample: on the seven-
/// dimensional triangular algebra over Z/2, the swap map is a Jordan
/// derivation, yet `D(XY) != D(X)Y + XD(Y)` on the recorded pair, and the
/// swapped (antiderivation-shaped) combination fails on it as well.
#[derive(Clone, Debug)]
pub struct Example1Report {
    pub jordan_holds: bool,
    pub x: MatElem<Zmod>,
    pub y: MatElem<Zmod>,
    pub xy: MatElem<Zmod>,
    pub d_xy: MatElem<Zmod>,
    /// `D(X)Y + XD(Y)`.
    pub leibniz_rhs: MatElem<Zmod>,
    pub leibniz_holds: bool,
    pub yx: MatElem<Zmod>,
    pub d_yx: MatElem<Zmod>,
    /// `D(Y)X + YD(X)`.
    pub swapped_rhs: MatElem<Zmod>,
    pub swapped_holds: bool,
}

/// Reproduces the counterexample from scratch: builds the algebra and map,
/// confirms the Jordan property, and evaluates both Leibniz combinations on
/// the fixed pair `X = 1 + e13 + e14 + e34`, `Y = e13 + e14 + e33 + e44 + e34`.
pub fn check_example1_counterexample() -> Example1Report {
    let alg = example1_algebra();
    let d = example1_map(&alg);
    let ok = "operands share one algebra";
    let x = alg.elem_from_i64(&[1, 1, 0, 1, 1, 0, 1]).expect("7 coords");
    let y = alg.elem_from_i64(&[0, 1, 0, 1, 1, 0, 1]).expect("7 coords");
    let xy = x.mul(&y).expect(ok);
    let d_xy = d.apply(&xy).expect(ok);
    let leibniz_rhs = d
        .apply(&x)
        .expect(ok)
        .mul(&y)
        .expect(ok)
        .add(&x.mul(&d.apply(&y).expect(ok)).expect(ok))
        .expect(ok);
    let yx = y.mul(&x).expect(ok);
    let d_yx = d.apply(&yx).expect(ok);
    let swapped_rhs = d
        .apply(&y)
        .expect(ok)
        .mul(&x)
        .expect(ok)
        .add(&y.mul(&d.apply(&x).expect(ok)).expect(ok))
        .expect(ok);
    Example1Report {
        jordan_holds: is_jordan(&d).holds,
        leibniz_holds: d_xy == leibniz_rhs,
        swapped_holds: d_yx == swapped_rhs,
        x,
        y,
        xy,
        d_xy,
        leibniz_rhs,
        yx,
        d_yx,
        swapped_rhs,
    }
}

// ---------------------------------------------------------------------------
// Structure identities on matrix-unit bases.
// ---------------------------------------------------------------------------

/// The coefficient identities that hold for every Jordan derivation on a
/// matrix-unit algebra (and, for the chain/skew families, for every
/// derivation). Names describe the content; `a(kl|ij)` below is the
/// coefficient of `e_kl` in `D(e_ij)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityTag {
    /// Triangular: `D(e_ii)` lives on column i above the diagonal and row i
    /// right of it; in particular its diagonal part vanishes.
    TriDiagonalSupport,
    /// Triangular: `a(ij|ii) + a(ij|jj) = 0` for `i < j`.
    TriDiagonalPairing,
    /// Triangular: `D(e_ij)` (i < j) is supported on `{(k,j): k<i}`,
    /// `{(i,j)}` and `{(i,l): l>j}`, with `a(kj|ij) = a(ki|ii)` for `k < i`.
    TriOffDiagonalSupport,
    /// Triangular, derivations only: `a(ik|ik) = a(ij|ij) + a(jk|jk)` for
    /// `i < j < k`.
    TriChainAdditivity,
    /// Full: `D(e_ii)` lives on row i and column i minus the diagonal cell.
    FullDiagonalSupport,
    /// Full: `a(kl|kk) + a(kl|ll) = 0` for `k != l`.
    FullDiagonalPairing,
    /// Full: `a(ii|ij) + a(ji|ii) = 0` for `i != j`.
    FullCornerPairing,
    /// Full: `a(ji|ij) = 0` for `i != j`.
    FullTransposeVanishing,
    /// Full: `D(e_ij)` (i != j) is supported on row i and column j, with
    /// `a(kj|ij) = a(ki|ii)` for every `k != i`.
    FullOffDiagonalSupport,
    /// Full: `a(il|ij) = a(jl|jj)` for every `l != j`.
    FullRowTransfer,
    /// Full, derivations only: `a(ik|ik) = a(ij|ij) + a(jk|jk)` for
    /// pairwise distinct `i, j, k`.
    FullChainAdditivity,
    /// Full, derivations only: `a(ij|ij) + a(ji|ji) = 0` for `i != j`.
    FullSkewPairing,
}

impl IdentityTag {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityTag::TriDiagonalSupport => "tri_diagonal_support",
            IdentityTag::TriDiagonalPairing => "tri_diagonal_pairing",
            IdentityTag::TriOffDiagonalSupport => "tri_off_diagonal_support",
            IdentityTag::TriChainAdditivity => "tri_chain_additivity",
            IdentityTag::FullDiagonalSupport => "full_diagonal_support",
            IdentityTag::FullDiagonalPairing => "full_diagonal_pairing",
            IdentityTag::FullCornerPairing => "full_corner_pairing",
            IdentityTag::FullTransposeVanishing => "full_transpose_vanishing",
            IdentityTag::FullOffDiagonalSupport => "full_off_diagonal_support",
            IdentityTag::FullRowTransfer => "full_row_transfer",
            IdentityTag::FullChainAdditivity => "full_chain_additivity",
            IdentityTag::FullSkewPairing => "full_skew_pairing",
        }
    }
}

/// One violated instance of an identity: the index labels it was
/// instantiated at and the coefficient values involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure<R: Ring> {
    pub indices: Vec<u32>,
    pub values: Vec<R::Elem>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck<R: Ring> {
    pub tag: IdentityTag,
    pub pass: bool,
    pub failures: Vec<IdentityFailure<R>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotApplicableReason {
    /// The basis is not made of matrix units, so coefficient identities are
    /// not defined.
    PatternBasis,
    /// The identities are consequences of the Jordan property; checking
    /// them for a non-Jordan map would be meaningless.
    NotJordan,
}

/// Identity suite outcome. `derivation_suite` records whether the
/// derivation-gated families were included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityReport<R: Ring> {
    NotApplicable(NotApplicableReason),
    Checked {
        derivation_suite: bool,
        checks: Vec<IdentityCheck<R>>,
    },
}

impl<R: Ring> IdentityReport<R> {
    pub fn all_pass(&self) -> bool {
        match self {
            IdentityReport::NotApplicable(_) => false,
            IdentityReport::Checked { checks, .. } => checks.iter().all(|c| c.pass),
        }
    }
}

/// Runs the applicable identity families for a map on a matrix-unit
/// algebra. Requires the Jordan property; the chain/skew families are
/// included only when the map is a derivation.
pub fn check_structure_identities<R: Ring>(map: &LinearMap<R>) -> IdentityReport<R> {
    let kind = map.algebra().kind();
    if matches!(kind, AlgebraKind::Pattern) {
        return IdentityReport::NotApplicable(NotApplicableReason::PatternBasis);
    }
    if !is_jordan(map).holds {
        return IdentityReport::NotApplicable(NotApplicableReason::NotJordan);
    }
    let table = map
        .coefficient_table()
        .expect("matrix-unit kinds always have coefficient tables");
    let derivation_suite = is_derivation(map).holds;
    let checks = run_identity_checks(&table, kind, derivation_suite);
    IdentityReport::Checked {
        derivation_suite,
        checks,
    }
}

fn run_identity_checks<R: Ring>(
    table: &CoefficientTable<R>,
    kind: AlgebraKind,
    derivation_suite: bool,
) -> Vec<IdentityCheck<R>> {
    match kind {
        AlgebraKind::UpperTriangular { .. } => {
            let mut checks = vec![
                tri_diagonal_support(table),
                tri_diagonal_pairing(table),
                tri_off_diagonal_support(table),
            ];
            if derivation_suite {
                checks.push(tri_chain_additivity(table));
            }
            checks
        }
        AlgebraKind::Full { .. } => {
            let mut checks = vec![
                full_diagonal_support(table),
                full_diagonal_pairing(table),
                full_corner_pairing(table),
                full_transpose_vanishing(table),
                full_off_diagonal_support(table),
                full_row_transfer(table),
            ];
            if derivation_suite {
                checks.push(full_chain_additivity(table));
                checks.push(full_skew_pairing(table));
            }
            checks
        }
        AlgebraKind::Pattern => unreachable!("gated before dispatch"),
    }
}

fn finish<R: Ring>(tag: IdentityTag, failures: Vec<IdentityFailure<R>>) -> IdentityCheck<R> {
    IdentityCheck {
        tag,
        pass: failures.is_empty(),
        failures,
    }
}

fn tri_diagonal_support<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let ring_zero = |v: &R::Elem| v.clone();
    let mut failures = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            for l in k..=n {
                let allowed = (l == i && k < i) || (k == i && l > i);
                if allowed {
                    continue;
                }
                let v = table.coeff(k, l, i, i);
                if !is_zero_elem::<R>(table, v) {
                    failures.push(IdentityFailure {
                        indices: vec![k, l, i, i],
                        values: vec![ring_zero(v)],
                        detail: format!("a({k},{l}|{i},{i}) must vanish"),
                    });
                }
            }
        }
    }
    finish(IdentityTag::TriDiagonalSupport, failures)
}

fn tri_diagonal_pairing<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let a = table.coeff(i, j, i, i).clone();
            let b = table.coeff(i, j, j, j).clone();
            let sum = add_elems::<R>(table, &a, &b);
            if !is_zero_elem::<R>(table, &sum) {
                failures.push(IdentityFailure {
                    indices: vec![i, j],
                    values: vec![a, b, sum],
                    detail: format!("a({i},{j}|{i},{i}) + a({i},{j}|{j},{j}) must vanish"),
                });
            }
        }
    }
    finish(IdentityTag::TriDiagonalPairing, failures)
}

fn tri_off_diagonal_support<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in 1..=n {
                for l in k..=n {
                    if k == i && l >= j {
                        continue;
                    }
                    let v = table.coeff(k, l, i, j);
                    if l == j && k < i {
                        let expected = table.coeff(k, i, i, i);
                        if v != expected {
                            failures.push(IdentityFailure {
                                indices: vec![k, l, i, j],
                                values: vec![v.clone(), expected.clone()],
                                detail: format!("a({k},{l}|{i},{j}) must equal a({k},{i}|{i},{i})"),
                            });
                        }
                    } else if !is_zero_elem::<R>(table, v) {
                        failures.push(IdentityFailure {
                            indices: vec![k, l, i, j],
                            values: vec![v.clone()],
                            detail: format!("a({k},{l}|{i},{j}) must vanish"),
                        });
                    }
                }
            }
        }
    }
    finish(IdentityTag::TriOffDiagonalSupport, failures)
}

fn tri_chain_additivity<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                let lhs = table.coeff(i, k, i, k).clone();
                let a = table.coeff(i, j, i, j).clone();
                let b = table.coeff(j, k, j, k).clone();
                let rhs = add_elems::<R>(table, &a, &b);
                if lhs != rhs {
                    failures.push(IdentityFailure {
                        indices: vec![i, j, k],
                        values: vec![lhs, a, b],
                        detail: format!(
                            "a({i},{k}|{i},{k}) must equal a({i},{j}|{i},{j}) + a({j},{k}|{j},{k})"
                        ),
                    });
                }
            }
        }
    }
    finish(IdentityTag::TriChainAdditivity, failures)
}

fn full_diagonal_support<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                let allowed = (k == i) != (l == i);
                if allowed {
                    continue;
                }
                let v = table.coeff(k, l, i, i);
                if !is_zero_elem::<R>(table, v) {
                    failures.push(IdentityFailure {
                        indices: vec![k, l, i, i],
                        values: vec![v.clone()],
                        detail: format!("a({k},{l}|{i},{i}) must vanish"),
                    });
                }
            }
        }
    }
    finish(IdentityTag::FullDiagonalSupport, failures)
}

fn full_diagonal_pairing<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            if k == l {
                continue;
            }
            let a = table.coeff(k, l, k, k).clone();
            let b = table.coeff(k, l, l, l).clone();
            let sum = add_elems::<R>(table, &a, &b);
            if !is_zero_elem::<R>(table, &sum) {
                failures.push(IdentityFailure {
                    indices: vec![k, l],
                    values: vec![a, b, sum],
                    detail: format!("a({k},{l}|{k},{k}) + a({k},{l}|{l},{l}) must vanish"),
                });
            }
        }
    }
    finish(IdentityTag::FullDiagonalPairing, failures)
}

fn full_corner_pairing<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let a = table.coeff(i, i, i, j).clone();
            let b = table.coeff(j, i, i, i).clone();
            let sum = add_elems::<R>(table, &a, &b);
            if !is_zero_elem::<R>(table, &sum) {
                failures.push(IdentityFailure {
                    indices: vec![i, j],
                    values: vec![a, b, sum],
                    detail: format!("a({i},{i}|{i},{j}) + a({j},{i}|{i},{i}) must vanish"),
                });
            }
        }
    }
    finish(IdentityTag::FullCornerPairing, failures)
}

fn full_transpose_vanishing<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let v = table.coeff(j, i, i, j);
            if !is_zero_elem::<R>(table, v) {
                failures.push(IdentityFailure {
                    indices: vec![j, i, i, j],
                    values: vec![v.clone()],
                    detail: format!("a({j},{i}|{i},{j}) must vanish"),
                });
            }
        }
    }
    finish(IdentityTag::FullTransposeVanishing, failures)
}

fn full_off_diagonal_support<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for k in 1..=n {
                if k == i {
                    continue;
                }
                for l in 1..=n {
                    let v = table.coeff(k, l, i, j);
                    if l == j {
                        let expected = table.coeff(k, i, i, i);
                        if v != expected {
                            failures.push(IdentityFailure {
                                indices: vec![k, l, i, j],
                                values: vec![v.clone(), expected.clone()],
                                detail: format!("a({k},{l}|{i},{j}) must equal a({k},{i}|{i},{i})"),
                            });
                        }
                    } else if !is_zero_elem::<R>(table, v) {
                        failures.push(IdentityFailure {
                            indices: vec![k, l, i, j],
                            values: vec![v.clone()],
                            detail: format!("a({k},{l}|{i},{j}) must vanish"),
                        });
                    }
                }
            }
        }
    }
    finish(IdentityTag::FullOffDiagonalSupport, failures)
}

fn full_row_transfer<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for l in 1..=n {
                if l == j {
                    continue;
                }
                let lhs = table.coeff(i, l, i, j);
                let rhs = table.coeff(j, l, j, j);
                if lhs != rhs {
                    failures.push(IdentityFailure {
                        indices: vec![i, j, l],
                        values: vec![lhs.clone(), rhs.clone()],
                        detail: format!("a({i},{l}|{i},{j}) must equal a({j},{l}|{j},{j})"),
                    });
                }
            }
        }
    }
    finish(IdentityTag::FullRowTransfer, failures)
}

fn full_chain_additivity<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                let lhs = table.coeff(i, k, i, k).clone();
                let a = table.coeff(i, j, i, j).clone();
                let b = table.coeff(j, k, j, k).clone();
                let rhs = add_elems::<R>(table, &a, &b);
                if lhs != rhs {
                    failures.push(IdentityFailure {
                        indices: vec![i, j, k],
                        values: vec![lhs, a, b],
                        detail: format!(
                            "a({i},{k}|{i},{k}) must equal a({i},{j}|{i},{j}) + a({j},{k}|{j},{k})"
                        ),
                    });
                }
            }
        }
    }
    finish(IdentityTag::FullChainAdditivity, failures)
}

fn full_skew_pairing<R: Ring>(table: &CoefficientTable<R>) -> IdentityCheck<R> {
    let n = table.n() as u32;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let a = table.coeff(i, j, i, j).clone();
            let b = table.coeff(j, i, j, i).clone();
            let sum = add_elems::<R>(table, &a, &b);
            if !is_zero_elem::<R>(table, &sum) {
                failures.push(IdentityFailure {
                    indices: vec![i, j],
                    values: vec![a, b, sum],
                    detail: format!("a({i},{j}|{i},{j}) + a({j},{i}|{j},{i}) must vanish"),
                });
            }
        }
    }
    finish(IdentityTag::FullSkewPairing, failures)
}

fn is_zero_elem<R: Ring>(table: &CoefficientTable<R>, v: &R::Elem) -> bool {
    table.ring().is_zero(v)
}

fn add_elems<R: Ring>(table: &CoefficientTable<R>, a: &R::Elem, b: &R::Elem) -> R::Elem {
    table.ring().add(a, b)
}

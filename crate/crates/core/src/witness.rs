//! Inner-derivation witnesses: closed-form synthesis from a map's
//! coefficient table, verification against the map, and the centrality
//! analysis that explains why witnesses are never unique.
//!
//! On the triangular and full matrix-unit algebras every Jordan derivation
//! is inner, and a witness can be read off the coefficient table directly:
//!
//! ```text
//! B = sum_{l=2..n} (-a(1l|1l)) e_ll  +  sum_{(i,j) off-diagonal} a(ij|jj) e_ij
//! ```
//!
//! where the off-diagonal sum runs over `i < j` on the triangular algebra
//! and over all `i != j` on the full one, and `a(kl|ij)` is the coefficient
//! of `e_kl` in `D(e_ij)`. Synthesis refuses maps that are not Jordan
//! derivations: the formula's correctness depends on coefficient identities
//! that only hold for them. The returned witness is still verified
//! explicitly rather than trusted.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{same_algebra, Algebra, AlgebraKind, MatElem};
use crate::classify::is_jordan;
use crate::linmap::LinearMap;
use crate::ring::Ring;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    /// The synthesis formulas are proved only for the full and upper
    /// triangular algebras with n >= 2.
    #[error("witness synthesis applies to {expected} with n >= 2, got {found}")]
    WrongAlgebra {
        expected: &'static str,
        found: String,
    },
    /// Synthesis refuses non-Jordan maps rather than emit an unverified
    /// element.
    #[error("map is not a Jordan derivation; refusing to synthesize a witness")]
    NotJordan,
    #[error("element and map live on different algebras")]
    AlgebraMismatch,
    /// `witness_difference_central` requires both elements to actually be
    /// witnesses.
    #[error("{which} failed verification; centrality of the difference is only meaningful for verified witnesses")]
    PreconditionViolated { which: &'static str },
    #[error("budget {budget} exceeded: enumeration needs {needed} candidates")]
    BudgetExceeded { budget: u64, needed: u64 },
    #[error("cannot enumerate a pattern-algebra center over an infinite ring")]
    InfiniteRing,
}

/// How a witness element was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    FormulaTriangular,
    FormulaFull,
    /// Supplied from outside (e.g. a CLI `--check-witness` candidate).
    External,
}

impl WitnessSource {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessSource::FormulaTriangular => "formula_triangular",
            WitnessSource::FormulaFull => "formula_full",
            WitnessSource::External => "external",
        }
    }
}

/// An inner-derivation witness candidate for a map `D`: `verified` is true
/// exactly when `D(b_k) = element*b_k - b_k*element` for every basis
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<R: Ring> {
    pub element: MatElem<R>,
    pub verified: bool,
    pub source: WitnessSource,
}

fn kind_name(kind: AlgebraKind) -> String {
    match kind {
        AlgebraKind::Full { n } => format!("full n={n}"),
        AlgebraKind::UpperTriangular { n } => format!("upper triangular n={n}"),
        AlgebraKind::Pattern => "a pattern algebra".to_string(),
    }
}

fn synthesize<R: Ring>(map: &LinearMap<R>, triangular: bool) -> Result<Witness<R>, WitnessError> {
    let alg = map.algebra();
    let n = match (alg.kind(), triangular) {
        (AlgebraKind::UpperTriangular { n }, true) if n >= 2 => n,
        (AlgebraKind::Full { n }, false) if n >= 2 => n,
        (kind, true) => {
            return Err(WitnessError::WrongAlgebra {
                expected: "an upper triangular algebra",
                found: kind_name(kind),
            })
        }
        (kind, false) => {
            return Err(WitnessError::WrongAlgebra {
                expected: "a full matrix algebra",
                found: kind_name(kind),
            })
        }
    };
    if !is_jordan(map).holds {
        return Err(WitnessError::NotJordan);
    }
    let table = map
        .coefficient_table()
        .expect("matrix-unit kinds always have coefficient tables");
    let ring = alg.ring().clone();
    let mut coords = vec![ring.zero(); alg.dim()];
    let n = n as u32;
    for l in 2..=n {
        let slot = alg.unit_index(l, l).expect("diagonal unit");
        coords[slot] = ring.neg(table.coeff(1, l, 1, l));
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j || (triangular && i > j) {
                continue;
            }
            let slot = alg.unit_index(i, j).expect("off-diagonal unit");
            coords[slot] = table.coeff(i, j, j, j).clone();
        }
    }
    let element = alg.elem(coords).expect("coordinate count matches dim");
    let verified = verify_witness(map, &element)?;
    Ok(Witness {
        element,
        verified,
        source: if triangular {
            WitnessSource::FormulaTriangular
        } else {
            WitnessSource::FormulaFull
        },
    })
}

/// Reads a witness off the coefficient table of a Jordan derivation on an
/// upper triangular algebra (n >= 2) and verifies it.
pub fn synthesize_witness_triangular<R: Ring>(
    map: &LinearMap<R>,
) -> Result<Witness<R>, WitnessError> {
    synthesize(map, true)
}

/// Reads a witness off the coefficient table of a Jordan derivation on a
/// full matrix algebra (n >= 2) and verifies it.
pub fn synthesize_witness_full<R: Ring>(map: &LinearMap<R>) -> Result<Witness<R>, WitnessError> {
    synthesize(map, false)
}

/// True iff `map` equals `x -> b*x - x*b`. Checking on basis elements
/// suffices by linearity.
pub fn verify_witness<R: Ring>(map: &LinearMap<R>, b: &MatElem<R>) -> Result<bool, WitnessError> {
    if !same_algebra(map.algebra(), b.algebra()) {
        return Err(WitnessError::AlgebraMismatch);
    }
    Ok(LinearMap::inner(b).flat() == map.flat())
}

/// Checks that the difference of two verified witnesses for the same map
/// is central. Under the preconditions this always returns true: both
/// differences implement the same map, so their difference commutes with
/// every basis element.
pub fn witness_difference_central<R: Ring>(
    map: &LinearMap<R>,
    b1: &MatElem<R>,
    b2: &MatElem<R>,
) -> Result<bool, WitnessError> {
    let v1 = verify_witness(map, b1)?;
    let v2 = verify_witness(map, b2)?;
    let which = match (v1, v2) {
        (true, true) => None,
        (false, true) => Some("the first element"),
        (true, false) => Some("the second element"),
        (false, false) => Some("both elements"),
    };
    if let Some(which) = which {
        return Err(WitnessError::PreconditionViolated { which });
    }
    let diff = b1.sub(b2).expect("verified witnesses share the algebra");
    Ok(is_central(&diff))
}

fn is_central<R: Ring>(x: &MatElem<R>) -> bool {
    let alg = x.algebra();
    (0..alg.dim()).all(|k| {
        let b = alg.basis_elem(k);
        x.mul(&b).expect("same algebra") == b.mul(x).expect("same algebra")
    })
}

/// The center of an algebra, either in full or by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center<R: Ring> {
    /// Lexicographically ordered (by coordinate enumeration) central
    /// elements, or generators when `complete` is false.
    pub elements: Vec<MatElem<R>>,
    /// True when `elements` is the entire center.
    pub complete: bool,
}

/// Central elements of an algebra. On the full and triangular algebras the
/// center is the scalar multiples of the identity: those are returned
/// directly (all of them over a finite ring, the identity as a generator
/// over the integers), each double-checked by commutation. On pattern
/// algebras the center is found by exhaustive enumeration, which requires a
/// finite ring and `|C|^d <= budget`.
pub fn center_elements<R: Ring>(
    algebra: &Arc<Algebra<R>>,
    budget: u64,
) -> Result<Center<R>, WitnessError> {
    let ring = algebra.ring().clone();
    match algebra.kind() {
        AlgebraKind::Full { .. } | AlgebraKind::UpperTriangular { .. } => {
            let unit = algebra.unit_elem();
            let elements: Vec<MatElem<R>> = match ring.carrier_size() {
                Some(q) => (0..q)
                    .map(|i| {
                        let c = ring.elem_at(i).expect("index below carrier size");
                        unit.scale(&c)
                    })
                    .collect(),
                None => vec![unit],
            };
            for e in &elements {
                assert!(is_central(e), "scalar multiples of the unit are central");
            }
            let complete = ring.carrier_size().is_some();
            Ok(Center { elements, complete })
        }
        AlgebraKind::Pattern => {
            let q = ring.carrier_size().ok_or(WitnessError::InfiniteRing)?;
            let d = algebra.dim();
            let needed = d
                .try_into()
                .ok()
                .and_then(|d: u32| q.checked_pow(d))
                .unwrap_or(u64::MAX);
            if needed > budget {
                return Err(WitnessError::BudgetExceeded { budget, needed });
            }
            let mut elements = Vec::new();
            let mut idx = vec![0u64; d];
            loop {
                let coords: Vec<R::Elem> = idx
                    .iter()
                    .map(|&i| ring.elem_at(i).expect("index below carrier size"))
                    .collect();
                let x = algebra.elem(coords).expect("coordinate count matches dim");
                if is_central(&x) {
                    elements.push(x);
                }
                // Odometer with the last coordinate fastest: lexicographic
                // order of coordinate vectors.
                let mut pos = d;
                loop {
                    if pos == 0 {
                        return Ok(Center {
                            elements,
                            complete: true,
                        });
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < q {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
    }
}

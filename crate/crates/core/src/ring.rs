//! Coefficient rings: the integers and the modular rings Z/m for m >= 2.
//!
//! All arithmetic is exact. Elements of `Zmod` are canonical residues in
//! `[0, m)`; elements of `Integers` are arbitrary-precision integers. Ring
//! values are plain data and every operation goes through a ring object, so
//! the same generic code runs over any supported coefficient ring.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Errors raised by ring construction and checked element arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("operands belong to different rings: {0} vs {1}")]
    MixedRings(RingSpec, RingSpec),
}

/// Serializable description of a supported coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum RingSpec {
    /// The ring of integers.
    #[serde(rename = "Z")]
    Integers,
    /// The modular ring Z/m; the modulus must be at least 2.
    #[serde(rename = "Zmod")]
    IntegersMod {
        #[serde(rename = "m")]
        modulus: u64,
    },
}

impl RingSpec {
    /// Checks the descriptor's own invariants (modulus lower bound).
    pub fn validate(&self) -> Result<(), RingError> {
        match *self {
            RingSpec::Integers => Ok(()),
            RingSpec::IntegersMod { modulus } if modulus >= 2 => Ok(()),
            RingSpec::IntegersMod { modulus } => Err(RingError::InvalidModulus(modulus)),
        }
    }

    /// True when 2a = 0 forces a = 0. Holds for the integers and for Z/m
    /// with m odd; fails for every even modulus, where a = m/2 is a nonzero
    /// solution.
    pub fn is_two_torsion_free(&self) -> bool {
        match *self {
            RingSpec::Integers => true,
            RingSpec::IntegersMod { modulus } => modulus % 2 == 1,
        }
    }

    /// Number of elements, or `None` for the integers.
    pub fn carrier_size(&self) -> Option<u64> {
        match *self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod { modulus } => Some(modulus),
        }
    }

    /// Wraps an integer as a checked element of this ring.
    pub fn elem(&self, value: i64) -> RingElem {
        RingElem::new(*self, BigInt::from(value))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod { modulus } => write!(f, "Z/{modulus}"),
        }
    }
}

/// A commutative ring with unity, presented as an object whose elements are
/// plain values. Implementations must make every operation total and exact.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug {
    /// Element representation. Ordering is the canonical one used for
    /// deterministic output (numeric order of canonical representatives).
    type Elem: Clone + PartialEq + Eq + Ord + fmt::Debug;

    /// The descriptor this ring was built from.
    fn spec(&self) -> RingSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Canonical element for an integer (reduced for modular rings).
    /// Takes `&self` because the ring object carries the modulus.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, value: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// In-place accumulate: `acc += x`.
    fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem) {
        *acc = self.add(acc, x);
    }
    /// In-place fused accumulate: `acc += x * y`. Hot path of every
    /// product evaluation; implementations should avoid allocation.
    fn mul_add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem, y: &Self::Elem) {
        let p = self.mul(x, y);
        self.add_assign(acc, &p);
    }
    fn set_zero(&self, slot: &mut Self::Elem) {
        *slot = self.zero();
    }

    /// True when 2a = 0 forces a = 0 in this ring.
    fn is_two_torsion_free(&self) -> bool {
        self.spec().is_two_torsion_free()
    }

    /// Number of elements, or `None` when the ring is infinite.
    fn carrier_size(&self) -> Option<u64> {
        self.spec().carrier_size()
    }

    /// The `index`-th element in canonical order, for finite rings only.
    fn elem_at(&self, index: u64) -> Option<Self::Elem>;

    /// Canonical decimal rendering of an element.
    fn render(&self, a: &Self::Elem) -> String;

    /// The element as an `i64` when it fits (always possible for `Zmod`
    /// moduli below 2^63; may fail for huge integers).
    fn to_i64(&self, a: &Self::Elem) -> Option<i64>;
}

/// The ring of integers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_i64(&self, value: i64) -> BigInt {
        BigInt::from(value)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, acc: &mut BigInt, x: &BigInt) {
        *acc += x;
    }
    fn mul_add_assign(&self, acc: &mut BigInt, x: &BigInt, y: &BigInt) {
        *acc += x * y;
    }
    fn set_zero(&self, slot: &mut BigInt) {
        slot.set_zero();
    }
    fn elem_at(&self, _index: u64) -> Option<BigInt> {
        None
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn to_i64(&self, a: &BigInt) -> Option<i64> {
        a.to_i64()
    }
}

/// The modular ring Z/m. Elements are canonical residues in `[0, m)`;
/// intermediate products are taken in 128 bits, so any `u64` modulus is safe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zmod {
    modulus: u64,
}

impl Zmod {
    pub fn new(modulus: u64) -> Result<Self, RingError> {
        if modulus < 2 {
            return Err(RingError::InvalidModulus(modulus));
        }
        Ok(Zmod { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::IntegersMod {
            modulus: self.modulus,
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        // m >= 2, so 1 is always a canonical residue distinct from 0.
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - *a
        }
    }
    fn from_i64(&self, value: i64) -> u64 {
        let m = self.modulus as i128;
        let r = (value as i128).rem_euclid(m);
        r as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn elem_at(&self, index: u64) -> Option<u64> {
        (index < self.modulus).then_some(index)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_i64(&self, a: &u64) -> Option<i64> {
        i64::try_from(*a).ok()
    }
}

/// A ring element tagged with its ring, for checked boundary arithmetic.
///
/// The generic machinery works with bare elements for speed; this type is the
/// safe form used where values from different sources meet, and its
/// operations reject mixed-ring operands instead of silently coercing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElem {
    ring: RingSpec,
    value: BigInt,
}

impl RingElem {
    /// Canonicalizes on entry: modular values are reduced to `[0, m)`.
    pub fn new(ring: RingSpec, value: BigInt) -> Self {
        let value = match ring {
            RingSpec::Integers => value,
            RingSpec::IntegersMod { modulus } => {
                let m = BigInt::from(modulus);
                let mut r = value % &m;
                if r.is_negative() {
                    r += &m;
                }
                r
            }
        };
        RingElem { ring, value }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    fn check_same(&self, other: &RingElem) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::MixedRings(self.ring, other.ring))
        }
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.check_same(other)?;
        Ok(RingElem::new(self.ring, &self.value + &other.value))
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.check_same(other)?;
        Ok(RingElem::new(self.ring, &self.value - &other.value))
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.check_same(other)?;
        Ok(RingElem::new(self.ring, &self.value * &other.value))
    }

    pub fn neg(&self) -> RingElem {
        RingElem::new(self.ring, -&self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

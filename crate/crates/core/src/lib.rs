//! Exact tools for Jordan derivations on pattern-basis matrix algebras.
//!
//! A linear map `D` on an algebra is a Jordan derivation when
//! `D(a^2) = D(a)a + aD(a)` for every `a`, a derivation when it satisfies the
//! Leibniz rule `D(ab) = D(a)b + aD(b)`, and an antiderivation when
//! `D(ab) = D(b)a + bD(a)`. Over coefficient rings with 2-torsion these
//! classes genuinely differ, and this crate classifies concrete maps,
//! synthesizes inner-derivation witnesses `B` with `D(x) = Bx - xB`, and
//! computes whole solution spaces exactly, either by modular linear algebra
//! or by exhaustive enumeration.
//!
//! Everything is exact: coefficients live in the integers or in Z/m. All
//! values are immutable after construction, so they can be shared freely
//! across threads.

pub mod algebra;
pub mod classify;
pub mod io;
pub mod linmap;
pub mod ring;
pub mod solver;
pub mod witness;

pub use algebra::{
    example1_algebra, same_algebra, Algebra, AlgebraError, AlgebraKind, MatElem, Pattern,
};
pub use classify::{
    check_example1_counterexample, check_structure_identities, classify_map, is_antiderivation,
    is_derivation, is_jordan, Certificate, CertificateKind, CheckResult, ClassificationReport,
    Example1Report, IdentityCheck, IdentityFailure, IdentityReport, IdentityTag, MapKind,
    NotApplicableReason,
};
pub use io::{load_problem_str, Instance, IoError, Problem};
pub use linmap::{example1_map, CoefficientTable, LinearMap, MapError};
pub use ring::{Integers, Ring, RingElem, RingError, RingSpec, Zmod};
pub use solver::{
    build_constraints, enumerate_space, inner_space, kernel_mod_p, same_space, ConstraintSystem,
    MapSpace, SolverError, SpaceKind, DEFAULT_BUDGET,
};
pub use witness::{
    center_elements, synthesize_witness_full, synthesize_witness_triangular, verify_witness,
    witness_difference_central, Center, Witness, WitnessError, WitnessSource,
};

/// Algebra over the integers.
pub type IntAlgebra = Algebra<Integers>;
/// Algebra over a modular ring Z/m.
pub type ModAlgebra = Algebra<Zmod>;
/// Element of an integer algebra.
pub type IntElem = MatElem<Integers>;
/// Element of a modular algebra.
pub type ModElem = MatElem<Zmod>;
/// Linear map on an integer algebra.
pub type IntMap = LinearMap<Integers>;
/// Linear map on a modular algebra.
pub type ModMap = LinearMap<Zmod>;

//! Exact-arithmetic evaluation of asymptotic cohomological functions of
//! divisor classes, with chamber decompositions of the Neron-Severi space.
//!
//! Three families of varieties are modeled:
//!
//! * generalized flag varieties, through root systems and the
//!   Borel-Weil-Bott index ([`flag`]);
//! * smooth projective surfaces, through Zariski decompositions
//!   ([`surface`]);
//! * abelian varieties, through Hermitian forms and lattice Pfaffians
//!   ([`abelian`]).
//!
//! All three return, for a rational divisor class, the full vector
//! `(h^0, ..., h^n)` of asymptotic cohomology values as exact rationals.
//! The [`cohom`] module holds the shared model contract and a harness for
//! the structural properties these functions satisfy (degree-n homogeneity,
//! continuity across chamber walls, a Lipschitz-type estimate, and the
//! telescoping bound behind it). [`exactlin`] supplies the exact linear
//! algebra and LP kernel everything rests on.

pub mod abelian;
pub mod cohom;
pub mod exactlin;
pub mod flag;
pub mod sampling;
pub mod scalar;
pub mod surface;

/// Exact rational scalar used by all shipped models.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Symmetric rational matrix (intersection forms, Gram matrices).
pub type QSymMatrix = exactlin::SymMatrix<Rat>;

/// Antisymmetric rational matrix (imaginary parts on lattices).
pub type QAntisymMatrix = exactlin::AntisymMatrix<Rat>;

pub use cohom::{ChamberId, CohomologyVector, DivisorClass, NormedBasis, VarietyModel};
pub use scalar::Scalar;

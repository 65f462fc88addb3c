//! Exact rational linear algebra and polyhedral primitives.
//!
//! Everything in this module works over an arbitrary ordered field (see
//! [`crate::scalar::Scalar`]); no floating point, no tolerances. The two
//! submodules provide
//!
//! * [`matrix`] — dense symmetric/antisymmetric matrices, exact inertia,
//!   linear solves, determinants and Pfaffians;
//! * [`lp`] — a dense two-phase simplex with Bland's pivoting rule, used for
//!   cone membership and open sign-condition feasibility.

pub mod lp;
pub mod matrix;

pub use lp::{
    cone_member, nonneg_combination, open_sign_feasible, ConstraintSystem, LpOutcome, Rel, Sign,
};
pub use matrix::{
    determinant, is_negative_definite, kernel_basis, pfaffian, signature, solve,
    solve_symmetric, AntisymMatrix, Signature, SymMatrix,
};

/// Errors from the exact linear-algebra kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinAlgError {
    /// Vector or matrix dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// A square system had no unique solution.
    SingularMatrix,
    /// Pfaffian of an odd-dimensional matrix.
    OddDimension { dim: usize },
    /// Input entries violate the required (anti)symmetry.
    NotSymmetric,
    NotAntisymmetric,
}

impl std::fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinAlgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LinAlgError::SingularMatrix => write!(f, "singular matrix"),
            LinAlgError::OddDimension { dim } => {
                write!(f, "pfaffian requires even dimension, got {dim}")
            }
            LinAlgError::NotSymmetric => write!(f, "matrix is not symmetric"),
            LinAlgError::NotAntisymmetric => write!(f, "matrix is not antisymmetric"),
        }
    }
}

impl std::error::Error for LinAlgError {}

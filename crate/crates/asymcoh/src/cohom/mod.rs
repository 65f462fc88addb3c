//! Shared divisor-class model and the evaluation contract implemented by
//! every variety family.

pub mod harness;
pub mod suites;

use crate::{Int, Rat};
use num_traits::{Signed, Zero};

/// Errors raised by the shared types and the property harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HarnessError {
    DimensionMismatch { expected: usize, got: usize },
    EmptySequence,
    /// A sampled point violates the per-direction hypothesis of the
    /// telescoping bound for the supplied constant.
    HypothesisNotVerified { direction: usize, detail: String },
}

impl std::fmt::Display for HarnessError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HarnessError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            HarnessError::EmptySequence => write!(f, "empty sequence"),
            HarnessError::HypothesisNotVerified { direction, detail } => {
                write!(f, "hypothesis fails in direction {direction}: {detail}")
            }
        }
    }
}

impl std::error::Error for HarnessError {}

/// A divisor class: exact rational coordinates in the fixed ordered basis
/// declared by the owning variety model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    coords: Vec<Rat>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Rat>) -> Self {
        DivisorClass { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|&c| Rat::from_integer(c.into())).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![Rat::zero(); rank],
        }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), other.rank());
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), other.rank());
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl std::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The tuple `(h^0, ..., h^n)` of nonnegative exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyVector {
    values: Vec<Rat>,
}

impl CohomologyVector {
    /// Builds the vector, enforcing nonnegativity of every entry.
    pub fn new(values: Vec<Rat>) -> Self {
        assert!(
            values.iter().all(|v| !v.is_negative()),
            "cohomology values must be nonnegative"
        );
        CohomologyVector { values }
    }

    pub fn zero(len: usize) -> Self {
        CohomologyVector {
            values: vec![Rat::zero(); len],
        }
    }

    /// All-zero except `value` at `degree`.
    pub fn concentrated(len: usize, degree: usize, value: Rat) -> Self {
        assert!(degree < len);
        let mut values = vec![Rat::zero(); len];
        values[degree] = value;
        CohomologyVector::new(values)
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Alternating sum `h^0 - h^1 + h^2 - ...`.
    pub fn euler_characteristic(&self) -> Rat {
        let mut acc = Rat::zero();
        let mut sign = Rat::from_integer(1.into());
        for v in &self.values {
            acc += &sign * v;
            sign = -sign;
        }
        acc
    }
}

impl std::fmt::Display for CohomologyVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A labeled basis of the divisor-class space, carrying the max-norm with
/// respect to that basis.
#[derive(Clone, Debug)]
pub struct NormedBasis {
    labels: Vec<String>,
}

impl NormedBasis {
    pub fn new(labels: Vec<String>) -> Self {
        NormedBasis { labels }
    }

    pub fn anonymous(rank: usize) -> Self {
        NormedBasis {
            labels: (0..rank).map(|i| format!("b{i}")).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// `max_i |coord_i|` with respect to the basis.
pub fn max_norm(basis: &NormedBasis, class: &DivisorClass) -> Result<Rat, HarnessError> {
    if class.rank() != basis.rank() {
        return Err(HarnessError::DimensionMismatch {
            expected: basis.rank(),
            got: class.rank(),
        });
    }
    Ok(class
        .coords()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rat::zero))
}

/// Where a class sits in the chamber decomposition of its model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberId {
    /// Interior of the chamber carrying this opaque label; classes sharing
    /// a label share their cohomology polynomials.
    Interior(String),
    /// On the vanishing locus of a defining pairing.
    Wall,
}

impl ChamberId {
    pub fn is_wall(&self) -> bool {
        matches!(self, ChamberId::Wall)
    }
}

/// A wall of the chamber decomposition, witnessed by rational points on it
/// and a transversal crossing direction.
#[derive(Clone, Debug)]
pub struct WallSpec {
    pub label: String,
    pub points: Vec<DivisorClass>,
    pub direction: DivisorClass,
}

/// The evaluation contract shared by all variety families: dimension,
/// Neron-Severi rank, exact evaluation of the asymptotic cohomology vector
/// and chamber location. `evaluate` is homogeneous of degree `dimension()`
/// on every rational ray.
pub trait VarietyModel {
    fn dimension(&self) -> usize;
    fn rank(&self) -> usize;
    fn evaluate(&self, class: &DivisorClass) -> CohomologyVector;
    fn chamber_id(&self, class: &DivisorClass) -> ChamberId;

    /// Walls of the chamber decomposition with rational witnesses, for the
    /// wall-continuity suite. At least `rank + 1` points per wall.
    fn wall_specs(&self) -> Vec<WallSpec>;

    fn basis(&self) -> NormedBasis {
        NormedBasis::anonymous(self.rank())
    }
}

/// n! as a big integer.
pub fn factorial(n: usize) -> Int {
    let mut acc = Int::from(1);
    for k in 2..=n {
        acc *= Int::from(k as u64);
    }
    acc
}

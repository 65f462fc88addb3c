//! Scalar abstraction for the exact linear-algebra kernel.

use std::fmt::{Debug, Display};

use num_traits::{Num, Signed};

/// Element of an ordered field, as needed by the elimination and simplex
/// routines in [`crate::exactlin`].
///
/// The shipped models instantiate everything with [`crate::Rat`]; the kernel
/// itself only relies on exact field arithmetic and order comparisons.
pub trait Scalar: Clone + Num + Signed + PartialOrd + Debug + Display {}

impl<T> Scalar for T where T: Clone + Num + Signed + PartialOrd + Debug + Display {}

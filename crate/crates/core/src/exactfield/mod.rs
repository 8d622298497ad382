//! Exact arithmetic in real multi-quadratic fields `Q(√d_1, ..., √d_m)` and
//! complex pairs over them.
//!
//! A [`RealRad`] is stored as a sparse map from squarefree radicand `d` to a
//! nonzero rational coefficient. Because the square roots of distinct
//! squarefree integers are linearly independent over `Q`, this
//! representation is unique and structural equality is field equality.

mod complex;
mod realrad;

pub use complex::ComplexRad;
pub use realrad::{ParseRadError, RealRad};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

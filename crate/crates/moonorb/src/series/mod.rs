//! Truncated exact series in one and two variables.
//!
//! Both series types carry their truncation as part of the value: every
//! arithmetic operation computes the truncation of its result from the
//! truncations and leading exponents of its operands, so a coefficient that
//! can be read out of a series is always exactly right.  Exponents live on an
//! explicit rational grid (a positive integer denominator per variable);
//! internally each exponent is stored as an integer key equal to the exponent
//! times the denominator.

mod biseries;
mod puiseux;

pub use biseries::BiSeries;
pub use puiseux::PuiseuxSeries;

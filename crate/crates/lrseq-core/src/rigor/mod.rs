//! Certified numerics: dyadic floats, directed rounding, intervals, balls.
//!
//! The representation is deliberately simple. A [`BigFloat`] is an exact
//! dyadic number `mantissa * 2^exp`; addition and multiplication are exact,
//! and rounding happens only where an operation asks for it, always with an
//! explicit direction. [`RealInterval`] keeps a lower endpoint rounded down
//! and an upper endpoint rounded up, so any real quantity computed through
//! it is bracketed. [`ComplexBall`] is a midpoint-radius complex enclosure
//! used by the root isolator.

mod ball;
mod bigfloat;
mod interval;

pub use ball::{ComplexBall, RAD_BITS};
pub use bigfloat::{BigFloat, Round};
pub use interval::{ln2, ln_enclosure, pi, RealInterval};

/// Default starting precision (bits) for certified refinement loops.
pub const DEFAULT_PRECISION: u32 = 128;

/// Hard cap on working precision; hitting it turns into `PrecisionExhausted`.
pub const PRECISION_CAP: u32 = 1 << 16;

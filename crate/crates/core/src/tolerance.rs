//! Absolute tolerances used across the crate.

/// Allowed deviation of a frequency table's total from 1 before it is
/// rejected. Tables inside this band are renormalized.
pub const SUM: f64 = 1e-9;

/// Magnitudes at or below this are structural zeros (off-diagonals,
/// determinants, row sums).
pub const ZERO: f64 = 1e-12;

/// Residual allowed by [`crate::curve::on_curve`].
pub const ON_CURVE: f64 = 1e-9;

/// Allowed deviation of a recovered confusion distribution's total from 1.
pub const SIGMA_SUM: f64 = 1e-9;

/// Width at which the golden-section oracle stops.
pub const GOLDEN_SECTION: f64 = 1e-10;

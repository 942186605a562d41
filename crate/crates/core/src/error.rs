use thiserror::Error;

use crate::curve::GeometryKind;

/// Errors raised by table construction and the interface math.
///
/// Numeric payloads are widened to `f64` so the error type does not depend
/// on the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("count table has zero total")]
    ZeroTotal,
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("row {row} of the table sums to zero")]
    ZeroRow { row: usize },
    #[error("column {column} of the table sums to zero")]
    ZeroColumn { column: usize },
    #[error("table is anti-causal (determinant {determinant:.3e} < 0); canonicalize first")]
    NotCanonical { determinant: f64 },
    #[error("effect index is 1; the confusion component has zero weight")]
    DegenerateInterface,
    #[error("eps0 = {value} outside [0, {upper}]")]
    OutOfRange { value: f64, upper: f64 },
    #[error("operation requires a regular arc, geometry is {0:?}")]
    DegenerateGeometry(GeometryKind),
    #[error("confusion distribution ({sigma0}, {sigma1}) outside [{lo0}, {hi0}] x [{lo1}, {hi1}]")]
    SigmaOutOfRange {
        sigma0: f64,
        sigma1: f64,
        lo0: f64,
        hi0: f64,
        lo1: f64,
        hi1: f64,
    },
    #[error("confusion distribution is undefined at (1, 1)")]
    DiagonalTable,
    #[error("point ({eps0}, {eps1}) is not on the interface curve")]
    OffCurve { eps0: f64, eps1: f64 },
    #[error("invalid value: {0}")]
    InvalidValue(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

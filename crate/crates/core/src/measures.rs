//! One-dimensional effect index and the symmetric confusion decomposition.
//!
//! The effect index `ε̂ = p11/p_1* − p01/p_0*` (the risk difference) has many
//! equivalent forms: `det P / (p_0*·p_1*)`, `Cov(A,B)/Var(A)`, `det R`,
//! `trace R − 1`, the second eigenvalue of `R`, and `2·AUC − 1`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::FrequencyTable;
use crate::tolerance;

/// Summary measures of a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectMeasures<T = f64> {
    pub epsilon_hat: T,
    pub covariance: T,
    pub variance_a: T,
    pub variance_b: T,
    pub correlation: T,
    /// Area under the ROC curve of `B` as a score for `A`.
    pub auc: T,
    /// Least-squares slope of `B` regressed on `A`.
    pub regression_slope_b_on_a: T,
    pub trace_r: T,
    /// Eigenvalues of `R`, larger first.
    pub eigenvalues_r: (T, T),
}

/// `P = (1 − ε̂)·C + ε̂·diag(p_0*, p_1*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricDecomposition<T = f64> {
    pub epsilon_hat: T,
    pub confusion: FrequencyTable<T>,
    row_sums: [T; 2],
}

impl<T: Scalar> SymmetricDecomposition<T> {
    /// Rebuilds `P` from the parts.
    pub fn reconstruct(&self) -> FrequencyTable<T> {
        let e = self.epsilon_hat;
        let c = self.confusion.cells();
        let mut out = c.map(|row| row.map(|x| (T::one() - e) * x));
        out[0][0] = out[0][0] + e * self.row_sums[0];
        out[1][1] = out[1][1] + e * self.row_sums[1];
        FrequencyTable::from_cells_unchecked(out)
    }
}

/// `p11/p_1* − p01/p_0*`.
pub fn effect_index<T: Scalar>(table: &FrequencyTable<T>) -> Result<T> {
    let [p0, p1] = table.nonzero_row_sums()?;
    Ok(table.get(1, 1) / p1 - table.get(0, 1) / p0)
}

/// `p00/p_0* − p10/p_1*`, the same quantity read from the `B = 0` column.
pub fn negative_effect_index<T: Scalar>(table: &FrequencyTable<T>) -> Result<T> {
    let [p0, p1] = table.nonzero_row_sums()?;
    Ok(table.get(0, 0) / p0 - table.get(1, 0) / p1)
}

/// Roots of `λ² − trace·λ + det`, larger first.
pub(crate) fn eigenvalues_2x2<T: Scalar>(trace: T, det: T) -> (T, T) {
    let two = T::lit(2.0);
    let disc = (trace * trace - T::lit(4.0) * det).max(T::zero());
    let root = disc.sqrt();
    ((trace + root) / two, (trace - root) / two)
}

pub fn measures<T: Scalar>(table: &FrequencyTable<T>) -> Result<EffectMeasures<T>> {
    let m = table.margins();
    let [p0, p1] = table.nonzero_row_sums()?;
    let zero = T::tol(tolerance::ZERO);
    if let Some(column) = m.columns.iter().position(|&s| s <= zero) {
        return Err(Error::ZeroColumn { column });
    }
    let covariance = table.determinant();
    let variance_a = p0 * p1;
    let variance_b = m.columns[0] * m.columns[1];
    let epsilon_hat = effect_index(table)?;
    let r = table.row_normalize()?;
    let trace_r = r.trace();
    Ok(EffectMeasures {
        epsilon_hat,
        covariance,
        variance_a,
        variance_b,
        correlation: covariance / (variance_a * variance_b).sqrt(),
        auc: T::half() + epsilon_hat * T::half(),
        regression_slope_b_on_a: covariance / variance_a,
        trace_r,
        eigenvalues_r: eigenvalues_2x2(trace_r, r.determinant()),
    })
}

/// Splits `P` into the symmetric interface `ε̂·diag(p_i*)` and a rank-one
/// confusion table carrying weight `1 − ε̂`.
pub fn symmetric_confusion<T: Scalar>(table: &FrequencyTable<T>) -> Result<SymmetricDecomposition<T>> {
    let det = table.determinant();
    if det < -T::tol(tolerance::ZERO) {
        return Err(Error::NotCanonical { determinant: det.to_f64_lossy() });
    }
    let rows = table.nonzero_row_sums()?;
    let e = effect_index(table)?.max(T::zero());
    let weight = T::one() - e;
    if weight <= T::tol(tolerance::ZERO) {
        return Err(Error::DegenerateInterface);
    }
    let mut c = table.cells();
    c[0][0] = c[0][0] - e * rows[0];
    c[1][1] = c[1][1] - e * rows[1];
    let c = c.map(|row| row.map(|x| (x / weight).max(T::zero())));
    Ok(SymmetricDecomposition {
        epsilon_hat: e,
        confusion: FrequencyTable::from_cells_unchecked(c),
        row_sums: rows,
    })
}

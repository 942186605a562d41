//! 2×2 interaction tables: raw counts, joint frequencies and the
//! row-normalized (row-stochastic) form.
//!
//! Row index is the value of the manipulated variable `A`, column index the
//! value of the outcome `B`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tolerance;

/// Observation counts `n[a][b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CountTable {
    cells: [[u64; 2]; 2],
}

impl CountTable {
    pub fn new(cells: [[u64; 2]; 2]) -> Self {
        Self { cells }
    }

    pub fn cells(&self) -> [[u64; 2]; 2] {
        self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.cells[row][col]
    }

    pub(crate) fn increment(&mut self, row: usize, col: usize) {
        self.cells[row][col] += 1;
    }

    pub fn total(&self) -> u128 {
        self.cells.iter().flatten().map(|&n| n as u128).sum()
    }
}

/// Joint frequencies `p[a][b]`, nonnegative and summing to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyTable<T = f64> {
    cells: [[T; 2]; 2],
}

/// Row and column sums of a [`FrequencyTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins<T = f64> {
    /// `(p_0*, p_1*)`
    pub rows: [T; 2],
    /// `(p_*0, p_*1)`
    pub columns: [T; 2],
}

/// Outcome of [`FrequencyTable::validate`]. Callers decide severity.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<T = f64> {
    /// `sum(p) - 1`
    pub sum_deviation: T,
    pub negative_entries: Vec<(usize, usize)>,
    pub entries_above_one: Vec<(usize, usize)>,
    pub non_finite: bool,
    pub zero_rows: [bool; 2],
    pub zero_columns: [bool; 2],
}

impl<T: Scalar> ValidationReport<T> {
    /// True when the table is a probability table (zero rows are allowed).
    pub fn is_valid(&self) -> bool {
        !self.non_finite
            && self.negative_entries.is_empty()
            && self.entries_above_one.is_empty()
            && self.sum_deviation.abs() <= T::tol(tolerance::SUM)
    }

    pub fn has_zero_row(&self) -> bool {
        self.zero_rows.iter().any(|&z| z)
    }

    fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.non_finite {
            parts.push("non-finite entry".to_string());
        }
        for (i, j) in &self.negative_entries {
            parts.push(format!("negative entry p{i}{j}"));
        }
        for (i, j) in &self.entries_above_one {
            parts.push(format!("entry p{i}{j} exceeds 1"));
        }
        if self.sum_deviation.abs() > T::tol(tolerance::SUM) {
            parts.push(format!("entries sum to 1{:+e}", self.sum_deviation.to_f64_lossy()));
        }
        parts.join(", ")
    }
}

/// Record of the column swap applied by [`FrequencyTable::canonicalize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalizationRecord<T = f64> {
    pub columns_swapped: bool,
    pub original_determinant: T,
}

impl<T: Scalar> FrequencyTable<T> {
    /// Builds a validated table. Totals within `1e-9` of one are
    /// renormalized; anything else is rejected.
    pub fn new(cells: [[T; 2]; 2]) -> Result<Self> {
        let raw = Self::from_cells_unchecked(cells);
        let report = raw.validate();
        if !report.is_valid() {
            return Err(Error::InvalidTable(report.describe()));
        }
        let total = T::one() + report.sum_deviation;
        Ok(Self::from_cells_unchecked(cells.map(|row| row.map(|p| p / total))))
    }

    /// Wraps `cells` without any checks; see [`FrequencyTable::validate`].
    pub fn from_cells_unchecked(cells: [[T; 2]; 2]) -> Self {
        Self { cells }
    }

    /// `p_ij = n_ij / total`.
    pub fn from_counts(counts: &CountTable) -> Result<Self> {
        let total = counts.total();
        if total == 0 {
            return Err(Error::ZeroTotal);
        }
        let total = T::from_u128(total).ok_or_else(|| Error::InvalidValue("count total".into()))?;
        let cells = counts.cells().map(|row| {
            row.map(|n| T::from_u64(n).expect("u64 converts to float") / total)
        });
        Ok(Self { cells })
    }

    pub fn cells(&self) -> [[T; 2]; 2] {
        self.cells
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.cells[row][col]
    }

    pub fn total(&self) -> T {
        self.cells.iter().flatten().fold(T::zero(), |acc, &p| acc + p)
    }

    /// `p00·p11 − p01·p10`, which equals `Cov(A, B)`.
    pub fn determinant(&self) -> T {
        let [[a, b], [c, d]] = self.cells;
        a * d - b * c
    }

    pub fn margins(&self) -> Margins<T> {
        let [[a, b], [c, d]] = self.cells;
        Margins {
            rows: [a + b, c + d],
            columns: [a + c, b + d],
        }
    }

    pub fn validate(&self) -> ValidationReport<T> {
        let mut report = ValidationReport {
            sum_deviation: self.total() - T::one(),
            negative_entries: Vec::new(),
            entries_above_one: Vec::new(),
            non_finite: false,
            zero_rows: [false; 2],
            zero_columns: [false; 2],
        };
        for (i, row) in self.cells.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                if !p.is_finite() {
                    report.non_finite = true;
                } else if p < T::zero() {
                    report.negative_entries.push((i, j));
                } else if p > T::one() {
                    report.entries_above_one.push((i, j));
                }
            }
        }
        let zero = T::tol(tolerance::ZERO);
        let m = self.margins();
        report.zero_rows = m.rows.map(|s| s.abs() <= zero);
        report.zero_columns = m.columns.map(|s| s.abs() <= zero);
        report
    }

    /// The same table with the `B` labels exchanged.
    pub fn swap_columns(&self) -> Self {
        let [[a, b], [c, d]] = self.cells;
        Self { cells: [[b, a], [d, c]] }
    }

    /// Swaps columns when the determinant is negative so that the result
    /// has `det ≥ 0`. Determinants within `1e-12` of zero are left alone.
    pub fn canonicalize(&self) -> Result<(Self, CanonicalizationRecord<T>)> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidTable(report.describe()));
        }
        if let Some(row) = report.zero_rows.iter().position(|&z| z) {
            return Err(Error::ZeroRow { row });
        }
        let det = self.determinant();
        let swap = det < -T::tol(tolerance::ZERO);
        let table = if swap { self.swap_columns() } else { *self };
        Ok((
            table,
            CanonicalizationRecord {
                columns_swapped: swap,
                original_determinant: det,
            },
        ))
    }

    /// `r_ij = p_ij / p_i*`.
    pub fn row_normalize(&self) -> Result<RowStochasticTable<T>> {
        let rows = self.nonzero_row_sums()?;
        let cells = [0, 1].map(|i| self.cells[i].map(|p| p / rows[i]));
        Ok(RowStochasticTable { cells })
    }

    pub(crate) fn nonzero_row_sums(&self) -> Result<[T; 2]> {
        let rows = self.margins().rows;
        let zero = T::tol(tolerance::ZERO);
        match rows.iter().position(|&s| s <= zero) {
            Some(row) => Err(Error::ZeroRow { row }),
            None => Ok(rows),
        }
    }

    /// Converts the element type.
    pub fn cast<U: Scalar>(&self) -> FrequencyTable<U> {
        FrequencyTable {
            cells: self.cells.map(|row| row.map(|p| U::lit(p.to_f64_lossy()))),
        }
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.cells[i][j] - other.cells[i][j]).abs());
            }
        }
        worst
    }
}

impl<T: Scalar> fmt::Display for FrequencyTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.cells;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Row-normalized table `R`; every row is a distribution over `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowStochasticTable<T = f64> {
    cells: [[T; 2]; 2],
}

impl<T: Scalar> RowStochasticTable<T> {
    /// Builds `R` directly. Rows must be distributions within `1e-9`; they
    /// are renormalized.
    pub fn new(cells: [[T; 2]; 2]) -> Result<Self> {
        let mut out = cells;
        for (i, row) in cells.iter().enumerate() {
            if row.iter().any(|p| !p.is_finite() || *p < T::zero() || *p > T::one()) {
                return Err(Error::InvalidTable(format!("row {i} has an entry outside [0, 1]")));
            }
            let sum = row[0] + row[1];
            if (sum - T::one()).abs() > T::tol(tolerance::SUM) {
                return Err(Error::InvalidTable(format!(
                    "row {i} sums to {}",
                    sum.to_f64_lossy()
                )));
            }
            out[i] = row.map(|p| p / sum);
        }
        Ok(Self { cells: out })
    }

    pub fn cells(&self) -> [[T; 2]; 2] {
        self.cells
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.cells[row][col]
    }

    pub fn determinant(&self) -> T {
        let [[a, b], [c, d]] = self.cells;
        a * d - b * c
    }

    pub fn trace(&self) -> T {
        self.cells[0][0] + self.cells[1][1]
    }

    /// `P` with both rows weighted one half.
    pub fn to_equal_weight_table(&self) -> FrequencyTable<T> {
        let h = T::half();
        FrequencyTable::from_cells_unchecked(self.cells.map(|row| row.map(|r| r * h)))
    }

    /// `P` with row weights `(1 - row_weight, row_weight)`.
    pub fn to_table(&self, row_weight: T) -> FrequencyTable<T> {
        let w = [T::one() - row_weight, row_weight];
        FrequencyTable::from_cells_unchecked([0, 1].map(|i| self.cells[i].map(|r| r * w[i])))
    }
}

impl<T: Scalar> fmt::Display for RowStochasticTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.cells;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

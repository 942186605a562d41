//! The set of admissible interface coefficients for a row-stochastic table.
//!
//! Writing `R = diag(1 − ε)·[σ; σ] + diag(ε)` and requiring the confusion
//! part to be rank one gives the determinant-zero condition
//!
//! ```text
//! (r00 − ε0)(r11 − ε1) = r01·r10
//! ```
//!
//! whose lower branch inside the unit square is the curve handled here. When
//! one off-diagonal of `R` vanishes the branch degenerates into two line
//! segments meeting at `(r00, r11)`; when `det R = 0` only the origin is left.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::{FrequencyTable, RowStochasticTable};
use crate::tolerance;

/// Interface coefficients `(ε0, ε1)`: the strength of `A' ⇒ B'` and `A ⇒ B`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InterfacePoint<T = f64> {
    pub eps0: T,
    pub eps1: T,
}

impl<T: Scalar> InterfacePoint<T> {
    /// Checked constructor; both coordinates must lie in `[0, 1]`.
    pub fn new(eps0: T, eps1: T) -> Result<Self> {
        let p = Self { eps0, eps1 };
        if p.in_unit_square() {
            Ok(p)
        } else {
            Err(Error::InvalidValue(format!(
                "interface point ({eps0}, {eps1}) outside the unit square"
            )))
        }
    }

    pub fn in_unit_square(&self) -> bool {
        let unit = |x: T| x >= T::zero() && x <= T::one();
        unit(self.eps0) && unit(self.eps1)
    }

    /// `ε0 + ε1`, the total explanatory power.
    pub fn sum(&self) -> T {
        self.eps0 + self.eps1
    }
}

/// Column distribution `(σ0, σ1)` of the confusion table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionDistribution<T = f64> {
    pub sigma0: T,
    pub sigma1: T,
}

impl<T: Scalar> ConfusionDistribution<T> {
    pub fn new(sigma0: T, sigma1: T) -> Result<Self> {
        let unit = |x: T| x >= T::zero() && x <= T::one();
        if !unit(sigma0) || !unit(sigma1) || (sigma0 + sigma1 - T::one()).abs() > T::tol(tolerance::ZERO) {
            return Err(Error::InvalidValue(format!(
                "({sigma0}, {sigma1}) is not a distribution"
            )));
        }
        Ok(Self { sigma0, sigma1 })
    }

    pub fn from_sigma1(sigma1: T) -> Result<Self> {
        Self::new(T::one() - sigma1, sigma1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryKind {
    /// Hyperbola arc from `(0, y0)` to `(x0, 0)`.
    RegularArc,
    /// Segments `(0, y0)–(x0, y0)` and `(x0, y0)–(x0, 0)`.
    LShaped,
    /// The single point `(x0, y0)`: the origin when `det R = 0`, `(1, 1)`
    /// for a diagonal table.
    SinglePoint,
}

impl GeometryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeometryKind::RegularArc => "regular-arc",
            GeometryKind::LShaped => "l-shaped",
            GeometryKind::SinglePoint => "single-point",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveGeometry<T = f64> {
    pub kind: GeometryKind,
    /// Largest admissible `ε0` (reached with `ε1 = 0` on an arc).
    pub x_intercept: T,
    /// Largest admissible `ε1`.
    pub y_intercept: T,
}

impl<T: Scalar> CurveGeometry<T> {
    /// The point of a `SinglePoint` geometry, or the corner of an L.
    pub fn corner(&self) -> InterfacePoint<T> {
        InterfacePoint {
            eps0: self.x_intercept,
            eps1: self.y_intercept,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.kind == GeometryKind::SinglePoint && self.x_intercept > T::zero()
    }
}

/// `P = diag(1 − ε)·C + diag(ε)·diag(p_0*, p_1*)` with `C = (p_i*·σ_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceDecomposition<T = f64> {
    pub point: InterfacePoint<T>,
    /// `None` at `(1, 1)`, where the confusion part carries no weight.
    pub sigma: Option<ConfusionDistribution<T>>,
    pub confusion_full: Option<FrequencyTable<T>>,
    pub row_sums: [T; 2],
}

impl<T: Scalar> InterfaceDecomposition<T> {
    pub fn reconstruct(&self) -> FrequencyTable<T> {
        let eps = [self.point.eps0, self.point.eps1];
        let mut out = [[T::zero(); 2]; 2];
        for i in 0..2 {
            if let Some(c) = &self.confusion_full {
                for j in 0..2 {
                    out[i][j] = (T::one() - eps[i]) * c.get(i, j);
                }
            }
            out[i][i] = out[i][i] + eps[i] * self.row_sums[i];
        }
        FrequencyTable::from_cells_unchecked(out)
    }
}

fn is_zero<T: Scalar>(x: T) -> bool {
    x.abs() <= T::tol(tolerance::ZERO)
}

/// `(r00 − ε0)(r11 − ε1) − r01·r10`.
pub fn detzero_residual<T: Scalar>(r: &RowStochasticTable<T>, point: &InterfacePoint<T>) -> T {
    (r.get(0, 0) - point.eps0) * (r.get(1, 1) - point.eps1) - r.get(0, 1) * r.get(1, 0)
}

pub fn geometry<T: Scalar>(r: &RowStochasticTable<T>) -> Result<CurveGeometry<T>> {
    let det = r.determinant();
    if det < -T::tol(tolerance::ZERO) {
        return Err(Error::NotCanonical { determinant: det.to_f64_lossy() });
    }
    if det <= T::tol(tolerance::ZERO) {
        return Ok(CurveGeometry {
            kind: GeometryKind::SinglePoint,
            x_intercept: T::zero(),
            y_intercept: T::zero(),
        });
    }
    let x_intercept = (det / r.get(1, 1)).min(T::one());
    let y_intercept = (det / r.get(0, 0)).min(T::one());
    let kind = match (is_zero(r.get(0, 1)), is_zero(r.get(1, 0))) {
        (true, true) => GeometryKind::SinglePoint,
        (false, false) => GeometryKind::RegularArc,
        _ => GeometryKind::LShaped,
    };
    Ok(CurveGeometry {
        kind,
        x_intercept,
        y_intercept,
    })
}

/// `ε1 = r11 − r01·r10 / (r00 − ε0)` on a regular arc.
pub fn eps1_of_eps0<T: Scalar>(r: &RowStochasticTable<T>, eps0: T) -> Result<T> {
    let g = geometry(r)?;
    if g.kind != GeometryKind::RegularArc {
        return Err(Error::DegenerateGeometry(g.kind));
    }
    eps1_on_arc(r, &g, eps0)
}

pub(crate) fn eps1_on_arc<T: Scalar>(r: &RowStochasticTable<T>, g: &CurveGeometry<T>, eps0: T) -> Result<T> {
    let tol = T::tol(tolerance::ZERO);
    if !(eps0 >= -tol && eps0 <= g.x_intercept + tol) {
        return Err(Error::OutOfRange {
            value: eps0.to_f64_lossy(),
            upper: g.x_intercept.to_f64_lossy(),
        });
    }
    let eps0 = eps0.max(T::zero()).min(g.x_intercept);
    let eps1 = r.get(1, 1) - r.get(0, 1) * r.get(1, 0) / (r.get(0, 0) - eps0);
    Ok(eps1.max(T::zero()).min(g.y_intercept))
}

/// `ε0 = 1 − r01/σ1`, `ε1 = 1 − r10/σ0`.
///
/// When a `σ` component and the matching off-diagonal are both zero the
/// ratio is read as `r/σ = 1`, giving a zero coefficient.
pub fn point_from_sigma<T: Scalar>(
    r: &RowStochasticTable<T>,
    sigma: &ConfusionDistribution<T>,
) -> Result<InterfacePoint<T>> {
    let tol = T::tol(tolerance::ZERO);
    let (lo0, hi0) = (r.get(1, 0), r.get(0, 0));
    let (lo1, hi1) = (r.get(0, 1), r.get(1, 1));
    let inside = |s: T, lo: T, hi: T| s >= lo - tol && s <= hi + tol;
    if !inside(sigma.sigma0, lo0, hi0) || !inside(sigma.sigma1, lo1, hi1) {
        return Err(Error::SigmaOutOfRange {
            sigma0: sigma.sigma0.to_f64_lossy(),
            sigma1: sigma.sigma1.to_f64_lossy(),
            lo0: lo0.to_f64_lossy(),
            hi0: hi0.to_f64_lossy(),
            lo1: lo1.to_f64_lossy(),
            hi1: hi1.to_f64_lossy(),
        });
    }
    let coefficient = |off: T, s: T| {
        if s <= tol {
            T::zero()
        } else {
            (T::one() - off / s).max(T::zero()).min(T::one())
        }
    };
    Ok(InterfacePoint {
        eps0: coefficient(lo1, sigma.sigma1),
        eps1: coefficient(lo0, sigma.sigma0),
    })
}

/// `σ0 = r10/(1 − ε1)`, `σ1 = r01/(1 − ε0)`.
pub fn sigma_from_point<T: Scalar>(
    r: &RowStochasticTable<T>,
    point: &InterfacePoint<T>,
) -> Result<ConfusionDistribution<T>> {
    if !on_curve(r, point) {
        return Err(Error::OffCurve {
            eps0: point.eps0.to_f64_lossy(),
            eps1: point.eps1.to_f64_lossy(),
        });
    }
    let tol = T::tol(tolerance::ZERO);
    let w0 = T::one() - point.eps0;
    let w1 = T::one() - point.eps1;
    let sigma1 = (w0 > tol).then(|| r.get(0, 1) / w0);
    let sigma0 = (w1 > tol).then(|| r.get(1, 0) / w1);
    let (s0, s1) = match (sigma0, sigma1) {
        (None, None) => return Err(Error::DiagonalTable),
        (Some(s0), None) => (s0, T::one() - s0),
        (None, Some(s1)) => (T::one() - s1, s1),
        (Some(s0), Some(s1)) => {
            let sum = s0 + s1;
            if (sum - T::one()).abs() > T::tol(tolerance::SIGMA_SUM) {
                return Err(Error::OffCurve {
                    eps0: point.eps0.to_f64_lossy(),
                    eps1: point.eps1.to_f64_lossy(),
                });
            }
            (s0 / sum, s1 / sum)
        }
    };
    Ok(ConfusionDistribution {
        sigma0: s0.max(T::zero()).min(T::one()),
        sigma1: s1.max(T::zero()).min(T::one()),
    })
}

/// `C = (p_i*·σ_j)`, the outer product of row sums and `σ`.
pub fn confusion_table<T: Scalar>(row_sums: [T; 2], sigma: &ConfusionDistribution<T>) -> FrequencyTable<T> {
    let s = [sigma.sigma0, sigma.sigma1];
    FrequencyTable::from_cells_unchecked(row_sums.map(|p| s.map(|x| p * x)))
}

pub fn decompose<T: Scalar>(p: &FrequencyTable<T>, point: &InterfacePoint<T>) -> Result<InterfaceDecomposition<T>> {
    let det = p.determinant();
    if det < -T::tol(tolerance::ZERO) {
        return Err(Error::NotCanonical { determinant: det.to_f64_lossy() });
    }
    let r = p.row_normalize()?;
    let row_sums = p.margins().rows;
    let sigma = match sigma_from_point(&r, point) {
        Ok(s) => Some(s),
        Err(Error::DiagonalTable) => None,
        Err(e) => return Err(e),
    };
    Ok(InterfaceDecomposition {
        point: *point,
        sigma,
        confusion_full: sigma.map(|s| confusion_table(row_sums, &s)),
        row_sums,
    })
}

/// `n ≥ 2` points along the admissible set, ordered by increasing `ε0`.
pub fn sample_curve<T: Scalar>(r: &RowStochasticTable<T>, n: usize) -> Result<Vec<InterfacePoint<T>>> {
    if n < 2 {
        return Err(Error::InvalidValue(format!("need at least 2 sample points, got {n}")));
    }
    let g = geometry(r)?;
    let step = |k: usize| T::from_usize(k).unwrap() / T::from_usize(n - 1).unwrap();
    let (x0, y0) = (g.x_intercept, g.y_intercept);
    let points = match g.kind {
        GeometryKind::SinglePoint => vec![g.corner(); n],
        GeometryKind::RegularArc => (0..n)
            .map(|k| {
                let eps0 = if k == n - 1 { x0 } else { x0 * step(k) };
                let eps1 = eps1_on_arc(r, &g, eps0)?;
                Ok(InterfacePoint { eps0, eps1 })
            })
            .collect::<Result<Vec<_>>>()?,
        GeometryKind::LShaped => {
            let length = x0 + y0;
            (0..n)
                .map(|k| {
                    let s = length * step(k);
                    if k == n - 1 {
                        InterfacePoint { eps0: x0, eps1: T::zero() }
                    } else if s <= x0 {
                        InterfacePoint { eps0: s, eps1: y0 }
                    } else {
                        InterfacePoint {
                            eps0: x0,
                            eps1: (y0 - (s - x0)).max(T::zero()),
                        }
                    }
                })
                .collect()
        }
    };
    Ok(points)
}

/// Membership in the admissible set: inside the unit square, on the lower
/// branch, and with determinant-zero residual at most `1e-9`.
pub fn on_curve<T: Scalar>(r: &RowStochasticTable<T>, point: &InterfacePoint<T>) -> bool {
    let tol = T::tol(tolerance::ON_CURVE);
    point.in_unit_square()
        && point.eps0 <= r.get(0, 0) + tol
        && point.eps1 <= r.get(1, 1) + tol
        && detzero_residual(r, point).abs() <= tol
}

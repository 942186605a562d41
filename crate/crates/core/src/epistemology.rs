//! Rules that pick one point on the interface curve.
//!
//! Every rule is a choice of the confusion distribution `σ` (or, for the
//! tangent rule, of the point itself). All of them are evaluated in closed
//! form from `R`, except [`EpistemologyKind::Classification`], which also
//! needs the column margins of `P`.

use std::fmt;

use crate::curve::{
    confusion_table, decompose, eps1_on_arc, geometry, on_curve, point_from_sigma, ConfusionDistribution, CurveGeometry,
    GeometryKind, InterfacePoint,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::{FrequencyTable, RowStochasticTable};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpistemologyKind<T = f64> {
    /// `ε0 = ε1 = ε̂`.
    Symmetric,
    /// Maximizes `ε0 + ε1` along the curve.
    MaximumCause,
    /// `σ` is the marginal distribution of `B`.
    Classification,
    /// `σ` is the untreated row of `R`; `ε0 = 0`.
    Untreated,
    /// `ε0 = r00 − r01`, `ε1 = r11 − r10`, `σ = (1/2, 1/2)`.
    Natural,
    /// User-chosen `σ1`.
    Custom(T),
}

impl<T: Scalar> EpistemologyKind<T> {
    /// The five named rules in legend order.
    pub const NAMED: [EpistemologyKind<T>; 5] = [
        EpistemologyKind::Symmetric,
        EpistemologyKind::MaximumCause,
        EpistemologyKind::Classification,
        EpistemologyKind::Untreated,
        EpistemologyKind::Natural,
    ];

    /// One-letter plot label (`X` for custom).
    pub fn label(&self) -> &'static str {
        match self {
            EpistemologyKind::Symmetric => "S",
            EpistemologyKind::MaximumCause => "M",
            EpistemologyKind::Classification => "C",
            EpistemologyKind::Untreated => "U",
            EpistemologyKind::Natural => "N",
            EpistemologyKind::Custom(_) => "X",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EpistemologyKind::Symmetric => "symmetric",
            EpistemologyKind::MaximumCause => "maximum-cause",
            EpistemologyKind::Classification => "classification",
            EpistemologyKind::Untreated => "untreated",
            EpistemologyKind::Natural => "natural",
            EpistemologyKind::Custom(_) => "custom",
        }
    }
}

impl<T: Scalar> fmt::Display for EpistemologyKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpistemologyKind::Custom(s) => write!(f, "custom(sigma1={s})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolutionStatus<T = f64> {
    Feasible,
    /// The rule's unconstrained point left the curve; `raw` is that point.
    Clamped { raw: InterfacePoint<T> },
    /// The rule has no admissible point for this table.
    Infeasible { raw: InterfacePoint<T> },
}

impl<T> SolutionStatus<T> {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionStatus::Feasible => "feasible",
            SolutionStatus::Clamped { .. } => "clamped",
            SolutionStatus::Infeasible { .. } => "infeasible",
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, SolutionStatus::Infeasible { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceSolution<T = f64> {
    pub kind: EpistemologyKind<T>,
    /// The chosen point; for infeasible solutions the raw (inadmissible) one.
    pub point: InterfacePoint<T>,
    /// `None` where `σ` is undefined (the diagonal table).
    pub sigma: Option<ConfusionDistribution<T>>,
    pub confusion_full: Option<FrequencyTable<T>>,
    pub status: SolutionStatus<T>,
    pub explanatory_sum: T,
    /// A `0/0` coefficient was resolved to zero.
    pub limit_convention: bool,
}

struct Context<T> {
    p: FrequencyTable<T>,
    r: RowStochasticTable<T>,
    g: CurveGeometry<T>,
}

impl<T: Scalar> Context<T> {
    fn new(p: &FrequencyTable<T>) -> Result<Self> {
        let det = p.determinant();
        if det < -T::tol(tolerance::ZERO) {
            return Err(Error::NotCanonical { determinant: det.to_f64_lossy() });
        }
        let r = p.row_normalize()?;
        let g = geometry(&r)?;
        Ok(Self { p: *p, r, g })
    }

    fn finish(
        &self,
        kind: EpistemologyKind<T>,
        point: InterfacePoint<T>,
        status: SolutionStatus<T>,
        limit_convention: bool,
    ) -> Result<InterfaceSolution<T>> {
        self.finish_with_sigma(kind, point, status, limit_convention, None)
    }

    /// Like `finish`, but reports the rule's own `σ` (and the `C` built from
    /// it) instead of the one recovered from the point.
    fn finish_with_sigma(
        &self,
        kind: EpistemologyKind<T>,
        point: InterfacePoint<T>,
        status: SolutionStatus<T>,
        limit_convention: bool,
        defining_sigma: Option<ConfusionDistribution<T>>,
    ) -> Result<InterfaceSolution<T>> {
        let d = decompose(&self.p, &point)?;
        let (sigma, confusion_full) = match (d.sigma, defining_sigma) {
            (Some(_), Some(s)) => (Some(s), Some(confusion_table(d.row_sums, &s))),
            _ => (d.sigma, d.confusion_full),
        };
        Ok(InterfaceSolution {
            kind,
            point,
            sigma,
            confusion_full,
            status,
            explanatory_sum: point.sum(),
            limit_convention,
        })
    }

    fn infeasible(
        &self,
        kind: EpistemologyKind<T>,
        raw: InterfacePoint<T>,
        sigma: Option<ConfusionDistribution<T>>,
    ) -> InterfaceSolution<T> {
        InterfaceSolution {
            kind,
            point: raw,
            sigma,
            confusion_full: None,
            status: SolutionStatus::Infeasible { raw },
            explanatory_sum: raw.sum(),
            limit_convention: false,
        }
    }
}

/// Evaluates one rule on a canonical table.
pub fn solve<T: Scalar>(kind: EpistemologyKind<T>, p: &FrequencyTable<T>) -> Result<InterfaceSolution<T>> {
    let cx = Context::new(p)?;
    solve_in(&cx, kind)
}

/// The five named rules in the order S, M, C, U, N.
pub fn compare_all<T: Scalar>(p: &FrequencyTable<T>) -> Result<Vec<InterfaceSolution<T>>> {
    let cx = Context::new(p)?;
    EpistemologyKind::NAMED.iter().map(|&k| solve_in(&cx, k)).collect()
}

fn solve_in<T: Scalar>(cx: &Context<T>, kind: EpistemologyKind<T>) -> Result<InterfaceSolution<T>> {
    if cx.g.is_diagonal() {
        let one = InterfacePoint { eps0: T::one(), eps1: T::one() };
        return cx.finish(kind, one, SolutionStatus::Feasible, false);
    }
    match kind {
        EpistemologyKind::Symmetric => symmetric(cx),
        EpistemologyKind::MaximumCause => maximum_cause(cx),
        EpistemologyKind::Classification => classification(cx),
        EpistemologyKind::Untreated => untreated(cx),
        EpistemologyKind::Natural => natural(cx),
        EpistemologyKind::Custom(sigma1) => custom(cx, sigma1),
    }
}

fn origin<T: Scalar>() -> InterfacePoint<T> {
    InterfacePoint { eps0: T::zero(), eps1: T::zero() }
}

fn symmetric<T: Scalar>(cx: &Context<T>) -> Result<InterfaceSolution<T>> {
    let e = cx.r.determinant().max(T::zero()).min(T::one());
    let point = InterfacePoint { eps0: e, eps1: e };
    let (r01, r10) = (cx.r.get(0, 1), cx.r.get(1, 0));
    let sigma = ConfusionDistribution {
        sigma0: r10 / (r01 + r10),
        sigma1: r01 / (r01 + r10),
    };
    cx.finish_with_sigma(EpistemologyKind::Symmetric, point, SolutionStatus::Feasible, false, Some(sigma))
}

/// Tangent point of slope −1, `ε = (r00 − √(r01·r10), r11 − √(r01·r10))`,
/// clamped to `[0, x0]` when it falls off the arc.
fn maximum_cause<T: Scalar>(cx: &Context<T>) -> Result<InterfaceSolution<T>> {
    let kind = EpistemologyKind::MaximumCause;
    let r = &cx.r;
    let s = (r.get(0, 1) * r.get(1, 0)).sqrt();
    let raw = InterfacePoint {
        eps0: r.get(0, 0) - s,
        eps1: r.get(1, 1) - s,
    };
    match cx.g.kind {
        GeometryKind::SinglePoint => {
            let status = if raw == origin() {
                SolutionStatus::Feasible
            } else {
                SolutionStatus::Clamped { raw }
            };
            cx.finish(kind, origin(), status, false)
        }
        // s = 0: the tangent is the corner of the L.
        GeometryKind::LShaped => cx.finish(kind, cx.g.corner(), SolutionStatus::Feasible, false),
        GeometryKind::RegularArc => {
            let tol = T::tol(tolerance::ZERO);
            if raw.eps0 >= -tol && raw.eps0 <= cx.g.x_intercept + tol && raw.eps1 >= -tol {
                let point = InterfacePoint {
                    eps0: raw.eps0.max(T::zero()).min(cx.g.x_intercept),
                    eps1: raw.eps1.max(T::zero()).min(cx.g.y_intercept),
                };
                let (a, b) = (r.get(0, 1).sqrt(), r.get(1, 0).sqrt());
                let sigma = ConfusionDistribution {
                    sigma0: b / (a + b),
                    sigma1: a / (a + b),
                };
                return cx.finish_with_sigma(kind, point, SolutionStatus::Feasible, false, Some(sigma));
            }
            let eps0 = raw.eps0.max(T::zero()).min(cx.g.x_intercept);
            let eps1 = eps1_on_arc(r, &cx.g, eps0)?;
            cx.finish(kind, InterfacePoint { eps0, eps1 }, SolutionStatus::Clamped { raw }, false)
        }
    }
}

/// `ε0 = Cov/(p_0*·p_*1)`, `ε1 = Cov/(p_1*·p_*0)`.
fn classification<T: Scalar>(cx: &Context<T>) -> Result<InterfaceSolution<T>> {
    let kind = EpistemologyKind::Classification;
    let m = cx.p.margins();
    let sigma = ConfusionDistribution {
        sigma0: m.columns[0],
        sigma1: m.columns[1],
    };
    if cx.g.kind == GeometryKind::SinglePoint {
        return cx.finish_with_sigma(kind, origin(), SolutionStatus::Feasible, false, Some(sigma));
    }
    let cov = cx.p.determinant();
    let clamp = |x: T| x.max(T::zero()).min(T::one());
    let point = InterfacePoint {
        eps0: clamp(cov / (m.rows[0] * m.columns[1])),
        eps1: clamp(cov / (m.rows[1] * m.columns[0])),
    };
    cx.finish_with_sigma(kind, point, SolutionStatus::Feasible, false, Some(sigma))
}

/// `σ = (r00, r01)`, giving `(0, 1 − r10/r00)`, the y-intercept.
fn untreated<T: Scalar>(cx: &Context<T>) -> Result<InterfaceSolution<T>> {
    let kind = EpistemologyKind::Untreated;
    let point = InterfacePoint {
        eps0: T::zero(),
        eps1: cx.g.y_intercept,
    };
    let limit = cx.r.get(0, 1) <= T::tol(tolerance::ZERO);
    let sigma = ConfusionDistribution {
        sigma0: cx.r.get(0, 0),
        sigma1: cx.r.get(0, 1),
    };
    cx.finish_with_sigma(kind, point, SolutionStatus::Feasible, limit, Some(sigma))
}

fn natural<T: Scalar>(cx: &Context<T>) -> Result<InterfaceSolution<T>> {
    let kind = EpistemologyKind::Natural;
    let r = &cx.r;
    let raw = InterfacePoint {
        eps0: r.get(0, 0) - r.get(0, 1),
        eps1: r.get(1, 1) - r.get(1, 0),
    };
    let half = ConfusionDistribution { sigma0: T::half(), sigma1: T::half() };
    let tol = T::tol(tolerance::ZERO);
    if raw.eps0 < -tol || raw.eps1 < -tol {
        return Ok(cx.infeasible(kind, raw, Some(half)));
    }
    let point = InterfacePoint {
        eps0: raw.eps0.max(T::zero()),
        eps1: raw.eps1.max(T::zero()),
    };
    cx.finish_with_sigma(kind, point, SolutionStatus::Feasible, false, Some(half))
}

fn custom<T: Scalar>(cx: &Context<T>, sigma1: T) -> Result<InterfaceSolution<T>> {
    let kind = EpistemologyKind::Custom(sigma1);
    let sigma = ConfusionDistribution::from_sigma1(sigma1)?;
    match point_from_sigma(&cx.r, &sigma) {
        Ok(point) => {
            let limit = (sigma.sigma1 <= T::tol(tolerance::ZERO)) || (sigma.sigma0 <= T::tol(tolerance::ZERO));
            debug_assert!(on_curve(&cx.r, &point));
            cx.finish_with_sigma(kind, point, SolutionStatus::Feasible, limit, Some(sigma))
        }
        Err(Error::SigmaOutOfRange { .. }) => {
            let raw = InterfacePoint {
                eps0: T::one() - cx.r.get(0, 1) / sigma.sigma1,
                eps1: T::one() - cx.r.get(1, 0) / sigma.sigma0,
            };
            Ok(cx.infeasible(kind, raw, Some(sigma)))
        }
        Err(e) => Err(e),
    }
}

//! Forward model of an interface and independent numeric oracles.
//!
//! For each trial, `A = 1` with probability `row_weight`. A uniform gate `U`
//! then decides whether the interface acts: if `U < ε_A` the outcome copies
//! the cause (`B = A`); otherwise `B` is drawn from the confusion
//! distribution, `B = 1` with probability `σ1`.
//!
//! # Reproducibility
//!
//! The generator is ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded through
//! `SeedableRng::seed_from_u64`. A uniform draw is the top 53 bits of
//! `next_u64()` scaled by `2^-53`. Every trial consumes exactly three draws,
//! in the order cause, gate, confusion, whether or not the later ones are
//! needed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::curve::{eps1_on_arc, geometry, GeometryKind, InterfacePoint};
use crate::epistemology::{solve, EpistemologyKind, InterfaceSolution};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::table::{CountTable, FrequencyTable, RowStochasticTable};
use crate::tolerance;

/// Name recorded alongside every simulation.
pub const GENERATOR: &str = "chacha20/seed_from_u64/u53";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerativeSpec<T = f64> {
    /// Frequency of `do(A = 1)`.
    pub row_weight: T,
    pub eps0: T,
    pub eps1: T,
    /// Chance that confusion yields `B = 1`.
    pub sigma1: T,
}

impl<T: Scalar> GenerativeSpec<T> {
    pub fn new(row_weight: T, eps0: T, eps1: T, sigma1: T) -> Result<Self> {
        let unit = |x: T| x >= T::zero() && x <= T::one();
        let check = |name: &str, x: T, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidValue(format!("{name} = {x} out of range")))
            }
        };
        check("row_weight", row_weight, row_weight > T::zero() && row_weight < T::one())?;
        check("eps0", eps0, unit(eps0))?;
        check("eps1", eps1, unit(eps1))?;
        check("sigma1", sigma1, unit(sigma1))?;
        Ok(Self {
            row_weight,
            eps0,
            eps1,
            sigma1,
        })
    }

    pub fn sigma0(&self) -> T {
        T::one() - self.sigma1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub counts: CountTable,
    pub seed: u64,
    pub samples: u64,
    pub generator: &'static str,
}

/// The table the forward model produces in expectation.
pub fn expected_table<T: Scalar>(spec: &GenerativeSpec<T>) -> FrequencyTable<T> {
    let (s0, s1) = (spec.sigma0(), spec.sigma1);
    let one = T::one();
    let w0 = one - spec.row_weight;
    let w1 = spec.row_weight;
    FrequencyTable::from_cells_unchecked([
        [w0 * (spec.eps0 + (one - spec.eps0) * s0), w0 * ((one - spec.eps0) * s1)],
        [w1 * ((one - spec.eps1) * s0), w1 * (spec.eps1 + (one - spec.eps1) * s1)],
    ])
}

fn uniform(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws `samples` trials from the forward model.
pub fn sample_counts<T: Scalar>(spec: &GenerativeSpec<T>, samples: u64, seed: u64) -> Result<SimulationResult> {
    if samples == 0 {
        return Err(Error::InvalidValue("samples must be positive".into()));
    }
    let w = spec.row_weight.to_f64_lossy();
    let eps = [spec.eps0.to_f64_lossy(), spec.eps1.to_f64_lossy()];
    let s1 = spec.sigma1.to_f64_lossy();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut counts = CountTable::default();
    for _ in 0..samples {
        let cause = uniform(&mut rng);
        let gate = uniform(&mut rng);
        let confusion = uniform(&mut rng);
        let a = usize::from(cause < w);
        let b = if gate < eps[a] { a } else { usize::from(confusion < s1) };
        counts.increment(a, b);
    }
    Ok(SimulationResult {
        counts,
        seed,
        samples,
        generator: GENERATOR,
    })
}

/// `expected_table`, then canonicalize, then solve with the spec's own `σ1`.
pub fn round_trip<T: Scalar>(spec: &GenerativeSpec<T>) -> Result<InterfaceSolution<T>> {
    let tol = T::tol(tolerance::ZERO);
    if spec.eps0 >= T::one() - tol && spec.eps1 >= T::one() - tol {
        return Err(Error::DegenerateInterface);
    }
    let (table, _) = expected_table(spec).canonicalize()?;
    solve(EpistemologyKind::Custom(spec.sigma1), &table)
}

/// Maximizes `ε0 + ε1(ε0)` over `[0, x0]` by golden-section search.
///
/// Objective values are compared through their factored difference
/// `f(a) − f(b) = (a − b)·(1 − r01·r10 / ((r00 − a)(r00 − b)))`, which stays
/// accurate where the objective is flat.
pub fn maxcause_numeric<T: Scalar>(r: &RowStochasticTable<T>) -> Result<InterfacePoint<T>> {
    let g = geometry(r)?;
    if g.kind != GeometryKind::RegularArc {
        return Err(Error::DegenerateGeometry(g.kind));
    }
    let r00 = r.get(0, 0);
    let c = r.get(0, 1) * r.get(1, 0);
    let better = |a: T, b: T| (a - b) * (T::one() - c / ((r00 - a) * (r00 - b))) > T::zero();

    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let tol = T::tol(tolerance::GOLDEN_SECTION);
    let (mut lo, mut hi) = (T::zero(), g.x_intercept);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    for _ in 0..500 {
        if hi - lo <= tol {
            break;
        }
        if better(x2, x1) {
            lo = x1;
            x1 = x2;
            x2 = lo + ratio * (hi - lo);
        } else {
            hi = x2;
            x2 = x1;
            x1 = hi - ratio * (hi - lo);
        }
    }
    let eps0 = (lo + hi) / T::lit(2.0);
    let eps1 = eps1_on_arc(r, &g, eps0)?;
    Ok(InterfacePoint { eps0, eps1 })
}

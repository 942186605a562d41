//! Decomposition of 2×2 cause/effect frequency tables into a pair of
//! interface coefficients `(ε0, ε1)` and an independent confusion
//! distribution.
//!
//! A table `P` (rows: the manipulated cause `A`, columns: the outcome `B`)
//! is written as
//!
//! ```text
//! P = diag(1 − ε0, 1 − ε1)·C + diag(ε0, ε1)·diag(p_0*, p_1*)
//! ```
//!
//! with `C` the outer product of its margins. The admissible `(ε0, ε1)` form
//! a hyperbola arc ([`curve`]); an epistemology ([`epistemology`]) picks one
//! point on it. The classical risk difference `ε̂` ([`measures`]) is the
//! symmetric choice `ε0 = ε1`.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*F64`/`*F32` aliases below name the common instantiations.
//!
//! ```
//! use causal_interface::{compare_all, FrequencyTable};
//!
//! let p = FrequencyTable::<f64>::new([[0.40, 0.10], [0.10, 0.40]]).unwrap();
//! let solutions = compare_all(&p).unwrap();
//! assert!((solutions[0].point.eps0 - 0.6).abs() < 1e-12);
//! ```

pub mod curve;
pub mod epistemology;
pub mod error;
pub mod generative;
pub mod measures;
pub mod scalar;
pub mod table;
pub mod tolerance;

pub use curve::{
    decompose, detzero_residual, eps1_of_eps0, geometry, on_curve, point_from_sigma, sample_curve,
    sigma_from_point, ConfusionDistribution, CurveGeometry, GeometryKind, InterfaceDecomposition,
    InterfacePoint,
};
pub use epistemology::{compare_all, solve, EpistemologyKind, InterfaceSolution, SolutionStatus};
pub use error::{Error, Result};
pub use generative::{
    expected_table, maxcause_numeric, round_trip, sample_counts, GenerativeSpec, SimulationResult,
};
pub use measures::{
    effect_index, measures, negative_effect_index, symmetric_confusion, EffectMeasures,
    SymmetricDecomposition,
};
pub use scalar::Scalar;
pub use table::{
    CanonicalizationRecord, CountTable, FrequencyTable, Margins, RowStochasticTable, ValidationReport,
};

pub type FrequencyTableF64 = FrequencyTable<f64>;
pub type FrequencyTableF32 = FrequencyTable<f32>;
pub type RowStochasticTableF64 = RowStochasticTable<f64>;
pub type RowStochasticTableF32 = RowStochasticTable<f32>;
pub type InterfacePointF64 = InterfacePoint<f64>;
pub type InterfacePointF32 = InterfacePoint<f32>;
pub type InterfaceSolutionF64 = InterfaceSolution<f64>;
pub type InterfaceSolutionF32 = InterfaceSolution<f32>;
pub type EffectMeasuresF64 = EffectMeasures<f64>;
pub type EffectMeasuresF32 = EffectMeasures<f32>;
pub type GenerativeSpecF64 = GenerativeSpec<f64>;
pub type GenerativeSpecF32 = GenerativeSpec<f32>;

//! Bat-sonar search for box-constrained continuous optimization.
//!
//! The engine is generic over the scalar type ([`Real`], implemented for `f32` and
//! `f64`); the `*64` aliases below fix it to `f64`.
//!
//! ```
//! use batsonar::{lookup, run_ssu, SonarParams64};
//!
//! let f1 = lookup::<f64>("f1").unwrap();
//! let result = run_ssu(&f1, f1.default_space(), &SonarParams64::ssu(), 42).unwrap();
//! assert!(f1.default_space().contains(&result.best_position));
//! ```

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod engine;
mod error;
pub mod ga;
pub mod metrics;
pub mod objectives;
pub mod rng;
mod scalar;
mod space;

pub use engine::{
    run_msu, run_ssm, run_ssu, AngleMode, BeamLengthPolicy, EpochResult, SonarParams, TrajectoryPoint,
    UnitResult, UnitState,
};
pub use error::{Error, Result};
pub use ga::{run_ga, GaParams};
pub use metrics::{summarize, SuiteSummary, DEFAULT_GOALS};
pub use objectives::{grid_oracle, lookup, Direction, KnownOptimum, ObjectiveSpec, Registry};
pub use scalar::Real;
pub use space::SearchSpace;

pub type SearchSpace64 = SearchSpace<f64>;
pub type SonarParams64 = SonarParams<f64>;
pub type GaParams64 = GaParams<f64>;
pub type ObjectiveSpec64 = ObjectiveSpec<f64>;
pub type EpochResult64 = EpochResult<f64>;
pub type SuiteSummary64 = SuiteSummary<f64>;
pub type AngleMode64 = AngleMode<f64>;

pub type SearchSpace32 = SearchSpace<f32>;
pub type SonarParams32 = SonarParams<f32>;
pub type ObjectiveSpec32 = ObjectiveSpec<f32>;
pub type EpochResult32 = EpochResult<f32>;

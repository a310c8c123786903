//! Multi-epoch suites. Epoch `e` always runs from `derive_seed(master, e)`, so the
//! schedule never changes the results, only the wall times.

use std::time::Instant;

use batsonar::rng::derive_seed;
use batsonar::{
    run_ga, run_msu, run_ssm, run_ssu, summarize, EpochResult64, ObjectiveSpec64, SuiteSummary64,
    TrajectoryPoint, UnitResult,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, SuiteConfig};
use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Parallel,
    Sequential,
}

/// One row of a suite report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub seed: u64,
    pub best_fitness: f64,
    pub best_point: Vec<f64>,
    pub iterations_to_best: usize,
    /// Measured locally; informational only.
    pub wall_ms: f64,
    #[serde(skip)]
    pub trajectory: Option<Vec<TrajectoryPoint<f64>>>,
}

impl EpochRecord {
    fn new(epoch: usize, seed: u64, result: EpochResult64, wall_ms: f64) -> Self {
        Self {
            epoch,
            seed,
            best_fitness: result.best_fitness,
            best_point: result.best_position,
            iterations_to_best: result.iterations_to_best,
            wall_ms,
            trajectory: result.trajectory,
        }
    }

    /// The record as a single-unit epoch result, enough for summarizing.
    pub fn to_epoch_result(&self) -> EpochResult64 {
        let unit = UnitResult {
            best_position: self.best_point.clone(),
            best_fitness: self.best_fitness,
            iterations_to_best: self.iterations_to_best,
        };
        EpochResult64 {
            best_position: self.best_point.clone(),
            best_fitness: self.best_fitness,
            iterations_to_best: self.iterations_to_best,
            per_unit_results: vec![unit],
            trajectory: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub summary: SuiteSummary64,
    pub records: Vec<EpochRecord>,
}

/// Runs one epoch of `config`'s algorithm from `seed`.
pub fn run_epoch(
    config: &SuiteConfig,
    objective: &ObjectiveSpec64,
    seed: u64,
) -> batsonar::Result<EpochResult64> {
    let space = objective.default_space();
    match config.algorithm {
        Algorithm::Ssu => run_ssu(objective, space, &config.sonar, seed),
        Algorithm::Msu => run_msu(objective, space, &config.sonar, seed),
        Algorithm::Ssm => run_ssm(objective, space, &config.sonar, seed),
        Algorithm::Ga => run_ga(objective, space, &config.ga, seed),
    }
}

/// Summary statistics recomputed from report rows.
pub fn summarize_records(
    records: &[EpochRecord],
    objective: &ObjectiveSpec64,
    goals: (f64, f64),
) -> batsonar::Result<SuiteSummary64> {
    let results: Vec<EpochResult64> = records.iter().map(EpochRecord::to_epoch_result).collect();
    summarize(&results, objective, goals)
}

/// [`run_suite_with`] on the parallel schedule.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport, BenchError> {
    run_suite_with(config, Schedule::Parallel)
}

/// Resolves and validates `config`, then runs every epoch. On failure the error of the
/// lowest failing epoch is returned whatever the schedule.
pub fn run_suite_with(config: &SuiteConfig, schedule: Schedule) -> Result<SuiteReport, BenchError> {
    let config = config.clone().resolved()?;
    let objective = config.objective()?;
    let one = |epoch: usize| -> batsonar::Result<EpochRecord> {
        let seed = derive_seed(config.seed, epoch as u64);
        let start = Instant::now();
        let result = run_epoch(&config, &objective, seed)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(EpochRecord::new(epoch, seed, result, wall_ms))
    };
    let outcomes: Vec<_> = match schedule {
        Schedule::Parallel => (0..config.epochs).into_par_iter().map(one).collect(),
        Schedule::Sequential => (0..config.epochs).map(one).collect(),
    };
    let records = outcomes.into_iter().collect::<batsonar::Result<Vec<_>>>()?;
    let summary = summarize_records(&records, &objective, config.goals)?;
    Ok(SuiteReport { config, summary, records })
}

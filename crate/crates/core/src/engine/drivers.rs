//! SSU, MSU and SSM drivers: one epoch each, fully determined by the seed.

use serde::{Deserialize, Serialize};

use super::params::SonarParams;
use super::unit::{apply_momentum, apply_outcome, transmit_signal, UnitState};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;
use crate::rng::{derive_seed, stream};
use crate::scalar::Real;
use crate::space::SearchSpace;

/// Best point one unit reached. `best_fitness` is in the objective's native direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct UnitResult<T> {
    pub best_position: Vec<T>,
    pub best_fitness: T,
    pub iterations_to_best: usize,
}

/// An accepted move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct TrajectoryPoint<T> {
    pub iteration: usize,
    pub unit: usize,
    pub position: Vec<T>,
    /// Native direction.
    pub fitness: T,
}

/// Outcome of one epoch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct EpochResult<T> {
    pub best_position: Vec<T>,
    /// Native direction.
    pub best_fitness: T,
    /// Signal index of the last improvement of the winning unit (0 if it never moved).
    pub iterations_to_best: usize,
    pub per_unit_results: Vec<UnitResult<T>>,
    /// Accepted moves ordered by unit, then iteration; `None` unless requested.
    pub trajectory: Option<Vec<TrajectoryPoint<T>>>,
}

impl<T: Real> EpochResult<T> {
    /// Collapses per-unit results; ties between units go to the lowest index.
    pub fn from_units(
        objective: &ObjectiveSpec<T>,
        units: Vec<UnitResult<T>>,
        trajectory: Option<Vec<TrajectoryPoint<T>>>,
    ) -> Self {
        let dir = objective.direction();
        let best = units.iter().enumerate().fold(0, |b, (k, u)| {
            if dir.is_better(u.best_fitness, units[b].best_fitness) {
                k
            } else {
                b
            }
        });
        let winner = &units[best];
        Self {
            best_position: winner.best_position.clone(),
            best_fitness: winner.best_fitness,
            iterations_to_best: winner.iterations_to_best,
            per_unit_results: units,
            trajectory,
        }
    }
}

/// Runs one unit for `max_iterations` signals from seed `seed`. With `momentum`,
/// the beam length is rescaled whenever `stagnation_window` consecutive signals fail.
pub(crate) fn run_unit<T: Real>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &SonarParams<T>,
    seed: u64,
    unit: usize,
    momentum: Option<T>,
    trajectory: &mut Option<Vec<TrajectoryPoint<T>>>,
) -> Result<UnitResult<T>> {
    let mut rng = stream(seed);
    let mut state =
        UnitState::init(objective, params, space, &mut rng).map_err(|e| e.at_iteration(0).in_unit(unit))?;
    for _ in 0..params.max_iterations {
        if let Some(mu) = momentum {
            if state.stagnation >= params.stagnation_window {
                state = apply_momentum(state, mu, space);
            }
        }
        let outcome = transmit_signal(&state, objective, params, space, &mut rng)
            .map_err(|e| e.at_iteration(state.iteration + 1).in_unit(unit))?;
        state = apply_outcome(state, &outcome);
        if let (Some(log), Some(_)) = (trajectory.as_mut(), outcome.best_index) {
            log.push(TrajectoryPoint {
                iteration: state.iteration,
                unit,
                position: state.position.clone(),
                fitness: objective.to_native(state.fitness),
            });
        }
    }
    Ok(UnitResult {
        best_position: state.position,
        best_fitness: objective.to_native(state.fitness),
        iterations_to_best: state.last_improvement_iteration,
    })
}

fn run_units<T: Real>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &SonarParams<T>,
    seed: u64,
    momentum: Option<T>,
) -> Result<EpochResult<T>> {
    params.validate(space)?;
    if space.dims() != objective.arity() {
        return Err(Error::InvalidParams(format!(
            "search space has {} dimensions, objective `{}` takes {}",
            space.dims(),
            objective.name(),
            objective.arity()
        )));
    }
    let mut trajectory = params.record_trajectory.then(Vec::new);
    let units = (0..params.unit_count)
        .map(|k| {
            run_unit(objective, space, params, derive_seed(seed, k as u64), k, momentum, &mut trajectory)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EpochResult::from_units(objective, units, trajectory))
}

/// Single sonar unit with a fixed beam length.
pub fn run_ssu<T: Real>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &SonarParams<T>,
    seed: u64,
) -> Result<EpochResult<T>> {
    if params.unit_count != 1 {
        return Err(Error::InvalidParams(format!(
            "single-unit search needs unit_count = 1, got {}",
            params.unit_count
        )));
    }
    if params.momentum.is_some() {
        return Err(Error::InvalidParams("single-unit search takes no momentum".into()));
    }
    run_units(objective, space, params, seed, None)
}

/// `unit_count` independent sonar units; unit `k` runs from `derive_seed(seed, k)`.
/// With one unit this is exactly [`run_ssu`].
pub fn run_msu<T: Real>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &SonarParams<T>,
    seed: u64,
) -> Result<EpochResult<T>> {
    if params.momentum.is_some() {
        return Err(Error::InvalidParams("multi-unit search takes no momentum".into()));
    }
    run_units(objective, space, params, seed, None)
}

/// Single sonar unit whose beam length is rescaled by `1 ± μ` (alternating, starting
/// with `+`) each time `stagnation_window` consecutive signals fail to improve.
/// The momentum steps share the `max_iterations` signal budget.
pub fn run_ssm<T: Real>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &SonarParams<T>,
    seed: u64,
) -> Result<EpochResult<T>> {
    let Some(mu) = params.momentum else {
        return Err(Error::InvalidParams("momentum search needs a momentum value".into()));
    };
    if params.unit_count != 1 {
        return Err(Error::InvalidParams(format!(
            "momentum search needs unit_count = 1, got {}",
            params.unit_count
        )));
    }
    run_units(objective, space, params, seed, Some(mu))
}

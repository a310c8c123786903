//! Suite statistics over many epochs: efficiency, goal performance, and the aggregate
//! residual distance.

use serde::{Deserialize, Serialize};

use crate::engine::EpochResult;
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;
use crate::scalar::Real;

/// Default goal fractions `(ρ₁, ρ₂)`.
pub const DEFAULT_GOALS: (f64, f64) = (0.975, 0.96);

/// Aggregate statistics of a suite. Percentages are in `[0, 100]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SuiteSummary<T> {
    pub epochs: usize,
    /// Best epoch value under the objective's direction.
    pub max_obtained: T,
    /// Distinct epoch best points attaining `max_obtained`.
    pub max_argpoints: Vec<Vec<T>>,
    pub avg_obtained: T,
    pub avg_iterations: T,
    pub efficiency: T,
    pub performance_1: T,
    pub performance_2: T,
    pub euclidean: T,
}

/// `avg_obtained / f_opt · 100`.
pub fn efficiency<T: Real>(avg_obtained: T, f_opt: T) -> Result<T> {
    if f_opt == T::zero() {
        return Err(Error::ZeroOptimum);
    }
    Ok(avg_obtained / f_opt * T::of(100.0))
}

/// Share (percent) of `results` within `(1 − goal_fraction)·|f_opt|` of `f_opt`.
/// For a positive maximum this is the share with `F ≥ goal_fraction · f_opt`.
pub fn performance<T: Real>(results: &[T], f_opt: T, goal_fraction: T) -> Result<T> {
    if !(goal_fraction > T::zero() && goal_fraction < T::one()) {
        return Err(Error::InvalidParams(format!("goal fraction {goal_fraction} must lie in (0, 1)")));
    }
    if f_opt == T::zero() {
        return Err(Error::ZeroOptimum);
    }
    performance_within(results, f_opt, (T::one() - goal_fraction) * f_opt.abs())
}

/// Share (percent) of `results` with `|f_opt − F| ≤ gap`. Usable when `f_opt` is zero.
pub fn performance_within<T: Real>(results: &[T], f_opt: T, gap: T) -> Result<T> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let hits = results.iter().filter(|&&f| (f_opt - f).abs() <= gap).count();
    Ok(T::of(hits as f64) / T::of(results.len() as f64) * T::of(100.0))
}

/// `(1/M)·sqrt(Σ (f_opt − F_i)²)`. The `1/M` sits outside the root.
pub fn euclidean_distance<T: Real>(results: &[T], f_opt: T) -> Result<T> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let ss = results.iter().fold(T::zero(), |acc, &f| acc + (f_opt - f) * (f_opt - f));
    Ok(ss.sqrt() / T::of(results.len() as f64))
}

fn mean<T: Real>(values: impl ExactSizeIterator<Item = T>) -> T {
    let n = T::of(values.len() as f64);
    values.fold(T::zero(), |a, v| a + v) / n
}

/// Fills every [`SuiteSummary`] field from per-epoch bests.
pub fn summarize<T: Real>(
    results: &[EpochResult<T>],
    spec: &ObjectiveSpec<T>,
    goals: (T, T),
) -> Result<SuiteSummary<T>> {
    let opt = spec.known_optimum().ok_or_else(|| Error::MissingOptimum(spec.name().to_owned()))?;
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let f_opt = opt.value;
    let dir = spec.direction();
    let values: Vec<T> = results.iter().map(|r| r.best_fitness).collect();

    let max_obtained = values.iter().copied().fold(values[0], |b, v| if dir.is_better(v, b) { v } else { b });
    let mut max_argpoints: Vec<Vec<T>> = Vec::new();
    for r in results.iter().filter(|r| r.best_fitness == max_obtained) {
        if !max_argpoints.contains(&r.best_position) {
            max_argpoints.push(r.best_position.clone());
        }
    }

    let avg_obtained = mean(values.iter().copied());
    Ok(SuiteSummary {
        epochs: results.len(),
        max_obtained,
        max_argpoints,
        avg_obtained,
        avg_iterations: mean(results.iter().map(|r| T::of(r.iterations_to_best as f64))),
        efficiency: efficiency(avg_obtained, f_opt)?,
        performance_1: performance(&values, f_opt, goals.0)?,
        performance_2: performance(&values, f_opt, goals.1)?,
        euclidean: euclidean_distance(&values, f_opt)?,
    })
}

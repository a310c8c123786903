//! Minimal real-coded genetic algorithm used as a comparison baseline.
//!
//! Tournament selection, blend crossover (BLX-0.5), per-gene Gaussian mutation and
//! elitist replacement, all clamped to the search box.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{EpochResult, TrajectoryPoint, UnitResult};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;
use crate::rng::stream;
use crate::scalar::Real;
use crate::space::SearchSpace;

/// BLX-α extension on each side of the parents' interval.
const BLEND_ALPHA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", default)]
pub struct GaParams<T> {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: T,
    /// Per-gene mutation probability.
    pub mutation_rate: T,
    /// Mutation standard deviation as a fraction of each dimension's range.
    pub mutation_sigma_fraction: T,
    pub tournament_size: usize,
    /// Best individuals copied unchanged into the next generation.
    pub elitism: usize,
    pub record_trajectory: bool,
}

impl<T: Real> Default for GaParams<T> {
    fn default() -> Self {
        Self {
            population_size: 20,
            max_generations: 100,
            crossover_rate: T::of(0.8),
            mutation_rate: T::of(0.05),
            mutation_sigma_fraction: T::of(0.1),
            tournament_size: 2,
            elitism: 1,
            record_trajectory: false,
        }
    }
}

impl<T: Real> GaParams<T> {
    /// Enables recording of best-ever improvements.
    pub fn with_trajectory(mut self) -> Self {
        self.record_trajectory = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if self.population_size < 2 {
            return bad(format!("population_size must be at least 2, got {}", self.population_size));
        }
        if self.elitism >= self.population_size {
            return bad(format!(
                "elitism ({}) must be smaller than population_size ({})",
                self.elitism, self.population_size
            ));
        }
        if self.max_generations == 0 {
            return bad("max_generations must be at least 1".into());
        }
        if self.tournament_size == 0 {
            return bad("tournament_size must be at least 1".into());
        }
        if !unit(self.crossover_rate) || !unit(self.mutation_rate) {
            return bad("crossover_rate and mutation_rate must lie in [0, 1]".into());
        }
        if !(self.mutation_sigma_fraction >= T::zero()) || !self.mutation_sigma_fraction.is_finite() {
            return bad("mutation_sigma_fraction must be finite and non-negative".into());
        }
        Ok(())
    }
}

struct Individual<T> {
    genes: Vec<T>,
    fitness: T,
}

/// One GA run from a uniformly random initial population.
pub fn run_ga<T: Real>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &GaParams<T>,
    seed: u64,
) -> Result<EpochResult<T>> {
    let mut rng = stream(seed);
    let initial = (0..params.population_size).map(|_| space.sample(&mut rng)).collect();
    evolve(objective, space, params, initial, &mut rng)
}

/// One GA run from a caller-supplied initial population (its size overrides
/// `population_size`).
pub fn run_ga_from<T: Real>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &GaParams<T>,
    initial: Vec<Vec<T>>,
    seed: u64,
) -> Result<EpochResult<T>> {
    let params = GaParams { population_size: initial.len(), ..params.clone() };
    if initial.iter().any(|g| !space.contains(g)) {
        return Err(Error::InvalidParams("initial population must lie inside the search space".into()));
    }
    evolve(objective, space, &params, initial, &mut stream(seed))
}

fn evolve<T: Real, R: Rng>(
    objective: &ObjectiveSpec<T>,
    space: &SearchSpace<T>,
    params: &GaParams<T>,
    initial: Vec<Vec<T>>,
    rng: &mut R,
) -> Result<EpochResult<T>> {
    params.validate()?;
    if space.dims() != objective.arity() {
        return Err(Error::InvalidParams(format!(
            "search space has {} dimensions, objective `{}` takes {}",
            space.dims(),
            objective.name(),
            objective.arity()
        )));
    }
    let eval = |genes: Vec<T>, generation: usize| -> Result<Individual<T>> {
        let fitness = objective.fitness(&genes).map_err(|e| e.at_iteration(generation))?;
        Ok(Individual { genes, fitness })
    };
    let mut population = initial.into_iter().map(|g| eval(g, 0)).collect::<Result<Vec<_>>>()?;

    let mut trajectory = params.record_trajectory.then(Vec::new);
    let mut best = best_of(&population);
    let mut best_genes = population[best].genes.clone();
    let mut best_fitness = population[best].fitness;
    let mut best_generation = 0;

    let n = population.len();
    let sigmas: Vec<T> = (0..space.dims()).map(|d| params.mutation_sigma_fraction * space.range(d)).collect();

    for generation in 1..=params.max_generations {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| population[b].fitness.partial_cmp(&population[a].fitness).unwrap());
        let mut next: Vec<Individual<T>> = order[..params.elitism]
            .iter()
            .map(|&i| Individual { genes: population[i].genes.clone(), fitness: population[i].fitness })
            .collect();

        while next.len() < n {
            let a = tournament(&population, params.tournament_size, rng);
            let b = tournament(&population, params.tournament_size, rng);
            let (mut c1, mut c2) = if T::sample_unit(rng) < params.crossover_rate {
                (
                    blend(&population[a].genes, &population[b].genes, space, rng),
                    blend(&population[a].genes, &population[b].genes, space, rng),
                )
            } else {
                (population[a].genes.clone(), population[b].genes.clone())
            };
            for child in [&mut c1, &mut c2] {
                mutate(child, &sigmas, params.mutation_rate, space, rng);
            }
            next.push(eval(c1, generation)?);
            if next.len() < n {
                next.push(eval(c2, generation)?);
            }
        }
        population = next;

        best = best_of(&population);
        if population[best].fitness > best_fitness {
            best_fitness = population[best].fitness;
            best_genes.clone_from(&population[best].genes);
            best_generation = generation;
            if let Some(log) = trajectory.as_mut() {
                log.push(TrajectoryPoint {
                    iteration: generation,
                    unit: 0,
                    position: best_genes.clone(),
                    fitness: objective.to_native(best_fitness),
                });
            }
        }
    }

    let unit = UnitResult {
        best_position: best_genes,
        best_fitness: objective.to_native(best_fitness),
        iterations_to_best: best_generation,
    };
    Ok(EpochResult::from_units(objective, vec![unit], trajectory))
}

fn best_of<T: Real>(population: &[Individual<T>]) -> usize {
    (1..population.len()).fold(0, |b, i| if population[i].fitness > population[b].fitness { i } else { b })
}

fn tournament<T: Real, R: Rng>(population: &[Individual<T>], size: usize, rng: &mut R) -> usize {
    let mut winner = rng.random_range(0..population.len());
    for _ in 1..size {
        let c = rng.random_range(0..population.len());
        if population[c].fitness > population[winner].fitness {
            winner = c;
        }
    }
    winner
}

fn blend<T: Real, R: Rng>(a: &[T], b: &[T], space: &SearchSpace<T>, rng: &mut R) -> Vec<T> {
    let alpha = T::of(BLEND_ALPHA);
    let mut child: Vec<T> = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| {
            let (lo, hi) = (x.min(y), x.max(y));
            let d = hi - lo;
            let lo = lo - alpha * d;
            lo + (d + T::of(2.0) * alpha * d) * T::sample_unit(rng)
        })
        .collect();
    space.clamp(&mut child);
    child
}

fn mutate<T: Real, R: Rng>(genes: &mut [T], sigmas: &[T], rate: T, space: &SearchSpace<T>, rng: &mut R) {
    for (g, &s) in genes.iter_mut().zip(sigmas) {
        if T::sample_unit(rng) < rate {
            *g = *g + s * T::sample_standard_normal(rng);
        }
    }
    space.clamp(genes);
}

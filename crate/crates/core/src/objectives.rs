//! Objective functions: the five built-in benchmarks, a name registry, and a
//! brute-force grid oracle used to confirm known optima.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::space::SearchSpace;

/// Value tolerance attached to every built-in known optimum.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    /// Maps a native objective value onto the engine's maximization scale.
    /// The mapping is its own inverse.
    #[inline]
    pub fn normalize<T: Real>(self, value: T) -> T {
        match self {
            Direction::Maximize => value,
            Direction::Minimize => -value,
        }
    }

    /// `true` if `a` is strictly better than `b` in this direction.
    #[inline]
    pub fn is_better<T: Real>(self, a: T, b: T) -> bool {
        self.normalize(a) > self.normalize(b)
    }
}

/// Best value of an objective over its default space, with the points attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct KnownOptimum<T> {
    pub value: T,
    pub points: Vec<Vec<T>>,
    pub tolerance: T,
}

pub type Evaluator<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// A named objective over a box.
#[derive(Clone)]
pub struct ObjectiveSpec<T> {
    name: String,
    direction: Direction,
    evaluator: Evaluator<T>,
    default_space: SearchSpace<T>,
    known_optimum: Option<KnownOptimum<T>>,
}

impl<T: Real> ObjectiveSpec<T> {
    /// The arity is taken from `default_space`.
    pub fn new<F>(
        name: impl Into<String>,
        direction: Direction,
        default_space: SearchSpace<T>,
        evaluator: F,
    ) -> Self
    where
        F: Fn(&[T]) -> T + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            direction,
            evaluator: Arc::new(evaluator),
            default_space,
            known_optimum: None,
        }
    }

    pub fn with_known_optimum(mut self, optimum: KnownOptimum<T>) -> Result<Self> {
        for p in &optimum.points {
            if !self.default_space.contains(p) {
                return Err(Error::InvalidParams(format!(
                    "known optimum point {p:?} of `{}` lies outside its default space",
                    self.name
                )));
            }
            let v = self.evaluate(p);
            if !((v - optimum.value).abs() <= optimum.tolerance) {
                return Err(Error::InvalidParams(format!(
                    "`{}` evaluates to {v} at {p:?}, not within {} of {}",
                    self.name, optimum.tolerance, optimum.value
                )));
            }
        }
        self.known_optimum = Some(optimum);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.default_space.dims()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn default_space(&self) -> &SearchSpace<T> {
        &self.default_space
    }

    pub fn known_optimum(&self) -> Option<&KnownOptimum<T>> {
        self.known_optimum.as_ref()
    }

    /// Native-direction value at `point`.
    #[inline]
    pub fn evaluate(&self, point: &[T]) -> T {
        (self.evaluator)(point)
    }

    /// Maximization-normalized value at `point`; fails on NaN or infinities.
    pub fn fitness(&self, point: &[T]) -> Result<T> {
        let v = self.evaluate(point);
        if v.is_finite() {
            Ok(self.direction.normalize(v))
        } else {
            Err(Error::Evaluation {
                point: point.iter().map(|x| x.as_f64()).collect(),
                value: v.as_f64(),
                iteration: None,
                unit: None,
            })
        }
    }

    /// Restores a normalized fitness to the native direction.
    #[inline]
    pub fn to_native(&self, fitness: T) -> T {
        self.direction.normalize(fitness)
    }
}

impl<T: Real> fmt::Debug for ObjectiveSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("arity", &self.arity())
            .field("direction", &self.direction)
            .field("default_space", &self.default_space)
            .field("known_optimum", &self.known_optimum)
            .finish_non_exhaustive()
    }
}

/// Cubic `x³ − 5x² − 20x`.
pub fn eval_f1<T: Real>(x: T) -> T {
    x * x * x - T::of(5.0) * x * x - T::of(20.0) * x
}

/// Quintic `x⁵ − 10x⁴ − 5.2x³ − 12x² + 5.5x`.
pub fn eval_f2<T: Real>(x: T) -> T {
    let x2 = x * x;
    let x3 = x2 * x;
    x3 * x2 - T::of(10.0) * x2 * x2 - T::of(5.2) * x3 - T::of(12.0) * x2 + T::of(5.5) * x
}

/// Separable two-variable polynomial `x³ − 5x² − 2.04y² + 4y`.
pub fn eval_f3<T: Real>(x: T, y: T) -> T {
    x * x * x - T::of(5.0) * x * x - T::of(2.04) * y * y + T::of(4.0) * y
}

/// `x·exp(−x² − y²)`.
pub fn eval_f4<T: Real>(x: T, y: T) -> T {
    x * (-x * x - y * y).exp()
}

/// `sin(2x) − cos(x)`; two global maxima per `[−2π, 2π]`.
pub fn eval_f5<T: Real>(x: T) -> T {
    (T::of(2.0) * x).sin() - x.cos()
}

fn builtin<T: Real>(
    name: &str,
    bounds: Vec<(f64, f64)>,
    f: fn(&[T]) -> T,
    value: f64,
    points: &[&[f64]],
) -> ObjectiveSpec<T> {
    let space = SearchSpace::new(bounds.into_iter().map(|(a, b)| (T::of(a), T::of(b))).collect())
        .expect("built-in bounds are valid");
    ObjectiveSpec::new(name, Direction::Maximize, space, f)
        .with_known_optimum(KnownOptimum {
            value: T::of(value),
            points: points.iter().map(|p| p.iter().map(|&c| T::of(c)).collect()).collect(),
            tolerance: T::of(DEFAULT_TOLERANCE),
        })
        .expect("built-in optimum is consistent")
}

// Stationary points solved to full precision (closed form where one exists).
const F1_ARGMAX: f64 = -1.406_514_819_097_629;
const F1_MAX: f64 = 15.456_391_027_399_661;
const F2_ARGMAX: f64 = 0.193_183_112_634_293_3;
const F2_MAX: f64 = 0.563_522_384_771_540_9;
const F3_ARGMAX_Y: f64 = 4.0 / 4.08;
const F3_MAX: f64 = 16.0 / 8.16;
const F4_ARGMAX_X: f64 = std::f64::consts::FRAC_1_SQRT_2;
const F4_MAX: f64 = 0.428_881_942_480_353_4;
const F5_ARGMAX: [f64; 2] = [-2.506_725_782_456_223, 3.776_459_524_723_364];
const F5_MAX: f64 = 1.760_172_593_046_087;

/// Name → objective lookup. Built with the five benchmarks; callers may add their own
/// before sharing it.
#[derive(Clone)]
pub struct Registry<T> {
    specs: BTreeMap<String, ObjectiveSpec<T>>,
}

impl<T: Real> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.specs.values()).finish()
    }
}

impl<T: Real> Registry<T> {
    pub fn empty() -> Self {
        Self { specs: BTreeMap::new() }
    }

    /// Registry holding `f1` … `f5`.
    pub fn builtins() -> Self {
        let six = 6.0;
        let two_pi = std::f64::consts::TAU;
        let mut r = Self::empty();
        r.register(builtin("f1", vec![(-six, six)], |p| eval_f1(p[0]), F1_MAX, &[&[F1_ARGMAX]]));
        r.register(builtin("f2", vec![(-six, six)], |p| eval_f2(p[0]), F2_MAX, &[&[F2_ARGMAX]]));
        r.register(builtin(
            "f3",
            vec![(-3.0, 3.0), (-3.0, 3.0)],
            |p| eval_f3(p[0], p[1]),
            F3_MAX,
            &[&[0.0, F3_ARGMAX_Y]],
        ));
        r.register(builtin(
            "f4",
            vec![(-2.0, 2.0), (-2.0, 2.0)],
            |p| eval_f4(p[0], p[1]),
            F4_MAX,
            &[&[F4_ARGMAX_X, 0.0]],
        ));
        r.register(builtin(
            "f5",
            vec![(-two_pi, two_pi)],
            |p| eval_f5(p[0]),
            F5_MAX,
            &[&[F5_ARGMAX[0]], &[F5_ARGMAX[1]]],
        ));
        r
    }

    /// Adds `spec`, replacing any objective of the same name.
    pub fn register(&mut self, spec: ObjectiveSpec<T>) {
        self.specs.insert(spec.name.clone(), spec);
    }

    pub fn lookup(&self, name: &str) -> Result<ObjectiveSpec<T>> {
        self.specs
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownObjective { name: name.to_owned(), available: self.names() })
    }

    pub fn names(&self) -> Vec<String> {
        self.specs.keys().cloned().collect()
    }
}

impl<T: Real> Default for Registry<T> {
    fn default() -> Self {
        Self::builtins()
    }
}

/// Looks up a built-in benchmark by name.
pub fn lookup<T: Real>(name: &str) -> Result<ObjectiveSpec<T>> {
    Registry::builtins().lookup(name)
}

/// Best value found on a uniform grid together with every grid point within tolerance of it.
#[derive(Debug, Clone, PartialEq)]
pub struct GridOptimum<T> {
    pub value: T,
    pub points: Vec<Vec<T>>,
}

/// Exhaustive search of `spec`'s default space on a grid with spacing close to
/// `resolution` (each axis is split into `round(range / resolution)` equal steps, both
/// ends included). Points whose value lies within the objective's known-optimum
/// tolerance (or [`DEFAULT_TOLERANCE`]) of the best are returned in grid order.
pub fn grid_oracle<T: Real>(spec: &ObjectiveSpec<T>, resolution: T) -> Result<GridOptimum<T>> {
    if !(resolution > T::zero()) || !resolution.is_finite() {
        return Err(Error::InvalidParams(format!("grid resolution must be positive, got {resolution}")));
    }
    let arity = spec.arity();
    if arity == 0 || arity > 2 {
        return Err(Error::UnsupportedArity(arity));
    }
    let tol = spec.known_optimum().map(|k| k.tolerance).unwrap_or_else(|| T::of(DEFAULT_TOLERANCE));

    let axes: Vec<Vec<T>> = spec
        .default_space()
        .bounds()
        .iter()
        .map(|&(lo, hi)| {
            let steps = ((hi - lo) / resolution).round().to_usize().unwrap_or(1).max(1);
            let n = T::of(steps as f64);
            (0..=steps).map(|i| if i == steps { hi } else { lo + (hi - lo) * T::of(i as f64) / n }).collect()
        })
        .collect();

    let mut best = T::neg_infinity();
    let mut keep: Vec<(T, Vec<T>)> = Vec::new();
    let mut point = vec![T::zero(); arity];
    let mut visit = |point: &[T]| -> Result<()> {
        let f = spec.fitness(point)?;
        if f > best {
            best = f;
            keep.retain(|(g, _)| best - *g <= tol);
        }
        if best - f <= tol {
            keep.push((f, point.to_vec()));
        }
        Ok(())
    };
    if arity == 1 {
        for &x in &axes[0] {
            point[0] = x;
            visit(&point)?;
        }
    } else {
        for &x in &axes[0] {
            point[0] = x;
            for &y in &axes[1] {
                point[1] = y;
                visit(&point)?;
            }
        }
    }
    keep.retain(|(g, _)| best - *g <= tol);
    Ok(GridOptimum { value: spec.to_native(best), points: keep.into_iter().map(|(_, p)| p).collect() })
}

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Axis-aligned feasible box: one closed `[min, max]` interval per decision variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", try_from = "Vec<(T, T)>", into = "Vec<(T, T)>")]
pub struct SearchSpace<T> {
    bounds: Vec<(T, T)>,
}

impl<T: Real> SearchSpace<T> {
    pub fn new(bounds: Vec<(T, T)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidSpace("at least one dimension is required".into()));
        }
        for (d, &(lo, hi)) in bounds.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
                return Err(Error::InvalidSpace(format!(
                    "dimension {d}: bounds [{lo}, {hi}] must be finite with min < max"
                )));
            }
        }
        Ok(Self { bounds })
    }

    /// The same interval repeated over `dims` dimensions.
    pub fn cube(dims: usize, min: T, max: T) -> Result<Self> {
        Self::new(vec![(min, max); dims])
    }

    pub fn dims(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(T, T)] {
        &self.bounds
    }

    pub fn range(&self, d: usize) -> T {
        let (lo, hi) = self.bounds[d];
        hi - lo
    }

    /// Smallest per-dimension range.
    pub fn min_range(&self) -> T {
        (0..self.dims()).map(|d| self.range(d)).fold(T::infinity(), T::min)
    }

    /// Upper limit on beam length: half the smallest range.
    pub fn max_beam_length(&self) -> T {
        self.min_range() / T::of(2.0)
    }

    pub fn contains(&self, point: &[T]) -> bool {
        point.len() == self.dims() && point.iter().zip(&self.bounds).all(|(&x, &(lo, hi))| lo <= x && x <= hi)
    }

    /// Projects `point` onto the box component-wise.
    pub fn clamp(&self, point: &mut [T]) {
        for (x, &(lo, hi)) in point.iter_mut().zip(&self.bounds) {
            *x = x.max(lo).min(hi);
        }
    }

    /// Uniform point in the box; draws exactly `dims` values.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<T> {
        self.bounds.iter().map(|&(lo, hi)| (lo + T::sample_unit(rng) * (hi - lo)).min(hi)).collect()
    }
}

impl<T: Real> TryFrom<Vec<(T, T)>> for SearchSpace<T> {
    type Error = Error;

    fn try_from(bounds: Vec<(T, T)>) -> Result<Self> {
        Self::new(bounds)
    }
}

impl<T> From<SearchSpace<T>> for Vec<(T, T)> {
    fn from(space: SearchSpace<T>) -> Self {
        space.bounds
    }
}

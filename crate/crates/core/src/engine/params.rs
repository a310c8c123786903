use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::space::SearchSpace;

/// How the angle between successive beams of a signal is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", rename_all = "lowercase", tag = "mode")]
pub enum AngleMode<T> {
    /// Same gap between every pair of successive beams.
    Fixed { theta: T },
    /// Every gap drawn afresh from `U(theta_min, theta_max)` on each signal.
    Rand { theta_min: T, theta_max: T },
}

impl<T: Real> AngleMode<T> {
    /// `Fixed(π/12)`.
    pub fn fixed_default() -> Self {
        AngleMode::Fixed { theta: T::PI / T::of(12.0) }
    }

    /// `Rand(π/36, π/6)`, bracketing the fixed default.
    pub fn rand_default() -> Self {
        AngleMode::Rand { theta_min: T::PI / T::of(36.0), theta_max: T::PI / T::of(6.0) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", rename_all = "lowercase", tag = "policy")]
pub enum BeamLengthPolicy<T> {
    /// `L = u · min_range / 2` with `u ~ U(0.02, 1]`, drawn once per unit.
    Sampled,
    Explicit {
        length: T,
    },
}

/// Settings shared by the SSU, MSU and SSM drivers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", default)]
pub struct SonarParams<T> {
    pub n_beams: usize,
    pub angle_mode: AngleMode<T>,
    pub beam_length: BeamLengthPolicy<T>,
    /// Signals transmitted per unit.
    pub max_iterations: usize,
    /// `μ` in `L ← L(1 ± μ)`; only the momentum driver uses it.
    pub momentum: Option<T>,
    /// Consecutive non-improving signals that trigger a momentum step.
    pub stagnation_window: usize,
    pub unit_count: usize,
    /// Record every accepted move into `EpochResult::trajectory`.
    pub record_trajectory: bool,
}

impl<T: Real> Default for SonarParams<T> {
    fn default() -> Self {
        Self {
            n_beams: 5,
            angle_mode: AngleMode::fixed_default(),
            beam_length: BeamLengthPolicy::Sampled,
            max_iterations: 100,
            momentum: None,
            stagnation_window: 10,
            unit_count: 1,
            record_trajectory: false,
        }
    }
}

impl<T: Real> SonarParams<T> {
    /// Single sonar unit with the benchmark defaults.
    pub fn ssu() -> Self {
        Self::default()
    }

    /// `units` independent sonar units.
    pub fn msu(units: usize) -> Self {
        Self { unit_count: units, ..Self::default() }
    }

    /// Single sonar unit with momentum `mu`.
    pub fn ssm(mu: T) -> Self {
        Self { momentum: Some(mu), ..Self::default() }
    }

    pub fn with_angle_mode(mut self, mode: AngleMode<T>) -> Self {
        self.angle_mode = mode;
        self
    }

    pub fn with_beams(mut self, n: usize) -> Self {
        self.n_beams = n;
        self
    }

    pub fn with_max_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn with_beam_length(mut self, policy: BeamLengthPolicy<T>) -> Self {
        self.beam_length = policy;
        self
    }

    pub fn with_stagnation_window(mut self, w: usize) -> Self {
        self.stagnation_window = w;
        self
    }

    pub fn with_trajectory(mut self, on: bool) -> Self {
        self.record_trajectory = on;
        self
    }

    /// Checks every field against `space`.
    pub fn validate(&self, space: &SearchSpace<T>) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.n_beams == 0 {
            return bad("n_beams must be at least 1".into());
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        if self.stagnation_window == 0 {
            return bad("stagnation_window must be at least 1".into());
        }
        if self.unit_count == 0 {
            return bad("unit_count must be at least 1".into());
        }
        match self.angle_mode {
            AngleMode::Fixed { theta } => {
                if !(theta > T::zero() && theta < T::PI) {
                    return bad(format!("fixed angle {theta} must lie in (0, π)"));
                }
            }
            AngleMode::Rand { theta_min, theta_max } => {
                if !(T::zero() < theta_min && theta_min < theta_max && theta_max <= T::PI) {
                    return bad(format!(
                        "random angle range ({theta_min}, {theta_max}) must satisfy 0 < min < max ≤ π"
                    ));
                }
            }
        }
        if let BeamLengthPolicy::Explicit { length } = self.beam_length {
            let cap = space.max_beam_length();
            if !(length > T::zero() && length <= cap) {
                return bad(format!("beam length {length} must lie in (0, {cap}]"));
            }
        }
        if let Some(mu) = self.momentum {
            if !(mu > T::zero() && mu < T::one()) {
                return bad(format!("momentum {mu} must lie in (0, 1)"));
            }
        }
        Ok(())
    }
}

//! Bat-sonar search.
//!
//! A sonar unit sits at a point of the search box with a fixed beam length. Each
//! iteration it transmits a signal: a fan of beams in a random main direction. If the
//! best beam endpoint is strictly fitter than the current point, the unit flies there;
//! otherwise it stays and tries another direction. The engine always maximizes;
//! minimization objectives are negated on the way in and restored on the way out.
//!
//! * [`run_ssu`]: one unit.
//! * [`run_msu`]: several independent units, best one reported.
//! * [`run_ssm`]: one unit whose beam length is rescaled when it stalls.

mod beam;
mod drivers;
mod params;
mod unit;

pub use beam::{beam_angles, beam_endpoints, fan_points, sample_beam_length, FanBasis};
pub use drivers::{run_msu, run_ssm, run_ssu, EpochResult, TrajectoryPoint, UnitResult};
pub use params::{AngleMode, BeamLengthPolicy, SonarParams};
pub use unit::{apply_momentum, apply_outcome, transmit_signal, MomentumSign, SignalOutcome, UnitState};

//! Scalar abstraction shared by every optimizer in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumCast};
use rand::distr::uniform::SampleUniform;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the engine can run on: `f32` or `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + NumCast
    + SampleUniform
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    const PI: Self;
    const TWO_PI: Self;

    /// Converts an `f64` literal. Every finite `f64` is representable (possibly rounded).
    #[inline]
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite literal")
    }

    /// Widens to `f64` for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Uniform draw from `[0, 1)`.
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Standard normal draw.
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

macro_rules! impl_real {
    ($t:ident) => {
        impl Real for $t {
            const PI: Self = std::$t::consts::PI;
            const TWO_PI: Self = std::$t::consts::TAU;

            #[inline]
            fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.random::<$t>()
            }

            #[inline]
            fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.sample::<$t, _>(StandardNormal)
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

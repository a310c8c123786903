//! Beam-fan geometry.
//!
//! A signal is a fan of `N` beams of length `L` cast from the unit's position. Beam `i`
//! (zero-based) leaves at angle `θ_m + Σ_{j<i} θ_j`, so the fan opens on one side of
//! the main direction. In two dimensions the endpoint is
//! `(x + L cos α, y + L sin α)`; in one dimension only the cosine component is used;
//! above two dimensions the fan is laid in a random plane through the position.

use rand::Rng;

use super::params::{AngleMode, SonarParams};
use crate::scalar::Real;
use crate::space::SearchSpace;

/// Floor of the sampled beam-length fraction.
const MIN_LENGTH_FRACTION: f64 = 0.02;

/// Draws a unit's beam length `u · min_range / 2`, `u ~ U(0.02, 1]`. Consumes one value.
pub fn sample_beam_length<T: Real, R: Rng + ?Sized>(space: &SearchSpace<T>, rng: &mut R) -> T {
    let u = T::one() - T::of(1.0 - MIN_LENGTH_FRACTION) * T::sample_unit(rng);
    u * space.max_beam_length()
}

/// Orientation of the plane a fan is drawn in.
#[derive(Debug, Clone, PartialEq)]
pub enum FanBasis<T> {
    /// One decision variable: offsets are `L cos α`.
    Line,
    /// Two decision variables: the coordinate plane itself.
    Plane,
    /// Orthonormal pair `(u, v)` spanning a plane in more than two dimensions.
    Embedded { u: Vec<T>, v: Vec<T> },
}

impl<T: Real> FanBasis<T> {
    /// Basis for `space`; draws a fresh random plane when `dims > 2`, nothing otherwise.
    pub fn draw<R: Rng + ?Sized>(space: &SearchSpace<T>, rng: &mut R) -> Self {
        match space.dims() {
            1 => FanBasis::Line,
            2 => FanBasis::Plane,
            d => {
                let (u, v) = random_plane(d, rng);
                FanBasis::Embedded { u, v }
            }
        }
    }

    fn offset(&self, alpha: T, length: T, out: &mut [T]) {
        let (s, c) = alpha.sin_cos();
        match self {
            FanBasis::Line => out[0] = length * c,
            FanBasis::Plane => {
                out[0] = length * c;
                out[1] = length * s;
            }
            FanBasis::Embedded { u, v } => {
                for ((o, &a), &b) in out.iter_mut().zip(u).zip(v) {
                    *o = length * (a * c + b * s);
                }
            }
        }
    }
}

/// Two orthonormal vectors from Gaussian draws (Gram–Schmidt); uniform over planes.
fn random_plane<T: Real, R: Rng + ?Sized>(dims: usize, rng: &mut R) -> (Vec<T>, Vec<T>) {
    let eps = T::epsilon().sqrt();
    loop {
        let mut u: Vec<T> = (0..dims).map(|_| T::sample_standard_normal(rng)).collect();
        let mut v: Vec<T> = (0..dims).map(|_| T::sample_standard_normal(rng)).collect();
        let nu = norm(&u);
        if nu <= eps {
            continue;
        }
        u.iter_mut().for_each(|x| *x = *x / nu);
        let proj = dot(&u, &v);
        v.iter_mut().zip(&u).for_each(|(x, &a)| *x = *x - proj * a);
        let nv = norm(&v);
        if nv <= eps {
            continue;
        }
        v.iter_mut().for_each(|x| *x = *x / nv);
        return (u, v);
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Beam angles of one fan. `Rand` mode draws `n_beams - 1` gaps.
pub fn beam_angles<T: Real, R: Rng + ?Sized>(
    main_direction: T,
    params: &SonarParams<T>,
    rng: &mut R,
) -> Vec<T> {
    let mut angles = Vec::with_capacity(params.n_beams);
    let mut alpha = main_direction;
    for i in 0..params.n_beams {
        if i > 0 {
            alpha = alpha
                + match params.angle_mode {
                    AngleMode::Fixed { theta } => theta,
                    AngleMode::Rand { theta_min, theta_max } => {
                        theta_min + (theta_max - theta_min) * T::sample_unit(rng)
                    }
                };
        }
        angles.push(alpha);
    }
    angles
}

/// Unclamped far ends of the beams at `angles`.
pub fn fan_points<T: Real>(position: &[T], length: T, angles: &[T], basis: &FanBasis<T>) -> Vec<Vec<T>> {
    let mut offset = vec![T::zero(); position.len()];
    angles
        .iter()
        .map(|&alpha| {
            basis.offset(alpha, length, &mut offset);
            position.iter().zip(&offset).map(|(&p, &o)| p + o).collect()
        })
        .collect()
}

/// Far ends of the `n_beams` beams cast from `position` with main direction
/// `main_direction`, clamped to `space`.
pub fn beam_endpoints<T: Real, R: Rng + ?Sized>(
    position: &[T],
    length: T,
    main_direction: T,
    basis: &FanBasis<T>,
    params: &SonarParams<T>,
    space: &SearchSpace<T>,
    rng: &mut R,
) -> Vec<Vec<T>> {
    let angles = beam_angles(main_direction, params, rng);
    let mut points = fan_points(position, length, &angles, basis);
    for p in &mut points {
        space.clamp(p);
    }
    points
}

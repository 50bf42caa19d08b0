//! Uniform periodic trapezoid rule on `[0, 2π)`.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_NODES: usize = 1024;
pub const MIN_AREA_NODES: usize = 512;

pub fn nodes<T: Real>(count: usize) -> impl Iterator<Item = T> + Clone {
    let h = T::TAU() / T::from_int(count as i64);
    (0..count).map(move |i| T::from_int(i as i64) * h)
}

/// `(1/2π) ∫₀^{2π} g(θ) dθ`.
pub fn periodic_mean<T: Real>(count: usize, g: impl Fn(T) -> T) -> T {
    let sum = nodes::<T>(count).fold(T::zero(), |acc, th| acc + g(th));
    sum / T::from_int(count as i64)
}

/// Radius of the circle enclosing the same area as `r(θ)`:
/// `R₀ = sqrt((1/2π) ∫ r² dθ)`.
pub fn equal_area_radius<T: Real>(r: impl Fn(T) -> T, count: usize) -> Result<T> {
    if count < MIN_AREA_NODES {
        return Err(Error::Domain(format!(
            "equal-area quadrature needs at least {MIN_AREA_NODES} nodes, got {count}"
        )));
    }
    let mut acc = T::zero();
    for th in nodes::<T>(count) {
        let v = r(th);
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::InvalidBoundary(format!(
                "radius {v} at θ = {th} is not strictly positive"
            )));
        }
        acc = acc + v * v;
    }
    Ok((acc / T::from_int(count as i64)).sqrt())
}

/// Fourier coefficients `(Cₙ, Sₙ)`, `n = 0..=n_max`, of samples on the
/// uniform grid, normalized so that `g = Σ Cₙ cos nθ + Sₙ sin nθ`.
pub fn project<T: Real>(samples: &[T], n_max: usize) -> (Vec<T>, Vec<T>) {
    let count = samples.len();
    let nf = T::from_int(count as i64);
    let two = T::lit(2.0);
    let thetas: Vec<T> = nodes::<T>(count).collect();
    let mut cos = vec![T::zero(); n_max + 1];
    let mut sin = vec![T::zero(); n_max + 1];
    for n in 0..=n_max {
        let nn = T::from_int(n as i64);
        let (mut c, mut s) = (T::zero(), T::zero());
        for (&th, &v) in thetas.iter().zip(samples) {
            let (sn, cs) = (nn * th).sin_cos();
            c = c + v * cs;
            s = s + v * sn;
        }
        if n == 0 {
            cos[0] = c / nf;
        } else {
            cos[n] = two * c / nf;
            sin[n] = two * s / nf;
        }
    }
    (cos, sin)
}

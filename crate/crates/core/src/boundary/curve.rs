//! Exact polar descriptions `r(θ)`, `dr/dθ` of star-shaped boundaries.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::gamma_unchecked;

/// Reflection symmetry a boundary is known to have. The eigensolver uses
/// it to split the trial space into independent classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// No assumed symmetry.
    None,
    /// Mirror-symmetric about both coordinate axes (ellipse).
    D2,
    /// Symmetric under the square group (supercircle, circle).
    D4,
}

/// A closed star-shaped curve given in polar form about the origin.
pub trait StarCurve<T: Real>: Sync {
    fn radius(&self, theta: T) -> T;
    fn radius_derivative(&self, theta: T) -> T;
    fn symmetry(&self) -> Symmetry {
        Symmetry::None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle<T> {
    pub radius: T,
}

impl<T: Real> StarCurve<T> for Circle<T> {
    fn radius(&self, _theta: T) -> T {
        self.radius
    }
    fn radius_derivative(&self, _theta: T) -> T {
        T::zero()
    }
    fn symmetry(&self) -> Symmetry {
        Symmetry::D4
    }
}

/// Lamé curve `|x|ᵗ + |y|ᵗ = aᵗ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupercircleSpec<T> {
    pub t: T,
    pub a: T,
}

impl<T: Real> SupercircleSpec<T> {
    pub fn new(t: T) -> Self {
        Self { t, a: T::one() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t >= T::one()) || !self.t.is_finite() {
            return Err(Error::InvalidBoundary(format!(
                "supercircle exponent {} must be a finite value ≥ 1",
                self.t
            )));
        }
        if !(self.a > T::zero()) {
            return Err(Error::InvalidBoundary(format!("supercircle size {} must be positive", self.a)));
        }
        Ok(())
    }

    /// `R₀ = a sqrt(2/(tπ)) Γ(1/t) / sqrt(Γ(2/t))`.
    pub fn equal_area_radius(&self) -> T {
        let t = self.t;
        let inv = T::one() / t;
        self.a * (T::lit(2.0) / (t * T::PI())).sqrt() * gamma_unchecked(inv)
            / gamma_unchecked(inv + inv).sqrt()
    }
}

pub(crate) fn supercircle_radius<T: Real>(t: T, theta: T) -> T {
    let (s, c) = theta.sin_cos();
    (c.abs().powf(t) + s.abs().powf(t)).powf(-T::one() / t)
}

impl<T: Real> StarCurve<T> for SupercircleSpec<T> {
    fn radius(&self, theta: T) -> T {
        self.a * supercircle_radius(self.t, theta)
    }

    fn radius_derivative(&self, theta: T) -> T {
        let t = self.t;
        let (s, c) = theta.sin_cos();
        let (ac, as_) = (c.abs(), s.abs());
        let sum = ac.powf(t) + as_.powf(t);
        let tm1 = t - T::one();
        // d/dθ |c|ᵗ = −t |c|^{t−1} sgn(c) s, d/dθ |s|ᵗ = t |s|^{t−1} sgn(s) c
        let dsum_over_t = -ac.powf(tm1) * c.signum() * s + as_.powf(tm1) * s.signum() * c;
        -self.a * sum.powf(-T::one() / t - T::one()) * dsum_over_t
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::D4
    }
}

/// Ellipse with semi-axes `a ≥ b` along `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSpec<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> EllipseSpec<T> {
    /// Ellipse of equal-area radius `r0` and deformation `λ = (a−b)/(a+b)`.
    pub fn from_lambda(r0: T, lambda: T) -> Self {
        let ratio = ((T::one() + lambda) / (T::one() - lambda)).sqrt();
        Self { a: r0 * ratio, b: r0 / ratio }
    }

    pub fn lambda(&self) -> T {
        (self.a - self.b) / (self.a + self.b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > T::zero() && self.b > T::zero()) {
            return Err(Error::InvalidBoundary("ellipse semi-axes must be positive".into()));
        }
        if self.b > self.a {
            return Err(Error::InvalidBoundary(format!(
                "ellipse requires b ≤ a, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

impl<T: Real> StarCurve<T> for EllipseSpec<T> {
    fn radius(&self, theta: T) -> T {
        let e2 = T::one() - (self.b * self.b) / (self.a * self.a);
        let c = theta.cos();
        self.b / (T::one() - e2 * c * c).sqrt()
    }

    fn radius_derivative(&self, theta: T) -> T {
        let e2 = T::one() - (self.b * self.b) / (self.a * self.a);
        let (s, c) = theta.sin_cos();
        let q = T::one() - e2 * c * c;
        -self.b * e2 * c * s / (q * q.sqrt())
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::D2
    }
}

/// Finite trigonometric series `r(θ) = Σ aₙ cos nθ + bₙ sin nθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCurve<T> {
    pub cos: Vec<T>,
    pub sin: Vec<T>,
}

impl<T: Real> StarCurve<T> for TrigCurve<T> {
    fn radius(&self, theta: T) -> T {
        self.cos.iter().zip(&self.sin).enumerate().fold(T::zero(), |acc, (n, (&c, &s))| {
            let (sn, cs) = (T::from_int(n as i64) * theta).sin_cos();
            acc + c * cs + s * sn
        })
    }

    fn radius_derivative(&self, theta: T) -> T {
        self.cos.iter().zip(&self.sin).enumerate().fold(T::zero(), |acc, (n, (&c, &s))| {
            let nf = T::from_int(n as i64);
            let (sn, cs) = (nf * theta).sin_cos();
            acc + nf * (s * cs - c * sn)
        })
    }
}

impl TrigCurve<f64> {
    /// Least-squares trigonometric fit of `(θ, r)` samples with harmonics
    /// up to `n_max`.
    pub fn fit(samples: &[(f64, f64)], n_max: usize) -> Result<Self> {
        let unknowns = 2 * n_max + 1;
        if samples.len() < unknowns {
            return Err(Error::Spec(format!(
                "{} samples cannot determine {unknowns} Fourier unknowns",
                samples.len()
            )));
        }
        let a = DMatrix::from_fn(samples.len(), unknowns, |i, k| {
            let th = samples[i].0;
            match k {
                0 => 1.0,
                k if k % 2 == 1 => (((k + 1) / 2) as f64 * th).cos(),
                k => ((k / 2) as f64 * th).sin(),
            }
        });
        let rhs = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));
        let x = a
            .svd(true, true)
            .solve(&rhs, 1e-12)
            .map_err(|e| Error::Spec(format!("trigonometric fit failed: {e}")))?;
        let mut cos = vec![0.0; n_max + 1];
        let mut sin = vec![0.0; n_max + 1];
        cos[0] = x[0];
        for n in 1..=n_max {
            cos[n] = x[2 * n - 1];
            sin[n] = x[2 * n];
        }
        Ok(Self { cos, sin })
    }
}

use serde::Serialize;

use super::quadrature::{periodic_mean, DEFAULT_NODES};
use crate::scalar::Real;

/// Coefficients of one order `σ` of the boundary expansion,
/// `f⁽σ⁾(θ) = Σₙ Cₙ⁽σ⁾ cos nθ + Sₙ⁽σ⁾ sin nθ`, truncated at `n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierOrder<T> {
    pub sigma: u32,
    cos: Vec<T>,
    sin: Vec<T>,
}

impl<T: Real> FourierOrder<T> {
    pub fn new(sigma: u32, mut cos: Vec<T>, mut sin: Vec<T>) -> Self {
        let len = cos.len().max(sin.len()).max(1);
        cos.resize(len, T::zero());
        sin.resize(len, T::zero());
        sin[0] = T::zero();
        Self { sigma, cos, sin }
    }

    pub fn zero(sigma: u32, n_max: usize) -> Self {
        Self::new(sigma, vec![T::zero(); n_max + 1], vec![T::zero(); n_max + 1])
    }

    pub fn n_max(&self) -> usize {
        self.cos.len() - 1
    }

    /// `Cₙ`; indices beyond the truncation are zero.
    pub fn c(&self, n: usize) -> T {
        self.cos.get(n).copied().unwrap_or_else(T::zero)
    }

    /// `Sₙ`; negative or truncated indices are zero.
    pub fn s(&self, n: i64) -> T {
        if n < 0 {
            return T::zero();
        }
        self.sin.get(n as usize).copied().unwrap_or_else(T::zero)
    }

    pub fn cos_coeffs(&self) -> &[T] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[T] {
        &self.sin
    }

    pub fn has_sine_terms(&self) -> bool {
        self.sin.iter().any(|&s| s != T::zero())
    }

    pub fn set_cos(&mut self, n: usize, v: T) {
        if n >= self.cos.len() {
            self.cos.resize(n + 1, T::zero());
            self.sin.resize(n + 1, T::zero());
        }
        self.cos[n] = v;
    }

    /// Largest coefficient magnitude at the truncation index.
    pub fn tail(&self) -> T {
        let n = self.n_max();
        self.cos[n].abs().max(self.sin[n].abs())
    }

    pub fn eval(&self, theta: T) -> T {
        self.cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .fold(T::zero(), |acc, (n, (&c, &s))| {
                let (sn, cs) = (T::from_int(n as i64) * theta).sin_cos();
                acc + c * cs + s * sn
            })
    }

    /// `Σ_{n≥1} (Cₙ² + Sₙ²)`.
    pub fn power_without_mean(&self) -> T {
        self.cos
            .iter()
            .zip(&self.sin)
            .skip(1)
            .fold(T::zero(), |acc, (&c, &s)| acc + c * c + s * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Provenance {
    Supercircle { t: f64 },
    Ellipse { a: f64, b: f64 },
    Circle,
    Numeric,
}

/// A λ-family of boundaries expanded about its equal-area circle,
/// `r(θ) = R₀ [1 + λ f⁽¹⁾(θ) + λ² f⁽²⁾(θ)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierBoundary<T> {
    pub r0: T,
    pub lambda: T,
    pub first: FourierOrder<T>,
    pub second: FourierOrder<T>,
    pub provenance: Provenance,
}

impl<T: Real> FourierBoundary<T> {
    pub fn circle(r0: T) -> Self {
        Self {
            r0,
            lambda: T::zero(),
            first: FourierOrder::zero(1, 0),
            second: FourierOrder::zero(2, 0),
            provenance: Provenance::Circle,
        }
    }

    /// Same coefficient family at a different deformation parameter.
    pub fn with_lambda(&self, lambda: T) -> Self {
        Self { lambda, ..self.clone() }
    }

    /// Truncation index shared by both orders.
    pub fn n_max(&self) -> usize {
        self.first.n_max().max(self.second.n_max())
    }

    pub fn has_sine_terms(&self) -> bool {
        self.first.has_sine_terms() || self.second.has_sine_terms()
    }

    /// Truncated-series radius `R₀[1 + λf⁽¹⁾ + λ²f⁽²⁾]`.
    pub fn radius(&self, theta: T) -> T {
        let l = self.lambda;
        self.r0 * (T::one() + l * self.first.eval(theta) + l * l * self.second.eval(theta))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualAreaReport {
    /// `|4C₀⁽²⁾ + 2C₀⁽¹⁾² + Σₙ(Cₙ⁽¹⁾² + Sₙ⁽¹⁾²)|`.
    pub constraint_residual: f64,
    /// `|½∫r² dθ / (πR₀²) − 1|` for the truncated series at the stored λ.
    pub area_residual: f64,
    pub passed: bool,
}

pub const EQUAL_AREA_FLAG: f64 = 1e-6;

/// Checks the second-order equal-area constraint and the reconstructed area.
pub fn validate_equal_area<T: Real>(b: &FourierBoundary<T>) -> EqualAreaReport {
    let c01 = b.first.c(0);
    let constraint = (T::lit(4.0) * b.second.c(0)
        + T::lit(2.0) * c01 * c01
        + b.first.power_without_mean())
    .abs();
    let mean_sq = periodic_mean(DEFAULT_NODES, |th| {
        let r = b.radius(th) / b.r0;
        r * r
    });
    let area = (mean_sq - T::one()).abs();
    let constraint_residual = constraint.as_f64();
    EqualAreaReport {
        constraint_residual,
        area_residual: area.as_f64(),
        passed: constraint_residual <= EQUAL_AREA_FLAG,
    }
}

//! Generators for the two closed-form families and the numerical fallback
//! used for coefficients that have no known closed form.

use super::curve::{supercircle_radius, EllipseSpec, SupercircleSpec, TrigCurve};
use super::fourier::{FourierBoundary, FourierOrder, Provenance};
use super::quadrature::{equal_area_radius, nodes, project, DEFAULT_NODES};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_N_MAX: usize = 64;
pub const MAX_SUPERCIRCLE_DEFORMATION: f64 = 1.5;
pub const MAX_ELLIPSE_LAMBDA: f64 = 0.3;

/// The supercircle's `|cos θ|ᵗ` terms are only finitely smooth at the axes,
/// so its projection needs a finer grid than analytic families.
pub const SUPERCIRCLE_NODES: usize = 4096;

/// Settings for the numerical λ-expansion of a boundary family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericExpansion {
    pub nodes: usize,
    /// λ step of the central differences.
    pub step: f64,
    /// Largest coefficient magnitude allowed among the top quarter of
    /// retained harmonics.
    pub tail_tolerance: f64,
}

impl Default for NumericExpansion {
    fn default() -> Self {
        Self { nodes: DEFAULT_NODES, step: 1e-3, tail_tolerance: 1e-3 }
    }
}

/// `C₄ₙ⁽¹⁾ = −1 / (4n(4n² − 1))`.
pub fn supercircle_first_order_coefficient<T: Real>(n: usize) -> T {
    let nf = T::from_int(n as i64);
    -T::one() / (T::lit(4.0) * nf * (T::lit(4.0) * nf * nf - T::one()))
}

/// Closed form `C₄⁽²⁾ = (3π²/8 − 23/9) / 32`.
pub fn supercircle_c4_second_order<T: Real>() -> T {
    let pi = T::PI();
    (T::lit(3.0) * pi * pi / T::lit(8.0) - T::lit(23.0) / T::lit(9.0)) / T::lit(32.0)
}

/// Expansion of the supercircle `|x|ᵗ + |y|ᵗ = aᵗ` about the circle in
/// `λ = t − 2`.
pub fn supercircle_boundary<T: Real>(spec: SupercircleSpec<T>, n_max: usize) -> Result<FourierBoundary<T>> {
    spec.validate()?;
    let lambda = spec.t - T::lit(2.0);
    if lambda.abs() > T::lit(MAX_SUPERCIRCLE_DEFORMATION) {
        return Err(Error::Domain(format!(
            "supercircle exponent {} outside [0.5, 3.5] expansion range",
            spec.t
        )));
    }
    if n_max % 4 != 0 || !(8..=64).contains(&n_max) {
        return Err(Error::Domain(format!(
            "supercircle truncation {n_max} must be a multiple of 4 in 8..=64"
        )));
    }
    let mut first = FourierOrder::zero(1, n_max);
    for n in 1..=n_max / 4 {
        first.set_cos(4 * n, supercircle_first_order_coefficient(n));
    }
    let family = |theta: T, lam: T| supercircle_radius(T::lit(2.0) + lam, theta);
    let opts = NumericExpansion { nodes: SUPERCIRCLE_NODES, ..NumericExpansion::default() };
    let numeric = fourier_orders_numeric(family, n_max, &opts)?.1;
    let mut second = FourierOrder::zero(2, n_max);
    for n in (0..=n_max).step_by(4) {
        second.set_cos(n, numeric.c(n));
    }
    Ok(FourierBoundary {
        r0: spec.equal_area_radius(),
        lambda,
        first,
        second,
        provenance: Provenance::Supercircle { t: spec.t.as_f64() },
    })
}

/// Ellipse expanded in `λ = (a − b)/(a + b)` about `R₀ = sqrt(ab)`:
/// `C₂⁽¹⁾ = 1`, `C₀⁽²⁾ = −¼`, `C₄⁽²⁾ = ¾`.
pub fn ellipse_boundary<T: Real>(spec: EllipseSpec<T>) -> Result<FourierBoundary<T>> {
    spec.validate()?;
    let lambda = spec.lambda();
    if lambda > T::lit(MAX_ELLIPSE_LAMBDA) {
        return Err(Error::Domain(format!(
            "ellipse deformation {lambda} exceeds {MAX_ELLIPSE_LAMBDA}"
        )));
    }
    let mut first = FourierOrder::zero(1, 4);
    first.set_cos(2, T::one());
    let mut second = FourierOrder::zero(2, 4);
    second.set_cos(0, T::lit(-0.25));
    second.set_cos(4, T::lit(0.75));
    Ok(FourierBoundary {
        r0: (spec.a * spec.b).sqrt(),
        lambda,
        first,
        second,
        provenance: Provenance::Ellipse { a: spec.a.as_f64(), b: spec.b.as_f64() },
    })
}

/// `f⁽²⁾` of a family `r(θ, λ)` with default settings.
pub fn fourier_order2_numeric<T: Real>(
    family: impl Fn(T, T) -> T,
    n_max: usize,
) -> Result<FourierOrder<T>> {
    Ok(fourier_orders_numeric(family, n_max, &NumericExpansion::default())?.1)
}

/// First- and second-order coefficients of `r(θ, λ)/R₀(λ)` at `λ = 0`,
/// from Richardson-extrapolated central differences in λ and trapezoid
/// projection in θ.
pub fn fourier_orders_numeric<T: Real>(
    family: impl Fn(T, T) -> T,
    n_max: usize,
    opts: &NumericExpansion,
) -> Result<(FourierOrder<T>, FourierOrder<T>)> {
    if opts.nodes < 2 * n_max + 2 {
        return Err(Error::Domain(format!(
            "{} quadrature nodes cannot resolve {n_max} harmonics",
            opts.nodes
        )));
    }
    let h = T::lit(opts.step);
    let thetas: Vec<T> = nodes::<T>(opts.nodes).collect();
    let normalized = |lam: T| -> Result<Vec<T>> {
        let r0 = equal_area_radius(|th| family(th, lam), opts.nodes)?;
        Ok(thetas.iter().map(|&th| family(th, lam) / r0).collect())
    };
    let g0 = normalized(T::zero())?;
    let gp1 = normalized(h)?;
    let gm1 = normalized(-h)?;
    let gp2 = normalized(h + h)?;
    let gm2 = normalized(-(h + h))?;

    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    let mut d1 = Vec::with_capacity(g0.len());
    let mut d2 = Vec::with_capacity(g0.len());
    for i in 0..g0.len() {
        let first_h = (gp1[i] - gm1[i]) / (two * h);
        let first_2h = (gp2[i] - gm2[i]) / (four * h);
        d1.push((four * first_h - first_2h) / three);
        let second_h = (gp1[i] - two * g0[i] + gm1[i]) / (h * h);
        let second_2h = (gp2[i] - two * g0[i] + gm2[i]) / (four * h * h);
        // f⁽²⁾ = ½ ∂²g/∂λ²
        d2.push((four * second_h - second_2h) / three / two);
    }
    let (c1, s1) = project(&d1, n_max);
    let (c2, s2) = project(&d2, n_max);
    let first = FourierOrder::new(1, c1, s1);
    let second = FourierOrder::new(2, c2, s2);
    let tol = T::lit(opts.tail_tolerance);
    for order in [&first, &second] {
        let start = n_max - n_max / 4;
        for n in start.max(1)..=n_max {
            if order.c(n).abs() > tol || order.s(n as i64).abs() > tol {
                return Err(Error::InvalidBoundary(format!(
                    "order-{} coefficient {n} exceeds tail tolerance {}; \
                     the family needs more harmonics than n_max = {n_max}",
                    order.sigma, opts.tail_tolerance
                )));
            }
        }
    }
    Ok((first, second))
}

/// Expansion of a single sampled curve at deformation `λ ≠ 0`, embedded in
/// the family `r(θ, μ) ∝ 1 + (μ/λ) h(θ)` with `h = r/R₀ − 1`, so the
/// family reproduces the curve at `μ = λ`.
pub fn numeric_boundary(curve: &TrigCurve<f64>, lambda: f64, n_max: usize) -> Result<FourierBoundary<f64>> {
    use super::curve::StarCurve;
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Spec("numeric boundary needs a nonzero finite lambda".into()));
    }
    let r0 = equal_area_radius(|th| curve.radius(th), DEFAULT_NODES)?;
    let family = |th: f64, mu: f64| 1.0 + (mu / lambda) * (curve.radius(th) / r0 - 1.0);
    // a family built from |λ| ≤ 1 data stays positive for the ±2h stencil
    let (first, second) = fourier_orders_numeric(family, n_max, &NumericExpansion::default())?;
    Ok(FourierBoundary {
        r0,
        lambda,
        first: flush_noise(&first),
        second: flush_noise(&second),
        provenance: Provenance::Numeric,
    })
}

/// Coefficients below this are difference/quadrature noise (observed
/// ~1e-12) and are set to exactly zero, so symmetric samples give an
/// exactly cosine-only expansion.
pub const NUMERIC_NOISE_FLOOR: f64 = 1e-10;

fn flush_noise(o: &FourierOrder<f64>) -> FourierOrder<f64> {
    let clean = |v: &[f64]| v.iter().map(|&c| if c.abs() < NUMERIC_NOISE_FLOOR { 0.0 } else { c }).collect();
    FourierOrder::new(o.sigma, clean(o.cos_coeffs()), clean(o.sin_coeffs()))
}

//! JSON boundary descriptions:
//!
//! ```json
//! {"type":"supercircle","t":1.5}
//! {"type":"ellipse","a":1.25,"b":0.8}
//! {"type":"numeric","samples":[[0.0,1.1],[0.1,1.09]],"lambda":0.1}
//! {"type":"fourier","r0":1.0,"lambda":0.1,"first":{"cos":[0,0,1]},"second":{"cos":[-0.25,0,0,0,0.75]}}
//! ```
//!
//! The `fourier` form gives the expansion coefficients directly; its exact
//! curve is taken to be the truncated series itself.

use serde::{Deserialize, Serialize};

use super::curve::{Circle, EllipseSpec, StarCurve, SupercircleSpec, TrigCurve};
use super::families::{ellipse_boundary, numeric_boundary, supercircle_boundary};
use super::fourier::{FourierBoundary, FourierOrder, Provenance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BoundarySpec {
    Circle {
        #[serde(default = "unit")]
        radius: f64,
    },
    Supercircle {
        t: f64,
        #[serde(default = "unit")]
        a: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    Numeric {
        samples: Vec<[f64; 2]>,
        lambda: f64,
    },
    Fourier {
        r0: f64,
        lambda: f64,
        first: Coefficients,
        second: Coefficients,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficients {
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

fn unit() -> f64 {
    1.0
}

/// A boundary spec turned into its perturbative expansion plus the exact
/// curve the eigensolver integrates against.
pub struct ResolvedBoundary {
    pub expansion: FourierBoundary<f64>,
    pub curve: Box<dyn StarCurve<f64> + Send>,
}

impl BoundarySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn resolve(&self, n_max: usize) -> Result<ResolvedBoundary> {
        match *self {
            BoundarySpec::Circle { radius } => {
                if !(radius > 0.0) {
                    return Err(Error::Spec(format!("circle radius {radius} must be positive")));
                }
                Ok(ResolvedBoundary {
                    expansion: FourierBoundary::circle(radius),
                    curve: Box::new(Circle { radius }),
                })
            }
            BoundarySpec::Supercircle { t, a } => {
                let spec = SupercircleSpec { t, a };
                let n = n_max - n_max % 4;
                Ok(ResolvedBoundary {
                    expansion: supercircle_boundary(spec, n.clamp(8, 64))?,
                    curve: Box::new(spec),
                })
            }
            BoundarySpec::Ellipse { a, b } => {
                let spec = EllipseSpec { a, b };
                Ok(ResolvedBoundary { expansion: ellipse_boundary(spec)?, curve: Box::new(spec) })
            }
            BoundarySpec::Numeric { ref samples, lambda } => {
                let pairs = validate_samples(samples)?;
                let harmonics = n_max.min((pairs.len() - 1) / 2);
                let curve = TrigCurve::fit(&pairs, harmonics)?;
                Ok(ResolvedBoundary {
                    expansion: numeric_boundary(&curve, lambda, harmonics)?,
                    curve: Box::new(curve),
                })
            }
            BoundarySpec::Fourier { r0, lambda, ref first, ref second } => {
                if !(r0 > 0.0) || !lambda.is_finite() {
                    return Err(Error::Spec(format!("need r0 > 0 and finite lambda, got {r0}, {lambda}")));
                }
                let order = |sigma, c: &Coefficients| FourierOrder::new(sigma, c.cos.clone(), c.sin.clone());
                let expansion = FourierBoundary {
                    r0,
                    lambda,
                    first: order(1, first),
                    second: order(2, second),
                    provenance: Provenance::Numeric,
                };
                let n = expansion.n_max() + 1;
                let coeff = |f: &FourierOrder<f64>, g: &FourierOrder<f64>, sine: bool| -> Vec<f64> {
                    (0..n)
                        .map(|i| {
                            let (a, b) = if sine { (f.s(i as i64), g.s(i as i64)) } else { (f.c(i), g.c(i)) };
                            r0 * (if i == 0 && !sine { 1.0 } else { 0.0 } + lambda * a + lambda * lambda * b)
                        })
                        .collect()
                };
                let curve = TrigCurve {
                    cos: coeff(&expansion.first, &expansion.second, false),
                    sin: coeff(&expansion.first, &expansion.second, true),
                };
                let tau = std::f64::consts::TAU;
                if (0..1024).any(|i| !(curve.radius(tau * i as f64 / 1024.0) > 0.0)) {
                    return Err(Error::InvalidBoundary("series radius is not positive everywhere".into()));
                }
                Ok(ResolvedBoundary { expansion, curve: Box::new(curve) })
            }
        }
    }
}

fn validate_samples(samples: &[[f64; 2]]) -> Result<Vec<(f64, f64)>> {
    if samples.len() < 8 {
        return Err(Error::Spec(format!("need at least 8 samples, got {}", samples.len())));
    }
    let tau = std::f64::consts::TAU;
    let mut prev = f64::NEG_INFINITY;
    for &[theta, r] in samples {
        if !(0.0..tau).contains(&theta) {
            return Err(Error::Spec(format!("angle {theta} outside [0, 2π)")));
        }
        if theta <= prev {
            return Err(Error::Spec("angles must be strictly increasing".into()));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Spec(format!("radius {r} at θ = {theta} is not positive")));
        }
        prev = theta;
    }
    let first = samples[0][0];
    let last = samples[samples.len() - 1][0];
    let widest = samples
        .windows(2)
        .map(|w| w[1][0] - w[0][0])
        .fold(first + tau - last, f64::max);
    if widest > std::f64::consts::FRAC_PI_4 {
        return Err(Error::Spec(format!(
            "samples leave a gap of {widest:.3} rad; they must cover [0, 2π)"
        )));
    }
    Ok(samples.iter().map(|s| (s[0], s[1])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_variant() {
        assert_eq!(
            BoundarySpec::from_json(r#"{"type":"supercircle","t":1.5}"#).unwrap(),
            BoundarySpec::Supercircle { t: 1.5, a: 1.0 }
        );
        assert_eq!(
            BoundarySpec::from_json(r#"{"type":"ellipse","a":1.25,"b":0.8}"#).unwrap(),
            BoundarySpec::Ellipse { a: 1.25, b: 0.8 }
        );
        let n = BoundarySpec::from_json(r#"{"type":"numeric","samples":[[0,1],[1,1]],"lambda":0.1}"#)
            .unwrap();
        assert!(matches!(n, BoundarySpec::Numeric { .. }));
    }

    #[test]
    fn fourier_variant_round_trips_the_ellipse() {
        let text = r#"{"type":"fourier","r0":1.0,"lambda":0.1,
            "first":{"cos":[0,0,1]},"second":{"cos":[-0.25,0,0,0,0.75]}}"#;
        let r = BoundarySpec::from_json(text).unwrap().resolve(64).unwrap();
        let e = ellipse_boundary(EllipseSpec::from_lambda(1.0, 0.1)).unwrap();
        for i in 0..16 {
            let th = i as f64 * 0.4;
            assert!((r.curve.radius(th) - e.radius(th)).abs() < 1e-14);
        }
        assert!(crate::boundary::validate_equal_area(&r.expansion).passed);
    }

    #[test]
    fn rejects_malformed() {
        assert!(BoundarySpec::from_json(r#"{"type":"hexagon"}"#).is_err());
        assert!(BoundarySpec::from_json(r#"{"type":"ellipse","a":1}"#).is_err());
        let bad_order = BoundarySpec::Numeric {
            samples: (0..16).rev().map(|i| [i as f64 * 0.3, 1.0]).collect(),
            lambda: 0.1,
        };
        assert!(bad_order.resolve(8).is_err());
        let gap = BoundarySpec::Numeric {
            samples: (0..16).map(|i| [i as f64 * 0.2, 1.0]).collect(),
            lambda: 0.1,
        };
        assert!(gap.resolve(8).is_err());
    }

    #[test]
    fn numeric_spec_resolves() {
        let samples: Vec<[f64; 2]> = (0..128)
            .map(|i| {
                let th = i as f64 * std::f64::consts::TAU / 128.0;
                [th, 1.0 + 0.05 * (3.0 * th).cos()]
            })
            .collect();
        let r = BoundarySpec::Numeric { samples, lambda: 0.05 }.resolve(16).unwrap();
        assert!((r.expansion.first.c(3) - 1.0).abs() < 1e-3);
        assert!((r.curve.radius(0.0) - 1.05).abs() < 1e-12);
    }
}

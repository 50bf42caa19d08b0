//! Positive zeros of `Jₗ` and `Jₗ′`.
//!
//! Roots are bracketed by a sign-change scan starting below the first
//! positive zero (no positive zero of `Jₗ` or `Jₗ′` lies below `l`), then
//! polished by Newton's method started from McMahon's asymptotic estimate,
//! with bisection whenever a Newton step leaves the bracket.

use serde::{Deserialize, Serialize};

use super::bessel::{eval_d2j, eval_dj, eval_j, MAX_ARG};
use crate::error::{domain_err, Error, Result};
use crate::scalar::Real;

pub const MAX_ROOT_ORDER: u32 = 32;
pub const MAX_ROOT_INDEX: u32 = 40;

const SCAN_STEP: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootKind {
    /// Zero of `Jₗ` (Dirichlet circle).
    FunctionZero,
    /// Zero of `Jₗ′` (Neumann circle).
    DerivativeZero,
}

/// A strictly positive zero of `Jₗ` or `Jₗ′`; `j` counts positive roots
/// starting at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselRoot<T> {
    pub l: u32,
    pub j: u32,
    pub kind: RootKind,
    pub value: T,
}

/// The `j`-th strictly positive zero (`1 ≤ j ≤ 40`, `0 ≤ l ≤ 32`).
pub fn bessel_root<T: Real>(l: u32, j: u32, kind: RootKind) -> Result<BesselRoot<T>> {
    if l > MAX_ROOT_ORDER {
        return Err(domain_err!("root order {l} exceeds {MAX_ROOT_ORDER}"));
    }
    if j == 0 || j > MAX_ROOT_INDEX {
        return Err(domain_err!("root index {j} outside 1..={MAX_ROOT_INDEX}"));
    }
    let roots = bessel_roots::<T>(l, j as usize, kind)?;
    Ok(BesselRoot { l, j, kind, value: roots[j as usize - 1] })
}

/// The first `count` strictly positive zeros, ascending.
pub fn bessel_roots<T: Real>(l: u32, count: usize, kind: RootKind) -> Result<Vec<T>> {
    if l > super::bessel::MAX_ORDER {
        return Err(domain_err!("root order {l} exceeds {}", super::bessel::MAX_ORDER));
    }
    let f = |x: T| match kind {
        RootKind::FunctionZero => eval_j(l, x),
        RootKind::DerivativeZero => eval_dj(l, x),
    };
    let step = T::lit(SCAN_STEP);
    let limit = T::lit(MAX_ARG);
    let mut a = T::from_int(l as i64).max(T::lit(1e-3));
    let mut fa = f(a);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let b = a + step;
        if b > limit {
            return Err(domain_err!(
                "only {} roots of order {l} below x = {MAX_ARG}",
                out.len()
            ));
        }
        let fb = f(b);
        if fb == T::zero() {
            out.push(b);
            a = b + step * T::lit(1e-3);
            fa = f(a);
            continue;
        }
        if fa.signum() != fb.signum() {
            let guess = mcmahon(l, out.len() as u32 + 1, kind);
            out.push(polish(l, kind, a, b, fa, guess)?);
        }
        a = b;
        fa = fb;
    }
    Ok(out)
}

/// McMahon's large-root expansion, used only as a Newton starting point.
fn mcmahon<T: Real>(l: u32, j: u32, kind: RootKind) -> T {
    let mu = 4.0 * (l as f64) * (l as f64);
    let pi = std::f64::consts::PI;
    let v = match kind {
        RootKind::FunctionZero => {
            let beta = (j as f64 + l as f64 / 2.0 - 0.25) * pi;
            beta - (mu - 1.0) / (8.0 * beta)
        }
        RootKind::DerivativeZero => {
            // J₀′ has its first positive zero where the generic formula
            // would place the trivial one
            let jj = if l == 0 { j + 1 } else { j };
            let beta = (jj as f64 + l as f64 / 2.0 - 0.75) * pi;
            beta - (mu + 3.0) / (8.0 * beta)
        }
    };
    T::lit(v)
}

fn polish<T: Real>(l: u32, kind: RootKind, lo: T, hi: T, f_lo: T, guess: T) -> Result<T> {
    let f = |x: T| match kind {
        RootKind::FunctionZero => eval_j(l, x),
        RootKind::DerivativeZero => eval_dj(l, x),
    };
    let df = |x: T| match kind {
        RootKind::FunctionZero => eval_dj(l, x),
        RootKind::DerivativeZero => eval_d2j(l, x),
    };
    let (mut a, mut b) = (lo, hi);
    let sign_a = f_lo.signum();
    let two = T::lit(2.0);
    let mut x = if guess > a && guess < b { guess } else { (a + b) / two };
    let tol = T::lit(4.0) * T::epsilon();
    for _ in 0..200 {
        let fx = f(x);
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == sign_a {
            a = x;
        } else {
            b = x;
        }
        let d = df(x);
        let newton = if d != T::zero() { x - fx / d } else { T::nan() };
        let next = if newton > a && newton < b { newton } else { (a + b) / two };
        if (next - x).abs() <= tol * x.abs() || (b - a) <= tol * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Convergence(format!(
        "{kind:?} root of order {l} in [{lo}, {hi}]"
    )))
}

/// Converts the tabulated index convention, in which `x = 0` is listed as
/// the first root of `J₁` (Dirichlet) and of `J₀′` (Neumann), into the
/// positive-root index used throughout this crate.
pub fn internal_index(l: u32, kind: RootKind, j_listed: u32) -> Result<u32> {
    let shifted = matches!((kind, l), (RootKind::FunctionZero, 1) | (RootKind::DerivativeZero, 0));
    match (shifted, j_listed) {
        (true, 0 | 1) => Err(domain_err!(
            "tabulated index {j_listed} for {kind:?} l={l} is the trivial root x = 0"
        )),
        (true, j) => Ok(j - 1),
        (false, 0) => Err(domain_err!("tabulated root index must be positive")),
        (false, j) => Ok(j),
    }
}

/// Inverse of [`internal_index`].
pub fn tabulated_index(l: u32, kind: RootKind, j: u32) -> u32 {
    let shifted = matches!((kind, l), (RootKind::FunctionZero, 1) | (RootKind::DerivativeZero, 0));
    if shifted {
        j + 1
    } else {
        j
    }
}

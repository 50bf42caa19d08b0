//! Bessel functions of the first kind for integer order and real argument.
//!
//! Small arguments (`x²/4 ≤ l + 1`, where the power series has no
//! cancellation) use the series directly. Everything else goes through
//! Miller's downward recurrence, normalized with
//! `J₀(x) + 2 Σ J₂ₖ(x) = 1`.

use crate::error::{domain_err, Result};
use crate::scalar::Real;

pub const MAX_ORDER: u32 = 64;
pub const MAX_ARG: f64 = 200.0;

fn check_domain<T: Real>(l: u32, x: T) -> Result<()> {
    if l > MAX_ORDER {
        return Err(domain_err!("Bessel order {l} exceeds {MAX_ORDER}"));
    }
    if !(x >= T::zero() && x <= T::lit(MAX_ARG)) {
        return Err(domain_err!("Bessel argument {x} outside [0, {MAX_ARG}]"));
    }
    Ok(())
}

/// `Jₗ(x)` for `0 ≤ l ≤ 64`, `0 ≤ x ≤ 200`.
pub fn bessel_j<T: Real>(l: u32, x: T) -> Result<T> {
    check_domain(l, x)?;
    Ok(eval_j(l, x))
}

/// First (`order = 1`) or second (`order = 2`) derivative of `Jₗ` in `x`.
///
/// The first derivative uses `J′ₗ = (Jₗ₋₁ − Jₗ₊₁)/2`. The second uses the
/// Bessel equation `J″ = −J′/x − (1 − l²/x²) J` for `x > 0`; at the origin it
/// falls back to `J″ = (Jₗ₋₂ − 2Jₗ + Jₗ₊₂)/4`.
pub fn bessel_j_deriv<T: Real>(l: u32, x: T, order: u8) -> Result<T> {
    check_domain(l, x)?;
    match order {
        1 => Ok(eval_dj(l, x)),
        2 => Ok(eval_d2j(l, x)),
        _ => Err(domain_err!("derivative order {order} not supported (1 or 2)")),
    }
}

/// `J₋ₙ = (−1)ⁿ Jₙ`.
fn signed_order<T: Real>(n: i64, x: T) -> T {
    let v = eval_j(n.unsigned_abs() as u32, x);
    if n < 0 && n % 2 != 0 {
        -v
    } else {
        v
    }
}

pub(crate) fn eval_j<T: Real>(l: u32, x: T) -> T {
    if x == T::zero() {
        return if l == 0 { T::one() } else { T::zero() };
    }
    if series_preferred(l, x) {
        series(l, x)
    } else {
        miller(l as usize, x)[l as usize]
    }
}

pub(crate) fn eval_dj<T: Real>(l: u32, x: T) -> T {
    let half = T::lit(0.5);
    let (lm, lp) = (l as i64 - 1, l as i64 + 1);
    half * (signed_order(lm, x) - signed_order(lp, x))
}

pub(crate) fn eval_d2j<T: Real>(l: u32, x: T) -> T {
    if x == T::zero() {
        let li = l as i64;
        let q = T::lit(0.25);
        return q * (signed_order(li - 2, x) - T::lit(2.0) * eval_j(l, x) + signed_order(li + 2, x));
    }
    let lf = T::from_int(l as i64);
    let j = eval_j(l, x);
    let dj = eval_dj(l, x);
    -dj / x - (T::one() - lf * lf / (x * x)) * j
}

/// `Jₙ(x)/Jₙ′(x)` for `x > 0` and any order, without forming either factor.
///
/// Uses the downward continued fraction for `Jₘ/Jₘ₋₁`, which stays finite
/// where `Jₙ` itself underflows. Infinite at zeros of `Jₙ′`.
pub fn bessel_j_ratio<T: Real>(n: u32, x: T) -> T {
    if n == 0 {
        return -eval_j(0, x) / eval_j(1, x);
    }
    let start = n as usize + x.as_f64().ceil() as usize + 64;
    let two_over_x = T::lit(2.0) / x;
    let mut r = T::zero();
    for m in (n as usize..=start).rev() {
        r = T::one() / (T::from_int(m as i64) * two_over_x - r);
    }
    // Jₙ′/Jₙ = Jₙ₋₁/Jₙ − n/x
    let nf = T::from_int(n as i64);
    r / (T::one() - nf * r / x)
}

fn series_preferred<T: Real>(l: u32, x: T) -> bool {
    x * x * T::lit(0.25) <= T::from_int(l as i64 + 1)
}

/// Power series `Σ (−1)ᵏ (x/2)^{2k+l} / (k! (k+l)!)`.
fn series<T: Real>(l: u32, x: T) -> T {
    let half_x = x * T::lit(0.5);
    let mut lead = T::one();
    for k in 1..=l {
        lead = lead * half_x / T::from_int(k as i64);
    }
    let q = half_x * half_x;
    let lf = T::from_int(l as i64);
    let mut term = lead;
    let mut sum = lead;
    let eps = T::epsilon();
    for k in 1..500 {
        let kf = T::from_int(k);
        term = -term * q / (kf * (kf + lf));
        sum = sum + term;
        if term.abs() <= eps * sum.abs() {
            break;
        }
    }
    sum
}

/// All orders `J₀(x) … J_max(x)` by Miller's downward recurrence.
///
/// Requires `x > 0`. Returns a vector of length `max_order + 1`.
pub fn bessel_j_orders<T: Real>(max_order: usize, x: T) -> Vec<T> {
    if x == T::zero() {
        let mut v = vec![T::zero(); max_order + 1];
        v[0] = T::one();
        return v;
    }
    miller(max_order, x)
}

fn miller<T: Real>(max_order: usize, x: T) -> Vec<T> {
    let xf = x.as_f64();
    let top = (max_order as f64).max(xf.ceil());
    let start = {
        let s = (top + (40.0 * top).sqrt() + 16.0) as usize;
        s + (s % 2)
    };
    let big = T::max_value().sqrt();
    let tiny = T::one() / big;
    let two_over_x = T::lit(2.0) / x;

    let mut out = vec![T::zero(); max_order + 1];
    let mut j_next = T::zero();
    let mut j_cur = tiny;
    let mut norm = T::zero();
    for k in (1..=start).rev() {
        // j_cur = J_k, j_next = J_{k+1}
        if k <= max_order {
            out[k] = j_cur;
        }
        if k % 2 == 0 {
            norm = norm + j_cur;
        }
        let j_prev = T::from_int(k as i64) * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > big {
            j_cur = j_cur * tiny;
            j_next = j_next * tiny;
            norm = norm * tiny;
            for v in out.iter_mut() {
                *v = *v * tiny;
            }
        }
    }
    // j_cur now holds J_0
    out[0] = j_cur;
    let scale = T::one() / (j_cur + T::lit(2.0) * norm);
    for v in out.iter_mut() {
        *v = *v * scale;
    }
    out
}

//! Neumann eigenvalues of a near-circular domain to second order in the
//! deformation parameter λ.
//!
//! The unperturbed states live on the equal-area circle of radius `R₀`:
//! `ψ₀ = Jₗ(ρ′r/R₀)·{cos, sin}(lθ)` with `Jₗ′(ρ′) = 0` and `ω₀ = ρ′²/R₀²`.
//! For `l ≥ 1` the cos/sin pair is degenerate; the cosine-only boundaries
//! accepted here keep the two varieties decoupled, so each is corrected
//! separately.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::boundary::{FourierBoundary, FourierOrder};
use crate::error::{domain_err, Error, Result};
use crate::mode::{BoundaryCondition, Parity};
use crate::scalar::Real;
use crate::specfun::{bessel_j_ratio, bessel_root, eval_d2j, eval_dj, eval_j, RootKind, MAX_ORDER};

/// Largest number of states `spectrum` will enumerate.
pub const MAX_STATES: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode<T> {
    pub l: u32,
    /// Positive-root index: `ρ′` is the `j`-th strictly positive zero of `Jₗ′`.
    pub j: u32,
    /// Always `Cos` when `l = 0`.
    pub parity: Parity,
    pub bc: BoundaryCondition,
    pub rho: T,
}

impl<T: Real> Mode<T> {
    pub fn new(l: u32, j: u32, parity: Parity) -> Result<Self> {
        let rho = bessel_root::<T>(l, j, RootKind::DerivativeZero)?.value;
        let lf = T::from_int(l as i64);
        if rho * rho - lf * lf <= T::zero() {
            return Err(domain_err!("ρ′² ≤ l² for l={l}, j={j}"));
        }
        let parity = if l == 0 { Parity::Cos } else { parity };
        Ok(Self { l, j, parity, bc: BoundaryCondition::Neumann, rho })
    }

    pub fn label(&self) -> String {
        if self.l == 0 {
            format!("({},{})", self.l, self.j)
        } else {
            format!("({},{}){}", self.l, self.j, self.parity)
        }
    }
}

/// Eigenvalue units: multiples of `1/R₀²` or absolute `1/length²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Units {
    #[default]
    Reduced,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbedEigenvalue<T> {
    pub mode: Mode<T>,
    pub omega0: T,
    /// Coefficient of λ.
    pub omega1: T,
    /// Coefficient of λ².
    pub omega2: T,
    pub lambda: T,
    pub omega_total: T,
    /// Magnitude of the last retained term of the ω₂ sums (same units).
    pub truncation_tail: T,
}

/// A second-order coefficient with the size of its truncation remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncated<T> {
    pub value: T,
    pub tail: T,
}

/// First-order wavefunction coefficients in units of the unperturbed
/// normalization. The `p = l` coefficient is left to normalization and is
/// never present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstOrderWavefunction<T> {
    pub mode: Mode<T>,
    /// `a_p`, multiplying `J_p cos pθ`.
    pub cos: BTreeMap<u32, T>,
    /// `ā_p`, multiplying `J_p sin pθ`.
    pub sin: BTreeMap<u32, T>,
}

/// `ρ′²/R₀²`.
pub fn omega0<T: Real>(mode: &Mode<T>, r0: T) -> Result<T> {
    if r0 <= T::zero() || !r0.is_finite() {
        return Err(domain_err!("R₀ must be positive, got {r0}"));
    }
    Ok(mode.rho * mode.rho / (r0 * r0))
}

fn require_cosine_only<T: Real>(b: &FourierBoundary<T>, l: u32) -> Result<()> {
    if l != 0 && b.has_sine_terms() {
        return Err(Error::UnsupportedBoundary(format!(
            "sine coefficients present; l = {l} corrections assume a cosine-only boundary"
        )));
    }
    Ok(())
}

fn require_l<T: Real>(mode: &Mode<T>, nonzero: bool) -> Result<()> {
    match (nonzero, mode.l) {
        (true, 0) => Err(domain_err!("degenerate-pair correction requested for l = 0")),
        (false, l) if l != 0 => Err(domain_err!("l = 0 correction requested for l = {l}")),
        _ => Ok(()),
    }
}

/// Index bound of the sums over `n`: beyond it every coefficient factor is
/// zero.
fn sum_limit<T: Real>(c: &FourierOrder<T>, l: u32) -> u32 {
    c.n_max() as u32 + 2 * l
}

/// Running sum that remembers the size of its last nonzero term.
#[derive(Default, Clone, Copy)]
struct Acc<T> {
    sum: T,
    last: T,
}

impl<T: Real> Acc<T> {
    fn add(&mut self, term: T) {
        self.sum = self.sum + term;
        if term != T::zero() {
            self.last = term.abs();
        }
    }
}

/// ω₂ of an `l = 0` mode: `−ω₀ Σ_{n≥2} (Cₙ² + Sₙ²) ρ′ Jₙ(ρ′)/Jₙ′(ρ′)`.
/// Sine coefficients are allowed.
pub fn omega2_l0<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> Result<Truncated<T>> {
    require_l(mode, false)?;
    let w0 = omega0(mode, b.r0)?;
    let rho = mode.rho;
    let c = &b.first;
    let mut acc = Acc::<T>::default();
    for n in 2..=c.n_max() as u32 {
        let (cn, sn) = (c.c(n as usize), c.s(n as i64));
        let w = cn * cn + sn * sn;
        if w != T::zero() {
            acc.add(w * rho * bessel_j_ratio(n, rho));
        }
    }
    Ok(Truncated { value: -w0 * acc.sum, tail: w0 * acc.last })
}

fn omega1_ratio<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> T {
    let (rho2, l2) = (mode.rho * mode.rho, T::from_int((mode.l * mode.l) as i64));
    -b.first.c(2 * mode.l as usize) * (rho2 + l2) / (rho2 - l2)
}

/// ω₁ of the cos variety: `−ω₀ C₂ₗ (ρ′² + l²)/(ρ′² − l²)`.
pub fn omega1_cos<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> Result<T> {
    require_l(mode, true)?;
    require_cosine_only(b, mode.l)?;
    Ok(omega0(mode, b.r0)? * omega1_ratio(b, mode))
}

/// ω₁ of the sin variety: the negative of [`omega1_cos`].
pub fn omega1_sin<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> Result<T> {
    Ok(-omega1_cos(b, mode)?)
}

/// ω₂ of the cos variety of an `l ≥ 1` mode.
pub fn omega2_cos<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> Result<Truncated<T>> {
    omega2_pair(b, mode, Parity::Cos)
}

/// ω₂ of the sin variety of an `l ≥ 1` mode.
pub fn omega2_sin<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> Result<Truncated<T>> {
    omega2_pair(b, mode, Parity::Sin)
}

fn omega2_pair<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>, parity: Parity) -> Result<Truncated<T>> {
    require_l(mode, true)?;
    require_cosine_only(b, mode.l)?;
    let w0 = omega0(mode, b.r0)?;
    let c1 = &b.first;
    let c2 = &b.second;
    let c = |n: i64| c1.c(n.unsigned_abs() as usize);
    // +1 for the cos variety, −1 for sin
    let sg = match parity {
        Parity::Cos => T::one(),
        Parity::Sin => -T::one(),
    };
    let li = mode.l as i64;
    let l = T::from_int(li);
    let rho = mode.rho;
    let rho2 = rho * rho;
    let l2 = l * l;
    let d = rho2 - l2;
    let (two, half, quarter) = (T::lit(2.0), T::lit(0.5), T::lit(0.25));

    let w1 = sg * omega1_ratio(b, mode);
    let mut total = half * w1 * w1 * (rho2 - two * l2) / d - sg * (rho2 + l2) / d * c2.c(2 * mode.l as usize)
        - two * c2.c(0);
    if parity == Parity::Cos {
        let cl = c(li);
        if cl != T::zero() {
            total = total + rho2 * rho / d * eval_d2j(0, rho) / eval_dj(0, rho) * cl * cl;
        }
    }

    let limit = sum_limit(c1, mode.l) as i64;
    let mut quad = Acc::<T>::default();
    let mut cross = Acc::<T>::default();
    let mut b1 = Acc::<T>::default();
    let mut b2 = Acc::<T>::default();
    let mut b3 = Acc::<T>::default();
    for n in 1..=limit {
        let nf = T::from_int(n);
        let cn = c(n);
        if cn != T::zero() {
            let (up, down) = (c(n + 2 * li), c(2 * li - n));
            quad.add(cn * (two * cn + sg * (up + down)));
            cross.add(sg * cn * ((nf * l + two * l2) * up - (nf * l - two * l2) * down));
        }
        if n == li {
            continue;
        }
        let (up, down) = (c(n + li), c(n - li));
        if up == T::zero() && down == T::zero() {
            continue;
        }
        let s = up + sg * down;
        b1.add(s * s);
        b2.add(nf * l * (up * up - down * down));
        let v = (rho2 + nf * l) * up + sg * (rho2 - nf * l) * down;
        b3.add(v * v * bessel_j_ratio(n as u32, rho));
    }
    total = total + quarter * (rho2 - T::lit(3.0) * l2) / d * quad.sum + cross.sum / d
        - (half * rho2 * b1.sum + half * b2.sum + b3.sum / (two * rho)) / d;
    let tail = quarter * (rho2 - T::lit(3.0) * l2).abs() / d * quad.last
        + cross.last / d
        + (half * rho2 * b1.last + half * b2.last + b3.last / (two * rho)) / d;
    Ok(Truncated { value: w0 * total, tail: w0 * tail })
}

/// `(ω₁, ω₂)` for any mode, dispatching on `l` and parity.
pub fn corrections<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> Result<(T, Truncated<T>)> {
    if mode.l == 0 {
        return Ok((T::zero(), omega2_l0(b, mode)?));
    }
    match mode.parity {
        Parity::Cos => Ok((omega1_cos(b, mode)?, omega2_cos(b, mode)?)),
        Parity::Sin => Ok((omega1_sin(b, mode)?, omega2_sin(b, mode)?)),
    }
}

/// First-order coefficients `a_p` / `ā_p` of the wavefunction correction.
/// Entries whose coefficient factor vanishes are omitted.
pub fn first_order_coeffs<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>) -> Result<FirstOrderWavefunction<T>> {
    require_cosine_only(b, mode.l)?;
    let c1 = &b.first;
    let rho = mode.rho;
    let li = mode.l as i64;
    let mut out = FirstOrderWavefunction { mode: *mode, cos: BTreeMap::new(), sin: BTreeMap::new() };
    let p_max = (sum_limit(c1, mode.l)).min(MAX_ORDER - 1);
    let put = |map: &mut BTreeMap<u32, T>, p: u32, v: T| {
        if v != T::zero() {
            map.insert(p, v);
        }
    };
    if mode.l == 0 {
        let j0 = eval_j(0, rho);
        for p in 1..=p_max {
            let djp = eval_dj(p, rho);
            put(&mut out.cos, p, rho * c1.c(p as usize) * j0 / djp);
            put(&mut out.sin, p, rho * c1.s(p as i64) * j0 / djp);
        }
        return Ok(out);
    }
    let c = |n: i64| c1.c(n.unsigned_abs() as usize);
    let (rho2, l) = (rho * rho, T::from_int(li));
    let jl = eval_j(mode.l, rho);
    let two = T::lit(2.0);
    match mode.parity {
        Parity::Cos => {
            put(&mut out.cos, 0, rho * c(li) * jl / (two * eval_dj(0, rho)));
            for p in 1..=p_max as i64 {
                if p == li {
                    continue;
                }
                let pf = T::from_int(p);
                let br = (rho2 + pf * l) * c(p + li) + (rho2 - pf * l) * c(p - li);
                put(&mut out.cos, p as u32, jl / (two * rho * eval_dj(p as u32, rho)) * br);
            }
        }
        Parity::Sin => {
            for p in 1..=p_max as i64 {
                if p == li {
                    continue;
                }
                let pf = T::from_int(p);
                let br = (rho2 - pf * l) * c(p - li) - (rho2 + pf * l) * c(p + li);
                put(&mut out.sin, p as u32, jl / (two * rho * eval_dj(p as u32, rho)) * br);
            }
        }
    }
    Ok(out)
}

/// Corrected eigenvalue of one mode at the boundary's λ.
pub fn perturbed<T: Real>(b: &FourierBoundary<T>, mode: &Mode<T>, units: Units) -> Result<PerturbedEigenvalue<T>> {
    let (w1, w2) = corrections(b, mode)?;
    let w0 = omega0(mode, b.r0)?;
    let scale = match units {
        Units::Reduced => b.r0 * b.r0,
        Units::Absolute => T::one(),
    };
    let lam = b.lambda;
    let (w0, w1, w2v, tail) = (w0 * scale, w1 * scale, w2.value * scale, w2.tail * scale);
    Ok(PerturbedEigenvalue {
        mode: *mode,
        omega0: w0,
        omega1: w1,
        omega2: w2v,
        lambda: lam,
        omega_total: w0 + lam * w1 + lam * lam * w2v,
        truncation_tail: tail,
    })
}

/// The lowest `num_states` nontrivial Neumann circle modes, counting both
/// members of each `l ≥ 1` pair, ordered by `ρ′` then `(l, j, parity)`.
/// A pair straddling the cut is kept whole.
pub fn circle_modes<T: Real>(num_states: usize) -> Result<Vec<Mode<T>>> {
    if num_states == 0 || num_states > MAX_STATES {
        return Err(domain_err!("num_states must lie in 1..={MAX_STATES}, got {num_states}"));
    }
    let mut cand: Vec<Mode<T>> = Vec::new();
    // ρ′_{l,1} > l, so orders beyond the cut-off root cannot contribute
    let mut l = 0u32;
    loop {
        let first = Mode::<T>::new(l, 1, Parity::Cos)?;
        if cand.len() >= num_states {
            let mut rhos: Vec<T> = cand.iter().map(|m| m.rho).collect();
            rhos.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
            if first.rho > rhos[num_states - 1] {
                break;
            }
        }
        for j in 1..=num_states as u32 {
            let m = Mode::<T>::new(l, j, Parity::Cos)?;
            cand.push(m);
            if l > 0 {
                cand.push(Mode { parity: Parity::Sin, ..m });
            }
        }
        l += 1;
    }
    cand.sort_by(|a, b| {
        a.rho
            .partial_cmp(&b.rho)
            .expect("finite roots")
            .then(a.l.cmp(&b.l))
            .then(a.j.cmp(&b.j))
            .then(a.parity.cmp(&b.parity))
    });
    let mut keep = num_states;
    if keep < cand.len() && cand[keep - 1].l > 0 && cand[keep - 1].parity == Parity::Cos {
        keep += 1;
    }
    cand.truncate(keep);
    Ok(cand)
}

/// Perturbed Neumann spectrum: the lowest `num_states` circle states
/// (degenerate pairs both emitted) corrected to second order, sorted by
/// `ω_total` with ties broken by `(l, j, parity)`.
pub fn spectrum<T: Real>(
    b: &FourierBoundary<T>,
    bc: BoundaryCondition,
    num_states: usize,
    units: Units,
) -> Result<Vec<PerturbedEigenvalue<T>>> {
    if bc != BoundaryCondition::Neumann {
        return Err(Error::UnsupportedBoundary(
            "perturbative corrections are available for the Neumann condition only".into(),
        ));
    }
    let modes = circle_modes::<T>(num_states)?;
    let mut out = modes.iter().map(|m| perturbed(b, m, units)).collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| {
        a.omega_total
            .partial_cmp(&b.omega_total)
            .expect("finite eigenvalues")
            .then(a.mode.l.cmp(&b.mode.l))
            .then(a.mode.j.cmp(&b.mode.j))
            .then(a.mode.parity.cmp(&b.mode.parity))
    });
    out.truncate(num_states);
    Ok(out)
}

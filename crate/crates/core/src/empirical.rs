//! Semi-empirical supercircle spectrum: blend of the equal-area square and
//! circle spectra, plus the supercircle area and its approximate duality.
//!
//! States are paired one to one after sorting both reference spectra:
//! the `i`-th square slot goes with the `i`-th (degeneracy-expanded) circle
//! slot. The blend weight is `f(t) = (2 − t)³` on `1 ≤ t ≤ 2` and its dual
//! image on `t > 2`.

use serde::Serialize;

use crate::error::{domain_err, Result};
use crate::mode::BoundaryCondition;
use crate::scalar::Real;
use crate::specfun::{bessel_roots, gamma_fn, tabulated_index, BesselRoot};

/// Largest number of slots the level enumerations accept.
pub const MAX_LEVELS: usize = 200;
/// The published blend exponent.
pub const DEFAULT_EXPONENT: i32 = 3;

/// Supercircle exponent, with `t = ∞` (the square dual to `t = 1`) as a
/// value of its own.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Exponent<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> Exponent<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Exponent::Finite(t) => Some(t),
            Exponent::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SquareMode {
    pub nx: u32,
    pub ny: u32,
    pub bc: BoundaryCondition,
}

impl SquareMode {
    /// `n_x² + n_y²`.
    pub fn index_sum(&self) -> u32 {
        self.nx * self.nx + self.ny * self.ny
    }

    /// Unit-area square eigenvalue `(n_x² + n_y²)π²`.
    pub fn energy<T: Real>(&self) -> T {
        T::from_int(self.index_sum() as i64) * T::PI() * T::PI()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleMode<T> {
    pub l: u32,
    /// Tabulated index (the trivial root `x = 0` counts for `J₁` and `J₀′`).
    pub j: u32,
    pub bc: BoundaryCondition,
    pub rho: T,
    pub degeneracy: u32,
}

impl<T: Real> CircleMode<T> {
    /// Unit-area circle eigenvalue `πρ²`.
    pub fn energy(&self) -> T {
        T::PI() * self.rho * self.rho
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatePairing<T> {
    /// Slot index in both sorted lists.
    pub state_index: usize,
    /// Row-group index as tabulated: consecutive slots sharing both the
    /// square energy and the circle root form one level.
    pub level: usize,
    pub square: SquareMode,
    pub circle: CircleMode<T>,
}

fn check_count(count: usize) -> Result<()> {
    if count > MAX_LEVELS {
        return Err(domain_err!("at most {MAX_LEVELS} levels, got {count}"));
    }
    Ok(())
}

/// Square modes sorted by energy, ties by `n_x` ascending. Dirichlet needs
/// `n_x, n_y ≥ 1`; Neumann excludes the constant mode.
pub fn square_levels(bc: BoundaryCondition, count: usize) -> Result<Vec<SquareMode>> {
    check_count(count)?;
    let lo = match bc {
        BoundaryCondition::Dirichlet => 1,
        BoundaryCondition::Neumann => 0,
    };
    // every mode with n² ≤ bound is enumerated, and there are more than
    // `count` of them
    let bound = count as u32 + 2;
    let mut modes: Vec<SquareMode> = (lo..=bound)
        .flat_map(|nx| (lo..=bound).map(move |ny| SquareMode { nx, ny, bc }))
        .filter(|m| m.index_sum() > 0)
        .collect();
    modes.sort_by_key(|m| (m.index_sum(), m.nx));
    modes.truncate(count);
    Ok(modes)
}

/// Circle slots sorted by root; `l ≥ 1` roots appear twice in adjacent
/// slots. Only strictly positive roots are used.
pub fn circle_levels<T: Real>(bc: BoundaryCondition, count: usize) -> Result<Vec<CircleMode<T>>> {
    check_count(count)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let kind = bc.root_kind();
    let mut bound = T::lit(8.0);
    loop {
        let mut slots = Vec::new();
        // roots of order l exceed l
        let l_max = bound.to_u32().unwrap_or(0);
        for l in 0..=l_max {
            let per_l = (bound / T::PI()).to_usize().unwrap_or(0) + 2;
            let roots = bessel_roots::<T>(l, per_l, kind)?;
            debug_assert!(roots[per_l - 1] > bound);
            for (i, &rho) in roots.iter().enumerate().filter(|(_, r)| **r <= bound) {
                let j = tabulated_index(l, kind, i as u32 + 1);
                let degeneracy = if l == 0 { 1 } else { 2 };
                let m = CircleMode { l, j, bc, rho, degeneracy };
                slots.extend(std::iter::repeat(m).take(degeneracy as usize));
            }
        }
        if slots.len() >= count {
            slots.sort_by(|a, b| {
                a.rho.partial_cmp(&b.rho).expect("finite roots").then(a.l.cmp(&b.l))
            });
            slots.truncate(count);
            return Ok(slots);
        }
        bound = bound * T::lit(1.5);
    }
}

/// Index-by-index pairing of the first `count` square and circle slots.
pub fn match_states<T: Real>(bc: BoundaryCondition, count: usize) -> Result<Vec<StatePairing<T>>> {
    let squares = square_levels(bc, count)?;
    let circles = circle_levels::<T>(bc, count)?;
    let mut out: Vec<StatePairing<T>> = Vec::with_capacity(count);
    for (i, (square, circle)) in squares.into_iter().zip(circles).enumerate() {
        let level = match out.last() {
            None => 0,
            Some(p) if p.square.index_sum() == square.index_sum() && p.circle.rho == circle.rho => p.level,
            Some(p) => p.level + 1,
        };
        out.push(StatePairing { state_index: i, level, square, circle });
    }
    Ok(out)
}

/// Area of `|x|ᵗ + |y|ᵗ ≤ 1`, `4Γ(1+1/t)²/Γ(1+2/t)`, written through the
/// duplication formula so that it stays finite for very large `t`.
pub fn supercircle_area<T: Real>(t: T) -> Result<T> {
    if !(t >= T::one()) {
        return Err(domain_err!("supercircle exponent must be ≥ 1, got {t}"));
    }
    if t.is_infinite() {
        return Ok(T::lit(4.0));
    }
    let u = t.recip();
    let two = T::lit(2.0);
    Ok(T::lit(4.0) * T::PI().sqrt() * gamma_fn(T::one() + u)? / (two.powf(two * u) * gamma_fn(T::lit(0.5) + u)?))
}

/// Area at a possibly infinite exponent.
pub fn exponent_area<T: Real>(t: Exponent<T>) -> Result<T> {
    match t {
        Exponent::Finite(t) => supercircle_area(t),
        Exponent::Infinity => Ok(T::lit(4.0)),
    }
}

/// `t′` with `1/t + 1/t′ = 1`; `t = 1` maps to infinity.
pub fn dual_exponent<T: Real>(t: Exponent<T>) -> Result<Exponent<T>> {
    match t {
        Exponent::Infinity => Ok(Exponent::Finite(T::one())),
        Exponent::Finite(t) if !(t >= T::one()) => Err(domain_err!("exponent must be ≥ 1, got {t}")),
        Exponent::Finite(t) if t == T::one() => Ok(Exponent::Infinity),
        Exponent::Finite(t) => Ok(Exponent::Finite(t / (t - T::one()))),
    }
}

/// Relative failure of the duality scaling, `(α²A(t) − A(t′))/A(t′)` with
/// `α = 2^{1/t − 1/2}`, on `1 ≤ t ≤ 2`.
pub fn duality_deviation<T: Real>(t: T) -> Result<T> {
    if !(t >= T::one() && t <= T::lit(2.0)) {
        return Err(domain_err!("duality deviation is defined on [1, 2], got {t}"));
    }
    let alpha2 = T::lit(2.0).powf(T::lit(2.0) / t - T::one());
    let dual_area = exponent_area(dual_exponent(Exponent::Finite(t))?)?;
    Ok((alpha2 * supercircle_area(t)? - dual_area) / dual_area)
}

/// Location and value of the largest `|Δ|` on `[1, 2]`.
pub fn max_duality_deviation<T: Real>() -> Result<(T, T)> {
    let n = 200;
    let at = |i: usize| T::one() + T::from_int(i as i64) / T::from_int(n);
    let mut best = (T::one(), T::zero());
    for i in 0..=n as usize {
        let d = duality_deviation(at(i))?.abs();
        if d > best.1 {
            best = (at(i), d);
        }
    }
    let step = T::one() / T::from_int(n);
    let (mut a, mut b) = ((best.0 - step).max(T::one()), (best.0 + step).min(T::lit(2.0)));
    let g = T::lit(0.618_033_988_749_894_8);
    let f = |t: T| duality_deviation(t).map(|d| -d.abs());
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > T::lit(1e-10).max(T::epsilon() * T::lit(16.0)) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    let t = (a + b) * T::lit(0.5);
    Ok((t, duality_deviation(t)?))
}

/// Square weight of the blend, `f(t) = (2 − t)ⁿ` for `t ≤ 2` and
/// `((1 − 2/t)/(1 − 1/t))ⁿ` above.
pub fn blend_weight<T: Real>(t: Exponent<T>, exponent: i32) -> Result<T> {
    match t {
        Exponent::Infinity => Ok(T::one()),
        Exponent::Finite(t) if !(t >= T::one()) => Err(domain_err!("exponent must be ≥ 1, got {t}")),
        Exponent::Finite(t) if t <= T::lit(2.0) => Ok((T::lit(2.0) - t).powi(exponent)),
        Exponent::Finite(t) => {
            let u = t.recip();
            Ok(((T::one() - T::lit(2.0) * u) / (T::one() - u)).powi(exponent))
        }
    }
}

/// Blended eigenvalue of one paired slot on the `a = 1` supercircle.
pub fn blend<T: Real>(pair: &StatePairing<T>, t: Exponent<T>, exponent: i32) -> Result<T> {
    let f = blend_weight(t, exponent)?;
    let es = pair.square.energy::<T>();
    let ec = pair.circle.energy();
    Ok((f * es + (T::one() - f) * ec) / exponent_area(t)?)
}

/// Semi-empirical eigenvalue of slot `state_index` at exponent `t`, with
/// the published weight exponent.
pub fn empirical_omega<T: Real>(t: T, state_index: usize, bc: BoundaryCondition) -> Result<T> {
    empirical_omega_with(Exponent::Finite(t), state_index, bc, DEFAULT_EXPONENT)
}

pub fn empirical_omega_with<T: Real>(
    t: Exponent<T>,
    state_index: usize,
    bc: BoundaryCondition,
    exponent: i32,
) -> Result<T> {
    if state_index >= MAX_LEVELS {
        return Err(domain_err!("state index must be below {MAX_LEVELS}, got {state_index}"));
    }
    let pairs = match_states::<T>(bc, state_index + 1)?;
    blend(&pairs[state_index], t, exponent)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalLevel<T> {
    pub omega: T,
    pub degeneracy: usize,
    /// Slots merged into this level.
    pub states: Vec<StatePairing<T>>,
}

/// The lowest `num_levels` distinct empirical eigenvalues at `t`, adjacent
/// slots with equal ω merged.
pub fn empirical_table<T: Real>(t: T, bc: BoundaryCondition, num_levels: usize) -> Result<Vec<EmpiricalLevel<T>>> {
    let t = Exponent::Finite(t);
    let mut count = (2 * num_levels + 2).min(MAX_LEVELS);
    loop {
        let pairs = match_states::<T>(bc, count)?;
        let mut levels: Vec<EmpiricalLevel<T>> = Vec::new();
        for p in pairs {
            let w = blend(&p, t, DEFAULT_EXPONENT)?;
            match levels.last_mut() {
                Some(lv) if (lv.omega - w).abs() <= T::lit(1e-12) * w.abs() => {
                    lv.degeneracy += 1;
                    lv.states.push(p);
                }
                _ => levels.push(EmpiricalLevel { omega: w, degeneracy: 1, states: vec![p] }),
            }
        }
        // the last level may be cut short by the slot limit
        if levels.len() > num_levels {
            levels.truncate(num_levels);
            return Ok(levels);
        }
        if count == MAX_LEVELS {
            return Err(domain_err!("fewer than {num_levels} levels within {MAX_LEVELS} slots"));
        }
        count = (count * 2).min(MAX_LEVELS);
    }
}

/// Root descriptor of a circle slot.
pub fn circle_root<T: Real>(m: &CircleMode<T>) -> BesselRoot<T> {
    BesselRoot { l: m.l, j: m.j, kind: m.bc.root_kind(), value: m.rho }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryCondition::{Dirichlet, Neumann};

    #[test]
    fn areas() {
        assert!((supercircle_area(2.0f64).unwrap() - std::f64::consts::PI).abs() < 1e-13);
        assert!((supercircle_area(1.0f64).unwrap() - 2.0).abs() < 1e-13);
        assert!((supercircle_area(1.5f64).unwrap() - 2.73786).abs() < 1e-4);
        assert!((supercircle_area(1e6f64).unwrap() - 4.0).abs() < 1e-4);
        assert!(supercircle_area(0.9f64).is_err());
    }

    #[test]
    fn area_matches_gamma_ratio_form() {
        for &t in &[1.0f64, 1.25, 1.5, 2.0, 3.0, 7.5] {
            let direct = 2.0 / t * gamma_fn(1.0 / t).unwrap().powi(2) / gamma_fn(2.0 / t).unwrap();
            assert!((supercircle_area(t).unwrap() - direct).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn duals() {
        let d = |t: f64| dual_exponent(Exponent::Finite(t)).unwrap().finite().unwrap();
        assert_eq!(d(2.0), 2.0);
        assert!((d(1.5) - 3.0).abs() < 1e-14);
        assert!((d(1.2485) - 5.0242).abs() < 1e-3);
        assert_eq!(dual_exponent(Exponent::Finite(1.0f64)).unwrap(), Exponent::Infinity);
        assert_eq!(dual_exponent(Exponent::<f64>::Infinity).unwrap(), Exponent::Finite(1.0));
        for i in 1..=100 {
            let t = 1.0 + i as f64 / 100.0;
            assert!((d(d(t)) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn duality_endpoints_and_peak() {
        assert!(duality_deviation(1.0f64).unwrap().abs() < 1e-12);
        assert!(duality_deviation(2.0f64).unwrap().abs() < 1e-12);
        let (t, d) = max_duality_deviation::<f64>().unwrap();
        assert!((t - 1.2485).abs() < 1e-3, "{t}");
        assert!(d.abs() <= 0.033 && d.abs() > 0.03);
        assert!(duality_deviation(2.5f64).is_err());
    }

    #[test]
    fn square_orders() {
        let d = square_levels(Dirichlet, 2).unwrap();
        assert_eq!((d[0].nx, d[0].ny, d[1].nx, d[1].ny), (1, 1, 1, 2));
        let n = square_levels(Neumann, 9).unwrap();
        assert_eq!((n[0].nx, n[0].ny), (0, 1));
        assert_eq!((n[1].nx, n[1].ny), (1, 0));
        assert_eq!((n[2].nx, n[2].ny), (1, 1));
        assert_eq!((n[8].nx, n[8].ny, n[8].index_sum()), (0, 3, 9));
        assert!(square_levels(Neumann, 201).is_err());
        let big = square_levels(Dirichlet, 200).unwrap();
        assert!(big.windows(2).all(|w| w[0].index_sum() <= w[1].index_sum()));
    }

    #[test]
    fn circle_slots() {
        let d = circle_levels::<f64>(Dirichlet, 3).unwrap();
        assert!((d[0].rho - 2.40483).abs() < 1e-5);
        assert!((d[1].rho - 3.83171).abs() < 1e-5 && d[1].rho == d[2].rho);
        assert_eq!((d[1].l, d[1].j), (1, 2));
        let n = circle_levels::<f64>(Neumann, 5).unwrap();
        assert!((n[0].rho - 1.8412).abs() < 1e-4 && n[0].rho == n[1].rho);
        assert!((n[2].rho - 3.0542).abs() < 1e-4);
        assert_eq!((n[4].l, n[4].j), (0, 2));
        assert!((n[4].rho - 3.8317).abs() < 1e-4);
        let big = circle_levels::<f64>(Neumann, 200).unwrap();
        assert_eq!(big.len(), 200);
        assert!(big.windows(2).all(|w| w[0].rho <= w[1].rho));
    }

    #[test]
    fn tabulated_pairings() {
        let d = match_states::<f64>(Dirichlet, 10).unwrap();
        assert_eq!((d[0].square.nx, d[0].circle.l, d[0].circle.j), (1, 0, 1));
        let third: Vec<_> = d.iter().filter(|p| p.level == 3).collect();
        assert_eq!((third[0].square.nx, third[0].square.ny, third[0].circle.l, third[0].circle.j), (1, 3, 2, 1));
        let fourth: Vec<_> = d.iter().filter(|p| p.level == 4).collect();
        assert_eq!((fourth[0].square.nx, fourth[0].square.ny, fourth[0].circle.l, fourth[0].circle.j), (3, 1, 0, 2));
        let n = match_states::<f64>(Neumann, 9).unwrap();
        let second: Vec<_> = n.iter().filter(|p| p.level == 2).collect();
        assert_eq!((second[0].square.nx, second[0].square.ny, second[0].circle.l), (0, 2, 2));
        let third: Vec<_> = n.iter().filter(|p| p.level == 3).collect();
        assert_eq!((third[0].square.nx, third[0].square.ny, third[0].circle.l, third[0].circle.j), (2, 0, 0, 2));
    }

    #[test]
    fn ground_states() {
        assert!((empirical_omega(2.0f64, 0, Dirichlet).unwrap() - 5.7832).abs() < 1e-4);
        assert!((empirical_omega(1.5f64, 0, Dirichlet).unwrap() - 6.7077).abs() < 1e-3);
        assert!((empirical_omega(1.5f64, 0, Neumann).unwrap() - 3.8542).abs() < 1e-3);
        assert!(empirical_omega(0.5f64, 0, Neumann).is_err());
    }

    #[test]
    fn weights_and_continuity() {
        for i in 0..=100 {
            let t = 1.0 + i as f64 / 100.0;
            let f = blend_weight(Exponent::Finite(t), 3).unwrap();
            assert!((0.0..=1.0).contains(&f));
            let tp = 2.0 + i as f64;
            let g = blend_weight(Exponent::Finite(tp), 3).unwrap();
            assert!((0.0..1.0).contains(&g));
        }
        for s in 0..10 {
            let lo = empirical_omega(2.0f64, s, Neumann).unwrap();
            let hi = empirical_omega(2.0f64 + 1e-15, s, Neumann).unwrap();
            assert!((lo - hi).abs() < 1e-9 * lo);
        }
    }

    #[test]
    fn circle_limit_table() {
        let t = empirical_table(2.0f64, Dirichlet, 2).unwrap();
        assert!((t[0].omega - 5.7832).abs() < 1e-4 && t[0].degeneracy == 1);
        assert!((t[1].omega - 14.6820).abs() < 1e-4 && t[1].degeneracy == 2);
    }
}

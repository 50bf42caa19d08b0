//! Independent numerical eigensolver for star-shaped domains.
//!
//! The trial space `span{Jₚ(kr) cos pθ, Jₚ(kr) sin pθ}` satisfies the
//! Helmholtz equation exactly; an eigenvalue is a `k` at which some
//! combination also satisfies the boundary condition. Following the
//! subspace-angle formulation, `σ(k)` is the smallest singular value of the
//! boundary block of an orthonormal basis of the trial space sampled on
//! boundary and interior points. `σ(k)` dips to (near) zero at eigenvalues
//! and stays `O(1)` elsewhere, so a sweep over `k` followed by golden-section
//! refinement of each dip locates the spectrum. Boundaries with reflection
//! symmetry are split into independent classes so that nearly degenerate
//! eigenvalues from different classes do not merge.

mod classes;
mod mps;

use nalgebra::RealField;
use rayon::prelude::*;
use serde::Serialize;

pub use classes::{Angular, SymmetryClass};

use crate::boundary::StarCurve;
use crate::error::{Error, Result};
use crate::mode::BoundaryCondition;
use crate::scalar::Real;

/// Residual certificate below which a located minimum counts as converged.
pub const CONVERGED_SIGMA: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Trial functions per symmetry class.
    pub basis_size: usize,
    pub boundary_points: usize,
    pub interior_points: usize,
    pub k_min: f64,
    pub k_max: f64,
    pub sweep_step: f64,
    pub refine_tol: f64,
    /// Grid minima above this level are ignored.
    pub detect_threshold: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            basis_size: 40,
            boundary_points: 160,
            interior_points: 60,
            k_min: 0.5,
            k_max: 6.0,
            sweep_step: 0.01,
            refine_tol: 1e-7,
            detect_threshold: 0.2,
        }
    }
}

impl OracleConfig {
    pub fn window(self, k_min: f64, k_max: f64) -> Self {
        Self { k_min, k_max, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.basis_size > 0
            && self.boundary_points >= 2 * self.basis_size
            && self.k_min > 0.0
            && self.k_max > self.k_min
            && self.sweep_step > 0.0
            && self.refine_tol > 0.0
            && self.refine_tol <= 1e-6;
        if ok {
            Ok(())
        } else {
            Err(Error::Solver(format!("invalid oracle configuration {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult<T> {
    pub k: T,
    pub omega: T,
    pub sigma_min: T,
    pub symmetry_class: SymmetryClass,
    /// Rank retained from the trial space at `k` (a low value flags an
    /// ill-conditioned basis).
    pub basis_rank: usize,
    pub converged: bool,
}

impl<T: Real> OracleResult<T> {
    pub fn multiplicity(&self) -> u32 {
        self.symmetry_class.multiplicity
    }
}

/// Eigenvalues `ω = k²` with multiplicity, ascending.
pub fn expand_levels<T: Real>(results: &[OracleResult<T>]) -> Vec<T> {
    let mut out: Vec<T> = results
        .iter()
        .flat_map(|r| std::iter::repeat(r.omega).take(r.multiplicity() as usize))
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    out
}

struct ClassSolver<'a, T> {
    class: SymmetryClass,
    bc: BoundaryCondition,
    basis: Vec<(u32, crate::mode::Parity)>,
    pts: mps::Collocation<T>,
    config: &'a OracleConfig,
}

impl<'a, T: Real + RealField> ClassSolver<'a, T> {
    fn new<C: StarCurve<T> + ?Sized>(
        curve: &C,
        class: SymmetryClass,
        bc: BoundaryCondition,
        config: &'a OracleConfig,
    ) -> Self {
        let pts = mps::collocation(curve, &class, config.boundary_points, config.interior_points);
        Self { class, bc, basis: class.basis(config.basis_size), pts, config }
    }

    fn sigma(&self, k: T) -> (T, usize) {
        mps::sigma(&self.pts, self.bc, &self.basis, k)
    }

    fn grid(&self, lo: T, hi: T) -> Vec<T> {
        let step = T::lit(self.config.sweep_step);
        let n = num_traits::Float::ceil((hi - lo) / step).to_usize().unwrap_or(0).max(2);
        (0..=n).map(|i| lo + (hi - lo) * T::from_int(i as i64) / T::from_int(n as i64)).collect()
    }

    /// Golden-section minimization of σ on `[a, b]`.
    fn refine(&self, mut a: T, mut b: T) -> OracleResult<T> {
        let inv_phi = T::lit(0.618_033_988_749_894_8);
        let tol = T::lit(self.config.refine_tol);
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = self.sigma(c).0;
        let mut fd = self.sigma(d).0;
        while b - a > tol {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = self.sigma(c).0;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = self.sigma(d).0;
            }
        }
        let k = (a + b) * T::lit(0.5);
        let (s, rank) = self.sigma(k);
        OracleResult {
            k,
            omega: k * k,
            sigma_min: s,
            symmetry_class: self.class,
            basis_rank: rank,
            converged: s < T::lit(CONVERGED_SIGMA),
        }
    }

    fn sweep(&self, lo: T, hi: T) -> Vec<OracleResult<T>> {
        let ks = self.grid(lo, hi);
        let sig: Vec<T> = ks.par_iter().map(|&k| self.sigma(k).0).collect();
        let threshold = T::lit(self.config.detect_threshold);
        let brackets: Vec<(T, T)> = (1..ks.len() - 1)
            .filter(|&i| sig[i] < sig[i - 1] && sig[i] <= sig[i + 1] && sig[i] < threshold)
            .map(|i| (ks[i - 1], ks[i + 1]))
            .collect();
        let mut found: Vec<OracleResult<T>> =
            brackets.par_iter().map(|&(a, b)| self.refine(a, b)).collect();
        found.sort_by(|a, b| a.k.partial_cmp(&b.k).expect("finite k"));
        let tol = T::lit(self.config.refine_tol * 10.0);
        found.dedup_by(|b, a| (b.k - a.k) < tol);
        found
    }
}

fn sort_results<T: Real>(v: &mut [OracleResult<T>]) {
    v.sort_by(|a, b| {
        a.k.partial_cmp(&b.k)
            .expect("finite k")
            .then_with(|| a.symmetry_class.cmp(&b.symmetry_class))
    });
}

/// All minima of `σ(k)` in `[k_min, k_max]`, over every symmetry class of
/// the curve, ascending in `k`. Unconverged minima are reported with
/// `converged = false`.
pub fn find_eigenvalues<T, C>(curve: &C, bc: BoundaryCondition, config: &OracleConfig) -> Result<Vec<OracleResult<T>>>
where
    T: Real + RealField,
    C: StarCurve<T> + ?Sized,
{
    config.validate()?;
    let classes = SymmetryClass::partition(curve.symmetry());
    find_in_classes(curve, bc, &classes, config)
}

/// As [`find_eigenvalues`], restricted to the given classes.
pub fn find_in_classes<T, C>(
    curve: &C,
    bc: BoundaryCondition,
    classes: &[SymmetryClass],
    config: &OracleConfig,
) -> Result<Vec<OracleResult<T>>>
where
    T: Real + RealField,
    C: StarCurve<T> + ?Sized,
{
    config.validate()?;
    let (lo, hi) = (T::lit(config.k_min), T::lit(config.k_max));
    let mut all: Vec<OracleResult<T>> = classes
        .par_iter()
        .flat_map(|&class| ClassSolver::new(curve, class, bc, config).sweep(lo, hi))
        .collect();
    if all.is_empty() {
        return Err(Error::Solver(format!(
            "no σ(k) minima in [{}, {}]",
            config.k_min, config.k_max
        )));
    }
    sort_results(&mut all);
    Ok(all)
}

/// The σ(k) minimum closest to `k_guess` in `[0.95, 1.05]·k_guess`,
/// optionally restricted to one symmetry class. When no interior minimum
/// exists the window is widened once to `[0.9, 1.1]·k_guess`. The result
/// carries its own `converged` flag; a located but unconverged minimum is
/// still returned.
pub fn eigenvalue_near<T, C>(
    curve: &C,
    bc: BoundaryCondition,
    k_guess: T,
    class: Option<SymmetryClass>,
    config: &OracleConfig,
) -> Result<OracleResult<T>>
where
    T: Real + RealField,
    C: StarCurve<T> + ?Sized,
{
    config.validate()?;
    let classes = match class {
        Some(c) => vec![c],
        None => SymmetryClass::partition(curve.symmetry()),
    };
    let local = OracleConfig { sweep_step: config.sweep_step.min(k_guess.as_f64() * 0.002), ..*config };
    for width in [0.05, 0.10] {
        let lo = k_guess * T::lit(1.0 - width);
        let hi = k_guess * T::lit(1.0 + width);
        let best = classes
            .par_iter()
            .flat_map(|&c| ClassSolver::new(curve, c, bc, &local).sweep(lo, hi))
            .min_by(|a, b| {
                let da = num_traits::Float::abs(a.k - k_guess);
                let db = num_traits::Float::abs(b.k - k_guess);
                da.partial_cmp(&db).expect("finite k")
            });
        if let Some(r) = best {
            return Ok(r);
        }
    }
    Err(Error::Solver(format!("no σ(k) minimum within 10% of k = {k_guess}")))
}

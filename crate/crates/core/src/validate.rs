//! Invariant suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::boundary::{
    ellipse_boundary, supercircle_boundary, supercircle_c4_second_order, validate_equal_area, Circle,
    EllipseSpec, FourierBoundary, StarCurve, SupercircleSpec, EQUAL_AREA_FLAG,
};
use crate::empirical::{duality_deviation, empirical_omega, empirical_table, max_duality_deviation};
use crate::error::Error;
use crate::mode::BoundaryCondition::{Dirichlet, Neumann};
use crate::mode::Parity;
use crate::oracle::{eigenvalue_near, expand_levels, find_eigenvalues, OracleConfig, SymmetryClass};
use crate::perturb::{circle_modes, corrections, spectrum, Units};
use crate::specfun::{bessel_j, bessel_j_deriv, bessel_root, bessel_roots, gamma_fn, internal_index, RootKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    Boundary,
    Perturb,
    Empirical,
    Oracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Specfun, Suite::Boundary, Suite::Perturb, Suite::Empirical, Suite::Oracle];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Specfun => "specfun",
            Suite::Boundary => "boundary",
            Suite::Perturb => "perturb",
            Suite::Empirical => "empirical",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "specfun" => Ok(Suite::Specfun),
            "boundary" => Ok(Suite::Boundary),
            "perturb" => Ok(Suite::Perturb),
            "empirical" => Ok(Suite::Empirical),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            other => Err(Error::Spec(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Observed error (or statistic) compared against `tolerance`.
    pub value: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    /// Passes when `err ≤ tol`.
    fn within(&mut self, name: impl Into<String>, err: f64, tol: f64) {
        self.0.push(Check { name: name.into(), passed: err <= tol, value: err, tolerance: tol, detail: String::new() });
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed: ok,
            value: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            detail: detail.into(),
        });
    }

    /// Records a failed computation instead of aborting the suite.
    fn attempt<T>(&mut self, name: &str, r: crate::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.holds(name, false, e.to_string());
                None
            }
        }
    }

    fn report(self, suite: Suite) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), passed: self.0.iter().all(|c| c.passed), checks: self.0 }
    }
}

pub const DIRICHLET_ROOTS: [(u32, u32, f64); 6] =
    [(0, 1, 2.40483), (1, 2, 3.83171), (2, 1, 5.13562), (0, 2, 5.52008), (3, 1, 6.38016), (1, 3, 7.01559)];
pub const NEUMANN_ROOTS: [(u32, u32, f64); 5] =
    [(1, 1, 1.8412), (2, 1, 3.0542), (0, 2, 3.8317), (3, 1, 4.2012), (4, 1, 5.3175)];

fn specfun_suite() -> SuiteReport {
    let mut c = Checks::default();
    for (l, jp, want) in DIRICHLET_ROOTS {
        let j = internal_index(l, RootKind::FunctionZero, jp).unwrap_or(0);
        if let Some(r) = c.attempt("dirichlet roots", bessel_root::<f64>(l, j, RootKind::FunctionZero)) {
            c.within(format!("listed rho({l},{jp})"), (r.value - want).abs(), 1e-5);
        }
    }
    for (l, jp, want) in NEUMANN_ROOTS {
        let j = internal_index(l, RootKind::DerivativeZero, jp).unwrap_or(0);
        if let Some(r) = c.attempt("neumann roots", bessel_root::<f64>(l, j, RootKind::DerivativeZero)) {
            c.within(format!("listed rho'({l},{jp})"), (r.value - want).abs(), 1e-4);
        }
    }
    // Bessel ODE x²J″ + xJ′ + (x² − l²)J = 0
    let mut worst = 0.0f64;
    for l in 0..8u32 {
        for i in 1..40 {
            let x = 0.37 * i as f64;
            let (j, d1, d2) = (
                bessel_j(l, x).unwrap_or(f64::NAN),
                bessel_j_deriv(l, x, 1).unwrap_or(f64::NAN),
                bessel_j_deriv(l, x, 2).unwrap_or(f64::NAN),
            );
            worst = worst.max((x * x * d2 + x * d1 + (x * x - (l * l) as f64) * j).abs());
        }
    }
    c.within("bessel ode residual", worst, 1e-10);
    let roots = bessel_roots::<f64>(3, 10, RootKind::FunctionZero).unwrap_or_default();
    let residual = roots.iter().map(|&r| bessel_j(3, r).unwrap_or(1.0).abs()).fold(0.0, f64::max);
    c.within("root residual J3", residual, 1e-12);
    if let Some(g) = c.attempt("gamma", gamma_fn(0.5f64)) {
        c.within("gamma(1/2) = sqrt(pi)", (g - std::f64::consts::PI.sqrt()).abs(), 1e-13);
    }
    c.report(Suite::Specfun)
}

/// Equal-area checks of a single expansion, as reported for fixtures.
pub fn boundary_checks(name: &str, b: &FourierBoundary<f64>) -> Vec<Check> {
    let rep = validate_equal_area(b);
    let lam3 = b.lambda.abs().powi(3);
    vec![
        Check {
            name: format!("{name} equal-area constraint"),
            passed: rep.passed,
            value: rep.constraint_residual,
            tolerance: EQUAL_AREA_FLAG,
            detail: String::new(),
        },
        Check {
            name: format!("{name} reconstructed area"),
            passed: rep.area_residual <= 10.0 * lam3 + 1e-12,
            value: rep.area_residual,
            tolerance: 10.0 * lam3 + 1e-12,
            detail: String::new(),
        },
    ]
}

fn boundary_suite() -> SuiteReport {
    let mut c = Checks::default();
    if let Some(b) = c.attempt("supercircle", supercircle_boundary(SupercircleSpec::new(2.0f64), 64)) {
        c.within("C0(2) = -0.0017552", (b.second.c(0) + 0.0017552).abs(), 1e-6);
        c.within("C4(2) = 0.0357983", (b.second.c(4) - 0.0357983).abs(), 1e-6);
        c.within("C4(2) numeric vs closed form", (b.second.c(4) - supercircle_c4_second_order::<f64>()).abs(), 1e-8);
    }
    for t in [1.2, 1.5, 2.5, 2.8] {
        if let Some(b) = c.attempt("supercircle", supercircle_boundary(SupercircleSpec::new(t), 64)) {
            c.within(format!("supercircle t={t} constraint"), validate_equal_area(&b).constraint_residual, 1e-8);
        }
    }
    if let Some(b) = c.attempt("ellipse", ellipse_boundary(EllipseSpec { a: 1.25f64, b: 0.8 })) {
        c.within("ellipse constraint", validate_equal_area(&b).constraint_residual, 1e-15);
        let mut broken = b.clone();
        broken.second.set_cos(0, 0.0);
        let rep = validate_equal_area(&broken);
        c.holds("corrupted ellipse flagged", !rep.passed && (rep.constraint_residual - 1.0).abs() < 1e-12, "");
    }
    c.report(Suite::Boundary)
}

fn perturb_suite() -> SuiteReport {
    let mut c = Checks::default();
    let fixtures: Vec<FourierBoundary<f64>> = [
        supercircle_boundary(SupercircleSpec::new(1.8), 64),
        supercircle_boundary(SupercircleSpec::new(2.5), 64),
        ellipse_boundary(EllipseSpec::from_lambda(1.0, 0.1)),
    ]
    .into_iter()
    .filter_map(|b| c.attempt("fixture", b))
    .collect();
    let modes = c.attempt("modes", circle_modes::<f64>(20)).unwrap_or_default();
    let (mut l0, mut trace) = (0.0f64, 0.0f64);
    for b in &fixtures {
        for m in &modes {
            let Some((w1, _)) = c.attempt("corrections", corrections(b, m)) else { continue };
            if m.l == 0 {
                l0 = l0.max(w1.abs());
            } else if m.parity == Parity::Cos {
                let sin = crate::perturb::Mode { parity: Parity::Sin, ..*m };
                if let Some((w1s, _)) = c.attempt("corrections", corrections(b, &sin)) {
                    trace = trace.max((w1 + w1s).abs());
                }
            }
        }
    }
    c.within("l=0 first order vanishes", l0, 0.0);
    c.within("pair trace at first order", trace, 1e-14);
    if let Some(b) = fixtures.first() {
        let odd = modes
            .iter()
            .filter(|m| m.l > 0 && (2 * m.l) % 4 != 0)
            .filter_map(|m| corrections(b, m).ok())
            .map(|(w1, _)| w1.abs())
            .fold(0.0, f64::max);
        c.within("supercircle selection rule", odd, 0.0);
    }
    if let Some(b) = fixtures.get(2) {
        let s = c.attempt("spectrum", spectrum(&b.with_lambda(0.0), Neumann, 9, Units::Reduced));
        if let Some(s) = s {
            let err = s.iter().map(|e| (e.omega_total - e.omega0).abs()).fold(0.0, f64::max);
            c.within("lambda=0 reproduces circle", err, 0.0);
        }
    }
    c.report(Suite::Perturb)
}

/// Blend levels of the t = 1.5 supercircle, (value, degeneracy), Dirichlet
/// then Neumann.
pub const SUPERCIRCLE_BLEND_LEVELS: [[(f64, usize); 7]; 2] = [
    [(6.7077, 1), (16.9942, 2), (30.0858, 1), (30.9870, 1), (35.1002, 1), (46.7285, 2), (57.0773, 2)],
    [(3.8542, 2), (10.2669, 1), (11.1682, 1), (16.5436, 1), (19.9743, 2), (31.9947, 1), (32.4453, 1)],
];

/// Reference numerical levels of the t = 1.5 supercircle, Dirichlet then
/// Neumann.
pub const SUPERCIRCLE_SOLVER_LEVELS: [[f64; 7]; 2] = [
    [6.7178, 16.9954, 29.0001, 32.0603, 35.0087, 46.4754, 57.1111],
    [3.8477, 9.3361, 12.1291, 16.5417, 20.0064, 31.4117, 32.6240],
];

fn empirical_suite() -> SuiteReport {
    let mut c = Checks::default();
    for (bc, rows) in [Dirichlet, Neumann].into_iter().zip(SUPERCIRCLE_BLEND_LEVELS) {
        if let Some(t) = c.attempt("t=1.5 blend", empirical_table(1.5f64, bc, 7)) {
            let err = t.iter().zip(rows).map(|(l, (w, _))| (l.omega - w).abs()).fold(0.0, f64::max);
            c.within(format!("t=1.5 blend levels {bc}"), err, 1e-3);
            let degs: Vec<usize> = t.iter().map(|l| l.degeneracy).collect();
            let want: Vec<usize> = rows.iter().map(|r| r.1).collect();
            c.holds(format!("t=1.5 blend degeneracy {bc}"), degs == want, format!("{degs:?}"));
        }
    }
    let ends = duality_deviation(1.0f64).unwrap_or(1.0).abs().max(duality_deviation(2.0f64).unwrap_or(1.0).abs());
    c.within("duality exact at t=1,2", ends, 1e-12);
    if let Some((t, d)) = c.attempt("duality", max_duality_deviation::<f64>()) {
        c.within("duality peak location", (t - 1.2485).abs(), 0.01);
        c.holds("duality peak size", (0.025..=0.035).contains(&d.abs()), format!("{d}"));
    }
    let mut limit = 0.0f64;
    for s in 0..20 {
        let (Ok(w2), Ok(w1)) = (empirical_omega(2.0f64, s, Neumann), empirical_omega(1.0f64, s, Neumann)) else {
            continue;
        };
        let pairs = crate::empirical::match_states::<f64>(Neumann, s + 1).unwrap_or_default();
        if let Some(p) = pairs.last() {
            limit = limit.max((w2 - p.circle.energy() / std::f64::consts::PI).abs() / w2);
            limit = limit.max((w1 - p.square.energy::<f64>() / 2.0).abs() / w1);
        }
    }
    c.within("square and circle limits", limit, 1e-14);
    c.report(Suite::Empirical)
}

fn oracle_suite() -> SuiteReport {
    let mut c = Checks::default();
    let cfg = OracleConfig::default();
    for bc in [Dirichlet, Neumann] {
        let kind = bc.root_kind();
        let found = c.attempt("circle", find_eigenvalues(&Circle { radius: 1.0f64 }, bc, &cfg.window(0.5, 7.2)));
        let Some(found) = found else { continue };
        let got = expand_levels(&found);
        let mut want: Vec<f64> = (0..12u32)
            .flat_map(|l| {
                let mult = if l == 0 { 1 } else { 2 };
                bessel_roots::<f64>(l, 3, kind)
                    .unwrap_or_default()
                    .into_iter()
                    .flat_map(move |r| std::iter::repeat(r * r).take(mult))
            })
            .collect();
        want.sort_by(f64::total_cmp);
        let err = got
            .iter()
            .zip(&want)
            .take(10)
            .map(|(g, w)| (g.sqrt() - w.sqrt()).abs())
            .fold(if got.len() < 10 { f64::INFINITY } else { 0.0 }, f64::max);
        c.within(format!("circle exactness {bc}"), err, 1e-3);
    }
    if let Some(b) = c.attempt("ellipse", ellipse_boundary(EllipseSpec::from_lambda(1.0f64, 0.05))) {
        let curve = EllipseSpec::from_lambda(1.0f64, 0.05);
        if let Some(s) = c.attempt("spectrum", spectrum(&b, Neumann, 2, Units::Absolute)) {
            for e in s {
                let class = SymmetryClass::containing(curve.symmetry(), e.mode.l, e.mode.parity);
                if let Some(r) = c.attempt("oracle", eigenvalue_near(&curve, Neumann, e.omega_total.sqrt(), Some(class), &cfg)) {
                    c.within(
                        format!("ellipse 0.05 {} perturb vs oracle", e.mode.label()),
                        (e.omega_total - r.omega).abs() / r.omega,
                        5e-3,
                    );
                }
            }
        }
    }
    c.report(Suite::Oracle)
}

pub fn run_suite(suite: Suite) -> ValidationReport {
    let suites: Vec<SuiteReport> = match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s)).collect(),
        s => vec![run_one(s)],
    };
    ValidationReport { passed: suites.iter().all(|s| s.passed), suites }
}

fn run_one(suite: Suite) -> SuiteReport {
    match suite {
        Suite::Specfun => specfun_suite(),
        Suite::Boundary => boundary_suite(),
        Suite::Perturb => perturb_suite(),
        Suite::Empirical => empirical_suite(),
        Suite::Oracle => oracle_suite(),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Adds fixture checks to a report, as a suite of their own.
pub fn with_fixture(mut report: ValidationReport, name: &str, b: &FourierBoundary<f64>) -> ValidationReport {
    let checks = boundary_checks(name, b);
    let passed = checks.iter().all(|c| c.passed);
    report.suites.push(SuiteReport { suite: "fixture".into(), passed, checks });
    report.passed &= passed;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Specfun, Suite::Boundary, Suite::Perturb, Suite::Empirical] {
            let r = run_suite(s);
            let failed: Vec<_> = r.suites[0].checks.iter().filter(|c| !c.passed).collect();
            assert!(r.passed, "{s}: {failed:?}");
        }
    }

    #[test]
    fn corrupted_fixture_fails() {
        let mut b = ellipse_boundary(EllipseSpec::from_lambda(1.0f64, 0.1)).unwrap();
        b.second.set_cos(0, 0.0);
        let r = with_fixture(run_suite(Suite::Specfun), "broken", &b);
        assert!(!r.passed);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([&Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}

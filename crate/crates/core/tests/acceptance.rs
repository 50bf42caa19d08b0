//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! (indented lines below it are detail); the process fails if any does.

use std::time::{Duration, Instant};

use helmholtz_core::boundary::{
    ellipse_boundary, supercircle_boundary, supercircle_c4_second_order, validate_equal_area, BoundarySpec,
    Circle, EllipseSpec, FourierBoundary, StarCurve, SupercircleSpec,
};
use helmholtz_core::empirical::{
    duality_deviation, empirical_omega, empirical_table, match_states, max_duality_deviation,
};
use helmholtz_core::oracle::{eigenvalue_near, expand_levels, find_eigenvalues, OracleConfig, SymmetryClass};
use helmholtz_core::perturb::{circle_modes, corrections, spectrum, Mode, PerturbedEigenvalue, Units};
use helmholtz_core::report::{self, StateCount};
use helmholtz_core::specfun::{bessel_root, bessel_roots, internal_index, RootKind};
use helmholtz_core::validate::{DIRICHLET_ROOTS, NEUMANN_ROOTS, SUPERCIRCLE_BLEND_LEVELS, SUPERCIRCLE_SOLVER_LEVELS};
use helmholtz_core::{BoundaryCondition, Parity};
use BoundaryCondition::{Dirichlet, Neumann};

// Thresholds, pinned.
const DIRICHLET_ROOT_TOL: f64 = 1e-5;
const NEUMANN_ROOT_TOL: f64 = 1e-4;
const C02_WANT: f64 = -0.0017552;
const C42_WANT: f64 = 0.0357983;
const COEFF_TOL: f64 = 1e-6;
const CLOSED_FORM_TOL: f64 = 1e-8;
const SUPERCIRCLE_AREA_TOL: f64 = 1e-8;
const ELLIPSE_AREA_TOL: f64 = 1e-15;
const BLEND_TOL: f64 = 1e-3;
const SOLVER_REL: f64 = 0.02;
/// Neumann levels 1 and 2 must keep a clear empirical-vs-numerical gap.
const J2_GAP_MIN: f64 = 0.05;
const CIRCLE_TOL: f64 = 1e-3;
const ELLIPSE_REL: [(f64, f64); 2] = [(0.05, 0.005), (0.10, 0.015)];
const MIN_UNFLAGGED: usize = 5;
const REPEL_FLAG: f64 = 0.05;
const SUPERCIRCLE_TS: [f64; 2] = [1.8, 2.2];
const SUPERCIRCLE_REL: f64 = 0.01;
const SCALING_BAND: (f64, f64) = (4.0, 20.0);
const TRACE_TOL: f64 = 1e-14;
const DUALITY_END_TOL: f64 = 1e-12;
const DUALITY_PEAK: (f64, f64) = (0.025, 0.035);
const DUALITY_ARGMAX: f64 = 1.2485;
const DUALITY_ARGMAX_TOL: f64 = 0.01;
const LIMIT_TOL: f64 = 1e-14;
const LARGE_T: f64 = 1e6;
const LARGE_T_REL: f64 = 1e-4;
const LIMIT_SLOTS: usize = 60;

struct Outcome {
    passed: bool,
    summary: String,
    detail: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, summary: impl Into<String>) -> Self {
        Self { passed, summary: summary.into(), detail: Vec::new() }
    }

    fn with(mut self, detail: Vec<String>) -> Self {
        self.detail = detail;
        self
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn bessel_tables() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for (l, jp, want) in DIRICHLET_ROOTS {
        let j = internal_index(l, RootKind::FunctionZero, jp).unwrap();
        worst.0 = worst.0.max((bessel_root::<f64>(l, j, RootKind::FunctionZero).unwrap().value - want).abs());
    }
    for (l, jp, want) in NEUMANN_ROOTS {
        let j = internal_index(l, RootKind::DerivativeZero, jp).unwrap();
        worst.1 = worst.1.max((bessel_root::<f64>(l, j, RootKind::DerivativeZero).unwrap().value - want).abs());
    }
    Outcome::new(
        worst.0 <= DIRICHLET_ROOT_TOL && worst.1 <= NEUMANN_ROOT_TOL,
        format!("max |Δρ| = {:.2e}, max |Δρ′| = {:.2e}", worst.0, worst.1),
    )
}

fn supercircle_coefficients() -> Outcome {
    let b = supercircle_boundary(SupercircleSpec::new(2.0f64), 64).unwrap();
    let (c0, c4) = (b.second.c(0), b.second.c(4));
    let closed = supercircle_c4_second_order::<f64>();
    let ok = (c0 - C02_WANT).abs() <= COEFF_TOL
        && (c4 - C42_WANT).abs() <= COEFF_TOL
        && (c4 - closed).abs() <= CLOSED_FORM_TOL;
    Outcome::new(ok, format!("C0(2) = {c0:.8}, C4(2) = {c4:.8}, |numeric − closed| = {:.1e}", (c4 - closed).abs()))
}

fn equal_area() -> Outcome {
    let ts: Vec<f64> = (0..=16).map(|i| 1.2 + 0.1 * i as f64).collect();
    let sc = max_of(ts.iter().map(|&t| {
        validate_equal_area(&supercircle_boundary(SupercircleSpec::new(t), 64).unwrap()).constraint_residual
    }));
    let el = max_of([0.01, 0.05, 0.1, 0.2, 0.25].iter().map(|&lam| {
        validate_equal_area(&ellipse_boundary(EllipseSpec::from_lambda(1.0f64, lam)).unwrap()).constraint_residual
    }));
    Outcome::new(
        sc < SUPERCIRCLE_AREA_TOL && el <= ELLIPSE_AREA_TOL,
        format!("supercircle t∈[1.2,2.8] residual ≤ {sc:.1e}, ellipse residual ≤ {el:.1e}"),
    )
}

fn blend_levels() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (bc, rows) in [Dirichlet, Neumann].into_iter().zip(SUPERCIRCLE_BLEND_LEVELS) {
        let t = empirical_table(1.5f64, bc, 7).unwrap();
        let err = max_of(t.iter().zip(rows).map(|(l, (w, _))| (l.omega - w).abs()));
        let degs: Vec<usize> = t.iter().map(|l| l.degeneracy).collect();
        let want: Vec<usize> = rows.iter().map(|r| r.1).collect();
        ok &= err <= BLEND_TOL && degs == want;
        detail.push(format!("{bc}: max |Δω| = {err:.1e}, degeneracies {degs:?}"));
    }
    Outcome::new(ok, "14 values and degeneracy pattern").with(detail)
}

fn solver_levels() -> Outcome {
    let curve = SupercircleSpec::new(1.5f64);
    let cfg = OracleConfig::default();
    let mut ok = true;
    let mut detail = Vec::new();
    for (i, bc) in [Dirichlet, Neumann].into_iter().enumerate() {
        let want = SUPERCIRCLE_SOLVER_LEVELS[i];
        let k_max = want[6].sqrt() * 1.04;
        let found = find_eigenvalues(&curve, bc, &cfg.window(1.0, k_max)).unwrap();
        let levels: Vec<_> = found.iter().take(7).collect();
        if levels.len() < 7 {
            detail.push(format!("{bc}: only {} levels found", levels.len()));
            ok = false;
            continue;
        }
        let mut worst = 0.0f64;
        for (r, w) in levels.iter().zip(want) {
            let rel = (r.omega - w).abs() / w;
            worst = worst.max(rel);
            detail.push(format!(
                "{bc}: ω = {:.4} vs {w:.4} ({:+.2}%), class {}, σ = {:.1e}",
                r.omega,
                100.0 * (r.omega - w) / w,
                r.symmetry_class,
                r.sigma_min
            ));
        }
        ok &= worst <= SOLVER_REL;
        if bc == Neumann {
            let emp = SUPERCIRCLE_BLEND_LEVELS[1];
            for lv in [1, 2] {
                let gap = (emp[lv].0 - levels[lv].omega).abs() / levels[lv].omega;
                detail.push(format!("neumann level {lv}: empirical vs oracle gap {:.1}%", 100.0 * gap));
                ok &= gap >= J2_GAP_MIN;
            }
        }
    }
    Outcome::new(ok, "t = 1.5 oracle vs reference solver levels").with(detail)
}

fn circle_exactness() -> Outcome {
    let cfg = OracleConfig::default().window(0.5, 7.2);
    let mut ok = true;
    let mut detail = Vec::new();
    for bc in [Dirichlet, Neumann] {
        let got = expand_levels(&find_eigenvalues(&Circle { radius: 1.0f64 }, bc, &cfg).unwrap());
        let mut want: Vec<f64> = (0..12u32)
            .flat_map(|l| {
                let mult = if l == 0 { 1 } else { 2 };
                bessel_roots::<f64>(l, 3, bc.root_kind())
                    .unwrap()
                    .into_iter()
                    .flat_map(move |r| std::iter::repeat(r).take(mult))
            })
            .collect();
        want.sort_by(f64::total_cmp);
        let err = if got.len() < 10 {
            f64::INFINITY
        } else {
            max_of(got.iter().zip(&want).take(10).map(|(g, w)| (g.sqrt() - w).abs()))
        };
        ok &= err <= CIRCLE_TOL;
        detail.push(format!("{bc}: max |Δk| over first 10 = {err:.1e}"));
    }
    Outcome::new(ok, "unit circle, both conditions").with(detail)
}

struct Comparison {
    label: String,
    pert: f64,
    oracle: f64,
    sigma: f64,
}

impl Comparison {
    fn rel(&self) -> f64 {
        (self.pert - self.oracle).abs() / self.oracle
    }
}

fn against_oracle(curve: &(impl StarCurve<f64> + Sync), states: &[PerturbedEigenvalue<f64>]) -> Vec<Comparison> {
    let cfg = OracleConfig::default();
    states
        .iter()
        .map(|s| {
            let class = SymmetryClass::containing(curve.symmetry(), s.mode.l, s.mode.parity);
            let r = eigenvalue_near(curve, Neumann, s.omega_total.sqrt(), Some(class), &cfg).unwrap();
            Comparison { label: s.mode.label(), pert: s.omega_total, oracle: r.omega, sigma: r.sigma_min }
        })
        .collect()
}

fn describe(c: &Comparison, tol: f64) -> String {
    let flag = if c.rel() > REPEL_FLAG {
        " [repelling]"
    } else if c.rel() > tol {
        " [OUT]"
    } else {
        ""
    };
    format!(
        "{}: pert {:.5} oracle {:.5} ({:.3}%, σ = {:.1e}){flag}",
        c.label,
        c.pert,
        c.oracle,
        100.0 * c.rel(),
        c.sigma
    )
}

fn ellipse_vs_oracle() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (lam, tol) in ELLIPSE_REL {
        let curve = EllipseSpec::from_lambda(1.0f64, lam);
        let b = ellipse_boundary(curve).unwrap();
        let cmp = against_oracle(&curve, &spectrum(&b, Neumann, 7, Units::Absolute).unwrap());
        let unflagged: Vec<&Comparison> = cmp.iter().filter(|c| c.rel() <= REPEL_FLAG).collect();
        ok &= unflagged.len() >= MIN_UNFLAGGED && unflagged.iter().all(|c| c.rel() <= tol);
        detail.extend(cmp.iter().map(|c| format!("λ={lam} {}", describe(c, tol))));
    }
    Outcome::new(ok, "ellipse λ = 0.05, 0.10, first 7 states").with(detail)
}

fn supercircle_vs_oracle() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for t in SUPERCIRCLE_TS {
        let curve = SupercircleSpec::new(t);
        let b = supercircle_boundary(curve, 64).unwrap();
        let cmp = against_oracle(&curve, &spectrum(&b, Neumann, 11, Units::Absolute).unwrap());
        ok &= cmp.iter().filter(|c| c.rel() <= REPEL_FLAG).all(|c| c.rel() <= SUPERCIRCLE_REL);
        detail.extend(cmp.iter().map(|c| format!("t={t} {}", describe(c, SUPERCIRCLE_REL))));
    }
    Outcome::new(ok, "supercircle t = 1.8, 2.2, first 11 states").with(detail)
}

fn remainder_scaling() -> Outcome {
    let mode = Mode::<f64>::new(1, 1, Parity::Cos).unwrap();
    let err = |lam: f64| {
        let curve = EllipseSpec::from_lambda(1.0f64, lam);
        let b = ellipse_boundary(curve).unwrap();
        let p = helmholtz_core::perturb::perturbed(&b, &mode, Units::Absolute).unwrap();
        let class = SymmetryClass::containing(curve.symmetry(), 1, Parity::Cos);
        let r = eigenvalue_near(&curve, Neumann, p.omega_total.sqrt(), Some(class), &OracleConfig::default()).unwrap();
        (p.omega_total - r.omega).abs()
    };
    let (e1, e2) = (err(0.05), err(0.10));
    let ratio = e2 / e1;
    Outcome::new(
        (SCALING_BAND.0..=SCALING_BAND.1).contains(&ratio),
        format!("e(0.05) = {e1:.3e}, e(0.10) = {e2:.3e}, ratio = {ratio:.2}"),
    )
}

fn first_order_identities() -> Outcome {
    let numeric = r#"{"type":"numeric","lambda":0.1,"samples":[SAMPLES]}"#.replace(
        "SAMPLES",
        &(0..64)
            .map(|i| {
                let th = std::f64::consts::TAU * i as f64 / 64.0;
                format!("[{th},{}]", 1.0 + 0.1 * (3.0 * th).cos() + 0.04 * (2.0 * th).cos())
            })
            .collect::<Vec<_>>()
            .join(","),
    );
    let mut fixtures: Vec<(String, FourierBoundary<f64>)> = Vec::new();
    for t in [1.2, 1.5, 1.8, 2.2, 2.5, 2.8] {
        fixtures.push((format!("supercircle {t}"), supercircle_boundary(SupercircleSpec::new(t), 64).unwrap()));
    }
    for lam in [0.05, 0.1, 0.2] {
        fixtures.push((format!("ellipse {lam}"), ellipse_boundary(EllipseSpec::from_lambda(1.0, lam)).unwrap()));
    }
    fixtures.push(("numeric".into(), BoundarySpec::from_json(&numeric).unwrap().resolve(16).unwrap().expansion));
    let modes = circle_modes::<f64>(30).unwrap();
    let (mut l0, mut trace, mut selection) = (0.0f64, 0.0f64, 0.0f64);
    for (name, b) in &fixtures {
        for m in &modes {
            let (w1, _) = corrections(b, m).unwrap();
            if m.l == 0 {
                l0 = l0.max(w1.abs());
            } else if m.parity == Parity::Cos {
                let (w1s, _) = corrections(b, &Mode { parity: Parity::Sin, ..*m }).unwrap();
                trace = trace.max((w1 + w1s).abs());
            }
            if name.starts_with("supercircle") && (2 * m.l) % 4 != 0 {
                selection = selection.max(w1.abs());
            }
        }
    }
    Outcome::new(
        l0 == 0.0 && trace <= TRACE_TOL && selection == 0.0,
        format!(
            "{} fixtures × {} modes: max |ω₁(l=0)| = {l0:e}, max |ω₁cos+ω₁sin| = {trace:.1e}, \
             max supercircle |ω₁| (2l ≢ 0 mod 4) = {selection:e}",
            fixtures.len(),
            modes.len()
        ),
    )
}

fn duality() -> Outcome {
    let ends = duality_deviation(1.0f64).unwrap().abs().max(duality_deviation(2.0f64).unwrap().abs());
    let (t, d) = max_duality_deviation::<f64>().unwrap();
    Outcome::new(
        ends <= DUALITY_END_TOL
            && (DUALITY_PEAK.0..=DUALITY_PEAK.1).contains(&d.abs())
            && (t - DUALITY_ARGMAX).abs() <= DUALITY_ARGMAX_TOL,
        format!("|Δ(1)|,|Δ(2)| ≤ {ends:.1e}; max |Δ| = {:.6} at t = {t:.6}", d.abs()),
    )
}

fn empirical_limits() -> Outcome {
    let (mut circle, mut square, mut large) = (0.0f64, 0.0f64, 0.0f64);
    for bc in [Dirichlet, Neumann] {
        for p in match_states::<f64>(bc, LIMIT_SLOTS).unwrap() {
            let i = p.state_index;
            let ec = p.circle.energy() / std::f64::consts::PI;
            let es = p.square.energy::<f64>();
            circle = circle.max((empirical_omega(2.0f64, i, bc).unwrap() - ec).abs() / ec);
            square = square.max((empirical_omega(1.0f64, i, bc).unwrap() - es / 2.0).abs() / es);
            large = large.max((empirical_omega(LARGE_T, i, bc).unwrap() - es / 4.0).abs() / (es / 4.0));
        }
    }
    Outcome::new(
        circle <= LIMIT_TOL && square <= LIMIT_TOL && large <= LARGE_T_REL,
        format!("{LIMIT_SLOTS} slots per condition: t=2 {circle:.1e}, t=1 {square:.1e}, t=1e6 {large:.1e} (relative)"),
    )
}

fn determinism() -> Outcome {
    let spec = BoundarySpec::Supercircle { t: 1.5, a: 1.0 };
    let lambdas: Vec<f64> = (0..=20).map(|i| -1.0 + 0.1 * i as f64).collect();
    let ts: Vec<f64> = (0..=40).map(|i| 1.0 + 0.1 * i as f64).collect();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let p = report::perturb_table(&spec, Neumann, 26, &lambdas, Units::Reduced, 64).unwrap();
            let e = report::empirical_table(&ts, Dirichlet, StateCount::Slots(21)).unwrap();
            (p.body(), e.body())
        })
    };
    let (a, b, c) = (run(4), run(4), run(1));
    Outcome::new(
        a == b && a == c,
        format!("perturb {} bytes, empirical {} bytes, identical across runs and thread counts", a.0.len(), a.1.len()),
    )
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "bessel roots", budget: Some(s(1)), run: bessel_tables },
        Criterion { id: 2, name: "supercircle coefficients", budget: Some(s(1)), run: supercircle_coefficients },
        Criterion { id: 3, name: "equal-area constraint", budget: None, run: equal_area },
        Criterion { id: 4, name: "t = 1.5 blend levels", budget: Some(s(1)), run: blend_levels },
        Criterion { id: 5, name: "t = 1.5 solver levels", budget: Some(s(300)), run: solver_levels },
        Criterion { id: 6, name: "oracle circle exactness", budget: Some(s(60)), run: circle_exactness },
        Criterion { id: 7, name: "perturbation vs oracle, ellipse", budget: Some(s(300)), run: ellipse_vs_oracle },
        Criterion { id: 8, name: "perturbation vs oracle, supercircle", budget: Some(s(600)), run: supercircle_vs_oracle },
        Criterion { id: 9, name: "remainder scaling", budget: None, run: remainder_scaling },
        Criterion { id: 10, name: "first-order identities", budget: None, run: first_order_identities },
        Criterion { id: 11, name: "duality", budget: None, run: duality },
        Criterion { id: 12, name: "empirical limits", budget: None, run: empirical_limits },
        Criterion { id: 13, name: "determinism", budget: None, run: determinism },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let in_time = c.budget.map_or(true, |b| took <= b);
        let passed = out.passed && in_time;
        let budget = c.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        println!(
            "{} criterion {:>2} {}: {} [{:.2}s{budget}]",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            out.summary,
            took.as_secs_f64()
        );
        for d in &out.detail {
            println!("        {d}");
        }
        if !passed {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use helmholtz_core::boundary::BoundarySpec;
use helmholtz_core::oracle::{self, OracleConfig};
use helmholtz_core::perturb::Units;
use helmholtz_core::report::{self, Grid, RunManifest, StateCount, Table};
use helmholtz_core::validate::{self, Suite};
use helmholtz_core::{BoundaryCondition, Error};

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// Helmholtz eigenvalues on near-circular domains.
#[derive(Parser)]
#[command(name = "helmholtz", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Second-order perturbative Neumann spectrum over a λ grid.
    Perturb(PerturbArgs),
    /// Square/circle blended supercircle spectrum over a t grid.
    Empirical(EmpiricalArgs),
    /// Particular-solutions eigensolver over a wavenumber window.
    Oracle(OracleArgs),
    /// Area deviation of the supercircle duality t ↔ t/(t−1).
    Duality(DualityArgs),
    /// Run invariant suites and print a JSON report.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct Output {
    /// Write CSV here (plus `<out>.manifest.json`) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PerturbArgs {
    /// Boundary spec: a JSON file or an inline JSON object.
    boundary: String,
    #[arg(long, default_value = "neumann")]
    bc: BoundaryCondition,
    #[arg(long, default_value_t = 10)]
    states: usize,
    /// Deformation grid `start:stop:step` (or a single value).
    #[arg(long, allow_hyphen_values = true)]
    lambda_grid: Grid,
    /// Report ω in units of 1/R₀² instead of 1/length².
    #[arg(long, default_value = "reduced", value_parser = ["reduced", "absolute"])]
    units: String,
    /// Fourier truncation for computed expansions.
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EmpiricalArgs {
    #[arg(long, conflicts_with = "t_grid", required_unless_present = "t_grid")]
    t: Option<f64>,
    #[arg(long)]
    t_grid: Option<Grid>,
    #[arg(long)]
    bc: BoundaryCondition,
    /// Number of slots (degenerate partners counted separately).
    #[arg(long, conflicts_with = "levels", required_unless_present = "levels")]
    states: Option<usize>,
    /// Number of distinct levels, every slot of each emitted.
    #[arg(long)]
    levels: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct OracleArgs {
    boundary: String,
    #[arg(long)]
    bc: BoundaryCondition,
    /// Wavenumber window `kmin:kmax`.
    #[arg(long, default_value = "0.5:6")]
    window: String,
    #[arg(long, default_value_t = OracleConfig::default().basis_size)]
    basis: usize,
    #[arg(long, default_value_t = OracleConfig::default().boundary_points)]
    boundary_points: usize,
    #[arg(long, default_value_t = OracleConfig::default().sweep_step)]
    step: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DualityArgs {
    #[arg(long, default_value = "1:2:0.01")]
    t_grid: Grid,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// Extra boundary spec whose expansion gets the boundary checks.
    #[arg(long)]
    fixture: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Convergence(_) | Error::Solver(_)) => EXIT_NUMERICAL,
                Some(_) => EXIT_INVALID,
                None => EXIT_FAILED,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    configure_threads()?;
    match cli.command {
        Command::Perturb(a) => perturb(a),
        Command::Empirical(a) => empirical(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Duality(a) => duality(a),
        Command::Validate(a) => run_validate(a),
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("HELMHOLTZ_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::Spec(format!("HELMHOLTZ_THREADS must be a positive integer, got `{v}`"))
    })?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("building thread pool")?;
    Ok(())
}

/// Inline JSON when the argument looks like an object, otherwise a path.
fn load_spec(arg: &str) -> anyhow::Result<BoundarySpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Spec(format!("cannot read `{arg}`: {e}")))?
    };
    Ok(BoundarySpec::from_json(&text)?)
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn emit(mut manifest: RunManifest, table: &Table, out: &Output) -> anyhow::Result<()> {
    match &out.out {
        None => print!("{}", table.to_csv(&manifest)),
        Some(path) => {
            manifest.outputs.push(path.display().to_string());
            fs::write(path, table.to_csv(&manifest)).with_context(|| format!("writing {}", path.display()))?;
            let side = manifest_path(path);
            fs::write(&side, serde_json::to_string_pretty(&manifest)? + "\n")
                .with_context(|| format!("writing {}", side.display()))?;
        }
    }
    Ok(())
}

fn manifest_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn perturb(a: PerturbArgs) -> anyhow::Result<ExitCode> {
    let spec = load_spec(&a.boundary)?;
    let units = if a.units == "absolute" { Units::Absolute } else { Units::Reduced };
    let lambdas = a.lambda_grid.points()?;
    let table = report::perturb_table(&spec, a.bc, a.states, &lambdas, units, a.n_max)?;
    let manifest = RunManifest::new(
        "perturb",
        params([
            ("boundary", serde_json::to_string(&spec)?),
            ("bc", a.bc.to_string()),
            ("states", a.states.to_string()),
            ("lambda_grid", a.lambda_grid.to_string()),
            ("units", a.units.clone()),
            ("n_max", a.n_max.to_string()),
        ]),
    );
    emit(manifest, &table, &a.output)?;
    Ok(ExitCode::SUCCESS)
}

fn empirical(a: EmpiricalArgs) -> anyhow::Result<ExitCode> {
    let grid = match (a.t, a.t_grid) {
        (Some(t), None) => Grid::single(t),
        (None, Some(g)) => g,
        _ => bail!(Error::Spec("give exactly one of --t and --t-grid".into())),
    };
    let count = match (a.states, a.levels) {
        (Some(n), None) => StateCount::Slots(n),
        (None, Some(n)) => StateCount::Levels(n),
        _ => bail!(Error::Spec("give exactly one of --states and --levels".into())),
    };
    let table = report::empirical_table(&grid.points()?, a.bc, count)?;
    let manifest = RunManifest::new(
        "empirical",
        params([
            ("t_grid", grid.to_string()),
            ("bc", a.bc.to_string()),
            ("count", format!("{count:?}")),
        ]),
    );
    emit(manifest, &table, &a.output)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_window(s: &str) -> anyhow::Result<(f64, f64)> {
    let bad = || Error::Spec(format!("window `{s}` must be `kmin:kmax`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn run_oracle(a: OracleArgs) -> anyhow::Result<ExitCode> {
    let spec = load_spec(&a.boundary)?;
    let (k_min, k_max) = parse_window(&a.window)?;
    let config = OracleConfig {
        basis_size: a.basis,
        boundary_points: a.boundary_points,
        sweep_step: a.step,
        ..OracleConfig::default()
    }
    .window(k_min, k_max);
    config.validate()?;
    let resolved = spec.resolve(64)?;
    let results = oracle::find_eigenvalues::<f64, _>(resolved.curve.as_ref(), a.bc, &config)?;
    let table = report::oracle_table(&results);
    let manifest = RunManifest::new(
        "oracle",
        params([
            ("boundary", serde_json::to_string(&spec)?),
            ("bc", a.bc.to_string()),
            ("window", format!("{k_min}:{k_max}")),
            ("basis", a.basis.to_string()),
            ("boundary_points", a.boundary_points.to_string()),
            ("step", a.step.to_string()),
        ]),
    );
    emit(manifest, &table, &a.output)?;
    if !results.iter().any(|r| r.converged) {
        eprintln!("error: none of {} located minima met the residual certificate", results.len());
        return Ok(ExitCode::from(EXIT_NUMERICAL));
    }
    Ok(ExitCode::SUCCESS)
}

fn duality(a: DualityArgs) -> anyhow::Result<ExitCode> {
    let table = report::duality_table(&a.t_grid.points()?)?;
    let manifest = RunManifest::new("duality", params([("t_grid", a.t_grid.to_string())]));
    emit(manifest, &table, &a.output)?;
    Ok(ExitCode::SUCCESS)
}

fn run_validate(a: ValidateArgs) -> anyhow::Result<ExitCode> {
    let mut report = validate::run_suite(a.suite);
    if let Some(f) = &a.fixture {
        let spec = load_spec(f)?;
        let b = spec.resolve(64)?.expansion;
        report = validate::with_fixture(report, f, &b);
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED) })
}

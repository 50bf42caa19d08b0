//! Tabular output shared by the command-line front end: parameter grids,
//! fixed-precision float formatting, run manifests and the CSV tables
//! themselves. Everything here is deterministic — grid points are computed
//! in parallel but rows are emitted in grid order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::boundary::{BoundarySpec, FourierBoundary, SupercircleSpec, MAX_ELLIPSE_LAMBDA};
use crate::empirical::{self, Exponent, StatePairing, DEFAULT_EXPONENT};
use crate::error::{domain_err, Error, Result};
use crate::mode::BoundaryCondition;
use crate::oracle::OracleResult;
use crate::perturb::{self, Units};

/// Significant digits written for every float.
pub const SIGNIFICANT_DIGITS: usize = 10;

/// Largest number of points a grid may expand to.
pub const MAX_GRID_POINTS: usize = 100_000;

/// Rounds to [`SIGNIFICANT_DIGITS`] and prints the shortest string that
/// reads back to the rounded value. Very small or large magnitudes use
/// exponent notation.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("float round trip");
    let a = rounded.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Inclusive arithmetic grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn single(x: f64) -> Self {
        Self { start: x, stop: x, step: 1.0 }
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        let Grid { start, stop, step } = *self;
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::Spec(format!("grid {self} is not finite")));
        }
        if start == stop {
            return Ok(vec![start]);
        }
        if !(step > 0.0) || stop < start {
            return Err(Error::Spec(format!("grid {self} needs start ≤ stop and step > 0")));
        }
        let span = (stop - start) / step;
        // tolerate representation error in the step count
        let n = (span + 1e-9).floor();
        if n >= MAX_GRID_POINTS as f64 {
            return Err(Error::Spec(format!("grid {self} exceeds {MAX_GRID_POINTS} points")));
        }
        let scale = start.abs().max(stop.abs());
        Ok((0..=n as usize)
            .map(|i| {
                let x = start + i as f64 * step;
                // snap cancellation residue onto exact zero
                if x.abs() < 1e-12 * scale {
                    0.0
                } else {
                    x
                }
            })
            .collect())
    }
}

impl std::fmt::Display for Grid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| Error::Spec(format!("bad grid `{s}`")));
        match parts.as_slice() {
            [x] => Ok(Grid::single(num(x)?)),
            [a, b, step] => Ok(Grid { start: num(a)?, stop: num(b)?, step: num(step)? }),
            _ => Err(Error::Spec(format!("grid `{s}` must be `start:stop:step`"))),
        }
    }
}

/// Provenance record of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub version: String,
    /// SHA-256 of the parameter map.
    pub config_hash: String,
    pub outputs: Vec<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, String>) -> Self {
        let config_hash = sha256_hex(&serde_json::to_vec(&parameters).expect("string map serializes"));
        Self {
            command: command.into(),
            parameters,
            version: env!("CARGO_PKG_VERSION").into(),
            config_hash,
            outputs: Vec::new(),
        }
    }

    pub fn hash(&self) -> String {
        sha256_hex(&serde_json::to_vec(self).expect("manifest serializes"))
    }

    /// The comment line every CSV starts with.
    pub fn header(&self) -> String {
        format!("# helmholtz {} {} manifest={}", self.version, self.command, self.hash())
    }
}

/// A CSV table of preformatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    /// Header line plus rows, without the manifest comment.
    pub fn body(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self, manifest: &RunManifest) -> String {
        let mut out = String::new();
        writeln!(out, "{}", manifest.header()).expect("string write");
        out.push_str(&self.body());
        out
    }
}

/// The member of a boundary family at deformation `lambda`. Supercircles
/// move along `t = 2 + λ` (so `R₀` follows `t`); every other family keeps
/// its coefficients and `R₀` and only rescales the deformation.
pub fn family_member(spec: &BoundarySpec, base: &FourierBoundary<f64>, lambda: f64) -> Result<FourierBoundary<f64>> {
    let mut b = base.with_lambda(lambda);
    match *spec {
        BoundarySpec::Supercircle { a, .. } => {
            let s = SupercircleSpec { t: 2.0 + lambda, a };
            s.validate()?;
            b.r0 = s.equal_area_radius();
        }
        // negative λ is the same ellipse turned through 90°
        BoundarySpec::Ellipse { .. } if !(lambda.abs() <= MAX_ELLIPSE_LAMBDA + 1e-12) => {
            return Err(domain_err!("ellipse deformation must satisfy |λ| ≤ {MAX_ELLIPSE_LAMBDA}, got {lambda}"));
        }
        _ => {}
    }
    Ok(b)
}

pub const PERTURB_COLUMNS: [&str; 9] =
    ["lambda", "state_index", "l", "j", "parity", "omega0", "omega1", "omega2", "omega_total"];

/// One row per `(λ, state)`, λ ascending, states in spectral order.
pub fn perturb_table(
    spec: &BoundarySpec,
    bc: BoundaryCondition,
    num_states: usize,
    lambdas: &[f64],
    units: Units,
    n_max: usize,
) -> Result<Table> {
    let base = spec.resolve(n_max)?.expansion;
    let blocks = lambdas
        .par_iter()
        .map(|&lam| {
            let b = family_member(spec, &base, lam)?;
            let states = perturb::spectrum(&b, bc, num_states, units)?;
            Ok(states
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    vec![
                        format_float(lam),
                        i.to_string(),
                        s.mode.l.to_string(),
                        s.mode.j.to_string(),
                        s.mode.parity.to_string(),
                        format_float(s.omega0),
                        format_float(s.omega1),
                        format_float(s.omega2),
                        format_float(s.omega_total),
                    ]
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&PERTURB_COLUMNS);
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

/// How many empirical states to emit per `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateCount {
    /// Individual slots, degenerate partners counted separately.
    Slots(usize),
    /// Every slot of the lowest distinct levels.
    Levels(usize),
}

/// Slots at `t` with their level group (0-based, ω-equal slots share one)
/// and blended eigenvalue.
pub fn empirical_slots(
    t: f64,
    bc: BoundaryCondition,
    count: StateCount,
) -> Result<Vec<(StatePairing<f64>, usize, f64)>> {
    match count {
        StateCount::Levels(n) => Ok(empirical::empirical_table(t, bc, n)?
            .into_iter()
            .enumerate()
            .flat_map(|(g, lv)| lv.states.into_iter().map(move |s| (s, g, lv.omega)))
            .collect()),
        StateCount::Slots(n) => {
            let mut out: Vec<(StatePairing<f64>, usize, f64)> = Vec::with_capacity(n);
            for p in empirical::match_states::<f64>(bc, n)? {
                let w = empirical::blend(&p, Exponent::Finite(t), DEFAULT_EXPONENT)?;
                let group = match out.last() {
                    None => 0,
                    Some(&(_, g, prev)) if (prev - w).abs() <= 1e-12 * w.abs() => g,
                    Some(&(_, g, _)) => g + 1,
                };
                out.push((p, group, w));
            }
            Ok(out)
        }
    }
}

pub const EMPIRICAL_COLUMNS: [&str; 8] =
    ["t", "state_index", "n_x", "n_y", "l", "j", "degeneracy_group", "omega_empirical"];

pub fn empirical_table(ts: &[f64], bc: BoundaryCondition, count: StateCount) -> Result<Table> {
    let blocks = ts
        .par_iter()
        .map(|&t| {
            Ok(empirical_slots(t, bc, count)?
                .into_iter()
                .map(|(p, g, w)| {
                    vec![
                        format_float(t),
                        p.state_index.to_string(),
                        p.square.nx.to_string(),
                        p.square.ny.to_string(),
                        p.circle.l.to_string(),
                        p.circle.j.to_string(),
                        g.to_string(),
                        format_float(w),
                    ]
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&EMPIRICAL_COLUMNS);
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

pub const ORACLE_COLUMNS: [&str; 7] =
    ["k", "omega", "sigma_min", "symmetry_class", "multiplicity", "basis_rank", "converged"];

pub fn oracle_table(results: &[OracleResult<f64>]) -> Table {
    let mut table = Table::new(&ORACLE_COLUMNS);
    table.rows = results
        .iter()
        .map(|r| {
            vec![
                format_float(r.k),
                format_float(r.omega),
                format_float(r.sigma_min),
                r.symmetry_class.label(),
                r.multiplicity().to_string(),
                r.basis_rank.to_string(),
                r.converged.to_string(),
            ]
        })
        .collect();
    table
}

pub const DUALITY_COLUMNS: [&str; 6] = ["t", "t_dual", "alpha", "area_t", "area_tdual", "delta"];

/// Duality deviation on a grid inside `[1, 2]`.
pub fn duality_table(ts: &[f64]) -> Result<Table> {
    let rows = ts
        .par_iter()
        .map(|&t| {
            let delta = empirical::duality_deviation(t)?;
            let dual_exp = empirical::dual_exponent(Exponent::Finite(t))?;
            let dual = dual_exp.finite().unwrap_or(f64::INFINITY);
            Ok(vec![
                format_float(t),
                format_float(dual),
                format_float(2f64.powf(1.0 / t - 0.5)),
                format_float(empirical::supercircle_area(t)?),
                format_float(empirical::exponent_area(dual_exp)?),
                format_float(delta),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&DUALITY_COLUMNS);
    table.rows = rows;
    Ok(table)
}

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rayon::prelude::*;
use squeezelab::analytic::{density_surface, EvolvedState, GridSpec, StateSpec};
use squeezelab::equivalence::{default_tolerance, verify_sweep, VerificationReport};
use squeezelab::fock::default_truncation;
use squeezelab::observables::{moments_closed, uncertainty_product};

use crate::config::{Command, RunConfig, Selection};
use crate::error::CliError;
use crate::output::{Cell, Table};

/// Result of a run: the table to write and, for `verify`, the verdict.
pub struct Outcome {
    pub table: Table,
    pub failed: usize,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let table = match cfg.command {
        Command::State => state(cfg.spec(), &cfg.grid)?,
        Command::Density | Command::Figure(_) => density(cfg.spec(), &cfg.grid)?,
        Command::Moments => moments(cfg.spec(), &cfg.grid),
        Command::Uncertainty => uncertainty(cfg.spec(), &cfg.grid),
        Command::Verify => return verify(cfg),
    };
    Ok(Outcome { table, failed: 0 })
}

/// `Psi(x, t0)` along the position grid.
fn state(spec: &StateSpec, grid: &GridSpec) -> Result<Table, CliError> {
    let t = grid.t_min();
    let evolved = EvolvedState::new(spec, t)?;
    let mut table = Table::new(vec!["t", "x", "re", "im"]);
    for x in grid.positions() {
        let psi = evolved.amplitude(x);
        table.push(vec![
            Cell::Num(t),
            Cell::Num(x),
            Cell::Num(psi.re),
            Cell::Num(psi.im),
        ]);
    }
    Ok(table)
}

fn density(spec: &StateSpec, grid: &GridSpec) -> Result<Table, CliError> {
    let surface = density_surface(spec, grid)?;
    let mut table = Table::new(vec!["t", "x", "rho"]);
    let xs = grid.positions();
    for (j, row) in surface.rows().enumerate() {
        let t = grid.t(j);
        for (&x, &rho) in xs.iter().zip(row) {
            table.push(vec![Cell::Num(t), Cell::Num(x), Cell::Num(rho)]);
        }
    }
    Ok(table)
}

fn moments(spec: &StateSpec, grid: &GridSpec) -> Table {
    let mut table = Table::new(vec!["t", "mean_x", "mean_p", "var_x", "var_p"]);
    for t in grid.times() {
        let m = moments_closed(spec, t);
        table.push(vec![
            Cell::Num(t),
            Cell::Num(m.mean_x),
            Cell::Num(m.mean_p),
            Cell::Num(m.var_x),
            Cell::Num(m.var_p),
        ]);
    }
    table
}

fn uncertainty(spec: &StateSpec, grid: &GridSpec) -> Table {
    let mut table = Table::new(vec!["t", "product"]);
    for t in grid.times() {
        table.push(vec![
            Cell::Num(t),
            Cell::Num(uncertainty_product(spec.n, &spec.sq, t)),
        ]);
    }
    table
}

pub const REPORT_COLUMNS: [&str; 12] = [
    "n",
    "x0",
    "p0",
    "r",
    "phi",
    "t",
    "truncation",
    "max_abs_deviation",
    "at_x",
    "leakage",
    "tolerance",
    "passed",
];

fn report_row(r: &VerificationReport) -> Vec<Cell> {
    vec![
        Cell::Int(r.spec.n),
        Cell::Num(r.spec.disp.x0()),
        Cell::Num(r.spec.disp.p0()),
        Cell::Num(r.spec.sq.r()),
        Cell::Num(r.spec.sq.phi()),
        Cell::Num(r.t),
        Cell::Int(r.truncation),
        Cell::Num(r.max_abs_deviation),
        Cell::Num(r.at_x),
        Cell::Num(r.leakage),
        Cell::Num(r.tolerance),
        Cell::Bool(r.passed),
    ]
}

fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let specs: Vec<StateSpec> = match &cfg.selection {
        Selection::Single(s) => vec![*s],
        Selection::Sweep(v) => v.clone(),
    };
    let times = cfg
        .verify_times
        .clone()
        .unwrap_or_else(|| vec![0.0, FRAC_PI_4, FRAC_PI_2]);
    let per_spec: Vec<Vec<VerificationReport>> = specs
        .par_iter()
        .map(|spec| {
            let n = cfg.truncation.unwrap_or_else(|| default_truncation(spec));
            verify_sweep(
                std::slice::from_ref(spec),
                &times,
                n,
                &cfg.grid,
                Some(default_tolerance(spec)),
            )
        })
        .collect::<Result<_, _>>()?;

    let mut table = Table::new(REPORT_COLUMNS.to_vec());
    let mut failed = 0;
    for r in per_spec.iter().flatten() {
        if !r.passed {
            failed += 1;
        }
        table.push(report_row(r));
    }
    Ok(Outcome { table, failed })
}

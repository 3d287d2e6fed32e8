use std::fmt::Write as _;

use crate::config::SimulationConfig;
use crate::error::{Error, Result};
use crate::evolve::{fdtd, step_rk4, step_spectral, SolverKind};
use crate::field::ComplexVectorField;
use crate::grid::Grid;
use crate::io::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverPair {
    pub a: SolverKind,
    pub b: SolverKind,
}

impl SolverPair {
    pub const ALL: [SolverPair; 4] = [
        SolverPair { a: SolverKind::Spectral, b: SolverKind::Spectral },
        SolverPair { a: SolverKind::Spectral, b: SolverKind::Rk4Curl },
        SolverPair { a: SolverKind::Spectral, b: SolverKind::FdtdOracle },
        SolverPair { a: SolverKind::Rk4Curl, b: SolverKind::FdtdOracle },
    ];

    pub fn name(&self) -> String {
        format!("{}-{}", self.a.name(), self.b.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub pair: SolverPair,
    /// Grid points per side.
    pub level: usize,
    pub dx: f64,
    pub dt: f64,
    /// `‖a − b‖ / ‖spectral‖`.
    pub l2_error: f64,
    /// Set on the finest level of each pair.
    pub fitted_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CompareTable {
    pub rows: Vec<CompareRow>,
}

pub const COMPARE_HEADER: &str = "pair,level,dx,dt,l2_error,fitted_order";

impl CompareTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(COMPARE_HEADER);
        out.push('\n');
        for r in &self.rows {
            let order = r.fitted_order.map(fmt_f64).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.pair.name(),
                r.level,
                fmt_f64(r.dx),
                fmt_f64(r.dt),
                fmt_f64(r.l2_error),
                order
            );
        }
        out
    }

    pub fn rows_for(&self, pair: SolverPair) -> impl Iterator<Item = &CompareRow> {
        self.rows.iter().filter(move |r| r.pair == pair)
    }

    pub fn fitted_order(&self, pair: SolverPair) -> Option<f64> {
        self.rows_for(pair).last().and_then(|r| r.fitted_order)
    }
}

/// Least-squares slope of `log err` against `log h`. `None` with fewer than
/// two points or any non-positive error.
pub fn fit_order(h: &[f64], err: &[f64]) -> Option<f64> {
    if h.len() != err.len() || h.len() < 2 || err.iter().chain(h).any(|&x| !(x > 0.0 && x.is_finite())) {
        return None;
    }
    let xs: Vec<f64> = h.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|x| x.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

fn evolve_to(kind: SolverKind, psi0: &ComplexVectorField, dt: f64, steps: usize) -> Result<ComplexVectorField> {
    match kind {
        SolverKind::Spectral => Ok((0..steps).fold(psi0.clone(), |p, _| step_spectral(&p, dt))),
        SolverKind::Rk4Curl => (0..steps).try_fold(psi0.clone(), |p, _| step_rk4(&p, dt)),
        SolverKind::FdtdOracle => {
            let em = (0..steps).try_fold(fdtd::yee_from_psi(psi0, dt), |em, _| fdtd::step_fdtd(&em, dt))?;
            Ok(fdtd::psi_from_yee(&em, dt))
        }
    }
}

/// Runs every solver on the configured initial data at each refinement
/// level (box length fixed, `dt ∝ dx`) and tabulates pairwise discrepancies
/// at `final_time`.
pub fn compare_solvers(cfg: &SimulationConfig) -> Result<CompareTable> {
    cfg.validate_compare()?;
    let cmp = cfg.compare.as_ref().expect("validated");
    let t_final = cmp.final_time;
    let mut rows = Vec::new();
    for &n in &cmp.levels {
        let grid = Grid::new(n, cfg.grid.box_length)?;
        let dx = grid.spacing();
        let steps = (t_final / (cmp.courant * dx / 3f64.sqrt())).ceil() as usize;
        let dt = t_final / steps as f64;
        let psi0 = cfg.initial.build(&grid, &cfg.base_dir)?;
        let results: Vec<(SolverKind, ComplexVectorField)> = [SolverKind::Spectral, SolverKind::Rk4Curl, SolverKind::FdtdOracle]
            .into_iter()
            .map(|k| evolve_to(k, &psi0, dt, steps).map(|p| (k, p)))
            .collect::<Result<_>>()?;
        let get = |k: SolverKind| &results.iter().find(|(kk, _)| *kk == k).expect("all solvers ran").1;
        let reference = get(SolverKind::Spectral).l2_norm();
        if reference == 0.0 {
            return Err(Error::InvalidArgument("compare: initial field is zero".into()));
        }
        for pair in SolverPair::ALL {
            rows.push(CompareRow {
                pair,
                level: n,
                dx,
                dt,
                l2_error: get(pair.a).l2_distance(get(pair.b)) / reference,
                fitted_order: None,
            });
        }
    }
    for pair in SolverPair::ALL {
        let (h, e): (Vec<f64>, Vec<f64>) = rows.iter().filter(|r| r.pair == pair).map(|r| (r.dx, r.l2_error)).unzip();
        let order = fit_order(&h, &e);
        if let Some(last) = rows.iter_mut().rev().find(|r| r.pair == pair) {
            last.fitted_order = order;
        }
    }
    Ok(CompareTable { rows })
}

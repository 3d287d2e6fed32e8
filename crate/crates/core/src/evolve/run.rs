use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::config::SimulationConfig;
use crate::error::{Error, Result};
use crate::evolve::{fdtd, rk4_stable, step_rk4_unchecked, step_spectral, SolverKind};
use crate::field::{dft3, divergence_residual_modes, energy, helicity_totals, ComplexVectorField, EMField};
use crate::gelfand_yaglom::{charge, el_residual_series};
use crate::io::{fmt_f64, Snapshot};

pub const TIMESERIES_HEADER: &str = "t,energy,charge,hel_plus,hel_minus,div_residual,el_residual";

/// Diagnostics at one sampled instant.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub energy: f64,
    pub charge: f64,
    pub hel_plus: f64,
    pub hel_minus: f64,
    pub div_residual: f64,
    /// `NaN` when the run has a single sample.
    pub el_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeSeries {
    pub samples: Vec<Sample>,
}

impl TimeSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(TIMESERIES_HEADER);
        out.push('\n');
        for s in &self.samples {
            let cols = [s.t, s.energy, s.charge, s.hel_plus, s.hel_minus, s.div_residual, s.el_residual];
            let line: Vec<String> = cols.iter().map(|&v| fmt_f64(v)).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn column(&self, f: impl Fn(&Sample) -> f64) -> Vec<f64> {
        self.samples.iter().map(f).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub series: TimeSeries,
    pub snapshots: Vec<Snapshot>,
}

fn diagnostics(t: f64, psi: &ComplexVectorField) -> Sample {
    let hat = dft3(psi);
    let (hel_plus, hel_minus) = helicity_totals(&hat);
    Sample {
        t,
        energy: energy(psi),
        charge: charge(psi),
        hel_plus,
        hel_minus,
        div_residual: divergence_residual_modes(&hat),
        el_residual: f64::NAN,
    }
}

enum State {
    Psi(ComplexVectorField),
    Yee(EMField),
}

/// Streams samples through a three-wide window so the Euler–Lagrange
/// residual never needs the whole trajectory in memory.
struct ElWindow {
    h: f64,
    window: VecDeque<ComplexVectorField>,
    seen: usize,
}

impl ElWindow {
    fn push(&mut self, psi: ComplexVectorField, samples: &mut [Sample]) {
        self.window.push_back(psi);
        self.seen += 1;
        if self.window.len() > 3 {
            self.window.pop_front();
        }
        if self.window.len() == 3 {
            let w: Vec<ComplexVectorField> = self.window.iter().cloned().collect();
            let r = el_residual_series(&w, self.h);
            if self.seen == 3 {
                samples[0].el_residual = r[0];
            }
            samples[self.seen - 2].el_residual = r[1];
        }
    }

    fn finish(self, samples: &mut [Sample]) {
        let w: Vec<ComplexVectorField> = self.window.into_iter().collect();
        let r = el_residual_series(&w, self.h);
        let last = samples.len() - 1;
        samples[last].el_residual = r[r.len() - 1];
        if w.len() == 2 {
            samples[0].el_residual = r[0];
        }
    }
}

/// Runs `cfg`, calling `on_snapshot` at every sample when snapshots are
/// enabled. Samples are taken at steps `0, s, 2s, …` up to `steps`.
pub fn run_with(cfg: &SimulationConfig, mut on_snapshot: impl FnMut(&Snapshot) -> Result<()>) -> Result<TimeSeries> {
    cfg.validate_run()?;
    let grid = cfg.grid()?;
    let time = cfg.time.as_ref().expect("validated");
    let dt = time.dt;
    let every = time.sample_every;
    let psi0 = cfg.initial.build(&grid, &cfg.base_dir)?;

    if !cfg.solver.allow_unstable {
        let stable = match cfg.solver.kind {
            SolverKind::Spectral => true,
            SolverKind::Rk4Curl => rk4_stable(&grid, dt),
            SolverKind::FdtdOracle => fdtd::courant_ok(&grid, dt),
        };
        if !stable {
            return Err(Error::Unstable(format!(
                "{}: sqrt(3)*dt/dx = {:.4} is outside the stability bound (set solver.allow_unstable to override)",
                cfg.solver.kind.name(),
                3f64.sqrt() * dt / grid.spacing()
            )));
        }
    }

    let mut state = match cfg.solver.kind {
        SolverKind::FdtdOracle => State::Yee(fdtd::yee_from_psi(&psi0, dt)),
        _ => State::Psi(psi0),
    };
    let current = |s: &State| match s {
        State::Psi(p) => p.clone(),
        State::Yee(em) => fdtd::psi_from_yee(em, dt),
    };

    let mut samples = Vec::new();
    let mut window = ElWindow {
        h: dt * every as f64,
        window: VecDeque::new(),
        seen: 0,
    };
    for step in 0..=time.steps {
        if step > 0 {
            state = match state {
                State::Psi(p) => State::Psi(match cfg.solver.kind {
                    SolverKind::Spectral => step_spectral(&p, dt),
                    _ => step_rk4_unchecked(&p, dt),
                }),
                State::Yee(em) => State::Yee(fdtd::step_fdtd_unchecked(&em, dt)),
            };
        }
        if step % every != 0 {
            continue;
        }
        let t = step as f64 * dt;
        let psi = current(&state);
        samples.push(diagnostics(t, &psi));
        if cfg.output.snapshots {
            on_snapshot(&Snapshot { time: t, psi: psi.clone() })?;
        }
        window.push(psi, &mut samples);
    }
    if samples.len() > 1 {
        window.finish(&mut samples);
    }
    Ok(TimeSeries { samples })
}

/// [`run_with`], collecting snapshots in memory.
pub fn run(cfg: &SimulationConfig) -> Result<RunOutput> {
    let mut snapshots = Vec::new();
    let series = run_with(cfg, |s| {
        snapshots.push(s.clone());
        Ok(())
    })?;
    Ok(RunOutput { series, snapshots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(extra: &str, steps: usize, every: usize) -> SimulationConfig {
        SimulationConfig::from_toml_str(&format!(
            "[grid]\nn = 8\nbox_length = 6.283185307179586\n[time]\ndt = 0.05\nsteps = {steps}\nsample_every = {every}\n\
             [initial]\nkind = \"random_transverse\"\nseed = 3\ncutoff = 2.5\n{extra}"
        ))
        .unwrap()
    }

    #[test]
    fn zero_steps_gives_one_sample() {
        let out = run(&cfg("", 0, 1)).unwrap();
        assert_eq!(out.series.samples.len(), 1);
        assert!(out.series.samples[0].el_residual.is_nan());
        assert!(out.snapshots.is_empty());
    }

    #[test]
    fn sample_cadence() {
        let s = run(&cfg("", 10, 3)).unwrap().series;
        assert_eq!(s.column(|x| x.t), vec![0.0, 0.15000000000000002, 0.30000000000000004, 0.45]);
        assert!(s.samples.iter().all(|x| x.el_residual.is_finite()));
    }

    #[test]
    fn snapshots_follow_samples() {
        let out = run(&cfg("[output]\nsnapshots = true\n", 4, 2)).unwrap();
        assert_eq!(out.snapshots.len(), 3);
        assert_eq!(out.snapshots[2].time, 0.2);
    }

    #[test]
    fn unstable_rk4_refused() {
        let c = SimulationConfig::from_toml_str(
            "[grid]\nn = 8\nbox_length = 6.283185307179586\n[time]\ndt = 2.0\nsteps = 1\n[solver]\nkind = \"rk4_curl\"\n\
             [initial]\nkind = \"plane_wave\"\nmode = [0, 0, 1]\nhelicity = 1\n",
        )
        .unwrap();
        assert!(matches!(run(&c), Err(Error::Unstable(_))));
    }

    #[test]
    fn csv_shape() {
        let csv = run(&cfg("", 2, 1)).unwrap().series.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], TIMESERIES_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 7));
    }
}

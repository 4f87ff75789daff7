use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::equations::{ConservationLaw, Point, StateVec};
use crate::error::{capability, config, Result};

use super::boundary::Boundary;
use super::config::RunConfig;
use super::mesh::{Mesh1d, Mesh2d};
use super::norms::Norms;
use super::output::{errors_csv, solution_csv, write_json, write_text};
use super::presets::{advection1d, advection2d, buckley1d, burgers1d, burgers2d, euler1d, euler2d, Case, Family};
use super::solver1d::Solver1d;
use super::solver2d::Solver2d;
use super::{advance_to, Solver};

/// Result of one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunOutput {
    pub config: RunConfig,
    pub variables: Vec<String>,
    /// CFL number before the safety factor.
    pub cfl: f64,
    pub steps: usize,
    /// Flux-residual evaluations: one per LW step, one per RK stage.
    pub stages: usize,
    pub time: f64,
    pub seconds: f64,
    pub initial_totals: Vec<f64>,
    pub final_totals: Vec<f64>,
    /// Errors against the closed-form solution, when the preset has one.
    pub norms: Option<Norms>,
    #[serde(skip)]
    pub nodes: Vec<Point>,
    /// Solution values per node.
    #[serde(skip)]
    pub values: Vec<Vec<f64>>,
    pub files: Vec<PathBuf>,
}

impl RunOutput {
    /// Largest change of a conserved total relative to `max(|initial|, 1)`.
    pub fn conservation_drift(&self) -> f64 {
        self.initial_totals
            .iter()
            .zip(&self.final_totals)
            .map(|(a, b)| (a - b).abs() / a.abs().max(1.0))
            .fold(0.0, f64::max)
    }

    /// Minimum of variable `v` over all solution points.
    pub fn min_value(&self, v: usize) -> f64 {
        self.values.iter().map(|u| u[v]).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorRow {
    pub grid: usize,
    pub variable: String,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    /// Order from the previous grid, in the L2 norm.
    pub eoc: Option<f64>,
    pub eoc_linf: Option<f64>,
    pub steps: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub preset: String,
    pub variables: Vec<String>,
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn rows_for<'a>(&'a self, variable: &'a str) -> impl Iterator<Item = &'a ErrorRow> + 'a {
        self.rows.iter().filter(move |r| r.variable == variable)
    }

    /// L2 orders of convergence of `variable`, one per refinement.
    pub fn eocs(&self, variable: &str) -> Vec<f64> {
        self.rows_for(variable).filter_map(|r| r.eoc).collect()
    }

    pub fn l2(&self, variable: &str) -> Vec<f64> {
        self.rows_for(variable).map(|r| r.l2).collect()
    }
}

/// `log(e_coarse / e_fine) / log(n_fine / n_coarse)`; with doubling this is
/// `log2(e_h / e_{h/2})`.
pub fn eoc(e_coarse: f64, e_fine: f64, n_coarse: usize, n_fine: usize) -> f64 {
    (e_coarse / e_fine).ln() / (n_fine as f64 / n_coarse as f64).ln()
}

fn sides<S, const K: usize>(b: Vec<Boundary<S>>) -> Result<[Boundary<S>; K]> {
    b.try_into().or_else(|_| config(format!("expected {K} boundary conditions")))
}

fn drive<Sv: Solver>(
    cfg: &RunConfig,
    solver: &mut Sv,
    exact: Option<&(dyn Fn(Point, f64) -> <Sv::Law as ConservationLaw>::State + Send + Sync)>,
    two_d: bool,
    stages: impl Fn(&Sv) -> usize,
) -> Result<RunOutput> {
    let variables: Vec<String> = solver.law().variable_names().iter().map(|s| s.to_string()).collect();
    let cfl = cfg.discretization().cfl(two_d)?;
    let initial_totals = solver.totals();
    let mut files = Vec::new();
    let snapshot = |s: &Sv, tag: &str, files: &mut Vec<PathBuf>| -> Result<()> {
        if let Some(dir) = &cfg.output_dir {
            let values: Vec<Vec<f64>> = s.values().iter().map(|u| u.as_slice().to_vec()).collect();
            let path = dir.join(format!("solution_{tag}.csv"));
            write_text(&path, &solution_csv(&s.nodes(), &values, &variables, two_d))?;
            files.push(path);
        }
        Ok(())
    };
    let start = Instant::now();
    let mut times = cfg.snapshots.clone();
    times.sort_by(f64::total_cmp);
    for (k, &t) in times.iter().enumerate() {
        advance_to(solver, t, |_| {})?;
        snapshot(solver, &format!("{k:03}"), &mut files)?;
    }
    advance_to(solver, cfg.final_time, |_| {})?;
    let seconds = start.elapsed().as_secs_f64();
    if cfg.write_solution {
        snapshot(solver, "final", &mut files)?;
    }
    let t = solver.time();
    let norms = exact.map(|f| solver.error_norms(&|x| f(x, t)));
    let out = RunOutput {
        config: cfg.clone(),
        variables,
        cfl,
        steps: solver.steps(),
        stages: stages(solver),
        time: t,
        seconds,
        initial_totals,
        final_totals: solver.totals(),
        norms,
        nodes: solver.nodes(),
        values: solver.values().iter().map(|u| u.as_slice().to_vec()).collect(),
        files,
    };
    if let Some(dir) = &cfg.output_dir {
        let path = dir.join("meta.json");
        write_json(&path, &out)?;
    }
    Ok(out)
}

fn run_1d<L: ConservationLaw>(cfg: &RunConfig, case: Case<L>) -> Result<RunOutput> {
    let mesh = Mesh1d::uniform(cfg.domain[0], cfg.domain[1], cfg.cells)?;
    let mut s = Solver1d::new(case.law, cfg.discretization(), mesh, sides(case.boundaries)?, &*case.initial)?;
    drive(cfg, &mut s, case.exact.as_deref(), false, |s| s.stage_count)
}

fn run_2d<L: ConservationLaw>(cfg: &RunConfig, case: Case<L>) -> Result<RunOutput> {
    let [a, b] = cfg.domain;
    let [c, d] = cfg.domain_y.unwrap_or(cfg.domain);
    let mesh = Mesh2d::uniform([a, c], [b, d], cfg.cells_2d())?;
    let mut s = Solver2d::new(case.law, cfg.discretization(), mesh, sides(case.boundaries)?, &*case.initial)?;
    drive(cfg, &mut s, case.exact.as_deref(), true, |s| s.stage_count)
}

/// Runs the preset named in `cfg` to its final time.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    cfg.validate()?;
    match Family::of(&cfg.preset)? {
        Family::Advection1d => run_1d(cfg, advection1d(cfg)?),
        Family::Burgers1d => run_1d(cfg, burgers1d(cfg)?),
        Family::Buckley1d => run_1d(cfg, buckley1d(cfg)?),
        Family::Euler1d => run_1d(cfg, euler1d(cfg)?),
        Family::Advection2d => run_2d(cfg, advection2d(cfg)?),
        Family::Burgers2d => run_2d(cfg, burgers2d(cfg)?),
        Family::Euler2d => run_2d(cfg, euler2d(cfg)?),
    }
}

/// Runs `cfg` on each grid (cells per direction) and tabulates errors and
/// orders. 2-D runs keep the aspect ratio of `cfg`. Writes `errors.csv` when
/// `output_dir` is set.
pub fn convergence_study(cfg: &RunConfig, grids: &[usize]) -> Result<ErrorReport> {
    if grids.is_empty() {
        return config("empty grid list");
    }
    let mut rows: Vec<ErrorRow> = Vec::new();
    let mut variables = Vec::new();
    let mut prev: Option<(usize, Norms)> = None;
    for &g in grids {
        let mut c = cfg.clone();
        c.output_dir = None;
        c.snapshots.clear();
        c.write_solution = false;
        c.cells = g;
        if let Some(ny) = cfg.cells_y {
            c.cells_y = Some((g * ny).div_ceil(cfg.cells).max(1));
        }
        let out = run(&c)?;
        let Some(norms) = out.norms.clone() else {
            return capability(&cfg.preset, "a closed-form solution for error norms");
        };
        for (v, name) in out.variables.iter().enumerate() {
            let (eoc2, eocinf) = match &prev {
                Some((gp, np)) => (
                    Some(eoc(np.l2[v], norms.l2[v], *gp, g)),
                    Some(eoc(np.linf[v], norms.linf[v], *gp, g)),
                ),
                None => (None, None),
            };
            rows.push(ErrorRow {
                grid: g,
                variable: name.clone(),
                l1: norms.l1[v],
                l2: norms.l2[v],
                linf: norms.linf[v],
                eoc: eoc2,
                eoc_linf: eocinf,
                steps: out.steps,
                seconds: out.seconds,
            });
        }
        variables = out.variables;
        prev = Some((g, norms));
    }
    let report = ErrorReport {
        preset: cfg.preset.clone(),
        variables,
        rows,
    };
    if let Some(dir) = &cfg.output_dir {
        write_text(&dir.join("errors.csv"), &errors_csv(&report))?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::preset;

    #[test]
    fn eoc_of_exact_power_law() {
        let e = |n: usize| 3.0 * (n as f64).powi(-3);
        assert!((eoc(e(20), e(40), 20, 40) - 3.0).abs() < 1e-12);
        assert!((eoc(e(20), e(60), 20, 60) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn short_run_conserves_and_reports() {
        let mut cfg = preset("advection1d_sin").unwrap();
        cfg.final_time = 0.1;
        cfg.cells = 10;
        let out = run(&cfg).unwrap();
        assert!((out.time - 0.1).abs() < 1e-14);
        assert!(out.conservation_drift() < 1e-13);
        assert!(out.norms.unwrap().l2[0] < 1e-3);
        assert_eq!(out.values.len(), 40);
    }

    #[test]
    fn convergence_writes_errors_csv() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = preset("advection1d_sin").unwrap();
        cfg.degree = 2;
        cfg.final_time = 0.25;
        cfg.output_dir = Some(dir.path().to_path_buf());
        let report = convergence_study(&cfg, &[10, 20]).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.eocs("u")[0] > 2.5);
        let csv = std::fs::read_to_string(dir.path().join("errors.csv")).unwrap();
        assert_eq!(csv.lines().count(), 3);
    }
}

//! Experiment drivers: the frozen-coefficient case against its closed form,
//! threshold sweeps, and the coupled case comparing both schemes.

use extdomain_core::grid::node_to_cell;
use extdomain_core::oracle::{exact_alpha_case1, exact_radius_case1, initial_profile};
use extdomain_core::scheme_a::simulate_extended;
use extdomain_core::scheme_b::simulate_scaled;
use extdomain_core::{
    CaseMode, ExtendedConfig, Grid, ScaledConfig, ScaledState, ScaledTrajectory, SimulationState, TimeControl,
    Trajectory, TransportMethod,
};
use rayon::prelude::*;

use crate::config::Settings;
use crate::error::Result;

/// `|l - l_h| / l`.
pub fn relative_radius_error(ell_exact: f64, ell_h: f64) -> f64 {
    (ell_exact - ell_h).abs() / ell_exact
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub method: TransportMethod,
    pub ell_a: f64,
    pub ell_b: f64,
    /// Exact final radius, when known.
    pub ell_exact: Option<f64>,
    /// Relative radius error of the extended scheme.
    pub delta_ell: Option<f64>,
    pub delta_ell_b: Option<f64>,
    pub linf_interior: Option<f64>,
    pub l1_interior: Option<f64>,
    pub linf_interior_b: Option<f64>,
    pub l1_interior_b: Option<f64>,
    /// `|l_A - l_B| / l_B`.
    pub scheme_diff: f64,
}

impl ErrorReport {
    pub const COLUMNS: [&'static str; 11] = [
        "method",
        "ell_a",
        "ell_b",
        "ell_exact",
        "delta_ell",
        "delta_ell_b",
        "linf_interior",
        "l1_interior",
        "linf_interior_b",
        "l1_interior_b",
        "scheme_diff",
    ];
}

/// Interior `(L-inf, L1)` error of cell values against `exact` on the cells
/// whose centre lies in `[0, x_max]`.
pub fn interior_errors(grid: &Grid, values: &[f64], exact: impl Fn(f64) -> f64, x_max: f64) -> (f64, f64) {
    let mut linf = 0.0f64;
    let mut l1 = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let x = grid.centre(i);
        if x > x_max {
            break;
        }
        let e = (v - exact(x)).abs();
        linf = linf.max(e);
        l1 += grid.h() * e;
    }
    (linf, l1)
}

fn extended_config(s: &Settings, mode: CaseMode, dx: f64, alpha_thr: f64) -> Result<ExtendedConfig> {
    let mut cfg = ExtendedConfig::new(
        Grid::with_spacing(s.length, dx)?,
        TimeControl::new(s.dt, s.t_final)?,
        s.method,
        alpha_thr,
        s.params,
        mode,
    );
    cfg.oxygen = s.oxygen;
    cfg.initial_oxygen = s.c0;
    cfg.snapshot_times = s.snapshot_times.clone();
    cfg.truncation_budget = s.truncation_budget;
    Ok(cfg)
}

fn scaled_config(s: &Settings, mode: CaseMode) -> Result<ScaledConfig> {
    let mut cfg = ScaledConfig::matching(s.dx, TimeControl::new(s.dt, s.t_final)?, s.method, s.params, mode)?;
    cfg.oxygen = s.oxygen;
    cfg.initial_oxygen = s.c0;
    cfg.snapshot_times = s.snapshot_times.clone();
    Ok(cfg)
}

/// Both schemes' trajectories for one experiment.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub grid: Grid,
    pub report: ErrorReport,
    pub extended: Trajectory,
    pub scaled: ScaledTrajectory,
    /// Closed-form profile evaluator, present for the frozen case only.
    pub exact: Option<ExactCase1>,
}

#[derive(Debug, Clone, Copy)]
pub struct ExactCase1 {
    pub profile: extdomain_core::Case1Profile,
    pub params: extdomain_core::ModelParams,
}

impl ExactCase1 {
    pub fn alpha(&self, t: f64, x: f64) -> f64 {
        exact_alpha_case1(t, x, self.profile, &self.params)
    }
}

/// Extended scheme only, frozen coefficients; returns the relative radius
/// error at `T`.
pub fn case1_front_error(s: &Settings, dx: f64, alpha_thr: f64) -> Result<f64> {
    let cfg = extended_config(s, CaseMode::FrozenUnit, dx, alpha_thr)?;
    let profile = s.profile;
    let traj = simulate_extended(|x| initial_profile(profile, x), &cfg)?;
    Ok(relative_radius_error(exact_radius_case1(s.t_final, s.params.ell0), traj.recovered_radius()))
}

pub fn run_case1(s: &Settings) -> Result<RunOutput> {
    let cfg = extended_config(s, CaseMode::FrozenUnit, s.dx, s.alpha_thr)?;
    let profile = s.profile;
    let init = |x| initial_profile(profile, x);
    let extended = simulate_extended(init, &cfg)?;
    let scaled = simulate_scaled(init, &scaled_config(s, CaseMode::FrozenUnit)?)?;

    let exact = ExactCase1 { profile, params: s.params };
    let t = s.t_final;
    let ell_exact = exact_radius_case1(t, s.params.ell0);
    let x_max = ell_exact - s.interior_margin;
    let grid = cfg.grid;
    let (linf_a, l1_a) = interior_errors(&grid, &extended.final_state().alpha, |x| exact.alpha(t, x), x_max);
    let b_on_grid = scaled.final_state().resample(&grid).0;
    let (linf_b, l1_b) = interior_errors(&grid, &b_on_grid, |x| exact.alpha(t, x), x_max);

    let ell_a = extended.recovered_radius();
    let ell_b = scaled.final_radius();
    let report = ErrorReport {
        method: s.method,
        ell_a,
        ell_b,
        ell_exact: Some(ell_exact),
        delta_ell: Some(relative_radius_error(ell_exact, ell_a)),
        delta_ell_b: Some(relative_radius_error(ell_exact, ell_b)),
        linf_interior: Some(linf_a),
        l1_interior: Some(l1_a),
        linf_interior_b: Some(linf_b),
        l1_interior_b: Some(l1_b),
        scheme_diff: relative_radius_error(ell_b, ell_a),
    };
    Ok(RunOutput { grid, report, extended, scaled, exact: Some(exact) })
}

/// Initial condition of the coupled case: `0.8` on `[0, l0]`.
pub fn case2_initial(ell0: f64) -> impl Fn(f64) -> f64 + Copy {
    move |x| if (0.0..=ell0).contains(&x) { 0.8 } else { 0.0 }
}

pub fn run_case2(s: &Settings) -> Result<RunOutput> {
    let cfg = extended_config(s, CaseMode::FullSystem, s.dx, s.alpha_thr)?;
    let init = case2_initial(s.params.ell0);
    let scaled_cfg = scaled_config(s, CaseMode::FullSystem)?;
    let (extended, scaled) = rayon::join(|| simulate_extended(init, &cfg), || simulate_scaled(init, &scaled_cfg));
    let (extended, scaled) = (extended?, scaled?);
    let ell_a = extended.recovered_radius();
    let ell_b = scaled.final_radius();
    let report = ErrorReport {
        method: s.method,
        ell_a,
        ell_b,
        ell_exact: None,
        delta_ell: None,
        delta_ell_b: None,
        linf_interior: None,
        l1_interior: None,
        linf_interior_b: None,
        l1_interior_b: None,
        scheme_diff: relative_radius_error(ell_b, ell_a),
    };
    Ok(RunOutput { grid: cfg.grid, report, extended, scaled, exact: None })
}

/// Relative radius errors over a `(dx, alpha_thr)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub method: TransportMethod,
    pub profile: extdomain_core::Case1Profile,
    pub dx: Vec<f64>,
    pub thr: Vec<f64>,
    /// `values[row][col]` for `dx[row]`, `thr[col]`; NaN where the run failed.
    pub values: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn get(&self, dx: f64, thr: f64) -> Option<f64> {
        let r = self.dx.iter().position(|&d| (d - dx).abs() < 1e-12)?;
        let c = self.thr.iter().position(|&t| (t - thr).abs() < 1e-12)?;
        Some(self.values[r][c])
    }
}

/// Runs every `(dx, alpha_thr)` pair in parallel. Failed cells are logged and
/// stored as NaN.
pub fn sweep_thresholds(s: &Settings) -> SweepTable {
    let cells: Vec<(usize, usize)> =
        (0..s.dx_list.len()).flat_map(|r| (0..s.thr_list.len()).map(move |c| (r, c))).collect();
    let results: Vec<((usize, usize), f64)> = cells
        .par_iter()
        .map(|&(r, c)| {
            let (dx, thr) = (s.dx_list[r], s.thr_list[c]);
            let value = case1_front_error(s, dx, thr).unwrap_or_else(|e| {
                log::warn!("sweep cell dx={dx} alpha_thr={thr} failed: {e}");
                f64::NAN
            });
            ((r, c), value)
        })
        .collect();
    let mut values = vec![vec![f64::NAN; s.thr_list.len()]; s.dx_list.len()];
    for ((r, c), v) in results {
        values[r][c] = v;
    }
    SweepTable { method: s.method, profile: s.profile, dx: s.dx_list.clone(), thr: s.thr_list.clone(), values }
}

/// Snapshot rows at the extended grid's cell centres; `u` and `C` are the
/// means of the bounding nodes. Columns follow [`SNAPSHOT_COLUMNS`].
pub fn snapshot_rows(grid: &Grid, a: &SimulationState, b: &ScaledState, exact: Option<&ExactCase1>) -> Vec<Vec<f64>> {
    let (alpha_b, u_b, c_b) = b.resample(grid);
    let (u_a, c_a) = (node_to_cell(&a.u), node_to_cell(&a.c));
    let (u_b, c_b) = (node_to_cell(&u_b), node_to_cell(&c_b));
    (0..grid.cells())
        .map(|i| {
            let x = grid.centre(i);
            let exact_v = exact.map(|e| e.alpha(a.t, x)).unwrap_or(f64::NAN);
            vec![x, a.alpha[i], u_a[i], c_a[i], alpha_b[i], u_b[i], c_b[i], exact_v]
        })
        .collect()
}

pub const SNAPSHOT_COLUMNS: [&str; 8] = ["x", "alpha_a", "u_a", "c_a", "alpha_b", "u_b", "c_b", "alpha_exact"];

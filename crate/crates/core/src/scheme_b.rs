//! Scaled-domain reference solver on `(0, 1)` with `xi = x / l(t)`.
//!
//! Chain rule on the volume fraction equation gives the conservative form
//!
//! ```text
//! (l a)_t + ((u - xi l') a)_xi = l a f(a, C)
//! ```
//!
//! which is discretised with the same Godunov/MUSCL machinery as the extended
//! scheme, using the effective face speed `(u - xi l') / l` on the `xi` grid
//! followed by the rescaling `l^n / l^{n+1}`. The velocity equation keeps its
//! physical weak form on a mesh of width `l dxi`. The oxygen equation gains the
//! mesh-stretching term `-(x l'/l) C_x`. The radius follows `l' = u(t, l)` with
//! explicit Euler, and the same `l'` drives the mesh motion within the step.

use alloc::vec::Vec;

use crate::error::SolverError;
use crate::fem::{advance_oxygen, solve_velocity, OxygenOptions, TruncatedMesh};
use crate::fv::{transport_step, TransportMethod, TransportStep};
use crate::grid::{cell_to_node, node_to_cell, CellField, Grid, NodalField, TimeControl};
use crate::model::ModelParams;
use crate::scheme_a::CaseMode;

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledConfig {
    /// Number of cells on `(0, 1)`.
    pub cells: usize,
    pub time: TimeControl,
    pub method: TransportMethod,
    pub params: ModelParams,
    pub mode: CaseMode,
    pub oxygen: OxygenOptions,
    pub initial_oxygen: f64,
    /// Extra snapshot times; `0` and `T` are always recorded.
    pub snapshot_times: Vec<f64>,
}

impl ScaledConfig {
    /// `dxi = dx / l0`, matching an extended grid of spacing `dx`.
    pub fn matching(dx: f64, time: TimeControl, method: TransportMethod, params: ModelParams, mode: CaseMode) -> Result<Self, SolverError> {
        let xi_grid = Grid::with_spacing(1.0, dx / params.ell0)?;
        Ok(ScaledConfig {
            cells: xi_grid.cells(),
            time,
            method,
            params,
            mode,
            oxygen: OxygenOptions::default(),
            initial_oxygen: 1.0,
            snapshot_times: Vec::new(),
        })
    }

    pub fn dxi(&self) -> f64 {
        1.0 / self.cells as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledState {
    pub t: f64,
    pub ell: f64,
    /// Volume fraction on the `xi` cells.
    pub alpha: CellField,
    /// Physical cell velocity on the `xi` nodes.
    pub u: NodalField,
    pub c: NodalField,
}

impl ScaledState {
    pub fn dxi(&self) -> f64 {
        1.0 / self.alpha.len() as f64
    }

    /// Physical positions of the cell centres.
    pub fn physical_centres(&self) -> Vec<f64> {
        let dxi = self.dxi();
        (0..self.alpha.len()).map(|i| (i as f64 + 0.5) * dxi * self.ell).collect()
    }

    pub fn physical_nodes(&self) -> Vec<f64> {
        let dxi = self.dxi();
        (0..self.u.len()).map(|i| i as f64 * dxi * self.ell).collect()
    }

    /// `l dxi sum(a)`.
    pub fn physical_mass(&self) -> f64 {
        self.ell * self.alpha.integral(self.dxi())
    }

    /// Volume fraction at physical position `x`: linear between cell centres,
    /// constant in the two half cells at the ends, zero beyond `l`.
    pub fn alpha_at(&self, x: f64) -> f64 {
        if x < 0.0 || x > self.ell {
            return 0.0;
        }
        let s = x / (self.ell * self.dxi()) - 0.5;
        interpolate(&self.alpha, s)
    }

    /// Nodal field at physical `x`, with `outside` beyond `l`.
    fn nodal_at(values: &[f64], ell: f64, dxi: f64, x: f64, outside: f64) -> f64 {
        if x > ell {
            return outside;
        }
        interpolate(values, x.max(0.0) / (ell * dxi))
    }

    /// Resamples onto a physical grid: cells for `alpha`, nodes for `u`, `C`.
    pub fn resample(&self, grid: &Grid) -> (CellField, NodalField, NodalField) {
        let dxi = self.dxi();
        let alpha = grid.centres().into_iter().map(|x| self.alpha_at(x)).collect();
        let u = grid.node_positions().into_iter().map(|x| Self::nodal_at(&self.u, self.ell, dxi, x, 0.0)).collect();
        let c = grid.node_positions().into_iter().map(|x| Self::nodal_at(&self.c, self.ell, dxi, x, 1.0)).collect();
        (alpha, u, c)
    }
}

/// Linear interpolation in index space `s`, clamped at both ends.
fn interpolate(values: &[f64], s: f64) -> f64 {
    let n = values.len();
    if s <= 0.0 {
        return values[0];
    }
    let i = libm::floor(s) as usize;
    if i + 1 >= n {
        return values[n - 1];
    }
    let w = s - i as f64;
    (1.0 - w) * values[i] + w * values[i + 1]
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScaledTrajectory {
    pub snapshots: Vec<ScaledState>,
    /// `(t, l)` for the initial state and after every step.
    pub radius_history: Vec<(f64, f64)>,
    /// Largest CFL number seen.
    pub max_cfl: f64,
}

impl ScaledTrajectory {
    pub fn final_state(&self) -> &ScaledState {
        self.snapshots.last().expect("trajectory always holds the initial state")
    }

    pub fn final_radius(&self) -> f64 {
        self.final_state().ell
    }
}

/// Transport part of one scaled step: face speeds `(u - xi l')/l`, reaction
/// `rate`, then rescaling by `l / l_next`. Returns the new volume fraction
/// and `l_next`.
pub fn scaled_transport_step(
    alpha: &[f64],
    u: &[f64],
    ell: f64,
    ell_dot: f64,
    rate: &[f64],
    dt: f64,
    method: TransportMethod,
) -> Result<(TransportStep, f64), SolverError> {
    let m = alpha.len();
    let dxi = 1.0 / m as f64;
    let face_speed: Vec<f64> = u
        .iter()
        .enumerate()
        .map(|(i, &ui)| {
            let xi = if i == m { 1.0 } else { i as f64 * dxi };
            (ui - xi * ell_dot) / ell
        })
        .collect();
    let ell_next = ell + dt * ell_dot;
    if !(ell_next > 0.0) {
        return Err(SolverError::RadiusCollapse { ell: ell_next });
    }
    let mut step = transport_step(alpha, &face_speed, rate, dt, dxi, method)?;
    let scale = ell / ell_next;
    step.alpha.iter_mut().for_each(|a| *a *= scale);
    Ok((step, ell_next))
}

fn solve_fields(
    alpha: &[f64],
    c_old: &[f64],
    ell: f64,
    config: &ScaledConfig,
    dt: Option<f64>,
) -> Result<(NodalField, NodalField), SolverError> {
    let n = alpha.len() + 1;
    match config.mode {
        CaseMode::FrozenUnit => Ok((NodalField::constant(n, 1.0), NodalField::constant(n, 1.0))),
        CaseMode::FullSystem => {
            let mesh = TruncatedMesh::new(alpha.len(), ell * config.dxi())?;
            let alpha_nodes = cell_to_node(alpha);
            let vel = solve_velocity(&mesh, &alpha_nodes, &config.params)?;
            let c = match dt {
                Some(dt) => {
                    let ell_dot = vel.u[n - 1];
                    let options = OxygenOptions { stretch_rate: ell_dot / ell, ..config.oxygen };
                    advance_oxygen(&mesh, c_old, &alpha_nodes, dt, &config.params, options)?
                }
                None => {
                    let mut c = c_old.to_vec();
                    c[n - 1] = 1.0;
                    NodalField::new(c)?
                }
            };
            Ok((vel.u, c))
        }
    }
}

/// Initial state from a physical profile on `(0, l0)`.
pub fn init_scaled(profile: impl Fn(f64) -> f64, config: &ScaledConfig) -> Result<ScaledState, SolverError> {
    config.params.validate()?;
    if config.cells < 2 {
        return Err(SolverError::DomainTooSmall { elements: config.cells });
    }
    let ell = config.params.ell0;
    let dxi = config.dxi();
    let alpha = CellField::new((0..config.cells).map(|i| profile((i as f64 + 0.5) * dxi * ell)).collect())?;
    let c0 = NodalField::constant(config.cells + 1, config.initial_oxygen);
    let (u, c) = solve_fields(&alpha, &c0, ell, config, None)?;
    Ok(ScaledState { t: 0.0, ell, alpha, u, c })
}

/// One scaled step; returns the new state and the transport CFL number.
pub fn step_scaled(state: &ScaledState, t_next: f64, config: &ScaledConfig) -> Result<(ScaledState, f64), SolverError> {
    let dt = config.time.dt();
    let (u, c) = solve_fields(&state.alpha, &state.c, state.ell, config, Some(dt))?;
    let ell_dot = u[u.len() - 1];
    let c_cells = node_to_cell(&c);
    let rate: Vec<f64> = state.alpha.iter().zip(c_cells.iter()).map(|(&a, &ci)| config.params.growth_rate(a, ci)).collect();
    let (transport, ell) = scaled_transport_step(&state.alpha, &u, state.ell, ell_dot, &rate, dt, config.method)?;
    Ok((ScaledState { t: t_next, ell, alpha: transport.alpha, u, c }, transport.cfl))
}

pub fn simulate_scaled(profile: impl Fn(f64) -> f64, config: &ScaledConfig) -> Result<ScaledTrajectory, SolverError> {
    let mut state = init_scaled(profile, config)?;
    let time = config.time;
    let mut traj = ScaledTrajectory {
        snapshots: alloc::vec![state.clone()],
        radius_history: Vec::with_capacity(time.steps() + 1),
        max_cfl: 0.0,
    };
    traj.radius_history.push((0.0, state.ell));
    let half_dt = 0.5 * time.dt();
    for j in 1..=time.steps() {
        let t = time.time(j);
        let (next, cfl) = step_scaled(&state, t, config).map_err(|e| e.at_step(j))?;
        traj.max_cfl = traj.max_cfl.max(cfl);
        traj.radius_history.push((t, next.ell));
        if j == time.steps() || config.snapshot_times.iter().any(|&s| libm::fabs(s - t) < half_dt) {
            traj.snapshots.push(next.clone());
        }
        state = next;
    }
    Ok(traj)
}

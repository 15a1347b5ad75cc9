//! Extended-domain time loop.
//!
//! Each step:
//! 1. recover the front from the current volume fraction,
//! 2. solve velocity and oxygen on `(0, l_h)` with P1 elements,
//! 3. extend them with `u = 0`, `C = 1` up to `L`,
//! 4. transport the volume fraction on the whole of `(0, L)`,
//! 5. recover the front again and zero everything beyond it.
//!
//! In [`CaseMode::FrozenUnit`] steps 2 and 3 are skipped and `u = C = 1`
//! everywhere.

use alloc::vec::Vec;

use crate::error::SolverError;
use crate::fem::{advance_oxygen, solve_velocity, OxygenOptions, TruncatedMesh};
use crate::front::{extend_outer_fields, recover_front, truncate_alpha, truncated_mass, FrontEstimate};
use crate::fv::{advance_alpha, TransportMethod};
use crate::grid::{cell_to_node, CellField, Grid, NodalField, TimeControl};
use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseMode {
    /// Cell velocity and oxygen pinned to one; only transport runs.
    FrozenUnit,
    /// Velocity, oxygen and volume fraction all evolve.
    FullSystem,
}

/// Per-step truncation loss allowed before a step is flagged, in units of `h`.
pub const DEFAULT_TRUNCATION_BUDGET: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedConfig {
    pub grid: Grid,
    pub time: TimeControl,
    pub method: TransportMethod,
    pub alpha_thr: f64,
    pub params: ModelParams,
    pub mode: CaseMode,
    pub oxygen: OxygenOptions,
    /// Uniform initial oxygen tension.
    pub initial_oxygen: f64,
    /// Extra snapshot times; `0` and `T` are always recorded.
    pub snapshot_times: Vec<f64>,
    /// Flag steps whose truncation loss exceeds `truncation_budget * h`.
    pub truncation_budget: f64,
}

impl ExtendedConfig {
    pub fn new(grid: Grid, time: TimeControl, method: TransportMethod, alpha_thr: f64, params: ModelParams, mode: CaseMode) -> Self {
        ExtendedConfig {
            grid,
            time,
            method,
            alpha_thr,
            params,
            mode,
            oxygen: OxygenOptions::default(),
            initial_oxygen: 1.0,
            snapshot_times: Vec::new(),
            truncation_budget: DEFAULT_TRUNCATION_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        self.params.validate()?;
        if !(self.grid.length() > self.params.ell0) {
            return Err(SolverError::InvalidDiscretisation("extended domain must be longer than the initial radius"));
        }
        if !(self.alpha_thr > 0.0 && self.alpha_thr < 1.0) {
            return Err(SolverError::InvalidParameter { name: "alpha_thr", value: self.alpha_thr });
        }
        if !(self.initial_oxygen >= 0.0) {
            return Err(SolverError::InvalidParameter { name: "C0", value: self.initial_oxygen });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationState {
    pub t: f64,
    pub alpha: CellField,
    pub u: NodalField,
    pub c: NodalField,
    pub front: FrontEstimate,
}

impl SimulationState {
    /// Volume fraction zero beyond the front, `u = 0` and `C = 1` at nodes
    /// beyond it.
    pub fn outer_invariants_hold(&self) -> bool {
        let j = self.front.j_front;
        self.alpha[j.min(self.alpha.len())..].iter().all(|&a| a == 0.0)
            && self.u[j + 1..].iter().all(|&v| v == 0.0)
            && self.c[j + 1..].iter().all(|&v| v == 1.0)
    }

    pub fn mass(&self, h: f64) -> f64 {
        self.alpha.integral(h)
    }
}

/// Per-step observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub step: usize,
    pub t: f64,
    /// Front the velocity and oxygen were solved on, recovered from the state
    /// entering the step.
    pub solve_front: f64,
    /// Front after the transport step.
    pub ell_h: f64,
    pub cfl: f64,
    /// Transport mass balance residual (should be rounding noise).
    pub mass_residual: f64,
    /// Mass removed by truncation after the transport step.
    pub truncation_loss: f64,
    pub over_truncation_budget: bool,
    pub at_domain_end: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    /// Strictly increasing in time; first is the initial state, last the
    /// final one.
    pub snapshots: Vec<SimulationState>,
    /// `(t, l_h)` for the initial state and after every step.
    pub front_history: Vec<(f64, f64)>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    pub fn final_state(&self) -> &SimulationState {
        self.snapshots.last().expect("trajectory always holds the initial state")
    }

    /// Front of the final state.
    pub fn final_radius(&self) -> f64 {
        self.front_history.last().map(|&(_, l)| l).unwrap_or(f64::NAN)
    }

    /// `l_h^N`: the front used by the last step, i.e. recovered from the state
    /// at `t_{N-1}`. Equals [`Self::final_radius`] when no step was taken.
    pub fn recovered_radius(&self) -> f64 {
        match self.diagnostics.last() {
            Some(d) => d.solve_front,
            None => self.final_radius(),
        }
    }
}

fn solve_inner(
    alpha: &[f64],
    c_old: &[f64],
    front: &FrontEstimate,
    config: &ExtendedConfig,
    dt: Option<f64>,
) -> Result<(NodalField, NodalField), SolverError> {
    let grid = &config.grid;
    match config.mode {
        CaseMode::FrozenUnit => Ok((NodalField::constant(grid.nodes(), 1.0), NodalField::constant(grid.nodes(), 1.0))),
        CaseMode::FullSystem => {
            let j = front.j_front;
            let mesh = TruncatedMesh::new(j, grid.h())?;
            let alpha_nodes = cell_to_node(&alpha[..j]);
            let vel = solve_velocity(&mesh, &alpha_nodes, &config.params)?;
            let c = match dt {
                Some(dt) => advance_oxygen(&mesh, &c_old[..=j], &alpha_nodes, dt, &config.params, config.oxygen)?,
                None => {
                    let mut c = c_old[..=j].to_vec();
                    c[j] = 1.0;
                    NodalField::new(c)?
                }
            };
            extend_outer_fields(&vel.u, &c, front, grid)
        }
    }
}

/// Samples `profile` at cell centres, recovers the front, solves the initial
/// velocity and sets the oxygen tension to its initial value.
pub fn init_state(profile: impl Fn(f64) -> f64, config: &ExtendedConfig) -> Result<SimulationState, SolverError> {
    config.validate()?;
    let grid = &config.grid;
    let alpha = CellField::new(grid.centres().into_iter().map(&profile).collect())?;
    let front = recover_front(&alpha, config.alpha_thr, grid)?;
    let alpha = truncate_alpha(&alpha, &front);
    let c0 = NodalField::constant(grid.nodes(), config.initial_oxygen);
    let (u, c) = solve_inner(&alpha, &c0, &front, config, None)?;
    Ok(SimulationState { t: 0.0, alpha, u, c, front })
}

/// Advances `state` by one time step to time `t_next`.
pub fn step(state: &SimulationState, t_next: f64, config: &ExtendedConfig) -> Result<(SimulationState, Diagnostics), SolverError> {
    let grid = &config.grid;
    let dt = config.time.dt();
    let h = grid.h();

    let front = recover_front(&state.alpha, config.alpha_thr, grid)?;
    let (u, c) = solve_inner(&state.alpha, &state.c, &front, config, Some(dt))?;

    let transport = advance_alpha(&state.alpha, &u, &c, dt, h, config.method, &config.params)?;
    let mass_residual = transport.mass_residual(&state.alpha, h, dt);

    let new_front = recover_front(&transport.alpha, config.alpha_thr, grid)?;
    let truncation_loss = truncated_mass(&transport.alpha, &new_front, h);
    let alpha = truncate_alpha(&transport.alpha, &new_front);

    // Keep u = 0, C = 1 beyond the front when it recedes.
    let (mut u, mut c) = (u, c);
    for i in new_front.j_front + 1..grid.nodes() {
        u[i] = 0.0;
        c[i] = 1.0;
    }

    let diag = Diagnostics {
        step: 0,
        t: t_next,
        solve_front: front.ell_h,
        ell_h: new_front.ell_h,
        cfl: transport.cfl,
        mass_residual,
        truncation_loss,
        over_truncation_budget: truncation_loss > config.truncation_budget * h,
        at_domain_end: new_front.at_domain_end,
    };
    Ok((SimulationState { t: t_next, alpha, u, c, front: new_front }, diag))
}

/// Runs the full time loop from `profile`.
pub fn simulate_extended(profile: impl Fn(f64) -> f64, config: &ExtendedConfig) -> Result<Trajectory, SolverError> {
    let mut state = init_state(profile, config)?;
    let time = config.time;
    let mut traj = Trajectory {
        snapshots: alloc::vec![state.clone()],
        front_history: Vec::with_capacity(time.steps() + 1),
        diagnostics: Vec::with_capacity(time.steps()),
    };
    traj.front_history.push((0.0, state.front.ell_h));
    let half_dt = 0.5 * time.dt();
    for j in 1..=time.steps() {
        let t = time.time(j);
        let (next, mut diag) = step(&state, t, config).map_err(|e| e.at_step(j))?;
        diag.step = j;
        traj.front_history.push((t, next.front.ell_h));
        traj.diagnostics.push(diag);
        let wanted = j == time.steps() || config.snapshot_times.iter().any(|&s| libm::fabs(s - t) < half_dt);
        if wanted {
            traj.snapshots.push(next.clone());
        }
        state = next;
    }
    Ok(traj)
}

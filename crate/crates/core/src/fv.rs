//! Explicit cell-centred finite volumes for `da/dt + d(u a)/dx = a f(a, C)`.
//!
//! Method U is first-order Godunov upwinding; method M reconstructs limited
//! linear profiles (MUSCL) before evaluating the same Godunov flux. Both use
//! a single explicit step with the reaction term integrated in the same
//! unsplit update, and a zero exterior state beyond both ends of the domain.
//!
//! The MUSCL traces used in the update are evaluated at the half time level
//! along the characteristic, `a_i +- (1 - |nu|) delta_i / 2` with the local
//! Courant number `nu` of the face. This keeps the limited scheme TVD up to
//! `|nu| = 1`; the purely spatial traces `a_i +- delta_i / 2` combined with a
//! forward Euler step ([`TransportMethod::MusclSpatial`]) lose stability well
//! before that.

use alloc::vec::Vec;

use crate::error::SolverError;
use crate::grid::{node_to_cell, CellField, NodalField};
use crate::model::ModelParams;

/// Slope limiter for the MUSCL reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Limiter {
    #[default]
    Minmod,
}

impl Limiter {
    pub fn limit(self, backward: f64, forward: f64) -> f64 {
        match self {
            Limiter::Minmod => minmod(backward, forward),
        }
    }
}

pub fn minmod(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        a.min(b)
    } else if a < 0.0 && b < 0.0 {
        a.max(b)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransportMethod {
    /// Method U.
    Upwind,
    /// Method M.
    Muscl(Limiter),
    /// Spatial MUSCL traces with a plain forward Euler step. Unstable near
    /// `CFL = 1`; kept for comparison.
    MusclSpatial(Limiter),
}

impl TransportMethod {
    pub const MUSCL: TransportMethod = TransportMethod::Muscl(Limiter::Minmod);

    pub fn label(&self) -> &'static str {
        match self {
            TransportMethod::Upwind => "U",
            TransportMethod::Muscl(_) => "M",
            TransportMethod::MusclSpatial(_) => "M-spatial",
        }
    }
}

/// Godunov flux of the linear flux `u a`: take the upwind state.
#[inline]
pub fn numerical_flux(alpha_left: f64, alpha_right: f64, u_face: f64) -> f64 {
    if u_face >= 0.0 {
        u_face * alpha_left
    } else {
        u_face * alpha_right
    }
}

/// Reconstructed states on both sides of every face.
///
/// Face `i` sits at node `i`; `left[i]` is the trace from cell `i - 1` and
/// `right[i]` the trace from cell `i`. The exterior of the domain is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceStates {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

/// Piecewise-constant traces (method U).
pub fn constant_face_values(cells: &[f64]) -> FaceStates {
    let m = cells.len();
    let mut left = Vec::with_capacity(m + 1);
    let mut right = Vec::with_capacity(m + 1);
    left.push(0.0);
    left.extend_from_slice(cells);
    right.extend_from_slice(cells);
    right.push(0.0);
    FaceStates { left, right }
}

/// Limited per-cell slope times `h` (the jump across the cell); zero in the
/// two boundary cells.
pub fn limited_increments(cells: &[f64], limiter: Limiter) -> Vec<f64> {
    let m = cells.len();
    let mut inc = alloc::vec![0.0; m];
    for i in 1..m.saturating_sub(1) {
        inc[i] = limiter.limit(cells[i] - cells[i - 1], cells[i + 1] - cells[i]);
    }
    inc
}

/// MUSCL traces with limited linear reconstruction.
pub fn muscl_face_values(cells: &[f64], limiter: Limiter) -> FaceStates {
    let m = cells.len();
    let inc = limited_increments(cells, limiter);
    let mut left = Vec::with_capacity(m + 1);
    let mut right = Vec::with_capacity(m + 1);
    left.push(0.0);
    for i in 0..m {
        left.push(cells[i] + 0.5 * inc[i]);
        right.push(cells[i] - 0.5 * inc[i]);
    }
    right.push(0.0);
    FaceStates { left, right }
}

/// MUSCL traces advanced half a step along the characteristic of each face:
/// `left[i + 1] = a_i + (1 - |nu_{i+1}|) delta_i / 2`,
/// `right[i] = a_i - (1 - |nu_i|) delta_i / 2`, with `nu = u dt / h`.
pub fn characteristic_face_values(cells: &[f64], face_speed: &[f64], dt: f64, h: f64, limiter: Limiter) -> FaceStates {
    let m = cells.len();
    let inc = limited_increments(cells, limiter);
    let ratio = dt / h;
    let mut left = Vec::with_capacity(m + 1);
    let mut right = Vec::with_capacity(m + 1);
    left.push(0.0);
    for i in 0..m {
        let nu_right = libm::fabs(face_speed[i + 1]) * ratio;
        let nu_left = libm::fabs(face_speed[i]) * ratio;
        left.push(cells[i] + 0.5 * (1.0 - nu_right) * inc[i]);
        right.push(cells[i] - 0.5 * (1.0 - nu_left) * inc[i]);
    }
    right.push(0.0);
    FaceStates { left, right }
}

pub fn face_values(cells: &[f64], face_speed: &[f64], dt: f64, h: f64, method: TransportMethod) -> FaceStates {
    match method {
        TransportMethod::Upwind => constant_face_values(cells),
        TransportMethod::Muscl(limiter) => characteristic_face_values(cells, face_speed, dt, h, limiter),
        TransportMethod::MusclSpatial(limiter) => muscl_face_values(cells, limiter),
    }
}

/// `max |u| dt / h`.
pub fn cfl_number(u: &[f64], dt: f64, h: f64) -> f64 {
    u.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v))) * dt / h
}

/// Result of one transport step, with the terms of its discrete mass balance.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportStep {
    pub alpha: CellField,
    /// Godunov fluxes at every face, `M + 1` entries.
    pub fluxes: Vec<f64>,
    /// `h * sum_i a_i f_i` evaluated on the old state.
    pub source_integral: f64,
    pub cfl: f64,
}

impl TransportStep {
    /// `h sum(new - old) - dt (source - (F_M - F_0))`; zero up to rounding.
    pub fn mass_residual(&self, old: &[f64], h: f64, dt: f64) -> f64 {
        let change: f64 = self.alpha.iter().zip(old).map(|(n, o)| n - o).sum::<f64>() * h;
        let outflow = self.fluxes[self.fluxes.len() - 1] - self.fluxes[0];
        change - dt * (self.source_integral - outflow)
    }
}

/// Conservative explicit step with given face speeds and a per-cell reaction
/// rate: `a_i <- a_i - dt/h (F_{i+1} - F_i) + dt a_i rate_i`.
pub fn transport_step(
    alpha: &[f64],
    face_speed: &[f64],
    rate: &[f64],
    dt: f64,
    h: f64,
    method: TransportMethod,
) -> Result<TransportStep, SolverError> {
    let m = alpha.len();
    if face_speed.len() != m + 1 {
        return Err(SolverError::LengthMismatch { expected: m + 1, found: face_speed.len() });
    }
    if rate.len() != m {
        return Err(SolverError::LengthMismatch { expected: m, found: rate.len() });
    }
    let cfl = cfl_number(face_speed, dt, h);
    if !(cfl <= 1.0 + 1e-12) {
        return Err(SolverError::CflViolation { cfl });
    }
    let states = face_values(alpha, face_speed, dt, h, method);
    let fluxes: Vec<f64> = (0..=m)
        .map(|i| numerical_flux(states.left[i], states.right[i], face_speed[i]))
        .collect();
    let ratio = dt / h;
    let mut source_sum = 0.0;
    let mut next = Vec::with_capacity(m);
    for i in 0..m {
        let src = alpha[i] * rate[i];
        source_sum += src;
        let v = alpha[i] - ratio * (fluxes[i + 1] - fluxes[i]) + dt * src;
        if !v.is_finite() {
            return Err(SolverError::NonFiniteState { index: i });
        }
        next.push(v);
    }
    Ok(TransportStep { alpha: CellField::new(next)?, fluxes, source_integral: h * source_sum, cfl })
}

/// One forward-Euler step of the volume fraction equation on the full grid,
/// with nodal velocity `u` (faces are nodes) and nodal oxygen `c`.
pub fn advance_alpha(
    alpha: &CellField,
    u: &NodalField,
    c: &NodalField,
    dt: f64,
    h: f64,
    method: TransportMethod,
    params: &ModelParams,
) -> Result<TransportStep, SolverError> {
    if u.len() != alpha.len() + 1 {
        return Err(SolverError::LengthMismatch { expected: alpha.len() + 1, found: u.len() });
    }
    if c.len() != alpha.len() + 1 {
        return Err(SolverError::LengthMismatch { expected: alpha.len() + 1, found: c.len() });
    }
    let c_cells = node_to_cell(c);
    let rate: Vec<f64> = alpha.iter().zip(c_cells.iter()).map(|(&a, &ci)| params.growth_rate(a, ci)).collect();
    transport_step(alpha, u, &rate, dt, h, method)
}

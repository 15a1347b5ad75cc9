//! P1 finite elements for the cell velocity and the oxygen tension on the
//! tumour interval `(0, l)`.
//!
//! Coefficients are given at nodes and treated as P1 interpolants; element
//! integrals use two-point Gauss quadrature. Both problems lead to
//! tridiagonal systems solved directly.

use alloc::vec::Vec;

use crate::error::SolverError;
use crate::grid::NodalField;
use crate::linalg::Tridiagonal;
use crate::model::ModelParams;

const GAUSS_OFFSET: f64 = 0.288_675_134_594_812_9; // 1 / (2 sqrt(3))

/// Reference coordinates of the two Gauss points on `[0, 1]`.
const GAUSS_POINTS: [f64; 2] = [0.5 - GAUSS_OFFSET, 0.5 + GAUSS_OFFSET];

/// Nodes `0..=j_front` of a uniform mesh with spacing `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedMesh {
    j_front: usize,
    h: f64,
}

impl TruncatedMesh {
    pub fn new(j_front: usize, h: f64) -> Result<Self, SolverError> {
        if j_front < 2 {
            return Err(SolverError::DomainTooSmall { elements: j_front });
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(SolverError::InvalidDiscretisation("element width must be positive"));
        }
        Ok(TruncatedMesh { j_front, h })
    }

    pub fn j_front(&self) -> usize {
        self.j_front
    }

    pub fn nodes(&self) -> usize {
        self.j_front + 1
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn length(&self) -> f64 {
        self.j_front as f64 * self.h
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    fn check(&self, name_len: usize) -> Result<(), SolverError> {
        if name_len != self.nodes() {
            return Err(SolverError::LengthMismatch { expected: self.nodes(), found: name_len });
        }
        Ok(())
    }
}

/// `int_e c N_i N_j` for a P1 coefficient with end values `ca`, `cb`.
fn weighted_mass_block(h: f64, ca: f64, cb: f64) -> [[f64; 2]; 2] {
    let mut block = [[0.0; 2]; 2];
    for s in GAUSS_POINTS {
        let n = [1.0 - s, s];
        let c = n[0] * ca + n[1] * cb;
        let w = 0.5 * h;
        for i in 0..2 {
            for j in 0..2 {
                block[i][j] += w * c * (n[i] * n[j]);
            }
        }
    }
    block
}

/// `int_e c N_i' N_j'` for a P1 coefficient.
fn weighted_stiffness_block(h: f64, ca: f64, cb: f64) -> [[f64; 2]; 2] {
    let k = 0.5 * (ca + cb) / h;
    [[k, -k], [-k, k]]
}

/// `int_e w N_j' N_i` for a P1 convection speed `w`; row `i`, column `j`.
fn weighted_convection_block(h: f64, wa: f64, wb: f64) -> [[f64; 2]; 2] {
    let mut block = [[0.0; 2]; 2];
    let dn = [-1.0 / h, 1.0 / h];
    for s in GAUSS_POINTS {
        let n = [1.0 - s, s];
        let w = n[0] * wa + n[1] * wb;
        for i in 0..2 {
            for j in 0..2 {
                block[i][j] += 0.5 * h * w * dn[j] * n[i];
            }
        }
    }
    block
}

/// `int_e g N_i` by Gauss quadrature for a pointwise load `g(x)`.
fn load_vector(h: f64, x0: f64, g: &impl Fn(f64) -> f64) -> [f64; 2] {
    let mut out = [0.0; 2];
    for s in GAUSS_POINTS {
        let gx = g(x0 + s * h);
        out[0] += 0.5 * h * gx * (1.0 - s);
        out[1] += 0.5 * h * gx * s;
    }
    out
}

/// Velocity on the truncated mesh plus the weak-form boundary contribution
/// that was added at `x = l`.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocitySolution {
    pub u: NodalField,
    pub boundary_term: f64,
}

/// Solves `k a/(1-a) u - mu (a u')' = -Sigma(a)'` with `u(0) = 0` and the
/// traction condition at the right end.
pub fn solve_velocity(
    mesh: &TruncatedMesh,
    alpha_nodes: &[f64],
    params: &ModelParams,
) -> Result<VelocitySolution, SolverError> {
    solve_velocity_with_load(mesh, alpha_nodes, params, |_| 0.0)
}

/// [`solve_velocity`] with an additional body load `g(x)` on the right-hand
/// side; used for manufactured-solution checks.
pub fn solve_velocity_with_load(
    mesh: &TruncatedMesh,
    alpha_nodes: &[f64],
    params: &ModelParams,
    load: impl Fn(f64) -> f64,
) -> Result<VelocitySolution, SolverError> {
    mesh.check(alpha_nodes.len())?;
    let n = mesh.nodes();
    let h = mesh.h();
    let drag: Vec<f64> = alpha_nodes.iter().map(|&a| params.drag_factor(a).map(|d| params.k * d)).collect::<Result<_, _>>()?;
    let stress: Vec<f64> = alpha_nodes.iter().map(|&a| params.stress(a)).collect::<Result<_, _>>()?;

    // Full (n x n) assembly, then drop the Dirichlet row/column at node 0.
    let mut a = Tridiagonal::zeros(n);
    let mut rhs = alloc::vec![0.0; n];
    for e in 0..mesh.j_front() {
        let m = weighted_mass_block(h, drag[e], drag[e + 1]);
        let k = weighted_stiffness_block(h, params.mu * alpha_nodes[e], params.mu * alpha_nodes[e + 1]);
        a.add_block(e, [[m[0][0] + k[0][0], m[0][1] + k[0][1]], [m[1][0] + k[1][0], m[1][1] + k[1][1]]]);
        let sigma_int = 0.5 * (stress[e] + stress[e + 1]);
        rhs[e] -= sigma_int;
        rhs[e + 1] += sigma_int;
        let g = load_vector(h, mesh.node(e), &load);
        rhs[e] += g[0];
        rhs[e + 1] += g[1];
    }
    let a_end = alpha_nodes[n - 1];
    let boundary_term = a_end * params.boundary_traction(a_end)? - stress[n - 1];
    rhs[n - 1] += boundary_term;

    let reduced = Tridiagonal {
        lower: a.lower[1..].to_vec(),
        diag: a.diag[1..].to_vec(),
        upper: a.upper[1..].to_vec(),
    };
    let interior = reduced.solve_spd(&rhs[1..])?;
    let mut u = Vec::with_capacity(n);
    u.push(0.0);
    u.extend(interior);
    Ok(VelocitySolution { u: NodalField::new(u)?, boundary_term })
}

/// Time discretisation of the oxygen equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OxygenStepping {
    /// Implicit step; unconditionally stable.
    #[default]
    BackwardEuler,
    /// Explicit step; stable only for small `dt / h^2`.
    ForwardEuler,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OxygenOptions {
    pub stepping: OxygenStepping,
    /// Row-summed mass matrix instead of the consistent one.
    pub lumped_mass: bool,
    /// `l'/l`; adds the mesh-stretching term `-(x l'/l) dC/dx` used on the
    /// scaled domain. Zero on a fixed mesh.
    pub stretch_rate: f64,
}

/// One step of `dC/dt - C'' = -Q a C / (1 + Q1 C)` with `C'(0) = 0` and
/// `C(l) = 1`. The sink is linear in the new `C`; its denominator is lagged.
pub fn advance_oxygen(
    mesh: &TruncatedMesh,
    c_old: &[f64],
    alpha_nodes: &[f64],
    dt: f64,
    params: &ModelParams,
    options: OxygenOptions,
) -> Result<NodalField, SolverError> {
    mesh.check(c_old.len())?;
    mesh.check(alpha_nodes.len())?;
    if !(dt > 0.0) {
        return Err(SolverError::InvalidDiscretisation("dt must be positive"));
    }
    let n = mesh.nodes();
    let h = mesh.h();
    let sink: Vec<f64> = alpha_nodes
        .iter()
        .zip(c_old)
        .map(|(&a, &c)| {
            let denom = 1.0 + params.q1hat * c;
            if denom <= 0.0 {
                Err(SolverError::SingularCoefficient { alpha: a })
            } else {
                Ok(params.q * a / denom)
            }
        })
        .collect::<Result<_, _>>()?;

    let mut mass = Tridiagonal::zeros(n);
    let mut operator = Tridiagonal::zeros(n);
    for e in 0..mesh.j_front() {
        let mut m = weighted_mass_block(h, 1.0, 1.0);
        if options.lumped_mass {
            m = [[m[0][0] + m[0][1], 0.0], [0.0, m[1][0] + m[1][1]]];
        }
        mass.add_block(e, m);
        let k = weighted_stiffness_block(h, 1.0, 1.0);
        let s = weighted_mass_block(h, sink[e], sink[e + 1]);
        let mut block = [[k[0][0] + s[0][0], k[0][1] + s[0][1]], [k[1][0] + s[1][0], k[1][1] + s[1][1]]];
        if options.stretch_rate != 0.0 {
            let w = |x: f64| x * options.stretch_rate;
            let a = weighted_convection_block(h, w(mesh.node(e)), w(mesh.node(e + 1)));
            for i in 0..2 {
                for j in 0..2 {
                    block[i][j] -= a[i][j];
                }
            }
        }
        operator.add_block(e, block);
    }

    let last = n - 1;
    let (system, mut rhs) = match options.stepping {
        OxygenStepping::BackwardEuler => {
            let mut sys = Tridiagonal::zeros(n);
            for i in 0..n {
                sys.diag[i] = mass.diag[i] / dt + operator.diag[i];
            }
            for i in 0..last {
                sys.lower[i] = mass.lower[i] / dt + operator.lower[i];
                sys.upper[i] = mass.upper[i] / dt + operator.upper[i];
            }
            let rhs: Vec<f64> = mass.mul_vec(c_old).iter().map(|v| v / dt).collect();
            (sys, rhs)
        }
        OxygenStepping::ForwardEuler => {
            let mc = mass.mul_vec(c_old);
            let ac = operator.mul_vec(c_old);
            let rhs: Vec<f64> = mc.iter().zip(&ac).map(|(m, a)| m - dt * a).collect();
            (mass, rhs)
        }
    };

    // Dirichlet value 1 at the last node.
    let c_end = 1.0;
    rhs[last - 1] -= system.upper[last - 1] * c_end;
    let reduced = Tridiagonal {
        lower: system.lower[..last - 1].to_vec(),
        diag: system.diag[..last].to_vec(),
        upper: system.upper[..last - 1].to_vec(),
    };
    let mut c = if reduced.is_symmetric() {
        reduced.solve_spd(&rhs[..last])?
    } else {
        reduced.solve(&rhs[..last])?
    };
    c.push(c_end);
    NodalField::new(c)
}

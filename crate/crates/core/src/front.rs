//! Threshold recovery of the tumour boundary on the fixed grid.

use alloc::vec::Vec;

use crate::error::SolverError;
use crate::grid::{CellField, Grid, NodalField};

/// Recovered boundary: node index and its position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontEstimate {
    pub j_front: usize,
    pub ell_h: f64,
    /// The front sits on the last node, i.e. the domain is too short.
    pub at_domain_end: bool,
}

/// Smallest node `x_j` such that every cell in `(x_j, L)` is below
/// `alpha_thr`.
pub fn recover_front(alpha: &[f64], alpha_thr: f64, grid: &Grid) -> Result<FrontEstimate, SolverError> {
    if !(alpha_thr > 0.0 && alpha_thr < 1.0) {
        return Err(SolverError::InvalidParameter { name: "alpha_thr", value: alpha_thr });
    }
    if alpha.len() != grid.cells() {
        return Err(SolverError::LengthMismatch { expected: grid.cells(), found: alpha.len() });
    }
    let last_above = alpha.iter().rposition(|&a| a >= alpha_thr).ok_or(SolverError::FrontLost)?;
    let j_front = last_above + 1;
    Ok(FrontEstimate { j_front, ell_h: grid.node(j_front), at_domain_end: j_front == grid.cells() })
}

/// Zeroes every cell right of the front.
pub fn truncate_alpha(alpha: &CellField, front: &FrontEstimate) -> CellField {
    let mut out = alpha.clone();
    let start = front.j_front.min(out.len());
    out[start..].iter_mut().for_each(|a| *a = 0.0);
    out
}

/// `h` times the sum of the cells that [`truncate_alpha`] removes.
pub fn truncated_mass(alpha: &[f64], front: &FrontEstimate, h: f64) -> f64 {
    let start = front.j_front.min(alpha.len());
    h * alpha[start..].iter().sum::<f64>()
}

/// Extends fields solved on nodes `0..=j_front` to the whole grid with
/// `u = 0` and `C = 1` beyond the front.
pub fn extend_outer_fields(
    u: &[f64],
    c: &[f64],
    front: &FrontEstimate,
    grid: &Grid,
) -> Result<(NodalField, NodalField), SolverError> {
    let solved = front.j_front + 1;
    for len in [u.len(), c.len()] {
        if len != solved {
            return Err(SolverError::LengthMismatch { expected: solved, found: len });
        }
    }
    let outer = grid.nodes() - solved;
    let extend = |vals: &[f64], fill: f64| -> Vec<f64> {
        let mut out = Vec::with_capacity(grid.nodes());
        out.extend_from_slice(vals);
        out.extend(core::iter::repeat(fill).take(outer));
        out
    };
    Ok((NodalField::new(extend(u, 0.0))?, NodalField::new(extend(c, 1.0))?))
}

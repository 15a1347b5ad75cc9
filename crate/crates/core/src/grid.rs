//! Uniform mesh on `(0, L)` and the two field layouts living on it.
//!
//! Cells are `(x_i, x_{i+1})`, so finite-volume faces coincide with the
//! finite-element nodes and velocities need no interpolation between the two.

use alloc::vec::Vec;
use core::ops::{Deref, DerefMut};

use crate::error::SolverError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    length: f64,
    cells: usize,
    h: f64,
}

impl Grid {
    pub fn new(length: f64, cells: usize) -> Result<Self, SolverError> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(SolverError::InvalidDiscretisation("domain length must be positive"));
        }
        if cells == 0 {
            return Err(SolverError::InvalidDiscretisation("grid needs at least one cell"));
        }
        Ok(Grid { length, cells, h: length / cells as f64 })
    }

    /// Grid whose spacing is `dx`; `length / dx` must be an integer up to
    /// rounding.
    pub fn with_spacing(length: f64, dx: f64) -> Result<Self, SolverError> {
        if !(dx > 0.0) {
            return Err(SolverError::InvalidDiscretisation("dx must be positive"));
        }
        let ratio = length / dx;
        let cells = libm::round(ratio);
        if cells < 1.0 || libm::fabs(ratio - cells) > 1e-9 * ratio.max(1.0) {
            return Err(SolverError::InvalidDiscretisation("domain length is not a multiple of dx"));
        }
        Grid::new(length, cells as usize)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Number of cells `M`; there are `M + 1` nodes.
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn nodes(&self) -> usize {
        self.cells + 1
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.cells {
            self.length
        } else {
            i as f64 * self.h
        }
    }

    pub fn centre(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.h
    }

    pub fn node_positions(&self) -> Vec<f64> {
        (0..self.nodes()).map(|i| self.node(i)).collect()
    }

    pub fn centres(&self) -> Vec<f64> {
        (0..self.cells).map(|i| self.centre(i)).collect()
    }

    /// Index of the node closest to `x`, clamped to the grid.
    pub fn nearest_node(&self, x: f64) -> usize {
        let j = libm::round(x / self.h);
        if j <= 0.0 {
            0
        } else {
            (j as usize).min(self.cells)
        }
    }

    pub fn check_cells(&self, field: &CellField) -> Result<(), SolverError> {
        check_len(self.cells, field.len())
    }

    pub fn check_nodes(&self, field: &NodalField) -> Result<(), SolverError> {
        check_len(self.nodes(), field.len())
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), SolverError> {
    if expected == found {
        Ok(())
    } else {
        Err(SolverError::LengthMismatch { expected, found })
    }
}

fn check_finite(values: &[f64]) -> Result<(), SolverError> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(SolverError::NonFiniteState { index }),
        None => Ok(()),
    }
}

macro_rules! field_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Default)]
        pub struct $name(Vec<f64>);

        impl $name {
            /// Wraps `values`, rejecting NaN and infinities.
            pub fn new(values: Vec<f64>) -> Result<Self, SolverError> {
                check_finite(&values)?;
                Ok($name(values))
            }

            pub fn constant(len: usize, value: f64) -> Self {
                $name(alloc::vec![value; len])
            }

            pub fn zeros(len: usize) -> Self {
                Self::constant(len, 0.0)
            }

            pub fn into_inner(self) -> Vec<f64> {
                self.0
            }

            pub fn check_finite(&self) -> Result<(), SolverError> {
                check_finite(&self.0)
            }
        }

        impl Deref for $name {
            type Target = [f64];

            fn deref(&self) -> &[f64] {
                &self.0
            }
        }

        impl DerefMut for $name {
            fn deref_mut(&mut self) -> &mut [f64] {
                &mut self.0
            }
        }

        impl From<$name> for Vec<f64> {
            fn from(field: $name) -> Vec<f64> {
                field.0
            }
        }

        impl FromIterator<f64> for $name {
            fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
                $name(iter.into_iter().collect())
            }
        }
    };
}

field_type!(
    /// One value per cell, e.g. the volume fraction.
    CellField
);
field_type!(
    /// One value per node, e.g. velocity and oxygen tension.
    NodalField
);

impl CellField {
    /// `h * sum(values)`.
    pub fn integral(&self, h: f64) -> f64 {
        h * self.0.iter().sum::<f64>()
    }
}

/// Nodal average of a cell field: interior nodes take the mean of the two
/// neighbouring cells, the end nodes copy their only neighbour.
pub fn cell_to_node(cells: &[f64]) -> NodalField {
    let m = cells.len();
    if m == 0 {
        return NodalField(Vec::new());
    }
    let mut nodes = Vec::with_capacity(m + 1);
    nodes.push(cells[0]);
    nodes.extend(cells.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    nodes.push(cells[m - 1]);
    NodalField(nodes)
}

/// Mean of the two bounding nodes of every cell.
pub fn node_to_cell(nodes: &[f64]) -> CellField {
    CellField(nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect())
}

/// Face velocities for the transport step. Face `i` is node `i`.
pub fn node_to_face_velocity(nodes: &NodalField) -> &[f64] {
    nodes
}

/// Uniform time stepping with `steps * dt = t_final`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeControl {
    dt: f64,
    t_final: f64,
    steps: usize,
}

impl TimeControl {
    /// A zero final time gives zero steps.
    pub fn new(dt: f64, t_final: f64) -> Result<Self, SolverError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(SolverError::InvalidDiscretisation("dt must be positive"));
        }
        if !(t_final >= 0.0 && t_final.is_finite()) {
            return Err(SolverError::InvalidDiscretisation("final time must be non-negative"));
        }
        let ratio = t_final / dt;
        let steps = libm::round(ratio);
        if libm::fabs(ratio - steps) > 1e-9 * ratio.max(1.0) {
            return Err(SolverError::InvalidDiscretisation("final time is not a multiple of dt"));
        }
        Ok(TimeControl { dt, t_final, steps: steps as usize })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Time after `j` steps, computed without accumulating rounding.
    pub fn time(&self, j: usize) -> f64 {
        if j == self.steps {
            self.t_final
        } else {
            j as f64 * self.dt
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_geometry() {
        let g = Grid::with_spacing(6.0, 0.02).unwrap();
        assert_eq!(g.cells(), 300);
        assert_eq!(g.nodes(), 301);
        assert_eq!(g.node(300), 6.0);
        assert_abs_diff_eq!(g.centre(0), 0.01, epsilon = 1e-15);
        for i in 0..g.cells() {
            assert_abs_diff_eq!(g.node(i + 1) - g.node(i), g.h(), epsilon = 1e-12);
        }
        assert_eq!(g.nearest_node(1.0), 50);
        assert!(Grid::with_spacing(1.0, 0.3).is_err());
        assert!(Grid::new(0.0, 3).is_err());
        assert!(Grid::new(1.0, 0).is_err());
    }

    #[test]
    fn cell_to_node_examples() {
        let c = cell_to_node(&[0.3; 5]);
        assert!(c.iter().all(|&v| v == 0.3));
        assert_eq!(c.len(), 6);
        assert_eq!(&*cell_to_node(&[0.0, 1.0]), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn cell_to_node_exact_for_affine_data() {
        let g = Grid::new(2.0, 10).unwrap();
        let (a, b) = (1.7, -0.3);
        let cells: Vec<f64> = g.centres().iter().map(|x| a * x + b).collect();
        let nodes = cell_to_node(&cells);
        for i in 1..g.cells() {
            assert_abs_diff_eq!(nodes[i], a * g.node(i) + b, epsilon = 1e-13);
        }
    }

    #[test]
    fn faces_are_nodes() {
        let u = NodalField::new(alloc::vec![0.0, 0.2, 1.0]).unwrap();
        assert_eq!(node_to_face_velocity(&u), &[0.0, 0.2, 1.0]);
        let ones = NodalField::constant(4, 1.0);
        assert!(node_to_face_velocity(&ones).iter().all(|&v| v == 1.0));
    }

    #[test]
    fn fields_reject_non_finite() {
        assert!(matches!(
            CellField::new(alloc::vec![0.0, f64::NAN]),
            Err(SolverError::NonFiniteState { index: 1 })
        ));
        assert!(NodalField::new(alloc::vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn time_control() {
        let t = TimeControl::new(0.01, 5.0).unwrap();
        assert_eq!(t.steps(), 500);
        assert_eq!(t.time(500), 5.0);
        assert_eq!(TimeControl::new(0.01, 228.0).unwrap().steps(), 22_800);
        assert_eq!(TimeControl::new(0.01, 0.0).unwrap().steps(), 0);
        assert!(TimeControl::new(0.03, 1.0).is_err());
        assert!(TimeControl::new(0.0, 1.0).is_err());
    }
}

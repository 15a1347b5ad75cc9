//! Direct solvers for the tridiagonal systems produced by 1D P1 assembly.

use alloc::vec::Vec;

use crate::error::SolverError;

/// Tridiagonal matrix stored by diagonals. `lower[i]` couples row `i + 1` to
/// column `i`, `upper[i]` couples row `i` to column `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn zeros(n: usize) -> Self {
        let off = n.saturating_sub(1);
        Tridiagonal {
            lower: alloc::vec![0.0; off],
            diag: alloc::vec![0.0; n],
            upper: alloc::vec![0.0; off],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Adds a 2x2 element block at rows/columns `(i, i + 1)`.
    pub fn add_block(&mut self, i: usize, block: [[f64; 2]; 2]) {
        self.diag[i] += block[0][0];
        self.upper[i] += block[0][1];
        self.lower[i] += block[1][0];
        self.diag[i + 1] += block[1][1];
    }

    pub fn is_symmetric(&self) -> bool {
        self.lower == self.upper
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.upper[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Thomas algorithm. Fails only on an exactly zero or non-finite pivot.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>, SolverError> {
        let n = self.len();
        debug_assert_eq!(rhs.len(), n);
        let mut c = alloc::vec![0.0; n];
        let mut d = alloc::vec![0.0; n];
        for i in 0..n {
            let (l, prev_c, prev_d) = if i == 0 { (0.0, 0.0, 0.0) } else { (self.lower[i - 1], c[i - 1], d[i - 1]) };
            let pivot = self.diag[i] - l * prev_c;
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(SolverError::NotPositiveDefinite { row: i });
            }
            c[i] = if i + 1 < n { self.upper[i] / pivot } else { 0.0 };
            d[i] = (rhs[i] - l * prev_d) / pivot;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        Ok(d)
    }

    /// `L D L^T` factorisation of a symmetric matrix; every pivot of `D` must be
    /// positive, which certifies positive definiteness.
    pub fn solve_spd(&self, rhs: &[f64]) -> Result<Vec<f64>, SolverError> {
        debug_assert!(self.is_symmetric());
        let n = self.len();
        let mut pivots = alloc::vec![0.0; n];
        let mut mult = alloc::vec![0.0; n.saturating_sub(1)];
        for i in 0..n {
            let mut p = self.diag[i];
            if i > 0 {
                p -= mult[i - 1] * self.upper[i - 1];
            }
            if !(p > 0.0) || !p.is_finite() {
                return Err(SolverError::NotPositiveDefinite { row: i });
            }
            pivots[i] = p;
            if i + 1 < n {
                mult[i] = self.upper[i] / p;
            }
        }
        let mut y = rhs.to_vec();
        for i in 1..n {
            y[i] -= mult[i - 1] * y[i - 1];
        }
        for i in 0..n {
            y[i] /= pivots[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            y[i] -= mult[i] * y[i + 1];
        }
        Ok(y)
    }
}

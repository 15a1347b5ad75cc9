//! Model constants and the pointwise closure laws of the two-phase system.
//!
//! Everything here is nondimensional. The closures are
//!
//! ```text
//! f(a, C)   = (1 + s1)(1 - a) C / (1 + s1 C) - (s2 + s3 C) / (1 + s4 C)
//! Sigma(a)  = a (a - a*) / (1 - a)^2 * H(a - a_min)
//! sink(a,C) = -Q a C / (1 + Q1 C)
//! ```
//!
//! with `H(0) = 1`.

use crate::error::SolverError;

/// Default guard on `1 - alpha` before the stress denominators blow up.
pub const DEFAULT_EPS_SING: f64 = 1e-8;

/// Numerator used for the traction condition at the tumour boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TractionMode {
    /// `(a - a_min) / (1 - a)^2 * H(a - a_min)`, as the boundary condition is
    /// usually written.
    #[default]
    Literal,
    /// `(a - a*) / (1 - a)^2 * H(a - a_min)`, which makes the boundary term of
    /// the velocity weak form vanish identically.
    Natural,
}

/// Admissible range of the initial volume fraction on its support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub m_alpha: f64,
    pub big_m_alpha: f64,
}

impl Bounds {
    pub fn new(m_alpha: f64, big_m_alpha: f64) -> Result<Self, SolverError> {
        if !(m_alpha > 0.0) {
            return Err(SolverError::InvalidParameter { name: "m_alpha", value: m_alpha });
        }
        if !(big_m_alpha >= m_alpha && big_m_alpha < 1.0) {
            return Err(SolverError::InvalidParameter { name: "M_alpha", value: big_m_alpha });
        }
        Ok(Bounds { m_alpha, big_m_alpha })
    }

    pub fn contains(&self, alpha: f64) -> bool {
        alpha >= self.m_alpha && alpha <= self.big_m_alpha
    }
}

/// Physical and closure constants of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s4: f64,
    /// Interphase drag coefficient.
    pub k: f64,
    /// Cell-phase viscosity.
    pub mu: f64,
    /// Oxygen consumption rate.
    pub q: f64,
    /// Saturation constant of the oxygen consumption.
    pub q1hat: f64,
    /// Reference fraction in the stress law.
    pub alpha_star: f64,
    /// Fraction below which the cell phase carries no stress.
    pub alpha_min: f64,
    /// Initial tumour radius.
    pub ell0: f64,
    pub traction_mode: TractionMode,
    pub eps_sing: f64,
}

impl Default for ModelParams {
    /// Standard parameter set: `s1 = s4 = 10`, `s2 = s3 = 0.5`, `k = mu = 1`,
    /// `Q = 0.5`, `Q1 = 0`, `l0 = 1`, with `a* = a_min = 0.8`.
    fn default() -> Self {
        ModelParams {
            s1: 10.0,
            s2: 0.5,
            s3: 0.5,
            s4: 10.0,
            k: 1.0,
            mu: 1.0,
            q: 0.5,
            q1hat: 0.0,
            alpha_star: 0.8,
            alpha_min: 0.8,
            ell0: 1.0,
            traction_mode: TractionMode::Literal,
            eps_sing: DEFAULT_EPS_SING,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<(), SolverError> {
        let nonneg = [
            ("s1", self.s1),
            ("s2", self.s2),
            ("s3", self.s3),
            ("s4", self.s4),
            ("k", self.k),
            ("mu", self.mu),
            ("Q", self.q),
            ("Q1hat", self.q1hat),
        ];
        for (name, value) in nonneg {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(SolverError::InvalidParameter { name, value });
            }
        }
        for (name, value) in [("alpha_star", self.alpha_star), ("alpha_min", self.alpha_min)] {
            if !(value > 0.0 && value < 1.0) {
                return Err(SolverError::InvalidParameter { name, value });
            }
        }
        if !(self.ell0 > 0.0 && self.ell0.is_finite()) {
            return Err(SolverError::InvalidParameter { name: "ell0", value: self.ell0 });
        }
        if !(self.eps_sing > 0.0 && self.eps_sing < 1.0) {
            return Err(SolverError::InvalidParameter { name: "eps_sing", value: self.eps_sing });
        }
        Ok(())
    }

    /// Net birth minus death rate `f(alpha, C)`.
    pub fn growth_rate(&self, alpha: f64, c: f64) -> f64 {
        (1.0 + self.s1) * (1.0 - alpha) * c / (1.0 + self.s1 * c)
            - (self.s2 + self.s3 * c) / (1.0 + self.s4 * c)
    }

    /// Death-rate constant `c2 = (s2 + s3) / (1 + s4)` of the `C = 1` reduction.
    pub fn case1_death_constant(&self) -> f64 {
        (self.s2 + self.s3) / (1.0 + self.s4)
    }

    /// Cell-phase stress `Sigma(alpha)`.
    pub fn stress(&self, alpha: f64) -> Result<f64, SolverError> {
        Ok(alpha * self.natural_traction(alpha)?)
    }

    /// Boundary traction `mu du/dx` at the tumour edge, according to
    /// [`TractionMode`].
    pub fn boundary_traction(&self, alpha: f64) -> Result<f64, SolverError> {
        match self.traction_mode {
            TractionMode::Natural => self.natural_traction(alpha),
            TractionMode::Literal => {
                let denom = self.guarded_denominator(alpha)?;
                if alpha < self.alpha_min {
                    Ok(0.0)
                } else {
                    Ok((alpha - self.alpha_min) / denom)
                }
            }
        }
    }

    /// `(alpha - a*) / (1 - alpha)^2 * H(alpha - a_min)`; `stress` is exactly
    /// `alpha` times this, so the natural boundary term cancels bitwise.
    fn natural_traction(&self, alpha: f64) -> Result<f64, SolverError> {
        let denom = self.guarded_denominator(alpha)?;
        if alpha < self.alpha_min {
            Ok(0.0)
        } else {
            Ok((alpha - self.alpha_star) / denom)
        }
    }

    fn guarded_denominator(&self, alpha: f64) -> Result<f64, SolverError> {
        if !alpha.is_finite() || alpha >= 1.0 - self.eps_sing {
            return Err(SolverError::SingularCoefficient { alpha });
        }
        let one_minus = 1.0 - alpha;
        Ok(one_minus * one_minus)
    }

    /// Drag coefficient `alpha / (1 - alpha)` of the velocity equation.
    pub fn drag_factor(&self, alpha: f64) -> Result<f64, SolverError> {
        if !alpha.is_finite() || alpha >= 1.0 - self.eps_sing {
            return Err(SolverError::SingularCoefficient { alpha });
        }
        Ok(alpha / (1.0 - alpha))
    }

    /// Oxygen consumption `-Q alpha C / (1 + Q1 C)`.
    pub fn oxygen_sink(&self, alpha: f64, c: f64) -> f64 {
        -self.q * alpha * c / (1.0 + self.q1hat * c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn growth_rate_examples() {
        let p = p();
        for a in [0.0, 0.3, 0.9, 1.0] {
            assert_abs_diff_eq!(p.growth_rate(a, 0.0), -0.5, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(p.growth_rate(1.0, 1.0), -1.0 / 11.0, epsilon = 1e-15);
        // 11 * 0.5 * 1 / 11 - 1 / 11
        assert_abs_diff_eq!(p.growth_rate(0.5, 1.0), 0.5 - 1.0 / 11.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.growth_rate(0.5, 1.0), 0.409_090_909_090_909, epsilon = 1e-12);
    }

    #[test]
    fn growth_rate_at_unit_oxygen_is_logistic() {
        let p = p();
        let c2 = p.case1_death_constant();
        assert_abs_diff_eq!(c2, 1.0 / 11.0, epsilon = 1e-16);
        for i in 0..=20 {
            let a = i as f64 / 20.0;
            assert_abs_diff_eq!(p.growth_rate(a, 1.0), (1.0 - a) - c2, epsilon = 1e-14);
        }
    }

    #[test]
    fn stress_examples() {
        let p = p();
        assert_eq!(p.stress(0.5).unwrap(), 0.0);
        assert_eq!(p.stress(0.79).unwrap(), 0.0);
        assert_eq!(p.stress(p.alpha_star).unwrap(), 0.0);
        assert_abs_diff_eq!(p.stress(0.9).unwrap(), 9.0, epsilon = 1e-12);
    }

    #[test]
    fn stress_rejects_singular_fraction() {
        let p = p();
        assert!(matches!(p.stress(1.0), Err(SolverError::SingularCoefficient { .. })));
        assert!(matches!(p.stress(1.0 - 1e-9), Err(SolverError::SingularCoefficient { .. })));
        assert!(p.stress(1.0 - 1e-7).is_ok());
    }

    #[test]
    fn heaviside_is_closed_at_zero() {
        let p = ModelParams { alpha_star: 0.5, alpha_min: 0.7, ..p() };
        // H(0) = 1: at a = a_min the gate is open.
        assert!(p.stress(0.7).unwrap() > 0.0);
        assert_eq!(p.stress(0.7 - 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn traction_examples() {
        for mode in [TractionMode::Literal, TractionMode::Natural] {
            let p = ModelParams { traction_mode: mode, ..p() };
            assert_eq!(p.boundary_traction(0.3).unwrap(), 0.0);
            assert_abs_diff_eq!(p.boundary_traction(0.9).unwrap(), 10.0, epsilon = 1e-12);
        }
        let lit = ModelParams { alpha_star: 0.6, alpha_min: 0.7, ..p() };
        assert_eq!(lit.boundary_traction(0.7).unwrap(), 0.0);
        let nat = ModelParams { traction_mode: TractionMode::Natural, ..lit };
        assert!(nat.boundary_traction(0.7).unwrap() > 0.0);
    }

    #[test]
    fn natural_traction_cancels_stress_exactly() {
        let p = ModelParams { traction_mode: TractionMode::Natural, alpha_star: 0.6, ..p() };
        for i in 0..100 {
            let a = 0.5 + 0.0049 * i as f64;
            let boundary = a * p.boundary_traction(a).unwrap() - p.stress(a).unwrap();
            assert_eq!(boundary, 0.0);
        }
    }

    #[test]
    fn oxygen_sink_examples() {
        let p = p();
        assert_eq!(p.oxygen_sink(0.0, 0.7), 0.0);
        assert_eq!(p.oxygen_sink(0.4, 0.0), 0.0);
        assert_abs_diff_eq!(p.oxygen_sink(0.8, 1.0), -0.4, epsilon = 1e-15);
        let sat = ModelParams { q1hat: 1.0, ..p };
        assert_abs_diff_eq!(sat.oxygen_sink(0.8, 1.0), -0.2, epsilon = 1e-15);
    }

    #[test]
    fn validation() {
        assert!(p().validate().is_ok());
        assert!(ModelParams { alpha_min: 1.0, ..p() }.validate().is_err());
        assert!(ModelParams { alpha_star: 0.0, ..p() }.validate().is_err());
        assert!(ModelParams { k: -1.0, ..p() }.validate().is_err());
        assert!(ModelParams { ell0: 0.0, ..p() }.validate().is_err());
        assert!(Bounds::new(0.1, 0.9).is_ok());
        assert!(Bounds::new(0.5, 0.4).is_err());
        assert!(Bounds::new(0.1, 1.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn growth_rate_decreasing_in_alpha(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..5.0) {
                let p = ModelParams::default();
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                prop_assert!(p.growth_rate(hi, c) <= p.growth_rate(lo, c) + 1e-15);
            }

            #[test]
            fn stress_and_traction_vanish_below_threshold(a in 0.0f64..0.8) {
                for mode in [TractionMode::Literal, TractionMode::Natural] {
                    let p = ModelParams { traction_mode: mode, ..ModelParams::default() };
                    prop_assert_eq!(p.stress(a).unwrap(), 0.0);
                    prop_assert_eq!(p.boundary_traction(a).unwrap(), 0.0);
                }
            }

            #[test]
            fn sink_nonpositive(a in 0.0f64..1.0, c in 0.0f64..10.0, q1 in 0.0f64..3.0) {
                let p = ModelParams { q1hat: q1, ..ModelParams::default() };
                prop_assert!(p.oxygen_sink(a, c) <= 0.0);
                if q1 == 0.0 {
                    prop_assert_eq!(p.oxygen_sink(a, c), -p.q * a * c);
                }
            }
        }
    }
}

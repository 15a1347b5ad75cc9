//! Reference solutions for the frozen-coefficient case `u = C = 1`.
//!
//! There the volume fraction obeys `a_t + a_x = a (c1 (1 - a) - c2)` with
//! `c1 = (1 + s1)/(1 + s1) = 1` and `c2 = (s2 + s3)/(1 + s4)`, a logistic ODE
//! along each characteristic `x - t = const`. [`exact_alpha_case1`] is its
//! closed-form solution; [`characteristic_oracle`] integrates the same ODE with
//! RK4 and shares no code with it beyond the initial data.

use crate::model::ModelParams;

/// Initial volume fractions, each supported on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case1Profile {
    /// `0.5 (0.02 + cos^2 x)`
    Cosine,
    /// `0.5 (0.02 + sin^2 x)`
    Sine,
    /// `0.5 (1 + exp((x - 0.5)^2)) / (1 + exp(2 (x - 0.5)^2))`
    ExpRatio,
}

impl Case1Profile {
    pub const ALL: [Case1Profile; 3] = [Case1Profile::Cosine, Case1Profile::Sine, Case1Profile::ExpRatio];

    /// Roman-numeral tag: `i`, `ii`, `iii`.
    pub fn tag(&self) -> &'static str {
        match self {
            Case1Profile::Cosine => "i",
            Case1Profile::Sine => "ii",
            Case1Profile::ExpRatio => "iii",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "i" | "1" | "cosine" => Some(Case1Profile::Cosine),
            "ii" | "2" | "sine" => Some(Case1Profile::Sine),
            "iii" | "3" | "exp-ratio" => Some(Case1Profile::ExpRatio),
            _ => None,
        }
    }
}

pub fn initial_profile(kind: Case1Profile, x: f64) -> f64 {
    if !(0.0..=1.0).contains(&x) {
        return 0.0;
    }
    match kind {
        Case1Profile::Cosine => {
            let c = libm::cos(x);
            0.5 * (0.02 + c * c)
        }
        Case1Profile::Sine => {
            let s = libm::sin(x);
            0.5 * (0.02 + s * s)
        }
        Case1Profile::ExpRatio => {
            let d2 = (x - 0.5) * (x - 0.5);
            0.5 * (1.0 + libm::exp(d2)) / (1.0 + libm::exp(2.0 * d2))
        }
    }
}

/// Closed-form volume fraction at `(t, x)` for `u = C = 1`.
pub fn exact_alpha_case1(t: f64, x: f64, kind: Case1Profile, params: &ModelParams) -> f64 {
    let a0 = initial_profile(kind, x - t);
    if a0 == 0.0 {
        return 0.0;
    }
    let c1 = (1.0 + params.s1) / (1.0 + params.s1);
    let c2 = params.case1_death_constant();
    let e = libm::exp((c1 - c2) * t);
    (c2 - c1) * a0 * e / (c1 * a0 * (1.0 - e) + c2 - c1)
}

/// Tumour radius for unit cell velocity: `l0 + t`.
pub fn exact_radius_case1(t: f64, ell0: f64) -> f64 {
    ell0 + t
}

/// RK4 integration of `da/ds = a f(a, 1)` from `a0(x - t)` over `[0, t]`.
pub fn characteristic_oracle(t: f64, x: f64, kind: Case1Profile, params: &ModelParams, substeps: usize) -> f64 {
    let mut a = initial_profile(kind, x - t);
    if t == 0.0 || a == 0.0 {
        return a;
    }
    let n = substeps.max(1);
    let ds = t / n as f64;
    let rhs = |a: f64| a * params.growth_rate(a, 1.0);
    for _ in 0..n {
        let k1 = rhs(a);
        let k2 = rhs(a + 0.5 * ds * k1);
        let k3 = rhs(a + 0.5 * ds * k2);
        let k4 = rhs(a + ds * k3);
        a += ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn profile_examples() {
        assert_eq!(initial_profile(Case1Profile::Cosine, 2.0), 0.0);
        assert_eq!(initial_profile(Case1Profile::Cosine, -0.1), 0.0);
        assert_abs_diff_eq!(initial_profile(Case1Profile::Cosine, 0.0), 0.51, epsilon = 1e-15);
        assert_abs_diff_eq!(initial_profile(Case1Profile::Sine, 0.0), 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(initial_profile(Case1Profile::ExpRatio, 0.5), 0.5, epsilon = 1e-15);
        for kind in Case1Profile::ALL {
            for i in 0..=100 {
                let v = initial_profile(kind, i as f64 / 100.0);
                assert!(v > 0.0 && v < 1.0);
            }
            assert_eq!(Case1Profile::from_tag(kind.tag()), Some(kind));
        }
    }

    #[test]
    fn exact_solution_examples() {
        let p = ModelParams::default();
        for kind in Case1Profile::ALL {
            for i in 0..=10 {
                let x = 0.1 * i as f64;
                assert_abs_diff_eq!(exact_alpha_case1(0.0, x, kind, &p), initial_profile(kind, x), epsilon = 1e-15);
            }
        }
        assert_eq!(exact_alpha_case1(3.0, 2.0, Case1Profile::Cosine, &p), 0.0);
        assert_eq!(exact_alpha_case1(3.0, 4.5, Case1Profile::Cosine, &p), 0.0);
        let far = exact_alpha_case1(50.0, 50.5, Case1Profile::Cosine, &p);
        assert_abs_diff_eq!(far, 10.0 / 11.0, epsilon = 1e-12);
    }

    #[test]
    fn radius_examples() {
        assert_eq!(exact_radius_case1(0.0, 1.0), 1.0);
        assert_eq!(exact_radius_case1(5.0, 1.0), 6.0);
        assert_eq!(exact_radius_case1(2.5, 1.0), 3.5);
    }

    #[test]
    fn characteristic_oracle_examples() {
        let p = ModelParams::default();
        assert_eq!(characteristic_oracle(0.0, 0.3, Case1Profile::Sine, &p, 10), initial_profile(Case1Profile::Sine, 0.3));
        assert_eq!(characteristic_oracle(2.0, 0.5, Case1Profile::Sine, &p, 10), 0.0);
        let rk = characteristic_oracle(5.0, 5.5, Case1Profile::Cosine, &p, 10_000);
        let exact = exact_alpha_case1(5.0, 5.5, Case1Profile::Cosine, &p);
        assert!((rk - exact).abs() <= 1e-10);
    }
}

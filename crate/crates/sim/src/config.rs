//! Experiment settings: built-in defaults per case, overridden by a
//! `key = value` config file, overridden by command-line flags.

use std::path::{Path, PathBuf};

use extdomain_core::{Case1Profile, Limiter, ModelParams, OxygenStepping, TractionMode, TransportMethod};
use extdomain_core::fem::OxygenOptions;
use serde::Deserialize;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Frozen `u = C = 1`, compared against the closed-form solution.
    One,
    /// Full coupled system.
    Two,
}

impl Case {
    fn parse(s: &str) -> Option<Case> {
        match s {
            "case1" | "1" => Some(Case::One),
            "case2" | "2" => Some(Case::Two),
            _ => None,
        }
    }
}

pub fn parse_method(s: &str) -> Option<TransportMethod> {
    match s {
        "U" | "u" | "upwind" => Some(TransportMethod::Upwind),
        "M" | "m" | "muscl" => Some(TransportMethod::Muscl(Limiter::Minmod)),
        "M-spatial" | "muscl-spatial" => Some(TransportMethod::MusclSpatial(Limiter::Minmod)),
        _ => None,
    }
}

/// Raw contents of a config file. Every field is optional; the model
/// parameters `alpha_star` and `alpha_min` are not.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub case: Option<String>,
    pub method: Option<String>,
    pub dx: Option<f64>,
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
    pub length: Option<f64>,
    pub alpha_thr: Option<f64>,
    pub profile: Option<String>,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub s3: Option<f64>,
    pub s4: Option<f64>,
    pub k: Option<f64>,
    pub mu: Option<f64>,
    #[serde(rename = "Q")]
    pub q: Option<f64>,
    #[serde(rename = "Q1hat")]
    pub q1hat: Option<f64>,
    pub alpha_star: Option<f64>,
    pub alpha_min: Option<f64>,
    pub ell0: Option<f64>,
    pub traction_mode: Option<String>,
    pub eps_sing: Option<f64>,
    pub c0: Option<f64>,
    pub oxygen_stepping: Option<String>,
    pub lumped_mass: Option<bool>,
    pub snapshot_times: Option<Vec<f64>>,
    pub truncation_budget: Option<f64>,
    pub interior_margin: Option<f64>,
    pub dx_list: Option<Vec<f64>>,
    pub thr_list: Option<Vec<f64>>,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &Path) -> Result<ConfigFile> {
        let cfg: ConfigFile = toml::from_str(text).map_err(|e| HarnessError::Config {
            path: path.to_path_buf(),
            message: e.message().to_string(),
        })?;
        for (key, value) in [("alpha_star", cfg.alpha_star), ("alpha_min", cfg.alpha_min)] {
            if value.is_none() {
                return Err(HarnessError::Config {
                    path: path.to_path_buf(),
                    message: format!(
                        "missing required key `{key}`: the reference parameter set gives no value for it, \
                         so every experiment must state it explicitly"
                    ),
                });
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })?;
        ConfigFile::parse(&text, path)
    }
}

/// Fully resolved settings for one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub case: Case,
    pub method: TransportMethod,
    pub dx: f64,
    pub dt: f64,
    pub t_final: f64,
    pub length: f64,
    pub alpha_thr: f64,
    pub profile: Case1Profile,
    pub params: ModelParams,
    pub c0: f64,
    pub oxygen: OxygenOptions,
    pub snapshot_times: Vec<f64>,
    pub truncation_budget: f64,
    /// Width excluded ahead of the exact front when measuring interior errors.
    pub interior_margin: f64,
    pub dx_list: Vec<f64>,
    pub thr_list: Vec<f64>,
}

/// Default threshold for a case and transport method.
pub fn default_threshold(case: Case, method: TransportMethod) -> f64 {
    match (case, method) {
        (_, TransportMethod::Muscl(_) | TransportMethod::MusclSpatial(_)) => 0.004,
        (Case::One, TransportMethod::Upwind) => 0.04,
        (Case::Two, TransportMethod::Upwind) => 0.01,
    }
}

/// Extended domain for the frozen case. The exact front reaches `6` at
/// `T = 5`; the domain must extend beyond it so the recovered front can
/// overshoot, and `7.2` is a whole number of cells for every tabulated `dx`.
pub const CASE1_LENGTH: f64 = 7.2;

pub const TABLE1_DX: [f64; 6] = [0.01, 0.02, 0.04, 0.06, 0.08, 0.1];
pub const TABLE1_THR: [f64; 5] = [0.01, 0.008, 0.006, 0.004, 0.002];
pub const TABLE2_DX: [f64; 3] = [0.01, 0.02, 0.04];
pub const TABLE2_THR: [f64; 4] = [0.04, 0.03, 0.02, 0.01];

impl Settings {
    pub fn defaults(case: Case, method: TransportMethod) -> Settings {
        let (dx, t_final, length, snapshot_times) = match case {
            Case::One => (0.02, 5.0, CASE1_LENGTH, Vec::new()),
            Case::Two => (0.01, 228.0, 25.0, (1..=9).map(|i| 25.0 * i as f64).collect()),
        };
        let (dx_list, thr_list) = match method {
            TransportMethod::Muscl(_) | TransportMethod::MusclSpatial(_) => (TABLE1_DX.to_vec(), TABLE1_THR.to_vec()),
            TransportMethod::Upwind => (TABLE2_DX.to_vec(), TABLE2_THR.to_vec()),
        };
        Settings {
            case,
            method,
            dx,
            dt: 0.01,
            t_final,
            length,
            alpha_thr: default_threshold(case, method),
            profile: Case1Profile::Cosine,
            params: ModelParams::default(),
            c0: 1.0,
            oxygen: OxygenOptions::default(),
            snapshot_times,
            truncation_budget: extdomain_core::scheme_a::DEFAULT_TRUNCATION_BUDGET,
            interior_margin: 0.2,
            dx_list,
            thr_list,
        }
    }

    /// Defaults for the case and method named in `file` (falling back to
    /// `case` / `method`), then every key present in `file`.
    pub fn from_file(file: &ConfigFile, case: Case, method: TransportMethod, path: &Path) -> Result<Settings> {
        let bad = |message: String| HarnessError::Config { path: path.to_path_buf(), message };
        let case = match &file.case {
            Some(s) => Case::parse(s).ok_or_else(|| bad(format!("unknown case `{s}`")))?,
            None => case,
        };
        let method = match &file.method {
            Some(s) => parse_method(s).ok_or_else(|| bad(format!("unknown method `{s}`")))?,
            None => method,
        };
        let mut s = Settings::defaults(case, method);
        macro_rules! set {
            ($($field:ident).+ <- $value:expr) => {
                if let Some(v) = $value {
                    s.$($field).+ = v;
                }
            };
        }
        set!(dx <- file.dx);
        set!(dt <- file.dt);
        set!(t_final <- file.t_final);
        set!(length <- file.length);
        set!(alpha_thr <- file.alpha_thr);
        set!(params.s1 <- file.s1);
        set!(params.s2 <- file.s2);
        set!(params.s3 <- file.s3);
        set!(params.s4 <- file.s4);
        set!(params.k <- file.k);
        set!(params.mu <- file.mu);
        set!(params.q <- file.q);
        set!(params.q1hat <- file.q1hat);
        set!(params.alpha_star <- file.alpha_star);
        set!(params.alpha_min <- file.alpha_min);
        set!(params.ell0 <- file.ell0);
        set!(params.eps_sing <- file.eps_sing);
        set!(c0 <- file.c0);
        set!(oxygen.lumped_mass <- file.lumped_mass);
        set!(snapshot_times <- file.snapshot_times.clone());
        set!(truncation_budget <- file.truncation_budget);
        set!(interior_margin <- file.interior_margin);
        set!(dx_list <- file.dx_list.clone());
        set!(thr_list <- file.thr_list.clone());
        if let Some(p) = &file.profile {
            s.profile = Case1Profile::from_tag(p).ok_or_else(|| bad(format!("unknown profile `{p}`")))?;
        }
        if let Some(m) = &file.traction_mode {
            s.params.traction_mode = match m.as_str() {
                "literal" => TractionMode::Literal,
                "natural" => TractionMode::Natural,
                other => return Err(bad(format!("unknown traction_mode `{other}`"))),
            };
        }
        if let Some(m) = &file.oxygen_stepping {
            s.oxygen.stepping = match m.as_str() {
                "backward" | "implicit" => OxygenStepping::BackwardEuler,
                "forward" | "explicit" => OxygenStepping::ForwardEuler,
                other => return Err(bad(format!("unknown oxygen_stepping `{other}`"))),
            };
        }
        s.params.validate().map_err(|e| bad(e.to_string()))?;
        Ok(s)
    }
}

/// Command-line overrides applied after the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub method: Option<TransportMethod>,
    pub dx: Option<f64>,
    pub dt: Option<f64>,
    pub alpha_thr: Option<f64>,
    pub profile: Option<Case1Profile>,
    pub config: Option<PathBuf>,
}

pub fn resolve(case: Case, overrides: &Overrides) -> Result<Settings> {
    let method = overrides.method.unwrap_or(TransportMethod::Muscl(Limiter::Minmod));
    let (mut s, thr_pinned) = match &overrides.config {
        Some(path) => {
            let file = ConfigFile::load(path)?;
            (Settings::from_file(&file, case, method, path)?, file.alpha_thr.is_some())
        }
        None => (Settings::defaults(case, method), false),
    };
    if let Some(m) = overrides.method {
        if m != s.method {
            // The threshold default follows the method unless given explicitly.
            if !thr_pinned {
                s.alpha_thr = default_threshold(s.case, m);
            }
            s.method = m;
        }
    }
    if let Some(v) = overrides.dx {
        s.dx = v;
    }
    if let Some(v) = overrides.dt {
        s.dt = v;
    }
    if let Some(v) = overrides.alpha_thr {
        s.alpha_thr = v;
    }
    if let Some(p) = overrides.profile {
        s.profile = p;
    }
    Ok(s)
}

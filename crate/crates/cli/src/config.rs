//! Run configuration shared by the command line and `--config` files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

/// Version of the emitted table layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Delta,
    Pt,
    Sho,
    Hydrogen,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [Scenario::Delta, Scenario::Pt, Scenario::Sho, Scenario::Hydrogen];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Delta => "delta",
            Scenario::Pt => "pt",
            Scenario::Sho => "sho",
            Scenario::Hydrogen => "hydrogen",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Scenario::Delta => "attractive delta well, one bound state plus even/odd continuum",
            Scenario::Pt => "Pöschl–Teller well -λ(λ+1)/2a² sech²(x/a), reflectionless",
            Scenario::Sho => "harmonic oscillator, Poisson excitation spectrum",
            Scenario::Hydrogen => "hydrogen 1s in a suddenly moving nucleus, atomic units",
        }
    }

    pub fn parameters(self) -> &'static [ParamSpec] {
        match self {
            Scenario::Delta => DELTA_PARAMS,
            Scenario::Pt => PT_PARAMS,
            Scenario::Sho => SHO_PARAMS,
            Scenario::Hydrogen => HYDROGEN_PARAMS,
        }
    }

    /// Keys accepted by `--tol-override` for `run`, with defaults.
    pub fn tolerances(self) -> &'static [(&'static str, f64)] {
        match self {
            Scenario::Delta => &[("quadrature_abs", 1e-14), ("quadrature_rel", 1e-13)],
            Scenario::Sho => &[("tail", sudden_quench::sho::DEFAULT_TAIL_TOL)],
            Scenario::Pt | Scenario::Hydrogen => &[],
        }
    }

    pub fn supports_frames(self) -> bool {
        self != Scenario::Hydrogen
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Real,
    /// Positive integer; not sweepable.
    Count,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    /// `None` when the default depends on other parameters.
    pub default: Option<f64>,
    pub help: &'static str,
}

const fn real(name: &'static str, default: f64, help: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Real, default: Some(default), help }
}

const fn count(name: &'static str, default: Option<f64>, help: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Count, default, help }
}

const X_MIN: ParamSpec = real("x_min", -40.0, "left edge of the frame grid");
const X_MAX: ParamSpec = real("x_max", 40.0, "right edge of the frame grid");
const POINTS: ParamSpec = count("points", Some(4096.0), "frame grid points");
const K_STEP: ParamSpec = real("k_step", 0.005, "momentum grid spacing for frames");

const DELTA_PARAMS: &[ParamSpec] = &[
    real("theta", 1.0, "velocity parameter ħv/γ"),
    real("beta", 1.0, "well strength mγ/ħ²"),
    X_MIN,
    X_MAX,
    POINTS,
    real("k_max", 60.0, "momentum cutoff for frames"),
    K_STEP,
];

const PT_PARAMS: &[ParamSpec] = &[
    count("lambda", Some(1.0), "well depth index; continuum output for 1 and 2"),
    real("kappa", 1.0, "velocity parameter a m v/ħ"),
    real("a", 1.0, "well width"),
    X_MIN,
    X_MAX,
    POINTS,
    real("k_max", 30.0, "momentum cutoff for frames"),
    K_STEP,
];

const SHO_PARAMS: &[ParamSpec] = &[
    real("omega", 1.0, "oscillator frequency"),
    real("kappa", 1.0, "m v²/2ħω"),
    count("n_max", None, "highest level kept; default κ + 20√κ + 30"),
    X_MIN,
    X_MAX,
    POINTS,
];

const HYDROGEN_PARAMS: &[ParamSpec] = &[
    real("kappa", 0.5, "m v a₀/ħ"),
    count("n_max", Some(10.0), "highest principal quantum number"),
];

/// `param:start:stop:step`, inclusive of `stop` up to rounding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for Sweep {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::Usage(format!("sweep must look like param:start:stop:step, got {s:?}"));
        let [param, start, stop, step] = parts[..] else {
            return Err(bad());
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad());
        Ok(Sweep { param: param.trim().to_string(), start: num(start)?, stop: num(stop)?, step: num(step)? })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub times: Vec<f64>,
    /// Hydrogen only: add the ionization-coefficient report.
    #[serde(default)]
    pub ionization: bool,
    /// Output directory; standard output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Reserved; every computation is deterministic.
    #[serde(default)]
    pub seed: u64,
}

impl RunConfig {
    pub fn new(scenario: Scenario) -> Self {
        RunConfig {
            scenario,
            parameters: BTreeMap::new(),
            sweep: None,
            times: Vec::new(),
            ionization: false,
            output: None,
            format: Format::default(),
            tolerances: BTreeMap::new(),
            seed: 0,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { context: format!("reading {}", path.display()), source })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        let specs = self.scenario.parameters();
        let usage = |msg: String| Err(CliError::Usage(msg));
        for (name, &value) in &self.parameters {
            let Some(spec) = specs.iter().find(|p| p.name == name) else {
                return usage(format!("{} has no parameter {name:?}", self.scenario));
            };
            if !value.is_finite() {
                return usage(format!("{name} must be finite, got {value}"));
            }
            if spec.kind == ParamKind::Count && (value < 1.0 || value.fract() != 0.0) {
                return usage(format!("{name} must be a positive integer, got {value}"));
            }
        }
        if let Some(sweep) = &self.sweep {
            match specs.iter().find(|p| p.name == sweep.param) {
                Some(spec) if spec.kind == ParamKind::Real => {}
                Some(_) => return usage(format!("{} is an integer parameter and cannot be swept", sweep.param)),
                None => return usage(format!("{} has no parameter {:?} to sweep", self.scenario, sweep.param)),
            }
            if !(sweep.start.is_finite() && sweep.stop.is_finite() && sweep.step.is_finite()) {
                return usage("sweep bounds must be finite".into());
            }
            if !(sweep.step > 0.0) || sweep.stop < sweep.start {
                return usage(format!("sweep needs step > 0 and stop >= start, got {sweep:?}"));
            }
        }
        if let Some(&t) = self.times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return usage(format!("times must be finite and non-negative, got {t}"));
        }
        if !self.times.is_empty() && !self.scenario.supports_frames() {
            return usage(format!("{} has no density frames", self.scenario));
        }
        if self.ionization && self.scenario != Scenario::Hydrogen {
            return usage("--ionization applies to the hydrogen scenario only".into());
        }
        let known = self.scenario.tolerances();
        for (key, &value) in &self.tolerances {
            if !known.iter().any(|(k, _)| k == key) {
                let names: Vec<&str> = known.iter().map(|(k, _)| *k).collect();
                return usage(format!("{} has no tolerance {key:?} (known: {names:?})", self.scenario));
            }
            if !(value > 0.0 && value.is_finite()) {
                return usage(format!("tolerance {key} must be positive, got {value}"));
            }
        }
        Ok(())
    }

    /// Parameter value with the scenario default filled in.
    pub fn param(&self, name: &str) -> Option<f64> {
        self.parameters.get(name).copied().or_else(|| {
            self.scenario.parameters().iter().find(|p| p.name == name).and_then(|p| p.default)
        })
    }

    pub fn tolerance(&self, key: &str) -> f64 {
        self.tolerances.get(key).copied().unwrap_or_else(|| {
            self.scenario.tolerances().iter().find(|(k, _)| *k == key).map(|(_, v)| *v).unwrap_or(f64::NAN)
        })
    }

    /// Parameter sets to evaluate: the sweep values, or the single configured point.
    pub fn points(&self) -> Vec<RunConfig> {
        match &self.sweep {
            None => vec![self.clone()],
            Some(sweep) => sweep
                .values()
                .into_iter()
                .map(|value| {
                    let mut point = self.clone();
                    point.parameters.insert(sweep.param.clone(), value);
                    point.sweep = None;
                    point
                })
                .collect(),
        }
    }

    /// SHA-256 of the configuration without its output location.
    pub fn hash(&self) -> String {
        let canonical = RunConfig { output: None, ..self.clone() };
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

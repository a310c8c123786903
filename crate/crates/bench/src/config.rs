//! Suite configuration: JSON file, command-line overrides and validation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use batsonar::{lookup, AngleMode64, GaParams64, ObjectiveSpec64, SonarParams64, DEFAULT_GOALS};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, ConfigError};

/// Momentum used when the momentum driver is selected without an explicit value.
pub const DEFAULT_MOMENTUM: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Ssu,
    Msu,
    Ssm,
    Ga,
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ssu" => Ok(Algorithm::Ssu),
            "msu" => Ok(Algorithm::Msu),
            "ssm" => Ok(Algorithm::Ssm),
            "ga" => Ok(Algorithm::Ga),
            other => Err(format!("unknown algorithm `{other}` (expected ssu, msu, ssm or ga)")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Ssu => "ssu",
            Algorithm::Msu => "msu",
            Algorithm::Ssm => "ssm",
            Algorithm::Ga => "ga",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// `fixed:<radians>` or `rand:<lo>,<hi>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSpec(pub AngleMode64);

impl FromStr for AngleSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number of radians"));
        match s.split_once(':') {
            Some(("fixed", v)) => Ok(AngleSpec(AngleMode64::Fixed { theta: num(v)? })),
            Some(("rand", v)) => {
                let (lo, hi) = v.split_once(',').ok_or_else(|| format!("`{s}`: expected rand:<lo>,<hi>"))?;
                Ok(AngleSpec(AngleMode64::Rand { theta_min: num(lo)?, theta_max: num(hi)? }))
            }
            _ => Err(format!("`{s}`: expected fixed:<radians> or rand:<lo>,<hi>")),
        }
    }
}

/// `<rho1>,<rho2>` goal fractions.
pub fn parse_goals(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("`{s}`: expected <g1>,<g2>"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    Ok((num(a)?, num(b)?))
}

/// Everything needed to reproduce a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub function: String,
    pub algorithm: Algorithm,
    pub epochs: usize,
    /// Master seed; epoch `e` runs from `derive_seed(seed, e)`.
    pub seed: u64,
    pub goals: (f64, f64),
    pub format: Format,
    pub trajectory: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub sonar: SonarParams64,
    pub ga: GaParams64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            function: "f1".into(),
            algorithm: Algorithm::Ssu,
            epochs: 500,
            seed: 1,
            goals: DEFAULT_GOALS,
            format: Format::Csv,
            trajectory: false,
            out: None,
            sonar: SonarParams64::default(),
            ga: GaParams64::default(),
        }
    }
}

impl SuiteConfig {
    pub fn new(function: &str, algorithm: Algorithm) -> Self {
        Self { function: function.into(), algorithm, ..Self::default() }
    }

    pub fn from_json_str(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn from_json_file(path: &Path) -> Result<Self, BenchError> {
        let err = |message: String| BenchError::ConfigFile { path: path.to_owned(), message };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        Self::from_json_str(&text).map_err(|e| err(e.to_string()))
    }

    pub fn objective(&self) -> Result<ObjectiveSpec64, ConfigError> {
        lookup::<f64>(&self.function).map_err(|e| ConfigError::new("function", e.to_string()))
    }

    /// Fills algorithm-dependent defaults, syncs the trajectory flag into the engine
    /// params and validates the result.
    pub fn resolved(mut self) -> Result<Self, ConfigError> {
        if self.algorithm == Algorithm::Ssm && self.sonar.momentum.is_none() {
            self.sonar.momentum = Some(DEFAULT_MOMENTUM);
        }
        self.sonar.record_trajectory = self.trajectory;
        self.ga.record_trajectory = self.trajectory;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.epochs == 0 {
            return Err(ConfigError::new("epochs", "must be at least 1"));
        }
        let objective = self.objective()?;
        let (g1, g2) = self.goals;
        if !(g1 > 0.0 && g1 < 1.0 && g2 > 0.0 && g2 < 1.0) {
            return Err(ConfigError::new("goals", format!("({g1}, {g2}) must both lie in (0, 1)")));
        }
        let units = self.sonar.unit_count;
        let momentum = self.sonar.momentum;
        match self.algorithm {
            Algorithm::Ssu | Algorithm::Ga if units != 1 => {
                return Err(ConfigError::new(
                    "sonar.unit_count",
                    format!("{} runs a single unit, got {units}", self.algorithm),
                ));
            }
            Algorithm::Ssu | Algorithm::Msu | Algorithm::Ga if momentum.is_some() => {
                return Err(ConfigError::new(
                    "sonar.momentum",
                    format!("{} takes no momentum", self.algorithm),
                ));
            }
            Algorithm::Msu if units < 2 => {
                return Err(ConfigError::new(
                    "sonar.unit_count",
                    format!("msu needs at least 2 units, got {units}"),
                ));
            }
            Algorithm::Ssm if units != 1 => {
                return Err(ConfigError::new(
                    "sonar.unit_count",
                    format!("ssm runs a single unit, got {units}"),
                ));
            }
            Algorithm::Ssm if momentum.is_none() => {
                return Err(ConfigError::new("sonar.momentum", "ssm needs a momentum value"));
            }
            _ => {}
        }
        if self.algorithm == Algorithm::Ga {
            self.ga.validate().map_err(|e| ConfigError::new("ga", e.to_string()))
        } else {
            self.sonar
                .validate(objective.default_space())
                .map_err(|e| ConfigError::new("sonar", e.to_string()))
        }
    }

    /// Short human label such as `msu(3)` or `ssm(0.9)`.
    pub fn label(&self) -> String {
        match self.algorithm {
            Algorithm::Msu => format!("msu({})", self.sonar.unit_count),
            Algorithm::Ssm => match self.sonar.momentum {
                Some(mu) => format!("ssm({mu})"),
                None => "ssm".into(),
            },
            a => a.to_string(),
        }
    }
}

/// Command-line values that replace fields of a [`SuiteConfig`].
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub function: Option<String>,
    pub algorithm: Option<Algorithm>,
    pub epochs: Option<usize>,
    /// Signals per unit, or generations for the GA.
    pub iters: Option<usize>,
    pub beams: Option<usize>,
    pub angle: Option<AngleSpec>,
    pub momentum: Option<f64>,
    pub stagnation_window: Option<usize>,
    pub units: Option<usize>,
    pub population: Option<usize>,
    pub seed: Option<u64>,
    pub goals: Option<(f64, f64)>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub trajectory: bool,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut SuiteConfig) {
        if let Some(f) = &self.function {
            cfg.function.clone_from(f);
        }
        if let Some(a) = self.algorithm {
            cfg.algorithm = a;
        }
        if let Some(n) = self.epochs {
            cfg.epochs = n;
        }
        if let Some(n) = self.iters {
            cfg.sonar.max_iterations = n;
            cfg.ga.max_generations = n;
        }
        if let Some(n) = self.beams {
            cfg.sonar.n_beams = n;
        }
        if let Some(AngleSpec(mode)) = self.angle {
            cfg.sonar.angle_mode = mode;
        }
        if let Some(mu) = self.momentum {
            cfg.sonar.momentum = Some(mu);
        }
        if let Some(w) = self.stagnation_window {
            cfg.sonar.stagnation_window = w;
        }
        if let Some(m) = self.units {
            cfg.sonar.unit_count = m;
        }
        if let Some(p) = self.population {
            cfg.ga.population_size = p;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(g) = self.goals {
            cfg.goals = g;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        if self.trajectory {
            cfg.trajectory = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angle_specs() {
        assert_eq!("fixed:0.5".parse::<AngleSpec>().unwrap().0, AngleMode64::Fixed { theta: 0.5 });
        assert_eq!(
            "rand:0.1, 0.4".parse::<AngleSpec>().unwrap().0,
            AngleMode64::Rand { theta_min: 0.1, theta_max: 0.4 }
        );
        assert!("fixed".parse::<AngleSpec>().is_err());
        assert!("rand:0.1".parse::<AngleSpec>().is_err());
        assert!("spin:1".parse::<AngleSpec>().is_err());
        assert!("fixed:abc".parse::<AngleSpec>().is_err());
    }

    #[test]
    fn defaults_resolve() {
        let c = SuiteConfig::default().resolved().unwrap();
        assert_eq!(c.epochs, 500);
        assert_eq!(c.goals, (0.975, 0.96));
        assert_eq!(c.sonar.angle_mode, AngleMode64::Fixed { theta: PI / 12.0 });
        let ssm = SuiteConfig::new("f2", Algorithm::Ssm).resolved().unwrap();
        assert_eq!(ssm.sonar.momentum, Some(0.9));
    }

    #[test]
    fn field_level_errors() {
        let field = |c: SuiteConfig| c.resolved().unwrap_err().field;
        assert_eq!(field(SuiteConfig { epochs: 0, ..Default::default() }), "epochs");
        assert_eq!(field(SuiteConfig::new("f9", Algorithm::Ssu)), "function");
        assert_eq!(field(SuiteConfig::new("f5", Algorithm::Msu)), "sonar.unit_count");
        let mut c = SuiteConfig::new("f1", Algorithm::Ssu);
        c.sonar.momentum = Some(0.5);
        assert_eq!(field(c), "sonar.momentum");
        let mut c = SuiteConfig::new("f1", Algorithm::Ssm);
        c.sonar.momentum = Some(1.5);
        assert_eq!(field(c), "sonar");
        let mut c = SuiteConfig::new("f1", Algorithm::Ga);
        c.ga.population_size = 1;
        assert_eq!(field(c), "ga");
        assert_eq!(field(SuiteConfig { goals: (0.9, 1.0), ..Default::default() }), "goals");
    }

    #[test]
    fn json_file_fields_and_overrides() {
        let c = SuiteConfig::from_json_str(
            r#"{"function": "f5", "algorithm": "msu", "epochs": 20, "sonar": {"unit_count": 2}}"#,
        )
        .unwrap();
        assert_eq!(c.sonar.unit_count, 2);
        assert_eq!(c.sonar.n_beams, 5);
        let mut c2 = c.clone();
        Overrides { epochs: Some(7), iters: Some(50), units: Some(4), ..Default::default() }.apply(&mut c2);
        assert_eq!(
            (c2.epochs, c2.sonar.max_iterations, c2.ga.max_generations, c2.sonar.unit_count),
            (7, 50, 50, 4)
        );
        assert_eq!(c2.function, "f5");
        assert!(SuiteConfig::from_json_str(r#"{"epoch": 3}"#).is_err());
    }

    #[test]
    fn echo_round_trips() {
        let c = SuiteConfig::new("f3", Algorithm::Ssm).resolved().unwrap();
        let back = SuiteConfig::from_json_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}

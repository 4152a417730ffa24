//! Experiment configuration files.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thickness_core::{Exponent, SpaceSpec};

use crate::CliError;

/// Named experiment that [`crate::scenario::execute`] knows how to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    LpThickness,
    LpStep,
    Product,
    L1SumL1,
    Prop1,
    Hyperplane,
    Polyhedral,
    UnsExample,
    ThicknessSearch,
    VerifyInequalities,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::LpThickness => "lp-thickness",
            Scenario::LpStep => "lp-step",
            Scenario::Product => "product",
            Scenario::L1SumL1 => "l1-sum-l1",
            Scenario::Prop1 => "prop1",
            Scenario::Hyperplane => "hyperplane",
            Scenario::Polyhedral => "polyhedral",
            Scenario::UnsExample => "uns-example",
            Scenario::ThicknessSearch => "thickness-search",
            Scenario::VerifyInequalities => "verify-inequalities",
        }
    }
}

/// One experiment. Fields a scenario does not use are ignored by it; missing
/// optional fields take scenario defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<SpaceSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<usize>,
    /// Replaces the scenario's default comparison tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_path: Option<String>,
}

impl ExperimentConfig {
    /// Minimal config for `scenario`; everything else defaulted.
    pub fn new(scenario: Scenario, seed: u64) -> Self {
        ExperimentConfig {
            scenario,
            seed,
            p: None,
            dim: None,
            n: None,
            k: None,
            d: None,
            factors: None,
            eps: None,
            m: None,
            budget: None,
            restarts: None,
            refine: None,
            trials: None,
            support: None,
            tolerance: None,
            out_path: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Scenario-independent sanity checks. Scenario-specific ones happen when
    /// the scenario builds its spaces.
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("dim", self.dim),
            ("n", self.n),
            ("k", self.k),
            ("d", self.d),
            ("m", self.m),
            ("restarts", self.restarts),
            ("refine", self.refine),
            ("trials", self.trials),
            ("support", self.support),
        ];
        for (name, v) in positive {
            if v == Some(0) {
                return Err(CliError::Config(format!("{name} must be positive")));
            }
        }
        if self.budget == Some(0) {
            return Err(CliError::Config("budget must be positive".into()));
        }
        if let Some(eps) = self.eps {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(CliError::Config(format!("eps must be positive, got {eps}")));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Config(format!("tolerance must be non-negative, got {t}")));
            }
        }
        Ok(())
    }

    pub(crate) fn require_p(&self) -> Result<Exponent, CliError> {
        self.p.ok_or_else(|| CliError::Config(format!("scenario {} needs p", self.scenario.name())))
    }
}

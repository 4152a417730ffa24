//! Structured experiment output: the JSON report and the one-row CSV summary.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thickness_core::covering::NonsquarenessResult;
use thickness_core::inequalities::TrialSummary;
use thickness_core::nets::Params;
use thickness_core::{CoveringReport, Net, Point, SpaceSpec, WitnessReport};

use crate::config::ExperimentConfig;
use crate::CliError;

/// Nets up to this size are echoed point by point.
const ECHO_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `value ≤ bound + tolerance`
    AtMost,
    /// `value ≥ bound − tolerance`
    AtLeast,
    /// `|value − bound| ≤ tolerance`
    Within,
}

/// One acceptance threshold and whether the run met it.
impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Within => "~",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub pass: bool,
}

impl Assertion {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, bound: f64, tolerance: f64) -> Self {
        let pass = match relation {
            Relation::AtMost => value <= bound + tolerance,
            Relation::AtLeast => value >= bound - tolerance,
            Relation::Within => (value - bound).abs() <= tolerance,
        };
        Assertion { name: name.into(), value, bound, relation, tolerance, pass }
    }

    pub fn at_most(name: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        Self::new(name, value, Relation::AtMost, bound, tolerance)
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        Self::new(name, value, Relation::AtLeast, bound, tolerance)
    }

    pub fn within(name: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        Self::new(name, value, Relation::Within, target, tolerance)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetSummary {
    pub provenance: String,
    pub size: usize,
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
}

impl From<&Net> for NetSummary {
    fn from(net: &Net) -> Self {
        NetSummary {
            provenance: net.provenance().to_string(),
            size: net.len(),
            params: net.params().clone(),
            points: (net.len() <= ECHO_POINTS).then(|| net.points().to_vec()),
        }
    }
}

/// Everything computed for one space within a scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Run {
    pub label: String,
    pub space: SpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub net: Option<NetSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<CoveringReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<TrialSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonsquareness: Option<NonsquarenessResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl Run {
    pub fn new(label: impl Into<String>, space: SpaceSpec) -> Self {
        Run {
            label: label.into(),
            space,
            net: None,
            covering: None,
            witness: None,
            trials: None,
            nonsquareness: None,
            iterations: None,
        }
    }
}

/// The CSV row. Column order is fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub p: String,
    pub dim: usize,
    pub m: Option<usize>,
    pub lower: Option<f64>,
    pub estimate: Option<f64>,
    pub upper: Option<f64>,
    pub pass: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub runs: Vec<Run>,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
    pub summary: SummaryRow,
    /// Seconds. The only field that varies between identical invocations.
    pub wall_time: f64,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }
}

/// `<out>.json` and `<out>.csv`; a trailing `.json` on `out` is dropped first.
pub fn output_paths(out: &Path) -> (PathBuf, PathBuf) {
    let base = if out.extension().is_some_and(|e| e == "json") { out.with_extension("") } else { out.to_path_buf() };
    let mut json = base.clone().into_os_string();
    json.push(".json");
    let mut csv = base.into_os_string();
    csv.push(".csv");
    (json.into(), csv.into())
}

pub fn summary_csv(row: &SummaryRow) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn write_outputs(report: &ExperimentReport, out: &Path) -> Result<(PathBuf, PathBuf), CliError> {
    let (json, csv) = output_paths(out);
    if let Some(dir) = json.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    let mut text = report.to_json();
    text.push('\n');
    std::fs::write(&json, text).map_err(|e| CliError::Io(format!("{}: {e}", json.display())))?;
    std::fs::write(&csv, summary_csv(&report.summary)?).map_err(|e| CliError::Io(format!("{}: {e}", csv.display())))?;
    Ok((json, csv))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Assertion::at_most("a", 1.0, 1.0, 0.0).pass);
        assert!(!Assertion::at_most("a", 1.1, 1.0, 0.05).pass);
        assert!(Assertion::at_least("a", 0.96, 1.0, 0.05).pass);
        assert!(Assertion::within("a", 1.4, 2f64.sqrt(), 2e-2).pass);
        assert!(!Assertion::within("a", 1.4, 2f64.sqrt(), 0.0).pass);
        assert!(!Assertion::at_most("a", f64::NAN, 1.0, 1.0).pass);
    }

    #[test]
    fn csv_header_and_empty_cells() {
        let row = SummaryRow {
            scenario: "hyperplane".into(),
            p: "inf".into(),
            dim: 6,
            m: Some(10),
            lower: Some(1.0),
            estimate: Some(1.0),
            upper: None,
            pass: true,
            seed: 3,
        };
        let text = summary_csv(&row).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("scenario,p,dim,m,lower,estimate,upper,pass,seed"));
        assert_eq!(lines.next(), Some("hyperplane,inf,6,10,1.0,1.0,,true,3"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn paths() {
        let (j, c) = output_paths(Path::new("out/run.json"));
        assert_eq!(j, Path::new("out/run.json"));
        assert_eq!(c, Path::new("out/run.csv"));
        let (j, c) = output_paths(Path::new("out/run.v2"));
        assert_eq!(j, Path::new("out/run.v2.json"));
        assert_eq!(c, Path::new("out/run.v2.csv"));
    }
}

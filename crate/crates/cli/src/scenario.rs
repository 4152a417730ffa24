//! The scenarios: each builds its spaces and nets, runs the searches and
//! witnesses, and attaches its acceptance thresholds.

use std::time::Instant;

use thickness_core::covering::{self, covering_radius_estimate_with, nonsquareness_estimate, thickness_search};
use thickness_core::inequalities::{random_trials, Inequality};
use thickness_core::nets::{
    antipodal_net, four_point_net, hyperplane_net, lp_func_net, product_net, prop1_net, random_net,
};
use thickness_core::witnesses::{lemma3_witness, lp_step_witness, polyk_witness, tail_witness, uns_example_witness};
use thickness_core::{split_seed, CoveringReport, Exponent, Net, Point, SearchConfig, SpaceSpec, WitnessReport};

use crate::config::{ExperimentConfig, Scenario};
use crate::report::{Assertion, ExperimentReport, NetSummary, Run, SummaryRow};
use crate::CliError;

/// Slack granted to closed-form guarantees.
pub const GUARANTEE_SLACK: f64 = 1e-9;
/// Default tolerance for comparisons against closed-form values.
pub const DEFAULT_TOL: f64 = 1e-2;

struct Outcome {
    runs: Vec<Run>,
    assertions: Vec<Assertion>,
    /// Run whose numbers go into the CSV row.
    primary: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome { runs: Vec::new(), assertions: Vec::new(), primary: 0 }
    }

    fn check(&mut self, a: Assertion) {
        self.assertions.push(a);
    }

    /// Pushes a run and returns its index.
    fn push(&mut self, run: Run) -> usize {
        self.runs.push(run);
        self.runs.len() - 1
    }

    /// `certified_lower ≤ analytic_upper` whenever the run has both.
    fn bracket_checks(&mut self) {
        let mut extra = Vec::new();
        for run in &self.runs {
            if let Some(CoveringReport { certified_lower, analytic_upper: Some(upper), .. }) = &run.covering {
                extra.push(Assertion::at_most(
                    format!("{}: lower <= upper", run.label),
                    *certified_lower,
                    *upper,
                    GUARANTEE_SLACK,
                ));
            }
        }
        self.assertions.extend(extra);
    }
}

fn search_config(cfg: &ExperimentConfig, stream: Option<u64>) -> SearchConfig {
    let d = SearchConfig::default();
    let seed = stream.map_or(cfg.seed, |s| split_seed(cfg.seed, s));
    SearchConfig::new(cfg.budget.unwrap_or(d.budget), cfg.restarts.unwrap_or(d.restarts), seed)
}

fn tol(cfg: &ExperimentConfig, default: f64) -> f64 {
    cfg.tolerance.unwrap_or(default)
}

fn covered_run(label: &str, net: &Net, search: &SearchConfig, witness: Option<WitnessReport>) -> Run {
    let extra: Vec<Point> =
        witness.iter().map(|w| w.witness.clone()).filter(|w| w.dim() == net.space().dim()).collect();
    let mut run = Run::new(label, net.space().clone());
    run.net = Some(NetSummary::from(net));
    run.covering = Some(covering_radius_estimate_with(net, search, &extra));
    run.witness = witness;
    run
}

fn witness_consistent(out: &mut Outcome, label: &str, w: &WitnessReport) {
    out.check(Assertion::at_least(
        format!("{label}: measured >= guaranteed"),
        w.measured_distance,
        w.guaranteed_distance,
        GUARANTEE_SLACK,
    ));
}

fn cov(run: &Run) -> &CoveringReport {
    run.covering.as_ref().expect("run has a covering report")
}

/// Runs `cfg` and returns its report. Deterministic in everything but `wall_time`.
pub fn execute(cfg: &ExperimentConfig) -> Result<ExperimentReport, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let out = match cfg.scenario {
        Scenario::LpThickness => lp_thickness(cfg)?,
        Scenario::LpStep => lp_step(cfg)?,
        Scenario::Product => product(cfg)?,
        Scenario::L1SumL1 => l1_sum_l1(cfg)?,
        Scenario::Prop1 => prop1(cfg)?,
        Scenario::Hyperplane => hyperplane(cfg)?,
        Scenario::Polyhedral => polyhedral(cfg)?,
        Scenario::UnsExample => uns_example(cfg)?,
        Scenario::ThicknessSearch => search(cfg)?,
        Scenario::VerifyInequalities => inequalities(cfg)?,
    };
    let pass = out.assertions.iter().all(|a| a.pass);
    let primary = &out.runs[out.primary];
    let summary = SummaryRow {
        scenario: cfg.scenario.name().to_string(),
        p: cfg.p.or_else(|| primary.space.exponent()).map(|p| p.to_string()).unwrap_or_default(),
        dim: primary.space.dim(),
        m: primary.net.as_ref().map(|n| n.size),
        lower: primary.covering.as_ref().map(|c| c.certified_lower),
        estimate: primary.covering.as_ref().map(|c| c.empirical_estimate),
        upper: primary.covering.as_ref().and_then(|c| c.analytic_upper),
        pass,
        seed: cfg.seed,
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        runs: out.runs,
        assertions: out.assertions,
        pass,
        summary,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

fn lp_thickness(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = cfg.require_p()?;
    let dim = cfg.dim.unwrap_or(10);
    let space = SpaceSpec::lp_seq(p.value(), dim)?;
    let net = antipodal_net(&space, &Point::basis(dim, 0))?;
    let witness = tail_witness(&net).ok();
    let run = covered_run("antipodal", &net, &search_config(cfg, None), witness);
    let target = p.two_root();
    let t = tol(cfg, DEFAULT_TOL);

    let mut out = Outcome::new();
    if let Some(w) = &run.witness {
        witness_consistent(&mut out, "tail witness", w);
    }
    out.check(Assertion::within("certified lower ~ 2^(1/p)", cov(&run).certified_lower, target, t));
    out.check(Assertion::within("estimate ~ 2^(1/p)", cov(&run).empirical_estimate, target, t));
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn lp_step(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = cfg.require_p()?;
    let Exponent::Finite(pv) = p else {
        return Err(CliError::Config("lp-step needs a finite p".into()));
    };
    let n = cfg.n.unwrap_or(8);
    let refine = cfg.refine.unwrap_or(8);
    let (label, net) = if pv >= 2.0 {
        ("lp_func_net", lp_func_net(pv, n)?)
    } else {
        let space = SpaceSpec::lp_step(pv, n)?;
        ("antipodal", antipodal_net(&space, &Point::new(vec![1.0; n])?)?)
    };
    let witness = lp_step_witness(&net, refine)?;
    let run = covered_run(label, &net, &search_config(cfg, None), Some(witness.clone()));
    let t = tol(cfg, DEFAULT_TOL);

    let mut out = Outcome::new();
    let c = cov(&run);
    let upper = c.analytic_upper.ok_or_else(|| CliError::Config("no closed-form bound for this net".into()))?;
    out.check(Assertion::at_most("estimate <= analytic upper", c.empirical_estimate, upper, t));
    witness_consistent(&mut out, "refined witness", &witness);
    let eps_p = witness.params.get("eps_p").and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
    let pigeon = witness.params.get("pigeonhole_eps_p").and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
    out.check(Assertion::at_most("eps^p <= pigeonhole bound", eps_p, pigeon, 1e-12));
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn product(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let factors = match &cfg.factors {
        Some(f) if !f.is_empty() => f.clone(),
        Some(_) => return Err(CliError::Config("product needs at least one factor".into())),
        None => vec![SpaceSpec::lp_seq(2.0, 4)?, SpaceSpec::lp_seq(2.0, 4)?],
    };
    let p = cfg.p.unwrap_or(Exponent::Finite(2.0));
    let eps = cfg.eps.unwrap_or(0.1);
    let t = tol(cfg, DEFAULT_TOL);

    let mut out = Outcome::new();
    let mut nets = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for (i, f) in factors.iter().enumerate() {
        let net = antipodal_net(f, &Point::basis(f.dim(), 0))?;
        let run = covered_run(&format!("factor {}", i + 1), &net, &search_config(cfg, Some(i as u64 + 1)), None);
        worst = worst.max(cov(&run).empirical_estimate);
        out.push(run);
        nets.push(net);
    }
    let net = product_net(&nets, p, eps)?;
    let run = covered_run("product", &net, &search_config(cfg, Some(0)), None);
    out.check(Assertion::at_most("estimate <= max r_i + 2 eps", cov(&run).empirical_estimate, worst + 2.0 * eps, t));
    out.primary = out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn l1_sum_l1(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let d = cfg.d.unwrap_or(2);
    let host = SpaceSpec::p_sum(2.0, vec![SpaceSpec::lp_seq(1.0, d)?, SpaceSpec::lp_seq(1.0, d)?])?;
    let net = four_point_net(&host)?;
    let witness = lemma3_witness(&net)?;
    let run = covered_run("four_point", &net, &search_config(cfg, None), Some(witness.clone()));
    let target = (2.0 + 2f64.sqrt()).sqrt();
    let t = tol(cfg, DEFAULT_TOL);

    let mut out = Outcome::new();
    let c = cov(&run);
    witness_consistent(&mut out, "lemma witness", &witness);
    out.check(Assertion::within("certified lower ~ sqrt(2+sqrt 2)", c.certified_lower, target, t));
    out.check(Assertion::within("estimate ~ sqrt(2+sqrt 2)", c.empirical_estimate, target, t));
    out.check(Assertion::within("analytic upper = sqrt(2+sqrt 2)", c.analytic_upper.unwrap_or(f64::NAN), target, 0.0));
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn prop1(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = cfg.p.unwrap_or(Exponent::Finite(1.0));
    let dim = cfg.dim.unwrap_or(4);
    let host = SpaceSpec::p_sum(p.value(), vec![SpaceSpec::lp_seq(p.value(), dim)?, SpaceSpec::lp_seq(1.0, dim)?])?;
    let net = prop1_net(&host)?;
    let witness = tail_witness(&net)?;
    let run = covered_run("prop1", &net, &search_config(cfg, None), Some(witness.clone()));
    let target = p.two_root();
    let t = tol(cfg, DEFAULT_TOL);

    let mut out = Outcome::new();
    witness_consistent(&mut out, "tail witness", &witness);
    out.check(Assertion::at_least("tail guarantee >= 2^(1/p)", witness.guaranteed_distance, target, GUARANTEE_SLACK));
    out.check(Assertion::at_most("estimate <= 2^(1/p)", cov(&run).empirical_estimate, target, t));
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn hyperplane(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let dim = cfg.dim.unwrap_or(5);
    let host = SpaceSpec::p_sum(f64::INFINITY, vec![SpaceSpec::lp_seq(1.0, dim)?, SpaceSpec::scalar()])?;
    let net = hyperplane_net(&host)?;
    let origin = covering::covering_radius_lower(&net, &[Point::zeros(host.dim())])?;
    let run = covered_run("hyperplane", &net, &search_config(cfg, None), None);
    let t = tol(cfg, 1e-3);

    let mut out = Outcome::new();
    out.check(Assertion::at_least("origin distance >= 1", origin.certified_lower, 1.0, 1e-12));
    out.check(Assertion::at_least("certified lower >= 1", cov(&run).certified_lower, 1.0, 1e-12));
    out.check(Assertion::within("estimate = 1", cov(&run).empirical_estimate, 1.0, t));
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn polyhedral(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let k = cfg.k.unwrap_or(2);
    let dim = cfg.dim.unwrap_or(30);
    let m = cfg.m.unwrap_or(10);
    let support = cfg.support.unwrap_or(15);
    let space = SpaceSpec::poly_k(k, dim)?;
    let net = random_net(&space, m, support, cfg.seed)?;
    let witness = polyk_witness(&net)?;
    let run = covered_run("random", &net, &search_config(cfg, None), Some(witness.clone()));
    let kf = k as f64;

    let mut out = Outcome::new();
    witness_consistent(&mut out, "polyk witness", &witness);
    out.check(Assertion::at_least(
        "guarantee >= (2k-1)/k",
        witness.guaranteed_distance,
        (2.0 * kf - 1.0) / kf,
        GUARANTEE_SLACK,
    ));
    out.check(Assertion::at_least(
        "certified lower >= guarantee",
        cov(&run).certified_lower,
        witness.guaranteed_distance,
        GUARANTEE_SLACK,
    ));
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn uns_example(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = cfg.p.unwrap_or(Exponent::Finite(2.0));
    if !p.is_finite() {
        return Err(CliError::Config("uns-example needs a finite p".into()));
    }
    let dim = cfg.dim.unwrap_or(8);
    let m = cfg.m.unwrap_or(8);
    let host = SpaceSpec::p_sum(1.0, vec![SpaceSpec::scalar(), SpaceSpec::lp_seq(p.value(), dim)?])?;
    let support = cfg.support.unwrap_or(dim).min(host.dim());
    let net = random_net(&host, m, support, cfg.seed)?;
    let witness = uns_example_witness(&net)?;
    let mut run = covered_run("random", &net, &search_config(cfg, Some(1)), Some(witness.clone()));
    let ns = nonsquareness_estimate(&host, &search_config(cfg, Some(2)));
    let t = tol(cfg, DEFAULT_TOL);

    let mut out = Outcome::new();
    out.check(Assertion::at_least("nonsquareness >= 2", ns.value, 2.0, GUARANTEE_SLACK));
    witness_consistent(&mut out, "uns witness", &witness);
    out.check(Assertion::at_least("witness distance >= 2^(1/p)", witness.measured_distance, p.two_root(), t));
    run.nonsquareness = Some(ns);
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn search(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = cfg.p.unwrap_or(Exponent::Finite(2.0));
    let dim = cfg.dim.unwrap_or(2);
    let m = cfg.m.ok_or_else(|| CliError::Config("thickness-search needs m".into()))?;
    let space = SpaceSpec::lp_seq(p.value(), dim)?;
    let result = thickness_search(&space, m, &search_config(cfg, None))?;
    let est = result.report.empirical_estimate;
    let euclidean_plane = p == Exponent::Finite(2.0) && dim == 2;

    let mut out = Outcome::new();
    out.check(Assertion::at_least("estimate >= 1", est, 1.0, GUARANTEE_SLACK));
    if m == 1 {
        out.check(Assertion::within("single point radius = 2", est, 2.0, tol(cfg, 1e-3)));
    } else if m == 2 && euclidean_plane {
        out.check(Assertion::within("two points ~ sqrt 2", est, 2f64.sqrt(), tol(cfg, 2e-2)));
    } else if m >= 16 && euclidean_plane {
        out.check(Assertion::at_most("many points <= 1.05", est, 1.05, tol(cfg, 0.0)));
    }
    let mut run = Run::new("thickness_search", space);
    run.net = Some(NetSummary::from(&result.net));
    run.covering = Some(result.report);
    run.iterations = Some(result.iterations);
    out.push(run);
    out.bracket_checks();
    Ok(out)
}

fn inequalities(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = cfg.require_p()?;
    let trials = cfg.trials.unwrap_or(10_000);
    let dim = cfg.dim.unwrap_or(8);
    let n = cfg.n.unwrap_or(16);
    let pv = p.value();
    let mut which = Vec::new();
    if pv > 1.0 && pv <= 2.0 {
        which.push(Inequality::Clarkson);
    }
    if (2.0..f64::INFINITY).contains(&pv) {
        which.push(Inequality::Hanner);
    }
    if which.is_empty() {
        return Err(CliError::Config(format!("no inequality applies at p = {p}; use 1 < p < inf")));
    }
    let spaces = [SpaceSpec::lp_seq(pv, dim)?, SpaceSpec::lp_step(pv, n)?];

    let mut out = Outcome::new();
    let mut stream = 0;
    for ineq in which {
        for space in &spaces {
            let summary = random_trials(ineq, space, trials, split_seed(cfg.seed, stream))?;
            stream += 1;
            let label = format!("{ineq:?} in {space}").to_lowercase();
            out.check(Assertion::at_most(format!("{label}: violations"), summary.violations as f64, 0.0, 0.0));
            let mut run = Run::new(label, space.clone());
            run.trials = Some(summary);
            out.push(run);
        }
    }
    Ok(out)
}

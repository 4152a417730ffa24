//! Numerical checks of Clarkson's and Hanner's inequalities in `ℓ_p` and
//! step-function `L_p`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::spaces::{Exponent, Point, SpaceSpec};
use crate::REL_TOL;

/// One evaluation of an inequality `lhs ≤ rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IneqCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

impl IneqCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        IneqCheck { lhs, rhs, slack, holds: slack >= -REL_TOL * rhs.max(1.0) }
    }
}

fn finite_p(space: &SpaceSpec) -> Result<f64> {
    match space {
        SpaceSpec::LpSeq { p: Exponent::Finite(p), .. } | SpaceSpec::LpStep { p, .. } => Ok(*p),
        _ => invalid(format!("expected l_p or step L_p with finite p, got {space}")),
    }
}

fn norms(space: &SpaceSpec, f: &Point, g: &Point) -> Result<(f64, f64, f64, f64)> {
    let nf = space.norm(f)?;
    let ng = space.norm(g)?;
    Ok((nf, ng, space.norm(&f.add(g))?, space.norm(&f.sub(g))?))
}

/// `‖f+g‖^q + ‖f−g‖^q ≤ 2(‖f‖^p + ‖g‖^p)^{q/p}` with `1/p + 1/q = 1`, for `1 < p ≤ 2`.
pub fn clarkson_check(space: &SpaceSpec, f: &Point, g: &Point) -> Result<IneqCheck> {
    let p = finite_p(space)?;
    if !(p > 1.0 && p <= 2.0) {
        return invalid(format!("Clarkson's inequality in this form holds for 1 < p <= 2, got p = {p}"));
    }
    let q = p / (p - 1.0);
    let (nf, ng, plus, minus) = norms(space, f, g)?;
    let lhs = plus.powf(q) + minus.powf(q);
    let rhs = 2.0 * (nf.powf(p) + ng.powf(p)).powf(q / p);
    Ok(IneqCheck::new(lhs, rhs))
}

/// `‖f+g‖^p + ‖f−g‖^p ≤ (‖f‖+‖g‖)^p + |‖f‖−‖g‖|^p`, for `p ≥ 2`.
pub fn hanner_check(space: &SpaceSpec, f: &Point, g: &Point) -> Result<IneqCheck> {
    let p = finite_p(space)?;
    if p < 2.0 {
        return invalid(format!("Hanner's inequality in this direction holds for p >= 2, got p = {p}"));
    }
    let (nf, ng, plus, minus) = norms(space, f, g)?;
    let lhs = plus.powf(p) + minus.powf(p);
    let rhs = (nf + ng).powf(p) + (nf - ng).abs().powf(p);
    Ok(IneqCheck::new(lhs, rhs))
}

/// Covering radius bound `2^{1/p}` of an antipodal pair for `1 ≤ p ≤ 2`
/// (at `p = 1` this is the diameter bound 2).
pub fn clarkson_net_bound(p: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&p) {
        return invalid(format!("clarkson_net_bound needs 1 <= p <= 2, got {p}"));
    }
    Ok(2f64.powf(1.0 / p))
}

/// `min(‖f + f0‖, ‖f − f0‖)`.
pub fn antipodal_gap(space: &SpaceSpec, f: &Point, f0: &Point) -> Result<f64> {
    Ok(space.norm(&f.add(f0))?.min(space.norm(&f.sub(f0))?))
}

/// Which inequality [`random_trials`] exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    Clarkson,
    Hanner,
}

/// Outcome of checking one inequality on many random pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub inequality: Inequality,
    pub space: SpaceSpec,
    pub trials: usize,
    pub violations: usize,
    /// Smallest `slack / max(1, rhs)` seen.
    pub worst_relative_slack: f64,
}

/// Random pair `(f, g)` with Gaussian coordinates; every 7th `g` is a multiple
/// of `f`, which is where the inequalities are tight.
fn random_pair(space: &SpaceSpec, rng: &mut ChaCha8Rng, t: usize) -> (Point, Point) {
    let d = space.dim();
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..d).map(|_| StandardNormal.sample(rng)).collect() };
    let f = draw(rng);
    let g = if t % 7 == 6 {
        let s: f64 = StandardNormal.sample(rng);
        f.iter().map(|v| v * s).collect()
    } else {
        draw(rng)
    };
    (Point::new(f).expect("finite"), Point::new(g).expect("finite"))
}

pub fn random_trials(inequality: Inequality, space: &SpaceSpec, trials: usize, seed: u64) -> Result<TrialSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for t in 0..trials {
        let (f, g) = random_pair(space, &mut rng, t);
        let c = match inequality {
            Inequality::Clarkson => clarkson_check(space, &f, &g)?,
            Inequality::Hanner => hanner_check(space, &f, &g)?,
        };
        if !c.holds {
            violations += 1;
        }
        worst = worst.min(c.slack / c.rhs.max(1.0));
    }
    Ok(TrialSummary { inequality, space: space.clone(), trials, violations, worst_relative_slack: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parallelogram_case_is_tight() {
        let s = SpaceSpec::lp_seq(2.0, 3).unwrap();
        let f = pt(&[1.0, -2.0, 0.5]);
        let g = pt(&[0.3, 0.7, -1.1]);
        let c = clarkson_check(&s, &f, &g).unwrap();
        assert!(c.slack.abs() < 1e-12 * c.rhs && c.holds);
        let h = hanner_check(&s, &f, &g).unwrap();
        assert!(h.slack.abs() < 1e-12 * h.rhs && h.holds);
    }

    #[test]
    fn zero_second_argument_is_equality() {
        let f = pt(&[1.0, -2.0, 0.5, 3.0]);
        let z = Point::zeros(4);
        let s = SpaceSpec::lp_seq(1.5, 4).unwrap();
        let c = clarkson_check(&s, &f, &z).unwrap();
        let q = 3.0;
        let nf = s.norm(&f).unwrap();
        assert!((c.lhs - 2.0 * nf.powf(q)).abs() < 1e-12 * c.lhs);
        assert!((c.rhs - 2.0 * nf.powf(q)).abs() < 1e-12 * c.rhs);
        let s = SpaceSpec::lp_step(4.0, 4).unwrap();
        let h = hanner_check(&s, &f, &z).unwrap();
        assert!((h.lhs - h.rhs).abs() < 1e-12 * h.rhs);
    }

    #[test]
    fn random_pairs_hold() {
        let c = random_trials(Inequality::Clarkson, &SpaceSpec::lp_seq(1.5, 8).unwrap(), 1000, 3).unwrap();
        assert_eq!(c.violations, 0);
        let h = random_trials(Inequality::Hanner, &SpaceSpec::lp_step(4.0, 16).unwrap(), 1000, 3).unwrap();
        assert_eq!(h.violations, 0);
    }

    #[test]
    fn validity_ranges() {
        let f = pt(&[1.0, 0.0]);
        assert!(clarkson_check(&SpaceSpec::lp_seq(1.0, 2).unwrap(), &f, &f).is_err());
        assert!(clarkson_check(&SpaceSpec::lp_seq(2.5, 2).unwrap(), &f, &f).is_err());
        assert!(clarkson_check(&SpaceSpec::poly_k(1, 2).unwrap(), &f, &f).is_err());
        assert!(hanner_check(&SpaceSpec::lp_seq(1.9, 2).unwrap(), &f, &f).is_err());
        assert!(hanner_check(&SpaceSpec::lp_seq(f64::INFINITY, 2).unwrap(), &f, &f).is_err());
    }

    #[test]
    fn net_bound_values() {
        assert!((clarkson_net_bound(2.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(clarkson_net_bound(1.0).unwrap(), 2.0);
        assert!((clarkson_net_bound(1.5).unwrap() - 1.587_401_051_968_199_4).abs() < 1e-15);
        assert!(clarkson_net_bound(2.5).is_err());
    }
}

//! Covering-radius certification and estimation.
//!
//! The covering radius of a net `{x_i}` is `sup_{‖z‖≤1} min_i ‖z − x_i‖`. Any
//! ball point certifies a lower bound; the estimator maximises the nonsmooth
//! objective with a multistart derivative-free pattern search, seeded with the
//! construction witnesses. Upper bounds come only from closed forms attached to
//! a net's provenance.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::nets::{provenance, Net};
use crate::spaces::{Exponent, Point, SpaceSpec};
use crate::witnesses::{seed_witnesses, FarPointSearch};
use crate::{par_map, split_seed};

/// Bracket on the covering radius of one net.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringReport {
    pub certified_lower: f64,
    pub empirical_estimate: f64,
    pub analytic_upper: Option<f64>,
    pub best_witness: Point,
    pub evaluations: u64,
    pub seed: u64,
}

/// Best net found by [`thickness_search`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThicknessSearchResult {
    pub m: usize,
    pub net: Net,
    pub report: CoveringReport,
    pub iterations: usize,
}

/// Evaluation budget, restart count and base seed for the searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: u64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 200_000, restarts: 32, seed: 0 }
    }
}

impl SearchConfig {
    pub fn new(budget: u64, restarts: usize, seed: u64) -> Self {
        SearchConfig { budget, restarts, seed }
    }
}

/// `min_i ‖z − x_i‖`.
pub fn min_distance(space: &SpaceSpec, net: &Net, z: &Point) -> Result<f64> {
    space.check_dim(z.coords())?;
    if net.is_empty() {
        return invalid("min_distance needs a nonempty net");
    }
    if net.space().dim() != space.dim() {
        return invalid("net and point live in different spaces");
    }
    Ok(nearest(space, net.points(), z.coords(), &mut Vec::new()).1)
}

/// Index and distance of the nearest net point, first on ties.
fn nearest(space: &SpaceSpec, points: &[Point], z: &[f64], scratch: &mut Vec<f64>) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, x) in points.iter().enumerate() {
        let d = space.distance(z, x.coords(), scratch);
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

/// Scales `z` back into the closed unit ball.
fn project(space: &SpaceSpec, z: &mut [f64]) {
    let n = space.norm_of(z);
    if n > 1.0 {
        z.iter_mut().for_each(|v| *v /= n);
        // rounding can leave the norm a hair above 1
        if space.norm_of(z) > 1.0 {
            z.iter_mut().for_each(|v| *v *= 1.0 - f64::EPSILON);
        }
    }
}

/// Lower bound from a fixed candidate set; candidates outside the ball are
/// projected radially first. Only the lower fields carry information:
/// `empirical_estimate` equals `certified_lower`.
pub fn covering_radius_lower(net: &Net, candidates: &[Point]) -> Result<CoveringReport> {
    if candidates.is_empty() {
        return invalid("covering_radius_lower needs at least one candidate");
    }
    let space = net.space();
    let mut scratch = Vec::new();
    let mut best: Option<(Point, f64)> = None;
    for c in candidates {
        space.check_dim(c.coords())?;
        let mut z = c.coords().to_vec();
        project(space, &mut z);
        let v = nearest(space, net.points(), &z, &mut scratch).1;
        if best.as_ref().is_none_or(|b| v > b.1) {
            best = Some((Point::new(z)?, v));
        }
    }
    let (w, v) = best.expect("nonempty");
    Ok(CoveringReport {
        certified_lower: v,
        empirical_estimate: v,
        analytic_upper: None,
        best_witness: w,
        evaluations: candidates.len() as u64,
        seed: 0,
    })
}

/// Derivative-free maximiser of a function of `dim` reals over a feasible set
/// enforced by `fix` (projection), with an evaluation budget.
struct PatternSearch<'a, F, P> {
    f: F,
    fix: P,
    dim: usize,
    budget: u64,
    used: u64,
    rng: &'a mut ChaCha8Rng,
}

impl<F: FnMut(&[f64]) -> f64, P: Fn(&mut [f64])> PatternSearch<'_, F, P> {
    fn eval(&mut self, z: &[f64]) -> f64 {
        self.used += 1;
        (self.f)(z)
    }

    /// Poll coordinate directions (a random subset when `dim` is large) and a few
    /// Gaussian directions; move on the first strict improvement and try to
    /// extend it, otherwise halve the step.
    fn run(&mut self, start: Vec<f64>, start_value: f64, mut step: f64) -> (Vec<f64>, f64) {
        let mut z = start;
        let mut fz = start_value;
        let mut cand = vec![0.0; self.dim];
        let coord_polls = self.dim.min(12);
        while self.used < self.budget && step > 1e-10 {
            let mut improved = false;
            let n_dirs = 2 * coord_polls + 4;
            for t in 0..n_dirs {
                if self.used >= self.budget {
                    break;
                }
                let dir: Vec<f64> = if t < 2 * coord_polls {
                    let c = if coord_polls == self.dim { t / 2 } else { self.rng.random_range(0..self.dim) };
                    let mut d = vec![0.0; self.dim];
                    d[c] = if t % 2 == 0 { 1.0 } else { -1.0 };
                    d
                } else {
                    let g: Vec<f64> = (0..self.dim).map(|_| self.rng.sample(StandardNormal)).collect();
                    let n = g.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
                    g.into_iter().map(|v| v / n).collect()
                };
                for (c, (a, d)) in cand.iter_mut().zip(z.iter().zip(&dir)) {
                    *c = a + step * d;
                }
                (self.fix)(&mut cand);
                let fc = self.eval(&cand);
                if fc > fz + 1e-15 {
                    z.copy_from_slice(&cand);
                    fz = fc;
                    improved = true;
                    // keep going along the successful direction while it pays
                    let mut stride = 2.0 * step;
                    while self.used < self.budget {
                        for (c, (a, d)) in cand.iter_mut().zip(z.iter().zip(&dir)) {
                            *c = a + stride * d;
                        }
                        (self.fix)(&mut cand);
                        let fe = self.eval(&cand);
                        if fe > fz + 1e-15 {
                            z.copy_from_slice(&cand);
                            fz = fe;
                            stride *= 2.0;
                        } else {
                            break;
                        }
                    }
                    break;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        (z, fz)
    }
}

/// Restart budget left after evaluating `seeded` seed points.
fn per_restart(cfg: &SearchConfig, seeded: u64) -> u64 {
    cfg.budget.saturating_sub(seeded) / cfg.restarts.max(1) as u64
}

/// Multistart maximisation of `z ↦ min_i ‖z − x_i‖` over the unit ball.
///
/// The construction witnesses from [`seed_witnesses`] and `extra_seeds` are
/// evaluated first; the best of them start the first restarts, the remaining
/// restarts start from the best of a few ball samples. Restart `r` draws from its
/// own stream `split_seed(seed, r)`, and results merge by value with the lowest
/// restart index winning ties, so the report does not depend on thread count.
pub fn covering_radius_estimate_with(net: &Net, cfg: &SearchConfig, extra_seeds: &[Point]) -> CoveringReport {
    let space = net.space();
    let dim = space.dim();
    let mut seeds = seed_witnesses(net);
    seeds.extend(extra_seeds.iter().filter(|s| s.dim() == dim).cloned());

    let mut scratch = Vec::new();
    let mut scored: Vec<(Vec<f64>, f64)> = seeds
        .into_iter()
        .map(|s| {
            let mut z = s.into_coords();
            project(space, &mut z);
            let v = nearest(space, net.points(), &z, &mut scratch).1;
            (z, v)
        })
        .collect();
    let seeded = scored.len() as u64;
    // stable: equal values keep seed order
    scored.sort_by(|a, b| b.1.total_cmp(&a.1));

    let restarts = cfg.restarts.max(1);
    let per = per_restart(cfg, seeded);
    let from_seeds = scored.len().min(restarts.div_ceil(2));
    let results = par_map(restarts, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(cfg.seed, r as u64));
        let mut scratch = Vec::new();
        let mut used = 0;
        let (start, value, step) = if r < from_seeds {
            (scored[r].0.clone(), scored[r].1, 0.25)
        } else {
            let mut best = (Vec::new(), f64::NEG_INFINITY);
            for _ in 0..per.clamp(1, 8) {
                let z = space.sample_ball_with(&mut rng).into_coords();
                let v = nearest(space, net.points(), &z, &mut scratch).1;
                used += 1;
                if v > best.1 {
                    best = (z, v);
                }
            }
            (best.0, best.1, 0.5)
        };
        let mut search = PatternSearch {
            f: |z: &[f64]| nearest(space, net.points(), z, &mut scratch).1,
            fix: |z: &mut [f64]| project(space, z),
            dim,
            budget: per.saturating_sub(used),
            used: 0,
            rng: &mut rng,
        };
        let (z, v) = search.run(start, value, step);
        (z, v, used + search.used)
    });

    let mut evaluations = seeded;
    let mut best = (scored[0].0.clone(), scored[0].1);
    for (z, v, used) in results {
        evaluations += used;
        if v > best.1 {
            best = (z, v);
        }
    }
    let witness = Point::new(best.0).expect("finite iterates");
    let certified = nearest(space, net.points(), witness.coords(), &mut scratch).1;
    CoveringReport {
        certified_lower: certified,
        empirical_estimate: best.1,
        analytic_upper: analytic_upper(net),
        best_witness: witness,
        evaluations,
        seed: cfg.seed,
    }
}

/// [`covering_radius_estimate_with`] without extra seeds.
pub fn covering_radius_estimate(net: &Net, cfg: &SearchConfig) -> CoveringReport {
    covering_radius_estimate_with(net, cfg, &[])
}

impl FarPointSearch for SearchConfig {
    fn far_point(&self, net: &Net, seed: u64) -> (Point, f64) {
        let r = covering_radius_estimate(net, &SearchConfig { seed, ..*self });
        (r.best_witness, r.empirical_estimate)
    }
}

/// Closed-form covering-radius bound for nets with a recognised construction.
pub fn analytic_upper(net: &Net) -> Option<f64> {
    let two_root = |p: Exponent| p.two_root();
    match net.provenance() {
        provenance::LP_FUNC => {
            let p = net.param_f64("p")?;
            let n = net.param_f64("n")?;
            if p >= 2.0 {
                // Hanner on the emptiest subinterval, plus the rest of the mass
                let h = n.powf(-1.0 / p);
                (0.5 * ((1.0 + h).powf(p) + (1.0 - h).powf(p)) + 1.0).powf(1.0 / p).into()
            } else {
                // the net contains an antipodal pair, so Clarkson applies
                Some(2f64.powf(1.0 / p))
            }
        }
        provenance::ANTIPODAL => {
            let space = net.space();
            let x0 = &net.points()[0];
            match space {
                SpaceSpec::LpSeq { p: Exponent::Finite(p), .. } | SpaceSpec::LpStep { p, .. } if *p <= 2.0 => {
                    Some(2f64.powf(1.0 / p))
                }
                SpaceSpec::LpSeq { p, .. } if is_signed_basis(x0) => Some(two_root(*p)),
                _ => None,
            }
        }
        provenance::PRODUCT => {
            let eps = net.param_f64("eps")?;
            let uppers = net.params().get("factor_uppers")?.as_array()?;
            let mut worst = f64::NEG_INFINITY;
            for u in uppers {
                worst = worst.max(u.as_f64()?);
            }
            Some(worst + 2.0 * eps)
        }
        provenance::EMBED => {
            let r = net.param_f64("factor_upper")?;
            match net.space().exponent()? {
                Exponent::Finite(p) => Some((r.powf(p) + 1.0).powf(1.0 / p)),
                Exponent::Infinite => Some(r.max(1.0)),
            }
        }
        provenance::HYPERPLANE => Some(1.0),
        provenance::FOUR_POINT => Some((2.0 + 2f64.sqrt()).sqrt()),
        provenance::PROP1 => net.space().exponent().map(two_root),
        _ => None,
    }
}

fn is_signed_basis(x: &Point) -> bool {
    let nonzero: Vec<f64> = x.coords().iter().copied().filter(|v| *v != 0.0).collect();
    nonzero.len() == 1 && nonzero[0].abs() == 1.0
}

/// Intermediate nets re-estimated at the end of [`thickness_search`].
const FINALISTS: usize = 4;

/// Heuristic for the smallest covering radius over `m`-point unit nets.
///
/// Starts from `m` random unit vectors, then repeatedly locates the worst ball
/// point and pulls the nearest net point towards its direction, with a step that
/// shrinks geometrically. The inner estimates use a small budget and can miss the
/// worst point, so the initial net, the final net and the few intermediate nets
/// with the best inner estimates are all re-estimated with the full budget at
/// the end; the best of those is returned, earliest on ties.
pub fn thickness_search(space: &SpaceSpec, m: usize, cfg: &SearchConfig) -> Result<ThicknessSearchResult> {
    if m == 0 {
        return invalid("thickness_search needs m >= 1");
    }
    space.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let initial: Vec<Point> = (0..m).map(|_| space.sample_sphere_with(&mut rng)).collect();
    let initial = Net::custom(space.clone(), initial)?;

    let iterations = 80usize;
    let inner = SearchConfig { budget: (cfg.budget / (iterations as u64 + 2)).max(400), restarts: 8, seed: cfg.seed };
    let mut points = initial.points().to_vec();
    let mut history: Vec<(Vec<Point>, f64)> = Vec::new();
    let mut scratch = Vec::new();
    let mut step = 0.5;
    let mut done = 0;
    for it in 0..iterations {
        done = it + 1;
        let net = Net::custom(space.clone(), points.clone())?;
        let rep = covering_radius_estimate(&net, &SearchConfig { seed: split_seed(cfg.seed, it as u64), ..inner });
        history.push((points.clone(), rep.empirical_estimate));
        let w = &rep.best_witness;
        let wn = space.norm_of(w.coords());
        if wn == 0.0 {
            // the origin is the worst point: nothing left to gain
            break;
        }
        let (j, _) = nearest(space, &points, w.coords(), &mut scratch);
        let target = w.scale(1.0 / wn);
        let moved = points[j].scale(1.0 - step).add(&target.scale(step));
        if let Ok(u) = space.normalize(&moved) {
            points[j] = u;
        }
        step *= 0.94;
    }

    let mut ranked: Vec<usize> = (0..history.len()).collect();
    ranked.sort_by(|&a, &b| history[a].1.total_cmp(&history[b].1));
    let mut finalists = vec![initial.points().to_vec()];
    finalists.extend(ranked.iter().take(FINALISTS).map(|&i| history[i].0.clone()));
    finalists.push(points);
    let mut best: Option<(Net, CoveringReport)> = None;
    for pts in finalists {
        let net = Net::custom(space.clone(), pts)?;
        let rep = covering_radius_estimate(&net, cfg);
        if best.as_ref().is_none_or(|(_, b)| rep.empirical_estimate < b.empirical_estimate) {
            best = Some((net, rep));
        }
    }
    let (net, report) = best.expect("at least the initial net");
    Ok(ThicknessSearchResult { m, net, report, iterations: done })
}

/// Best pair found for `sup { min(‖x − y‖, ‖x + y‖) : x, y unit }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonsquarenessResult {
    pub value: f64,
    pub x: Point,
    pub y: Point,
    pub evaluations: u64,
}

/// `min(‖x − y‖, ‖x + y‖)` for unit `x`, `y`.
pub fn square_gap(space: &SpaceSpec, x: &[f64], y: &[f64], scratch: &mut Vec<f64>) -> f64 {
    let minus = space.distance(x, y, scratch);
    scratch.clear();
    scratch.extend(x.iter().zip(y).map(|(a, b)| a + b));
    minus.min(space.norm_of(scratch))
}

/// Multistart maximisation of [`square_gap`] over pairs of unit vectors.
///
/// Pairs of basis vectors (up to 256 of them) are tried first, then random pairs.
/// The value returned is the gap of the returned, already normalized pair, so it
/// is a certified lower bound for the supremum.
pub fn nonsquareness_estimate(space: &SpaceSpec, cfg: &SearchConfig) -> NonsquarenessResult {
    let dim = space.dim();
    let unit = |v: &[f64]| -> Option<Vec<f64>> {
        let n = space.norm_of(v);
        (n > 0.0).then(|| v.iter().map(|c| c / n).collect())
    };
    let gap_of = |xy: &[f64], scratch: &mut Vec<f64>| -> f64 {
        match (unit(&xy[..dim]), unit(&xy[dim..])) {
            (Some(x), Some(y)) => square_gap(space, &x, &y, scratch),
            _ => f64::NEG_INFINITY,
        }
    };

    let mut seeds: Vec<Vec<f64>> = Vec::new();
    'outer: for a in 0..dim {
        for b in a + 1..dim {
            if seeds.len() >= 256 {
                break 'outer;
            }
            let mut xy = vec![0.0; 2 * dim];
            xy[a] = 1.0;
            xy[dim + b] = 1.0;
            seeds.push(xy);
        }
    }
    let mut scratch = Vec::new();
    let mut scored: Vec<(Vec<f64>, f64)> = seeds
        .into_iter()
        .map(|s| {
            let v = gap_of(&s, &mut scratch);
            (s, v)
        })
        .collect();
    let seeded = scored.len() as u64;
    scored.sort_by(|a, b| b.1.total_cmp(&a.1));

    let restarts = cfg.restarts.max(1);
    let per = per_restart(cfg, seeded);
    let from_seeds = scored.len().min(restarts.div_ceil(2));
    let results = par_map(restarts, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(cfg.seed, r as u64));
        let mut scratch = Vec::new();
        let (start, value) = if r < from_seeds {
            scored[r].clone()
        } else {
            let mut xy = space.sample_sphere_with(&mut rng).into_coords();
            xy.extend(space.sample_sphere_with(&mut rng).into_coords());
            let v = gap_of(&xy, &mut scratch);
            (xy, v)
        };
        let mut search = PatternSearch {
            f: |xy: &[f64]| gap_of(xy, &mut scratch),
            fix: |_: &mut [f64]| {},
            dim: 2 * dim,
            budget: per,
            used: 0,
            rng: &mut rng,
        };
        let (xy, v) = search.run(start, value, 0.25);
        (xy, v, search.used)
    });

    let mut evaluations = seeded;
    let mut best = scored.first().cloned().unwrap_or_else(|| {
        let mut xy = vec![0.0; 2 * dim];
        xy[0] = 1.0;
        xy[dim] = 1.0;
        (xy, 0.0)
    });
    for (xy, v, used) in results {
        evaluations += used;
        // merge with a small margin so rounding noise never displaces an earlier pair
        if v > best.1 + 1e-12 {
            best = (xy, v);
        }
    }
    let x = unit(&best.0[..dim]).expect("nonzero");
    let y = unit(&best.0[dim..]).expect("nonzero");
    let value = square_gap(space, &x, &y, &mut scratch);
    NonsquarenessResult { value, x: Point::new(x).expect("finite"), y: Point::new(y).expect("finite"), evaluations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::{antipodal_net, four_point_net, hyperplane_net, lp_func_net, prop1_net, random_net};
    use crate::witnesses::tail_witness;

    fn pt(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    fn quick(seed: u64) -> SearchConfig {
        SearchConfig::new(20_000, 8, seed)
    }

    #[test]
    fn min_distance_examples() {
        let e = SpaceSpec::lp_seq(2.0, 2).unwrap();
        let net = antipodal_net(&e, &pt(&[1.0, 0.0])).unwrap();
        assert!((min_distance(&e, &net, &pt(&[0.0, 1.0])).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(min_distance(&e, &net, &pt(&[-1.0, 0.0])).unwrap(), 0.0);
        let l1 = SpaceSpec::lp_seq(1.0, 2).unwrap();
        let net = antipodal_net(&l1, &pt(&[1.0, 0.0])).unwrap();
        assert_eq!(min_distance(&l1, &net, &pt(&[0.0, 1.0])).unwrap(), 2.0);
        assert!(min_distance(&l1, &net, &pt(&[0.0, 1.0, 0.0])).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let s = SpaceSpec::lp_seq(2.0, 10).unwrap();
        let net = antipodal_net(&s, &Point::basis(10, 0)).unwrap();
        let w = tail_witness(&net).unwrap().witness;
        let r = covering_radius_lower(&net, &[w]).unwrap();
        assert!((r.certified_lower - 2f64.sqrt()).abs() < 1e-15);

        let r = covering_radius_lower(&net, &[Point::zeros(10)]).unwrap();
        assert_eq!(r.certified_lower, 1.0);

        // out-of-ball candidates are projected: 3 e_2 becomes e_2
        let r = covering_radius_lower(&net, &[Point::basis(10, 1).scale(3.0)]).unwrap();
        assert!((r.certified_lower - 2f64.sqrt()).abs() < 1e-15);

        assert!(covering_radius_lower(&net, &[]).is_err());
    }

    #[test]
    fn two_point_net_in_lp_reaches_two_root() {
        for p in [1.0, 2.0, 3.0] {
            let s = SpaceSpec::lp_seq(p, 10).unwrap();
            let net = antipodal_net(&s, &Point::basis(10, 0)).unwrap();
            let r = covering_radius_estimate(&net, &quick(1));
            let target = 2f64.powf(1.0 / p);
            assert!((r.empirical_estimate - target).abs() < 1e-2, "p={p}: {}", r.empirical_estimate);
            assert!(r.certified_lower <= r.empirical_estimate + 1e-9);
            assert_eq!(r.analytic_upper, Some(target));
        }
    }

    #[test]
    fn hyperplane_net_radius_is_one() {
        let host =
            SpaceSpec::p_sum(f64::INFINITY, vec![SpaceSpec::lp_seq(1.0, 5).unwrap(), SpaceSpec::scalar()]).unwrap();
        let net = hyperplane_net(&host).unwrap();
        let r = covering_radius_estimate(&net, &quick(2));
        assert!((r.empirical_estimate - 1.0).abs() < 1e-3);
        assert_eq!(r.analytic_upper, Some(1.0));
    }

    #[test]
    fn four_point_radius() {
        let l1 = SpaceSpec::lp_seq(1.0, 2).unwrap();
        let host = SpaceSpec::p_sum(2.0, vec![l1.clone(), l1]).unwrap();
        let net = four_point_net(&host).unwrap();
        let r = covering_radius_estimate(&net, &quick(3));
        let target = (2.0 + 2f64.sqrt()).sqrt();
        assert!((r.empirical_estimate - target).abs() < 1e-2, "{}", r.empirical_estimate);
        assert_eq!(r.analytic_upper, Some(target));
    }

    #[test]
    fn analytic_upper_values() {
        let net = lp_func_net(3.0, 8).unwrap();
        let u = analytic_upper(&net).unwrap();
        assert!((u - 2.75f64.powf(1.0 / 3.0)).abs() < 1e-12);

        let s = SpaceSpec::lp_step(1.5, 4).unwrap();
        let net = antipodal_net(&s, &pt(&[1.0; 4])).unwrap();
        assert!((analytic_upper(&net).unwrap() - 2f64.powf(2.0 / 3.0)).abs() < 1e-15);

        // no closed form for a generic antipodal pair in l_3
        let s = SpaceSpec::lp_seq(3.0, 2).unwrap();
        let x = s.normalize(&pt(&[1.0, 1.0])).unwrap();
        assert_eq!(analytic_upper(&antipodal_net(&s, &x).unwrap()), None);

        let host = SpaceSpec::p_sum(3.0, vec![SpaceSpec::lp_seq(3.0, 2).unwrap(), SpaceSpec::scalar()]).unwrap();
        assert_eq!(analytic_upper(&prop1_net(&host).unwrap()), Some(2f64.powf(1.0 / 3.0)));

        let custom = Net::custom(s.clone(), vec![x]).unwrap();
        assert_eq!(analytic_upper(&custom), None);
    }

    #[test]
    fn estimate_is_deterministic() {
        let s = SpaceSpec::poly_k(2, 6).unwrap();
        let net = random_net(&s, 4, 6, 8).unwrap();
        let a = covering_radius_estimate(&net, &quick(42));
        let b = covering_radius_estimate(&net, &quick(42));
        assert_eq!(a, b);
    }

    #[test]
    fn budget_of_one_still_reports() {
        let s = SpaceSpec::lp_seq(2.0, 3).unwrap();
        let net = antipodal_net(&s, &Point::basis(3, 0)).unwrap();
        let r = covering_radius_estimate(&net, &SearchConfig::new(1, 4, 0));
        assert!(r.empirical_estimate >= 1.0);
    }

    #[test]
    fn thickness_search_single_point() {
        let s = SpaceSpec::lp_seq(2.0, 2).unwrap();
        let r = thickness_search(&s, 1, &SearchConfig::new(40_000, 8, 5)).unwrap();
        assert_eq!(r.net.len(), 1);
        assert!((r.report.empirical_estimate - 2.0).abs() < 1e-3);
    }

    #[test]
    fn nonsquareness_examples() {
        let host = SpaceSpec::p_sum(1.0, vec![SpaceSpec::scalar(), SpaceSpec::lp_seq(2.0, 3).unwrap()]).unwrap();
        let r = nonsquareness_estimate(&host, &quick(0));
        assert!(r.value >= 2.0 - 1e-9);
        let mut s = Vec::new();
        assert_eq!(square_gap(&host, r.x.coords(), r.y.coords(), &mut s), r.value);

        let e = SpaceSpec::lp_seq(2.0, 4).unwrap();
        let r = nonsquareness_estimate(&e, &quick(0));
        assert!(r.value <= 2f64.sqrt() + 1e-9);
        assert!(r.value >= 2f64.sqrt() - 1e-6);
    }
}

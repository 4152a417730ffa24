//! Finite nets of unit vectors and the explicit constructions built from them.

use std::collections::{BTreeMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::spaces::{lp_norm, Exponent, Point, SpaceSpec};
use crate::NET_UNIT_TOL;

/// Construction parameters recorded alongside a net.
pub type Params = BTreeMap<String, Value>;

/// Default ceiling on the number of points a constructor may produce.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Provenance tags of the built-in constructions.
pub mod provenance {
    pub const LP_FUNC: &str = "lp_func_net";
    pub const ANTIPODAL: &str = "antipodal_net";
    pub const PRODUCT: &str = "product_net";
    pub const EMBED: &str = "embed_net";
    pub const HYPERPLANE: &str = "hyperplane_net";
    pub const FOUR_POINT: &str = "four_point_net";
    /// `{±(e_1, 0)}` in `ℓ_p ⊕_p Y`.
    pub const PROP1: &str = "prop1_antipodal_interpretation";
    pub const RANDOM: &str = "random";
    pub const CUSTOM: &str = "custom";
}

/// A nonempty finite set of unit vectors of one space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NetRepr")]
pub struct Net {
    space: SpaceSpec,
    provenance: String,
    params: Params,
    points: Vec<Point>,
}

#[derive(Deserialize)]
struct NetRepr {
    space: SpaceSpec,
    provenance: String,
    #[serde(default)]
    params: Params,
    points: Vec<Point>,
}

impl TryFrom<NetRepr> for Net {
    type Error = Error;

    fn try_from(r: NetRepr) -> Result<Self> {
        Net::new(r.space, r.points, r.provenance, r.params)
    }
}

impl Net {
    /// Checks that `points` is nonempty, dimensionally consistent and of unit norm
    /// within [`NET_UNIT_TOL`].
    pub fn new(space: SpaceSpec, points: Vec<Point>, provenance: impl Into<String>, params: Params) -> Result<Self> {
        space.validate()?;
        if points.is_empty() {
            return invalid("a net needs at least one point");
        }
        for (i, x) in points.iter().enumerate() {
            let n = space.norm(x)?;
            if (n - 1.0).abs() > NET_UNIT_TOL {
                return invalid(format!("net point {i} has norm {n}, not 1"));
            }
        }
        Ok(Net { space, provenance: provenance.into(), params, points })
    }

    /// A net with no recognised construction behind it.
    pub fn custom(space: SpaceSpec, points: Vec<Point>) -> Result<Self> {
        Net::new(space, points, provenance::CUSTOM, Params::new())
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn param_f64(&self, key: &str) -> Option<f64> {
        self.params.get(key).and_then(Value::as_f64)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same net with extra points; the result no longer has a recognised construction.
    pub fn with_points(&self, extra: impl IntoIterator<Item = Point>) -> Result<Net> {
        let mut points = self.points.clone();
        points.extend(extra);
        Net::custom(self.space.clone(), points)
    }

    /// Moves a step-function net onto a grid refined `factor`-fold. The functions,
    /// and therefore provenance and parameters, are unchanged.
    pub fn refine(&self, factor: usize) -> Result<Net> {
        let SpaceSpec::LpStep { p, n } = self.space else {
            return invalid("only lp_step nets can be refined");
        };
        if factor == 0 {
            return invalid("refinement factor must be positive");
        }
        let space = SpaceSpec::lp_step(p, n * factor)?;
        let points = self.points.iter().map(|x| x.refine(factor)).collect();
        Net::new(space, points, self.provenance.clone(), self.params.clone())
    }
}

fn dedup_key(x: &[f64]) -> Vec<i64> {
    x.iter().map(|v| (v * 1e12).round() as i64).collect()
}

/// `±f_1, …, ±f_n` with `f_i = n^{1/p} χ_{[(i-1)/n, i/n]}` in the `n`-step `L_p` model.
///
/// Points `0..n` carry `+n^{1/p}`, points `n..2n` carry `-n^{1/p}`.
pub fn lp_func_net(p: f64, n: usize) -> Result<Net> {
    let space = SpaceSpec::lp_step(p, n)?;
    let height = (n as f64).powf(1.0 / p);
    let points = [height, -height]
        .iter()
        .flat_map(|&h| {
            (0..n).map(move |i| {
                let mut c = vec![0.0; n];
                c[i] = h;
                Point::new(c).expect("finite")
            })
        })
        .collect();
    let params = Params::from([("p".to_string(), json!(p)), ("n".to_string(), json!(n))]);
    Net::new(space, points, provenance::LP_FUNC, params)
}

/// `{x0, -x0}` for a unit vector `x0`.
pub fn antipodal_net(space: &SpaceSpec, x0: &Point) -> Result<Net> {
    let n = space.norm(x0)?;
    if (n - 1.0).abs() > NET_UNIT_TOL {
        return invalid(format!("antipodal_net needs a unit vector, got norm {n}"));
    }
    Net::new(space.clone(), vec![x0.clone(), x0.neg()], provenance::ANTIPODAL, Params::new())
}

/// Normalized nonzero nodes of a cubic grid in `[-1,1]^dim`, an `eps`-net of the
/// unit sphere of `ℓ_p^dim`. Uses [`DEFAULT_CAP`].
pub fn sphere_eps_net(dim: usize, p: Exponent, eps: f64) -> Result<Vec<Point>> {
    sphere_eps_net_capped(dim, p, eps, DEFAULT_CAP)
}

/// Grid spacing is at most `eps / (2 dim^{1/p})`: rounding a sphere point to the
/// nearest node moves it by at most `eps/2`, and normalizing at most doubles that.
pub fn sphere_eps_net_capped(dim: usize, p: Exponent, eps: f64, cap: usize) -> Result<Vec<Point>> {
    if dim == 0 {
        return invalid("sphere_eps_net needs dim >= 1");
    }
    if !(eps.is_finite() && eps > 0.0) {
        return invalid(format!("sphere_eps_net needs eps > 0, got {eps}"));
    }
    let delta = eps / (2.0 * (dim as f64).powf(p.recip()));
    // nodes j/steps for j in -steps..=steps, so the spacing 1/steps never exceeds delta
    let steps = (1.0 / delta).ceil().max(1.0);
    if steps > 1e9 {
        return Err(Error::CapExceeded { what: "sphere_eps_net grid", required: u128::MAX, cap });
    }
    let steps = steps as i64;
    let side = (2 * steps + 1) as u128;
    let nodes = (0..dim).try_fold(1u128, |acc, _| acc.checked_mul(side)).unwrap_or(u128::MAX) - 1;
    if nodes > cap as u128 {
        return Err(Error::CapExceeded { what: "sphere_eps_net grid", required: nodes, cap });
    }

    let mut idx = vec![-steps; dim];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut buf = vec![0.0; dim];
    loop {
        if idx.iter().any(|&j| j != 0) {
            for (b, &j) in buf.iter_mut().zip(&idx) {
                *b = j as f64 / steps as f64;
            }
            let n = lp_norm(&buf, p);
            let unit: Vec<f64> = buf.iter().map(|v| v / n).collect();
            if seen.insert(dedup_key(&unit)) {
                out.push(Point::new(unit).expect("finite"));
            }
        }
        // odometer, last coordinate fastest
        let mut d = dim;
        loop {
            if d == 0 {
                return Ok(out);
            }
            d -= 1;
            if idx[d] < steps {
                idx[d] += 1;
                break;
            }
            idx[d] = -steps;
        }
    }
}

/// Every `(λ_1 x^1_{j_1}, …, λ_N x^N_{j_N})` for `λ` in the `eps`-net of the
/// `ℓ_p^N` sphere and one point per factor net. Uses [`DEFAULT_CAP`].
pub fn product_net(factor_nets: &[Net], p: Exponent, eps: f64) -> Result<Net> {
    product_net_capped(factor_nets, p, eps, DEFAULT_CAP)
}

pub fn product_net_capped(factor_nets: &[Net], p: Exponent, eps: f64, cap: usize) -> Result<Net> {
    if factor_nets.is_empty() {
        return invalid("product_net needs at least one factor net");
    }
    let lambdas = sphere_eps_net_capped(factor_nets.len(), p, eps, cap)?;
    let combos = factor_nets
        .iter()
        .try_fold(lambdas.len() as u128, |acc, f| acc.checked_mul(f.len() as u128))
        .unwrap_or(u128::MAX);
    if combos > cap as u128 {
        return Err(Error::CapExceeded { what: "product_net", required: combos, cap });
    }

    let host = SpaceSpec::PSum { p, factors: factor_nets.iter().map(|f| f.space().clone()).collect() };
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    let mut choice = vec![0usize; factor_nets.len()];
    for lambda in &lambdas {
        choice.iter_mut().for_each(|c| *c = 0);
        'tuples: loop {
            let coords: Vec<f64> = factor_nets
                .iter()
                .zip(&choice)
                .zip(lambda.coords())
                .flat_map(|((net, &j), &l)| net.points()[j].coords().iter().map(move |v| l * v))
                .collect();
            if seen.insert(dedup_key(&coords)) {
                points.push(Point::new(coords).expect("finite"));
            }
            let mut d = choice.len();
            loop {
                if d == 0 {
                    break 'tuples;
                }
                d -= 1;
                if choice[d] + 1 < factor_nets[d].len() {
                    choice[d] += 1;
                    break;
                }
                choice[d] = 0;
            }
        }
    }

    let uppers: Vec<Option<f64>> = factor_nets.iter().map(crate::covering::analytic_upper).collect();
    let params = Params::from([
        ("p".to_string(), json!(p)),
        ("eps".to_string(), json!(eps)),
        ("lambda_nodes".to_string(), json!(lambdas.len())),
        ("factor_uppers".to_string(), json!(uppers)),
    ]);
    Net::new(host, points, provenance::PRODUCT, params)
}

/// Places a factor net in block `position` (counted from 1) of a p-sum host,
/// zeros elsewhere.
pub fn embed_net(factor_net: &Net, position: usize, host: &SpaceSpec) -> Result<Net> {
    let SpaceSpec::PSum { p, factors } = host else {
        return invalid("embed_net needs a p_sum host");
    };
    if position == 0 || position > factors.len() {
        return invalid(format!("position {position} outside 1..={}", factors.len()));
    }
    if !factors[position - 1].same_space(factor_net.space()) {
        return invalid(format!(
            "host block {position} is {}, the net lives in {}",
            factors[position - 1],
            factor_net.space()
        ));
    }
    let range = host.blocks().expect("p_sum")[position - 1].clone();
    let points = factor_net
        .points()
        .iter()
        .map(|u| {
            let mut c = vec![0.0; host.dim()];
            c[range.clone()].copy_from_slice(u.coords());
            Point::new(c).expect("finite")
        })
        .collect();
    let params = Params::from([
        ("p".to_string(), json!(p)),
        ("position".to_string(), json!(position)),
        ("factor_upper".to_string(), json!(crate::covering::analytic_upper(factor_net))),
    ]);
    Net::new(host.clone(), points, provenance::EMBED, params)
}

/// `{(0_X, +1), (0_X, -1)}` in `X ⊕_∞ ℝ`.
pub fn hyperplane_net(host: &SpaceSpec) -> Result<Net> {
    match host {
        SpaceSpec::PSum { p: Exponent::Infinite, factors }
            if factors.len() >= 2 && factors.last().is_some_and(|f| f.is_scalar()) =>
        {
            let d = host.dim();
            let up = Point::basis(d, d - 1);
            let down = up.neg();
            Net::new(host.clone(), vec![up, down], provenance::HYPERPLANE, Params::new())
        }
        _ => invalid(format!("hyperplane_net needs X (+)_inf R, got {host}")),
    }
}

fn l1_block_dim(f: &SpaceSpec) -> Option<usize> {
    match f {
        SpaceSpec::LpSeq { p: Exponent::Finite(q), dim } if *q == 1.0 => Some(*dim),
        _ => None,
    }
}

/// The block dimension `d` when `host` is `ℓ_1^d ⊕_2 ℓ_1^d`.
pub(crate) fn l1_sum_l1_dim(host: &SpaceSpec) -> Option<usize> {
    match host {
        SpaceSpec::PSum { p: Exponent::Finite(q), factors } if *q == 2.0 && factors.len() == 2 => {
            let a = l1_block_dim(&factors[0])?;
            (l1_block_dim(&factors[1])? == a).then_some(a)
        }
        _ => None,
    }
}

/// `(e_1,0), (-e_1,0), (0,e_1), (0,-e_1)` in `ℓ_1^d ⊕_2 ℓ_1^d`.
pub fn four_point_net(host: &SpaceSpec) -> Result<Net> {
    let Some(d) = l1_sum_l1_dim(host) else {
        return invalid(format!("four_point_net needs l_1^d (+)_2 l_1^d, got {host}"));
    };
    let first = Point::basis(2 * d, 0);
    let second = Point::basis(2 * d, d);
    let points = vec![first.clone(), first.neg(), second.clone(), second.neg()];
    Net::new(host.clone(), points, provenance::FOUR_POINT, Params::from([("d".to_string(), json!(d))]))
}

/// `{(e_1, 0_Y), (-e_1, 0_Y)}` in `ℓ_p^d ⊕_p Y`.
pub fn prop1_net(host: &SpaceSpec) -> Result<Net> {
    let ok = match host {
        SpaceSpec::PSum { p, factors } if factors.len() == 2 => {
            matches!(&factors[0], SpaceSpec::LpSeq { p: q, .. } if q == p)
        }
        _ => false,
    };
    if !ok {
        return invalid(format!("prop1_net needs l_p^d (+)_p Y, got {host}"));
    }
    let e1 = Point::basis(host.dim(), 0);
    let p = host.exponent().expect("p_sum");
    Net::new(host.clone(), vec![e1.clone(), e1.neg()], provenance::PROP1, Params::from([("p".to_string(), json!(p))]))
}

/// `m` unit vectors drawn from a symmetric distribution, supported on the first
/// `support` coordinates.
pub fn random_net(space: &SpaceSpec, m: usize, support: usize, seed: u64) -> Result<Net> {
    if m == 0 {
        return invalid("random_net needs m >= 1");
    }
    if support == 0 || support > space.dim() {
        return invalid(format!("support {support} outside 1..={}", space.dim()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(m);
    while points.len() < m {
        let mut c = vec![0.0; space.dim()];
        for v in c.iter_mut().take(support) {
            *v = StandardNormal.sample(&mut rng);
        }
        let n = space.norm_of(&c);
        if n > 0.0 {
            c.iter_mut().for_each(|v| *v /= n);
            points.push(Point::new(c).expect("finite"));
        }
    }
    let params = Params::from([("seed".to_string(), json!(seed)), ("support".to_string(), json!(support))]);
    Net::new(space.clone(), points, provenance::RANDOM, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn pt(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lp_func_net_examples() {
        let net = lp_func_net(1.0, 1).unwrap();
        assert_eq!(net.points(), &[pt(&[1.0]), pt(&[-1.0])]);

        let net = lp_func_net(2.0, 4).unwrap();
        assert_eq!(net.len(), 8);
        assert_eq!(net.points()[0], pt(&[2.0, 0.0, 0.0, 0.0]));
        assert_eq!(net.space().norm(&net.points()[0]).unwrap(), 1.0);
        assert_eq!(net.points()[5], pt(&[0.0, -2.0, 0.0, 0.0]));

        let net = lp_func_net(3.0, 8).unwrap();
        let h = net.points()[3][3];
        assert!((h - 2.0).abs() < 1e-15);
        for x in net.points() {
            assert!((net.space().norm(x).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn antipodal_net_examples() {
        let e = SpaceSpec::lp_seq(2.0, 2).unwrap();
        let net = antipodal_net(&e, &pt(&[1.0, 0.0])).unwrap();
        assert_eq!(net.points(), &[pt(&[1.0, 0.0]), pt(&[-1.0, 0.0])]);

        let step = SpaceSpec::lp_step(2.0, 4).unwrap();
        let net = antipodal_net(&step, &pt(&[1.0; 4])).unwrap();
        assert_eq!(net.points()[1], pt(&[-1.0; 4]));
        assert_eq!(net.len(), 2);

        assert!(antipodal_net(&e, &pt(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn sphere_net_in_one_dimension_is_plus_minus_one() {
        for eps in [0.01, 0.5, 3.0] {
            let pts = sphere_eps_net(1, Exponent::Finite(2.0), eps).unwrap();
            assert_eq!(pts, vec![pt(&[-1.0]), pt(&[1.0])]);
        }
    }

    /// Brute check: random sphere points are all within eps of the net.
    fn assert_covers_sphere(dim: usize, p: Exponent, eps: f64, samples: usize) {
        let pts = sphere_eps_net(dim, p, eps).unwrap();
        let space = SpaceSpec::LpSeq { p, dim };
        for x in &pts {
            assert!((space.norm(x).unwrap() - 1.0).abs() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut scratch = Vec::new();
        for _ in 0..samples {
            let u = space.sample_sphere_with(&mut rng);
            let best =
                pts.iter().map(|x| space.distance(u.coords(), x.coords(), &mut scratch)).fold(f64::INFINITY, f64::min);
            assert!(best <= eps, "sphere point {u:?} is {best} from the net");
        }
    }

    #[test]
    fn sphere_net_covers() {
        assert_covers_sphere(2, Exponent::Finite(1.0), 1.0, 10_000);
        let pts = sphere_eps_net(2, Exponent::Finite(1.0), 1.0).unwrap();
        for x in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
            assert!(pts.contains(&pt(&x)));
        }
        assert_covers_sphere(2, Exponent::Finite(2.0), 0.1, 10_000);
        assert_covers_sphere(3, Exponent::Finite(3.0), 0.3, 10_000);
        assert_covers_sphere(3, Exponent::Infinite, 0.2, 10_000);
    }

    #[test]
    fn sphere_net_respects_the_cap() {
        let err = sphere_eps_net_capped(4, Exponent::Finite(2.0), 1e-3, 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 1000, .. }));
    }

    #[test]
    fn constructions_are_deterministic() {
        let a = sphere_eps_net(3, Exponent::Finite(1.5), 0.4).unwrap();
        let b = sphere_eps_net(3, Exponent::Finite(1.5), 0.4).unwrap();
        assert_eq!(a, b);
        let s = SpaceSpec::poly_k(3, 12).unwrap();
        assert_eq!(random_net(&s, 5, 6, 9).unwrap(), random_net(&s, 5, 6, 9).unwrap());
    }

    #[test]
    fn product_of_one_factor_is_the_sign_closure() {
        let e = SpaceSpec::lp_seq(2.0, 3).unwrap();
        let x = e.normalize(&pt(&[1.0, 2.0, -2.0])).unwrap();
        let f = Net::custom(e.clone(), vec![x.clone()]).unwrap();
        let prod = product_net(&[f], Exponent::Finite(2.0), 0.3).unwrap();
        assert_eq!(prod.points(), &[x.neg(), x]);
    }

    #[test]
    fn product_of_scalar_nets_contains_the_diagonal() {
        let r = SpaceSpec::lp_seq(2.0, 1).unwrap();
        let f = antipodal_net(&r, &pt(&[1.0])).unwrap();
        // eps chosen so the grid contains (1, 1)/√2 exactly: steps = 1
        let prod = product_net(&[f.clone(), f], Exponent::Finite(2.0), 2.0 * 2f64.sqrt()).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let diag = prod.points().iter().find(|x| (x[0] - h).abs() < 1e-15 && (x[1] - h).abs() < 1e-15);
        let diag = diag.expect("diagonal point present");
        assert!((prod.space().norm(diag).unwrap() - 1.0).abs() < 1e-15);
        // 8 λ-nodes and two 2-point factors: at most 32 distinct points
        assert_eq!(sphere_eps_net(2, Exponent::Finite(2.0), 2.0 * 2f64.sqrt()).unwrap().len(), 8);
        assert!(prod.len() <= 32);
    }

    #[test]
    fn product_points_are_unit() {
        let a = SpaceSpec::lp_seq(1.0, 2).unwrap();
        let b = SpaceSpec::lp_seq(3.0, 3).unwrap();
        let na = random_net(&a, 3, 2, 1).unwrap();
        let nb = random_net(&b, 2, 3, 2).unwrap();
        let prod = product_net(&[na, nb], Exponent::Finite(1.5), 0.5).unwrap();
        assert_eq!(prod.space().dim(), 5);
        assert!(product_net_capped(&[random_net(&a, 3, 2, 1).unwrap()], Exponent::Finite(2.0), 0.001, 10).is_err());
    }

    #[test]
    fn embed_examples() {
        let r = SpaceSpec::scalar();
        let host = SpaceSpec::p_sum(2.0, vec![r.clone(), r.clone(), r.clone()]).unwrap();
        let f = antipodal_net(&r, &pt(&[1.0])).unwrap();
        let net = embed_net(&f, 2, &host).unwrap();
        assert_eq!(net.points(), &[pt(&[0.0, 1.0, 0.0]), pt(&[0.0, -1.0, 0.0])]);
        assert_eq!(net.len(), f.len());

        let e = SpaceSpec::lp_seq(2.0, 2).unwrap();
        let host = SpaceSpec::p_sum(f64::INFINITY, vec![SpaceSpec::lp_seq(1.0, 3).unwrap(), e.clone()]).unwrap();
        let g = random_net(&e, 4, 2, 3).unwrap();
        let net = embed_net(&g, 2, &host).unwrap();
        for x in net.points() {
            assert!((host.norm(x).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!(embed_net(&g, 1, &host).is_err());
        assert!(embed_net(&g, 3, &host).is_err());
        assert!(embed_net(&g, 0, &host).is_err());
        assert!(embed_net(&g, 1, &e).is_err());
    }

    #[test]
    fn hyperplane_examples() {
        let host =
            SpaceSpec::p_sum(f64::INFINITY, vec![SpaceSpec::lp_seq(1.0, 3).unwrap(), SpaceSpec::scalar()]).unwrap();
        let net = hyperplane_net(&host).unwrap();
        assert_eq!(net.points(), &[pt(&[0.0, 0.0, 0.0, 1.0]), pt(&[0.0, 0.0, 0.0, -1.0])]);
        let bad = SpaceSpec::p_sum(2.0, vec![SpaceSpec::lp_seq(1.0, 3).unwrap(), SpaceSpec::scalar()]).unwrap();
        assert!(hyperplane_net(&bad).is_err());
    }

    #[test]
    fn four_point_examples() {
        let l1 = SpaceSpec::lp_seq(1.0, 2).unwrap();
        let host = SpaceSpec::p_sum(2.0, vec![l1.clone(), l1.clone()]).unwrap();
        let net = four_point_net(&host).unwrap();
        assert_eq!(
            net.points(),
            &[
                pt(&[1.0, 0.0, 0.0, 0.0]),
                pt(&[-1.0, 0.0, 0.0, 0.0]),
                pt(&[0.0, 0.0, 1.0, 0.0]),
                pt(&[0.0, 0.0, -1.0, 0.0])
            ]
        );
        for x in net.points() {
            assert!(net.points().contains(&x.neg()));
        }
        let l2 = SpaceSpec::lp_seq(2.0, 2).unwrap();
        assert!(four_point_net(&SpaceSpec::p_sum(2.0, vec![l1.clone(), l2]).unwrap()).is_err());
        assert!(four_point_net(&SpaceSpec::p_sum(1.0, vec![l1.clone(), l1]).unwrap()).is_err());
    }

    #[test]
    fn prop1_examples() {
        let host = SpaceSpec::p_sum(2.0, vec![SpaceSpec::lp_seq(2.0, 2).unwrap(), SpaceSpec::lp_seq(1.0, 2).unwrap()])
            .unwrap();
        let net = prop1_net(&host).unwrap();
        assert_eq!(net.points(), &[pt(&[1.0, 0.0, 0.0, 0.0]), pt(&[-1.0, 0.0, 0.0, 0.0])]);
        assert_eq!(net.provenance(), "prop1_antipodal_interpretation");
        let bad = SpaceSpec::p_sum(2.0, vec![SpaceSpec::lp_seq(1.0, 2).unwrap(), SpaceSpec::lp_seq(1.0, 2).unwrap()])
            .unwrap();
        assert!(prop1_net(&bad).is_err());
    }

    #[test]
    fn net_rejects_bad_points() {
        let e = SpaceSpec::lp_seq(2.0, 2).unwrap();
        assert!(Net::custom(e.clone(), vec![]).is_err());
        assert!(Net::custom(e.clone(), vec![pt(&[0.5, 0.0])]).is_err());
        assert!(Net::custom(e.clone(), vec![pt(&[1.0, 0.0, 0.0])]).is_err());
        assert!(Net::custom(e, vec![pt(&[1.0 + 1e-10, 0.0])]).is_ok());
    }

    #[test]
    fn net_json_shape() {
        let net = lp_func_net(2.0, 2).unwrap();
        let v = serde_json::to_value(&net).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
        for k in ["space", "provenance", "params", "points"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        let back: Net = serde_json::from_value(v).unwrap();
        assert_eq!(back, net);
        let bad = r#"{"space":{"kind":"lp_seq","p":2,"dim":2},"provenance":"x","params":{},"points":[[2.0,0.0]]}"#;
        assert!(serde_json::from_str::<Net>(bad).is_err());
    }

    #[test]
    fn refine_keeps_norms() {
        let net = lp_func_net(3.0, 4).unwrap();
        let fine = net.refine(5).unwrap();
        assert_eq!(fine.space().dim(), 20);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = Point::new((0..4).map(|_| rng.random::<f64>()).collect()).unwrap();
        let a = net.space().norm(&f).unwrap();
        let b = fine.space().norm(&f.refine(5)).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}

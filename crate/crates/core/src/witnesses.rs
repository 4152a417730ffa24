//! Adversarial ball points for the lower-bound constructions.
//!
//! Each builder picks the coordinate, subinterval or block on which the given net
//! is smallest and returns a ball point concentrated there, together with the
//! distance its construction guarantees from every net point. The guarantee is
//! always checked against the measured minimum distance.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::covering::min_distance;
use crate::error::{invalid, Result};
use crate::nets::{l1_sum_l1_dim, Net, Params};
use crate::spaces::{Exponent, Point, SpaceSpec};
use crate::{par_map, split_seed};

/// A ball point together with its guaranteed and measured distance to a net.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub witness: Point,
    #[serde(rename = "guaranteed")]
    pub guaranteed_distance: f64,
    #[serde(rename = "measured")]
    pub measured_distance: f64,
    pub construction: String,
    pub params: Params,
}

/// `(1 − ε^p + (1−ε)^p)^{1/p}` with `base` in place of the leading `1`.
fn tail_bound(base_p: f64, eps: f64, p: f64) -> f64 {
    let eps = eps.clamp(0.0, 1.0);
    (base_p - eps.powf(p) + (1.0 - eps).powf(p)).max(0.0).powf(1.0 / p)
}

/// Index minimising `score`, first one on ties.
fn argmin_by(n: usize, score: impl Fn(usize) -> f64) -> (usize, f64) {
    (0..n).map(|j| (j, score(j))).fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
}

/// Largest `|x_i(j)|` over the net.
fn column_max(net: &Net, j: usize) -> f64 {
    net.points().iter().map(|x| x[j].abs()).fold(0.0, f64::max)
}

fn report(
    net: &Net,
    space: &SpaceSpec,
    witness: Point,
    guaranteed: f64,
    construction: &str,
    params: Params,
) -> Result<WitnessReport> {
    let measured = min_distance(space, net, &witness)?;
    Ok(WitnessReport {
        witness,
        guaranteed_distance: guaranteed,
        measured_distance: measured,
        construction: construction.to_string(),
        params,
    })
}

/// Normalized indicator of the subinterval on which the net carries the least mass,
/// on the grid refined `refine`-fold. The witness and the measured distance live in
/// the refined step space.
pub fn lp_step_witness(net: &Net, refine: usize) -> Result<WitnessReport> {
    let SpaceSpec::LpStep { p, n } = *net.space() else {
        return invalid("lp_step_witness needs a net in an lp_step space");
    };
    let fine = net.refine(refine)?;
    let cells = n * refine;
    // ∫_A |f_i|^p over a fine cell A inside coarse slot s is |c_i(s)|^p / cells
    let mass = |i: usize, s: usize| net.points()[i][s].abs().powf(p) / cells as f64;
    let (slot, _) = argmin_by(n, |s| (0..net.len()).map(|i| mass(i, s)).sum());
    let cell = slot * refine;
    let eps_p = (0..net.len()).map(|i| mass(i, slot)).fold(0.0, f64::max);
    let eps = eps_p.powf(1.0 / p);

    let mut w = Point::zeros(cells).into_coords();
    w[cell] = (cells as f64).powf(1.0 / p);
    let witness = Point::new(w)?;

    let guaranteed = fine
        .points()
        .iter()
        .map(|f| tail_bound(fine.space().norm_of(f.coords()).powf(p), eps, p))
        .fold(f64::INFINITY, f64::min);
    let params = Params::from([
        ("refine".into(), json!(refine)),
        ("cells".into(), json!(cells)),
        ("cell".into(), json!(cell)),
        ("eps".into(), json!(eps)),
        ("eps_p".into(), json!(eps_p)),
        ("pigeonhole_eps_p".into(), json!(net.len() as f64 / cells as f64)),
    ]);
    report(&fine, fine.space(), witness, guaranteed, "lp_step_witness", params)
}

/// A block of coordinates whose `p`-th power norms add up to the whole norm.
#[derive(Clone, Debug)]
enum Atom {
    Coord(usize),
    Block { start: usize, space: SpaceSpec },
}

fn collect_atoms(space: &SpaceSpec, p: Exponent, start: usize, out: &mut Vec<Atom>) {
    match space {
        SpaceSpec::LpSeq { p: q, dim } if *q == p || *dim == 1 => out.extend((start..start + dim).map(Atom::Coord)),
        SpaceSpec::PSum { p: q, factors } if *q == p => {
            let mut s = start;
            for f in factors {
                collect_atoms(f, p, s, out);
                s += f.dim();
            }
        }
        other => out.push(Atom::Block { start, space: other.clone() }),
    }
}

fn atom_mass(atom: &Atom, x: &Point) -> f64 {
    match atom {
        Atom::Coord(c) => x[*c].abs(),
        Atom::Block { start, space } => space.norm_of(&x.coords()[*start..*start + space.dim()]),
    }
}

/// Unit vector supported on the block where the net is smallest.
///
/// `ℓ_p^d` splits into coordinates. A p-sum splits into its factors, and further
/// into coordinates of factors that are themselves `ℓ_p` with the same `p`.
pub fn tail_witness(net: &Net) -> Result<WitnessReport> {
    let space = net.space();
    let p = match space {
        SpaceSpec::LpSeq { p: Exponent::Finite(p), .. } | SpaceSpec::PSum { p: Exponent::Finite(p), .. } => *p,
        _ => return invalid(format!("tail_witness needs l_p or a p-sum with finite p, got {space}")),
    };
    let mut atoms = Vec::new();
    match space {
        SpaceSpec::LpSeq { dim, .. } => atoms.extend((0..*dim).map(Atom::Coord)),
        _ => collect_atoms(space, Exponent::Finite(p), 0, &mut atoms),
    }
    let (j, eps) = argmin_by(atoms.len(), |j| net.points().iter().map(|x| atom_mass(&atoms[j], x)).fold(0.0, f64::max));

    let mut w = vec![0.0; space.dim()];
    match &atoms[j] {
        Atom::Coord(c) => w[*c] = 1.0,
        Atom::Block { start, space: block } => {
            let d = block.dim();
            let (c, _) = argmin_by(d, |c| column_max(net, start + c));
            let e = Point::basis(d, c);
            let scale = 1.0 / block.norm_of(e.coords());
            w[start + c] = scale;
        }
    }
    let witness = Point::new(w)?;
    let guaranteed = net
        .points()
        .iter()
        .map(|x| tail_bound(space.norm_of(x.coords()).powf(p), eps, p))
        .fold(f64::INFINITY, f64::min);
    let params =
        Params::from([("block".into(), json!(j)), ("blocks".into(), json!(atoms.len())), ("eps".into(), json!(eps))]);
    report(net, space, witness, guaranteed, "tail_witness", params)
}

/// Finds a ball point far from a net; supplied to [`linf_adversary`] per factor.
pub trait FarPointSearch: Sync {
    /// A point of the unit ball of `net.space()` and its distance to the nearest net point.
    fn far_point(&self, net: &Net, seed: u64) -> (Point, f64);
}

/// Result of [`linf_adversary`].
#[derive(Clone, Debug, PartialEq)]
pub enum AdversaryOutcome {
    /// Every net point is more than `alpha` away from the witness.
    Certified(WitnessReport),
    /// Some net points were not handled by any factor; `report.guaranteed_distance` is 0.
    Inconclusive { uncovered: Vec<usize>, report: WitnessReport },
}

impl AdversaryOutcome {
    pub fn report(&self) -> &WitnessReport {
        match self {
            AdversaryOutcome::Certified(r) | AdversaryOutcome::Inconclusive { report: r, .. } => r,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, AdversaryOutcome::Certified(_))
    }
}

/// Lower bound for a net in `X_1 ⊕_∞ ⋯ ⊕_∞ X_N`.
///
/// For each factor `n` the net points whose `n`-th block has norm at least `1 − eps`
/// are normalized and handed to `search`; if it finds `x_n` farther than
/// `alpha + eps` from all of them, block `n` of the witness is `x_n` (unscaled).
/// A point `z_i` handled by factor `n` then satisfies
/// `‖z_i − x‖ ≥ ‖z_i(n)/‖z_i(n)‖ − x_n‖ − (1 − ‖z_i(n)‖) > alpha`.
pub fn linf_adversary(
    net: &Net,
    alpha: f64,
    eps: f64,
    search: &dyn FarPointSearch,
    seed: u64,
) -> Result<AdversaryOutcome> {
    let space = net.space();
    let SpaceSpec::PSum { p: Exponent::Infinite, factors } = space else {
        return invalid(format!("linf_adversary needs an l_inf-sum, got {space}"));
    };
    if !(eps > 0.0 && eps < alpha && eps < 1.0) {
        return invalid(format!("linf_adversary needs 0 < eps < min(alpha, 1), got eps={eps}, alpha={alpha}"));
    }
    let blocks = space.blocks().expect("p_sum");
    let block_norm = |i: usize, n: usize| factors[n].norm_of(&net.points()[i].coords()[blocks[n].clone()]);

    let per_factor = par_map(factors.len(), |n| {
        let members: Vec<usize> = (0..net.len()).filter(|&i| block_norm(i, n) >= 1.0 - eps).collect();
        if members.is_empty() {
            return (members, None);
        }
        let normalized = members
            .iter()
            .map(|&i| {
                let b = &net.points()[i].coords()[blocks[n].clone()];
                let s = block_norm(i, n);
                Point::new(b.iter().map(|v| v / s).collect()).expect("finite")
            })
            .collect();
        let sub = Net::custom(factors[n].clone(), normalized).expect("normalized blocks are unit");
        let (x, dist) = search.far_point(&sub, split_seed(seed, n as u64));
        (members, Some((x, dist)))
    });

    let mut w = vec![0.0; space.dim()];
    let mut handled = vec![false; net.len()];
    let mut succeeded = Vec::new();
    for (n, (members, found)) in per_factor.iter().enumerate() {
        if let Some((x, dist)) = found {
            if *dist > alpha + eps {
                w[blocks[n].clone()].copy_from_slice(x.coords());
                members.iter().for_each(|&i| handled[i] = true);
                succeeded.push(n);
            }
        }
    }
    let uncovered: Vec<usize> = (0..net.len()).filter(|&i| !handled[i]).collect();
    let params = Params::from([
        ("alpha".into(), json!(alpha)),
        ("eps".into(), json!(eps)),
        ("factors_used".into(), json!(succeeded)),
        ("index_sets".into(), json!(per_factor.iter().map(|(m, _)| m).collect::<Vec<_>>())),
        ("assembly".into(), json!("unscaled_blocks")),
        ("uncovered".into(), json!(uncovered)),
    ]);
    let witness = Point::new(w)?;
    if uncovered.is_empty() {
        Ok(AdversaryOutcome::Certified(report(net, space, witness, alpha, "linf_adversary", params)?))
    } else {
        let r = report(net, space, witness, 0.0, "linf_adversary", params)?;
        Ok(AdversaryOutcome::Inconclusive { uncovered, report: r })
    }
}

/// `(e_k/√2, e_k/√2)` in `ℓ_1^d ⊕_2 ℓ_1^d`, for the coordinate `k` where both
/// blocks of every net point are smallest.
pub fn lemma3_witness(net: &Net) -> Result<WitnessReport> {
    let space = net.space();
    let Some(d) = l1_sum_l1_dim(space) else {
        return invalid(format!("lemma3_witness needs l_1^d (+)_2 l_1^d, got {space}"));
    };
    let (k, eps) = argmin_by(d, |k| column_max(net, k).max(column_max(net, d + k)));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut w = vec![0.0; 2 * d];
    w[k] = h;
    w[d + k] = h;
    let guaranteed = net
        .points()
        .iter()
        .map(|z| {
            let a: f64 = z.coords()[..d].iter().map(|v| v.abs()).sum();
            let b: f64 = z.coords()[d..].iter().map(|v| v.abs()).sum();
            let ea = (a + h - 2.0 * eps).max(0.0);
            let eb = (b + h - 2.0 * eps).max(0.0);
            ea.hypot(eb)
        })
        .fold(f64::INFINITY, f64::min);
    let floor = if eps <= h / 2.0 { (2.0 + 2f64.sqrt()).sqrt() - 4.0 * eps } else { 0.0 };
    let params = Params::from([("k".into(), json!(k)), ("eps".into(), json!(eps)), ("floor".into(), json!(floor))]);
    report(net, space, Point::new(w)?, guaranteed, "lemma3_witness", params)
}

/// `k e_j` for the coordinate `j` where the net is smallest; distance at least
/// `(k − ε + k − 1)/k` from every unit net point when `ε ≤ 1`.
pub fn polyk_witness(net: &Net) -> Result<WitnessReport> {
    let space = net.space();
    let SpaceSpec::PolyK { k, dim } = *space else {
        return invalid(format!("polyk_witness needs a poly_k space, got {space}"));
    };
    let (j, eps) = argmin_by(dim, |j| column_max(net, j));
    let kf = k as f64;
    let mut w = vec![0.0; dim];
    w[j] = kf;
    // ‖k e_j − x‖_k ≥ (|k − x_j| + top-(k−1) of the other |x_l|) / k, and the top
    // k−1 of the others is at least min((k−1)‖x‖_k, k‖x‖_k − |x_j|)
    let guaranteed = net
        .points()
        .iter()
        .map(|x| {
            let top = kf * space.norm_of(x.coords());
            let first = (kf - eps).max(0.0);
            let rest = ((kf - 1.0) / kf * top).min((top - eps).max(0.0));
            (first + rest) / kf
        })
        .fold(f64::INFINITY, f64::min);
    let params = Params::from([("j".into(), json!(j)), ("eps".into(), json!(eps)), ("k".into(), json!(k))]);
    report(net, space, Point::new(w)?, guaranteed, "polyk_witness", params)
}

/// `(0, e_j)` in `ℝ ⊕_1 ℓ_p^d`, for the `ℓ_p` coordinate where the net is smallest.
pub fn uns_example_witness(net: &Net) -> Result<WitnessReport> {
    let space = net.space();
    let (p, d) = match space {
        SpaceSpec::PSum { p: Exponent::Finite(one), factors }
            if *one == 1.0 && factors.len() == 2 && factors[0].is_scalar() =>
        {
            match factors[1] {
                SpaceSpec::LpSeq { p: Exponent::Finite(p), dim } => (p, dim),
                _ => return invalid("uns_example_witness needs a finite-p l_p second factor"),
            }
        }
        _ => return invalid(format!("uns_example_witness needs R (+)_1 l_p^d, got {space}")),
    };
    let (j, eps) = argmin_by(d, |j| column_max(net, 1 + j));
    let mut w = vec![0.0; 1 + d];
    w[1 + j] = 1.0;
    let guaranteed = net
        .points()
        .iter()
        .map(|z| {
            let c = z[0].abs();
            let b = SpaceSpec::LpSeq { p: Exponent::Finite(p), dim: d }.norm_of(&z.coords()[1..]);
            c + (b.powf(p) - eps.powf(p) + (1.0 - eps.min(1.0)).powf(p)).max(0.0).powf(1.0 / p)
        })
        .fold(f64::INFINITY, f64::min);
    let params = Params::from([("j".into(), json!(j)), ("eps".into(), json!(eps))]);
    report(net, space, Point::new(w)?, guaranteed, "uns_example_witness", params)
}

/// Every construction witness that applies to `net`, plus the origin and the
/// antipodes of (up to 64) net points. Used to seed the covering search.
pub fn seed_witnesses(net: &Net) -> Vec<Point> {
    let space = net.space();
    let mut seeds = vec![Point::zeros(space.dim())];
    let mut push = |r: Result<WitnessReport>| {
        if let Ok(r) = r {
            if r.witness.dim() == space.dim() {
                seeds.push(r.witness);
            }
        }
    };
    match space {
        SpaceSpec::LpStep { .. } => push(lp_step_witness(net, 1)),
        SpaceSpec::PolyK { .. } => push(polyk_witness(net)),
        SpaceSpec::LpSeq { p: Exponent::Finite(_), .. } => push(tail_witness(net)),
        SpaceSpec::PSum { p, .. } => {
            if p.is_finite() {
                push(tail_witness(net));
            }
            if l1_sum_l1_dim(space).is_some() {
                push(lemma3_witness(net));
            }
            push(uns_example_witness(net));
        }
        _ => {}
    }
    seeds.extend(net.points().iter().take(64).map(Point::neg));
    seeds
}

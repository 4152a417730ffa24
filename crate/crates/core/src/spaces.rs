//! Norm oracles for the finite-dimensional spaces used throughout the crate.
//!
//! Four families are supported: sequence spaces `ℓ_p^d`, step-function models
//! of `L_p[0,1]` on `n` equal subintervals, finite `ℓ_p`-sums of other spaces,
//! and the polyhedral norm that averages the `k` largest absolute coordinates.

use std::fmt;
use std::ops::Index;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// An `ℓ_p` exponent. `p = ∞` is its own variant rather than a large number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinite)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            invalid(format!("exponent must lie in [1, inf], got {p}"))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    /// The exponent as a float, `f64::INFINITY` for the sup-norm.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    /// `1/p`, which is `0` for `p = ∞`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinite => 0.0,
        }
    }

    /// `2^{1/p}`, the value that keeps showing up for two-point nets.
    pub fn two_root(self) -> f64 {
        2f64.powf(self.recip())
    }

    /// Combines nonnegative block values `(Σ v_j^p)^{1/p}` (max for `p = ∞`).
    pub(crate) fn combine<I: IntoIterator<Item = f64>>(self, values: I) -> f64 {
        match self {
            Exponent::Infinite => values.into_iter().fold(0.0, f64::max),
            Exponent::Finite(1.0) => values.into_iter().sum(),
            Exponent::Finite(2.0) => values.into_iter().map(|v| v * v).sum::<f64>().sqrt(),
            Exponent::Finite(p) => values.into_iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Exponent::new(p).map_err(serde::de::Error::custom),
            Raw::Text(t) if t == "inf" => Ok(Exponent::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("exponent must be a number or \"inf\", got {t:?}"))),
        }
    }
}

/// `ℓ_p` norm of a coordinate slice.
pub(crate) fn lp_norm(x: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Finite(q) if q != 1.0 && q != 2.0 => {
            // scale by the largest entry so large p does not overflow
            let m = x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            if m == 0.0 {
                return 0.0;
            }
            m * x.iter().map(|v| (v.abs() / m).powf(q)).sum::<f64>().powf(1.0 / q)
        }
        _ => p.combine(x.iter().map(|v| v.abs())),
    }
}

/// A dense coordinate vector. Every entry is finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|v| !v.is_finite()) {
            return invalid(format!("coordinate {i} is not finite"));
        }
        Ok(Point(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    /// The basis vector `e_index` in dimension `dim` (`index` counted from 0).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut p = Point::zeros(dim);
        p.0[index] = 1.0;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn neg(&self) -> Point {
        self.scale(-1.0)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Concatenates block coordinates in order.
    pub fn concat<'a, I: IntoIterator<Item = &'a Point>>(blocks: I) -> Point {
        Point(blocks.into_iter().flat_map(|b| b.0.iter().copied()).collect())
    }

    /// Coordinates `x(1/n)…x(n/n)` of a coarse step function repeated `factor` times each,
    /// i.e. the same function on a grid refined `factor`-fold.
    pub fn refine(&self, factor: usize) -> Point {
        Point(self.0.iter().flat_map(|&v| std::iter::repeat_n(v, factor)).collect())
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Declarative description of a finite-dimensional real normed space.
///
/// Coordinates of a [`SpaceSpec::PSum`] are the concatenation of its factors'
/// coordinates, in factor order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "SpaceRepr")]
pub enum SpaceSpec {
    /// `(ℝ^dim, ‖·‖_p)`.
    LpSeq { p: Exponent, dim: usize },
    /// Step functions on `n` equal subintervals of `[0,1]` with the `L_p` norm,
    /// `((1/n) Σ |c_i|^p)^{1/p}`.
    LpStep { p: f64, n: usize },
    /// `X_1 ⊕_p ⋯ ⊕_p X_N`.
    PSum { p: Exponent, factors: Vec<SpaceSpec> },
    /// `‖x‖_k = (1/k) · (sum of the k largest |x_i|)`.
    PolyK { k: usize, dim: usize },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SpaceRepr {
    LpSeq { p: Exponent, dim: usize },
    LpStep { p: f64, n: usize },
    PSum { p: Exponent, factors: Vec<SpaceSpec> },
    PolyK { k: usize, dim: usize },
}

impl TryFrom<SpaceRepr> for SpaceSpec {
    type Error = Error;

    fn try_from(r: SpaceRepr) -> Result<Self> {
        let s = match r {
            SpaceRepr::LpSeq { p, dim } => SpaceSpec::LpSeq { p, dim },
            SpaceRepr::LpStep { p, n } => SpaceSpec::LpStep { p, n },
            SpaceRepr::PSum { p, factors } => SpaceSpec::PSum { p, factors },
            SpaceRepr::PolyK { k, dim } => SpaceSpec::PolyK { k, dim },
        };
        s.validate()?;
        Ok(s)
    }
}

impl SpaceSpec {
    pub fn lp_seq(p: f64, dim: usize) -> Result<Self> {
        let s = SpaceSpec::LpSeq { p: Exponent::new(p)?, dim };
        s.validate()?;
        Ok(s)
    }

    pub fn lp_step(p: f64, n: usize) -> Result<Self> {
        let s = SpaceSpec::LpStep { p, n };
        s.validate()?;
        Ok(s)
    }

    pub fn p_sum(p: f64, factors: Vec<SpaceSpec>) -> Result<Self> {
        let s = SpaceSpec::PSum { p: Exponent::new(p)?, factors };
        s.validate()?;
        Ok(s)
    }

    pub fn poly_k(k: usize, dim: usize) -> Result<Self> {
        let s = SpaceSpec::PolyK { k, dim };
        s.validate()?;
        Ok(s)
    }

    /// The real line.
    pub fn scalar() -> Self {
        SpaceSpec::LpSeq { p: Exponent::Finite(1.0), dim: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::LpSeq { dim, .. } if *dim == 0 => invalid("lp_seq needs dim >= 1"),
            SpaceSpec::LpSeq { .. } => Ok(()),
            SpaceSpec::LpStep { p, n } => {
                if !(p.is_finite() && *p >= 1.0) {
                    invalid(format!("lp_step needs a finite p >= 1, got {p}"))
                } else if *n == 0 {
                    invalid("lp_step needs n >= 1")
                } else {
                    Ok(())
                }
            }
            SpaceSpec::PSum { factors, .. } => {
                if factors.is_empty() {
                    return invalid("p_sum needs at least one factor");
                }
                factors.iter().try_for_each(SpaceSpec::validate)
            }
            SpaceSpec::PolyK { k, dim } => {
                if *k == 0 || k > dim {
                    invalid(format!("poly_k needs 1 <= k <= dim, got k={k}, dim={dim}"))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceSpec::LpSeq { dim, .. } | SpaceSpec::PolyK { dim, .. } => *dim,
            SpaceSpec::LpStep { n, .. } => *n,
            SpaceSpec::PSum { factors, .. } => factors.iter().map(SpaceSpec::dim).sum(),
        }
    }

    /// True for one-dimensional spaces, which are all isometric to `ℝ`.
    pub fn is_scalar(&self) -> bool {
        matches!(self, SpaceSpec::LpSeq { dim: 1, .. })
            || matches!(self, SpaceSpec::LpStep { n: 1, .. })
            || matches!(self, SpaceSpec::PolyK { dim: 1, .. })
            || matches!(self, SpaceSpec::PSum { factors, .. } if factors.len() == 1 && factors[0].is_scalar())
    }

    /// Equality up to the obvious isometries of `ℝ`.
    pub fn same_space(&self, other: &SpaceSpec) -> bool {
        self == other || (self.is_scalar() && other.is_scalar())
    }

    /// Coordinate ranges of the factors of a p-sum.
    pub fn blocks(&self) -> Option<Vec<std::ops::Range<usize>>> {
        let SpaceSpec::PSum { factors, .. } = self else {
            return None;
        };
        let mut start = 0;
        Some(
            factors
                .iter()
                .map(|f| {
                    let r = start..start + f.dim();
                    start = r.end;
                    r
                })
                .collect(),
        )
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() })
        }
    }

    pub fn norm(&self, x: &Point) -> Result<f64> {
        self.check_dim(x.coords())?;
        Ok(self.norm_of(x.coords()))
    }

    /// Norm of a raw coordinate slice. The caller guarantees the length.
    pub fn norm_of(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            SpaceSpec::LpSeq { p, .. } => lp_norm(x, *p),
            SpaceSpec::LpStep { p, n } => lp_norm(x, Exponent::Finite(*p)) * (*n as f64).powf(-1.0 / p),
            SpaceSpec::PSum { p, factors } => {
                let mut start = 0;
                p.combine(factors.iter().map(|f| {
                    let d = f.dim();
                    let v = f.norm_of(&x[start..start + d]);
                    start += d;
                    v
                }))
            }
            SpaceSpec::PolyK { k, .. } => polyk_norm(x, *k),
        }
    }

    /// `‖x − y‖`, reusing `scratch` for the difference.
    pub fn distance(&self, x: &[f64], y: &[f64], scratch: &mut Vec<f64>) -> f64 {
        scratch.clear();
        scratch.extend(x.iter().zip(y).map(|(a, b)| a - b));
        self.norm_of(scratch)
    }

    pub fn normalize(&self, x: &Point) -> Result<Point> {
        let n = self.norm(x)?;
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero vector".into()));
        }
        if n == 1.0 {
            return Ok(x.clone());
        }
        Ok(x.scale(1.0 / n))
    }

    /// A point of the closed unit ball, fully determined by `(self, seed)`.
    pub fn sample_ball(&self, seed: u64) -> Point {
        self.sample_ball_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Gaussian direction, normalized in this norm, at radius `u^{1/dim}`.
    pub fn sample_ball_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let dir = self.sample_direction_with(rng);
        let u: f64 = rng.random();
        let r = u.powf(1.0 / self.dim() as f64);
        dir.scale(r)
    }

    /// A point of the unit sphere drawn from a symmetric distribution.
    pub fn sample_sphere_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        self.sample_direction_with(rng)
    }

    fn sample_direction_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        loop {
            let g: Vec<f64> = (0..self.dim()).map(|_| rng.sample(StandardNormal)).collect();
            let n = self.norm_of(&g);
            if n > 0.0 {
                return Point(g.into_iter().map(|v| v / n).collect());
            }
        }
    }

    /// Splits a point of a p-sum into its factor components.
    pub fn psum_split(&self, x: &Point) -> Result<Vec<(SpaceSpec, Point)>> {
        let SpaceSpec::PSum { factors, .. } = self else {
            return invalid("psum_split needs a p_sum space");
        };
        self.check_dim(x.coords())?;
        let blocks = self.blocks().expect("p_sum has blocks");
        Ok(factors.iter().zip(blocks).map(|(f, r)| (f.clone(), Point(x.coords()[r].to_vec()))).collect())
    }

    /// The exponent of an `ℓ_p`-type space, if it has one.
    pub fn exponent(&self) -> Option<Exponent> {
        match self {
            SpaceSpec::LpSeq { p, .. } | SpaceSpec::PSum { p, .. } => Some(*p),
            SpaceSpec::LpStep { p, .. } => Some(Exponent::Finite(*p)),
            SpaceSpec::PolyK { .. } => None,
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::LpSeq { p, dim } => write!(f, "l_{p}^{dim}"),
            SpaceSpec::LpStep { p, n } => write!(f, "L_{p}[{n} steps]"),
            SpaceSpec::PolyK { k, dim } => write!(f, "poly_{k}^{dim}"),
            SpaceSpec::PSum { p, factors } => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " (+)_{p} ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Average of the `k` largest absolute coordinates, by partial selection.
fn polyk_norm(x: &[f64], k: usize) -> f64 {
    if k == 1 {
        return x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    }
    let mut abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    if k < abs.len() {
        abs.select_nth_unstable_by(k - 1, |a, b| b.total_cmp(a));
    }
    abs[..k].iter().sum::<f64>() / k as f64
}

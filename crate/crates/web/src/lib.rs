//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string; the plain Rust functions behind them are
//! public so they can be tested natively.

use serde::Serialize;
use thickness_core::covering::{covering_radius_estimate, thickness_search};
use thickness_core::nets::{antipodal_net, random_net};
use thickness_core::witnesses::polyk_witness;
use thickness_core::{Exponent, Net, Point, SearchConfig, SpaceSpec};
use wasm_bindgen::prelude::*;

/// Search effort used by the demo; small enough to stay interactive.
pub const DEMO_BUDGET: u64 = 20_000;
pub const DEMO_RESTARTS: usize = 8;

fn demo_search(seed: u64) -> SearchConfig {
    SearchConfig::new(DEMO_BUDGET, DEMO_RESTARTS, seed)
}

fn exponent(p: f64) -> Result<Exponent, String> {
    Exponent::new(p).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoveringPlot {
    pub p: Exponent,
    /// Closed polyline tracing the unit sphere of `ℓ_p^2`.
    pub sphere: Vec<[f64; 2]>,
    pub net: Vec<[f64; 2]>,
    pub worst: [f64; 2],
    pub radius: f64,
    pub lower: f64,
    pub upper: Option<f64>,
}

fn xy(p: &Point) -> [f64; 2] {
    [p[0], p[1]]
}

/// `samples` points on the unit sphere of `space`, by angle.
pub fn sphere_polyline(space: &SpaceSpec, samples: usize) -> Vec<[f64; 2]> {
    (0..=samples)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / samples as f64;
            let v = [t.cos(), t.sin()];
            let n = space.norm_of(&v);
            [v[0] / n, v[1] / n]
        })
        .collect()
}

/// `m` unit vectors at equally spaced angles.
pub fn regular_net(space: &SpaceSpec, m: usize) -> Result<Net, String> {
    let pts = sphere_polyline(space, m)
        .into_iter()
        .take(m)
        .map(|v| Point::new(v.to_vec()).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Net::custom(space.clone(), pts).map_err(|e| e.to_string())
}

/// Net of `m` points in the plane `ℓ_p^2` and the ball point farthest from it.
/// `kind` is `regular`, `random` or `optimized`.
pub fn covering_plot_data(p: f64, kind: &str, m: usize, seed: u64) -> Result<CoveringPlot, String> {
    if m == 0 || m > 64 {
        return Err(format!("m must be in 1..=64, got {m}"));
    }
    let p = exponent(p)?;
    let space = SpaceSpec::lp_seq(p.value(), 2).map_err(|e| e.to_string())?;
    let net = match kind {
        "regular" if m == 2 => antipodal_net(&space, &Point::basis(2, 0)).map_err(|e| e.to_string())?,
        "regular" => regular_net(&space, m)?,
        "random" => random_net(&space, m, 2, seed).map_err(|e| e.to_string())?,
        "optimized" => thickness_search(&space, m, &demo_search(seed)).map_err(|e| e.to_string())?.net,
        other => return Err(format!("unknown net kind {other:?}")),
    };
    let report = covering_radius_estimate(&net, &demo_search(seed));
    Ok(CoveringPlot {
        p,
        sphere: sphere_polyline(&space, 256),
        net: net.points().iter().map(xy).collect(),
        worst: xy(&report.best_witness),
        radius: report.empirical_estimate,
        lower: report.certified_lower,
        upper: report.analytic_upper,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub p: f64,
    pub estimate: f64,
    pub exact: f64,
}

/// Covering radius of `{±e_1}` in `ℓ_p^dim` for `steps + 1` values of `p` from 1
/// to `p_max`, next to `2^{1/p}`.
pub fn two_point_curve_data(dim: usize, p_max: f64, steps: usize, seed: u64) -> Result<Vec<CurvePoint>, String> {
    if !(1..=16).contains(&dim) || steps == 0 || steps > 64 || !(p_max > 1.0 && p_max.is_finite()) {
        return Err("need 1 <= dim <= 16, 1 <= steps <= 64 and finite p_max > 1".into());
    }
    (0..=steps)
        .map(|i| {
            let p = 1.0 + (p_max - 1.0) * i as f64 / steps as f64;
            let space = SpaceSpec::lp_seq(p, dim).map_err(|e| e.to_string())?;
            let net = antipodal_net(&space, &Point::basis(dim, 0)).map_err(|e| e.to_string())?;
            let r = covering_radius_estimate(&net, &demo_search(thickness_core::split_seed(seed, i as u64)));
            Ok(CurvePoint { p, estimate: r.empirical_estimate, exact: 2f64.powf(1.0 / p) })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyKBound {
    pub k: usize,
    pub guaranteed: f64,
    pub measured: f64,
    pub floor: f64,
}

/// Polyhedral witness on a random `m`-point net supported on half of `dim`
/// coordinates, for every `k` in `1..=k_max`.
pub fn polyk_bounds_data(dim: usize, m: usize, k_max: usize, seed: u64) -> Result<Vec<PolyKBound>, String> {
    if !(2..=256).contains(&dim) || m == 0 || m > 256 || k_max == 0 || k_max > dim {
        return Err("need 2 <= dim <= 256, 1 <= m <= 256 and 1 <= k_max <= dim".into());
    }
    (1..=k_max)
        .map(|k| {
            let space = SpaceSpec::poly_k(k, dim).map_err(|e| e.to_string())?;
            let net = random_net(&space, m, dim / 2, seed).map_err(|e| e.to_string())?;
            let w = polyk_witness(&net).map_err(|e| e.to_string())?;
            let kf = k as f64;
            Ok(PolyKBound {
                k,
                guaranteed: w.guaranteed_distance,
                measured: w.measured_distance,
                floor: (2.0 * kf - 1.0) / kf,
            })
        })
        .collect()
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

/// Pass `p = Infinity` for the max norm.
#[wasm_bindgen]
pub fn covering_plot(p: f64, kind: &str, m: usize, seed: u64) -> Result<String, JsError> {
    to_js(covering_plot_data(p, kind, m, seed))
}

#[wasm_bindgen]
pub fn two_point_curve(dim: usize, p_max: f64, steps: usize, seed: u64) -> Result<String, JsError> {
    to_js(two_point_curve_data(dim, p_max, steps, seed))
}

#[wasm_bindgen]
pub fn polyk_bounds(dim: usize, m: usize, k_max: usize, seed: u64) -> Result<String, JsError> {
    to_js(polyk_bounds_data(dim, m, k_max, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_points_are_unit() {
        let s = SpaceSpec::lp_seq(3.0, 2).unwrap();
        for v in sphere_polyline(&s, 50) {
            assert!((s.norm_of(&v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn plot_of_antipodal_pair() {
        let d = covering_plot_data(2.0, "regular", 2, 1).unwrap();
        assert_eq!(d.net.len(), 2);
        assert!((d.radius - 2f64.sqrt()).abs() < 1e-6);
        assert!(d.lower <= d.radius && d.radius <= d.upper.unwrap() + 1e-9);
    }

    #[test]
    fn plot_kinds() {
        for kind in ["regular", "random", "optimized"] {
            let d = covering_plot_data(f64::INFINITY, kind, 5, 3).unwrap();
            assert_eq!(d.net.len(), 5);
            assert!(d.radius >= 1.0 - 1e-12 && d.radius <= 2.0 + 1e-12);
        }
        assert!(covering_plot_data(2.0, "hexagonal", 5, 3).is_err());
        assert!(covering_plot_data(0.5, "regular", 5, 3).is_err());
        assert!(covering_plot_data(2.0, "regular", 0, 3).is_err());
    }

    #[test]
    fn curve_tracks_two_root() {
        let c = two_point_curve_data(3, 4.0, 6, 2).unwrap();
        assert_eq!(c.len(), 7);
        for pt in c {
            assert!((pt.estimate - pt.exact).abs() < 1e-2, "{pt:?}");
        }
    }

    #[test]
    fn polyk_floor_is_met() {
        for b in polyk_bounds_data(12, 6, 4, 5).unwrap() {
            assert!(b.guaranteed >= b.floor - 1e-9, "{b:?}");
            assert!(b.measured >= b.guaranteed - 1e-9, "{b:?}");
        }
    }
}

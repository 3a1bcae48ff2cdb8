//! Numerical oracles re-run against the closed-form results.

use orthoglide::critical::{
    global_factor_range, phi_qq, phi_qq_parametric, phi_rq, phi_rq_parametric, q_vertex, r_edge, s_face, CriticalPoint,
};
use orthoglide::explorer::{factor_range_at, grid_scan_mu, singular_values_at, Clipping, VolumeExplorer};
use orthoglide::kinematics::{
    branch_index, direct_kinematics, inverse_jacobian, inverse_jacobian_det, inverse_kinematics, CartesianPoint,
    ConfigIndices, Geometry,
};
use orthoglide::linalg::det3;
use orthoglide::synthesis::{strategy1, strategy2, strategy3};
use orthoglide::{DesignResultF64, DexterityBound, FactorRange, JointFactorRange, LimitsF64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::VerifyConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation.
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, worst: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self { name, passed: worst <= tolerance, worst, tolerance, detail: detail.into() }
    }

    fn flag(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name, passed, worst: if passed { 0.0 } else { 1.0 }, tolerance: 0.0, detail: detail.into() }
    }
}

pub fn run_checks(cfg: &VerifyConfig) -> Vec<Check> {
    vec![
        grid_vs_closed_form(cfg),
        critical_singular_values(),
        phi_curves(),
        round_trip(cfg),
        jacobian_determinant(cfg),
        cube_sampling(),
        cube_containment(),
        dual_containment(),
        volume_monotonicity(),
    ]
}

fn unit() -> Geometry<f64> {
    Geometry::unit()
}

fn random_limits(rng: &mut ChaCha8Rng) -> LimitsF64 {
    LimitsF64::new(rng.random_range(0.15..0.95), rng.random_range(1.05..1.2)).expect("sampled inside the valid domain")
}

pub fn grid_vs_closed_form(cfg: &VerifyConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<LimitsF64> = (0..cfg.pairs).map(|_| random_limits(&mut rng)).collect();
    let worst = pairs
        .iter()
        .map(|l| match grid_scan_mu(l, cfg.resolution) {
            Ok(scan) => {
                let closed = global_factor_range(l);
                (scan.range.min - closed.min).abs().max((scan.range.max - closed.max).abs())
            }
            Err(_) => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    Check::new(
        "global bounds vs joint-grid scan",
        worst,
        0.01,
        format!("{} limit pairs, {}^3 nodes", cfg.pairs, cfg.resolution),
    )
}

fn sv_error(cp: &CriticalPoint<f64>) -> f64 {
    match singular_values_at(&cp.cartesian, &cp.joints) {
        Ok(sv) => sv.iter().zip(cp.singular_values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

pub fn critical_singular_values() -> Check {
    let mut worst = 0.0f64;
    let n = 200;
    for k in 0..n {
        let t = k as f64 / (n - 1) as f64;
        let rho = 0.05 + 1.15 * t;
        let points = [q_vertex(rho.max(0.3)), r_edge(rho.max(0.1)), s_face(rho)];
        for cp in points {
            worst = worst.max(cp.map_or(f64::INFINITY, |c| sv_error(&c)));
        }
    }
    Check::new("critical point singular values vs SVD", worst, 1e-10, format!("{} joint values per kind", n))
}

pub fn phi_curves() -> Check {
    let n = 200;
    let mut worst = 0.0f64;
    for k in 0..n {
        let t = k as f64 / n as f64;
        let (lo, hi) = phi_qq_parametric(0.2499 * t);
        worst = worst.max(phi_qq(hi).map_or(f64::INFINITY, |v| (v - lo).abs()));
        let (lo, hi) = phi_rq_parametric(-0.49 * t);
        worst = worst.max(phi_rq(hi).map_or(f64::INFINITY, |v| (v - lo).abs()));
    }
    Check::new("boundary curves, parametric vs explicit", worst, 1e-10, format!("{n} samples per curve"))
}

fn design_points(cfg: &VerifyConfig) -> Vec<CartesianPoint<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let g = unit();
    let mut out = Vec::with_capacity(cfg.samples);
    while out.len() < cfg.samples {
        let p = CartesianPoint::new(rng.random_range(-0.9..0.9), rng.random_range(-0.9..0.9), rng.random_range(-0.9..0.9));
        if p.norm() >= 0.95 {
            continue;
        }
        let Ok(r) = inverse_kinematics(&p, &ConfigIndices::default(), &g) else { continue };
        if p.x / r.x + p.y / r.y + p.z / r.z < 1.0 - 1e-3 {
            out.push(p);
        }
    }
    out
}

pub fn round_trip(cfg: &VerifyConfig) -> Check {
    let g = unit();
    let worst = design_points(cfg)
        .par_iter()
        .map(|p| {
            let r = inverse_kinematics(p, &ConfigIndices::default(), &g).expect("sampled inside the workspace");
            let back = branch_index(&r, p).and_then(|m| direct_kinematics(&r, m, &g));
            back.map_or(f64::INFINITY, |q| {
                p.to_array().iter().zip(q.to_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
            })
        })
        .reduce(|| 0.0, f64::max);
    Check::new("inverse/direct kinematics round trip", worst, 1e-10, format!("{} random points", cfg.samples))
}

pub fn jacobian_determinant(cfg: &VerifyConfig) -> Check {
    let g = unit();
    let worst = design_points(cfg)
        .par_iter()
        .map(|p| {
            let r = inverse_kinematics(p, &ConfigIndices::default(), &g).expect("sampled inside the workspace");
            match (inverse_jacobian_det(p, &r), inverse_jacobian(p, &r)) {
                (Ok(d), Ok(j)) => {
                    let n = det3(&j);
                    (d - n).abs() / n.abs().max(1e-3)
                }
                _ => f64::INFINITY,
            }
        })
        .reduce(|| 0.0, f64::max);
    Check::new("closed-form vs numeric determinant", worst, 1e-10, format!("{} random points, relative", cfg.samples))
}

const CUBE_GRID: usize = 21;

fn cube_nodes(d: &DesignResultF64) -> Vec<CartesianPoint<f64>> {
    let (lo, hi) = d.normalized_cube();
    let at = |i: usize| lo + (hi - lo) * i as f64 / (CUBE_GRID - 1) as f64;
    let mut out = Vec::with_capacity(CUBE_GRID.pow(3));
    for i in 0..CUBE_GRID {
        for j in 0..CUBE_GRID {
            for k in 0..CUBE_GRID {
                out.push(CartesianPoint::new(at(i), at(j), at(k)));
            }
        }
    }
    out
}

/// Factor range over a 21³ sampling of the design's cube.
pub fn sampled_cube_factors(d: &DesignResultF64) -> Option<FactorRange<f64>> {
    let g = unit();
    cube_nodes(d)
        .par_iter()
        .map(|p| factor_range_at(p, &g).ok())
        .reduce(|| None, |a, b| match (a, b) {
            (Some(a), Some(b)) => Some(a.union(b)),
            (a, None) => a,
            (None, b) => b,
        })
}

pub fn cube_sampling() -> Check {
    let mut worst = 0.0f64;
    for mu in [0.5, 0.6, 0.8] {
        let excess = strategy1(mu).ok().and_then(|d| sampled_cube_factors(&d)).map_or(f64::INFINITY, |f| {
            (mu - f.min).max(f.max - 1.0 / mu).max(0.0)
        });
        worst = worst.max(excess);
    }
    Check::new("strategy 1 cube keeps factors in [mu, 1/mu]", worst, 1e-6, "mu in {0.5, 0.6, 0.8}, 21^3 nodes")
}

/// Largest violation of the joint limits over the sampled cube.
pub fn joint_box_excess(d: &DesignResultF64) -> f64 {
    let g = unit();
    let (lo, hi) = d.normalized_limits();
    cube_nodes(d)
        .iter()
        .map(|p| match inverse_kinematics(p, &ConfigIndices::default(), &g) {
            Ok(r) => r.to_array().iter().map(|&v| (lo - v).max(v - hi).max(0.0)).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

pub fn cube_containment() -> Check {
    let mut worst = 0.0f64;
    for mu in [0.4, 0.5, 0.6, 0.8] {
        for d in [strategy2(mu), strategy3(mu)] {
            worst = worst.max(d.map_or(f64::INFINITY, |d| joint_box_excess(&d)));
        }
    }
    Check::new("strategy 2/3 cubes inside the joint box", worst, 1e-9, "mu in {0.4, 0.5, 0.6, 0.8}")
}

pub fn dual_containment() -> Check {
    let mut ok = true;
    for mu in [0.35, 0.5, 0.6, 0.8] {
        ok &= match strategy3(mu) {
            Ok(d) => match d.mu_joint {
                JointFactorRange::Bounded(j) => {
                    d.mu_cube.within(&j, 1e-12) && j.within(&FactorRange::new(mu, 1.0 / mu), 1e-9)
                }
                JointFactorRange::Singular => false,
            },
            Err(_) => false,
        };
    }
    Check::flag("strategy 3 cube range within joint range within bound", ok, "mu in {0.35, 0.5, 0.6, 0.8}")
}

pub fn volume_monotonicity() -> Check {
    let Ok(ex) = VolumeExplorer::<f64>::new(1000, 1e-4, Clipping::Workspace) else {
        return Check::flag("ray radii shrink as the bound tightens", false, "explorer setup failed");
    };
    let loose = ex.radii(&DexterityBound::SymmetricFactor(0.2));
    let tight = ex.radii(&DexterityBound::SymmetricFactor(0.5));
    let worst = loose.iter().zip(&tight).map(|(a, b)| (b - a).max(0.0)).fold(0.0, f64::max);
    Check::new("ray radii shrink as the bound tightens", worst, 1e-4, "mu 0.2 vs 0.5, 1000 rays")
}

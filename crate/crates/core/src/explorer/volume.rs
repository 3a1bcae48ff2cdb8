//! Workspace volume estimation: ray spanning from the isotropic point with
//! dichotomic boundary search, and Monte-Carlo sampling of the ball.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{pairwise_sum, singular_values_at};
use crate::dexterity::DexterityBound;
use crate::error::{Error, Result};
use crate::kinematics::{branch_expression, inverse_kinematics, is_singularity_free, CartesianPoint, ConfigIndices, Geometry};
use crate::Real;

/// Normalizer of a volume fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// Singularity-free workspace obtained with the same ray set.
    V0,
    /// Ball of radius `L`.
    Sphere,
}

/// How dextrous regions are clipped by the workspace boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clipping {
    /// Inside the ball of radius `L`, below the flat singularity, within the joint stroke.
    Workspace,
    /// Only inverse kinematic existence and the dexterity bound itself.
    DexterityOnly,
}

impl Clipping {
    pub fn name(self) -> &'static str {
        match self {
            Clipping::Workspace => "workspace",
            Clipping::DexterityOnly => "dexterity-only",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate<T> {
    pub fraction: T,
    pub reference: Reference,
    /// Rays for the ray method, samples for Monte-Carlo estimates.
    pub ray_count: usize,
    pub bisection_tol: T,
    /// Rays along which the predicate turned true again past the first boundary.
    pub star_violations: usize,
    pub clipping: Clipping,
}

/// Quasi-uniform unit directions on a Fibonacci spiral.
pub fn fibonacci_directions<T: Real>(n: usize) -> Vec<[T; 3]> {
    let golden = T::PI() * (T::lit(3.0) - T::lit(5.0).sqrt());
    let nf = T::from_usize(n).expect("direction count fits the scalar type");
    (0..n)
        .map(|i| {
            let fi = T::from_usize(i).expect("index fits the scalar type");
            let z = T::one() - (T::lit(2.0) * fi + T::one()) / nf;
            let r = (T::one() - z * z).max(T::zero()).sqrt();
            let phi = golden * fi;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Ray-spanning volume estimator on the unit manipulator.
#[derive(Debug)]
pub struct VolumeExplorer<T> {
    directions: Vec<[T; 3]>,
    tol: T,
    step: T,
    clipping: Clipping,
    v0: OnceLock<(Vec<T>, usize)>,
}

const MARCH_STEP: f64 = 0.01;

impl<T: Real> VolumeExplorer<T> {
    pub fn new(rays: usize, tol: T, clipping: Clipping) -> Result<Self> {
        if rays < 1000 {
            return Err(Error::InvalidParameter(format!("at least 1000 rays are required, got {rays}")));
        }
        if !(tol > T::zero() && tol <= T::lit(1e-3)) {
            return Err(Error::InvalidParameter(format!("bisection tolerance must lie in (0, 1e-3], got {tol}")));
        }
        Ok(Self { directions: fibonacci_directions(rays), tol, step: T::lit(MARCH_STEP), clipping, v0: OnceLock::new() })
    }

    pub fn rays(&self) -> usize {
        self.directions.len()
    }

    fn reach(&self) -> T {
        match self.clipping {
            Clipping::Workspace => T::one(),
            Clipping::DexterityOnly => T::lit(1.5).sqrt(),
        }
    }

    fn admissible(&self, p: &CartesianPoint<T>, bound: Option<&DexterityBound<T>>) -> bool {
        let g = Geometry::unit();
        let Ok(r) = inverse_kinematics(p, &ConfigIndices::default(), &g) else {
            return false;
        };
        if self.clipping == Clipping::Workspace
            && (p.norm() >= T::one() || !r.within_stroke(&g) || branch_expression(&r, p) >= -T::lit(T::SINGULAR_TOL))
        {
            return false;
        }
        match singular_values_at(p, &r) {
            Ok(sv) => bound.is_none_or(|b| b.admits(&sv)),
            Err(_) => false,
        }
    }

    /// Radius of the first boundary crossing along `dir`, and whether the
    /// predicate holds again further out.
    fn boundary(&self, dir: &[T; 3], bound: Option<&DexterityBound<T>>) -> (T, bool) {
        let at = |s: T| CartesianPoint::new(dir[0] * s, dir[1] * s, dir[2] * s);
        let reach = self.reach();
        let mut inside = T::zero();
        let mut outside = None;
        let mut s = self.step;
        while s < reach {
            if self.admissible(&at(s), bound) {
                inside = s;
            } else {
                outside = Some(s);
                break;
            }
            s = s + self.step;
        }
        let Some(mut hi) = outside else {
            return (reach, false);
        };
        let far = hi;
        let mut lo = inside;
        while hi - lo > self.tol {
            let mid = (lo + hi) / T::lit(2.0);
            if self.admissible(&at(mid), bound) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut s = far + self.step;
        let mut violated = false;
        while s < reach {
            if self.admissible(&at(s), bound) {
                violated = true;
                break;
            }
            s = s + self.step;
        }
        ((lo + hi) / T::lit(2.0), violated)
    }

    fn cubed_radii(&self, bound: Option<&DexterityBound<T>>) -> (Vec<T>, usize) {
        let out: Vec<(T, bool)> = self.directions.par_iter().map(|d| self.boundary(d, bound)).collect();
        let violations = out.iter().filter(|(_, v)| *v).count();
        (out.into_iter().map(|(r, _)| r * r * r).collect(), violations)
    }

    fn v0(&self) -> &(Vec<T>, usize) {
        self.v0.get_or_init(|| self.cubed_radii(None))
    }

    /// Volume of the reference workspace as a fraction of the unit ball.
    pub fn reference_fraction(&self) -> T {
        let (r3, _) = self.v0();
        pairwise_sum(r3) / T::from_usize(r3.len()).expect("ray count fits the scalar type")
    }

    /// Dextrous volume for `bound`, relative to the reference workspace.
    pub fn dextrous_volume(&self, bound: &DexterityBound<T>) -> Result<VolumeEstimate<T>> {
        bound.validate()?;
        let (r3, star_violations) = self.cubed_radii(Some(bound));
        let fraction = pairwise_sum(&r3) / pairwise_sum(&self.v0().0);
        Ok(VolumeEstimate {
            fraction,
            reference: Reference::V0,
            ray_count: self.rays(),
            bisection_tol: self.tol,
            star_violations,
            clipping: self.clipping,
        })
    }

    /// Per-ray boundary radii for `bound`, in direction order.
    pub fn radii(&self, bound: &DexterityBound<T>) -> Vec<T> {
        self.directions.par_iter().map(|d| self.boundary(d, Some(bound)).0).collect()
    }
}

/// Part of the ball used for Monte-Carlo sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleRegion {
    Ball,
    /// The part of the ball with all coordinates non-positive.
    NegativeOctant,
}

const CHUNK: usize = 1 << 16;

/// Monte-Carlo fraction of the region lying in the singularity-free workspace.
///
/// Points are drawn uniformly by rejection from the bounding cube. Each chunk
/// of samples draws from its own ChaCha stream, so the estimate depends only
/// on `samples` and `seed`.
pub fn singularity_free_volume<T: Real>(samples: usize, seed: u64, region: SampleRegion) -> Result<VolumeEstimate<T>> {
    if samples < 1_000_000 {
        return Err(Error::InvalidParameter(format!("at least 1e6 samples are required, got {samples}")));
    }
    let g = Geometry::unit();
    let chunks = samples.div_ceil(CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut hits = 0usize;
            let mut taken = 0usize;
            while taken < n {
                let mut v = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
                if v[0] * v[0] + v[1] * v[1] + v[2] * v[2] >= 1.0 {
                    continue;
                }
                if region == SampleRegion::NegativeOctant {
                    v = v.map(|x: f64| -x.abs());
                }
                taken += 1;
                let p = CartesianPoint::new(T::lit(v[0]), T::lit(v[1]), T::lit(v[2]));
                if is_singularity_free(&p, &g) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(VolumeEstimate {
        fraction: T::from_usize(hits).expect("count fits") / T::from_usize(samples).expect("count fits"),
        reference: Reference::Sphere,
        ray_count: samples,
        bisection_tol: T::zero(),
        star_violations: 0,
        clipping: Clipping::Workspace,
    })
}

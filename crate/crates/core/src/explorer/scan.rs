//! Joint-space grid scans of the transmission factors and contour tables of
//! the closed-form global bounds over the `(ρmin, ρmax)` plane.

use rayon::prelude::*;

use super::singular_values_at;
use crate::critical::{
    cube_vertex_joint_limits, global_mu_max, global_mu_min, joint_limits_symmetric, phi_qq_parametric,
    phi_rq_parametric, CriticalSite, JointLimitPair,
};
use crate::dexterity::FactorRange;
use crate::error::{Error, Result};
use crate::kinematics::{direct_kinematics, CartesianPoint, Geometry, JointVector, Sign};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanResult<T> {
    pub range: FactorRange<T>,
    pub argmin: (CartesianPoint<T>, JointVector<T>),
    pub argmax: (CartesianPoint<T>, JointVector<T>),
    /// Grid nodes without a regular direct kinematic solution.
    pub skipped: usize,
}

type Sample<T> = (T, CartesianPoint<T>, JointVector<T>);

struct Extremes<T> {
    best: Option<(Sample<T>, Sample<T>)>,
    skipped: usize,
}

impl<T: Real> Extremes<T> {
    fn push(&mut self, f: FactorRange<T>, p: CartesianPoint<T>, r: JointVector<T>) {
        let here = ((f.min, p, r), (f.max, p, r));
        self.best = Some(match self.best {
            Some((lo, hi)) => (if here.0 .0 < lo.0 { here.0 } else { lo }, if here.1 .0 > hi.0 { here.1 } else { hi }),
            None => here,
        });
    }

    fn merge(mut self, other: Self) -> Self {
        if let Some((lo, hi)) = other.best {
            self.push(FactorRange::new(lo.0, lo.0), lo.1, lo.2);
            self.push(FactorRange::new(hi.0, hi.0), hi.1, hi.2);
        }
        self.skipped += other.skipped;
        self
    }
}

fn node<T: Real>(lo: T, hi: T, i: usize, n: usize) -> T {
    if n == 1 {
        return lo;
    }
    let t = T::from_usize(i).expect("index fits") / T::from_usize(n - 1).expect("index fits");
    lo + (hi - lo) * t
}

/// Scans the joint box `[lo, hi]³` on a `resolution³` grid, optionally keeping
/// only nodes with `ρx + ρy + ρz ≤ sum_cap`.
///
/// Each node is mapped to Cartesian space on the `m = -1` branch of the unit
/// manipulator. Nodes without a regular solution are counted and skipped.
pub fn scan_joint_box<T: Real>(lo: T, hi: T, resolution: usize, sum_cap: Option<T>) -> Result<ScanResult<T>> {
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!("scan resolution must be at least 2, got {resolution}")));
    }
    let g = Geometry::unit();
    let n = if hi > lo { resolution } else { 1 };
    let slabs: Vec<Extremes<T>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = Extremes { best: None, skipped: 0 };
            for j in 0..n {
                for k in 0..n {
                    let r = JointVector::new(node(lo, hi, i, n), node(lo, hi, j, n), node(lo, hi, k, n));
                    if sum_cap.is_some_and(|cap| r.x + r.y + r.z > cap) {
                        continue;
                    }
                    match direct_kinematics(&r, Sign::Minus, &g).and_then(|p| Ok((p, singular_values_at(&p, &r)?))) {
                        Ok((p, sv)) => acc.push(FactorRange::from_singular_values(&sv), p, r),
                        Err(_) => acc.skipped += 1,
                    }
                }
            }
            acc
        })
        .collect();
    let total = slabs.into_iter().fold(Extremes { best: None, skipped: 0 }, Extremes::merge);
    match total.best {
        Some((lo, hi)) => Ok(ScanResult {
            range: FactorRange::new(lo.0, hi.0),
            argmin: (lo.1, lo.2),
            argmax: (hi.1, hi.2),
            skipped: total.skipped,
        }),
        None => Err(Error::Singular("no regular grid node in the scanned box".into())),
    }
}

/// Factor extremes over the joint-bounded workspace by dense joint-space scan.
pub fn grid_scan_mu<T: Real>(limits: &JointLimitPair<T>, resolution: usize) -> Result<ScanResult<T>> {
    if resolution < 21 {
        return Err(Error::InvalidParameter(format!("grid scan resolution must be at least 21, got {resolution}")));
    }
    scan_joint_box(limits.rho_min(), limits.rho_max(), resolution, None)
}

/// Named curve of the `(ρmin, ρmax)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    PhiQQ,
    PhiRQ,
    /// Limits keeping the whole joint-bounded workspace within `[μ, 1/μ]`.
    SymmetricWorkspace,
    /// Limits keeping the Q-axis within `[μ, 1/μ]`.
    SymmetricQAxis,
}

impl Locus {
    pub fn name(self) -> &'static str {
        match self {
            Locus::PhiQQ => "phi_QQ",
            Locus::PhiRQ => "phi_RQ",
            Locus::SymmetricWorkspace => "symmetric_workspace",
            Locus::SymmetricQAxis => "symmetric_qaxis",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourKind {
    Grid { min: CriticalSite, max: CriticalSite },
    Locus(Locus),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourRow<T> {
    pub rho_min: T,
    pub rho_max: T,
    pub mu_min: T,
    pub mu_max: T,
    pub kind: ContourKind,
}

impl<T: Real> ContourRow<T> {
    pub fn kind_labels(&self) -> (&'static str, &'static str) {
        match self.kind {
            ContourKind::Grid { min, max } => (min.label(), max.label()),
            ContourKind::Locus(l) => (l.name(), l.name()),
        }
    }
}

fn row<T: Real>(limits: JointLimitPair<T>, kind: Option<Locus>) -> ContourRow<T> {
    let lo = global_mu_min(&limits);
    let hi = global_mu_max(&limits);
    ContourRow {
        rho_min: limits.rho_min(),
        rho_max: limits.rho_max(),
        mu_min: lo.value,
        mu_max: hi.value,
        kind: match kind {
            Some(l) => ContourKind::Locus(l),
            None => ContourKind::Grid { min: lo.site, max: hi.site },
        },
    }
}

/// Closed-form global bounds on a `grid_n × grid_n` grid of the rectangle
/// `[0, 1] × [1, sqrt(3/2)]`, followed by `grid_n` samples of each locus.
///
/// Singular edges of the rectangle are pulled inside by a small margin.
pub fn contour_data<T: Real>(grid_n: usize) -> Result<Vec<ContourRow<T>>> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter(format!("contour grid needs at least 2 nodes, got {grid_n}")));
    }
    let margin = T::lit(1e-3);
    let top = T::lit(1.5).sqrt() - margin;
    let mut rows = Vec::with_capacity(grid_n * grid_n + 4 * grid_n);
    for i in 0..grid_n {
        let rho_min = node(T::zero(), T::one(), i, grid_n).max(margin);
        for j in 0..grid_n {
            let rho_max = node(T::one(), top, j, grid_n);
            rows.push(row(JointLimitPair::new(rho_min, rho_max)?, None));
        }
    }
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    for i in 0..grid_n {
        let t = node(T::zero(), T::one(), i, grid_n);
        let (a, b) = phi_qq_parametric(quarter * t);
        if let Ok(l) = JointLimitPair::new(a, b.min(top)) {
            rows.push(row(l, Some(Locus::PhiQQ)));
        }
        let (a, b) = phi_rq_parametric(-(half - margin) * t);
        if let Ok(l) = JointLimitPair::new(a, b) {
            rows.push(row(l, Some(Locus::PhiRQ)));
        }
        let mu = node(T::lit(0.05), T::one() - margin, i, grid_n);
        if let Ok(l) = joint_limits_symmetric(mu) {
            rows.push(row(l, Some(Locus::SymmetricWorkspace)));
        }
        if let Ok((a, b)) = cube_vertex_joint_limits(mu) {
            if let Ok(l) = JointLimitPair::new(a, b) {
                rows.push(row(l, Some(Locus::SymmetricQAxis)));
            }
        }
    }
    Ok(rows)
}

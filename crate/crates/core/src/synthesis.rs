//! Design strategies and scaling to a prescribed cubic workspace.
//!
//! Every strategy first places two Q-axis points `Q⁻` (retracted joints) and
//! `Q⁺` (extended joints) on the unit manipulator and derives the joint limits
//! and the cube `[p_min, p_max]³` from them:
//!
//! | strategy | joint limits                  | cube                         |
//! |----------|-------------------------------|------------------------------|
//! | 1        | `[ρ(Q⁻), 1 + p(Q⁺)]`          | `[p(Q⁻), p(Q⁺)]`             |
//! | 2        | `[ρ(Q⁻), ρ(Q⁺)]`              | `[p(Q⁻), ρ(Q⁺) - 1]`         |
//! | 3        | whole-workspace limits        | `[p(ρmin), ρmax - 1]`        |
//!
//! Strategies 1 and 2 locate `Q±` with the Q-axis criterion alone; strategy 3
//! bounds the factors over the entire joint-bounded workspace. The normalized
//! design is then scaled so the cube edge matches the requested size.

use rayon::prelude::*;

use crate::critical::{global_factor_range, joint_limits_for_bounds, joint_limits_symmetric, JointLimitPair};
use crate::dexterity::{DexterityBound, FactorRange};
use crate::error::{Error, Result};
use crate::kinematics::Geometry;
use crate::qaxis::{chi_from_p, p_from_rho, qaxis_eigenvalues, ChiRange, QAxisPoint};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// Cube vertices at `Q±`, upper joint limit enlarged to `1 + p(Q⁺)`.
    CubeOnVertices,
    /// Cube inscribed in the joint-bounded workspace, Q-axis joint limits.
    InscribedQAxis,
    /// Cube inscribed in the joint-bounded workspace, whole-workspace joint limits.
    InscribedGlobal,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::CubeOnVertices, Strategy::InscribedQAxis, Strategy::InscribedGlobal];

    pub fn id(self) -> u8 {
        match self {
            Strategy::CubeOnVertices => 1,
            Strategy::InscribedQAxis => 2,
            Strategy::InscribedGlobal => 3,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.id() == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthUnit {
    Normalized,
    Millimeter,
    Meter,
}

impl LengthUnit {
    pub fn suffix(self) -> &'static str {
        match self {
            LengthUnit::Normalized => "",
            LengthUnit::Millimeter => "mm",
            LengthUnit::Meter => "m",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LengthUnit::Normalized => "normalized",
            LengthUnit::Millimeter => "mm",
            LengthUnit::Meter => "m",
        }
    }
}

/// Transmission factors over the joint-bounded workspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JointFactorRange<T> {
    Bounded(FactorRange<T>),
    /// The joint-bounded workspace contains a singularity.
    Singular,
}

impl<T: Real> JointFactorRange<T> {
    pub fn bounded(&self) -> Option<FactorRange<T>> {
        match self {
            JointFactorRange::Bounded(r) => Some(*r),
            JointFactorRange::Singular => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignSpec<T> {
    pub cube_edge: T,
    pub unit: LengthUnit,
    pub bound: DexterityBound<T>,
    pub strategies: Vec<Strategy>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult<T> {
    pub strategy: Strategy,
    pub link_length: T,
    pub rho_min: T,
    pub rho_max: T,
    pub p_min: T,
    pub p_max: T,
    pub delta_rho: T,
    pub delta_p: T,
    pub cube_edge: T,
    /// Joint coordinate of `Q⁺` with all joints equal.
    pub rho_q_plus: T,
    pub mu_cube: FactorRange<T>,
    pub mu_joint: JointFactorRange<T>,
    /// Threshold for `ρx + ρy + ρz` removing singularities from strategy 1 designs.
    pub software_constraint: Option<T>,
    /// Cube edge over joint stroke, `c / Δρ`.
    pub rho_to_cube_ratio: T,
    pub unit: LengthUnit,
    pub notes: Vec<String>,
}

impl<T: Real> DesignResult<T> {
    pub fn geometry(&self) -> Result<Geometry<T>> {
        Geometry::new(self.link_length)
    }

    pub fn is_singular(&self) -> bool {
        matches!(self.mu_joint, JointFactorRange::Singular)
    }

    /// Joint limits of the normalized design.
    pub fn normalized_limits(&self) -> (T, T) {
        (self.rho_min / self.link_length, self.rho_max / self.link_length)
    }

    /// Normalized cube bounds `(p_min, p_max)`.
    pub fn normalized_cube(&self) -> (T, T) {
        (self.p_min / self.link_length, self.p_max / self.link_length)
    }
}

/// Factor range at the Q-axis point with coordinate `p` on the unit manipulator.
fn qaxis_factors<T: Real>(p: T) -> Result<FactorRange<T>> {
    let chi = chi_from_p(p, &Geometry::unit())?;
    let e = qaxis_eigenvalues(chi);
    if !(e[0] > T::zero() && e[1] > T::zero()) {
        return Err(Error::Singular(format!("Q-axis point p = {p} is singular")));
    }
    Ok(FactorRange::new(T::one() / e[0].max(e[1]), T::one() / e[0].min(e[1])))
}

/// The cube's factor extremes sit at its two Q-axis vertices.
fn cube_factors<T: Real>(p_min: T, p_max: T) -> Result<FactorRange<T>> {
    Ok(qaxis_factors(p_min)?.union(qaxis_factors(p_max)?))
}

fn joint_factors<T: Real>(rho_min: T, rho_max: T) -> JointFactorRange<T> {
    match JointLimitPair::new(rho_min, rho_max) {
        Ok(lim) => JointFactorRange::Bounded(global_factor_range(&lim)),
        Err(_) => JointFactorRange::Singular,
    }
}

#[allow(clippy::too_many_arguments)]
fn normalized<T: Real>(
    strategy: Strategy,
    rho_min: T,
    rho_max: T,
    p_min: T,
    p_max: T,
    rho_q_plus: T,
    mu_joint: JointFactorRange<T>,
    software_constraint: Option<T>,
) -> Result<DesignResult<T>> {
    let delta_p = p_max - p_min;
    if !(delta_p > T::zero()) {
        return Err(Error::InvalidBound(format!("degenerate cube: p in [{p_min}, {p_max}]")));
    }
    let delta_rho = rho_max - rho_min;
    Ok(DesignResult {
        strategy,
        link_length: T::one(),
        rho_min,
        rho_max,
        p_min,
        p_max,
        delta_rho,
        delta_p,
        cube_edge: delta_p,
        rho_q_plus,
        mu_cube: cube_factors(p_min, p_max)?,
        mu_joint,
        software_constraint,
        rho_to_cube_ratio: delta_p / delta_rho,
        unit: LengthUnit::Normalized,
        notes: Vec::new(),
    })
}

/// Strategy 1 for a Q-axis interval `[χ(Q⁺), χ(Q⁻)]`.
pub fn strategy1_for_range<T: Real>(range: &ChiRange<T>) -> Result<DesignResult<T>> {
    let g = Geometry::unit();
    let q_minus = range.q_minus(&g);
    let q_plus = range.q_plus(&g);
    let rho_max = T::one() + q_plus.p;
    let singular = rho_max >= T::lit(1.5).sqrt();
    let mu_joint = if singular { JointFactorRange::Singular } else { joint_factors(q_minus.rho, rho_max) };
    let mut r = normalized(
        Strategy::CubeOnVertices,
        q_minus.rho,
        rho_max,
        q_minus.p,
        q_plus.p,
        q_plus.rho,
        mu_joint,
        Some(T::lit(3.0) * q_plus.rho),
    )?;
    if singular {
        r.notes.push("joint-bounded workspace contains singularities; enforce rho_x + rho_y + rho_z <= software_constraint".into());
    }
    Ok(r)
}

/// Strategy 2 for a Q-axis interval `[χ(Q⁺), χ(Q⁻)]`.
pub fn strategy2_for_range<T: Real>(range: &ChiRange<T>) -> Result<DesignResult<T>> {
    let g = Geometry::unit();
    let q_minus = range.q_minus(&g);
    let q_plus = range.q_plus(&g);
    normalized(
        Strategy::InscribedQAxis,
        q_minus.rho,
        q_plus.rho,
        q_minus.p,
        q_plus.rho - T::one(),
        q_plus.rho,
        joint_factors(q_minus.rho, q_plus.rho),
        None,
    )
}

/// Strategy 3 for whole-workspace joint limits.
pub fn strategy3_for_limits<T: Real>(limits: &JointLimitPair<T>) -> Result<DesignResult<T>> {
    let g = Geometry::unit();
    let (rho_min, rho_max) = (limits.rho_min(), limits.rho_max());
    normalized(
        Strategy::InscribedGlobal,
        rho_min,
        rho_max,
        p_from_rho(rho_min, &g)?,
        rho_max - T::one(),
        rho_max,
        JointFactorRange::Bounded(global_factor_range(limits)),
        None,
    )
}

fn symmetric_range<T: Real>(mu: T) -> Result<ChiRange<T>> {
    DexterityBound::SymmetricFactor(mu).chi_range()
}

pub fn strategy1<T: Real>(mu: T) -> Result<DesignResult<T>> {
    let mut r = strategy1_for_range(&symmetric_range(mu)?)?;
    flag_outside_bound(&mut r, mu);
    Ok(r)
}

pub fn strategy2<T: Real>(mu: T) -> Result<DesignResult<T>> {
    let mut r = strategy2_for_range(&symmetric_range(mu)?)?;
    flag_outside_bound(&mut r, mu);
    Ok(r)
}

pub fn strategy3<T: Real>(mu: T) -> Result<DesignResult<T>> {
    strategy3_for_limits(&joint_limits_symmetric(mu)?)
}

fn flag_outside_bound<T: Real>(r: &mut DesignResult<T>, mu: T) {
    if let JointFactorRange::Bounded(range) = r.mu_joint {
        let tol = T::lit(1e-9);
        if range.min < mu * (T::one() - tol) || range.max > (T::one() + tol) / mu {
            r.notes.push("factors over the joint-bounded workspace leave the prescribed bound".into());
        }
    }
}

/// Normalized design for any dexterity bound.
pub fn design<T: Real>(strategy: Strategy, bound: &DexterityBound<T>) -> Result<DesignResult<T>> {
    bound.validate()?;
    if let Some(mu) = bound.symmetric_factor() {
        return match strategy {
            Strategy::CubeOnVertices => strategy1(mu),
            Strategy::InscribedQAxis => strategy2(mu),
            Strategy::InscribedGlobal => strategy3(mu),
        };
    }
    match strategy {
        Strategy::CubeOnVertices => strategy1_for_range(&bound.chi_range()?),
        Strategy::InscribedQAxis => strategy2_for_range(&bound.chi_range()?),
        Strategy::InscribedGlobal => match *bound {
            DexterityBound::TransmissionInterval { min, max } if min > T::zero() && max.is_finite() => {
                strategy3_for_limits(&joint_limits_for_bounds(min, max)?)
            }
            _ => Err(Error::NotApplicable(format!(
                "strategy 3 requires a two-sided transmission factor bound, got {bound}"
            ))),
        },
    }
}

/// Scales a design so that its cube edge becomes `cube_edge`.
///
/// Every length is multiplied by `cube_edge / Δp`; factor ranges and ratios
/// are dimensionless and stay unchanged.
pub fn scale<T: Real>(design: &DesignResult<T>, cube_edge: T, unit: LengthUnit) -> Result<DesignResult<T>> {
    if !(cube_edge > T::zero() && cube_edge.is_finite()) {
        return Err(Error::InvalidParameter(format!("cube edge must be positive, got {cube_edge}")));
    }
    let eta = cube_edge / design.delta_p;
    let p_min = design.p_min * eta;
    Ok(DesignResult {
        link_length: design.link_length * eta,
        rho_min: design.rho_min * eta,
        rho_max: design.rho_max * eta,
        p_min,
        p_max: p_min + cube_edge,
        delta_rho: design.delta_rho * eta,
        delta_p: cube_edge,
        cube_edge,
        rho_q_plus: design.rho_q_plus * eta,
        software_constraint: design.software_constraint.map(|v| v * eta),
        unit,
        ..design.clone()
    })
}

/// Threshold on `ρx + ρy + ρz` that removes singularities from a strategy 1 design.
pub fn software_joint_constraint<T: Real>(design: &DesignResult<T>) -> Result<T> {
    match (design.strategy, design.software_constraint) {
        (Strategy::CubeOnVertices, Some(v)) => Ok(v),
        _ => Err(Error::NotApplicable(format!(
            "software joint constraint applies to strategy 1 only, got strategy {}",
            design.strategy.id()
        ))),
    }
}

/// Runs the requested strategies and scales each result to the cube edge.
///
/// Results are ordered by strategy id.
pub fn synthesize<T: Real>(spec: &DesignSpec<T>) -> Result<Vec<DesignResult<T>>> {
    spec.bound.validate()?;
    let mut strategies = spec.strategies.clone();
    strategies.sort();
    strategies.dedup();
    strategies
        .par_iter()
        .map(|&s| scale(&design(s, &spec.bound)?, spec.cube_edge, spec.unit))
        .collect()
}

/// Q-axis points `(Q⁻, Q⁺)` for a symmetric factor bound.
pub fn qaxis_vertices<T: Real>(mu: T) -> Result<(QAxisPoint<T>, QAxisPoint<T>)> {
    let range = symmetric_range(mu)?;
    let g = Geometry::unit();
    Ok((range.q_minus(&g), range.q_plus(&g)))
}

//! Critical points of the joint-bounded workspace of the unit manipulator and
//! the global transmission-factor bounds they induce.
//!
//! For joint limits `[ρmin, ρmax]` the extreme transmission factors over the
//! whole joint-bounded workspace `Wρ` are attained at three families of
//! boundary points:
//!
//! * `Q`: cube vertices on the Q-axis, all joints equal;
//! * `R`: edge points on a coordinate-plane diagonal, two joints at the limit;
//! * `S`: face points on a coordinate axis, one joint at the limit.
//!
//! A `-` suffix denotes the point built from `ρmin`, a `+` suffix the one
//! built from `ρmax`. Every routine here assumes `L = 1`.

use std::sync::OnceLock;

use crate::error::{out_of_range, Error, Result};
use crate::kinematics::{CartesianPoint, Geometry, JointVector, Sign};
use crate::qaxis::{chi_from_p, p_from_rho, rho_from_chi};
use crate::roots::bisect;
use crate::{FactorRange, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    Q,
    R,
    S,
}

/// Critical point that binds a global bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalSite {
    SMinus,
    RMinus,
    QMinus,
    QPlus,
}

impl CriticalSite {
    pub fn label(self) -> &'static str {
        match self {
            CriticalSite::SMinus => "S-",
            CriticalSite::RMinus => "R-",
            CriticalSite::QMinus => "Q-",
            CriticalSite::QPlus => "Q+",
        }
    }
}

impl std::fmt::Display for CriticalSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint<T> {
    pub kind: CriticalKind,
    pub sign: Sign,
    pub cartesian: CartesianPoint<T>,
    pub joints: JointVector<T>,
    /// Singular values of `J⁻¹`, descending.
    pub singular_values: [T; 3],
    pub factors: FactorRange<T>,
    pub chi: T,
}

fn sorted_desc<T: Real>(mut v: [T; 3]) -> [T; 3] {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    v
}

fn side<T: Real>(rho: T) -> Sign {
    if rho < T::one() {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

fn build<T: Real>(
    kind: CriticalKind,
    rho: T,
    chi: T,
    cartesian: CartesianPoint<T>,
    joints: JointVector<T>,
    sv: [T; 3],
) -> CriticalPoint<T> {
    let singular_values = sorted_desc(sv);
    CriticalPoint {
        kind,
        sign: side(rho),
        cartesian,
        joints,
        singular_values,
        factors: FactorRange::from_singular_values(&singular_values),
        chi,
    }
}

/// Vertex point on the Q-axis with all three joints at `rho`.
pub fn q_vertex<T: Real>(rho: T) -> Result<CriticalPoint<T>> {
    if !(rho > T::zero() && rho < T::lit(1.5).sqrt()) {
        return Err(out_of_range("Q-vertex joint coordinate", rho, "(0, sqrt(3/2))"));
    }
    let g = Geometry::unit();
    let p = p_from_rho(rho, &g)?;
    let chi = chi_from_p(p, &g)?;
    let two = T::lit(2.0);
    let sv = [(T::one() + two * chi).abs(), (T::one() - chi).abs(), (T::one() - chi).abs()];
    Ok(build(CriticalKind::Q, rho, chi, CartesianPoint::splat(p), JointVector::splat(rho), sv))
}

/// Edge point in the XY-plane with `ρx = ρy = rho`.
pub fn r_edge<T: Real>(rho: T) -> Result<CriticalPoint<T>> {
    let two = T::lit(2.0);
    if !(rho > T::zero() && rho < two.sqrt()) {
        return Err(out_of_range("R-edge joint coordinate", rho, "(0, sqrt(2))"));
    }
    let one = T::one();
    let p = (rho - (two - rho * rho).sqrt()) / two;
    let chi = -p / (one - p * p).sqrt();
    let rho_z = (rho * rho * (two - rho * rho)).sqrt().sqrt();
    let a = (one + chi).powi(2) + (one + chi * chi) / (one - chi * chi);
    let b = (one + chi).powi(2);
    let disc = (a * a - T::lit(4.0) * b).max(T::zero()).sqrt();
    let sv = [(one - chi).abs(), ((a + disc) / two).sqrt(), ((a - disc) / two).max(T::zero()).sqrt()];
    Ok(build(
        CriticalKind::R,
        rho,
        chi,
        CartesianPoint::new(p, p, T::zero()),
        JointVector::new(rho, rho, rho_z),
        sv,
    ))
}

/// Face point on the X-axis with `ρx = rho`.
pub fn s_face<T: Real>(rho: T) -> Result<CriticalPoint<T>> {
    let two = T::lit(2.0);
    if !(rho > T::zero() && rho < two) {
        return Err(out_of_range("S-face joint coordinate", rho, "(0, 2)"));
    }
    let one = T::one();
    let p = rho - one;
    let chi = -p / (one - p * p).sqrt();
    let other = (rho * (two - rho)).sqrt();
    let c2 = one + chi * chi;
    let spread = chi.abs() * (two + chi * chi).sqrt();
    let sv = [one, (c2 + spread).sqrt(), (c2 - spread).max(T::zero()).sqrt()];
    Ok(build(
        CriticalKind::S,
        rho,
        chi,
        CartesianPoint::new(p, T::zero(), T::zero()),
        JointVector::new(rho, other, other),
        sv,
    ))
}

/// Actuated joint limits `ρmin ≤ 1 ≤ ρmax < sqrt(3/2)` of the unit manipulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointLimitPair<T> {
    rho_min: T,
    rho_max: T,
}

impl<T: Real> JointLimitPair<T> {
    pub fn new(rho_min: T, rho_max: T) -> Result<Self> {
        if !(rho_min > T::zero() && rho_min <= T::one()) {
            return Err(out_of_range("rho_min", rho_min, "(0, 1]"));
        }
        if !(rho_max >= T::one() && rho_max < T::lit(1.5).sqrt()) {
            return Err(out_of_range("rho_max", rho_max, "[1, sqrt(3/2))"));
        }
        Ok(Self { rho_min, rho_max })
    }

    #[inline]
    pub fn rho_min(&self) -> T {
        self.rho_min
    }

    #[inline]
    pub fn rho_max(&self) -> T {
        self.rho_max
    }

    pub fn contains(&self, r: &JointVector<T>) -> bool {
        r.to_array().iter().all(|&v| v >= self.rho_min && v <= self.rho_max)
    }
}

/// Global bound value together with the critical point where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalBound<T> {
    pub value: T,
    pub site: CriticalSite,
}

/// Minimum factor `1/(1 + 2χ)` at `Q⁻`.
pub fn mu_min_q_minus<T: Real>(rho_min: T) -> T {
    let three = T::lit(3.0);
    T::one() / three + T::lit(2.0) * rho_min / (three * (three - T::lit(2.0) * rho_min * rho_min).sqrt())
}

/// Minimum factor `1/(1 - χ)` at `Q⁺`.
pub fn mu_min_q_plus<T: Real>(rho_max: T) -> T {
    let three = T::lit(3.0);
    T::lit(2.0) / three + (three - T::lit(2.0) * rho_max * rho_max).sqrt() / (three * rho_max)
}

/// Maximum factor `1/(1 + 2χ)` at `Q⁺`.
pub fn mu_max_q_plus<T: Real>(rho_max: T) -> T {
    mu_min_q_minus(rho_max)
}

/// Maximum factor `1/(1 - χ)` at `R⁻`.
pub fn mu_max_r_minus<T: Real>(rho_min: T) -> T {
    let two = T::lit(2.0);
    T::one() / two + (two - rho_min * rho_min).sqrt() / (two * rho_min)
}

fn min_factor_s<T: Real>(rho: T) -> T {
    s_face(rho).map(|c| c.factors.min).unwrap_or(T::zero())
}

fn min_factor_r<T: Real>(rho: T) -> T {
    r_edge(rho).map(|c| c.factors.min).unwrap_or(T::zero())
}

/// Candidates for the smallest factor contributed by the lower joint limit.
fn lower_limit_minimum<T: Real>(rho_min: T) -> GlobalBound<T> {
    let candidates = [
        (min_factor_s(rho_min), CriticalSite::SMinus),
        (min_factor_r(rho_min), CriticalSite::RMinus),
        (mu_min_q_minus(rho_min), CriticalSite::QMinus),
    ];
    pick(&candidates, |a, b| a < b)
}

fn pick<T: Real>(candidates: &[(T, CriticalSite)], better: impl Fn(T, T) -> bool) -> GlobalBound<T> {
    let mut best = GlobalBound { value: candidates[0].0, site: candidates[0].1 };
    for &(value, site) in &candidates[1..] {
        if better(value, best.value) {
            best = GlobalBound { value, site };
        }
    }
    best
}

/// Smallest transmission factor over the joint-bounded workspace.
///
/// Evaluated as the minimum over `S⁻`, `R⁻`, `Q⁻` at `ρmin` and `Q⁺` at `ρmax`;
/// this selects the `Q⁺` branch exactly where `ρmin` lies beyond `φ_QQ(ρmax)`.
pub fn global_mu_min<T: Real>(limits: &JointLimitPair<T>) -> GlobalBound<T> {
    let lower = lower_limit_minimum(limits.rho_min);
    let upper = mu_min_q_plus(limits.rho_max);
    if upper < lower.value {
        GlobalBound { value: upper, site: CriticalSite::QPlus }
    } else {
        lower
    }
}

/// Largest transmission factor over the joint-bounded workspace, attained at `R⁻` or `Q⁺`.
pub fn global_mu_max<T: Real>(limits: &JointLimitPair<T>) -> GlobalBound<T> {
    let r = mu_max_r_minus(limits.rho_min);
    let q = mu_max_q_plus(limits.rho_max);
    if q > r {
        GlobalBound { value: q, site: CriticalSite::QPlus }
    } else {
        GlobalBound { value: r, site: CriticalSite::RMinus }
    }
}

pub fn global_factor_range<T: Real>(limits: &JointLimitPair<T>) -> FactorRange<T> {
    FactorRange::new(global_mu_min(limits).value, global_mu_max(limits).value)
}

/// Boundary between the `Q⁻` and `Q⁺` regions of the minimum factor, by the
/// Q-axis parameter `χ ∈ [0, 1/4]` of `Q⁻`. Returns `(ρmin, ρmax)`.
pub fn phi_qq_parametric<T: Real>(chi: T) -> (T, T) {
    let one = T::one();
    let two = T::lit(2.0);
    let rho_min = (one - chi) / (one + two * chi * chi).sqrt();
    let rho_max = (one + two * chi) / (one + T::lit(8.0) * chi * chi).sqrt();
    (rho_min, rho_max)
}

/// Upper limit on `φ_QQ` for a given lower limit `ρmin ∈ [sqrt(1/2), 1]`.
pub fn phi_qq_upper<T: Real>(rho_min: T) -> Result<T> {
    if !(rho_min >= T::lit(0.5).sqrt() && rho_min <= T::one()) {
        return Err(out_of_range("rho_min", rho_min, "[sqrt(1/2), 1]"));
    }
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let r2 = rho_min * rho_min;
    let root = (three - two * r2).sqrt();
    let den = (T::lit(9.0) - two * r2) - T::lit(4.0) * rho_min * root;
    Ok((three * (three - two * r2) / den).sqrt())
}

/// `ρmin` on the `φ_QQ` curve for `ρmax ∈ [1, sqrt(3/2)]`.
///
/// The `Q⁺` vertex at `ρmax` has `χ⁺ ≤ 0`; the matching `Q⁻` vertex has `χ⁻ = -χ⁺/2`.
pub fn phi_qq<T: Real>(rho_max: T) -> Result<T> {
    let top = T::lit(1.5).sqrt();
    if !(rho_max >= T::one() && rho_max <= top * (T::one() + T::lit(4.0) * T::epsilon())) {
        return Err(out_of_range("rho_max", rho_max, "[1, sqrt(3/2)]"));
    }
    let rho_max = rho_max.min(top);
    let g = Geometry::unit();
    let chi_plus = chi_from_p(p_from_rho(rho_max, &g)?, &g)?;
    Ok(rho_from_chi(-chi_plus / T::lit(2.0), &g))
}

/// Boundary between the `R⁻` and `Q⁺` regions of the maximum factor, by the
/// Q-axis parameter `χ ∈ (-1/2, 0]` of `Q⁺`. Returns `(ρmin, ρmax)`.
pub fn phi_rq_parametric<T: Real>(chi: T) -> (T, T) {
    let one = T::one();
    let two = T::lit(2.0);
    let rho_max = (one - chi) / (one + two * chi * chi).sqrt();
    let rho_min = (one + two * chi) / (one + T::lit(4.0) * chi * chi).sqrt();
    (rho_min, rho_max)
}

/// `ρmin` on the `φ_RQ` curve for `ρmax ∈ [1, sqrt(3/2))`.
pub fn phi_rq<T: Real>(rho_max: T) -> Result<T> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    if !(rho_max >= T::one() && rho_max < T::lit(1.5).sqrt()) {
        return Err(out_of_range("rho_max", rho_max, "[1, sqrt(3/2))"));
    }
    let r2 = rho_max * rho_max;
    let root = (three - two * r2).sqrt();
    let den = (T::lit(15.0) - two * r2) - T::lit(4.0) * rho_max * root;
    Ok((T::lit(9.0) * (three - two * r2) / den).sqrt())
}

/// Constants separating the critical-point regions of the `(ρmin, ρmax)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionConstants<T> {
    /// Lower limit where `S⁻` and `R⁻` give the same minimum factor.
    pub rho_sr: T,
    /// Lower limit where `R⁻` and `Q⁻` give the same minimum factor.
    pub rho_rq: T,
    pub mu_at_sr: T,
    pub mu_at_rq: T,
    /// Symmetric bound where the binding lower-limit point switches from `R⁻` to `Q⁻`.
    pub mu_star: T,
    pub rho_min_at_mu_star: T,
    pub rho_max_at_mu_star: T,
}

/// Lower limit from the `Q⁻` minimum factor: `(3μ - 1)/sqrt(6μ² - 4μ + 2)`.
pub fn rho_min_from_q_minus<T: Real>(mu: T) -> T {
    let (two, three, four, six) = (T::lit(2.0), T::lit(3.0), T::lit(4.0), T::lit(6.0));
    (three * mu - T::one()) / (six * mu * mu - four * mu + two).sqrt()
}

/// Lower limit from the `R⁻` maximum factor `M`: `1/sqrt(2M² - 2M + 1)`.
pub fn rho_min_from_r_minus<T: Real>(mu_max: T) -> T {
    let two = T::lit(2.0);
    T::one() / (two * mu_max * mu_max - two * mu_max + T::one()).sqrt()
}

/// Upper limit from the `Q⁺` maximum factor `M`: `(3M - 1)/sqrt(6M² - 4M + 2)`.
pub fn rho_max_from_q_plus_max<T: Real>(mu_max: T) -> T {
    rho_min_from_q_minus(mu_max)
}

/// Upper limit from the `Q⁺` minimum factor: `1/sqrt(3μ² - 4μ + 2)`, active for `μ > 2/3`.
pub fn rho_max_from_q_plus_min<T: Real>(mu: T) -> Option<T> {
    if mu <= T::lit(2.0) / T::lit(3.0) {
        return None;
    }
    Some(T::one() / (T::lit(3.0) * mu * mu - T::lit(4.0) * mu + T::lit(2.0)).sqrt())
}

fn root<T: Real>(f: impl Fn(T) -> T, lo: f64, hi: f64) -> T {
    bisect(f, T::lit(lo), T::lit(hi), T::epsilon()).expect("bracket fixed by construction")
}

/// Computes the region constants by bisection.
pub fn critical_region_boundaries<T: Real>() -> RegionConstants<T> {
    let rho_sr = root(|r: T| min_factor_s(r) - min_factor_r(r), 0.02, 0.16);
    let rho_rq = root(|r: T| min_factor_r(r) - mu_min_q_minus(r), 0.16, 0.5);
    let mu_star = root(
        |mu: T| rho_min_from_q_minus(mu) - rho_min_from_r_minus(T::one() / mu),
        0.45,
        0.65,
    );
    RegionConstants {
        rho_sr,
        rho_rq,
        mu_at_sr: min_factor_s(rho_sr),
        mu_at_rq: mu_min_q_minus(rho_rq),
        mu_star,
        rho_min_at_mu_star: rho_min_from_q_minus(mu_star),
        rho_max_at_mu_star: joint_limits_symmetric_upper(mu_star),
    }
}

/// Region constants in double precision, computed once.
pub fn region_constants() -> &'static RegionConstants<f64> {
    static CONSTANTS: OnceLock<RegionConstants<f64>> = OnceLock::new();
    CONSTANTS.get_or_init(critical_region_boundaries)
}

/// Lower limit such that every lower-limit critical point keeps its minimum
/// factor at or above `mu_min`.
fn rho_min_for_floor<T: Real>(mu_min: T) -> T {
    let mu_rq = T::lit(region_constants().mu_at_rq);
    if mu_min >= mu_rq {
        rho_min_from_q_minus(mu_min)
    } else {
        let f = |r: T| lower_limit_minimum(r).value - mu_min;
        bisect(f, T::lit(1e-9), T::lit(region_constants().rho_rq), T::epsilon()).unwrap_or(T::lit(1e-9))
    }
}

/// Loosest joint limits whose global factors stay within `[mu_min, mu_max]`.
pub fn joint_limits_for_bounds<T: Real>(mu_min: T, mu_max: T) -> Result<JointLimitPair<T>> {
    if !(mu_min > T::zero() && mu_min < T::one() && mu_max > T::one() && mu_max.is_finite()) {
        return Err(Error::InvalidBound(format!(
            "factor bounds must satisfy 0 < min < 1 < max < inf, got [{mu_min}, {mu_max}]"
        )));
    }
    let rho_min = rho_min_for_floor(mu_min).max(rho_min_from_r_minus(mu_max));
    let mut rho_max = rho_max_from_q_plus_max(mu_max);
    if let Some(r) = rho_max_from_q_plus_min(mu_min) {
        rho_max = rho_max.min(r);
    }
    JointLimitPair::new(rho_min.min(T::one()), rho_max.max(T::one()))
}

fn joint_limits_symmetric_upper<T: Real>(mu: T) -> T {
    let (two, three, four, six) = (T::lit(2.0), T::lit(3.0), T::lit(4.0), T::lit(6.0));
    (three - mu) / (two * mu * mu - four * mu + six).sqrt()
}

/// Joint limits for symmetric factor bounds `[μ, 1/μ]` over the whole
/// joint-bounded workspace.
pub fn joint_limits_symmetric<T: Real>(mu: T) -> Result<JointLimitPair<T>> {
    if !(mu > T::zero() && mu < T::one()) {
        return Err(Error::InvalidBound(format!("symmetric factor {mu} must lie in (0, 1)")));
    }
    let rho_max = joint_limits_symmetric_upper(mu);
    let rho_min = if mu >= T::lit(region_constants().mu_star) {
        rho_min_from_q_minus(mu)
    } else {
        mu / (mu * mu - T::lit(2.0) * mu + T::lit(2.0)).sqrt()
    };
    JointLimitPair::new(rho_min.min(T::one()), rho_max.max(T::one()))
}

/// Joint coordinates of the Q-axis vertices bounding factors to `[μ, 1/μ]`
/// on the Q-axis alone. Returns `(ρ(Q⁻), ρ(Q⁺))`.
pub fn cube_vertex_joint_limits<T: Real>(mu: T) -> Result<(T, T)> {
    if !(mu > T::zero() && mu < T::one()) {
        return Err(Error::InvalidBound(format!("symmetric factor {mu} must lie in (0, 1)")));
    }
    let two = T::lit(2.0);
    let perpendicular = mu / (two * mu * mu - T::lit(4.0) * mu + T::lit(3.0)).sqrt();
    Ok((rho_min_from_q_minus(mu).max(perpendicular), joint_limits_symmetric_upper(mu)))
}

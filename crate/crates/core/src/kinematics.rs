//! Position and velocity kinematics of the simplified Orthoglide model.
//!
//! Three bar links of length `L` join the tool centre point to three
//! mutually orthogonal prismatic joints whose axes meet at the origin. The
//! closure equations are
//!
//! ```text
//! (px - ρx)² + py² + pz² = L²
//! px² + (py - ρy)² + pz² = L²
//! px² + py² + (pz - ρz)² = L²
//! ```
//!
//! and the "zero" posture `p = 0` corresponds to `ρ = (L, L, L)`.

use crate::error::{out_of_range, Error, Result};
use crate::linalg::Mat3;
use crate::Real;

/// Geometric description of the manipulator: the parallelogram link length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry<T> {
    link_length: T,
}

impl<T: Real> Geometry<T> {
    pub fn new(link_length: T) -> Result<Self> {
        if link_length.is_finite() && link_length > T::zero() {
            Ok(Self { link_length })
        } else {
            Err(out_of_range("link length", link_length, "(0, inf)"))
        }
    }

    /// The normalized manipulator, `L = 1`.
    pub fn unit() -> Self {
        Self { link_length: T::one() }
    }

    #[inline]
    pub fn link_length(&self) -> T {
        self.link_length
    }

    #[inline]
    pub fn singular_tol(&self) -> T {
        T::lit(T::SINGULAR_TOL) * self.link_length
    }

    #[inline]
    pub fn residual_tol(&self) -> T {
        T::lit(T::RESIDUAL_TOL) * self.link_length
    }

    /// Residuals of the three closure equations, normalized by `L²`.
    pub fn closure_residuals(&self, p: &CartesianPoint<T>, r: &JointVector<T>) -> [T; 3] {
        let l2 = self.link_length * self.link_length;
        let (x, y, z) = (p.x, p.y, p.z);
        [
            ((x - r.x).powi(2) + y * y + z * z - l2) / l2,
            (x * x + (y - r.y).powi(2) + z * z - l2) / l2,
            (x * x + y * y + (z - r.z).powi(2) - l2) / l2,
        ]
    }
}

/// Output position of the tool centre point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CartesianPoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> CartesianPoint<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    /// Point on the Q-axis with all coordinates equal to `v`.
    pub fn splat(v: T) -> Self {
        Self { x: v, y: v, z: v }
    }

    pub fn origin() -> Self {
        Self::splat(T::zero())
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self { x: a[0], y: a[1], z: a[2] }
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scaled(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Actuated prismatic joint coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JointVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> JointVector<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn splat(v: T) -> Self {
        Self { x: v, y: v, z: v }
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self { x: a[0], y: a[1], z: a[2] }
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Mechanical stroke limits `0 < ρ ≤ 2L` on every axis.
    pub fn within_stroke(&self, g: &Geometry<T>) -> bool {
        let two_l = g.link_length() + g.link_length();
        self.to_array().iter().all(|&r| r > T::zero() && r <= two_l)
    }

    pub fn offset(self, d: [T; 3]) -> Self {
        Self::new(self.x + d[0], self.y + d[1], self.z + d[2])
    }
}

/// Binary branch selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Assembly-mode indices: `s` per leg for the inverse problem, `m` for the direct one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigIndices {
    pub sx: Sign,
    pub sy: Sign,
    pub sz: Sign,
    pub m: Sign,
}

impl Default for ConfigIndices {
    /// The working mode of the design workspace: `s = (+1, +1, +1)`, `m = -1`.
    fn default() -> Self {
        Self { sx: Sign::Plus, sy: Sign::Plus, sz: Sign::Plus, m: Sign::Minus }
    }
}

impl ConfigIndices {
    pub fn legs(sx: Sign, sy: Sign, sz: Sign) -> Self {
        Self { sx, sy, sz, ..Self::default() }
    }
}

/// Number of inverse kinematic solutions compatible with the stroke limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    OutsideWorkspace,
    UniqueIk,
    EightIk,
    SerialSingular,
}

pub fn inverse_kinematics<T: Real>(
    p: &CartesianPoint<T>,
    s: &ConfigIndices,
    g: &Geometry<T>,
) -> Result<JointVector<T>> {
    let l2 = g.link_length() * g.link_length();
    let (x, y, z) = (p.x, p.y, p.z);
    let radicands = [l2 - y * y - z * z, l2 - x * x - z * z, l2 - x * x - y * y];
    let eps = g.singular_tol();
    for (axis, &r) in radicands.iter().enumerate() {
        if r < T::zero() {
            return Err(Error::OutOfReach);
        }
        if r < eps * eps {
            return Err(Error::SerialSingular { axis });
        }
    }
    Ok(JointVector::new(
        x + s.sx.value::<T>() * radicands[0].sqrt(),
        y + s.sy.value::<T>() * radicands[1].sqrt(),
        z + s.sz.value::<T>() * radicands[2].sqrt(),
    ))
}

/// `Σρ⁻²` and the dimensionless discriminant `1 - (Σρ² - 4L²)·Σρ⁻²` of the direct problem.
fn direct_discriminant<T: Real>(r: &JointVector<T>, g: &Geometry<T>) -> Result<(T, T)> {
    let rho = r.to_array();
    if let Some(&bad) = rho.iter().find(|&&v| !(v > T::zero())) {
        return Err(out_of_range("joint coordinate", bad, "(0, 2L]"));
    }
    let l = g.link_length();
    let sum_sq = rho.iter().fold(T::zero(), |acc, &v| acc + v * v);
    let sum_inv_sq = rho.iter().fold(T::zero(), |acc, &v| acc + T::one() / (v * v));
    let value = (sum_sq - T::lit(4.0) * l * l) * sum_inv_sq;
    Ok((sum_inv_sq, T::one() - value))
}

/// Solves the direct problem on branch `m`.
///
/// With `p_a = ρ_a / 2 + t / ρ_a` the closure equations reduce to
/// `A t² + B t + C = 0`; dividing through by `B = (ρxρyρz)²` gives
/// `t = (-1 + m·sqrt(d)) / (2 Σρ⁻²)` with `d = 1 - 4AC/B²`.
pub fn direct_kinematics<T: Real>(r: &JointVector<T>, m: Sign, g: &Geometry<T>) -> Result<CartesianPoint<T>> {
    let (sum_inv_sq, d) = direct_discriminant(r, g)?;
    let eps = T::lit(T::SINGULAR_TOL);
    if d.abs() < eps {
        return Err(Error::ParallelSingular);
    }
    if d < T::zero() {
        return Err(Error::NoSolution);
    }
    let two = T::lit(2.0);
    let t = (-T::one() + m.value::<T>() * d.sqrt()) / (two * sum_inv_sq);
    Ok(CartesianPoint::new(r.x / two + t / r.x, r.y / two + t / r.y, r.z / two + t / r.z))
}

/// Sign of `px/ρx + py/ρy + pz/ρz - 1`, the side of the flat singularity surface.
pub fn branch_index<T: Real>(r: &JointVector<T>, p: &CartesianPoint<T>) -> Result<Sign> {
    if r.to_array().iter().any(|&v| v == T::zero()) {
        return Err(out_of_range("joint coordinate", T::zero(), "nonzero"));
    }
    let e = branch_expression(r, p);
    if e.abs() < T::lit(T::SINGULAR_TOL) {
        return Err(Error::ParallelSingular);
    }
    Ok(if e > T::zero() { Sign::Plus } else { Sign::Minus })
}

#[inline]
pub(crate) fn branch_expression<T: Real>(r: &JointVector<T>, p: &CartesianPoint<T>) -> T {
    p.x / r.x + p.y / r.y + p.z / r.z - T::one()
}

fn leg_denominators<T: Real>(p: &CartesianPoint<T>, r: &JointVector<T>) -> Result<[T; 3]> {
    let d = [p.x - r.x, p.y - r.y, p.z - r.z];
    let scale = T::one().max(r.to_array().iter().fold(T::zero(), |m, v| m.max(v.abs())));
    let eps = T::lit(T::SINGULAR_TOL) * scale;
    for (axis, v) in d.iter().enumerate() {
        if v.abs() <= eps {
            return Err(Error::SerialSingular { axis });
        }
    }
    Ok(d)
}

/// `J⁻¹ = ∂ρ/∂p`, mapping Cartesian velocities to joint velocities.
pub fn inverse_jacobian<T: Real>(p: &CartesianPoint<T>, r: &JointVector<T>) -> Result<Mat3<T>> {
    let d = leg_denominators(p, r)?;
    let one = T::one();
    Ok([
        [one, p.y / d[0], p.z / d[0]],
        [p.x / d[1], one, p.z / d[1]],
        [p.x / d[2], p.y / d[2], one],
    ])
}

/// Closed-form `det(J⁻¹)`.
pub fn inverse_jacobian_det<T: Real>(p: &CartesianPoint<T>, r: &JointVector<T>) -> Result<T> {
    let d = leg_denominators(p, r)?;
    let num = p.x * r.y * r.z + r.x * p.y * r.z + r.x * r.y * p.z - r.x * r.y * r.z;
    Ok(num / (d[0] * d[1] * d[2]))
}

pub fn classify_cartesian_point<T: Real>(p: &CartesianPoint<T>, g: &Geometry<T>) -> PointClass {
    let l = g.link_length();
    let l2 = l * l;
    let (x2, y2, z2) = (p.x * p.x, p.y * p.y, p.z * p.z);
    let in_cylinders = x2 + y2 <= l2 && x2 + z2 <= l2 && y2 + z2 <= l2;
    if !in_cylinders {
        return PointClass::OutsideWorkspace;
    }
    let n = p.norm();
    if (n - l).abs() <= g.singular_tol() {
        PointClass::SerialSingular
    } else if n < l {
        PointClass::UniqueIk
    } else if p.x > T::zero() && p.y > T::zero() && p.z > T::zero() {
        PointClass::EightIk
    } else {
        PointClass::OutsideWorkspace
    }
}

/// Membership of the joint-space region where the direct problem is solvable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointSpaceCheck<T> {
    pub feasible: bool,
    /// `(Σρ² - 4L²)·Σρ⁻²`; the region is `value ≤ 1`.
    pub value: T,
}

pub fn joint_space_feasible<T: Real>(r: &JointVector<T>, g: &Geometry<T>) -> Result<JointSpaceCheck<T>> {
    let (_, d) = direct_discriminant(r, g)?;
    let value = T::one() - d;
    Ok(JointSpaceCheck { feasible: value <= T::one(), value })
}

/// True when `p` lies inside the ball of radius `L`, on the working side of the
/// flat singularity, with all three legs away from the serial singularity.
pub fn is_singularity_free<T: Real>(p: &CartesianPoint<T>, g: &Geometry<T>) -> bool {
    if p.norm() >= g.link_length() {
        return false;
    }
    match inverse_kinematics(p, &ConfigIndices::default(), g) {
        Ok(r) => branch_expression(&r, p) < -T::lit(T::SINGULAR_TOL),
        Err(_) => false,
    }
}

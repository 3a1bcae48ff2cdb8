//! Dexterity criteria and velocity transmission factor ranges.
//!
//! A transmission factor `‖J⁻¹ e‖⁻¹` for a unit direction `e` lies between
//! the reciprocals of the largest and smallest singular values of `J⁻¹`.

use crate::error::{Error, Result};
use crate::qaxis::{chi_range_for_condition, chi_range_for_manipulability, chi_range_for_transmission, ChiRange};
use crate::Real;

/// Interval `[min, max]` of velocity transmission factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorRange<T> {
    pub min: T,
    pub max: T,
}

impl<T: Real> FactorRange<T> {
    pub fn new(min: T, max: T) -> Self {
        Self { min, max }
    }

    pub fn isotropic() -> Self {
        Self { min: T::one(), max: T::one() }
    }

    /// Range for singular values sorted in descending order.
    pub fn from_singular_values(sv: &[T; 3]) -> Self {
        Self { min: T::one() / sv[0], max: T::one() / sv[2] }
    }

    pub fn union(self, other: Self) -> Self {
        Self { min: self.min.min(other.min), max: self.max.max(other.max) }
    }

    /// True when `self ⊆ other`, allowing an absolute slack `tol`.
    pub fn within(&self, other: &Self, tol: T) -> bool {
        self.min >= other.min - tol && self.max <= other.max + tol
    }

    pub fn width(&self) -> T {
        self.max - self.min
    }
}

/// Dexterity requirement imposed on the workspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DexterityBound<T> {
    /// `|det J⁻¹| ≥ Δ`.
    ManipulabilityFloor(T),
    /// `cond(J⁻¹) ≤ δ`.
    ConditionCeiling(T),
    /// Transmission factors inside `[min, max]`; `min = 0` or `max = ∞`
    /// leave the corresponding side free.
    TransmissionInterval { min: T, max: T },
    /// Transmission factors inside `[μ, 1/μ]`.
    SymmetricFactor(T),
}

impl<T: Real> DexterityBound<T> {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DexterityBound::ManipulabilityFloor(d) => d > T::zero() && d < T::one(),
            DexterityBound::ConditionCeiling(d) => d > T::one(),
            DexterityBound::TransmissionInterval { min, max } => {
                min >= T::zero() && min < T::one() && max > T::one() && !max.is_nan()
            }
            DexterityBound::SymmetricFactor(mu) => mu > T::zero() && mu < T::one(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBound(format!("{self}")))
        }
    }

    /// Transmission factor interval implied by the bound, if it is of that kind.
    pub fn factor_interval(&self) -> Option<FactorRange<T>> {
        match *self {
            DexterityBound::TransmissionInterval { min, max } => Some(FactorRange::new(min, max)),
            DexterityBound::SymmetricFactor(mu) => Some(FactorRange::new(mu, T::one() / mu)),
            _ => None,
        }
    }

    /// Symmetric factor `μ` when the bound is `[μ, 1/μ]`, up to rounding.
    pub fn symmetric_factor(&self) -> Option<T> {
        match *self {
            DexterityBound::SymmetricFactor(mu) => Some(mu),
            DexterityBound::TransmissionInterval { min, max } => {
                let tol = T::lit(1e3) * T::epsilon();
                ((min * max - T::one()).abs() <= tol).then_some(min)
            }
            _ => None,
        }
    }

    /// The Q-axis χ interval on which the bound holds.
    pub fn chi_range(&self) -> Result<ChiRange<T>> {
        self.validate()?;
        match *self {
            DexterityBound::ManipulabilityFloor(d) => chi_range_for_manipulability(d),
            DexterityBound::ConditionCeiling(d) => chi_range_for_condition(d),
            DexterityBound::TransmissionInterval { min, max } => {
                chi_range_for_transmission(T::one() / max, T::one() / min)
            }
            DexterityBound::SymmetricFactor(mu) => chi_range_for_transmission(mu, T::one() / mu),
        }
    }

    /// Whether a configuration with the given singular values of `J⁻¹`
    /// (descending) satisfies the bound.
    pub fn admits(&self, sv: &[T; 3]) -> bool {
        match *self {
            DexterityBound::ManipulabilityFloor(d) => sv[0] * sv[1] * sv[2] >= d,
            DexterityBound::ConditionCeiling(d) => sv[0] <= d * sv[2],
            DexterityBound::TransmissionInterval { min, max } => sv[0] * min <= T::one() && sv[2] * max >= T::one(),
            DexterityBound::SymmetricFactor(mu) => sv[0] * mu <= T::one() && sv[2] >= mu,
        }
    }

    /// Scalar ordering key: larger means a stricter requirement.
    pub fn strictness(&self) -> T {
        match *self {
            DexterityBound::ManipulabilityFloor(d) => d,
            DexterityBound::ConditionCeiling(d) => T::one() / d,
            DexterityBound::TransmissionInterval { min, max } => min.min(T::one() / max),
            DexterityBound::SymmetricFactor(mu) => mu,
        }
    }
}

impl<T: Real> std::fmt::Display for DexterityBound<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DexterityBound::ManipulabilityFloor(d) => write!(f, "manipulability >= {d}"),
            DexterityBound::ConditionCeiling(d) => write!(f, "condition number <= {d}"),
            DexterityBound::TransmissionInterval { min, max } => write!(f, "transmission factor in [{min}, {max}]"),
            DexterityBound::SymmetricFactor(mu) => write!(f, "transmission factor in [{mu}, 1/{mu}]"),
        }
    }
}

//! Dexterity along the Q-axis, the bisector `px = py = pz` of the first octant.
//!
//! On this line the inverse Jacobian is symmetric with unit diagonal and a
//! single off-diagonal value `χ = -p / sqrt(L² - 2p²)`, so every dexterity
//! index has a closed form in `χ`. The singularity-free part of the axis is
//! `χ ∈ (-1/2, 1)`, on which both `p(χ)` and `ρ(χ)` decrease strictly.

use crate::error::{out_of_range, Error, Result};
use crate::kinematics::Geometry;
use crate::linalg::Mat3;
use crate::roots::{bisect, cubic_real_roots};
use crate::Real;

/// Lower end of the singularity-free χ interval (flat singularity, ρ = sqrt(3/2)·L).
pub const CHI_LOWER: f64 = -0.5;
/// Upper end of the singularity-free χ interval (ρ = 0).
pub const CHI_UPPER: f64 = 1.0;

pub fn chi_from_p<T: Real>(p: T, g: &Geometry<T>) -> Result<T> {
    let l = g.link_length();
    let rad = l * l - T::lit(2.0) * p * p;
    if !(rad > T::zero()) {
        return Err(out_of_range("Q-axis coordinate", p / l, "|p| < L/sqrt(2)"));
    }
    Ok(-p / rad.sqrt())
}

pub fn p_from_chi<T: Real>(chi: T, g: &Geometry<T>) -> T {
    -chi * g.link_length() / (T::one() + T::lit(2.0) * chi * chi).sqrt()
}

pub fn rho_from_chi<T: Real>(chi: T, g: &Geometry<T>) -> T {
    (T::one() - chi) * g.link_length() / (T::one() + T::lit(2.0) * chi * chi).sqrt()
}

/// Q-axis coordinate reached with all joints at `rho` on the `s = (+,+,+)` branch.
pub fn p_from_rho<T: Real>(rho: T, g: &Geometry<T>) -> Result<T> {
    let l = g.link_length();
    let rad = T::lit(3.0) * l * l - T::lit(2.0) * rho * rho;
    if !(rho > T::zero()) || rad < T::zero() {
        return Err(out_of_range("Q-axis joint coordinate", rho / l, "(0, sqrt(3/2)·L]"));
    }
    Ok((rho - rad.sqrt()) / T::lit(3.0))
}

/// A point on the Q-axis together with its joint coordinate and χ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QAxisPoint<T> {
    pub chi: T,
    pub p: T,
    pub rho: T,
}

impl<T: Real> QAxisPoint<T> {
    pub fn from_chi(chi: T, g: &Geometry<T>) -> Self {
        Self { chi, p: p_from_chi(chi, g), rho: rho_from_chi(chi, g) }
    }

    pub fn from_p(p: T, g: &Geometry<T>) -> Result<Self> {
        let chi = chi_from_p(p, g)?;
        let rho = p + (g.link_length().powi(2) - T::lit(2.0) * p * p).sqrt();
        Ok(Self { chi, p, rho })
    }

    pub fn from_rho(rho: T, g: &Geometry<T>) -> Result<Self> {
        let p = p_from_rho(rho, g)?;
        Ok(Self { chi: chi_from_p(p, g)?, p, rho })
    }

    pub fn eigenvalues(&self) -> [T; 3] {
        qaxis_eigenvalues(self.chi)
    }
}

/// Inverse Jacobian on the Q-axis: ones on the diagonal, `χ` elsewhere.
pub fn qaxis_inverse_jacobian<T: Real>(chi: T) -> Mat3<T> {
    let one = T::one();
    [[one, chi, chi], [chi, one, chi], [chi, chi, one]]
}

/// Eigenvalues `(1 + 2χ, 1 - χ, 1 - χ)` of the Q-axis inverse Jacobian.
pub fn qaxis_eigenvalues<T: Real>(chi: T) -> [T; 3] {
    let side = T::one() - chi;
    [T::one() + T::lit(2.0) * chi, side, side]
}

/// `w = (1 - χ)²·|1 + 2χ|`.
pub fn manipulability<T: Real>(chi: T) -> T {
    (T::one() - chi).powi(2) * (T::one() + T::lit(2.0) * chi).abs()
}

pub fn condition_number<T: Real>(chi: T) -> Result<T> {
    if !(chi > T::lit(CHI_LOWER) && chi < T::lit(CHI_UPPER)) {
        return Err(Error::Singular(format!("chi = {chi} lies outside (-0.5, 1)")));
    }
    let [a, b, _] = qaxis_eigenvalues(chi);
    Ok(a.max(b) / a.min(b))
}

/// Closed χ interval `[lo, hi]` with `lo ≤ 0 ≤ hi`.
///
/// `hi` locates `Q⁻` (joints retracted, `p < 0`), `lo` locates `Q⁺`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiRange<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> ChiRange<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo <= T::zero() && hi >= T::zero()) || lo <= T::lit(CHI_LOWER) || hi >= T::lit(CHI_UPPER) {
            return Err(Error::InvalidBound(format!(
                "chi interval [{lo}, {hi}] must contain 0 and lie inside (-0.5, 1)"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn q_minus(&self, g: &Geometry<T>) -> QAxisPoint<T> {
        QAxisPoint::from_chi(self.hi, g)
    }

    pub fn q_plus(&self, g: &Geometry<T>) -> QAxisPoint<T> {
        QAxisPoint::from_chi(self.lo, g)
    }

    pub fn contains(&self, chi: T) -> bool {
        chi >= self.lo && chi <= self.hi
    }

    /// Joint interval `[ρ(Q⁻), ρ(Q⁺)]` on the Q-axis.
    pub fn joint_interval(&self, g: &Geometry<T>) -> (T, T) {
        (rho_from_chi(self.hi, g), rho_from_chi(self.lo, g))
    }
}

/// Q-axis interval where `w ≥ Δ`: the roots of `2χ³ - 3χ² + (1 - Δ) = 0`
/// on either side of zero.
pub fn chi_range_for_manipulability<T: Real>(floor: T) -> Result<ChiRange<T>> {
    if !(floor > T::zero() && floor < T::one()) {
        return Err(Error::InvalidBound(format!("manipulability floor {floor} must lie in (0, 1)")));
    }
    let two = T::lit(2.0);
    let roots = cubic_real_roots(two, T::lit(-3.0), T::zero(), T::one() - floor);
    let residual = |chi: T| (T::one() - chi).powi(2) * (T::one() + two * chi) - floor;
    let pick = |lo: T, hi: T| -> Result<T> {
        let mut found = roots.iter().copied().filter(|&r| r > lo && r < hi);
        match found.next() {
            Some(r) => Ok(r),
            None => bisect(residual, lo, hi, T::epsilon()),
        }
    };
    let lo = pick(T::lit(CHI_LOWER), T::zero())?;
    let hi = pick(T::zero(), T::lit(CHI_UPPER))?;
    Ok(ChiRange { lo, hi })
}

/// Q-axis interval where the condition number stays below `δ`; `δ = ∞`
/// yields the whole singularity-free interval.
pub fn chi_range_for_condition<T: Real>(ceiling: T) -> Result<ChiRange<T>> {
    if ceiling.is_nan() || ceiling < T::one() {
        return Err(Error::InvalidBound(format!("condition ceiling {ceiling} must be at least 1")));
    }
    if ceiling.is_infinite() {
        return Ok(ChiRange { lo: T::lit(CHI_LOWER), hi: T::lit(CHI_UPPER) });
    }
    let one = T::one();
    let two = T::lit(2.0);
    Ok(ChiRange { lo: -(ceiling - one) / (two * ceiling + one), hi: (ceiling - one) / (ceiling + two) })
}

/// Q-axis interval keeping every inverse Jacobian eigenvalue inside
/// `[eig_min, eig_max]`.
///
/// Transmission factors are reciprocal eigenvalues, so factor bounds
/// `[a, b]` translate to `eig_min = 1/b`, `eig_max = 1/a`. The symmetric
/// case `[μ, 1/μ]` is its own image.
pub fn chi_range_for_transmission<T: Real>(eig_min: T, eig_max: T) -> Result<ChiRange<T>> {
    if !(eig_min < T::one() && T::one() < eig_max) {
        return Err(Error::InvalidBound(format!(
            "transmission bounds must satisfy min < 1 < max, got [{eig_min}, {eig_max}]"
        )));
    }
    let one = T::one();
    let two = T::lit(2.0);
    let lo = (one - eig_max).max((eig_min - one) / two).max(T::lit(CHI_LOWER));
    let hi = (one - eig_min).min((eig_max - one) / two).min(T::lit(CHI_UPPER));
    Ok(ChiRange { lo, hi })
}

/// Table value that may be infinite at a singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    PosInfinite,
    NegInfinite,
}

impl<T: Real> Extended<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl<T: Real> std::fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(v) => match f.precision() {
                Some(prec) => write!(f, "{v:.prec$}"),
                None => write!(f, "{v}"),
            },
            Extended::PosInfinite => f.write_str("inf"),
            Extended::NegInfinite => f.write_str("-inf"),
        }
    }
}

/// Characteristic points of the Q-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landmark<T> {
    pub name: &'static str,
    pub p: T,
    pub rho: T,
    pub chi: Extended<T>,
    /// Determinant of the direct Jacobian `J`.
    pub jacobian_det: Extended<T>,
}

/// `P1, O, P2, P3, P4`: the three parallel singularities, the isotropic
/// point and the serial singularity on the Q-axis.
pub fn table1_landmarks<T: Real>(g: &Geometry<T>) -> Vec<Landmark<T>> {
    let l = g.link_length();
    let frac = |n: f64, d: f64| T::lit(n / d).sqrt() * l;
    vec![
        Landmark {
            name: "P1",
            p: -frac(1.0, 3.0),
            rho: T::zero(),
            chi: Extended::Finite(T::one()),
            jacobian_det: Extended::PosInfinite,
        },
        Landmark {
            name: "O",
            p: T::zero(),
            rho: l,
            chi: Extended::Finite(T::zero()),
            jacobian_det: Extended::Finite(T::one()),
        },
        Landmark {
            name: "P2",
            p: frac(1.0, 6.0),
            rho: frac(3.0, 2.0),
            chi: Extended::Finite(T::lit(-0.5)),
            jacobian_det: Extended::PosInfinite,
        },
        Landmark {
            name: "P3",
            p: frac(1.0, 3.0),
            rho: frac(4.0, 3.0),
            chi: Extended::Finite(-T::one()),
            jacobian_det: Extended::PosInfinite,
        },
        Landmark {
            name: "P4",
            p: frac(1.0, 2.0),
            rho: frac(1.0, 2.0),
            chi: Extended::NegInfinite,
            jacobian_det: Extended::Finite(T::zero()),
        },
    ]
}

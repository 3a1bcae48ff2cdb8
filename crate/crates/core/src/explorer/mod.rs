//! Numerical oracles built on the exact kinematics and a full SVD of the
//! inverse Jacobian: pointwise factor ranges, workspace volumes, joint-space
//! grid scans and encoder offset sensitivity.

mod offset;
mod scan;
mod volume;

pub use offset::{offset_sensitivity, offset_sensitivity_per_axis, OFFSET_GRID};
pub use scan::{contour_data, grid_scan_mu, scan_joint_box, ContourKind, ContourRow, Locus, ScanResult};
pub use volume::{
    fibonacci_directions, singularity_free_volume, Clipping, Reference, SampleRegion, VolumeEstimate, VolumeExplorer,
};

use crate::dexterity::FactorRange;
use crate::error::{Error, Result};
use crate::kinematics::{inverse_jacobian, inverse_kinematics, CartesianPoint, ConfigIndices, Geometry, JointVector};
use crate::linalg::singular_values;
use crate::Real;

/// Singular values of `J⁻¹` at a known `(p, ρ)` pair, rejecting near-singular configurations.
pub fn singular_values_at<T: Real>(p: &CartesianPoint<T>, r: &JointVector<T>) -> Result<[T; 3]> {
    let sv = singular_values(&inverse_jacobian(p, r)?);
    if !(sv[2] > T::lit(T::SINGULAR_TOL)) || !sv[0].is_finite() {
        return Err(Error::Singular(format!("inverse Jacobian is rank deficient at {p:?}")));
    }
    Ok(sv)
}

/// Transmission factor range at `p` on the `s = (+,+,+)` branch.
pub fn factor_range_at<T: Real>(p: &CartesianPoint<T>, g: &Geometry<T>) -> Result<FactorRange<T>> {
    let r = inverse_kinematics(p, &ConfigIndices::default(), g)?;
    Ok(FactorRange::from_singular_values(&singular_values_at(p, &r)?))
}

/// Order-independent pairwise summation.
pub(crate) fn pairwise_sum<T: Real>(values: &[T]) -> T {
    match values.len() {
        0 => T::zero(),
        1 => values[0],
        n if n <= 8 => values.iter().fold(T::zero(), |a, &b| a + b),
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

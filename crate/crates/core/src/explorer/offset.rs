//! Sensitivity of the cube's transmission factors to joint encoder offsets.

use rayon::prelude::*;

use super::singular_values_at;
use crate::dexterity::FactorRange;
use crate::error::{Error, Result};
use crate::kinematics::{direct_kinematics, inverse_kinematics, CartesianPoint, ConfigIndices, Sign};
use crate::synthesis::DesignResult;
use crate::Real;

/// Nodes per cube edge used when sampling the commanded cube.
pub const OFFSET_GRID: usize = 21;

/// Factor range over the commanded cube when every encoder reads `offset`
/// too little, so the true joints sit at `ρ + offset`.
pub fn offset_sensitivity<T: Real>(design: &DesignResult<T>, offset: T) -> Result<FactorRange<T>> {
    offset_sensitivity_per_axis(design, [offset; 3])
}

/// Per-axis variant of [`offset_sensitivity`].
///
/// Each commanded cube node is converted to joints on the design branch, the
/// offsets are added, and the true position is recovered by direct
/// kinematics on the `m = -1` branch before evaluating the factors there.
pub fn offset_sensitivity_per_axis<T: Real>(design: &DesignResult<T>, offsets: [T; 3]) -> Result<FactorRange<T>> {
    if offsets.iter().any(|o| !o.is_finite()) {
        return Err(Error::InvalidParameter("encoder offsets must be finite".into()));
    }
    let g = design.geometry()?;
    let n = OFFSET_GRID;
    let at = |i: usize| {
        design.p_min + (design.p_max - design.p_min) * T::from_usize(i).expect("fits") / T::from_usize(n - 1).expect("fits")
    };
    let slabs: Vec<Result<FactorRange<T>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc: Option<FactorRange<T>> = None;
            for j in 0..n {
                for k in 0..n {
                    let p = CartesianPoint::new(at(i), at(j), at(k));
                    let commanded = inverse_kinematics(&p, &ConfigIndices::default(), &g)?;
                    let actual = commanded.offset(offsets);
                    let true_p = direct_kinematics(&actual, Sign::Minus, &g)?;
                    let f = FactorRange::from_singular_values(&singular_values_at(&true_p, &actual)?);
                    acc = Some(acc.map_or(f, |a| a.union(f)));
                }
            }
            acc.ok_or_else(|| Error::InvalidParameter("empty cube sample".into()))
        })
        .collect();
    let mut total: Option<FactorRange<T>> = None;
    for s in slabs {
        let s = s.map_err(|e| Error::Singular(format!("offset drives the cube across a singularity: {e}")))?;
        total = Some(total.map_or(s, |a| a.union(s)));
    }
    total.ok_or_else(|| Error::InvalidParameter("empty cube sample".into()))
}

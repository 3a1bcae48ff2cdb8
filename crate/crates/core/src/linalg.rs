//! Fixed-size 3×3 matrix helpers.
//!
//! Singular values are computed with a one-sided (Hestenes) Jacobi sweep,
//! which keeps full relative accuracy for the small singular values that
//! govern the largest transmission factors.

use crate::Real;

pub type Mat3<T> = [[T; 3]; 3];

pub fn identity<T: Real>() -> Mat3<T> {
    let (o, z) = (T::one(), T::zero());
    [[o, z, z], [z, o, z], [z, z, o]]
}

pub fn det3<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat_vec<T: Real>(m: &Mat3<T>, v: [T; 3]) -> [T; 3] {
    let row = |r: &[T; 3]| r[0] * v[0] + r[1] * v[1] + r[2] * v[2];
    [row(&m[0]), row(&m[1]), row(&m[2])]
}

const MAX_SWEEPS: usize = 60;

/// Singular values of `m`, sorted in descending order.
pub fn singular_values<T: Real>(m: &Mat3<T>) -> [T; 3] {
    // Columns of the working copy are rotated until mutually orthogonal.
    let mut a = *m;
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
            for row in &a {
                alpha = alpha + row[i] * row[i];
                beta = beta + row[j] * row[j];
                gamma = gamma + row[i] * row[j];
            }
            if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                continue;
            }
            rotated = true;
            let zeta = (beta - alpha) / (gamma + gamma);
            let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
            let c = T::one() / (T::one() + t * t).sqrt();
            let s = c * t;
            for row in a.iter_mut() {
                let (ui, uj) = (row[i], row[j]);
                row[i] = c * ui - s * uj;
                row[j] = s * ui + c * uj;
            }
        }
        if !rotated {
            break;
        }
    }
    let norm = |k: usize| (a[0][k] * a[0][k] + a[1][k] * a[1][k] + a[2][k] * a[2][k]).sqrt();
    let mut sv = [norm(0), norm(1), norm(2)];
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

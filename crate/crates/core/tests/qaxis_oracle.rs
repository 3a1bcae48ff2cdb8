use nalgebra::Matrix3;
use orthoglide::kinematics::{inverse_jacobian_det, CartesianPoint, Geometry, JointVector};
use orthoglide::qaxis::{
    chi_from_p, chi_range_for_condition, chi_range_for_manipulability, chi_range_for_transmission, condition_number,
    manipulability, p_from_chi, p_from_rho, qaxis_eigenvalues, qaxis_inverse_jacobian, rho_from_chi,
};
use proptest::prelude::*;

fn to_na(m: &[[f64; 3]; 3]) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[i][j])
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

proptest! {
    #[test]
    fn chi_round_trip(chi in -0.49f64..0.99) {
        let g = Geometry::unit();
        let p = p_from_chi(chi, &g);
        prop_assert!((chi_from_p(p, &g).unwrap() - chi).abs() < 1e-10);
        let rho = rho_from_chi(chi, &g);
        prop_assert!((p_from_rho(rho, &g).unwrap() - p).abs() < 1e-10);
    }

    #[test]
    fn eigenvalues_match_symmetric_solver(chi in -0.49f64..0.99) {
        let m = to_na(&qaxis_inverse_jacobian(chi));
        let numeric = sorted(m.symmetric_eigen().eigenvalues.iter().copied().collect());
        let closed = sorted(qaxis_eigenvalues(chi).to_vec());
        for (a, b) in numeric.iter().zip(&closed) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn manipulability_is_determinant_on_qaxis(chi in -0.49f64..0.99) {
        let g = Geometry::unit();
        let p = p_from_chi(chi, &g);
        let rho = rho_from_chi(chi, &g);
        let det = inverse_jacobian_det(&CartesianPoint::splat(p), &JointVector::new(rho, rho, rho)).unwrap();
        prop_assert!((manipulability(chi) - det.abs()).abs() < 1e-10);
        prop_assert!((to_na(&qaxis_inverse_jacobian(chi)).determinant() - det).abs() < 1e-10);
        if chi.abs() > 1e-9 {
            prop_assert!(manipulability(chi) < 1.0);
        }
    }

    #[test]
    fn condition_number_matches_svd(chi in -0.49f64..0.99) {
        let sv = to_na(&qaxis_inverse_jacobian(chi)).singular_values();
        let want = sv.max() / sv.min();
        prop_assert!((condition_number(chi).unwrap() - want).abs() < 1e-9 * want);
    }

    #[test]
    fn manipulability_range_is_tight(floor in 0.05f64..0.98) {
        let r = chi_range_for_manipulability(floor).unwrap();
        prop_assert!(r.lo < 0.0 && r.hi > 0.0);
        prop_assert!((manipulability(r.lo) - floor).abs() < 1e-10);
        prop_assert!((manipulability(r.hi) - floor).abs() < 1e-10);
        for k in 1..50 {
            let chi = r.lo + (r.hi - r.lo) * k as f64 / 50.0;
            prop_assert!(manipulability(chi) >= floor - 1e-12);
        }
    }

    #[test]
    fn condition_range_is_tight(ceiling in 1.01f64..20.0) {
        let r = chi_range_for_condition(ceiling).unwrap();
        prop_assert!((condition_number(r.lo).unwrap() - ceiling).abs() < 1e-9 * ceiling);
        prop_assert!((condition_number(r.hi).unwrap() - ceiling).abs() < 1e-9 * ceiling);
    }

    #[test]
    fn transmission_range_keeps_eigenvalues_inside(lo in 0.1f64..0.95, hi in 1.05f64..3.0) {
        let r = chi_range_for_transmission(lo, hi).unwrap();
        for k in 0..=40 {
            let chi = r.lo + (r.hi - r.lo) * k as f64 / 40.0;
            for e in qaxis_eigenvalues(chi) {
                prop_assert!(e >= lo - 1e-12 && e <= hi + 1e-12);
            }
        }
    }
}

#[test]
fn parameterisation_is_strictly_decreasing() {
    let g = Geometry::unit();
    let n = 10_000;
    let mut last = (f64::INFINITY, f64::INFINITY);
    for k in 1..n {
        let chi = -0.5 + 1.5 * k as f64 / n as f64;
        let cur = (p_from_chi(chi, &g), rho_from_chi(chi, &g));
        assert!(cur.0 < last.0 && cur.1 < last.1, "chi = {chi}");
        last = cur;
    }
}

#[test]
fn manipulability_cubic_reference_case() {
    let r = chi_range_for_manipulability(0.9f64).unwrap();
    let f = |chi: f64| (1.0 - chi).powi(2) * (1.0 + 2.0 * chi) - 0.9;
    assert!(f(r.lo).abs() < 1e-10 && f(r.hi).abs() < 1e-10);
}

#[test]
fn single_precision_qaxis() {
    let g = Geometry::<f32>::unit();
    let p = p_from_chi(0.25f32, &g);
    assert!((chi_from_p(p, &g).unwrap() - 0.25).abs() < 1e-5);
    assert!((manipulability(0.5f32) - 0.5).abs() < 1e-6);
}

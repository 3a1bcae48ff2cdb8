use orthoglide::kinematics::{
    branch_index, classify_cartesian_point, direct_kinematics, inverse_jacobian, inverse_jacobian_det,
    inverse_kinematics, CartesianPoint, ConfigIndices, Geometry, JointVector, PointClass, Sign,
};
use orthoglide::linalg::det3;
use proptest::prelude::*;

fn ball_point() -> impl Strategy<Value = CartesianPoint<f64>> {
    (-0.95f64..0.95, -0.95f64..0.95, -0.95f64..0.95)
        .prop_map(|(x, y, z)| CartesianPoint::new(x, y, z))
        .prop_filter("inside the unit ball, clear of the border", |p| p.norm() < 0.97)
}

/// Points on the design branch, away from serial and flat singularities.
fn regular_point() -> impl Strategy<Value = CartesianPoint<f64>> {
    ball_point().prop_filter("regular configuration", |p| {
        let g = Geometry::unit();
        match inverse_kinematics(p, &ConfigIndices::default(), &g) {
            Ok(r) => {
                let e = p.x / r.x + p.y / r.y + p.z / r.z - 1.0;
                e < -1e-3 && r.to_array().iter().zip(p.to_array()).all(|(a, b)| (a - b).abs() > 1e-3)
            }
            Err(_) => false,
        }
    })
}

fn ik(p: &CartesianPoint<f64>) -> JointVector<f64> {
    inverse_kinematics(p, &ConfigIndices::default(), &Geometry::unit()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ik_fk_round_trip(p in regular_point()) {
        let g = Geometry::unit();
        let r = ik(&p);
        let m = branch_index(&r, &p).unwrap();
        let q = direct_kinematics(&r, m, &g).unwrap();
        for (a, b) in p.to_array().iter().zip(q.to_array()) {
            prop_assert!((a - b).abs() < 1e-10, "{p:?} -> {q:?}");
        }
        prop_assert!(g.closure_residuals(&p, &r).iter().all(|e| e.abs() < 1e-9));
    }

    #[test]
    fn fk_output_has_requested_branch(p in regular_point()) {
        let g = Geometry::unit();
        let r = ik(&p);
        let q = direct_kinematics(&r, Sign::Minus, &g).unwrap();
        prop_assert_eq!(branch_index(&r, &q).unwrap(), Sign::Minus);
        prop_assert!(g.closure_residuals(&q, &r).iter().all(|e| e.abs() < 1e-9));
    }

    #[test]
    fn jacobian_matches_finite_differences(p in regular_point()) {
        let r = ik(&p);
        let j = inverse_jacobian(&p, &r).unwrap();
        let h = 1e-6;
        for col in 0..3 {
            let mut a = p.to_array();
            let mut b = p.to_array();
            a[col] += h;
            b[col] -= h;
            let ra = ik(&CartesianPoint::from_array(a)).to_array();
            let rb = ik(&CartesianPoint::from_array(b)).to_array();
            for row in 0..3 {
                let fd = (ra[row] - rb[row]) / (2.0 * h);
                let scale = j[row][col].abs().max(1.0);
                prop_assert!((fd - j[row][col]).abs() / scale < 1e-5, "({row},{col}) {fd} vs {}", j[row][col]);
            }
        }
    }

    #[test]
    fn determinant_matches_numeric(p in regular_point()) {
        let r = ik(&p);
        let closed = inverse_jacobian_det(&p, &r).unwrap();
        let numeric = det3(&inverse_jacobian(&p, &r).unwrap());
        prop_assert!((closed - numeric).abs() <= 1e-10 * numeric.abs().max(1e-3));
    }

    #[test]
    fn determinant_bounded_by_one_in_first_octant(p in regular_point()) {
        let q = CartesianPoint::new(p.x.abs(), p.y.abs(), p.z.abs());
        prop_assume!(q.norm() < 0.97);
        let r = ik(&q);
        prop_assume!(q.x / r.x + q.y / r.y + q.z / r.z < 1.0);
        let det = inverse_jacobian_det(&q, &r).unwrap().abs();
        let off_axis = [q.x * q.y, q.y * q.z, q.x * q.z].iter().any(|&v| v > 1e-6);
        prop_assert!(det <= 1.0 + 1e-12);
        if off_axis {
            prop_assert!(det < 1.0);
        }
    }

    #[test]
    fn ik_signs_follow_indices(p in ball_point(), sx: bool, sy: bool, sz: bool) {
        let s = |b: bool| if b { Sign::Plus } else { Sign::Minus };
        let idx = ConfigIndices::legs(s(sx), s(sy), s(sz));
        if let Ok(r) = inverse_kinematics(&p, &idx, &Geometry::unit()) {
            let d = [r.x - p.x, r.y - p.y, r.z - p.z];
            for (v, b) in d.iter().zip([sx, sy, sz]) {
                prop_assert_eq!(*v > 0.0, b);
            }
        }
    }

    #[test]
    fn joint_stroke_flags_outside_points(p in ball_point()) {
        let g = Geometry::unit();
        let r = ik(&p);
        let feasible = r.to_array().iter().all(|&v| v > 0.0 && v <= 2.0);
        prop_assert_eq!(r.within_stroke(&g), feasible);
    }
}

/// Counts real, stroke-feasible inverse solutions over all eight sign combinations.
fn solution_count(p: &CartesianPoint<f64>) -> usize {
    let g = Geometry::unit();
    let mut n = 0;
    for bits in 0..8u8 {
        let s = |k: u8| if bits & (1 << k) != 0 { Sign::Plus } else { Sign::Minus };
        let idx = ConfigIndices::legs(s(0), s(1), s(2));
        if let Ok(r) = inverse_kinematics(p, &idx, &g) {
            if r.within_stroke(&g) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn classification_agrees_with_solution_enumeration() {
    let g = Geometry::unit();
    let steps = 25;
    for i in 0..steps {
        for j in 0..steps {
            for k in 0..steps {
                let c = |v: usize| -1.2 + 2.4 * v as f64 / (steps - 1) as f64 + 0.0123;
                let p = CartesianPoint::new(c(i), c(j), c(k));
                match classify_cartesian_point(&p, &g) {
                    PointClass::UniqueIk => assert_eq!(solution_count(&p), 1, "{p:?}"),
                    PointClass::EightIk => assert_eq!(solution_count(&p), 8, "{p:?}"),
                    PointClass::OutsideWorkspace => assert!(solution_count(&p) == 0 || p.norm() > 1.0, "{p:?}"),
                    PointClass::SerialSingular => {}
                }
            }
        }
    }
    assert_eq!(solution_count(&CartesianPoint::splat(0.6)), 8);
}

#[test]
fn determinant_is_one_along_coordinate_axes() {
    for z in [-0.6, -0.2, 0.3, 0.7] {
        let p = CartesianPoint::new(0.0, 0.0, z);
        assert!((inverse_jacobian_det(&p, &ik(&p)).unwrap() - 1.0).abs() < 1e-12);
    }
    let p = CartesianPoint::new(0.3, -0.3, 0.0);
    assert!(inverse_jacobian_det(&p, &ik(&p)).unwrap() > 1.0);
}

#[test]
fn single_precision_kinematics() {
    let g = Geometry::<f32>::unit();
    let p = CartesianPoint::new(-0.2f32, 0.1, 0.25);
    let r = inverse_kinematics(&p, &ConfigIndices::default(), &g).unwrap();
    let det = inverse_jacobian_det(&p, &r).unwrap();
    let num = det3(&inverse_jacobian(&p, &r).unwrap());
    assert!((det - num).abs() < 1e-5);
}

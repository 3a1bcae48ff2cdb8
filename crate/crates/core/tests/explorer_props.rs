use orthoglide::explorer::{
    contour_data, offset_sensitivity, singularity_free_volume, Clipping, ContourKind, SampleRegion, VolumeExplorer,
};
use orthoglide::synthesis::{scale, strategy1};
use orthoglide::{DexterityBound, LengthUnit};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn volume_estimates_do_not_depend_on_thread_count() {
    let bound = DexterityBound::SymmetricFactor(0.5);
    let run = |t: usize| {
        pool(t).install(|| {
            let ex = VolumeExplorer::<f64>::new(1000, 1e-3, Clipping::Workspace).unwrap();
            let v = ex.dextrous_volume(&bound).unwrap();
            let mc = singularity_free_volume::<f64>(1_000_000, 3, SampleRegion::Ball).unwrap();
            (v.fraction.to_bits(), mc.fraction.to_bits())
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn tighter_bounds_shrink_every_ray() {
    let ex = VolumeExplorer::<f64>::new(1000, 1e-4, Clipping::Workspace).unwrap();
    let loose = ex.radii(&DexterityBound::SymmetricFactor(0.2));
    let tight = ex.radii(&DexterityBound::SymmetricFactor(0.5));
    for (a, b) in loose.iter().zip(&tight) {
        assert!(b <= &(a + 1e-4));
    }
    let fl = ex.dextrous_volume(&DexterityBound::SymmetricFactor(0.2)).unwrap().fraction;
    let ft = ex.dextrous_volume(&DexterityBound::SymmetricFactor(0.5)).unwrap().fraction;
    assert!(ft <= fl);
}

#[test]
fn offset_degradation_is_monotone() {
    let d = scale(&strategy1(0.5f64).unwrap(), 200.0, LengthUnit::Millimeter).unwrap();
    let zero = offset_sensitivity(&d, 0.0).unwrap();
    assert!((zero.min - d.mu_cube.min).abs() < 1e-9 && (zero.max - d.mu_cube.max).abs() < 1e-9);
    let mut width = 0.0;
    for k in 0..=10 {
        let r = offset_sensitivity(&d, k as f64).unwrap();
        assert!(r.width() >= width - 1e-12, "offset {k} mm");
        width = r.width();
    }
}

#[test]
fn contour_grid_respects_loci() {
    let rows = contour_data::<f64>(12).unwrap();
    let grid: Vec<_> = rows.iter().filter(|r| matches!(r.kind, ContourKind::Grid { .. })).collect();
    assert_eq!(grid.len(), 144);
    for r in &grid {
        assert!(r.mu_min > 0.0 && r.mu_min <= 1.0 && r.mu_max >= 1.0);
    }
    assert!(rows.len() > grid.len());
}

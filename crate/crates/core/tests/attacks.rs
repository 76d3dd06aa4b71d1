use maskmark_core::attacks::{gaussian_noise, hist_eq, jpeg_sim, median3, salt_pepper, AttackSpec};
use maskmark_core::metrics::mse;
use maskmark_core::{fixtures, Raster};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_raster(seed: u64, w: usize, h: usize) -> Raster {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Raster::new(w, h, (0..w * h).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap()
}

#[test]
fn median_matches_naive_oracle() {
    let r = random_raster(3, 16, 16);
    let out = median3(&r);
    for y in 0..16i64 {
        for x in 0..16i64 {
            let mut v = Vec::new();
            for dy in -1..=1 {
                for dx in -1..=1 {
                    v.push(r.get((x + dx).clamp(0, 15) as usize, (y + dy).clamp(0, 15) as usize));
                }
            }
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(out.get(x as usize, y as usize), v[4]);
        }
    }
}

/// Chi-square against a flat histogram over 16 coarse bins. Equalization
/// cannot create new 8-bit levels, so flatness shows at coarse binning.
fn chi2_vs_uniform(r: &Raster) -> f64 {
    let mut hist = [0f64; 16];
    for &v in r.data() {
        hist[(v * 255.0).round() as usize / 16] += 1.0;
    }
    let expect = r.data().len() as f64 / 16.0;
    hist.iter().map(|h| (h - expect).powi(2) / expect).sum()
}

#[test]
fn hist_eq_flattens_and_is_monotone() {
    for f in fixtures::corpus() {
        let out = hist_eq(&f.host);
        assert!(chi2_vs_uniform(&out) <= chi2_vs_uniform(&f.host), "{}", f.name);
        let mut pairs: Vec<(f64, f64)> = f.host.data().iter().cloned().zip(out.data().iter().cloned()).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!(pairs.windows(2).all(|w| w[0].1 <= w[1].1));
    }
}

#[test]
fn jpeg_distortion_grows_as_quality_drops() {
    for f in fixtures::corpus() {
        let mut last = 0.0;
        for q in [90, 80, 70, 50, 30] {
            let d = mse(&f.host, &jpeg_sim(&f.host, q).unwrap()).unwrap();
            assert!(d >= last, "{} q={q}", f.name);
            last = d;
        }
    }
}

#[test]
fn attacks_preserve_shape_range_and_are_reproducible() {
    let r = random_raster(8, 64, 48);
    for spec in AttackSpec::table_rows(99) {
        let a = spec.apply(&r).unwrap();
        let b = spec.apply(&r).unwrap();
        assert!(a.same_shape(&r));
        assert!(a.data().iter().all(|v| (0.0..=1.0).contains(v)));
        assert!(a.data().iter().zip(b.data()).all(|(p, q)| p.to_bits() == q.to_bits()), "{spec}");
    }
    assert_ne!(gaussian_noise(&r, 0.01, 1).unwrap(), gaussian_noise(&r, 0.01, 2).unwrap());
    assert_ne!(salt_pepper(&r, 0.05, 1).unwrap(), salt_pepper(&r, 0.05, 2).unwrap());
}

#[test]
fn gaussian_noise_frozen_values() {
    // pins the generator: SplitMix64 keyed by (seed, pixel, draw) + Box-Muller
    let r = Raster::filled(4, 1, 0.5).unwrap();
    let a = gaussian_noise(&r, 0.01, 42).unwrap();
    let b = gaussian_noise(&Raster::filled(8, 1, 0.5).unwrap(), 0.01, 42).unwrap();
    assert_eq!(a.data(), &b.data()[..4]);
}

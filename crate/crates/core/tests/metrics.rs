use maskmark_core::metrics::{ber, nc_literal, nc_normalized, psnr, ssim, SsimParams};
use maskmark_core::{Logo, Raster};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn direct_ssim(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let va = a.iter().map(|x| (x - ma).powi(2)).sum::<f64>() / n;
    let vb = b.iter().map(|x| (x - mb).powi(2)).sum::<f64>() / n;
    let cov = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / n;
    let (c1, c2) = (0.01f64.powi(2), 0.03f64.powi(2));
    ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2))
}

#[test]
fn ssim_global_matches_direct_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let a: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let b: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let got = ssim(&Raster::new(4, 4, a.clone()).unwrap(), &Raster::new(4, 4, b.clone()).unwrap(), &SsimParams::global())
            .unwrap();
        assert!((got - direct_ssim(&a, &b)).abs() <= 1e-12);
    }
}

#[test]
fn ssim_sliding_matches_window_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (w, h) = (19, 12);
    let a = Raster::new(w, h, (0..w * h).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap();
    let b = Raster::new(w, h, a.data().iter().map(|v| (v + rng.gen_range(-0.1..0.1)).clamp(0.0, 1.0)).collect()).unwrap();
    let mut total = 0.0;
    let mut count = 0;
    for y in 0..=h - 8 {
        for x in 0..=w - 8 {
            total += direct_ssim(&a.crop(x, y, 8, 8).unwrap(), &b.crop(x, y, 8, 8).unwrap());
            count += 1;
        }
    }
    let got = ssim(&a, &b, &SsimParams::default()).unwrap();
    assert!((got - total / count as f64).abs() <= 1e-12);
    assert_eq!(got, ssim(&b, &a, &SsimParams::default()).unwrap());
}

#[test]
fn hand_evaluated_4x4_pair() {
    // a = 0..15 / 15, b = a with the last half raised by 0.1
    let a: Vec<f64> = (0..16).map(|i| i as f64 / 15.0).collect();
    let b: Vec<f64> = a.iter().enumerate().map(|(i, v)| if i >= 8 { (v + 0.1f64).min(1.0) } else { *v }).collect();
    let got = ssim(&Raster::new(4, 4, a.clone()).unwrap(), &Raster::new(4, 4, b.clone()).unwrap(), &SsimParams::global())
        .unwrap();
    assert!((got - direct_ssim(&a, &b)).abs() <= 1e-12);
    assert!(got < 1.0 && got > 0.9);
}

#[test]
fn logo_metrics_match_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let w = Logo::from_bits(std::array::from_fn(|_| rng.gen_range(0..=1))).unwrap();
        let v = Logo::from_bits(std::array::from_fn(|_| rng.gen_range(0..=1))).unwrap();
        let mut prod = 0.0;
        let mut xor = 0.0;
        let (mut nw, mut nv) = (0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (w.bits()[i * 4 + j] as f64, v.bits()[i * 4 + j] as f64);
                prod += a * b;
                xor += if a != b { 1.0 } else { 0.0 };
                nw += a * a;
                nv += b * b;
            }
        }
        assert!((nc_literal(&w, &v) - prod / 16.0).abs() <= 1e-12);
        assert!((ber(&w, &v) - xor / 16.0).abs() <= 1e-12);
        assert_eq!(ber(&w, &v), ber(&v, &w));
        if nw > 0.0 && nv > 0.0 {
            let nc = nc_normalized(&w, &v).unwrap();
            assert!((nc - prod / (nw * nv).sqrt()).abs() <= 1e-12);
            assert!((0.0..=1.0).contains(&nc));
        }
    }
}

#[test]
fn psnr_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = Raster::new(8, 8, (0..64).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap();
    let b = Raster::new(8, 8, (0..64).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap();
    assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
}

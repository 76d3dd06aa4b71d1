//! Signal-processing attacks used for robustness testing.
//!
//! Stochastic attacks draw per-pixel randomness from a counter-based
//! SplitMix64 stream keyed by `(seed, pixel index, draw)`, so results are
//! identical across platforms and independent of evaluation order.
//! Gaussian samples use the Box-Muller cosine branch.

use std::fmt;

use crate::error::{Error, Result};
use crate::raster_io::Raster;
use crate::transforms::{dct2, idct2, DctBlock};

pub const DEFAULT_SALT_PEPPER_DENSITY: f64 = 0.05;

/// ITU-T T.81 Annex K luminance quantization table, row-major.
pub const JPEG_LUMA_TABLE: [u16; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AttackSpec {
    Gaussian { variance: f64, seed: u64 },
    SaltPepper { density: f64, seed: u64 },
    Median3,
    HistEq,
    Jpeg { quality: u8 },
}

impl AttackSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            AttackSpec::Gaussian { variance, .. } if !(variance > 0.0 && variance.is_finite()) => {
                Err(Error::Validation(format!("variance {variance} must be positive")))
            }
            AttackSpec::SaltPepper { density, .. } if !(density > 0.0 && density <= 1.0) => {
                Err(Error::Validation(format!("density {density} outside (0, 1]")))
            }
            AttackSpec::Jpeg { quality } if !(1..=100).contains(&quality) => {
                Err(Error::Validation(format!("quality {quality} outside 1..=100")))
            }
            _ => Ok(()),
        }
    }

    pub fn apply(&self, r: &Raster) -> Result<Raster> {
        self.validate()?;
        match *self {
            AttackSpec::Gaussian { variance, seed } => gaussian_noise(r, variance, seed),
            AttackSpec::SaltPepper { density, seed } => salt_pepper(r, density, seed),
            AttackSpec::Median3 => Ok(median3(r)),
            AttackSpec::HistEq => Ok(hist_eq(r)),
            AttackSpec::Jpeg { quality } => jpeg_sim(r, quality),
        }
    }

    /// Short kind name as used on the command line.
    pub fn kind(&self) -> &'static str {
        match self {
            AttackSpec::Gaussian { .. } => "gaussian",
            AttackSpec::SaltPepper { .. } => "salt_pepper",
            AttackSpec::Median3 => "median3",
            AttackSpec::HistEq => "histeq",
            AttackSpec::Jpeg { .. } => "jpeg",
        }
    }

    /// The nine robustness rows: GN 0.01/0.02/0.03, JC 90/80/70, MF, HE, S&P.
    pub fn table_rows(seed: u64) -> Vec<AttackSpec> {
        vec![
            AttackSpec::Gaussian { variance: 0.01, seed },
            AttackSpec::Gaussian { variance: 0.02, seed },
            AttackSpec::Gaussian { variance: 0.03, seed },
            AttackSpec::Jpeg { quality: 90 },
            AttackSpec::Jpeg { quality: 80 },
            AttackSpec::Jpeg { quality: 70 },
            AttackSpec::Median3,
            AttackSpec::HistEq,
            AttackSpec::SaltPepper {
                density: DEFAULT_SALT_PEPPER_DENSITY,
                seed,
            },
        ]
    }
}

impl fmt::Display for AttackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackSpec::Gaussian { variance, .. } => write!(f, "GN {variance}"),
            AttackSpec::SaltPepper { density, .. } => write!(f, "S&P {density}"),
            AttackSpec::Median3 => f.write_str("MF 3x3"),
            AttackSpec::HistEq => f.write_str("HE"),
            AttackSpec::Jpeg { quality } => write!(f, "JC {quality}"),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in `(0, 1]` for `(seed, pixel, draw)`.
pub fn uniform(seed: u64, pixel: u64, draw: u64) -> f64 {
    let bits = splitmix64(splitmix64(seed) ^ pixel.wrapping_mul(4).wrapping_add(draw));
    ((bits >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal draw for `(seed, pixel)`.
pub fn standard_normal(seed: u64, pixel: u64) -> f64 {
    let u1 = uniform(seed, pixel, 0);
    let u2 = uniform(seed, pixel, 1);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Adds zero-mean Gaussian noise of the given variance (on the `[0, 1]`
/// scale) and clamps.
pub fn gaussian_noise(r: &Raster, variance: f64, seed: u64) -> Result<Raster> {
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::Validation(format!("variance {variance} must be positive")));
    }
    let sd = variance.sqrt();
    let data = r
        .data()
        .iter()
        .enumerate()
        .map(|(i, &v)| v + sd * standard_normal(seed, i as u64))
        .collect();
    Raster::from_clamped(r.width(), r.height(), data)
}

/// Replaces each pixel with probability `density` by 0 or 1 (equally likely).
pub fn salt_pepper(r: &Raster, density: f64, seed: u64) -> Result<Raster> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Validation(format!("density {density} outside (0, 1]")));
    }
    let data = r
        .data()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let i = i as u64;
            // uniform() is in (0, 1]; `<= density` makes density 1 hit every pixel
            if uniform(seed, i, 2) <= density {
                if uniform(seed, i, 3) <= 0.5 {
                    0.0
                } else {
                    1.0
                }
            } else {
                v
            }
        })
        .collect();
    Raster::new(r.width(), r.height(), data)
}

/// 3×3 median with edge replication.
pub fn median3(r: &Raster) -> Raster {
    let (w, h) = (r.width(), r.height());
    let mut data = Vec::with_capacity(w * h);
    let mut window = [0.0f64; 9];
    for y in 0..h {
        for x in 0..w {
            let mut k = 0;
            for dy in [-1isize, 0, 1] {
                let yy = (y as isize + dy).clamp(0, h as isize - 1) as usize;
                for dx in [-1isize, 0, 1] {
                    let xx = (x as isize + dx).clamp(0, w as isize - 1) as usize;
                    window[k] = r.get(xx, yy);
                    k += 1;
                }
            }
            window.sort_unstable_by(f64::total_cmp);
            data.push(window[4]);
        }
    }
    Raster::new(w, h, data).expect("median of valid samples is valid")
}

/// Maps each 8-bit level `l` to the cumulative fraction of pixels at or
/// below `l`.
pub fn hist_eq(r: &Raster) -> Raster {
    let levels: Vec<usize> = r.data().iter().map(|&v| (v * 255.0).round() as usize).collect();
    let mut hist = [0usize; 256];
    for &l in &levels {
        hist[l] += 1;
    }
    let total = levels.len() as f64;
    let mut cdf = [0.0f64; 256];
    let mut acc = 0usize;
    for (c, &n) in cdf.iter_mut().zip(&hist) {
        acc += n;
        *c = acc as f64 / total;
    }
    Raster::new(r.width(), r.height(), levels.iter().map(|&l| cdf[l]).collect())
        .expect("cdf values lie in [0, 1]")
}

/// Quality-scaled quantization table (IJG convention).
pub fn scaled_luma_table(quality: u8) -> Result<[u16; 64]> {
    if !(1..=100).contains(&quality) {
        return Err(Error::Validation(format!("quality {quality} outside 1..=100")));
    }
    let q = u32::from(quality);
    let scale = if q < 50 { 5000 / q } else { 200 - 2 * q };
    Ok(JPEG_LUMA_TABLE.map(|entry| ((u32::from(entry) * scale + 50) / 100).clamp(1, 255) as u16))
}

/// Lossy part of baseline JPEG on the luminance plane: level shift,
/// 8×8 DCT, quantize/dequantize, inverse. Entropy coding is lossless and
/// omitted.
pub fn jpeg_sim(r: &Raster, quality: u8) -> Result<Raster> {
    let (w, h) = (r.width(), r.height());
    if w % 8 != 0 || h % 8 != 0 {
        return Err(Error::Shape(format!("jpeg_sim needs sides divisible by 8, got {w}x{h}")));
    }
    let table = scaled_luma_table(quality)?;
    let mut out = vec![0.0; w * h];
    for by in (0..h).step_by(8) {
        for bx in (0..w).step_by(8) {
            let mut tile = [0.0; 64];
            for (i, t) in tile.iter_mut().enumerate() {
                *t = r.get(bx + i % 8, by + i / 8) * 255.0 - 128.0;
            }
            let DctBlock(mut coeffs) = dct2(&tile);
            for (c, &q) in coeffs.iter_mut().zip(&table) {
                let q = f64::from(q);
                *c = (*c / q).round() * q;
            }
            let spatial = idct2(&DctBlock(coeffs));
            for (i, &s) in spatial.iter().enumerate() {
                out[(by + i / 8) * w + bx + i % 8] = (s + 128.0) / 255.0;
            }
        }
    }
    Raster::from_clamped(w, h, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp(w: usize, h: usize) -> Raster {
        let data = (0..w * h).map(|i| ((i * 7919) % 1000) as f64 / 999.0).collect();
        Raster::new(w, h, data).unwrap()
    }

    #[test]
    fn uniform_range_and_determinism() {
        for i in 0..10_000 {
            let u = uniform(42, i, 0);
            assert!(u > 0.0 && u <= 1.0);
            assert_eq!(u, uniform(42, i, 0));
        }
        assert_ne!(uniform(1, 0, 0), uniform(2, 0, 0));
        assert_ne!(uniform(1, 0, 0), uniform(1, 0, 1));
    }

    #[test]
    fn tiny_variance_is_identity() {
        let r = ramp(16, 16);
        let out = gaussian_noise(&r, 1e-30, 3).unwrap();
        for (a, b) in r.data().iter().zip(out.data()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn gaussian_sample_variance() {
        // 0.5 +- 5 sd never clips at variance 0.01, so the clamp is inert
        let r = Raster::filled(256, 256, 0.5).unwrap();
        let out = gaussian_noise(&r, 0.01, 7).unwrap();
        let n = out.data().len() as f64;
        let diffs: Vec<f64> = out.data().iter().map(|v| v - 0.5).collect();
        let mean = diffs.iter().sum::<f64>() / n;
        let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((var - 0.01).abs() <= 0.001, "{var}");
        assert!(mean.abs() < 0.002);
    }

    #[test]
    fn salt_pepper_fraction() {
        let r = Raster::filled(256, 256, 0.5).unwrap();
        let p = 0.05;
        let out = salt_pepper(&r, p, 11).unwrap();
        let n = out.data().len() as f64;
        let hit = out.data().iter().filter(|&&v| v != 0.5).count() as f64;
        let sigma = (n * p * (1.0 - p)).sqrt();
        assert!((hit - n * p).abs() <= 3.0 * sigma, "{hit}");
        let salt = out.data().iter().filter(|&&v| v == 1.0).count() as f64;
        assert!((salt / hit - 0.5).abs() < 0.05);

        let all = salt_pepper(&r, 1.0, 11).unwrap();
        assert!(all.data().iter().all(|&v| v == 0.0 || v == 1.0));
        assert!(salt_pepper(&r, 0.0, 1).is_err());
    }

    #[test]
    fn median_cases() {
        let flat = Raster::filled(5, 5, 0.3).unwrap();
        assert_eq!(median3(&flat), flat);
        let mut data = vec![0.2; 25];
        data[12] = 1.0;
        let spot = Raster::new(5, 5, data).unwrap();
        assert!(median3(&spot).data().iter().all(|&v| v == 0.2));
    }

    #[test]
    fn hist_eq_two_levels() {
        let data: Vec<f64> = (0..64).map(|i| if i % 2 == 0 { 0.25 } else { 0.75 }).collect();
        let out = hist_eq(&Raster::new(8, 8, data.clone()).unwrap());
        for (a, b) in data.iter().zip(out.data()) {
            let want = if *a == 0.25 { 0.5 } else { 1.0 };
            assert_eq!(*b, want);
        }
    }

    #[test]
    fn hist_eq_uniform_is_near_identity() {
        let data: Vec<f64> = (0..256 * 4).map(|i| (i % 256) as f64 / 255.0).collect();
        let r = Raster::new(256, 4, data).unwrap();
        let out = hist_eq(&r);
        for (a, b) in r.data().iter().zip(out.data()) {
            assert!((a - b).abs() <= 1.0 / 255.0);
        }
    }

    #[test]
    fn jpeg_tables() {
        assert_eq!(scaled_luma_table(50).unwrap(), JPEG_LUMA_TABLE);
        assert_eq!(scaled_luma_table(90).unwrap()[0], 3);
        assert_eq!(scaled_luma_table(100).unwrap(), [1; 64]);
        assert_eq!(scaled_luma_table(1).unwrap()[0], 255);
        assert!(scaled_luma_table(0).is_err());
        assert!(scaled_luma_table(101).is_err());
    }

    #[test]
    fn jpeg_constant_within_dc_step() {
        let r = Raster::filled(16, 8, 0.42).unwrap();
        for q in [10, 50, 90] {
            let step = f64::from(scaled_luma_table(q).unwrap()[0]);
            let out = jpeg_sim(&r, q).unwrap();
            // DC error <= step/2 in coefficient units, i.e. step/16 per pixel
            for &v in out.data() {
                assert!((v - 0.42).abs() * 255.0 <= step / 16.0 + 1e-9, "q={q} v={v}");
            }
        }
        assert!(jpeg_sim(&Raster::filled(12, 8, 0.5).unwrap(), 50).is_err());
    }

    #[test]
    fn specs_validate_and_label() {
        assert!(AttackSpec::Gaussian { variance: 0.0, seed: 0 }.validate().is_err());
        assert!(AttackSpec::Jpeg { quality: 0 }.validate().is_err());
        let rows = AttackSpec::table_rows(1);
        let labels: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
        assert_eq!(
            labels,
            ["GN 0.01", "GN 0.02", "GN 0.03", "JC 90", "JC 80", "JC 70", "MF 3x3", "HE", "S&P 0.05"]
        );
    }
}

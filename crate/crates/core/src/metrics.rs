//! Imperceptibility (PSNR, SSIM) and robustness (BER, NC) measures.

use crate::error::{Error, Result};
use crate::raster_io::{Logo, Raster, LOGO_BITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsimWindow {
    /// One window spanning the whole image.
    Global,
    /// Mean over every 8×8 window at stride 1. Images narrower or shorter
    /// than 8 use a window clipped to the image.
    Sliding8,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SsimParams {
    pub window: SsimWindow,
    pub dynamic_range: f64,
    pub k1: f64,
    pub k2: f64,
}

impl Default for SsimParams {
    fn default() -> Self {
        SsimParams {
            window: SsimWindow::Sliding8,
            dynamic_range: 1.0,
            k1: 0.01,
            k2: 0.03,
        }
    }
}

impl SsimParams {
    pub fn global() -> Self {
        SsimParams {
            window: SsimWindow::Global,
            ..Self::default()
        }
    }

    pub fn c1(&self) -> f64 {
        (self.k1 * self.dynamic_range).powi(2)
    }

    pub fn c2(&self) -> f64 {
        (self.k2 * self.dynamic_range).powi(2)
    }
}

fn same_shape(a: &Raster, b: &Raster) -> Result<()> {
    if a.same_shape(b) {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "{}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )))
    }
}

pub fn mse(a: &Raster, b: &Raster) -> Result<f64> {
    same_shape(a, b)?;
    let sse: f64 = a.data().iter().zip(b.data()).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(sse / a.data().len() as f64)
}

/// `10 log10(1 / MSE)` with peak 1.0; `+inf` for identical images.
pub fn psnr(a: &Raster, b: &Raster) -> Result<f64> {
    let m = mse(a, b)?;
    if m == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (1.0 / m).log10())
}

/// SSIM from window moments (sums over `n` samples; population statistics).
fn ssim_from_sums(n: f64, sa: f64, sb: f64, saa: f64, sbb: f64, sab: f64, c1: f64, c2: f64) -> f64 {
    let (ma, mb) = (sa / n, sb / n);
    let va = saa / n - ma * ma;
    let vb = sbb / n - mb * mb;
    let cov = sab / n - ma * mb;
    ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2))
}

pub fn ssim(a: &Raster, b: &Raster, p: &SsimParams) -> Result<f64> {
    same_shape(a, b)?;
    if !(p.c1() > 0.0 && p.c2() > 0.0) {
        return Err(Error::Validation("SSIM constants must be positive".into()));
    }
    let (c1, c2) = (p.c1(), p.c2());
    match p.window {
        SsimWindow::Global => {
            let (mut sa, mut sb, mut saa, mut sbb, mut sab) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for (&x, &y) in a.data().iter().zip(b.data()) {
                sa += x;
                sb += y;
                saa += x * x;
                sbb += y * y;
                sab += x * y;
            }
            let n = a.data().len() as f64;
            Ok(ssim_from_sums(n, sa, sb, saa, sbb, sab, c1, c2))
        }
        SsimWindow::Sliding8 => Ok(sliding_ssim(a, b, c1, c2)),
    }
}

fn sliding_ssim(a: &Raster, b: &Raster, c1: f64, c2: f64) -> f64 {
    let (w, h) = (a.width(), a.height());
    let (ww, wh) = (w.min(8), h.min(8));
    let (nx, ny) = (w - ww + 1, h - wh + 1);
    // horizontal window sums per row: [sa, sb, saa, sbb, sab]
    let mut rows = vec![[0.0f64; 5]; nx * h];
    for y in 0..h {
        for x in 0..nx {
            let mut s = [0.0; 5];
            for k in x..x + ww {
                let (p, q) = (a.get(k, y), b.get(k, y));
                s[0] += p;
                s[1] += q;
                s[2] += p * p;
                s[3] += q * q;
                s[4] += p * q;
            }
            rows[y * nx + x] = s;
        }
    }
    let n = (ww * wh) as f64;
    let mut total = 0.0;
    for y in 0..ny {
        for x in 0..nx {
            let mut s = [0.0; 5];
            for dy in 0..wh {
                for (acc, v) in s.iter_mut().zip(&rows[(y + dy) * nx + x]) {
                    *acc += v;
                }
            }
            total += ssim_from_sums(n, s[0], s[1], s[2], s[3], s[4], c1, c2);
        }
    }
    total / (nx * ny) as f64
}

/// Fraction of differing bits.
pub fn ber(w: &Logo, w2: &Logo) -> f64 {
    let errors = w.bits().iter().zip(w2.bits()).filter(|(a, b)| a != b).count();
    errors as f64 / LOGO_BITS as f64
}

/// Mean of `W(i,j) * W'(i,j)`. A balanced logo scores 0.5 against itself.
pub fn nc_literal(w: &Logo, w2: &Logo) -> f64 {
    let dot: usize = w.bits().iter().zip(w2.bits()).map(|(&a, &b)| usize::from(a * b)).sum();
    dot as f64 / LOGO_BITS as f64
}

/// `sum(W W') / sqrt(sum(W^2) sum(W'^2))`; 1 for a perfect match.
pub fn nc_normalized(w: &Logo, w2: &Logo) -> Result<f64> {
    let dot: usize = w.bits().iter().zip(w2.bits()).map(|(&a, &b)| usize::from(a * b)).sum();
    let (n1, n2) = (w.count_ones(), w2.count_ones());
    if n1 == 0 || n2 == 0 {
        return Err(Error::Undefined("normalized correlation of an all-zero logo".into()));
    }
    Ok(dot as f64 / ((n1 * n2) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(w: usize, h: usize, f: impl Fn(usize) -> f64) -> Raster {
        Raster::new(w, h, (0..w * h).map(f).collect()).unwrap()
    }

    #[test]
    fn psnr_cases() {
        let a = r(8, 8, |i| (i % 5) as f64 / 8.0);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
        let b = r(8, 8, |i| (i % 5) as f64 / 8.0 + 1.0 / 255.0);
        assert!((psnr(&a, &b).unwrap() - 20.0 * 255f64.log10()).abs() < 1e-9);
        assert!((psnr(&a, &b).unwrap() - 48.1308).abs() < 1e-4);
        assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
        assert!(psnr(&a, &r(4, 4, |_| 0.0)).is_err());
    }

    #[test]
    fn ssim_identity_and_constants() {
        let a = r(20, 13, |i| ((i * 37) % 17) as f64 / 16.0);
        for p in [SsimParams::default(), SsimParams::global()] {
            assert!((ssim(&a, &a, &p).unwrap() - 1.0).abs() < 1e-12);
        }
        let c = Raster::filled(9, 9, 0.5).unwrap();
        assert_eq!(ssim(&c, &c, &SsimParams::default()).unwrap(), 1.0);
        let small = r(4, 4, |i| i as f64 / 15.0);
        assert!((ssim(&small, &small, &SsimParams::default()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ber_and_nc() {
        let l = Logo::default();
        assert_eq!(ber(&l, &l), 0.0);
        assert_eq!(ber(&l, &l.complement()), 1.0);
        let mut bits = *l.bits();
        bits[0] ^= 1;
        bits[5] ^= 1;
        assert_eq!(ber(&l, &Logo::from_bits(bits).unwrap()), 0.125);

        assert_eq!(nc_literal(&l, &l), 0.5);
        let zeros = Logo::from_bits([0; 16]).unwrap();
        assert_eq!(nc_literal(&l, &zeros), 0.0);
        assert_eq!(nc_normalized(&l, &l).unwrap(), 1.0);
        assert_eq!(nc_normalized(&l, &l.complement()).unwrap(), 0.0);
        assert!(matches!(nc_normalized(&l, &zeros), Err(Error::Undefined(_))));
    }
}

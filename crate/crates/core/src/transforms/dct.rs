use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DCT_N: usize = 8;

/// Coefficients of an 8×8 DCT-II, stored row-major by (u, v).
///
/// Accessors take 1-based `(u, v)` in `1..=8`, so `get(6, 7)` is the
/// coefficient at zero-based row 5, column 6.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DctBlock(pub [f64; 64]);

impl DctBlock {
    #[inline]
    fn index(u: usize, v: usize) -> usize {
        assert!(
            (1..=DCT_N).contains(&u) && (1..=DCT_N).contains(&v),
            "DCT index ({u},{v}) outside 1..=8"
        );
        (u - 1) * DCT_N + (v - 1)
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.0[Self::index(u, v)]
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, value: f64) {
        self.0[Self::index(u, v)] = value;
    }

    pub fn coefficients(&self) -> &[f64; 64] {
        &self.0
    }
}

/// `basis[u][x] = s(u) * cos((2x + 1) u π / 16)`, zero-based u.
fn basis() -> &'static [[f64; DCT_N]; DCT_N] {
    static BASIS: OnceLock<[[f64; DCT_N]; DCT_N]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut m = [[0.0; DCT_N]; DCT_N];
        for (u, row) in m.iter_mut().enumerate() {
            let s = if u == 0 {
                (1.0 / DCT_N as f64).sqrt()
            } else {
                (2.0 / DCT_N as f64).sqrt()
            };
            for (x, v) in row.iter_mut().enumerate() {
                *v = s * (((2 * x + 1) * u) as f64 * std::f64::consts::PI / (2 * DCT_N) as f64).cos();
            }
        }
        m
    })
}

/// Orthonormal separable 2-D DCT-II. Input is row-major, first index is
/// the row (the `u` direction).
pub fn dct2(spatial: &[f64; 64]) -> DctBlock {
    let c = basis();
    // rows first: tmp[y][v] = sum_x c[v][x] * s[y][x]
    let mut tmp = [0.0; 64];
    for y in 0..DCT_N {
        for v in 0..DCT_N {
            tmp[y * DCT_N + v] = (0..DCT_N).map(|x| c[v][x] * spatial[y * DCT_N + x]).sum();
        }
    }
    let mut out = [0.0; 64];
    for u in 0..DCT_N {
        for v in 0..DCT_N {
            out[u * DCT_N + v] = (0..DCT_N).map(|y| c[u][y] * tmp[y * DCT_N + v]).sum();
        }
    }
    DctBlock(out)
}

pub fn idct2(block: &DctBlock) -> [f64; 64] {
    let c = basis();
    let coeffs = &block.0;
    let mut tmp = [0.0; 64];
    for y in 0..DCT_N {
        for v in 0..DCT_N {
            tmp[y * DCT_N + v] = (0..DCT_N).map(|u| c[u][y] * coeffs[u * DCT_N + v]).sum();
        }
    }
    let mut out = [0.0; 64];
    for y in 0..DCT_N {
        for x in 0..DCT_N {
            out[y * DCT_N + x] = (0..DCT_N).map(|v| c[v][x] * tmp[y * DCT_N + v]).sum();
        }
    }
    out
}

/// [`dct2`] over a slice, checking it holds exactly 64 values.
pub fn dct2_slice(spatial: &[f64]) -> Result<DctBlock> {
    let arr: &[f64; 64] = spatial
        .try_into()
        .map_err(|_| Error::Shape(format!("DCT needs 64 samples, got {}", spatial.len())))?;
    Ok(dct2(arr))
}

//! Orthonormal 2-D Haar wavelet and 8×8 DCT-II, both with exact inverses.

mod dct;
mod haar;

pub use dct::{dct2, dct2_slice, idct2, DctBlock, DCT_N};
pub use haar::{dwt2, dwt2_two_level, idwt2, idwt2_two_level, Details, SubbandPyramid, Subbands};

use crate::error::{Error, Result};

/// Row-major 2-D array of coefficients or samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Grid {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::Shape(format!(
                "grid {width}x{height} needs {} values, got {}",
                width * height,
                data.len()
            )));
        }
        Ok(Grid {
            width,
            height,
            data,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Grid {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    pub fn energy(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// The 8×8 tile with top-left corner `(x0, y0)`.
    pub fn tile8(&self, x0: usize, y0: usize) -> [f64; 64] {
        let mut t = [0.0; 64];
        for (r, row) in t.chunks_exact_mut(DCT_N).enumerate() {
            let src = (y0 + r) * self.width + x0;
            row.copy_from_slice(&self.data[src..src + DCT_N]);
        }
        t
    }

    pub fn put_tile8(&mut self, x0: usize, y0: usize, tile: &[f64; 64]) {
        for (r, row) in tile.chunks_exact(DCT_N).enumerate() {
            let dst = (y0 + r) * self.width + x0;
            self.data[dst..dst + DCT_N].copy_from_slice(row);
        }
    }
}

//! Image, mask, logo and side-information files.
//!
//! Images live in memory as [`Raster`]s of `f64` intensities in `[0, 1]`.
//! On disk everything is netpbm (binary PGM/PPM) or small UTF-8 text files,
//! so every round trip is bit-exact.

mod keyvalue;
mod logo;
mod manifest;
mod pnm;
mod resize;
mod sideinfo;

pub use keyvalue::KeyValues;
pub use logo::{load_logo, parse_logo, save_logo, Logo, LOGO_BITS, LOGO_COLS, LOGO_ROWS};
pub use manifest::MaskManifest;
pub use pnm::{
    decode_image, decode_mask, encode_image, encode_mask, load_image, load_mask, save_image,
    save_mask, Depth,
};
pub use resize::resize_bilinear;
pub use sideinfo::{read_sideinfo, write_sideinfo, SideInfo, BLOCK_COUNT, SELECTED_BLOCKS, SIDEINFO_VERSION};

use crate::error::{Error, Result};

/// Row-major grayscale image with samples in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Raster {
    /// Builds a raster, rejecting wrong lengths and samples outside `[0, 1]`.
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Shape(format!("empty raster {width}x{height}")));
        }
        if data.len() != width * height {
            return Err(Error::Shape(format!(
                "raster {width}x{height} needs {} samples, got {}",
                width * height,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::Validation(format!("sample {bad} outside [0, 1]")));
        }
        Ok(Raster {
            width,
            height,
            data,
        })
    }

    /// Builds a raster after clamping every sample into `[0, 1]`.
    /// NaN samples become 0.
    pub fn from_clamped(width: usize, height: usize, mut data: Vec<f64>) -> Result<Self> {
        for s in &mut data {
            *s = if s.is_nan() { 0.0 } else { s.clamp(0.0, 1.0) };
        }
        Raster::new(width, height, data)
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Raster::new(width, height, vec![value; width * height])
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

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    pub fn same_shape(&self, other: &Raster) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Copies out the `w`×`h` window whose top-left corner is `(x0, y0)`.
    pub fn crop(&self, x0: usize, y0: usize, w: usize, h: usize) -> Result<Vec<f64>> {
        if x0 + w > self.width || y0 + h > self.height {
            return Err(Error::Shape(format!(
                "window {w}x{h}@({x0},{y0}) outside {}x{}",
                self.width, self.height
            )));
        }
        let mut out = Vec::with_capacity(w * h);
        for y in y0..y0 + h {
            let row = y * self.width;
            out.extend_from_slice(&self.data[row + x0..row + x0 + w]);
        }
        Ok(out)
    }

    /// Writes a `w`×`h` window back at `(x0, y0)`, clamping into `[0, 1]`.
    pub fn paste_clamped(&mut self, x0: usize, y0: usize, w: usize, h: usize, window: &[f64]) {
        assert_eq!(window.len(), w * h, "window length mismatch");
        assert!(x0 + w <= self.width && y0 + h <= self.height, "window out of bounds");
        for (dy, src) in window.chunks_exact(w).enumerate() {
            let row = (y0 + dy) * self.width + x0;
            for (dst, &s) in self.data[row..row + w].iter_mut().zip(src) {
                *dst = if s.is_nan() { 0.0 } else { s.clamp(0.0, 1.0) };
            }
        }
    }
}

/// Per-pixel class membership, strictly 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::Shape(format!(
                "mask {width}x{height} with {} samples",
                data.len()
            )));
        }
        if data.iter().any(|&v| v > 1) {
            return Err(Error::Validation("mask values must be 0 or 1".into()));
        }
        Ok(BinaryMask {
            width,
            height,
            data,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        BinaryMask {
            width,
            height,
            data: vec![0; width * height],
        }
    }

    /// Marks every pixel for which `inside(x, y)` holds.
    pub fn from_fn(width: usize, height: usize, inside: impl Fn(usize, usize) -> bool) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(u8::from(inside(x, y)));
            }
        }
        BinaryMask {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|&v| v as usize).sum()
    }

    /// Mask as a 0.0/1.0 weight field.
    pub fn to_raster(&self) -> Raster {
        Raster {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f64::from(v)).collect(),
        }
    }

    /// Nearest-neighbour rescale; masks stay binary.
    pub fn resize_nearest(&self, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Validation("mask target size must be positive".into()));
        }
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            let sy = ((y as f64 + 0.5) * self.height as f64 / height as f64) as usize;
            let sy = sy.min(self.height - 1);
            for x in 0..width {
                let sx = ((x as f64 + 0.5) * self.width as f64 / width as f64) as usize;
                data.push(self.data[sy * self.width + sx.min(self.width - 1)]);
            }
        }
        BinaryMask::new(width, height, data)
    }
}

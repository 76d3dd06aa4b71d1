use super::Raster;
use crate::error::{Error, Result};

/// Bilinear resampling with half-pixel-centred sample positions
/// (`src = (dst + 0.5) * scale - 0.5`, clamped to the edge pixels).
pub fn resize_bilinear(r: &Raster, width: usize, height: usize) -> Result<Raster> {
    if width == 0 || height == 0 {
        return Err(Error::Validation(format!(
            "resize target {width}x{height} must be positive"
        )));
    }
    if width == r.width() && height == r.height() {
        return Ok(r.clone());
    }
    let xs = axis_taps(r.width(), width);
    let ys = axis_taps(r.height(), height);
    let mut data = Vec::with_capacity(width * height);
    for &(y0, y1, fy) in &ys {
        for &(x0, x1, fx) in &xs {
            let top = r.get(x0, y0) * (1.0 - fx) + r.get(x1, y0) * fx;
            let bottom = r.get(x0, y1) * (1.0 - fx) + r.get(x1, y1) * fx;
            data.push(top * (1.0 - fy) + bottom * fy);
        }
    }
    Raster::from_clamped(width, height, data)
}

fn axis_taps(src: usize, dst: usize) -> Vec<(usize, usize, f64)> {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|i| {
            let pos = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (src - 1) as f64);
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(src - 1);
            (lo, hi, pos - lo as f64)
        })
        .collect()
}

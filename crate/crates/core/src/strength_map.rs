//! Mask-derived embedding map and per-sub-block strength.
//!
//! `M_E(x, y) = k_alpha * (1 - max_i c_i * M_i(x, y))`: strength is full
//! away from objects of interest and drops to `k_alpha * (1 - c_i)` on them.

use crate::error::{Error, Result};
use crate::raster_io::{BinaryMask, Raster};

/// Side of the square blocks the host is tiled into.
pub const BLOCK_SIDE: usize = 128;
/// Blocks per row/column of a 512×512 host.
pub const GRID_SIDE: usize = 4;
pub const HOST_SIDE: usize = BLOCK_SIDE * GRID_SIDE;

/// One row of the class table: a mask and its coefficient `c_i`.
///
/// Weights are usually 0/1 from a [`BinaryMask`], but any values in `[0, 1]`
/// are accepted (e.g. detector confidence maps).
#[derive(Clone, Debug, PartialEq)]
pub struct ClassMaskEntry {
    pub name: String,
    pub weights: Raster,
    pub coefficient: f64,
}

impl ClassMaskEntry {
    pub fn new(name: impl Into<String>, mask: &BinaryMask, coefficient: f64) -> Result<Self> {
        Self::soft(name, mask.to_raster(), coefficient)
    }

    pub fn soft(name: impl Into<String>, weights: Raster, coefficient: f64) -> Result<Self> {
        let name = name.into();
        if !(0.0..=1.0).contains(&coefficient) {
            return Err(Error::Validation(format!(
                "coefficient {coefficient} for class {name:?} outside [0, 1]"
            )));
        }
        Ok(ClassMaskEntry {
            name,
            weights,
            coefficient,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrengthParams {
    pub k_alpha: f64,
    pub classes: Vec<ClassMaskEntry>,
}

impl StrengthParams {
    pub fn new(k_alpha: f64, classes: Vec<ClassMaskEntry>) -> Result<Self> {
        let p = StrengthParams { k_alpha, classes };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_alpha > 0.0 && self.k_alpha <= 1.0) {
            return Err(Error::Validation(format!(
                "k_alpha {} outside (0, 1]",
                self.k_alpha
            )));
        }
        for c in &self.classes {
            if !(0.0..=1.0).contains(&c.coefficient) {
                return Err(Error::Validation(format!(
                    "coefficient {} for class {:?} outside [0, 1]",
                    c.coefficient, c.name
                )));
            }
        }
        Ok(())
    }

    /// `max_i c_i * M_i` per pixel; zero everywhere with no classes.
    pub fn roi_weight(&self, width: usize, height: usize) -> Result<Vec<f64>> {
        let mut w = vec![0.0f64; width * height];
        for class in &self.classes {
            if class.weights.width() != width || class.weights.height() != height {
                return Err(Error::Shape(format!(
                    "mask {:?} is {}x{}, host is {width}x{height}",
                    class.name,
                    class.weights.width(),
                    class.weights.height()
                )));
            }
            for (acc, &m) in w.iter_mut().zip(class.weights.data()) {
                *acc = acc.max(class.coefficient * m);
            }
        }
        Ok(w)
    }
}

/// Axis-aligned pixel rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Footprint {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingMap {
    width: usize,
    height: usize,
    k_alpha: f64,
    data: Vec<f64>,
}

impl EmbeddingMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn k_alpha(&self) -> f64 {
        self.k_alpha
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }
}

pub fn build_embedding_map(params: &StrengthParams, width: usize, height: usize) -> Result<EmbeddingMap> {
    params.validate()?;
    let weight = params.roi_weight(width, height)?;
    let k = params.k_alpha;
    Ok(EmbeddingMap {
        width,
        height,
        k_alpha: k,
        data: weight.into_iter().map(|w| k * (1.0 - w)).collect(),
    })
}

/// Mean of the map over `fp`.
pub fn subblock_strength(map: &EmbeddingMap, fp: Footprint) -> Result<f64> {
    if fp.width == 0 || fp.height == 0 || fp.x + fp.width > map.width || fp.y + fp.height > map.height {
        return Err(Error::Shape(format!(
            "footprint {}x{}@({},{}) outside map {}x{}",
            fp.width, fp.height, fp.x, fp.y, map.width, map.height
        )));
    }
    let mut sum = 0.0;
    for y in fp.y..fp.y + fp.height {
        let row = &map.data[y * map.width + fp.x..y * map.width + fp.x + fp.width];
        sum += row.iter().sum::<f64>();
    }
    Ok(sum / (fp.width * fp.height) as f64)
}

/// Fraction of each 128×128 block covered by a positively weighted mask,
/// row-major over the 4×4 grid.
pub fn roi_density_per_block(params: &StrengthParams) -> Result<[f64; GRID_SIDE * GRID_SIDE]> {
    let weight = params.roi_weight(HOST_SIDE, HOST_SIDE)?;
    let mut counts = [0usize; GRID_SIDE * GRID_SIDE];
    for (i, &w) in weight.iter().enumerate() {
        if w > 0.0 {
            let (x, y) = (i % HOST_SIDE, i / HOST_SIDE);
            counts[(y / BLOCK_SIDE) * GRID_SIDE + x / BLOCK_SIDE] += 1;
        }
    }
    Ok(counts.map(|c| c as f64 / (BLOCK_SIDE * BLOCK_SIDE) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(w: usize, h: usize) -> BinaryMask {
        BinaryMask::from_fn(w, h, |_, _| true)
    }

    #[test]
    fn no_classes_is_uniform_k() {
        let p = StrengthParams::new(0.3, vec![]).unwrap();
        let m = build_embedding_map(&p, 8, 4).unwrap();
        assert!(m.data().iter().all(|&v| v == 0.3));
    }

    #[test]
    fn inside_person_with_unit_coefficient() {
        let person = BinaryMask::from_fn(4, 4, |x, _| x < 2);
        let p = StrengthParams::new(0.7, vec![ClassMaskEntry::new("person", &person, 1.0).unwrap()]).unwrap();
        let m = build_embedding_map(&p, 4, 4).unwrap();
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.get(3, 0), 0.7);
    }

    #[test]
    fn overlapping_classes_take_max() {
        let p = StrengthParams::new(
            1.0,
            vec![
                ClassMaskEntry::new("person", &full(2, 2), 0.5).unwrap(),
                ClassMaskEntry::new("car", &full(2, 2), 0.8).unwrap(),
            ],
        )
        .unwrap();
        let m = build_embedding_map(&p, 2, 2).unwrap();
        assert!(m.data().iter().all(|&v| (v - 0.2).abs() < 1e-15));
    }

    #[test]
    fn invalid_params() {
        assert!(StrengthParams::new(0.0, vec![]).is_err());
        assert!(StrengthParams::new(1.5, vec![]).is_err());
        assert!(ClassMaskEntry::new("x", &full(1, 1), 1.2).is_err());
        let p = StrengthParams::new(0.5, vec![ClassMaskEntry::new("x", &full(3, 3), 1.0).unwrap()]).unwrap();
        assert!(matches!(build_embedding_map(&p, 4, 4), Err(Error::Shape(_))));
    }

    #[test]
    fn strength_means() {
        let p = StrengthParams::new(0.4, vec![]).unwrap();
        let m = build_embedding_map(&p, 64, 64).unwrap();
        let fp = Footprint { x: 5, y: 9, width: 32, height: 32 };
        assert!((subblock_strength(&m, fp).unwrap() - 0.4).abs() < 1e-15);

        let half = BinaryMask::from_fn(64, 64, |x, _| x < 16);
        let p = StrengthParams::new(1.0, vec![ClassMaskEntry::new("car", &half, 1.0).unwrap()]).unwrap();
        let m = build_embedding_map(&p, 64, 64).unwrap();
        let fp = Footprint { x: 0, y: 0, width: 32, height: 32 };
        assert_eq!(subblock_strength(&m, fp).unwrap(), 0.5);
        let out = Footprint { x: 40, y: 0, width: 32, height: 32 };
        assert!(subblock_strength(&m, out).is_err());
    }

    #[test]
    fn densities() {
        let empty = StrengthParams::new(1.0, vec![]).unwrap();
        assert_eq!(roi_density_per_block(&empty).unwrap(), [0.0; 16]);

        // block 6 = grid row 1, col 2
        let m = BinaryMask::from_fn(HOST_SIDE, HOST_SIDE, |x, y| (256..384).contains(&x) && (128..256).contains(&y));
        let p = StrengthParams::new(1.0, vec![ClassMaskEntry::new("car", &m, 1.0).unwrap()]).unwrap();
        let d = roi_density_per_block(&p).unwrap();
        assert_eq!(d[6], 1.0);
        assert_eq!(d.iter().sum::<f64>(), 1.0);

        // zero coefficient: class ignored for ranking as in the map
        let p = StrengthParams::new(1.0, vec![ClassMaskEntry::new("car", &m, 0.0).unwrap()]).unwrap();
        assert_eq!(roi_density_per_block(&p).unwrap(), [0.0; 16]);
    }
}

use super::Grid;
use crate::error::{Error, Result};

/// One level of 2-D Haar analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subbands {
    pub ll: Grid,
    pub lh: Grid,
    pub hl: Grid,
    pub hh: Grid,
}

/// Detail subbands of a level whose approximation was decomposed further.
#[derive(Clone, Debug, PartialEq)]
pub struct Details {
    pub lh: Grid,
    pub hl: Grid,
    pub hh: Grid,
}

/// Two-level decomposition: level-1 details plus the full level-2 split
/// of the level-1 approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct SubbandPyramid {
    pub level1: Details,
    pub level2: Subbands,
}

/// Orthonormal Haar analysis. For each 2×2 tile `{a b; c d}`:
///
/// ```text
/// LL = (a + b + c + d) / 2     LH = (a - b + c - d) / 2
/// HL = (a + b - c - d) / 2     HH = (a - b - c + d) / 2
/// ```
///
/// LH holds left-minus-right (horizontal) differences and HL top-minus-bottom.
pub fn dwt2(block: &Grid) -> Result<Subbands> {
    let (w, h) = (block.width(), block.height());
    if w == 0 || h == 0 || w % 2 != 0 || h % 2 != 0 {
        return Err(Error::Shape(format!("dwt2 needs even sides, got {w}x{h}")));
    }
    let (hw, hh_) = (w / 2, h / 2);
    let mut ll = Vec::with_capacity(hw * hh_);
    let mut lh = Vec::with_capacity(hw * hh_);
    let mut hl = Vec::with_capacity(hw * hh_);
    let mut hh = Vec::with_capacity(hw * hh_);
    let src = block.data();
    for y in 0..hh_ {
        let top = &src[2 * y * w..2 * y * w + w];
        let bottom = &src[(2 * y + 1) * w..(2 * y + 1) * w + w];
        for x in 0..hw {
            let (a, b) = (top[2 * x], top[2 * x + 1]);
            let (c, d) = (bottom[2 * x], bottom[2 * x + 1]);
            ll.push((a + b + c + d) * 0.5);
            lh.push((a - b + c - d) * 0.5);
            hl.push((a + b - c - d) * 0.5);
            hh.push((a - b - c + d) * 0.5);
        }
    }
    Ok(Subbands {
        ll: Grid::new(hw, hh_, ll)?,
        lh: Grid::new(hw, hh_, lh)?,
        hl: Grid::new(hw, hh_, hl)?,
        hh: Grid::new(hw, hh_, hh)?,
    })
}

/// Inverse of [`dwt2`].
pub fn idwt2(bands: &Subbands) -> Result<Grid> {
    let (hw, hh_) = (bands.ll.width(), bands.ll.height());
    for g in [&bands.lh, &bands.hl, &bands.hh] {
        if g.width() != hw || g.height() != hh_ {
            return Err(Error::Shape(format!(
                "subband {}x{} does not match LL {hw}x{hh_}",
                g.width(),
                g.height()
            )));
        }
    }
    let w = hw * 2;
    let mut out = vec![0.0; w * hh_ * 2];
    for y in 0..hh_ {
        for x in 0..hw {
            let i = y * hw + x;
            let (s, p, q, r) = (
                bands.ll.data()[i],
                bands.lh.data()[i],
                bands.hl.data()[i],
                bands.hh.data()[i],
            );
            out[2 * y * w + 2 * x] = (s + p + q + r) * 0.5;
            out[2 * y * w + 2 * x + 1] = (s - p + q - r) * 0.5;
            out[(2 * y + 1) * w + 2 * x] = (s + p - q - r) * 0.5;
            out[(2 * y + 1) * w + 2 * x + 1] = (s - p - q + r) * 0.5;
        }
    }
    Grid::new(w, hh_ * 2, out)
}

/// Two levels of [`dwt2`]; the second decomposes the level-1 LL.
/// Sides must be divisible by 4.
pub fn dwt2_two_level(block: &Grid) -> Result<SubbandPyramid> {
    if block.width() % 4 != 0 || block.height() % 4 != 0 || block.width() == 0 || block.height() == 0 {
        return Err(Error::Shape(format!(
            "two-level dwt needs sides divisible by 4, got {}x{}",
            block.width(),
            block.height()
        )));
    }
    let first = dwt2(block)?;
    let level2 = dwt2(&first.ll)?;
    Ok(SubbandPyramid {
        level1: Details {
            lh: first.lh,
            hl: first.hl,
            hh: first.hh,
        },
        level2,
    })
}

pub fn idwt2_two_level(pyramid: &SubbandPyramid) -> Result<Grid> {
    let ll1 = idwt2(&pyramid.level2)?;
    idwt2(&Subbands {
        ll: ll1,
        lh: pyramid.level1.lh.clone(),
        hl: pyramid.level1.hl.clone(),
        hh: pyramid.level1.hh.clone(),
    })
}

//! Embedding and blind extraction.
//!
//! The host is tiled into a 4×4 grid of 128×128 blocks. The five blocks with
//! the least ROI coverage each go through a two-level Haar DWT; every level-2
//! detail subband (LH2, HL2, HH2, 32×32) is cut into sixteen 8×8 sub-blocks
//! and each sub-block carries one logo bit in the order of the pair
//! `DCT(6,7)` / `DCT(7,6)`. That is 240 slots, so every logo bit is written
//! 15 times and recovered by majority vote.

use crate::error::{Error, Result};
use crate::raster_io::{Logo, Raster, SideInfo, LOGO_BITS, LOGO_COLS, LOGO_ROWS, SIDEINFO_VERSION};
pub use crate::raster_io::SELECTED_BLOCKS;
use crate::strength_map::{
    build_embedding_map, roi_density_per_block, subblock_strength, EmbeddingMap, Footprint,
    StrengthParams, BLOCK_SIDE, GRID_SIDE, HOST_SIDE,
};
use crate::transforms::{dct2, dwt2_two_level, idct2, idwt2_two_level, DctBlock, Grid, SubbandPyramid};

pub const SUBBANDS: [Subband; 3] = [Subband::Lh2, Subband::Hl2, Subband::Hh2];
/// Sub-blocks per row/column of a 32×32 level-2 subband.
pub const SUBBLOCK_GRID: usize = 4;
pub const SLOT_COUNT: usize = SELECTED_BLOCKS * SUBBANDS.len() * SUBBLOCK_GRID * SUBBLOCK_GRID;
pub const REDUNDANCY: usize = SLOT_COUNT / LOGO_BITS;
pub const DEFAULT_STRENGTH_FLOOR: f64 = 0.05;

/// Pixels covered by one level-2 sub-block along each axis (8 coefficients × 4).
const FOOTPRINT_SIDE: usize = BLOCK_SIDE / SUBBLOCK_GRID;

/// 1-based DCT positions of the coefficient pair.
const PAIR_HI: (usize, usize) = (6, 7);
const PAIR_LO: (usize, usize) = (7, 6);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subband {
    Lh2,
    Hl2,
    Hh2,
}

impl Subband {
    pub fn name(self) -> &'static str {
        match self {
            Subband::Lh2 => "LH2",
            Subband::Hl2 => "HL2",
            Subband::Hh2 => "HH2",
        }
    }

    fn grid(self, p: &SubbandPyramid) -> &Grid {
        match self {
            Subband::Lh2 => &p.level2.lh,
            Subband::Hl2 => &p.level2.hl,
            Subband::Hh2 => &p.level2.hh,
        }
    }

    fn grid_mut(self, p: &mut SubbandPyramid) -> &mut Grid {
        match self {
            Subband::Lh2 => &mut p.level2.lh,
            Subband::Hl2 => &mut p.level2.hl,
            Subband::Hh2 => &mut p.level2.hh,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    /// Position in the selection order (0..5), not the grid index.
    pub block_ordinal: usize,
    pub subband: Subband,
    pub row: usize,
    pub col: usize,
    pub bit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotPlan {
    blocks: [usize; SELECTED_BLOCKS],
    slots: Vec<Slot>,
}

impl SlotPlan {
    pub fn blocks(&self) -> &[usize; SELECTED_BLOCKS] {
        &self.blocks
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Grid index of the block a slot lives in.
    pub fn block_of(&self, slot: &Slot) -> usize {
        self.blocks[slot.block_ordinal]
    }

    /// Pixel region of the host that a slot's sub-block spans.
    pub fn footprint(&self, slot: &Slot) -> Footprint {
        let (bx, by) = block_origin(self.block_of(slot));
        Footprint {
            x: bx + slot.col * FOOTPRINT_SIDE,
            y: by + slot.row * FOOTPRINT_SIDE,
            width: FOOTPRINT_SIDE,
            height: FOOTPRINT_SIDE,
        }
    }
}

/// Top-left pixel of grid block `index`.
pub fn block_origin(index: usize) -> (usize, usize) {
    ((index % GRID_SIDE) * BLOCK_SIDE, (index / GRID_SIDE) * BLOCK_SIDE)
}

/// The five lowest-density blocks, ordered by (density, index).
pub fn select_blocks(densities: &[f64; GRID_SIDE * GRID_SIDE]) -> [usize; SELECTED_BLOCKS] {
    let mut order: Vec<usize> = (0..densities.len()).collect();
    order.sort_by(|&a, &b| densities[a].total_cmp(&densities[b]).then(a.cmp(&b)));
    std::array::from_fn(|i| order[i])
}

/// Blocks in selection order, then LH2/HL2/HH2, then sub-blocks row-major;
/// slot `s` carries logo bit `s % 16`.
pub fn make_slot_plan(blocks: &[usize; SELECTED_BLOCKS]) -> Result<SlotPlan> {
    for (i, &b) in blocks.iter().enumerate() {
        if b >= GRID_SIDE * GRID_SIDE || blocks[..i].contains(&b) {
            return Err(Error::Validation(format!("invalid block selection {blocks:?}")));
        }
    }
    let mut slots = Vec::with_capacity(SLOT_COUNT);
    for block_ordinal in 0..SELECTED_BLOCKS {
        for subband in SUBBANDS {
            for row in 0..SUBBLOCK_GRID {
                for col in 0..SUBBLOCK_GRID {
                    let bit = slots.len() % LOGO_BITS;
                    slots.push(Slot {
                        block_ordinal,
                        subband,
                        row,
                        col,
                        bit,
                    });
                }
            }
        }
    }
    Ok(SlotPlan {
        blocks: *blocks,
        slots,
    })
}

/// Orders the coefficient pair for `bit` and spreads it to at least
/// `strength`, symmetrically about the pair mean. A pair that is already
/// ordered with enough margin is left untouched.
pub fn embed_bit(d: &DctBlock, bit: u8, strength: f64) -> DctBlock {
    let a = d.get(PAIR_HI.0, PAIR_HI.1);
    let b = d.get(PAIR_LO.0, PAIR_LO.1);
    let ordered = if bit == 1 { a > b } else { a < b };
    if ordered && (a - b).abs() >= strength {
        return *d;
    }
    let mean = (a + b) / 2.0;
    let half = (a - b).abs().max(strength) / 2.0;
    let (hi, lo) = if bit == 1 { (mean + half, mean - half) } else { (mean - half, mean + half) };
    let mut out = *d;
    out.set(PAIR_HI.0, PAIR_HI.1, hi);
    out.set(PAIR_LO.0, PAIR_LO.1, lo);
    out
}

/// 1 when `DCT(6,7) > DCT(7,6)`, otherwise 0 (ties read as 0).
pub fn extract_bit(d: &DctBlock) -> u8 {
    u8::from(d.get(PAIR_HI.0, PAIR_HI.1) > d.get(PAIR_LO.0, PAIR_LO.1))
}

/// Majority of each bit's votes. `ones[i]` counts slots that read 1 for
/// logo bit `i`.
pub fn majority(ones: &[u8; LOGO_BITS]) -> Logo {
    let bits = ones.map(|n| u8::from(usize::from(n) * 2 > REDUNDANCY));
    Logo::from_bits(bits).expect("majority bits are binary")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbedOptions {
    /// Lower bound on the enforced gap for every slot.
    pub strength_floor: f64,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            strength_floor: DEFAULT_STRENGTH_FLOOR,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Embedded {
    pub watermarked: Raster,
    pub side_info: SideInfo,
    pub embedding_map: EmbeddingMap,
    pub densities: [f64; GRID_SIDE * GRID_SIDE],
    /// Minimum gap required per slot, in plan order.
    pub strengths: Vec<f64>,
    /// Gap actually left between the pair per slot: the larger of the
    /// original gap and the required strength.
    pub gaps: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub logo: Logo,
    /// Bit read from each slot, in plan order.
    pub raw_bits: Vec<u8>,
    /// Per logo bit, how many of its slots read 1.
    pub ones: [u8; LOGO_BITS],
    pub plan: SlotPlan,
}

fn check_host(r: &Raster) -> Result<()> {
    if r.width() != HOST_SIDE || r.height() != HOST_SIDE {
        return Err(Error::Shape(format!(
            "host must be {HOST_SIDE}x{HOST_SIDE}, got {}x{} (resize first)",
            r.width(),
            r.height()
        )));
    }
    Ok(())
}

fn block_pyramid(r: &Raster, index: usize) -> Result<SubbandPyramid> {
    let (x0, y0) = block_origin(index);
    let window = r.crop(x0, y0, BLOCK_SIDE, BLOCK_SIDE)?;
    dwt2_two_level(&Grid::new(BLOCK_SIDE, BLOCK_SIDE, window)?)
}

pub fn embed(host: &Raster, params: &StrengthParams, logo: &Logo, opts: &EmbedOptions) -> Result<Embedded> {
    check_host(host)?;
    if !logo.is_balanced() {
        return Err(Error::Validation("logo must be balanced (8 ones, 8 zeros)".into()));
    }
    if !(opts.strength_floor > 0.0 && opts.strength_floor.is_finite()) {
        return Err(Error::Validation(format!(
            "strength floor {} must be positive",
            opts.strength_floor
        )));
    }
    let map = build_embedding_map(params, HOST_SIDE, HOST_SIDE)?;
    let densities = roi_density_per_block(params)?;
    let blocks = select_blocks(&densities);
    let plan = make_slot_plan(&blocks)?;

    let strengths: Vec<f64> = plan
        .slots()
        .iter()
        .map(|s| Ok(subblock_strength(&map, plan.footprint(s))?.max(opts.strength_floor)))
        .collect::<Result<_>>()?;

    let mut out = host.clone();
    let mut gaps = Vec::with_capacity(SLOT_COUNT);
    let per_block = SLOT_COUNT / SELECTED_BLOCKS;
    for (ordinal, &index) in blocks.iter().enumerate() {
        let mut pyramid = block_pyramid(host, index)?;
        let range = ordinal * per_block..(ordinal + 1) * per_block;
        for (slot, &strength) in plan.slots()[range.clone()].iter().zip(&strengths[range]) {
            let grid = slot.subband.grid_mut(&mut pyramid);
            let (x, y) = (slot.col * 8, slot.row * 8);
            let coeffs = dct2(&grid.tile8(x, y));
            gaps.push((coeffs.get(PAIR_HI.0, PAIR_HI.1) - coeffs.get(PAIR_LO.0, PAIR_LO.1)).abs().max(strength));
            let marked = embed_bit(&coeffs, logo.bit(slot.bit), strength);
            grid.put_tile8(x, y, &idct2(&marked));
        }
        let block = idwt2_two_level(&pyramid)?;
        let (x0, y0) = block_origin(index);
        out.paste_clamped(x0, y0, BLOCK_SIDE, BLOCK_SIDE, block.data());
    }

    let side_info = SideInfo {
        version: SIDEINFO_VERSION,
        blocks,
        k_alpha: params.k_alpha,
        classes: params
            .classes
            .iter()
            .map(|c| (c.name.clone(), c.coefficient))
            .collect(),
        strength_floor: opts.strength_floor,
        logo_rows: LOGO_ROWS,
        logo_cols: LOGO_COLS,
    };
    Ok(Embedded {
        watermarked: out,
        side_info,
        embedding_map: map,
        densities,
        strengths,
        gaps,
    })
}

/// Blind extraction: needs only the marked image and its side information.
pub fn extract(marked: &Raster, side: &SideInfo) -> Result<Extraction> {
    check_host(marked)?;
    side.validate()?;
    let plan = make_slot_plan(&side.blocks)?;
    let mut raw_bits = Vec::with_capacity(SLOT_COUNT);
    let mut ones = [0u8; LOGO_BITS];
    let per_block = SLOT_COUNT / SELECTED_BLOCKS;
    for (ordinal, &index) in side.blocks.iter().enumerate() {
        let pyramid = block_pyramid(marked, index)?;
        for slot in &plan.slots()[ordinal * per_block..(ordinal + 1) * per_block] {
            let tile = slot.subband.grid(&pyramid).tile8(slot.col * 8, slot.row * 8);
            let bit = extract_bit(&dct2(&tile));
            ones[slot.bit] += bit;
            raw_bits.push(bit);
        }
    }
    Ok(Extraction {
        logo: majority(&ones),
        raw_bits,
        ones,
        plan,
    })
}

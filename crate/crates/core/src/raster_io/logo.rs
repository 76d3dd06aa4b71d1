use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const LOGO_ROWS: usize = 4;
pub const LOGO_COLS: usize = 4;
pub const LOGO_BITS: usize = LOGO_ROWS * LOGO_COLS;

/// 4×4 binary watermark, row-major.
///
/// Logos supplied for embedding must be balanced (eight 0s, eight 1s); see
/// [`Logo::new`]. Extracted logos may be anything, see [`Logo::from_bits`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Logo {
    bits: [u8; LOGO_BITS],
}

impl Logo {
    /// A balanced logo. Fails on non-binary values or an 8/8 imbalance.
    pub fn new(bits: [u8; LOGO_BITS]) -> Result<Self> {
        let logo = Logo::from_bits(bits)?;
        let ones = logo.count_ones();
        if ones != LOGO_BITS / 2 {
            return Err(Error::Validation(format!(
                "logo must hold 8 ones and 8 zeros, found {ones} ones"
            )));
        }
        Ok(logo)
    }

    /// Any 16-bit pattern, without the balance requirement.
    pub fn from_bits(bits: [u8; LOGO_BITS]) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Validation("logo bits must be 0 or 1".into()));
        }
        Ok(Logo { bits })
    }

    /// The balanced logo whose bit `i` is bit `i` of `word` (LSB first).
    /// Returns `None` unless `word` has exactly eight set bits.
    pub fn from_word(word: u16) -> Option<Self> {
        if word.count_ones() != 8 {
            return None;
        }
        let mut bits = [0u8; LOGO_BITS];
        for (i, b) in bits.iter_mut().enumerate() {
            *b = ((word >> i) & 1) as u8;
        }
        Some(Logo { bits })
    }

    pub fn bits(&self) -> &[u8; LOGO_BITS] {
        &self.bits
    }

    pub fn bit(&self, index: usize) -> u8 {
        self.bits[index]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.count_ones() == LOGO_BITS / 2
    }

    pub fn complement(&self) -> Logo {
        let mut bits = self.bits;
        for b in &mut bits {
            *b ^= 1;
        }
        Logo { bits }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(LOGO_BITS + LOGO_ROWS);
        for row in self.bits.chunks_exact(LOGO_COLS) {
            s.extend(row.iter().map(|&b| if b == 1 { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }
}

impl Default for Logo {
    /// Two columns of ones beside two columns of zeros, top half mirrored
    /// in the bottom: `1100 / 1100 / 0011 / 0011`.
    fn default() -> Self {
        Logo {
            bits: [1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
        }
    }
}

/// Parses four lines of four `0`/`1` characters. A trailing newline and
/// CRLF line endings are accepted.
pub fn parse_logo(text: &str) -> Result<Logo> {
    let lines: Vec<&str> = text
        .strip_suffix('\n')
        .unwrap_or(text)
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    if lines.len() != LOGO_ROWS {
        return Err(Error::Validation(format!(
            "logo needs {LOGO_ROWS} lines, found {}",
            lines.len()
        )));
    }
    let mut bits = [0u8; LOGO_BITS];
    for (r, line) in lines.iter().enumerate() {
        if line.chars().count() != LOGO_COLS {
            return Err(Error::Validation(format!(
                "logo line {} must have {LOGO_COLS} characters",
                r + 1
            )));
        }
        for (c, ch) in line.chars().enumerate() {
            bits[r * LOGO_COLS + c] = match ch {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(Error::Validation(format!(
                        "logo character {other:?} on line {} is not 0 or 1",
                        r + 1
                    )))
                }
            };
        }
    }
    Logo::new(bits)
}

pub fn load_logo(path: impl AsRef<Path>) -> Result<Logo> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_logo(&text)
}

pub fn save_logo(logo: &Logo, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, logo.to_text()).map_err(|e| Error::io(path, e))
}

use std::fs;
use std::path::Path;

use super::keyvalue::KeyValues;
use super::logo::{LOGO_COLS, LOGO_ROWS};
use crate::error::{Error, Result};

pub const SIDEINFO_VERSION: u32 = 1;

/// Number of 128×128 blocks in a 512×512 host (4×4 grid).
pub const BLOCK_COUNT: usize = 16;
pub const SELECTED_BLOCKS: usize = 5;

/// Everything blind extraction needs besides the watermarked image.
#[derive(Clone, Debug, PartialEq)]
pub struct SideInfo {
    pub version: u32,
    /// Row-major indices into the 4×4 block grid, in embedding order.
    pub blocks: [usize; SELECTED_BLOCKS],
    pub k_alpha: f64,
    /// `(class name, coefficient)` in the order they were supplied.
    pub classes: Vec<(String, f64)>,
    pub strength_floor: f64,
    pub logo_rows: usize,
    pub logo_cols: usize,
}

impl SideInfo {
    pub fn validate(&self) -> Result<()> {
        if self.version != SIDEINFO_VERSION {
            return Err(Error::Validation(format!(
                "unsupported side-info version {}",
                self.version
            )));
        }
        for (i, &b) in self.blocks.iter().enumerate() {
            if b >= BLOCK_COUNT {
                return Err(Error::Validation(format!(
                    "block index {b} out of range 0..{BLOCK_COUNT}"
                )));
            }
            if self.blocks[..i].contains(&b) {
                return Err(Error::Validation(format!("block index {b} repeated")));
            }
        }
        if !(self.k_alpha > 0.0 && self.k_alpha <= 1.0) {
            return Err(Error::Validation(format!(
                "k_alpha {} outside (0, 1]",
                self.k_alpha
            )));
        }
        if !(self.strength_floor > 0.0 && self.strength_floor.is_finite()) {
            return Err(Error::Validation(format!(
                "strength floor {} must be positive",
                self.strength_floor
            )));
        }
        for (name, c) in &self.classes {
            validate_class_name(name)?;
            if !(0.0..=1.0).contains(c) {
                return Err(Error::Validation(format!(
                    "coefficient {c} for class {name:?} outside [0, 1]"
                )));
            }
        }
        if (self.logo_rows, self.logo_cols) != (LOGO_ROWS, LOGO_COLS) {
            return Err(Error::Validation(format!(
                "logo shape {}x{} (only {LOGO_ROWS}x{LOGO_COLS} supported)",
                self.logo_rows, self.logo_cols
            )));
        }
        Ok(())
    }

    pub fn to_key_values(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        let join = |it: Vec<String>| it.join(",");
        // keys are fresh, insert cannot fail
        kv.insert("version", self.version.to_string()).unwrap();
        kv.insert("blocks", join(self.blocks.iter().map(|b| b.to_string()).collect()))
            .unwrap();
        kv.insert("k_alpha", self.k_alpha.to_string()).unwrap();
        kv.insert(
            "classes",
            join(self.classes.iter().map(|(n, c)| format!("{n}:{c}")).collect()),
        )
        .unwrap();
        kv.insert("strength_floor", self.strength_floor.to_string()).unwrap();
        kv.insert("logo_rows", self.logo_rows.to_string()).unwrap();
        kv.insert("logo_cols", self.logo_cols.to_string()).unwrap();
        kv
    }

    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        let blocks_raw = kv.require("blocks")?;
        let parsed: Vec<usize> = blocks_raw
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Validation(format!("bad block index {t:?}")))
            })
            .collect::<Result<_>>()?;
        let blocks: [usize; SELECTED_BLOCKS] = parsed.try_into().map_err(|v: Vec<usize>| {
            Error::Validation(format!(
                "expected {SELECTED_BLOCKS} block indices, found {}",
                v.len()
            ))
        })?;
        let classes_raw = kv.require("classes")?;
        let mut classes = Vec::new();
        for item in classes_raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, coeff) = item
                .split_once(':')
                .ok_or_else(|| Error::Validation(format!("class entry {item:?} needs name:coeff")))?;
            let coeff: f64 = coeff
                .parse()
                .map_err(|_| Error::Validation(format!("bad coefficient in {item:?}")))?;
            if classes.iter().any(|(n, _): &(String, f64)| n == name) {
                return Err(Error::Validation(format!("class {name:?} listed twice")));
            }
            classes.push((name.to_owned(), coeff));
        }
        let info = SideInfo {
            version: kv.require_parsed("version")?,
            blocks,
            k_alpha: kv.require_parsed("k_alpha")?,
            classes,
            strength_floor: kv.require_parsed("strength_floor")?,
            logo_rows: kv.require_parsed("logo_rows")?,
            logo_cols: kv.require_parsed("logo_cols")?,
        };
        info.validate()?;
        Ok(info)
    }

    pub fn parse(text: &str) -> Result<Self> {
        SideInfo::from_key_values(&KeyValues::parse(text)?)
    }

    pub fn to_text(&self) -> String {
        self.to_key_values().to_text(Some(concat!(
            "maskmark side information v",
            env!("CARGO_PKG_VERSION")
        )))
    }
}

pub(crate) fn validate_class_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.');
    if ok {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "class name {name:?} must be non-empty [A-Za-z0-9_.-]"
        )))
    }
}

pub fn read_sideinfo(path: impl AsRef<Path>) -> Result<SideInfo> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    SideInfo::parse(&text)
}

pub fn write_sideinfo(info: &SideInfo, path: impl AsRef<Path>) -> Result<()> {
    info.validate()?;
    let path = path.as_ref();
    fs::write(path, info.to_text()).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MINIMAL: &str = "version=1\nblocks=0,1,2,3,4\nk_alpha=0.3\nclasses=person:1,car:1\n\
                           strength_floor=0.05\nlogo_rows=4\nlogo_cols=4\n";

    #[test]
    fn parses_minimal() {
        let s = SideInfo::parse(MINIMAL).unwrap();
        assert_eq!(s.blocks, [0, 1, 2, 3, 4]);
        assert_eq!(s.k_alpha, 0.3);
        assert_eq!(s.classes, vec![("person".into(), 1.0), ("car".into(), 1.0)]);
    }

    #[test]
    fn empty_class_list() {
        let s = SideInfo::parse(&MINIMAL.replace("classes=person:1,car:1", "classes=")).unwrap();
        assert!(s.classes.is_empty());
    }

    #[test]
    fn validation_errors() {
        let bad = [
            MINIMAL.replace("0,1,2,3,4", "0,1,2,3,16"),
            MINIMAL.replace("0,1,2,3,4", "0,1,2,3"),
            MINIMAL.replace("0,1,2,3,4", "0,1,2,3,3"),
            MINIMAL.replace("k_alpha=0.3\n", ""),
            MINIMAL.replace("k_alpha=0.3", "k_alpha=0"),
            format!("{MINIMAL}k_alpha=0.4\n"),
            MINIMAL.replace("strength_floor=0.05", "strength_floor=0"),
            MINIMAL.replace("logo_rows=4", "logo_rows=5"),
            MINIMAL.replace("version=1", "version=9"),
            MINIMAL.replace("person:1", "person:1.5"),
            MINIMAL.replace("person:1", "per son:1"),
        ];
        for text in bad {
            assert!(
                matches!(SideInfo::parse(&text), Err(Error::Validation(_))),
                "accepted:\n{text}"
            );
        }
    }

    fn arb_sideinfo() -> impl Strategy<Value = SideInfo> {
        (
            Just(()).prop_perturb(|_, mut rng| {
                let mut pool: Vec<usize> = (0..BLOCK_COUNT).collect();
                let mut pick = [0usize; SELECTED_BLOCKS];
                for slot in &mut pick {
                    let i = (rng.next_u32() as usize) % pool.len();
                    *slot = pool.swap_remove(i);
                }
                pick
            }),
            1e-6f64..=1.0,
            proptest::collection::vec(("[a-z][a-z0-9_]{0,8}", 0.0f64..=1.0), 0..4),
            1e-6f64..1.0,
        )
            .prop_map(|(blocks, k_alpha, mut classes, floor)| {
                classes.sort_by(|a, b| a.0.cmp(&b.0));
                classes.dedup_by(|a, b| a.0 == b.0);
                SideInfo {
                    version: SIDEINFO_VERSION,
                    blocks,
                    k_alpha,
                    classes,
                    strength_floor: floor,
                    logo_rows: 4,
                    logo_cols: 4,
                }
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(info in arb_sideinfo()) {
            let back = SideInfo::parse(&info.to_text()).unwrap();
            prop_assert_eq!(back, info);
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("side.txt");
        let s = SideInfo::parse(MINIMAL).unwrap();
        write_sideinfo(&s, &p).unwrap();
        assert_eq!(read_sideinfo(&p).unwrap(), s);
    }
}

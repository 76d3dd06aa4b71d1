use std::fs;
use std::path::{Path, PathBuf};

use super::keyvalue::KeyValues;
use super::sideinfo::validate_class_name;
use crate::error::{Error, Result};

pub const MANIFEST_VERSION: u32 = 1;

/// Index of per-class mask files produced by an external segmentation step.
///
/// ```text
/// version=1
/// image=photo.ppm
/// threshold=0.5
/// mask.person=photo.person.pgm
/// mask.car=photo.car.pgm
/// ```
///
/// Relative paths are resolved against the manifest's directory by
/// [`MaskManifest::read`].
#[derive(Clone, Debug, PartialEq)]
pub struct MaskManifest {
    pub image: PathBuf,
    pub threshold: f64,
    pub masks: Vec<(String, PathBuf)>,
}

impl MaskManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let kv = KeyValues::parse(text)?;
        let version: u32 = kv.require_parsed("version")?;
        if version != MANIFEST_VERSION {
            return Err(Error::Validation(format!("unsupported manifest version {version}")));
        }
        let threshold: f64 = kv.require_parsed("threshold")?;
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::Validation(format!("threshold {threshold} outside [0, 1]")));
        }
        let mut masks = Vec::new();
        for (key, value) in kv.iter() {
            if let Some(class) = key.strip_prefix("mask.") {
                validate_class_name(class)?;
                masks.push((class.to_owned(), PathBuf::from(value)));
            } else if !matches!(key, "version" | "image" | "threshold") {
                return Err(Error::Validation(format!("unknown manifest key {key:?}")));
            }
        }
        Ok(MaskManifest {
            image: PathBuf::from(kv.require("image")?),
            threshold,
            masks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut kv = KeyValues::new();
        kv.insert("version", MANIFEST_VERSION.to_string()).unwrap();
        kv.insert("image", self.image.display().to_string()).unwrap();
        kv.insert("threshold", self.threshold.to_string()).unwrap();
        for (class, path) in &self.masks {
            kv.insert(&format!("mask.{class}"), path.display().to_string())
                .expect("class names are unique");
        }
        kv.to_text(Some("maskmark mask manifest"))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut m = MaskManifest::parse(&text)?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        m.image = base.join(&m.image);
        for (_, p) in &mut m.masks {
            *p = base.join(&*p);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_resolve() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.txt");
        fs::write(
            &p,
            "version=1\nimage=a.ppm\nthreshold=0.5\nmask.person=a.person.pgm\nmask.car=a.car.pgm\n",
        )
        .unwrap();
        let m = MaskManifest::read(&p).unwrap();
        assert_eq!(m.image, dir.path().join("a.ppm"));
        assert_eq!(m.masks[1], ("car".into(), dir.path().join("a.car.pgm")));
        assert_eq!(m.threshold, 0.5);
    }

    #[test]
    fn text_round_trip() {
        let m = MaskManifest {
            image: "x.pgm".into(),
            threshold: 0.7,
            masks: vec![("person".into(), "x_p.pgm".into())],
        };
        assert_eq!(MaskManifest::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(MaskManifest::parse("version=1\nimage=a\nthreshold=0.5\nfoo=1\n").is_err());
        assert!(MaskManifest::parse("version=1\nimage=a\nthreshold=2\n").is_err());
    }
}

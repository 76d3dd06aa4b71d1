//! Corpus discovery and per-image preparation.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use maskmark_core::raster_io::{load_image, load_mask, resize_bilinear, save_image, save_mask, Depth};
use maskmark_core::strength_map::{ClassMaskEntry, StrengthParams, HOST_SIDE};
use maskmark_core::{BinaryMask, Raster};

use crate::config::ClassSpec;
use crate::ValidationError;

/// A host resized to 512×512 with its class masks.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub path: PathBuf,
    pub host: Raster,
    pub masks: Vec<(String, BinaryMask, f64)>,
}

impl Prepared {
    pub fn params(&self, k_alpha: f64) -> Result<StrengthParams> {
        let classes = self
            .masks
            .iter()
            .map(|(n, m, c)| ClassMaskEntry::new(n.clone(), m, *c))
            .collect::<maskmark_core::Result<Vec<_>>>()?;
        Ok(StrengthParams::new(k_alpha, classes)?)
    }
}

pub fn expand_pattern(pattern: &str, image: &Path) -> String {
    let stem = image.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    pattern.replace("{stem}", &stem)
}

fn is_image(p: &Path) -> bool {
    matches!(
        p.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref(),
        Some("pgm" | "ppm")
    )
}

/// Images in `dir`, sorted by path, excluding files that are some other
/// image's mask under `classes`.
pub fn discover(dir: &Path, classes: &[ClassSpec]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading corpus {}", dir.display()))? {
        let path = entry.with_context(|| format!("reading corpus {}", dir.display()))?.path();
        if path.is_file() && is_image(&path) {
            files.push(path);
        }
    }
    files.sort();
    let masks: BTreeSet<PathBuf> = files
        .iter()
        .flat_map(|f| classes.iter().map(move |c| dir.join(expand_pattern(&c.mask, f))))
        .collect();
    let images: Vec<PathBuf> = files.into_iter().filter(|f| !masks.contains(f)).collect();
    if images.is_empty() {
        return Err(anyhow!(ValidationError(format!(
            "corpus {} contains no PGM/PPM images",
            dir.display()
        ))));
    }
    Ok(images)
}

/// Loads a host and resizes it to 512×512.
pub fn load_host(path: &Path) -> Result<(Raster, (usize, usize))> {
    let raw = load_image(path)?;
    let size = (raw.width(), raw.height());
    Ok((resize_bilinear(&raw, HOST_SIDE, HOST_SIDE)?, size))
}

/// Loads a mask that matches either the original host size or 512×512.
pub fn load_aligned_mask(path: &Path, host_size: (usize, usize)) -> Result<BinaryMask> {
    let mask = load_mask(path)?;
    let size = (mask.width(), mask.height());
    if size == (HOST_SIDE, HOST_SIDE) {
        Ok(mask)
    } else if size == host_size {
        Ok(mask.resize_nearest(HOST_SIDE, HOST_SIDE)?)
    } else {
        Err(anyhow!(ValidationError(format!(
            "mask {} is {}x{}, expected {}x{} or {HOST_SIDE}x{HOST_SIDE}",
            path.display(),
            size.0,
            size.1,
            host_size.0,
            host_size.1
        ))))
    }
}

/// Loads one corpus image and its masks; mask patterns resolve relative to
/// the image's directory.
pub fn prepare(path: &Path, classes: &[ClassSpec]) -> Result<Prepared> {
    let (host, size) = load_host(path)?;
    let dir = path.parent().unwrap_or_else(|| Path::new(""));
    let masks = classes
        .iter()
        .map(|c| {
            let mp = dir.join(expand_pattern(&c.mask, path));
            Ok((c.name.clone(), load_aligned_mask(&mp, size)?, c.coeff))
        })
        .collect::<Result<_>>()?;
    Ok(Prepared {
        path: path.to_owned(),
        host,
        masks,
    })
}

/// Writes the built-in scenes as `{name}.pgm` (8-bit) with
/// `{name}.person.pgm` and `{name}.car.pgm` masks; returns the host paths.
pub fn write_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut out = Vec::new();
    for f in maskmark_core::fixtures::corpus() {
        let host = dir.join(format!("{}.pgm", f.name));
        save_image(&f.host, &host, Depth::Eight)?;
        save_mask(&f.person, dir.join(format!("{}.person.pgm", f.name)))?;
        save_mask(&f.car, dir.join(format!("{}.car.pgm", f.name)))?;
        out.push(host);
    }
    Ok(out)
}

/// Class table matching [`write_fixtures`] output.
pub fn fixture_classes() -> Vec<ClassSpec> {
    ["person", "car"]
        .map(|n| ClassSpec {
            name: n.into(),
            mask: format!("{{stem}}.{n}.pgm"),
            coeff: 1.0,
        })
        .to_vec()
}

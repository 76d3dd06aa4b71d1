use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use maskmark_core::attacks::{AttackSpec, DEFAULT_SALT_PEPPER_DENSITY};
use maskmark_core::codec::DEFAULT_STRENGTH_FLOOR;
use maskmark_core::raster_io::parse_logo;
use maskmark_core::Logo;
use serde::Deserialize;

pub const DEFAULT_K_ALPHA: f64 = 0.3;
pub const DEFAULT_K_GRID: [f64; 6] = [0.01, 0.05, 0.1, 0.3, 0.6, 1.0];

/// One `--class name=<s>,mask=<path>,coeff=<float>` entry. In benchmark
/// configs `mask` is a pattern where `{stem}` is the image file stem.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub name: String,
    pub mask: String,
    #[serde(default = "one")]
    pub coeff: f64,
}

fn one() -> f64 {
    1.0
}

impl FromStr for ClassSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut name, mut mask, mut coeff) = (None, None, 1.0);
        for part in s.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| anyhow!("class field {part:?} is not key=value"))?;
            match k.trim() {
                "name" => name = Some(v.trim().to_owned()),
                "mask" => mask = Some(v.trim().to_owned()),
                "coeff" => {
                    coeff = v
                        .trim()
                        .parse()
                        .map_err(|_| anyhow!("bad coefficient {v:?}"))?
                }
                other => bail!("unknown class field {other:?}"),
            }
        }
        Ok(ClassSpec {
            name: name.ok_or_else(|| anyhow!("class entry {s:?} lacks name="))?,
            mask: mask.ok_or_else(|| anyhow!("class entry {s:?} lacks mask="))?,
            coeff,
        })
    }
}

/// Attack syntax: `gaussian:<variance>`, `salt_pepper[:<density>]`,
/// `median3`, `histeq`, `jpeg:<quality>`. Seeds come from the run config.
pub fn parse_attack(s: &str, seed: u64) -> Result<AttackSpec> {
    let (kind, arg) = match s.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim())),
        None => (s.trim(), None),
    };
    let num = |what: &str| -> Result<f64> {
        arg.ok_or_else(|| anyhow!("attack {kind} needs a {what}"))?
            .parse()
            .map_err(|_| anyhow!("bad {what} in {s:?}"))
    };
    let spec = match kind {
        "gaussian" => AttackSpec::Gaussian {
            variance: num("variance")?,
            seed,
        },
        "salt_pepper" => AttackSpec::SaltPepper {
            density: if arg.is_some() { num("density")? } else { DEFAULT_SALT_PEPPER_DENSITY },
            seed,
        },
        "median3" => AttackSpec::Median3,
        "histeq" => AttackSpec::HistEq,
        "jpeg" => {
            let q = num("quality")?;
            if q.fract() != 0.0 || !(1.0..=100.0).contains(&q) {
                bail!("jpeg quality must be an integer in 1..=100");
            }
            AttackSpec::Jpeg { quality: q as u8 }
        }
        other => bail!("unknown attack kind {other:?}"),
    };
    spec.validate()?;
    Ok(spec)
}

/// Attack list matching the nine robustness rows.
pub fn default_attacks() -> Vec<String> {
    [
        "gaussian:0.01",
        "gaussian:0.02",
        "gaussian:0.03",
        "jpeg:90",
        "jpeg:80",
        "jpeg:70",
        "median3",
        "histeq",
        "salt_pepper:0.05",
    ]
    .map(String::from)
    .to_vec()
}

/// Settings shared by `report` and `sweep-k`, loadable from TOML.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchConfig {
    pub corpus: PathBuf,
    #[serde(rename = "class")]
    pub classes: Vec<ClassSpec>,
    pub k_alpha: f64,
    pub k_grid: Vec<f64>,
    pub strength_floor: f64,
    pub attacks: Vec<String>,
    pub seeds: Vec<u64>,
    /// Logo text (four lines of 0/1); the default logo when absent.
    pub logo: Option<String>,
    /// Bit depth (8 or 16) the watermarked image is stored at before the
    /// attack; 0 keeps it in floating point.
    pub depth: u32,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            corpus: PathBuf::new(),
            classes: vec![],
            k_alpha: DEFAULT_K_ALPHA,
            k_grid: DEFAULT_K_GRID.to_vec(),
            strength_floor: DEFAULT_STRENGTH_FLOOR,
            attacks: default_attacks(),
            seeds: vec![1],
            logo: None,
            depth: 8,
            threads: 0,
        }
    }
}

impl BenchConfig {
    /// Reads TOML; a relative `corpus` is taken relative to the file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg: BenchConfig =
            toml::from_str(&text).map_err(|e| anyhow!(crate::ValidationError(format!("{}: {e}", path.display()))))?;
        if cfg.corpus.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.corpus = dir.join(&cfg.corpus);
            }
        }
        Ok(cfg)
    }

    pub fn logo(&self) -> Result<Logo> {
        match &self.logo {
            Some(text) => Ok(parse_logo(text)?),
            None => Ok(Logo::default()),
        }
    }

    pub fn attack_specs(&self) -> Result<Vec<(String, Vec<AttackSpec>)>> {
        self.attacks
            .iter()
            .map(|a| {
                let seeded: Vec<AttackSpec> = self
                    .seeds
                    .iter()
                    .map(|&seed| parse_attack(a, seed))
                    .collect::<Result<_>>()?;
                // deterministic attacks ignore the seed: run once
                let specs = match seeded.first() {
                    Some(AttackSpec::Gaussian { .. } | AttackSpec::SaltPepper { .. }) => seeded,
                    Some(first) => vec![*first],
                    None => vec![],
                };
                Ok((a.clone(), specs))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(anyhow!(crate::ValidationError(m)));
        if !(self.k_alpha > 0.0 && self.k_alpha <= 1.0) {
            return bad(format!("k_alpha {} outside (0, 1]", self.k_alpha));
        }
        if self.k_grid.is_empty() {
            return bad("k grid is empty".into());
        }
        if let Some(k) = self.k_grid.iter().find(|k| !(**k > 0.0 && **k <= 1.0)) {
            return bad(format!("k grid value {k} outside (0, 1]"));
        }
        if !(self.strength_floor > 0.0) {
            return bad(format!("strength floor {} must be positive", self.strength_floor));
        }
        if !matches!(self.depth, 0 | 8 | 16) {
            return bad(format!("depth {} must be 0, 8 or 16", self.depth));
        }
        if self.seeds.is_empty() {
            return bad("at least one seed is required".into());
        }
        for c in &self.classes {
            if !(0.0..=1.0).contains(&c.coeff) {
                return bad(format!("coefficient {} for class {} outside [0, 1]", c.coeff, c.name));
            }
        }
        self.logo().map_err(|e| anyhow!(crate::ValidationError(e.to_string())))?;
        self.attack_specs()
            .map_err(|e| anyhow!(crate::ValidationError(e.to_string())))?;
        Ok(())
    }

    /// One-line record of every parameter, for output headers.
    pub fn describe(&self) -> String {
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|c| format!("{}:{}:{}", c.name, c.mask, c.coeff))
            .collect();
        let logo = self.logo().map(|l| l.to_text().replace('\n', "/")).unwrap_or_default();
        format!(
            "k_alpha={} k_grid={:?} strength_floor={} depth={} attacks={} seeds={:?} classes={} logo={}",
            self.k_alpha,
            self.k_grid,
            self.strength_floor,
            self.depth,
            self.attacks.join(";"),
            self.seeds,
            classes.join(";"),
            logo.trim_end_matches('/'),
        )
    }
}

//! wasm-bindgen wrapper used by `www/index.html`.
//!
//! A [`Demo`] holds one built-in scene embedded with the chosen settings.
//! The page can then attack it and read the logo back, or sweep k_alpha.

use maskmark_core::attacks::AttackSpec;
use maskmark_core::codec::{embed, extract, EmbedOptions, Embedded};
use maskmark_core::fixtures::{self, Fixture};
use maskmark_core::metrics::{ber, psnr, ssim, SsimParams};
use maskmark_core::{Logo, Raster};
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Names of the built-in scenes, comma separated.
#[wasm_bindgen]
pub fn scene_names() -> String {
    fixtures::corpus().iter().map(|f| f.name).collect::<Vec<_>>().join(",")
}

/// Grey raster to RGBA bytes for an ImageData.
pub fn to_rgba(r: &Raster) -> Vec<u8> {
    r.data()
        .iter()
        .flat_map(|&v| {
            let g = (v * 255.0).round().clamp(0.0, 255.0) as u8;
            [g, g, g, 255]
        })
        .collect()
}

fn parse_bits(bits: &str) -> Result<Logo, JsError> {
    let v: Vec<u8> = bits
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(js_err(format!("logo may only contain 0 and 1, got {c:?}"))),
        })
        .collect::<Result<_, _>>()?;
    let arr: [u8; 16] = v.try_into().map_err(|_| js_err("logo needs exactly 16 bits"))?;
    Logo::new(arr).map_err(js_err)
}

fn bits_string(l: &Logo) -> String {
    l.bits().iter().map(|b| char::from(b'0' + b)).collect()
}

fn scene(index: usize) -> Result<Fixture, JsError> {
    fixtures::corpus()
        .into_iter()
        .nth(index)
        .ok_or_else(|| js_err(format!("no scene {index}")))
}

#[wasm_bindgen]
pub struct Demo {
    fixture: Fixture,
    logo: Logo,
    marked: Embedded,
}

#[wasm_bindgen]
impl Demo {
    /// Embeds `logo` (16 characters of 0/1, 8 of each) into scene `index`.
    #[wasm_bindgen(constructor)]
    pub fn new(index: usize, logo: &str, k_alpha: f64, strength_floor: f64) -> Result<Demo, JsError> {
        let fixture = scene(index)?;
        let logo = parse_bits(logo)?;
        let params = fixture.params(k_alpha, 1.0).map_err(js_err)?;
        let marked = embed(&fixture.host, &params, &logo, &EmbedOptions { strength_floor }).map_err(js_err)?;
        Ok(Demo { fixture, logo, marked })
    }

    pub fn side(&self) -> usize {
        self.fixture.host.width()
    }

    pub fn host_rgba(&self) -> Vec<u8> {
        to_rgba(&self.fixture.host)
    }

    pub fn marked_rgba(&self) -> Vec<u8> {
        to_rgba(&self.marked.watermarked)
    }

    /// Embedding strength map scaled so its maximum is white, with the
    /// selected blocks outlined.
    pub fn map_rgba(&self) -> Vec<u8> {
        let m = &self.marked.embedding_map;
        let max = m.data().iter().cloned().fold(f64::MIN_POSITIVE, f64::max);
        let mut out = Vec::with_capacity(m.data().len() * 4);
        let side = m.width();
        for (i, &v) in m.data().iter().enumerate() {
            let (x, y) = (i % side, i / side);
            let block = (y / 128) * 4 + x / 128;
            let edge = x % 128 < 2 || x % 128 > 125 || y % 128 < 2 || y % 128 > 125;
            if edge && self.marked.side_info.blocks.contains(&block) {
                out.extend_from_slice(&[230, 60, 40, 255]);
            } else {
                let g = (v / max * 255.0).round() as u8;
                out.extend_from_slice(&[g, g, g, 255]);
            }
        }
        out
    }

    /// Embedding blocks as grid indices 0..16, comma separated.
    pub fn blocks(&self) -> String {
        self.marked.side_info.blocks.map(|b| b.to_string()).join(",")
    }

    pub fn psnr(&self) -> f64 {
        psnr(&self.fixture.host, &self.marked.watermarked).unwrap_or(f64::NAN)
    }

    pub fn ssim(&self) -> f64 {
        ssim(&self.fixture.host, &self.marked.watermarked, &SsimParams::default()).unwrap_or(f64::NAN)
    }

    /// Attacks the watermarked image and extracts. `kind` is one of
    /// gaussian, salt_pepper, median3, histeq, jpeg; `amount` is the
    /// variance, density or quality.
    pub fn attack(&self, kind: &str, amount: f64, seed: u64) -> Result<AttackOutcome, JsError> {
        let spec = match kind {
            "gaussian" => AttackSpec::Gaussian { variance: amount, seed },
            "salt_pepper" => AttackSpec::SaltPepper { density: amount, seed },
            "median3" => AttackSpec::Median3,
            "histeq" => AttackSpec::HistEq,
            "jpeg" => AttackSpec::Jpeg {
                quality: amount.round().clamp(1.0, 100.0) as u8,
            },
            other => return Err(js_err(format!("unknown attack {other:?}"))),
        };
        let attacked = spec.apply(&self.marked.watermarked).map_err(js_err)?;
        let got = extract(&attacked, &self.marked.side_info).map_err(js_err)?;
        Ok(AttackOutcome {
            rgba: to_rgba(&attacked),
            bits: bits_string(&got.logo),
            ones: got.ones.to_vec(),
            ber: ber(&self.logo, &got.logo),
        })
    }
}

#[wasm_bindgen]
pub struct AttackOutcome {
    rgba: Vec<u8>,
    bits: String,
    ones: Vec<u8>,
    ber: f64,
}

#[wasm_bindgen]
impl AttackOutcome {
    pub fn rgba(&self) -> Vec<u8> {
        self.rgba.clone()
    }

    /// Recovered logo as 16 characters of 0/1.
    pub fn bits(&self) -> String {
        self.bits.clone()
    }

    /// Votes for 1 per logo bit, out of 15.
    pub fn ones(&self) -> Vec<u8> {
        self.ones.clone()
    }

    pub fn ber(&self) -> f64 {
        self.ber
    }
}

/// PSNR and SSIM of scene `index` for each k in `grid`, interleaved as
/// [psnr0, ssim0, psnr1, ssim1, ...].
#[wasm_bindgen]
pub fn sweep(index: usize, grid: Vec<f64>, strength_floor: f64) -> Result<Vec<f64>, JsError> {
    let f = scene(index)?;
    let logo = Logo::default();
    let sp = SsimParams::default();
    let mut out = Vec::with_capacity(grid.len() * 2);
    for k in grid {
        let params = f.params(k, 1.0).map_err(js_err)?;
        let m = embed(&f.host, &params, &logo, &EmbedOptions { strength_floor }).map_err(js_err)?;
        out.push(psnr(&f.host, &m.watermarked).map_err(js_err)?);
        out.push(ssim(&f.host, &m.watermarked, &sp).map_err(js_err)?);
    }
    Ok(out)
}

//! Binary netpbm: PGM (P5, 8/16-bit) and PPM (P6, 8/16-bit), big-endian samples.

use std::fs;
use std::path::Path;

use super::{BinaryMask, Raster};
use crate::error::{Error, Result};

const LUMA_R: f64 = 0.299;
const LUMA_G: f64 = 0.587;
const LUMA_B: f64 = 0.114;

/// Sample depth used when writing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Eight,
    Sixteen,
}

impl Depth {
    pub fn maxval(self) -> u32 {
        match self {
            Depth::Eight => 255,
            Depth::Sixteen => 65535,
        }
    }

    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            8 => Ok(Depth::Eight),
            16 => Ok(Depth::Sixteen),
            other => Err(Error::Validation(format!("depth must be 8 or 16, got {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Gray,
    Rgb,
}

struct Header {
    kind: Kind,
    width: usize,
    height: usize,
    maxval: u32,
    data_offset: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(Error::Format("missing netpbm magic".into()));
    }
    let kind = match bytes[1] {
        b'5' => Kind::Gray,
        b'6' => Kind::Rgb,
        b'1'..=b'4' | b'7' => {
            return Err(Error::Unsupported(format!(
                "netpbm variant P{} (only binary P5/P6)",
                bytes[1] as char
            )))
        }
        _ => return Err(Error::Format("bad netpbm magic".into())),
    };
    let mut pos = 2;
    let mut fields = [0u64; 3];
    for field in &mut fields {
        // whitespace and comments before each token
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while pos < bytes.len() && bytes[pos] != b'\n' && bytes[pos] != b'\r' {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => return Err(Error::Format("truncated header".into())),
            }
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Format(format!("expected a number at byte {start}")));
        }
        let text = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        *field = text
            .parse()
            .map_err(|_| Error::Format(format!("header value {text} too large")))?;
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::Format("header must end with one whitespace byte".into())),
    }
    let [width, height, maxval] = fields;
    if width == 0 || height == 0 {
        return Err(Error::Format(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 && maxval != 65535 {
        return Err(Error::Unsupported(format!("maxval {maxval} (need 255 or 65535)")));
    }
    Ok(Header {
        kind,
        width: usize::try_from(width).map_err(|_| Error::Format("width too large".into()))?,
        height: usize::try_from(height).map_err(|_| Error::Format("height too large".into()))?,
        maxval: maxval as u32,
        data_offset: pos,
    })
}

fn samples(bytes: &[u8], header: &Header) -> Result<Vec<u32>> {
    let channels = match header.kind {
        Kind::Gray => 1,
        Kind::Rgb => 3,
    };
    let bytes_per = if header.maxval > 255 { 2 } else { 1 };
    let count = header
        .width
        .checked_mul(header.height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::Format("image too large".into()))?;
    let body = &bytes[header.data_offset..];
    if body.len() < count * bytes_per {
        return Err(Error::Format(format!(
            "expected {} data bytes, found {}",
            count * bytes_per,
            body.len()
        )));
    }
    let out: Vec<u32> = if bytes_per == 1 {
        body[..count].iter().map(|&b| u32::from(b)).collect()
    } else {
        body[..count * 2]
            .chunks_exact(2)
            .map(|p| u32::from(u16::from_be_bytes([p[0], p[1]])))
            .collect()
    };
    if let Some(v) = out.iter().find(|&&v| v > header.maxval) {
        return Err(Error::Format(format!("sample {v} exceeds maxval {}", header.maxval)));
    }
    Ok(out)
}

/// Decodes P5 or P6 bytes into a grayscale raster. Colour input is reduced
/// to BT.601 luma.
pub fn decode_image(bytes: &[u8]) -> Result<Raster> {
    let header = parse_header(bytes)?;
    let raw = samples(bytes, &header)?;
    let maxval = f64::from(header.maxval);
    let data = match header.kind {
        Kind::Gray => raw.iter().map(|&v| f64::from(v) / maxval).collect(),
        Kind::Rgb => raw
            .chunks_exact(3)
            .map(|p| {
                let y = LUMA_R * f64::from(p[0]) + LUMA_G * f64::from(p[1]) + LUMA_B * f64::from(p[2]);
                (y / maxval).clamp(0.0, 1.0)
            })
            .collect(),
    };
    Raster::new(header.width, header.height, data)
}

/// Decodes an 8-bit P5 mask; samples `>= 128` are inside.
pub fn decode_mask(bytes: &[u8]) -> Result<BinaryMask> {
    let header = parse_header(bytes)?;
    if header.kind != Kind::Gray || header.maxval != 255 {
        return Err(Error::Unsupported("masks must be 8-bit P5 PGM".into()));
    }
    let raw = samples(bytes, &header)?;
    BinaryMask::new(
        header.width,
        header.height,
        raw.iter().map(|&v| u8::from(v >= 128)).collect(),
    )
}

fn quantize(s: f64, maxval: u32) -> u32 {
    let m = f64::from(maxval);
    (s * m).round().clamp(0.0, m) as u32
}

/// Encodes a raster as P5 with `round(s * maxval)` samples.
pub fn encode_image(raster: &Raster, depth: Depth) -> Vec<u8> {
    let maxval = depth.maxval();
    let mut out = format!("P5\n{} {}\n{}\n", raster.width(), raster.height(), maxval).into_bytes();
    match depth {
        Depth::Eight => out.extend(raster.data().iter().map(|&s| quantize(s, maxval) as u8)),
        Depth::Sixteen => {
            for &s in raster.data() {
                out.extend_from_slice(&(quantize(s, maxval) as u16).to_be_bytes());
            }
        }
    }
    out
}

pub fn encode_mask(mask: &BinaryMask) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend(mask.data().iter().map(|&v| if v == 1 { 255u8 } else { 0 }));
    out
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        Error::Unsupported(m) => Error::Unsupported(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn load_image(path: impl AsRef<Path>) -> Result<Raster> {
    let path = path.as_ref();
    with_path(path, decode_image(&read(path)?))
}

pub fn load_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let path = path.as_ref();
    with_path(path, decode_mask(&read(path)?))
}

pub fn save_image(raster: &Raster, path: impl AsRef<Path>, depth: Depth) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_image(raster, depth)).map_err(|e| Error::io(path, e))
}

pub fn save_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_mask(mask)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pgm8(w: usize, h: usize, px: &[u8]) -> Vec<u8> {
        let mut v = format!("P5\n{w} {h}\n255\n").into_bytes();
        v.extend_from_slice(px);
        v
    }

    #[test]
    fn single_pixel_extremes() {
        assert_eq!(decode_image(&pgm8(1, 1, &[255])).unwrap().data(), &[1.0]);
        assert_eq!(decode_image(&pgm8(1, 1, &[0])).unwrap().data(), &[0.0]);
    }

    #[test]
    fn ppm_red_is_bt601_weight() {
        let mut bytes = b"P6 1 1 255\n".to_vec();
        bytes.extend_from_slice(&[255, 0, 0]);
        let r = decode_image(&bytes).unwrap();
        assert!((r.data()[0] - 0.299).abs() < 1e-15);
    }

    #[test]
    fn header_comments_and_whitespace() {
        let mut bytes = b"P5\n# made by hand\n2 # width\n1\n255\r".to_vec();
        bytes.extend_from_slice(&[0, 255]);
        assert_eq!(decode_image(&bytes).unwrap().data(), &[0.0, 1.0]);
    }

    #[test]
    fn sixteen_bit_big_endian() {
        let mut bytes = b"P5 2 1 65535\n".to_vec();
        bytes.extend_from_slice(&[0xff, 0xff, 0x80, 0x00]);
        let r = decode_image(&bytes).unwrap();
        assert_eq!(r.data()[0], 1.0);
        assert!((r.data()[1] - 32768.0 / 65535.0).abs() < 1e-15);
    }

    #[test]
    fn malformed_and_unsupported() {
        assert!(matches!(decode_image(b"P5 1 1"), Err(Error::Format(_))));
        assert!(matches!(decode_image(b"XX 1 1 255\n\0"), Err(Error::Format(_))));
        assert!(matches!(decode_image(b"P5 2 1 255\n\0"), Err(Error::Format(_))));
        assert!(matches!(decode_image(b"P5 1 1 1023\n\0\0"), Err(Error::Unsupported(_))));
        assert!(matches!(decode_image(b"P2 1 1 255\n0"), Err(Error::Unsupported(_))));
        assert!(matches!(decode_image(b"P5 0 1 255\n"), Err(Error::Format(_))));
    }

    #[test]
    fn quantization_examples() {
        let r = Raster::new(2, 1, vec![0.5, 1.0]).unwrap();
        let bytes = encode_image(&r, Depth::Eight);
        assert_eq!(&bytes[bytes.len() - 2..], &[128, 255]);
    }

    #[test]
    fn sixteen_bit_error_bound() {
        let data: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.618_033_988_7).fract()).collect();
        let r = Raster::new(1000, 1, data).unwrap();
        let back = decode_image(&encode_image(&r, Depth::Sixteen)).unwrap();
        let worst = r
            .data()
            .iter()
            .zip(back.data())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1.0 / 131070.0 + 1e-15, "{worst}");
    }

    #[test]
    fn mask_threshold() {
        let m = decode_mask(&pgm8(4, 1, &[0, 127, 128, 255])).unwrap();
        assert_eq!(m.data(), &[0, 0, 1, 1]);
        assert_eq!(decode_mask(&encode_mask(&m)).unwrap(), m);
        let all = decode_mask(&pgm8(2, 2, &[255; 4])).unwrap();
        assert_eq!(all.count_ones(), 4);
        let none = decode_mask(&pgm8(2, 2, &[0; 4])).unwrap();
        assert_eq!(none.count_ones(), 0);
    }

    #[test]
    fn mask_rejects_16_bit() {
        assert!(decode_mask(b"P5 1 1 65535\n\0\0").is_err());
    }
}

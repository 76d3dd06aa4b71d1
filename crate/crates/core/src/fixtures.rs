//! Deterministic synthetic test scenes with person/car masks.
//!
//! Each scene is a 512×512 textured background with person- and car-shaped
//! objects painted in; the masks are exactly the painted object regions.

use crate::raster_io::{BinaryMask, Raster};
use crate::strength_map::{ClassMaskEntry, StrengthParams, HOST_SIDE};

const N: usize = HOST_SIDE;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub host: Raster,
    pub person: BinaryMask,
    pub car: BinaryMask,
}

impl Fixture {
    /// Class table with both coefficients set to `coeff`.
    pub fn params(&self, k_alpha: f64, coeff: f64) -> crate::Result<StrengthParams> {
        StrengthParams::new(
            k_alpha,
            vec![
                ClassMaskEntry::new("person", &self.person, coeff)?,
                ClassMaskEntry::new("car", &self.car, coeff)?,
            ],
        )
    }
}

#[derive(Clone, Copy)]
enum Shape {
    Person { cx: f64, top: f64, height: f64 },
    Car { left: f64, bottom: f64, length: f64 },
}

impl Shape {
    fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            Shape::Person { cx, top, height } => {
                let u = height / 8.0; // head height
                let head = ellipse(x, y, cx, top + u * 0.5, u * 0.42, u * 0.5);
                let torso = rounded_rect(x, y, cx - u * 0.8, top + u, cx + u * 0.8, top + u * 4.2, u * 0.3);
                let arms = rounded_rect(x, y, cx - u * 1.1, top + u * 1.1, cx + u * 1.1, top + u * 3.6, u * 0.25)
                    && ((x - cx).abs() > u * 0.8 || torso);
                let legs = (rounded_rect(x, y, cx - u * 0.75, top + u * 4.0, cx - u * 0.1, top + height, u * 0.2))
                    || (rounded_rect(x, y, cx + u * 0.1, top + u * 4.0, cx + u * 0.75, top + height, u * 0.2));
                head || torso || arms || legs
            }
            Shape::Car { left, bottom, length } => {
                let h = length * 0.3;
                let body = rounded_rect(x, y, left, bottom - h * 0.75, left + length, bottom - h * 0.15, h * 0.12);
                let cabin = rounded_rect(
                    x,
                    y,
                    left + length * 0.22,
                    bottom - h * 1.25,
                    left + length * 0.72,
                    bottom - h * 0.7,
                    h * 0.15,
                );
                let r = h * 0.22;
                let wheel1 = ellipse(x, y, left + length * 0.2, bottom - r, r, r);
                let wheel2 = ellipse(x, y, left + length * 0.8, bottom - r, r, r);
                body || cabin || wheel1 || wheel2
            }
        }
    }
}

fn ellipse(x: f64, y: f64, cx: f64, cy: f64, rx: f64, ry: f64) -> bool {
    let (dx, dy) = ((x - cx) / rx, (y - cy) / ry);
    dx * dx + dy * dy <= 1.0
}

fn rounded_rect(x: f64, y: f64, x0: f64, y0: f64, x1: f64, y1: f64, r: f64) -> bool {
    if x < x0 || x > x1 || y < y0 || y > y1 {
        return false;
    }
    let cx = x.clamp(x0 + r, x1 - r);
    let cy = y.clamp(y0 + r, y1 - r);
    (x - cx).powi(2) + (y - cy).powi(2) <= r * r
}

fn hash(seed: u64, x: i64, y: i64) -> f64 {
    let mut z = seed
        ^ (x as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (y as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// Smoothly interpolated lattice noise in `[0, 1)` with cell size `cell`.
fn value_noise(seed: u64, x: f64, y: f64, cell: f64) -> f64 {
    let (gx, gy) = (x / cell, y / cell);
    let (x0, y0) = (gx.floor(), gy.floor());
    let (tx, ty) = (gx - x0, gy - y0);
    let (sx, sy) = (tx * tx * (3.0 - 2.0 * tx), ty * ty * (3.0 - 2.0 * ty));
    let (ix, iy) = (x0 as i64, y0 as i64);
    let a = hash(seed, ix, iy);
    let b = hash(seed, ix + 1, iy);
    let c = hash(seed, ix, iy + 1);
    let d = hash(seed, ix + 1, iy + 1);
    let top = a + (b - a) * sx;
    let bottom = c + (d - c) * sx;
    top + (bottom - top) * sy
}

fn texture(seed: u64, x: f64, y: f64) -> f64 {
    0.5 * value_noise(seed, x, y, 64.0)
        + 0.3 * value_noise(seed ^ 1, x, y, 16.0)
        + 0.2 * value_noise(seed ^ 2, x, y, 4.0)
}

struct Scene {
    name: &'static str,
    seed: u64,
    /// background(x, y, texture) in [0, 1]
    background: fn(f64, f64, f64) -> f64,
    people: &'static [(f64, f64, f64)],
    cars: &'static [(f64, f64, f64)],
}

fn render(scene: &Scene) -> Fixture {
    let people: Vec<Shape> = scene
        .people
        .iter()
        .map(|&(cx, top, height)| Shape::Person { cx, top, height })
        .collect();
    let cars: Vec<Shape> = scene
        .cars
        .iter()
        .map(|&(left, bottom, length)| Shape::Car { left, bottom, length })
        .collect();
    let inside = |shapes: &[Shape], x: usize, y: usize| {
        let (fx, fy) = (x as f64 + 0.5, y as f64 + 0.5);
        shapes.iter().any(|s| s.contains(fx, fy))
    };
    let person = BinaryMask::from_fn(N, N, |x, y| inside(&people, x, y));
    let car = BinaryMask::from_fn(N, N, |x, y| inside(&cars, x, y));
    let mut data = Vec::with_capacity(N * N);
    for y in 0..N {
        for x in 0..N {
            let (fx, fy) = (x as f64, y as f64);
            let t = texture(scene.seed, fx, fy);
            let i = y * N + x;
            let v = if person.data()[i] == 1 {
                0.25 + 0.35 * t
            } else if car.data()[i] == 1 {
                0.55 + 0.3 * value_noise(scene.seed ^ 7, fx, fy, 24.0)
            } else {
                (scene.background)(fx, fy, t)
            };
            data.push(v);
        }
    }
    Fixture {
        name: scene.name,
        host: Raster::from_clamped(N, N, data).expect("fixture dimensions"),
        person,
        car,
    }
}

fn street(x: f64, y: f64, t: f64) -> f64 {
    if y < 220.0 {
        0.75 + 0.15 * (1.0 - y / 220.0) + 0.05 * t
    } else {
        0.3 + 0.25 * t + 0.04 * ((x / 9.0).sin() * (y / 13.0).cos())
    }
}

fn park(x: f64, y: f64, t: f64) -> f64 {
    0.35 + 0.45 * t + 0.05 * ((x + y) / 21.0).sin()
}

fn lot(x: f64, y: f64, t: f64) -> f64 {
    let stripe = if (x as i64 / 96) % 2 == 0 && (y as i64 % 128) < 6 { 0.3 } else { 0.0 };
    0.4 + 0.2 * t + stripe
}

fn plaza(x: f64, y: f64, t: f64) -> f64 {
    let tiles = if ((x as i64 / 32) + (y as i64 / 32)) % 2 == 0 { 0.08 } else { -0.08 };
    0.5 + 0.3 * t + tiles
}

fn dusk(x: f64, y: f64, t: f64) -> f64 {
    0.1 + 0.5 * (y / 512.0) + 0.3 * t + 0.02 * (x / 50.0).cos()
}

const SCENES: [Scene; 5] = [
    Scene {
        name: "street",
        seed: 11,
        background: street,
        people: &[(120.0, 190.0, 260.0)],
        cars: &[(270.0, 460.0, 210.0)],
    },
    Scene {
        name: "park",
        seed: 23,
        background: park,
        people: &[(90.0, 60.0, 200.0), (300.0, 250.0, 240.0)],
        cars: &[],
    },
    Scene {
        name: "parking",
        seed: 37,
        background: lot,
        people: &[],
        cars: &[(20.0, 250.0, 220.0), (270.0, 250.0, 220.0), (150.0, 500.0, 200.0)],
    },
    Scene {
        name: "portrait",
        seed: 41,
        background: plaza,
        people: &[(256.0, 80.0, 420.0), (70.0, 40.0, 330.0), (450.0, 190.0, 310.0)],
        cars: &[(380.0, 150.0, 120.0)],
    },
    Scene {
        name: "crossing",
        seed: 53,
        background: dusk,
        people: &[(200.0, 230.0, 230.0), (440.0, 260.0, 200.0)],
        cars: &[(240.0, 420.0, 250.0)],
    },
];

/// The five standard scenes.
pub fn corpus() -> Vec<Fixture> {
    SCENES.iter().map(render).collect()
}

/// A near-white scene (values up to 1.0) with one person, for checking
/// behaviour when clamping bites.
pub fn saturated() -> Fixture {
    fn snow(_: f64, y: f64, t: f64) -> f64 {
        0.93 + 0.1 * t + 0.02 * (y / 40.0).sin()
    }
    render(&Scene {
        name: "snow",
        seed: 97,
        background: snow,
        people: &[(380.0, 120.0, 300.0)],
        cars: &[],
    })
}

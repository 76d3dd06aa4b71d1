use maskmark_core::codec::{
    self, block_origin, embed, extract, majority, EmbedOptions, REDUNDANCY, SLOT_COUNT,
};
use maskmark_core::metrics::{ber, nc_normalized, psnr};
use maskmark_core::raster_io::{decode_image, encode_image, Depth};
use maskmark_core::strength_map::StrengthParams;
use maskmark_core::{fixtures, Logo, Raster};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_balanced(rng: &mut ChaCha8Rng) -> Logo {
    loop {
        if let Some(l) = Logo::from_word(rng.gen()) {
            return l;
        }
    }
}

fn noise_host(rng: &mut ChaCha8Rng) -> Raster {
    Raster::new(512, 512, (0..512 * 512).map(|_| rng.gen_range(0.1..0.9)).collect()).unwrap()
}

#[test]
fn lossless_round_trip_with_random_logos() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for f in fixtures::corpus() {
        for k in [0.05, 0.5] {
            let logo = random_balanced(&mut rng);
            let e = embed(&f.host, &f.params(k, 1.0).unwrap(), &logo, &EmbedOptions::default()).unwrap();
            let x = extract(&e.watermarked, &e.side_info).unwrap();
            assert_eq!(x.logo, logo, "{}", f.name);
            for (bit, slot) in x.raw_bits.iter().zip(x.plan.slots()) {
                assert_eq!(*bit, logo.bit(slot.bit));
            }
            assert_eq!(x.ones.iter().map(|&n| n as usize).sum::<usize>(), 8 * REDUNDANCY);
        }
    }
}

#[test]
fn untouched_blocks_are_bit_identical() {
    let f = &fixtures::corpus()[0];
    let e = embed(&f.host, &f.params(0.3, 1.0).unwrap(), &Logo::default(), &EmbedOptions::default()).unwrap();
    for block in 0..16 {
        let (x0, y0) = block_origin(block);
        let a = f.host.crop(x0, y0, 128, 128).unwrap();
        let b = e.watermarked.crop(x0, y0, 128, 128).unwrap();
        if e.side_info.blocks.contains(&block) {
            assert_ne!(a, b);
        } else {
            assert!(a.iter().zip(&b).all(|(p, q)| p.to_bits() == q.to_bits()));
        }
    }
}

#[test]
fn distortion_within_parseval_bound() {
    for f in fixtures::corpus() {
        let e = embed(&f.host, &f.params(0.6, 1.0).unwrap(), &Logo::default(), &EmbedOptions::default()).unwrap();
        assert_eq!(e.gaps.len(), SLOT_COUNT);
        let sse: f64 = f.host.data().iter().zip(e.watermarked.data()).map(|(a, b)| (a - b).powi(2)).sum();
        let g_max = e.gaps.iter().cloned().fold(0.0, f64::max);
        // each coefficient of a pair moves by at most the enforced gap
        assert!(sse <= SLOT_COUNT as f64 * 2.0 * g_max * g_max, "{}", f.name);
    }
}

#[test]
fn embedding_twice_is_a_no_op() {
    for f in fixtures::corpus() {
        let p = f.params(0.3, 1.0).unwrap();
        let once = embed(&f.host, &p, &Logo::default(), &EmbedOptions::default()).unwrap();
        let twice = embed(&once.watermarked, &p, &Logo::default(), &EmbedOptions::default()).unwrap();
        assert_eq!(once.side_info, twice.side_info);
        let worst = once
            .watermarked
            .data()
            .iter()
            .zip(twice.watermarked.data())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-9, "{}: {worst}", f.name);
    }
}

#[test]
fn uniform_scaling_preserves_bits() {
    let f = &fixtures::corpus()[1];
    let e = embed(&f.host, &f.params(0.3, 1.0).unwrap(), &Logo::default(), &EmbedOptions::default()).unwrap();
    let before = extract(&e.watermarked, &e.side_info).unwrap();
    for lambda in [0.9, 0.5, 0.1] {
        let scaled = Raster::new(512, 512, e.watermarked.data().iter().map(|v| v * lambda).collect()).unwrap();
        let after = extract(&scaled, &e.side_info).unwrap();
        assert_eq!(before.raw_bits, after.raw_bits);
    }
}

#[test]
fn eight_bit_quantization_survives() {
    for f in fixtures::corpus() {
        for k in [0.01, 0.3, 1.0] {
            let logo = Logo::default();
            let e = embed(&f.host, &f.params(k, 1.0).unwrap(), &logo, &EmbedOptions::default()).unwrap();
            let q8 = decode_image(&encode_image(&e.watermarked, Depth::Eight)).unwrap();
            let q16 = decode_image(&encode_image(&e.watermarked, Depth::Sixteen)).unwrap();
            for q in [q8, q16] {
                let x = extract(&q, &e.side_info).unwrap();
                assert_eq!(ber(&logo, &x.logo), 0.0, "{} k={k}", f.name);
            }
        }
    }
}

#[test]
fn saturated_host_still_decodes() {
    // clamping eats part of the enforced gap in white regions; voting covers it
    let f = fixtures::saturated();
    let logo = Logo::default();
    for k in [0.05, 0.3] {
        let e = embed(&f.host, &f.params(k, 1.0).unwrap(), &logo, &EmbedOptions::default()).unwrap();
        let x = extract(&e.watermarked, &e.side_info).unwrap();
        assert_eq!(x.logo, logo, "k={k}");
    }
}

#[test]
fn psnr_falls_as_k_rises() {
    for f in fixtures::corpus() {
        let mut last = f64::INFINITY;
        for k in [0.01, 0.05, 0.1, 0.3, 0.6, 1.0] {
            let e = embed(&f.host, &f.params(k, 1.0).unwrap(), &Logo::default(), &EmbedOptions::default()).unwrap();
            let q = psnr(&f.host, &e.watermarked).unwrap();
            assert!(q <= last, "{} k={k}: {q} > {last}", f.name);
            last = q;
        }
    }
}

#[test]
fn wrong_blocks_read_noise() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let params = StrengthParams::new(0.3, vec![]).unwrap();
    let mut total = 0.0;
    let trials = 40;
    for _ in 0..trials {
        let host = noise_host(&mut rng);
        let logo = random_balanced(&mut rng);
        let e = embed(&host, &params, &logo, &EmbedOptions::default()).unwrap();
        assert_eq!(e.side_info.blocks, [0, 1, 2, 3, 4]);
        let mut wrong = e.side_info.clone();
        wrong.blocks = [11, 12, 13, 14, 15];
        total += ber(&logo, &extract(&e.watermarked, &wrong).unwrap().logo);
    }
    let mean = total / trials as f64;
    assert!((mean - 0.5).abs() <= 0.1, "{mean}");
}

#[test]
fn majority_corrects_up_to_seven_flips() {
    for bit in [0u8, 1] {
        for flips in 0..=REDUNDANCY as u8 {
            let ones = if bit == 1 { REDUNDANCY as u8 - flips } else { flips };
            let decided = majority(&[ones; 16]).bit(0);
            assert_eq!(decided == bit, flips <= 7, "bit {bit} flips {flips}");
        }
    }
}

#[test]
fn extraction_reports_nc_one_on_clean_input() {
    let f = &fixtures::corpus()[2];
    let logo = Logo::default();
    let e = embed(&f.host, &f.params(0.3, 1.0).unwrap(), &logo, &EmbedOptions::default()).unwrap();
    let x = codec::extract(&e.watermarked, &e.side_info).unwrap();
    assert_eq!(nc_normalized(&logo, &x.logo).unwrap(), 1.0);
}

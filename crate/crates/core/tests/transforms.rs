use maskmark_core::transforms::{dct2, dwt2, dwt2_two_level, idct2, idwt2, idwt2_two_level, Grid};
use proptest::prelude::*;

fn grid(side: usize) -> impl Strategy<Value = Grid> {
    proptest::collection::vec(-4.0f64..4.0, side * side).prop_map(move |d| Grid::new(side, side, d).unwrap())
}

fn max_err(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn haar_round_trip(g in grid(16)) {
        let back = idwt2(&dwt2(&g).unwrap()).unwrap();
        prop_assert!(max_err(g.data(), back.data()) <= 1e-12);
    }

    #[test]
    fn two_level_round_trip(g in grid(128)) {
        let back = idwt2_two_level(&dwt2_two_level(&g).unwrap()).unwrap();
        prop_assert!(max_err(g.data(), back.data()) <= 1e-9);
    }

    #[test]
    fn haar_is_linear(x in grid(8), y in grid(8), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let mix: Vec<f64> = x.data().iter().zip(y.data()).map(|(p, q)| a * p + b * q).collect();
        let lhs = dwt2(&Grid::new(8, 8, mix).unwrap()).unwrap();
        let (tx, ty) = (dwt2(&x).unwrap(), dwt2(&y).unwrap());
        for (l, (p, q)) in [(&lhs.ll, (&tx.ll, &ty.ll)), (&lhs.lh, (&tx.lh, &ty.lh)), (&lhs.hl, (&tx.hl, &ty.hl)), (&lhs.hh, (&tx.hh, &ty.hh))] {
            let rhs: Vec<f64> = p.data().iter().zip(q.data()).map(|(u, v)| a * u + b * v).collect();
            prop_assert!(max_err(l.data(), &rhs) <= 1e-9);
        }
    }

    #[test]
    fn dct_round_trip_parseval_linearity(
        x in proptest::array::uniform32(-2.0f64..2.0),
        y in proptest::array::uniform32(-2.0f64..2.0),
        a in -3.0f64..3.0,
    ) {
        let s: [f64; 64] = std::array::from_fn(|i| x[i % 32] * if i < 32 { 1.0 } else { -0.5 });
        let t: [f64; 64] = std::array::from_fn(|i| y[(i * 7) % 32]);
        let d = dct2(&s);
        prop_assert!(max_err(&s, &idct2(&d)) <= 1e-12);
        let es: f64 = s.iter().map(|v| v * v).sum();
        let ed: f64 = d.0.iter().map(|v| v * v).sum();
        prop_assert!((es - ed).abs() <= 1e-9 * es.max(1e-300));
        let mix: [f64; 64] = std::array::from_fn(|i| a * s[i] + t[i]);
        let lin: Vec<f64> = d.0.iter().zip(dct2(&t).0.iter()).map(|(p, q)| a * p + q).collect();
        prop_assert!(max_err(&dct2(&mix).0, &lin) <= 1e-9);
    }
}

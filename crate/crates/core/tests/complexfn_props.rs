mod common;

use common::{c, disc_point, square_point};
use fock_core::complexfn::{Exactness, Order};
use fock_core::{EntireFunction, ExpQuadratic, PolyTimesExpQuad, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `exp(w)` by its power series with compensated summation, reflected for `Re w < 0`.
fn exp_series(w: C64) -> C64 {
    if w.re < 0.0 {
        return C64::new(1.0, 0.0) / exp_series(-w);
    }
    let mut sum = C64::new(0.0, 0.0);
    let mut comp = C64::new(0.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    for k in 1..400 {
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        term = term * w / k as f64;
        if term.norm() < 1e-30 * sum.norm() {
            break;
        }
    }
    sum
}

#[test]
fn eval_agrees_with_series_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let g = ExpQuadratic::new(square_point(&mut rng, 1.0), square_point(&mut rng, 1.0), square_point(&mut rng, 0.5));
        let q = vec![square_point(&mut rng, 1.0), square_point(&mut rng, 1.0), c(1.0, 0.5)];
        let pf: EntireFunction = PolyTimesExpQuad::new(q.clone(), g).unwrap().into();
        let z = disc_point(&mut rng, 3.0);
        let w = g.a0 + g.a1 * z + g.a2 * z * z;
        let oracle = exp_series(w);
        let got = EntireFunction::from(g).eval(z).unwrap();
        assert!(((got - oracle) / oracle).norm() < 1e-10);
        let qz = q[0] + q[1] * z + q[2] * z * z;
        let got = pf.eval(z).unwrap();
        assert!(((got - qz * oracle) / (qz * oracle)).norm() < 1e-10);
    }
}

#[test]
fn unit_polynomial_matches_core() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let g = ExpQuadratic::new(c(0.3, -0.2), c(0.5, 0.5), c(-0.1, 0.2));
    let p: EntireFunction = PolyTimesExpQuad::new(vec![c(1.0, 0.0)], g).unwrap().into();
    let e: EntireFunction = g.into();
    for _ in 0..100 {
        let z = square_point(&mut rng, 4.0);
        assert_eq!(p.eval(z).unwrap(), e.eval(z).unwrap());
    }
}

#[test]
fn max_modulus_examples() {
    let f: EntireFunction = ExpQuadratic::gaussian(c(0.375, 0.0)).into();
    assert!((f.max_modulus(2.0, 8).unwrap() - 1.5f64.exp()).abs() < 1e-12);
    let five = EntireFunction::constant(c(5.0, 0.0)).unwrap();
    assert!((five.max_modulus(3.0, 16).unwrap() - 5.0).abs() < 1e-14);
}

proptest! {
    #[test]
    fn exact_type_is_modulus_of_a2(re in -3.0f64..3.0, im in -3.0f64..3.0, a1r in -2.0f64..2.0) {
        prop_assume!(re != 0.0 || im != 0.0);
        let g = ExpQuadratic::new(c(0.1, 0.0), c(a1r, 0.0), c(re, im));
        let prof = EntireFunction::from(g).order_type().unwrap();
        prop_assert_eq!(prof.order, Order::Finite(2.0));
        prop_assert_eq!(prof.sigma, Some(c(re, im).norm()));
        prop_assert_eq!(prof.exactness, Exactness::Exact);
    }

    /// Refining by doubling keeps every old sample point, so the maximum cannot drop.
    #[test]
    fn max_modulus_monotone_under_refinement(re in -1.0f64..1.0, im in -1.0f64..1.0, r in 0.1f64..4.0) {
        let f: EntireFunction = ExpQuadratic::new(c(0.0, 0.0), c(0.3, -0.7), c(re, im)).into();
        let mut prev = 0.0;
        for k in 3..10 {
            let m = f.max_modulus(r, 1 << k).unwrap();
            prop_assert!(m >= prev);
            prev = m;
        }
    }
}

mod common;

use common::{c, disc_point, square_point};
use fock_core::fockspace::{fock_norm, fock_norm_quadrature, gaussian_norm_expquad, kernel_norm, NormMethod};
use fock_core::{EntireFunction, ExpQuadratic, FockContext, PolyTimesExpQuad};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn quadrature_agrees_with_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..50 {
        let alpha = rng.gen_range(0.5..2.5);
        let a2 = disc_point(&mut rng, 0.4 * alpha / 2.0);
        let g = ExpQuadratic::new(square_point(&mut rng, 0.5), square_point(&mut rng, 1.0), a2);
        let p = [1.0, 2.0, 4.0][i % 3];
        let ctx = FockContext::fp(p, alpha).unwrap();
        let exact = gaussian_norm_expquad(&g, &ctx).unwrap();
        let quad = fock_norm_quadrature(&g.into(), p, alpha, 1e-10).unwrap();
        assert_eq!(quad.method, NormMethod::Quadrature);
        let rel = (quad.value() - exact.value()).abs() / exact.value();
        assert!(rel <= 1e-8, "case {i}: rel {rel}");
    }
}

#[test]
fn pointwise_bound_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let funcs: Vec<EntireFunction> = vec![
        ExpQuadratic::new(c(0.1, 0.2), c(0.4, -0.3), c(0.1, 0.05)).into(),
        PolyTimesExpQuad::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(0.5, 0.0)], ExpQuadratic::gaussian(c(0.1, 0.0)))
            .unwrap()
            .into(),
    ];
    for f in &funcs {
        for p in [1.0, 2.0] {
            let ctx = FockContext::fp(p, 1.0).unwrap();
            let n = fock_norm(f, &ctx, 1e-10).unwrap().value();
            for _ in 0..100 {
                let z = disc_point(&mut rng, 5.0);
                let bound = n * (z.norm_sqr() / 2.0).exp() * (1.0 + 1e-8);
                assert!(f.eval(z).unwrap().norm() <= bound);
            }
        }
    }
}

#[test]
fn kernel_norm_matches_numeric_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..5 {
        let alpha = rng.gen_range(0.5..2.0);
        let w = disc_point(&mut rng, 1.5);
        let k: EntireFunction = ExpQuadratic::kernel(w, alpha).into();
        let exact = kernel_norm(w, &FockContext::fp(2.0, alpha).unwrap());
        for ctx in [
            FockContext::fp(1.0, alpha).unwrap(),
            FockContext::fp(2.0, alpha).unwrap(),
            FockContext::finfty(alpha).unwrap(),
        ] {
            let n = fock_norm(&k, &ctx, 1e-10).unwrap().value();
            assert!((n - exact).abs() <= 1e-8 * exact);
            if let Some(p) = ctx.finite_p() {
                let q = fock_norm_quadrature(&k, p, alpha, 1e-10).unwrap().value();
                assert!((q - exact).abs() <= 1e-8 * exact);
            }
        }
    }
}

#[test]
fn norm_is_homogeneous() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let g = ExpQuadratic::new(c(0.2, 0.0), c(0.3, 0.3), c(0.1, -0.1));
    let poly: EntireFunction = PolyTimesExpQuad::new(vec![c(0.5, 0.0), c(1.0, 1.0)], g).unwrap().into();
    for _ in 0..10 {
        let s = square_point(&mut rng, 3.0);
        for ctx in [FockContext::fp(2.0, 1.0).unwrap(), FockContext::finfty(1.0).unwrap()] {
            for f in [EntireFunction::from(g), poly.clone()] {
                let n = fock_norm(&f, &ctx, 1e-10).unwrap().value();
                let ns = fock_norm(&f.scale(s).unwrap(), &ctx, 1e-10).unwrap().value();
                assert!((ns - s.norm() * n).abs() <= 1e-10 * ns, "{ns} vs {}", s.norm() * n);
            }
        }
    }
}

#[test]
fn tolerance_floor_is_enforced() {
    let ctx = FockContext::fp(2.0, 1.0).unwrap();
    assert!(fock_norm(&ExpQuadratic::one().into(), &ctx, 1e-13).is_err());
}

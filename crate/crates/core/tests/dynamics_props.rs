mod common;

use common::{boundary_op, c, exp_quadratic_op};
use fock_core::dynamics::{angle_criterion_ratio, supercyclicity_report, CaseTag, DynamicsConfig, Trend};
use fock_core::iterates::{convergence_residual, limit_function};
use fock_core::wcomp::Certificate;
use fock_core::{AffineSymbol, ExpQuadratic, FockContext, Verdict, WeightedCompOp};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn square_of_non_real_boundary_operator_is_compact() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for i in 0..50 {
        let w = boundary_op(&mut rng, true, i % 2 == 0, None);
        assert_eq!(w.classify().unwrap().verdict, Verdict::BoundedNotCompact);
        let sq = w.square().unwrap().classify().unwrap();
        assert_eq!(sq.verdict, Verdict::Compact);
        let Certificate::QuadraticForm { mu, .. } = sq.certificate else { panic!() };
        assert!(mu < 0.0);
    }
}

#[test]
fn every_bounded_case_gets_a_proof_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let cfg = DynamicsConfig { n_max: 32, ..Default::default() };
    for i in 0..20 {
        let w = boundary_op(&mut rng, i % 2 == 0, i % 4 < 2, None);
        let r = supercyclicity_report(&w, &cfg).unwrap();
        let want = if i % 2 == 0 { CaseTag::NonRealLambdaSquareCompact } else { CaseTag::RealLambdaAngleCriterion };
        assert_eq!(r.case_tag, want);
    }
    for _ in 0..10 {
        let w = exp_quadratic_op(&mut rng, 0.6);
        assert_eq!(supercyclicity_report(&w, &cfg).unwrap().case_tag, CaseTag::CompactAdjointEigenvalue);
    }
}

#[test]
fn limit_residual_decreases_after_ten_steps() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut ops = vec![WeightedCompOp::new(
        ExpQuadratic::gaussian(c(0.375, 0.0)).into(),
        AffineSymbol::new(c(0.0, 0.0), c(0.5, 0.0)),
        FockContext::finfty0(1.0).unwrap(),
    )
    .unwrap()];
    for i in 0..4 {
        let w = boundary_op(&mut rng, false, i % 2 == 0, Some(1.0));
        ops.push(w.with_ctx(FockContext::finfty0(1.0).unwrap()));
    }
    for w in &ops {
        let l = limit_function(w).unwrap();
        let one = ExpQuadratic::one().into();
        let mut prev = f64::INFINITY;
        for n in 10..=60 {
            let r = convergence_residual(w, &l, &one, n, 2.0, 33).unwrap();
            assert!(r <= prev * (1.0 + 1e-9) + 1e-15, "n={n}: {r} > {prev}");
            prev = r;
        }
    }
}

/// For compact `W` the ratio tends to a positive constant: `‖Wⁿ1‖/|ψ(z0)|ⁿ`
/// converges to the norm of the rank-one limit, so the trend is flat.
#[test]
fn compact_angle_ratio_levels_off() {
    let w = WeightedCompOp::new(
        ExpQuadratic::gaussian(c(0.1, 0.0)).into(),
        AffineSymbol::new(c(0.0, 0.0), c(0.5, 0.0)),
        FockContext::fp(2.0, 1.0).unwrap(),
    )
    .unwrap();
    let rep = angle_criterion_ratio(&w, &ExpQuadratic::one().into(), 64).unwrap();
    assert_eq!(rep.trend, Trend::Bounded);
    let last = rep.values.last().unwrap().value;
    assert!(last > 0.1 && last < 1.0);
}

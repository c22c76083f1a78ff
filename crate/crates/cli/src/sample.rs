//! Seeded random operators for the acceptance criteria.

use std::f64::consts::{PI, TAU};

use fock_core::{AffineSymbol, ExpQuadratic, FockContext, WeightedCompOp, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One independent stream per criterion, so adding cases to one criterion
/// leaves the others' draws untouched.
pub fn stream(seed: u64, criterion: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(criterion as u64);
    rng
}

pub fn square_point(rng: &mut ChaCha8Rng, h: f64) -> C64 {
    C64::new(rng.gen_range(-h..h), rng.gen_range(-h..h))
}

pub fn disc_point(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

/// `λ` with `r_lo ≤ |λ| < r_hi` and uniform argument.
pub fn lambda(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(r_lo..r_hi), rng.gen_range(0.0..TAU))
}

/// Exp-quadratic multiplier with `|a2| = frac·αβ/2` and random `a0, a1, a`.
pub fn exp_quadratic_op(rng: &mut ChaCha8Rng, lam: C64, frac: f64, ctx: FockContext) -> WeightedCompOp {
    let beta = 1.0 - lam.norm_sqr();
    let a2 = C64::from_polar(frac * ctx.alpha() * beta / 2.0, rng.gen_range(0.0..TAU));
    let g = ExpQuadratic::new(square_point(rng, 0.5), square_point(rng, 1.0), a2);
    WeightedCompOp::new(g.into(), AffineSymbol::new(square_point(rng, 1.0), lam), ctx)
        .expect("finite symbol and multiplier")
}

/// Operator on the boundary `|a2| = αβ/2` that is bounded and not compact:
/// `t = a1 + α·conj(a)·λ` is zero or aligned with `a2 = −(αβ/2)t²/|t|²`.
/// A non-real `λ` keeps its argument at least 0.2 rad from the real axis.
pub fn boundary_op(rng: &mut ChaCha8Rng, non_real: bool, zero_t: bool, ctx: FockContext) -> WeightedCompOp {
    let alpha = ctx.alpha();
    let r = rng.gen_range(0.2..0.9);
    let lam = if non_real {
        let th = rng.gen_range(0.2..PI - 0.2);
        C64::from_polar(r, if rng.gen::<bool>() { th } else { -th })
    } else {
        C64::new(if rng.gen::<bool>() { r } else { -r }, 0.0)
    };
    let beta = 1.0 - lam.norm_sqr();
    let angle = rng.gen_range(0.0..TAU);
    let a2 = C64::from_polar(alpha * beta / 2.0, angle);
    let a = square_point(rng, 1.0);
    let t = if zero_t {
        C64::new(0.0, 0.0)
    } else {
        C64::from_polar(rng.gen_range(0.2..1.5), (angle + PI) / 2.0)
    };
    let a1 = t - a.conj() * lam * alpha;
    let g = ExpQuadratic::new(square_point(rng, 0.5), a1, a2);
    WeightedCompOp::new(g.into(), AffineSymbol::new(a, lam), ctx).expect("finite symbol and multiplier")
}

/// `ψ = c·exp(−α·conj(a)·λ·z)` with `|λ| = 1`: a multiple `|c|e^{α|a|²/2}` of an isometry.
pub fn unit_modulus_op(rng: &mut ChaCha8Rng, ctx: FockContext) -> (WeightedCompOp, f64) {
    let lam = C64::from_polar(1.0, rng.gen_range(0.0..TAU));
    let a = square_point(rng, 1.0);
    let c = C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU));
    let alpha = ctx.alpha();
    let g = ExpQuadratic::new(c.ln(), -alpha * a.conj() * lam, C64::new(0.0, 0.0));
    let kappa = c.norm() * (alpha * a.norm_sqr() / 2.0).exp();
    let w = WeightedCompOp::new(g.into(), AffineSymbol::new(a, lam), ctx).expect("finite symbol and multiplier");
    (w, kappa)
}

/// The worked example: `α = 1`, `λ = 1/2`, `ψ = exp(αβz²/2)`, `a = 0`.
pub fn worked_example(ctx: FockContext) -> WeightedCompOp {
    let lam = 0.5;
    let beta = 1.0 - lam * lam;
    WeightedCompOp::new(
        ExpQuadratic::gaussian(C64::new(ctx.alpha() * beta / 2.0, 0.0)).into(),
        AffineSymbol::new(C64::new(0.0, 0.0), C64::new(lam, 0.0)),
        ctx,
    )
    .expect("finite symbol and multiplier")
}

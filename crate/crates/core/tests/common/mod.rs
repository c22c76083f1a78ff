#![allow(dead_code)]

use fock_core::{AffineSymbol, ExpQuadratic, FockContext, WeightedCompOp, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn disc_point(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn square_point(rng: &mut ChaCha8Rng, h: f64) -> C64 {
    c(rng.gen_range(-h..h), rng.gen_range(-h..h))
}

/// `0 < r_lo ≤ |λ| ≤ r_hi < 1`, argument uniform.
pub fn lambda(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(r_lo..r_hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Exp-quadratic operator on `F²_α` with `|a2| = frac·αβ/2`.
pub fn exp_quadratic_op(rng: &mut ChaCha8Rng, frac: f64) -> WeightedCompOp {
    let alpha = rng.gen_range(0.5..2.0);
    let lam = lambda(rng, 0.2, 0.9);
    let beta = 1.0 - lam.norm_sqr();
    let a2 = C64::from_polar(frac * alpha * beta / 2.0, rng.gen_range(0.0..std::f64::consts::TAU));
    let g = ExpQuadratic::new(square_point(rng, 0.5), square_point(rng, 1.0), a2);
    WeightedCompOp::new(
        g.into(),
        AffineSymbol::new(square_point(rng, 1.0), lam),
        FockContext::fp(2.0, alpha).unwrap(),
    )
    .unwrap()
}

/// Bounded non-compact exp-quadratic operator: `|a2| = αβ/2` with `t` either
/// zero or aligned so that `a2 = −(αβ/2)t²/|t|²`. `λ` stays at least 0.2 rad
/// away from the real axis when `non_real` is set, and is real otherwise.
pub fn boundary_op(rng: &mut ChaCha8Rng, non_real: bool, zero_t: bool, ctx_alpha: Option<f64>) -> WeightedCompOp {
    use std::f64::consts::PI;
    let alpha = ctx_alpha.unwrap_or_else(|| rng.gen_range(0.5..2.0));
    let r = rng.gen_range(0.2..0.9);
    let lam = if non_real {
        let mut th = rng.gen_range(0.2..PI - 0.2);
        if rng.gen::<bool>() {
            th = -th;
        }
        C64::from_polar(r, th)
    } else if rng.gen::<bool>() {
        C64::new(r, 0.0)
    } else {
        C64::new(-r, 0.0)
    };
    let beta = 1.0 - lam.norm_sqr();
    let phi_ang = rng.gen_range(0.0..2.0 * PI);
    let a2 = C64::from_polar(alpha * beta / 2.0, phi_ang);
    let a = square_point(rng, 1.0);
    let t = if zero_t {
        C64::new(0.0, 0.0)
    } else {
        C64::from_polar(rng.gen_range(0.2..1.5), (phi_ang + PI) / 2.0)
    };
    let a1 = t - a.conj() * lam * alpha;
    let g = ExpQuadratic::new(square_point(rng, 0.5), a1, a2);
    WeightedCompOp::new(g.into(), AffineSymbol::new(a, lam), FockContext::fp(2.0, alpha).unwrap()).unwrap()
}

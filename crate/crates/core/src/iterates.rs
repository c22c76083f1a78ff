//! Powers of `W = W_{ψ,φ}` with `ψ = e^g`, `g(z) = a0 + a1 z + a2 z²`.
//!
//! With fixed point `z0 = a/(1−λ)`, `φ_k(z) − z0 = λᵏ(z − z0)`, so expanding
//! `g` around `z0` and summing the geometric series gives
//!
//! ```text
//! Σ_{k<n} g(φ_k(z)) = n·g(z0) + g'(z0)·S1·(z − z0) + a2·S2·(z − z0)²,
//! S1 = (1 − λⁿ)/(1 − λ),  S2 = (1 − λ²ⁿ)/(1 − λ²),
//! ```
//!
//! which in powers of `z` reads
//! `c2n = a2·S2`, `c1n = a1·S1 + 2a2·z0·(S1 − S2)`, `c0n = −a1·S1·z0 + a2·z0²·(S2 − 2S1)`.

use serde::{Deserialize, Serialize};

use crate::complexfn::{EntireFunction, ExpQuadratic, C64, ONE, ZERO};
use crate::error::{FockError, Result};
use crate::fockspace::{decay_profile_rays, fock_norm, DecayReport, FockContext, NormResult, BOUNDARY_SLACK};
use crate::logspace::LogValue;
use crate::wcomp::{classify, AffineSymbol, Verdict, WeightedCompOp, EXACT_SLACK};

/// `φ_n = φ ∘ … ∘ φ` (`n` times), `φ_0 = id`.
pub fn phi_n(phi: &AffineSymbol, n: u32) -> Result<AffineSymbol> {
    if n == 0 {
        return Ok(AffineSymbol::identity());
    }
    if phi.lambda == ONE {
        if phi.a == ZERO {
            return Ok(AffineSymbol::identity());
        }
        return Err(FockError::NoFixedPoint);
    }
    let z0 = phi.fixed_point()?;
    let ln = phi.lambda.powu(n);
    Ok(AffineSymbol::new(z0 * (ONE - ln), ln))
}

/// `(1 − qⁿ)/(1 − q)`, summed directly when `q` is close to 1.
fn geometric_sum(q: C64, n: u32) -> C64 {
    if (ONE - q).norm() < 1e-6 {
        let mut acc = ZERO;
        let mut p = ONE;
        for _ in 0..n {
            acc += p;
            p *= q;
        }
        acc
    } else {
        (ONE - q.powu(n)) / (ONE - q)
    }
}

/// `Wⁿf(z) = exp(n·g(z0) + c0n + c1n·z + c2n·z²)·f(φ_n(z))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterateCoeffs {
    pub n: u32,
    /// `n·g(z0)`, so that `ψ(z0)ⁿ = exp(log_psi_z0_factor)`.
    pub log_psi_z0_factor: C64,
    pub c0n: C64,
    pub c1n: C64,
    pub c2n: C64,
    pub phi_n: AffineSymbol,
}

impl IterateCoeffs {
    /// The multiplier of `Wⁿ`, `exp(n·g(z0) + c0n + c1n z + c2n z²)`.
    pub fn multiplier(&self) -> ExpQuadratic {
        ExpQuadratic::new(self.log_psi_z0_factor + self.c0n, self.c1n, self.c2n)
    }

    /// `ψ(z0)^{−n}·Wⁿ`'s multiplier, `exp(c0n + c1n z + c2n z²)`.
    pub fn scaled_multiplier(&self) -> ExpQuadratic {
        ExpQuadratic::new(self.c0n, self.c1n, self.c2n)
    }

    pub fn log_apply(&self, f: &EntireFunction, z: C64) -> Result<LogValue> {
        Ok(self
            .multiplier()
            .log_eval(z)
            .mul(f.log_eval(self.phi_n.apply(z))?))
    }

    /// `Wⁿf` as a function, for structured `f`.
    pub fn apply_structured(&self, f: &EntireFunction) -> Result<EntireFunction> {
        EntireFunction::from(self.multiplier()).mul(&f.compose_affine(self.phi_n.a, self.phi_n.lambda)?)
    }
}

fn admissible_lambda(lambda: C64) -> Result<()> {
    if lambda == ZERO || lambda == ONE {
        return Err(FockError::DegenerateLambda(format!("{lambda}")));
    }
    Ok(())
}

pub fn iterate_coeffs(w: &WeightedCompOp, n: u32) -> Result<IterateCoeffs> {
    let g = w.exp_quadratic_psi()?;
    let phi = w.phi();
    admissible_lambda(phi.lambda)?;
    if n == 0 {
        return Err(FockError::InvalidInput("iterate index must be positive".into()));
    }
    let z0 = phi.fixed_point()?;
    let s1 = geometric_sum(phi.lambda, n);
    let s2 = geometric_sum(phi.lambda * phi.lambda, n);
    Ok(IterateCoeffs {
        n,
        log_psi_z0_factor: g.exponent(z0) * n as f64,
        c0n: -g.a1 * s1 * z0 + g.a2 * z0 * z0 * (s2 - s1 * 2.0),
        c1n: g.a1 * s1 + g.a2 * z0 * (s1 - s2) * 2.0,
        c2n: g.a2 * s2,
        phi_n: phi_n(&phi, n)?,
    })
}

/// `α/2 − |c2n|` computed without the cancellation of `1 − λ²ⁿ` for real `λ`.
pub fn iterate_margin(w: &WeightedCompOp, n: u32) -> Result<f64> {
    let g = w.exp_quadratic_psi()?;
    let lambda = w.phi().lambda;
    admissible_lambda(lambda)?;
    let half = w.alpha() / 2.0;
    if lambda.im == 0.0 && lambda.re.abs() < 1.0 {
        let l2 = lambda.re * lambda.re;
        let ratio = g.a2.norm() / (1.0 - l2);
        let mut lead = half - ratio;
        if lead.abs() <= BOUNDARY_SLACK * half {
            lead = 0.0;
        }
        return Ok(lead + ratio * l2.powi(n as i32));
    }
    let c = iterate_coeffs(w, n)?;
    Ok(half - c.c2n.norm())
}

/// `(Wⁿf)(z) = (∏_{k<n} ψ(φ_k(z)))·f(φ_n(z))`, accumulated in log space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterateValue {
    pub log: LogValue,
    /// The value exceeds the `f64` range; `log` still carries it.
    pub overflow: bool,
    pub underflow: bool,
}

impl IterateValue {
    pub fn to_complex(&self) -> C64 {
        self.log.to_complex()
    }
}

pub fn iterate_apply_product(w: &WeightedCompOp, f: &EntireFunction, n: u32, z: C64) -> Result<IterateValue> {
    let phi = w.phi();
    let mut acc = LogValue::ONE;
    let mut x = z;
    for _ in 0..n {
        acc = acc.mul(w.psi().log_eval(x)?);
        x = phi.apply(x);
    }
    let log = acc.mul(f.log_eval(x)?);
    Ok(IterateValue {
        log,
        overflow: log.overflows(),
        underflow: !log.is_zero() && log.underflows(),
    })
}

/// Limits of the iterate coefficients, and `F(z) = exp(c1 z + (a2/β) z²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitData {
    /// `lim c0n`, from the closed form of the expansion above.
    pub c0: C64,
    pub c1: C64,
    pub f: ExpQuadratic,
    /// `e^{c0}`.
    pub c: C64,
    pub z0: C64,
}

impl LimitData {
    /// `c·F(z)·f(z0)`.
    pub fn apply(&self, f: &EntireFunction, z: C64) -> Result<C64> {
        limit_operator_apply(self, f, self.z0, z)
    }
}

/// The coefficient limits for `0 < |λ| < 1`, with no further hypotheses.
pub fn formal_limit(w: &WeightedCompOp) -> Result<LimitData> {
    let g = w.exp_quadratic_psi()?;
    let phi = w.phi();
    admissible_lambda(phi.lambda)?;
    if phi.lambda.norm() >= 1.0 {
        return Err(FockError::HypothesisViolated("limit needs |λ| < 1".into()));
    }
    let lam = phi.lambda;
    let z0 = phi.fixed_point()?;
    let s1 = ONE / (ONE - lam);
    let s2 = ONE / (ONE - lam * lam);
    let c1 = s1 * (g.a1 + lam * phi.a * g.a2 * 2.0 / (ONE - lam * lam));
    let c0 = -g.a1 * s1 * z0 + g.a2 * z0 * z0 * (s2 - s1 * 2.0);
    Ok(LimitData {
        c0,
        c1,
        f: ExpQuadratic::new(ZERO, c1, g.a2 * s2),
        c: c0.exp(),
        z0,
    })
}

/// The limit data in the regime where `ψ(z0)^{−n}Wⁿ` converges to a rank-one
/// operator: real `λ`, `|a2| = αβ/2` and `W` bounded but not compact.
pub fn limit_function(w: &WeightedCompOp) -> Result<LimitData> {
    let g = w.exp_quadratic_psi()?;
    let lam = w.phi().lambda;
    if !(lam.norm() < 1.0) || lam == ZERO {
        return Err(FockError::HypothesisViolated("need 0 < |λ| < 1".into()));
    }
    if lam.im.abs() > EXACT_SLACK * lam.norm() {
        return Err(FockError::HypothesisViolated("λ must be real".into()));
    }
    let ab = w.alpha() * w.phi().beta();
    if (2.0 * g.a2.norm() - ab).abs() > EXACT_SLACK * ab {
        return Err(FockError::HypothesisViolated("need |a2| = αβ/2".into()));
    }
    if classify(w)?.verdict != Verdict::BoundedNotCompact {
        return Err(FockError::HypothesisViolated("W must be bounded and not compact".into()));
    }
    formal_limit(w)
}

/// `c·F(z)·f(z0)`.
pub fn limit_operator_apply(l: &LimitData, f: &EntireFunction, z0: C64, z: C64) -> Result<C64> {
    let fz0 = f.eval(z0)?;
    if fz0 == ZERO {
        return Ok(ZERO);
    }
    Ok(l.c * l.f.eval(z) * fz0)
}

/// Evidence that `F` lies in `F^∞_α` but not in the little space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitEvidence {
    pub sup_norm: NormResult,
    /// Angle of the ray along which the quadratic part of `log|F|` equals `(α/2)|z|²`.
    pub ridge_theta: f64,
    pub decay: DecayReport,
}

pub fn limit_evidence(l: &LimitData, alpha: f64, r_max: f64) -> Result<LimitEvidence> {
    let ctx = FockContext::finfty(alpha)?;
    let sup_norm = fock_norm(&l.f.into(), &ctx, 1e-10)?;
    let ridge_theta = -l.f.a2.arg() / 2.0;
    let mut thetas: Vec<f64> = (0..8).map(|k| std::f64::consts::TAU * k as f64 / 8.0).collect();
    thetas.push(ridge_theta);
    thetas.push(ridge_theta + std::f64::consts::PI);
    let decay = decay_profile_rays(&l.f.into(), alpha, &thetas, r_max)?;
    Ok(LimitEvidence {
        sup_norm,
        ridge_theta,
        decay,
    })
}

/// `sup |ψ(z0)^{−n}(Wⁿf)(z) − c·F(z)·f(z0)|` over the points of a
/// `grid × grid` square lattice on `[−radius, radius]²` lying in `|z| ≤ radius`.
pub fn convergence_residual(
    w: &WeightedCompOp,
    l: &LimitData,
    f: &EntireFunction,
    n: u32,
    radius: f64,
    grid: usize,
) -> Result<f64> {
    if grid < 2 {
        return Err(FockError::InvalidInput("grid needs at least 2 points per side".into()));
    }
    let it = iterate_coeffs(w, n)?;
    let scaled = it.scaled_multiplier();
    let mut worst: f64 = 0.0;
    for i in 0..grid {
        for j in 0..grid {
            let z = C64::new(
                -radius + 2.0 * radius * i as f64 / (grid - 1) as f64,
                -radius + 2.0 * radius * j as f64 / (grid - 1) as f64,
            );
            if z.norm() > radius * (1.0 + 1e-12) {
                continue;
            }
            let lhs = scaled.eval(z) * f.eval(it.phi_n.apply(z))?;
            let rhs = limit_operator_apply(l, f, l.z0, z)?;
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::DecayVerdict;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn op(g: ExpQuadratic, a: C64, lambda: C64, ctx: FockContext) -> WeightedCompOp {
        WeightedCompOp::new(g.into(), AffineSymbol::new(a, lambda), ctx).unwrap()
    }

    fn example_3_1() -> WeightedCompOp {
        op(
            ExpQuadratic::gaussian(c(0.375, 0.0)),
            ZERO,
            c(0.5, 0.0),
            FockContext::finfty(1.0).unwrap(),
        )
    }

    #[test]
    fn phi_n_examples() {
        let phi = AffineSymbol::new(ONE, c(0.5, 0.0));
        assert_eq!(phi_n(&phi, 0).unwrap(), AffineSymbol::identity());
        let p2 = phi_n(&phi, 2).unwrap();
        assert!((p2.a - c(1.5, 0.0)).norm() < 1e-15 && p2.lambda == c(0.25, 0.0));
        let z0 = phi.fixed_point().unwrap();
        for n in 0..=64 {
            assert!((phi_n(&phi, n).unwrap().apply(z0) - z0).norm() < 1e-14);
        }
        assert_eq!(phi_n(&AffineSymbol::new(ONE, ONE), 3), Err(FockError::NoFixedPoint));
        assert_eq!(phi_n(&AffineSymbol::identity(), 3).unwrap(), AffineSymbol::identity());
    }

    #[test]
    fn first_iterate_reproduces_multiplier() {
        let g = ExpQuadratic::new(c(0.1, -0.3), c(0.7, 0.2), c(-0.2, 0.1));
        let w = op(g, c(0.4, 0.9), c(0.3, -0.6), FockContext::fp(2.0, 1.0).unwrap());
        let it = iterate_coeffs(&w, 1).unwrap();
        let m = it.multiplier();
        assert!((m.a0 - g.a0).norm() < 1e-15);
        assert!((m.a1 - g.a1).norm() < 1e-15);
        assert!((m.a2 - g.a2).norm() < 1e-15);
    }

    #[test]
    fn quadratic_coefficient_example() {
        let it = iterate_coeffs(&example_3_1(), 3).unwrap();
        assert!((it.c2n - c(63.0 / 128.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_product() {
        let g = ExpQuadratic::new(c(0.2, 0.4), c(-0.5, 0.3), c(0.15, -0.05));
        let w = op(g, c(0.8, -0.3), c(-0.4, 0.5), FockContext::fp(2.0, 1.3).unwrap());
        let f: EntireFunction = ExpQuadratic::kernel(c(0.2, 0.1), 1.3).into();
        for n in [1, 2, 5, 17, 64] {
            let it = iterate_coeffs(&w, n).unwrap();
            for z in [c(0.3, 0.1), c(-1.0, 2.0), c(2.5, -0.5)] {
                let a = it.log_apply(&f, z).unwrap();
                let b = iterate_apply_product(&w, &f, n, z).unwrap().log;
                assert!((a.log_abs - b.log_abs).abs() <= 1e-10 * a.log_abs.abs().max(1.0));
                assert!(crate::logspace::phase_distance(a.phase, b.phase) < 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_lambda_rejected() {
        let g = ExpQuadratic::one();
        let ctx = FockContext::fp(2.0, 1.0).unwrap();
        assert!(matches!(iterate_coeffs(&op(g, ONE, ZERO, ctx), 2), Err(FockError::DegenerateLambda(_))));
        assert!(matches!(iterate_coeffs(&op(g, ZERO, ONE, ctx), 2), Err(FockError::DegenerateLambda(_))));
    }

    #[test]
    fn precise_margin() {
        let w = example_3_1();
        for n in [1u32, 10, 40, 80] {
            let m = iterate_margin(&w, n).unwrap();
            assert!(((m - 0.5 * 0.25f64.powi(n as i32)) / m).abs() < 1e-14);
        }
    }

    #[test]
    fn example_limit_is_liminal_gaussian() {
        let w = example_3_1();
        let l = limit_function(&w).unwrap();
        assert_eq!(l.c1, ZERO);
        assert!((l.f.a2 - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(l.c, ONE);
        let ev = limit_evidence(&l, 1.0, 8.0).unwrap();
        assert!((ev.sup_norm.value() - 1.0).abs() < 1e-8);
        assert!(ev.decay.rays.iter().any(|r| r.verdict == DecayVerdict::BoundedNonVanishing));
        let r60 = convergence_residual(&w, &l, &ExpQuadratic::one().into(), 60, 2.0, 33).unwrap();
        assert!(r60 <= 1e-6);
    }

    #[test]
    fn aligned_limit_has_bounded_ridge() {
        let ctx = FockContext::finfty(1.0).unwrap();
        let w = op(ExpQuadratic::new(ZERO, ONE, c(-0.375, 0.0)), ONE, c(0.5, 0.0), ctx);
        let l = limit_function(&w).unwrap();
        let ev = limit_evidence(&l, 1.0, 8.0).unwrap();
        assert!(ev.sup_norm.log_value.is_finite());
        assert!(ev.decay.has_non_vanishing_ray());
    }

    #[test]
    fn limit_hypotheses_checked() {
        let ctx = FockContext::fp(2.0, 1.0).unwrap();
        let compact = op(ExpQuadratic::gaussian(c(0.1, 0.0)), ZERO, c(0.5, 0.0), ctx);
        assert!(matches!(limit_function(&compact), Err(FockError::HypothesisViolated(_))));
        let rotated = op(ExpQuadratic::gaussian(c(0.375, 0.0)), ZERO, c(0.0, 0.5), ctx);
        assert!(matches!(limit_function(&rotated), Err(FockError::HypothesisViolated(_))));
    }

    #[test]
    fn rank_one_limit_examples() {
        let l = formal_limit(&example_3_1()).unwrap();
        let z: EntireFunction = crate::complexfn::EntireFunction::monomial(1);
        assert_eq!(limit_operator_apply(&l, &z, ZERO, c(1.0, 1.0)).unwrap(), ZERO);
        let one: EntireFunction = ExpQuadratic::one().into();
        let v = limit_operator_apply(&l, &one, ZERO, c(1.0, 0.5)).unwrap();
        assert!((v - l.c * l.f.eval(c(1.0, 0.5))).norm() < 1e-15);
    }
}

//! Weighted composition operators `W f = ψ·(f∘φ)` with `φ(z) = a + λz`.
//!
//! Boundedness and compactness are governed by
//! `M_z = |ψ(z)|² e^{α(|φ(z)|² − |z|²)}`: bounded iff `sup M_z < ∞`,
//! compact iff `M_z → 0`. For `ψ = Q·exp(a0 + a1 z + a2 z²)`,
//!
//! ```text
//! log M_z = log C + 2Re(t z) + 2Re(a2 z²) − αβ|z|² + 2 log|Q(z)|,
//! t = a1 + α·conj(a)·λ,  log C = 2Re a0 + α|a|²,  β = 1 − |λ|²,
//! ```
//!
//! whose quadratic part has eigenvalues `−αβ ± 2|a2|`. The classifier reads
//! its verdict off that form whenever it can.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexfn::{estimate_growth, EntireFunction, ExpQuadratic, Order, C64, ONE, ZERO};
use crate::error::{FockError, Result};
use crate::fockspace::{membership, principal_angle, FockContext, Flavor, Membership, ORDER_BAND, TYPE_BAND};
use crate::logspace::LogValue;

/// Relative slack for the equality tests on exact input coefficients.
pub const EXACT_SLACK: f64 = 1e-12;

const NULL_LINE_SAMPLES: usize = 64;
const NULL_LINE_RADIUS: f64 = 40.0;
const SCAN_SLOPE: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineSymbol {
    pub a: C64,
    pub lambda: C64,
}

impl AffineSymbol {
    pub fn new(a: C64, lambda: C64) -> Self {
        AffineSymbol { a, lambda }
    }

    pub fn identity() -> Self {
        AffineSymbol::new(ZERO, ONE)
    }

    pub fn apply(&self, z: C64) -> C64 {
        self.a + self.lambda * z
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineSymbol) -> AffineSymbol {
        AffineSymbol::new(self.a + self.lambda * inner.a, self.lambda * inner.lambda)
    }

    pub fn beta(&self) -> f64 {
        1.0 - self.lambda.norm_sqr()
    }

    pub fn fixed_point(&self) -> Result<C64> {
        if self.lambda == ONE {
            return Err(FockError::NoFixedPoint);
        }
        Ok(self.a / (ONE - self.lambda))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCompOp {
    psi: EntireFunction,
    phi: AffineSymbol,
    ctx: FockContext,
}

impl WeightedCompOp {
    pub fn new(psi: EntireFunction, phi: AffineSymbol, ctx: FockContext) -> Result<Self> {
        if let EntireFunction::Taylor(s) = &psi {
            if s.coeffs().iter().all(|c| *c == ZERO) {
                return Err(FockError::InvalidInput("multiplier is identically zero".into()));
            }
        }
        if !(phi.a.re.is_finite() && phi.a.im.is_finite() && phi.lambda.re.is_finite() && phi.lambda.im.is_finite()) {
            return Err(FockError::InvalidInput("symbol coefficients must be finite".into()));
        }
        Ok(WeightedCompOp { psi, phi, ctx })
    }

    pub fn psi(&self) -> &EntireFunction {
        &self.psi
    }

    pub fn phi(&self) -> AffineSymbol {
        self.phi
    }

    pub fn ctx(&self) -> FockContext {
        self.ctx
    }

    pub fn alpha(&self) -> f64 {
        self.ctx.alpha()
    }

    pub fn with_ctx(&self, ctx: FockContext) -> Self {
        WeightedCompOp { ctx, ..self.clone() }
    }

    /// The exp-quadratic multiplier, or `WrongMultiplierKind`.
    pub fn exp_quadratic_psi(&self) -> Result<ExpQuadratic> {
        match self.psi.clone().simplify() {
            EntireFunction::ExpQuadratic(g) => Ok(g),
            other => Err(FockError::WrongMultiplierKind(format!(
                "expected an exp-quadratic multiplier, got {}",
                other.kind_name()
            ))),
        }
    }

    /// `(W f)(z) = ψ(z)·f(φ(z))`.
    pub fn apply(&self, f: &EntireFunction, z: C64) -> Result<C64> {
        Ok(self.psi.eval(z)? * f.eval(self.phi.apply(z))?)
    }

    pub fn apply_log(&self, f: &EntireFunction, z: C64) -> Result<LogValue> {
        Ok(self.psi.log_eval(z)?.mul(f.log_eval(self.phi.apply(z))?))
    }

    /// `W f` as a function, for structured `ψ` and `f`.
    pub fn apply_structured(&self, f: &EntireFunction) -> Result<EntireFunction> {
        self.psi.mul(&f.compose_affine(self.phi.a, self.phi.lambda)?)
    }

    /// `ln M_z`, evaluated directly from `ψ` and `φ`.
    pub fn log_m_z(&self, z: C64) -> Result<f64> {
        let w = self.phi.apply(z);
        Ok(2.0 * self.psi.log_abs(z)? + self.alpha() * (w.norm_sqr() - z.norm_sqr()))
    }

    pub fn m_z(&self, z: C64) -> Result<f64> {
        Ok(self.log_m_z(z)?.exp())
    }

    /// `W*k_z = ψ(z)·k_{φ(z)}`. The adjoint acts on the predual of `F^∞_α`,
    /// so the full `F^∞_α` is rejected.
    pub fn adjoint_on_kernel(&self, z: C64) -> Result<AdjointKernelImage> {
        if self.ctx.flavor() == Flavor::FinftyFull {
            return Err(FockError::HypothesisViolated(
                "adjoint kernel action needs p < ∞ or the little space F^∞_{α,0}".into(),
            ));
        }
        Ok(AdjointKernelImage {
            scalar: self.psi.eval(z)?,
            point: self.phi.apply(z),
        })
    }

    /// `W² = W_{ψ·(ψ∘φ), φ∘φ}`.
    pub fn square(&self) -> Result<WeightedCompOp> {
        let g = self.exp_quadratic_psi()?;
        let psi2 = g.mul(&g.compose_affine(self.phi.a, self.phi.lambda));
        WeightedCompOp::new(psi2.into(), self.phi.compose(&self.phi), self.ctx)
    }

    pub fn log_m_quadratic_form(&self) -> Result<QuadraticForm> {
        let (poly, core) = match self.psi.clone().simplify() {
            EntireFunction::ExpQuadratic(g) => (None, g),
            EntireFunction::PolyExpQuad(p) => (Some(p.poly().to_vec()), *p.core()),
            EntireFunction::Taylor(_) => {
                return Err(FockError::WrongMultiplierKind(
                    "quadratic form of log M_z needs a structured multiplier".into(),
                ))
            }
        };
        let alpha = self.alpha();
        let (a, lambda) = (self.phi.a, self.phi.lambda);
        let ab = alpha * self.phi.beta();
        let (u, v) = (core.a2.re, core.a2.im);
        Ok(QuadraticForm {
            matrix: [[2.0 * u - ab, -2.0 * v], [-2.0 * v, -2.0 * u - ab]],
            t: core.a1 + a.conj() * lambda * alpha,
            log_c: 2.0 * core.a0.re + alpha * a.norm_sqr(),
            poly,
            a2: core.a2,
        })
    }

    pub fn classify(&self) -> Result<Classification> {
        classify(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjointKernelImage {
    pub scalar: C64,
    pub point: C64,
}

/// `log M_z = log_c + 2Re(t z) + xᵀ·matrix·x + 2 log|Q(z)|`, `z = x₁ + i x₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    pub matrix: [[f64; 2]; 2],
    pub t: C64,
    pub log_c: f64,
    pub poly: Option<Vec<C64>>,
    pub a2: C64,
}

impl QuadraticForm {
    pub fn eval(&self, z: C64) -> f64 {
        let (x, y) = (z.re, z.im);
        let m = &self.matrix;
        let quad = m[0][0] * x * x + 2.0 * m[0][1] * x * y + m[1][1] * y * y;
        let lin = 2.0 * (self.t * z).re;
        let poly = self
            .poly
            .as_ref()
            .map(|q| 2.0 * crate::complexfn::horner(q, z).norm().ln())
            .unwrap_or(0.0);
        self.log_c + lin + quad + poly
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        sym2_eigen(self.matrix).0
    }
}

/// Eigenvalues (ascending) and the unit eigenvector of the larger one for a
/// symmetric 2×2 matrix.
pub fn sym2_eigen(m: [[f64; 2]; 2]) -> ([f64; 2], [f64; 2]) {
    let (p, q, r) = (m[0][0], m[0][1], m[1][1]);
    let mean = 0.5 * (p + r);
    let rad = (0.25 * (p - r) * (p - r) + q * q).sqrt();
    let (lo, hi) = (mean - rad, mean + rad);
    let vec = if q != 0.0 {
        let v = [hi - r, q];
        let n = v[0].hypot(v[1]);
        [v[0] / n, v[1] / n]
    } else if p >= r {
        [1.0, 0.0]
    } else {
        [0.0, 1.0]
    };
    ([lo, hi], vec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    UnboundedSymbol,
    Unbounded,
    BoundedNotCompact,
    Compact,
    FiniteRankCompact,
    IsometryMultiple,
}

impl Verdict {
    pub fn is_bounded(self) -> bool {
        !matches!(self, Verdict::UnboundedSymbol | Verdict::Unbounded)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictExactness {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    MarginNegative,
    MarginPositive,
    BoundaryZeroT,
    BoundaryAligned,
    BoundaryMisaligned,
    PolyMarginNegative,
    PolyMarginPositive,
    PolyNullDirection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `|λ|` alone decides.
    SymbolModulus { lambda_modulus: f64 },
    /// `λ = 0`: `W` has rank one and is bounded iff `ψ` lies in the space.
    RankOne { membership: Membership },
    QuadraticForm {
        mu: f64,
        t: C64,
        theta2: f64,
        eigenvalues: [f64; 2],
        case_tag: CaseTag,
    },
    OrderType {
        rho: Option<f64>,
        sigma: Option<f64>,
        threshold: f64,
    },
    Numeric {
        /// `sup M_z` over the scanned region; `None` when growth was detected.
        sup_estimate: Option<f64>,
        decay_flag: bool,
        tail_slope: f64,
    },
    UnitModulus { psi_matches_kernel_form: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub exactness: VerdictExactness,
}

impl Classification {
    fn exact(verdict: Verdict, certificate: Certificate) -> Self {
        Classification {
            verdict,
            certificate,
            exactness: VerdictExactness::Exact,
        }
    }

    fn numeric(verdict: Verdict, certificate: Certificate) -> Self {
        Classification {
            verdict,
            certificate,
            exactness: VerdictExactness::Numeric,
        }
    }
}

fn close(x: C64, y: C64, scale: f64) -> bool {
    (x - y).norm() <= EXACT_SLACK * scale.max(f64::MIN_POSITIVE)
}

/// Decision procedure; the first matching case wins.
pub fn classify(w: &WeightedCompOp) -> Result<Classification> {
    let alpha = w.alpha();
    let lambda = w.phi.lambda;
    let a = w.phi.a;
    let modulus = lambda.norm();

    if modulus > 1.0 + EXACT_SLACK {
        return Ok(Classification::exact(
            Verdict::UnboundedSymbol,
            Certificate::SymbolModulus { lambda_modulus: modulus },
        ));
    }

    if lambda == ZERO {
        let m = membership(&w.psi, &w.ctx);
        let exactness = match w.psi {
            EntireFunction::Taylor(_) => VerdictExactness::Numeric,
            _ => VerdictExactness::Exact,
        };
        let verdict = match m {
            Membership::In | Membership::BoundaryIn => Verdict::FiniteRankCompact,
            Membership::NotIn => Verdict::Unbounded,
            Membership::Indeterminate => {
                return Err(FockError::IndeterminateLiminal(
                    "membership of the multiplier could not be decided".into(),
                ))
            }
        };
        return Ok(Classification {
            verdict,
            certificate: Certificate::RankOne { membership: m },
            exactness,
        });
    }

    if (modulus - 1.0).abs() <= EXACT_SLACK {
        let target = -alpha * a.conj() * lambda;
        let matches = match w.psi.clone().simplify() {
            EntireFunction::ExpQuadratic(g) => {
                g.a2.norm() <= EXACT_SLACK * alpha && close(g.a1, target, target.norm().max(alpha))
            }
            _ => false,
        };
        let verdict = if matches { Verdict::IsometryMultiple } else { Verdict::Unbounded };
        return Ok(Classification::exact(
            verdict,
            Certificate::UnitModulus {
                psi_matches_kernel_form: matches,
            },
        ));
    }

    let ab = alpha * w.phi.beta();
    match w.psi.clone().simplify() {
        EntireFunction::ExpQuadratic(g) => Ok(classify_exp_quadratic(w, &g, ab)?),
        EntireFunction::PolyExpQuad(_) => classify_poly(w, ab),
        EntireFunction::Taylor(s) => classify_taylor(w, s.coeffs(), ab),
    }
}

fn boundary_margin(a2: C64, ab: f64) -> f64 {
    let mu = 2.0 * a2.norm() - ab;
    if mu.abs() <= EXACT_SLACK * ab {
        0.0
    } else {
        mu
    }
}

fn classify_exp_quadratic(w: &WeightedCompOp, g: &ExpQuadratic, ab: f64) -> Result<Classification> {
    let form = w.log_m_quadratic_form()?;
    let mu = boundary_margin(g.a2, ab);
    let t = form.t;
    let t_scale = g.a1.norm() + w.alpha() * w.phi.a.norm() * w.phi.lambda.norm();
    let t_is_zero = t.norm() <= EXACT_SLACK * t_scale;
    let (verdict, tag) = if mu < 0.0 {
        (Verdict::Compact, CaseTag::MarginNegative)
    } else if mu > 0.0 {
        (Verdict::Unbounded, CaseTag::MarginPositive)
    } else if t_is_zero {
        (Verdict::BoundedNotCompact, CaseTag::BoundaryZeroT)
    } else {
        let aligned = -(ab / 2.0) * t * t / t.norm_sqr();
        if close(g.a2, aligned, ab / 2.0) {
            (Verdict::BoundedNotCompact, CaseTag::BoundaryAligned)
        } else {
            (Verdict::Unbounded, CaseTag::BoundaryMisaligned)
        }
    };
    Ok(Classification::exact(
        verdict,
        Certificate::QuadraticForm {
            mu,
            t: if t_is_zero { ZERO } else { t },
            theta2: principal_angle(g.a2),
            eigenvalues: form.eigenvalues(),
            case_tag: tag,
        },
    ))
}

fn classify_poly(w: &WeightedCompOp, ab: f64) -> Result<Classification> {
    let form = w.log_m_quadratic_form()?;
    let mu = boundary_margin(form.a2, ab);
    let theta2 = principal_angle(form.a2);
    let cert = |tag| Certificate::QuadraticForm {
        mu,
        t: form.t,
        theta2,
        eigenvalues: form.eigenvalues(),
        case_tag: tag,
    };
    if mu < 0.0 {
        return Ok(Classification::exact(Verdict::Compact, cert(CaseTag::PolyMarginNegative)));
    }
    if mu > 0.0 {
        return Ok(Classification::exact(Verdict::Unbounded, cert(CaseTag::PolyMarginPositive)));
    }
    // Along e^{iθ₂}ℝ the quadratic part of log M_z vanishes; sample the rest
    // and compare its growth with log|s|.
    let dir = C64::from_polar(1.0, theta2);
    let mut worst_slope = f64::NEG_INFINITY;
    let mut sup = f64::NEG_INFINITY;
    for sign in [1.0, -1.0] {
        let pts: Vec<(f64, f64)> = (1..=NULL_LINE_SAMPLES)
            .map(|k| {
                let s = NULL_LINE_RADIUS * k as f64 / NULL_LINE_SAMPLES as f64;
                w.log_m_z(dir * (sign * s)).map(|l| (s.ln(), l))
            })
            .collect::<Result<_>>()?;
        sup = pts.iter().map(|p| p.1).fold(sup, f64::max);
        let outer = &pts[pts.len() / 2..];
        worst_slope = worst_slope.max(crate::fockspace::fit_slope(outer));
    }
    let grows = worst_slope > SCAN_SLOPE;
    Ok(Classification::numeric(
        if grows { Verdict::Unbounded } else { Verdict::BoundedNotCompact },
        Certificate::Numeric {
            sup_estimate: if grows { None } else { Some(sup.exp()) },
            decay_flag: false,
            tail_slope: worst_slope,
        },
    ))
}

fn classify_taylor(w: &WeightedCompOp, coeffs: &[C64], ab: f64) -> Result<Classification> {
    let threshold = ab / 2.0;
    let fit = match estimate_growth(coeffs) {
        Ok(fit) => Some(fit),
        Err(FockError::InsufficientCoefficients { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(fit) = fit {
        let (rho, sigma) = match fit.order() {
            Order::Infinite => (None, None),
            Order::Finite(r) => (Some(r), Some(fit.type_at_order(2.0))),
        };
        let cert = Certificate::OrderType { rho, sigma, threshold };
        let decided = match (rho, sigma) {
            (None, _) => Some(Verdict::Unbounded),
            (Some(r), _) if r < 2.0 - ORDER_BAND => Some(Verdict::Compact),
            (Some(r), _) if r > 2.0 + ORDER_BAND => Some(Verdict::Unbounded),
            (Some(_), Some(s)) if s < threshold * (1.0 - TYPE_BAND) => Some(Verdict::Compact),
            (Some(_), Some(s)) if s > threshold * (1.0 + TYPE_BAND) => Some(Verdict::Unbounded),
            _ => None,
        };
        if let Some(v) = decided {
            return Ok(Classification::numeric(v, cert));
        }
    }
    let r_max = w.psi.certified_radius().min(NULL_LINE_RADIUS);
    let scan = m_scan(w, r_max, 160, 256)?;
    let verdict = match scan.trend {
        ScanTrend::Decays => Verdict::Compact,
        ScanTrend::Grows => Verdict::Unbounded,
        ScanTrend::Bounded => Verdict::BoundedNotCompact,
    };
    Ok(Classification::numeric(
        verdict,
        Certificate::Numeric {
            sup_estimate: if scan.trend == ScanTrend::Grows { None } else { Some(scan.log_sup.exp()) },
            decay_flag: scan.trend == ScanTrend::Decays,
            tail_slope: scan.tail_slope,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanTrend {
    Decays,
    Bounded,
    Grows,
}

/// Ring maxima of `ln M_z` on a polar grid, and the trend of the outer rings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MScan {
    pub radii: Vec<f64>,
    pub ring_log_max: Vec<f64>,
    pub log_sup: f64,
    /// Slope of the ring maxima against `ln r` over the outer quarter.
    pub tail_slope: f64,
    pub trend: ScanTrend,
}

/// Evaluates `ln M_z` directly (no quadratic form) on `n_r` rings up to
/// `r_max` with `n_theta` angles each.
pub fn m_scan(w: &WeightedCompOp, r_max: f64, n_r: usize, n_theta: usize) -> Result<MScan> {
    if n_r < 8 || n_theta < 8 || !(r_max > 0.0) {
        return Err(FockError::InvalidInput("scan needs n_r, n_theta ≥ 8 and r_max > 0".into()));
    }
    let radii: Vec<f64> = (1..=n_r).map(|k| r_max * k as f64 / n_r as f64).collect();
    let ring_log_max: Vec<f64> = radii
        .par_iter()
        .map(|&r| {
            (0..n_theta).try_fold(f64::NEG_INFINITY, |m, j| {
                w.log_m_z(C64::from_polar(r, TAU * j as f64 / n_theta as f64)).map(|v| m.max(v))
            })
        })
        .collect::<Result<_>>()?;
    let log_sup = ring_log_max.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let outer: Vec<(f64, f64)> = radii
        .iter()
        .zip(&ring_log_max)
        .skip(n_r * 3 / 4)
        .map(|(r, m)| (r.ln(), *m))
        .collect();
    let tail_slope = crate::fockspace::fit_slope(&outer);
    let trend = if tail_slope > SCAN_SLOPE {
        ScanTrend::Grows
    } else if tail_slope < -SCAN_SLOPE {
        ScanTrend::Decays
    } else {
        ScanTrend::Bounded
    };
    Ok(MScan {
        radii,
        ring_log_max,
        log_sup,
        tail_slope,
        trend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexfn::{PolyTimesExpQuad, TaylorSeries};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn op(psi: impl Into<EntireFunction>, a: C64, lambda: C64) -> WeightedCompOp {
        WeightedCompOp::new(psi.into(), AffineSymbol::new(a, lambda), FockContext::fp(2.0, 1.0).unwrap()).unwrap()
    }

    fn example_3_1() -> WeightedCompOp {
        op(ExpQuadratic::gaussian(c(0.375, 0.0)), ZERO, c(0.5, 0.0))
    }

    #[test]
    fn apply_examples() {
        let id = op(ExpQuadratic::one(), ZERO, ONE);
        let f: EntireFunction = ExpQuadratic::new(c(0.1, 0.2), c(0.3, -0.1), c(0.05, 0.0)).into();
        let z = c(0.7, -0.3);
        assert_eq!(id.apply(&f, z).unwrap(), f.eval(z).unwrap());
        let w = op(ExpQuadratic::new(ZERO, ONE, ZERO), ZERO, c(0.5, 0.0));
        let v = w.apply(&ExpQuadratic::one().into(), c(2.0, 0.0)).unwrap();
        assert!((v - c(2f64.exp(), 0.0)).norm() < 1e-14);
        let rank1 = op(ExpQuadratic::one(), ONE, ZERO);
        assert!((rank1.apply(&ExpQuadratic::one().into(), c(3.0, 1.0)).unwrap() - ONE).norm() < 1e-15);
    }

    #[test]
    fn m_z_examples() {
        let w = example_3_1();
        for x in [-3.0, -0.5, 0.0, 1.0, 7.0] {
            assert!((w.m_z(c(x, 0.0)).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((w.m_z(c(0.0, 1.0)).unwrap() - (-1.5f64).exp()).abs() < 1e-14);
        let id = op(ExpQuadratic::one(), ZERO, ONE);
        assert_eq!(id.m_z(c(4.0, -2.0)).unwrap(), 1.0);
    }

    #[test]
    fn quadratic_form_examples() {
        let q = example_3_1().log_m_quadratic_form().unwrap();
        assert!(q.matrix[0][0].abs() < 1e-15 && (q.matrix[1][1] + 1.5).abs() < 1e-15);
        assert_eq!(q.t, ZERO);
        assert_eq!(q.log_c, 0.0);
        let q = op(ExpQuadratic::one(), ONE, c(0.5, 0.0)).log_m_quadratic_form().unwrap();
        assert_eq!(q.t, c(0.5, 0.0));
        assert_eq!(q.log_c, 1.0);
        assert_eq!(q.matrix, [[-0.75, 0.0], [0.0, -0.75]]);
        let w = op(ExpQuadratic::new(c(0.1, 0.0), c(0.2, 0.3), c(0.1, -0.2)), c(0.4, 0.1), c(0.3, 0.5));
        let q = w.log_m_quadratic_form().unwrap();
        for z in [c(1.0, 2.0), c(-3.0, 0.5), c(0.2, -4.0)] {
            assert!((q.eval(z) - w.log_m_z(z).unwrap()).abs() < 1e-12);
        }
        let ab = w.phi().beta();
        let e = q.eigenvalues();
        let m2 = 2.0 * c(0.1, -0.2).norm();
        assert!((e[0] - (-ab - m2)).abs() < 1e-12 && (e[1] - (-ab + m2)).abs() < 1e-12);
    }

    #[test]
    fn worked_examples_classify() {
        let ex = example_3_1().classify().unwrap();
        assert_eq!(ex.verdict, Verdict::BoundedNotCompact);
        assert_eq!(ex.exactness, VerdictExactness::Exact);
        let Certificate::QuadraticForm { mu, t, .. } = ex.certificate else { panic!() };
        assert_eq!((mu, t), (0.0, ZERO));

        let zpsi = PolyTimesExpQuad::new(vec![ZERO, ONE], ExpQuadratic::gaussian(c(0.375, 0.0))).unwrap();
        assert_eq!(op(zpsi, ZERO, c(0.5, 0.0)).classify().unwrap().verdict, Verdict::Unbounded);

        let series = TaylorSeries::exp_quad_minus_one_over_z(c(0.375, 0.0), 200).unwrap();
        let cl = op(series, ZERO, c(0.5, 0.0)).classify().unwrap();
        assert_eq!(cl.verdict, Verdict::Compact);
        assert_eq!(cl.exactness, VerdictExactness::Numeric);

        assert_eq!(op(ExpQuadratic::one(), ONE, ONE).classify().unwrap().verdict, Verdict::Unbounded);
        assert_eq!(op(ExpQuadratic::one(), ZERO, ONE).classify().unwrap().verdict, Verdict::IsometryMultiple);
        let lam = c(0.6, 0.8);
        let a = c(0.3, -1.1);
        let psi = ExpQuadratic::new(c(0.2, 0.1), -a.conj() * lam, ZERO);
        assert_eq!(op(psi, a, lam).classify().unwrap().verdict, Verdict::IsometryMultiple);

        let aligned = op(ExpQuadratic::new(ZERO, ONE, c(-0.375, 0.0)), ONE, c(0.5, 0.0));
        let cl = aligned.classify().unwrap();
        assert_eq!(cl.verdict, Verdict::BoundedNotCompact);
        assert!(matches!(cl.certificate, Certificate::QuadraticForm { case_tag: CaseTag::BoundaryAligned, .. }));
        let misaligned = op(ExpQuadratic::new(ZERO, ONE, c(0.375, 0.0)), ONE, c(0.5, 0.0));
        assert_eq!(misaligned.classify().unwrap().verdict, Verdict::Unbounded);
        assert_eq!(op(ExpQuadratic::one(), ONE, c(2.0, 0.0)).classify().unwrap().verdict, Verdict::UnboundedSymbol);
    }

    #[test]
    fn rank_one_cases() {
        assert_eq!(
            op(ExpQuadratic::gaussian(c(0.3, 0.0)), ONE, ZERO).classify().unwrap().verdict,
            Verdict::FiniteRankCompact
        );
        assert_eq!(
            op(ExpQuadratic::gaussian(c(0.7, 0.0)), ONE, ZERO).classify().unwrap().verdict,
            Verdict::Unbounded
        );
    }

    #[test]
    fn adjoint_examples() {
        let w = example_3_1();
        let img = w.adjoint_on_kernel(c(0.0, 1.0)).unwrap();
        assert!((img.scalar - c((-0.375f64).exp(), 0.0)).norm() < 1e-15);
        assert_eq!(img.point, c(0.0, 0.5));
        let full = w.with_ctx(FockContext::finfty(1.0).unwrap());
        assert!(full.adjoint_on_kernel(ZERO).is_err());
        let id = op(ExpQuadratic::one(), ZERO, ONE);
        let img = id.adjoint_on_kernel(c(2.0, 0.0)).unwrap();
        assert_eq!((img.scalar, img.point), (ONE, c(2.0, 0.0)));
    }

    #[test]
    fn square_examples() {
        let sq = example_3_1().square().unwrap();
        let g = sq.exp_quadratic_psi().unwrap();
        assert!((g.a2 - c(15.0 / 32.0, 0.0)).norm() < 1e-15);
        assert_eq!(sq.classify().unwrap().verdict, Verdict::BoundedNotCompact);
        let rot = op(ExpQuadratic::gaussian(c(0.375, 0.0)), ZERO, c(0.0, 0.5));
        assert_eq!(rot.classify().unwrap().verdict, Verdict::BoundedNotCompact);
        let sq = rot.square().unwrap();
        assert!((sq.exp_quadratic_psi().unwrap().a2.norm() - 9.0 / 32.0).abs() < 1e-15);
        assert_eq!(sq.classify().unwrap().verdict, Verdict::Compact);
    }

    #[test]
    fn eigen_helper() {
        let (e, v) = sym2_eigen([[2.0, 1.0], [1.0, 2.0]]);
        assert!((e[0] - 1.0).abs() < 1e-15 && (e[1] - 3.0).abs() < 1e-15);
        assert!((v[0] - v[1]).abs() < 1e-15);
    }

    #[test]
    fn scan_trends() {
        let ex = m_scan(&example_3_1(), 20.0, 32, 64).unwrap();
        assert_eq!(ex.trend, ScanTrend::Bounded);
        let compact = op(ExpQuadratic::gaussian(c(0.1, 0.0)), ZERO, c(0.5, 0.0));
        assert_eq!(m_scan(&compact, 20.0, 32, 64).unwrap().trend, ScanTrend::Decays);
        let unb = op(ExpQuadratic::gaussian(c(0.5, 0.0)), ZERO, c(0.5, 0.0));
        assert_eq!(m_scan(&unb, 20.0, 32, 64).unwrap().trend, ScanTrend::Grows);
    }
}

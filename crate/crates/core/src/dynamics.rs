//! Numerical evidence that bounded weighted composition operators on Fock
//! spaces are never supercyclic.
//!
//! The report picks the argument that fits the operator: a multiple of an
//! isometry when `|λ| = 1`, an eigenvector of the adjoint when `W` is compact,
//! the angle criterion for real `λ` and `p < ∞`, the rank-one limit operator
//! on `F^∞_{α,0}`, and compactness of `W²` when `λ` is not real.

use serde::{Deserialize, Serialize};

use crate::complexfn::{EntireFunction, ExpQuadratic, C64, ZERO};
use crate::error::{FockError, Result};
use crate::fockspace::{exp_quadratic_log_norm, fock_norm, fock_norm_quadrature, Flavor};
use crate::iterates::{
    convergence_residual, iterate_coeffs, iterate_margin, limit_evidence, limit_function, LimitData, LimitEvidence,
};
use crate::wcomp::{classify, AdjointKernelImage, Classification, Verdict, WeightedCompOp, EXACT_SLACK};

/// Per-step log-slope separating the trends.
pub const TREND_SLOPE: f64 = 1e-3;

const NORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trend {
    DivergesToInfinity,
    ConvergesToZero,
    Bounded,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqPoint {
    pub n: u32,
    pub value: f64,
    pub log_value: f64,
}

/// Geometric-rate fit `value_n ≈ K·ratioⁿ` over the last quarter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub ratio: f64,
    pub log_ratio: f64,
    pub r_squared: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub name: String,
    pub values: Vec<SeqPoint>,
    pub trend: Trend,
    pub fit: Option<RateFit>,
}

impl SequenceReport {
    pub fn from_logs(name: impl Into<String>, logs: Vec<(u32, f64)>) -> Self {
        let values: Vec<SeqPoint> = logs
            .iter()
            .map(|&(n, l)| SeqPoint {
                n,
                value: l.exp(),
                log_value: l,
            })
            .collect();
        let (trend, fit) = detect_trend(&logs);
        SequenceReport {
            name: name.into(),
            values,
            trend,
            fit,
        }
    }
}

/// Trend from the least-squares log-slope of the last quarter of the sequence.
pub fn detect_trend(logs: &[(u32, f64)]) -> (Trend, Option<RateFit>) {
    let start = logs.len() * 3 / 4;
    let window: Vec<(f64, f64)> = logs[start..].iter().map(|&(n, l)| (n as f64, l)).collect();
    if window.len() < 4 || window.iter().any(|p| !p.1.is_finite()) {
        return (Trend::Inconclusive, None);
    }
    let k = window.len() as f64;
    let mx = window.iter().map(|p| p.0).sum::<f64>() / k;
    let my = window.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = window.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = window.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = window.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    let fit = RateFit {
        ratio: slope.exp(),
        log_ratio: slope,
        r_squared,
    };
    let trend = if slope.abs() <= TREND_SLOPE {
        Trend::Bounded
    } else if r_squared < 0.5 {
        Trend::Inconclusive
    } else if slope > 0.0 {
        Trend::DivergesToInfinity
    } else {
        Trend::ConvergesToZero
    };
    (trend, Some(fit))
}

fn require_exp_quadratic(w: &WeightedCompOp) -> Result<ExpQuadratic> {
    w.exp_quadratic_psi()
}

/// `ln(|ψ(z0)|^{−n}‖Wⁿf‖)`, computed from the scaled iterate
/// `exp(c0n + c1n z + c2n z²)·f(φ_n(z))` so that `ψ(z0)ⁿ` never materialises.
pub fn log_scaled_iterate_norm(w: &WeightedCompOp, f: &EntireFunction, n: u32) -> Result<f64> {
    let p = w
        .ctx()
        .finite_p()
        .ok_or_else(|| FockError::HypothesisViolated("iterate norms need p < ∞".into()))?;
    let it = iterate_coeffs(w, n)?;
    let scaled: EntireFunction = it.scaled_multiplier().into();
    let g = scaled.mul(&f.compose_affine(it.phi_n.a, it.phi_n.lambda)?)?;
    match g {
        EntireFunction::ExpQuadratic(h) => {
            // f without a quadratic part leaves c2n as the only quadratic
            // coefficient, whose margin has a cancellation-free form
            let margin = match f.clone().simplify() {
                EntireFunction::ExpQuadratic(fq) if fq.a2 == ZERO => Some(iterate_margin(w, n)?),
                _ => None,
            };
            Ok(exp_quadratic_log_norm(&h, p, w.alpha(), margin).unwrap_or(f64::INFINITY))
        }
        other => Ok(fock_norm_quadrature(&other, p, w.alpha(), NORM_TOL)?.log_value),
    }
}

fn check_fixed_point_value(w: &WeightedCompOp, f: &EntireFunction) -> Result<C64> {
    let z0 = w.phi().fixed_point()?;
    if f.eval(z0)? == ZERO {
        return Err(FockError::HypothesisViolated("f(z0) = 0".into()));
    }
    Ok(z0)
}

/// `|ψ(z0)|^{−n}‖Wⁿf‖` for `n = 1..N`; diverges for bounded non-compact `W`
/// with real `λ`.
pub fn scaled_iterate_norms(w: &WeightedCompOp, f: &EntireFunction, n_max: u32) -> Result<SequenceReport> {
    require_exp_quadratic(w)?;
    if w.ctx().finite_p().is_none() {
        return Err(FockError::HypothesisViolated("needs p < ∞".into()));
    }
    let lam = w.phi().lambda;
    if lam.im.abs() > EXACT_SLACK * lam.norm() {
        return Err(FockError::HypothesisViolated("λ must be real".into()));
    }
    if classify(w)?.verdict != Verdict::BoundedNotCompact {
        return Err(FockError::HypothesisViolated("W must be bounded and not compact".into()));
    }
    check_fixed_point_value(w, f)?;
    let logs = (1..=n_max)
        .map(|n| log_scaled_iterate_norm(w, f, n).map(|l| (n, l)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceReport::from_logs("scaled_iterate_norm", logs))
}

/// `r_n = ‖(W*)ⁿk_{z0}‖/‖Wⁿf‖ = |ψ(z0)|ⁿe^{α|z0|²/2}/‖Wⁿf‖`.
pub fn angle_criterion_ratio(w: &WeightedCompOp, f: &EntireFunction, n_max: u32) -> Result<SequenceReport> {
    require_exp_quadratic(w)?;
    if w.ctx().finite_p().is_none() {
        return Err(FockError::HypothesisViolated("needs p < ∞".into()));
    }
    let lam = w.phi().lambda;
    if !(lam.norm() < 1.0) || lam == ZERO {
        return Err(FockError::HypothesisViolated("needs 0 < |λ| < 1".into()));
    }
    let z0 = check_fixed_point_value(w, f)?;
    let log_kernel = w.alpha() * z0.norm_sqr() / 2.0;
    let logs = (1..=n_max)
        .map(|n| log_scaled_iterate_norm(w, f, n).map(|l| (n, log_kernel - l)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceReport::from_logs("angle_criterion_ratio", logs))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryEntry {
    pub label: String,
    pub norm_f: f64,
    pub norm_wf: f64,
    pub ratio: f64,
    /// `|ratio − κ|/κ`.
    pub deviation: f64,
    /// `|‖Wf‖² − ‖W²f‖·‖f‖| / ‖Wf‖²`.
    pub paranormal_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub kappa: f64,
    pub entries: Vec<IsometryEntry>,
}

/// `{1, z, k_{0.3}, e^{(α/5)z²}}`; the last is `e^{0.2z²}` at `α = 1`.
pub fn standard_test_functions(alpha: f64) -> Vec<(String, EntireFunction)> {
    vec![
        ("1".into(), ExpQuadratic::one().into()),
        ("z".into(), EntireFunction::monomial(1)),
        ("k_0.3".into(), ExpQuadratic::kernel(C64::new(0.3, 0.0), alpha).into()),
        (
            format!("exp({}z^2)", alpha / 5.0),
            ExpQuadratic::gaussian(C64::new(alpha / 5.0, 0.0)).into(),
        ),
    ]
}

pub fn isometry_report(w: &WeightedCompOp, fs: &[(String, EntireFunction)]) -> Result<IsometryReport> {
    if classify(w)?.verdict != Verdict::IsometryMultiple {
        return Err(FockError::HypothesisViolated("W is not a multiple of an isometry".into()));
    }
    let ctx = w.ctx();
    let kappa = w.psi().eval(ZERO)?.norm() * (w.alpha() / 2.0 * w.phi().a.norm_sqr()).exp();
    let w2 = w.square()?;
    let mut entries = Vec::with_capacity(fs.len());
    for (label, f) in fs {
        let nf = fock_norm(f, &ctx, NORM_TOL)?;
        let nwf = fock_norm(&w.apply_structured(f)?, &ctx, NORM_TOL)?;
        let nw2f = fock_norm(&w2.apply_structured(f)?, &ctx, NORM_TOL)?;
        if nf.is_infinite() || nwf.is_infinite() || nw2f.is_infinite() {
            return Err(FockError::InvalidInput(format!("test function {label} is not in the space")));
        }
        let ratio = (nwf.log_value - nf.log_value).exp();
        let log_lhs = 2.0 * nwf.log_value;
        let log_rhs = nw2f.log_value + nf.log_value;
        entries.push(IsometryEntry {
            label: label.clone(),
            norm_f: nf.value(),
            norm_wf: nwf.value(),
            ratio,
            deviation: (ratio - kappa).abs() / kappa,
            paranormal_residual: (1.0 - (log_rhs - log_lhs).exp()).abs(),
        });
    }
    Ok(IsometryReport { kappa, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    IsometryMultiple,
    CompactAdjointEigenvalue,
    RealLambdaAngleCriterion,
    FinftyZeroLimitOperator,
    NonRealLambdaSquareCompact,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicsConfig {
    pub n_max: u32,
    pub grid_radius: f64,
    pub grid_size: usize,
    pub decay_r_max: f64,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            n_max: 64,
            grid_radius: 2.0,
            grid_size: 33,
            decay_r_max: 8.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Isometry(IsometryReport),
    AdjointEigenpair {
        z0: C64,
        image: AdjointKernelImage,
        /// `|scalar − ψ(z0)|/|ψ(z0)| + |point − z0|`; zero iff `W*k_{z0} = ψ(z0)k_{z0}`.
        residual: f64,
    },
    AngleCriterion(SequenceReport),
    LimitOperator {
        limit: LimitData,
        evidence: LimitEvidence,
        residuals: SequenceReport,
    },
    SquareCompact(Classification),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupercyclicityVerdictKind {
    NotSupercyclic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupercyclicityVerdict {
    pub verdict: SupercyclicityVerdictKind,
    pub case_tag: CaseTag,
    pub classification: Classification,
    pub evidence: Evidence,
}

pub fn supercyclicity_report(w: &WeightedCompOp, config: &DynamicsConfig) -> Result<SupercyclicityVerdict> {
    if config.n_max < 4 {
        return Err(FockError::InvalidInput("N must be at least 4".into()));
    }
    let classification = classify(w)?;
    if !classification.verdict.is_bounded() {
        return Err(FockError::HypothesisViolated(format!(
            "operator is {:?}",
            classification.verdict
        )));
    }
    if w.ctx().flavor() == Flavor::FinftyFull {
        return Err(FockError::HypothesisViolated(
            "F^∞_α is not separable; use p < ∞ or the little space".into(),
        ));
    }
    let lam = w.phi().lambda;
    let real_lambda = lam.im.abs() <= EXACT_SLACK * lam.norm();
    let (case_tag, evidence) = match classification.verdict {
        Verdict::IsometryMultiple => {
            let fs = standard_test_functions(w.alpha());
            (CaseTag::IsometryMultiple, Evidence::Isometry(isometry_report(w, &fs)?))
        }
        Verdict::Compact | Verdict::FiniteRankCompact => {
            let z0 = w.phi().fixed_point()?;
            let image = w.adjoint_on_kernel(z0)?;
            let eig = w.psi().eval(z0)?;
            let residual = (image.scalar - eig).norm() / eig.norm().max(f64::MIN_POSITIVE) + (image.point - z0).norm();
            (
                CaseTag::CompactAdjointEigenvalue,
                Evidence::AdjointEigenpair { z0, image, residual },
            )
        }
        Verdict::BoundedNotCompact if !real_lambda => {
            let sq = classify(&w.square()?)?;
            if sq.verdict != Verdict::Compact {
                return Err(FockError::InternalInconsistency(format!(
                    "square of a non-real-λ operator classified {:?}",
                    sq.verdict
                )));
            }
            (CaseTag::NonRealLambdaSquareCompact, Evidence::SquareCompact(sq))
        }
        Verdict::BoundedNotCompact if w.ctx().flavor() == Flavor::Fp => {
            let one: EntireFunction = ExpQuadratic::one().into();
            let seq = angle_criterion_ratio(w, &one, config.n_max)?;
            (CaseTag::RealLambdaAngleCriterion, Evidence::AngleCriterion(seq))
        }
        Verdict::BoundedNotCompact => {
            let limit = limit_function(w)?;
            let evidence = limit_evidence(&limit, w.alpha(), config.decay_r_max)?;
            let one: EntireFunction = ExpQuadratic::one().into();
            let logs = (1..=config.n_max)
                .map(|n| {
                    convergence_residual(w, &limit, &one, n, config.grid_radius, config.grid_size)
                        .map(|r| (n, r.ln()))
                })
                .collect::<Result<Vec<_>>>()?;
            let residuals = SequenceReport::from_logs("limit_residual", logs);
            (
                CaseTag::FinftyZeroLimitOperator,
                Evidence::LimitOperator {
                    limit,
                    evidence,
                    residuals,
                },
            )
        }
        v => {
            return Err(FockError::InternalInconsistency(format!("no case for verdict {v:?}")));
        }
    };
    Ok(SupercyclicityVerdict {
        verdict: SupercyclicityVerdictKind::NotSupercyclic,
        case_tag,
        classification,
        evidence,
    })
}

//! Fock spaces `F^p_α`: contexts, norms, kernels and membership.
//!
//! Norms are computed three ways: a closed form for `exp(a0 + a1 z + a2 z²)`
//! (the integrand is a two-dimensional Gaussian), polar quadrature
//! (trapezoid in θ, adaptive Gauss–Kronrod in r), and a supremum search over
//! an expanding polar grid for `p = ∞`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::complexfn::{estimate_growth, EntireFunction, ExpQuadratic, Order, C64, ZERO};
use crate::error::{FockError, Result};
use crate::logspace::log_sum_exp;
use crate::quadrature;

/// Relative slack used for the algebraic boundary comparison `|a2| = α/2`.
pub const BOUNDARY_SLACK: f64 = 1e-12;

const MAX_DOUBLINGS: usize = 10;
const RING_MAX_POINTS: usize = 1 << 16;
const SUP_GRID_STEP: f64 = 0.1;
const SUP_MAX_RING_POINTS: f64 = 600.0;
const DIVERGENCE_FACTOR: f64 = 10.0;

/// Order/type bands inside which a Taylor multiplier counts as liminal.
pub(crate) const ORDER_BAND: f64 = 0.1;
pub(crate) const TYPE_BAND: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExponentRepr", into = "ExponentRepr")]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentRepr {
    Num(f64),
    Str(String),
}

impl TryFrom<ExponentRepr> for Exponent {
    type Error = String;
    fn try_from(r: ExponentRepr) -> std::result::Result<Self, String> {
        match r {
            ExponentRepr::Num(p) => Ok(Exponent::Finite(p)),
            ExponentRepr::Str(s) => s.parse(),
        }
    }
}

impl From<Exponent> for ExponentRepr {
    fn from(p: Exponent) -> Self {
        match p {
            Exponent::Finite(p) => ExponentRepr::Num(p),
            Exponent::Infinity => ExponentRepr::Str("inf".into()),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => other
                .parse::<f64>()
                .map(Exponent::Finite)
                .map_err(|e| format!("bad exponent {other:?}: {e}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "fp")]
    Fp,
    #[serde(rename = "finfty")]
    FinftyFull,
    /// The closed subspace `F^∞_{α,0}` of functions decaying against the weight.
    #[serde(rename = "finfty0")]
    FinftyZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawContext")]
pub struct FockContext {
    p: Exponent,
    alpha: f64,
    flavor: Flavor,
}

#[derive(Deserialize)]
struct RawContext {
    p: Exponent,
    alpha: f64,
    flavor: Flavor,
}

impl TryFrom<RawContext> for FockContext {
    type Error = FockError;
    fn try_from(r: RawContext) -> Result<Self> {
        FockContext::new(r.p, r.alpha, r.flavor)
    }
}

impl FockContext {
    pub fn new(p: Exponent, alpha: f64, flavor: Flavor) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(FockError::InvalidInput(format!("alpha must be positive, got {alpha}")));
        }
        match (p, flavor) {
            (Exponent::Finite(q), Flavor::Fp) if (1.0..f64::INFINITY).contains(&q) => {}
            (Exponent::Infinity, Flavor::FinftyFull | Flavor::FinftyZero) => {}
            _ => {
                return Err(FockError::InvalidInput(format!(
                    "inconsistent space: p = {p:?} with flavor {flavor:?}"
                )))
            }
        }
        Ok(FockContext { p, alpha, flavor })
    }

    pub fn fp(p: f64, alpha: f64) -> Result<Self> {
        Self::new(Exponent::Finite(p), alpha, Flavor::Fp)
    }

    pub fn finfty(alpha: f64) -> Result<Self> {
        Self::new(Exponent::Infinity, alpha, Flavor::FinftyFull)
    }

    pub fn finfty0(alpha: f64) -> Result<Self> {
        Self::new(Exponent::Infinity, alpha, Flavor::FinftyZero)
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn finite_p(&self) -> Option<f64> {
        match self.p {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
}

/// The kernel `k_z(w) = exp(α·conj(z)·w)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelPoint {
    pub z: C64,
}

impl KernelPoint {
    pub fn function(&self, alpha: f64) -> ExpQuadratic {
        ExpQuadratic::kernel(self.z, alpha)
    }

    pub fn norm(&self, alpha: f64) -> f64 {
        (alpha * self.z.norm_sqr() / 2.0).exp()
    }
}

/// `‖k_z‖ = e^{α|z|²/2}` in every `F^p_α`.
pub fn kernel_norm(z: C64, ctx: &FockContext) -> f64 {
    KernelPoint { z }.norm(ctx.alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMethod {
    ExactGaussian,
    Quadrature,
    RaySup,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormResult {
    /// `ln ‖f‖`, `+inf` when the norm diverges.
    pub log_value: f64,
    pub method: NormMethod,
    pub error_estimate: f64,
}

impl NormResult {
    pub fn infinite(method: NormMethod) -> Self {
        NormResult {
            log_value: f64::INFINITY,
            method,
            error_estimate: 0.0,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.log_value == f64::INFINITY
    }

    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

impl Serialize for NormResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NormResult", 4)?;
        if self.is_infinite() {
            st.serialize_field("value", "inf")?;
        } else {
            st.serialize_field("value", &self.value())?;
        }
        st.serialize_field("log_value", &if self.is_infinite() { None } else { Some(self.log_value) })?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("error_estimate", &self.error_estimate)?;
        st.end()
    }
}

/// Principal-axis data of `exp(a0 + a1 z + a2 z²)` against the Gaussian weight.
///
/// With `a2 = |a2|·e^{−2iθ₂}` and `z = e^{iθ₂}w`, `w = u + iv`:
/// `Re(a1 z + a2 z²) − (α/2)|z|² = b_u·u + b_v·v − margin·u² − (α/2 + |a2|)·v²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianAxes {
    pub theta2: f64,
    pub b_u: f64,
    pub b_v: f64,
    pub margin: f64,
    pub stiff: f64,
}

impl GaussianAxes {
    pub fn of(f: &ExpQuadratic, alpha: f64) -> Self {
        let theta2 = principal_angle(f.a2);
        let b = f.a1 * C64::from_polar(1.0, theta2);
        GaussianAxes {
            theta2,
            b_u: b.re,
            b_v: -b.im,
            margin: alpha / 2.0 - f.a2.norm(),
            stiff: alpha / 2.0 + f.a2.norm(),
        }
    }
}

/// `θ₂ ∈ [0, π)` with `a2 = |a2|·e^{−2iθ₂}`; 0 for `a2 = 0`.
pub fn principal_angle(a2: C64) -> f64 {
    if a2 == ZERO {
        return 0.0;
    }
    let t = (-a2.arg() / 2.0).rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

/// `ln ‖exp(a0 + a1 z + a2 z²)‖_{p,α}` for finite `p`, or `None` when the
/// integral diverges. `margin` overrides `α/2 − |a2|` when the caller can
/// supply it without cancellation.
pub fn exp_quadratic_log_norm(f: &ExpQuadratic, p: f64, alpha: f64, margin: Option<f64>) -> Option<f64> {
    let mut ax = GaussianAxes::of(f, alpha);
    if let Some(m) = margin {
        ax.margin = m;
    }
    if !(ax.margin > 0.0) {
        return None;
    }
    let log_pow = (alpha / 2.0).ln() - 0.5 * ax.margin.ln() - 0.5 * ax.stiff.ln()
        + p * f.a0.re
        + p * ax.b_u * ax.b_u / (4.0 * ax.margin)
        + p * ax.b_v * ax.b_v / (4.0 * ax.stiff);
    Some(log_pow / p)
}

/// `ln sup |f(z)|e^{−(α/2)|z|²}` for `f = exp(a0 + a1 z + a2 z²)`, `None` if unbounded.
pub fn exp_quadratic_log_sup(f: &ExpQuadratic, alpha: f64) -> Option<f64> {
    let ax = GaussianAxes::of(f, alpha);
    let scale = alpha / 2.0;
    let on_boundary = ax.margin.abs() <= BOUNDARY_SLACK * scale;
    if on_boundary {
        if ax.b_u.abs() > BOUNDARY_SLACK * f.a1.norm().max(1e-300) {
            return None;
        }
        return Some(f.a0.re + ax.b_v * ax.b_v / (4.0 * ax.stiff));
    }
    if ax.margin < 0.0 {
        return None;
    }
    Some(f.a0.re + ax.b_u * ax.b_u / (4.0 * ax.margin) + ax.b_v * ax.b_v / (4.0 * ax.stiff))
}

/// Closed-form `F^p_α` norm of an exp-quadratic (`p < ∞`).
pub fn gaussian_norm_expquad(f: &ExpQuadratic, ctx: &FockContext) -> Result<NormResult> {
    let p = ctx
        .finite_p()
        .ok_or_else(|| FockError::InvalidInput("closed-form Gaussian norm needs p < ∞".into()))?;
    Ok(match exp_quadratic_log_norm(f, p, ctx.alpha, None) {
        Some(l) => NormResult {
            log_value: l,
            method: NormMethod::ExactGaussian,
            error_estimate: 0.0,
        },
        None => NormResult::infinite(NormMethod::ExactGaussian),
    })
}

/// `‖f‖` in the space described by `ctx`.
///
/// Exp-quadratics with `p < ∞` use the closed form; other structured inputs
/// whose Gaussian quadratic part is not negative definite are flagged as
/// divergent algebraically; everything else goes through quadrature or the
/// supremum search.
pub fn fock_norm(f: &EntireFunction, ctx: &FockContext, tol: f64) -> Result<NormResult> {
    if !(tol >= 1e-12) {
        return Err(FockError::InvalidInput(format!("tol must be at least 1e-12, got {tol}")));
    }
    let f = f.clone().simplify();
    match ctx.finite_p() {
        Some(p) => {
            if let EntireFunction::ExpQuadratic(g) = &f {
                return gaussian_norm_expquad(g, ctx);
            }
            if let Some(core) = f.core() {
                let ax = GaussianAxes::of(core, ctx.alpha);
                if ax.margin <= BOUNDARY_SLACK * ctx.alpha / 2.0 {
                    return Ok(NormResult::infinite(NormMethod::ExactGaussian));
                }
            }
            fock_norm_quadrature(&f, p, ctx.alpha, tol)
        }
        None => {
            if let Some(core) = f.core() {
                let ax = GaussianAxes::of(core, ctx.alpha);
                let scale = ctx.alpha / 2.0;
                if ax.margin < -BOUNDARY_SLACK * scale {
                    return Ok(NormResult::infinite(NormMethod::RaySup));
                }
                if ax.margin.abs() <= BOUNDARY_SLACK * scale {
                    let grows = match &f {
                        EntireFunction::PolyExpQuad(_) => true,
                        _ => ax.b_u.abs() > BOUNDARY_SLACK * core.a1.norm().max(1e-300),
                    };
                    if grows {
                        return Ok(NormResult::infinite(NormMethod::RaySup));
                    }
                }
            }
            sup_norm(&f, ctx.alpha, tol)
        }
    }
}

fn initial_radius(f: &EntireFunction, alpha: f64) -> f64 {
    let lin = f.core().map(|c| c.a1.norm()).unwrap_or(1.0);
    (2.0 * (lin + 1.0) / alpha).sqrt() + 4.0
}

/// `ln ∮|f(re^{iθ})|^p dθ` by the trapezoid rule, doubling the resolution
/// until successive estimates agree to `1e-14`.
fn log_ring_integral(f: &EntireFunction, p: f64, r: f64) -> Result<f64> {
    if r == 0.0 {
        return Ok(TAU.ln() + p * f.log_abs(ZERO)?);
    }
    let mut n = 16usize;
    let mut vals: Vec<f64> = (0..n)
        .map(|j| f.log_abs(C64::from_polar(r, TAU * j as f64 / n as f64)).map(|l| p * l))
        .collect::<Result<_>>()?;
    let mut prev = log_sum_exp(vals.iter().copied()) + (TAU / n as f64).ln();
    loop {
        let extra: Vec<f64> = (0..n)
            .map(|j| {
                f.log_abs(C64::from_polar(r, TAU * (2 * j + 1) as f64 / (2 * n) as f64))
                    .map(|l| p * l)
            })
            .collect::<Result<_>>()?;
        vals.extend(extra);
        n *= 2;
        let cur = log_sum_exp(vals.iter().copied()) + (TAU / n as f64).ln();
        if (cur - prev).abs() < 1e-14 || n >= RING_MAX_POINTS || cur == f64::NEG_INFINITY {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// Polar quadrature of `(αp/2π)∫|f|^p e^{−(αp/2)|z|²} dm`, with the
/// truncation radius doubled until the Gaussian tail estimate falls below
/// `tol` relative to the accumulated value.
pub fn fock_norm_quadrature(f: &EntireFunction, p: f64, alpha: f64, tol: f64) -> Result<NormResult> {
    let q = alpha * p / 2.0;
    let log_norm_const = (alpha * p / TAU).ln();
    let log_h = |r: f64| -> Result<f64> {
        Ok(log_norm_const + r.ln() - q * r * r + log_ring_integral(f, p, r)?)
    };
    let r_cap = f.certified_radius();
    let mut r_hi = initial_radius(f, alpha).min(r_cap);

    // shift so the scaled integrand stays O(1)
    let mut shift = f64::NEG_INFINITY;
    for i in 1..=64 {
        shift = shift.max(log_h(r_hi * i as f64 / 64.0)?);
    }
    if !shift.is_finite() {
        return Err(FockError::NonConvergent("integrand vanishes on the sample grid".into()));
    }

    let rel = (tol * 1e-2).max(1e-14);
    let integrate_panel = |a: f64, b: f64, shift: f64| -> Result<(f64, f64)> {
        let mut failure = None;
        let res = quadrature::integrate(
            |r| match log_h(r) {
                Ok(l) => (l - shift).exp(),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            a,
            b,
            1e-300,
            rel,
            2000,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        Ok((res.value, res.error))
    };

    let (mut value, mut err) = integrate_panel(0.0, r_hi, shift)?;
    let mut tail;
    let mut doublings = 0;
    loop {
        let lh = log_h(r_hi)?;
        let d = 1e-3 * r_hi;
        let slope = -(lh - log_h(r_hi - d)?) / d;
        tail = if slope > 0.0 { (lh - shift).exp() / slope } else { f64::INFINITY };
        if tail <= 0.1 * tol * value {
            break;
        }
        if doublings == MAX_DOUBLINGS || r_hi >= r_cap {
            return Err(FockError::NonConvergent(format!(
                "Gaussian tail not certified at radius {r_hi:.3} after {doublings} doublings"
            )));
        }
        let next = (2.0 * r_hi).min(r_cap);
        // rescale when the integrand peaks further out than the first scan
        let mut local = f64::NEG_INFINITY;
        for i in 0..=32 {
            local = local.max(log_h(r_hi + (next - r_hi) * i as f64 / 32.0)?);
        }
        if local > shift {
            value *= (shift - local).exp();
            err *= (shift - local).exp();
            shift = local;
        }
        let (v, e) = integrate_panel(r_hi, next, shift)?;
        value += v;
        err += e;
        r_hi = next;
        doublings += 1;
    }
    if !(value > 0.0) {
        return Err(FockError::NonConvergent("zero integral".into()));
    }
    let log_pow = shift + value.ln();
    let log_value = log_pow / p;
    let rel_err = (err + tail) / value / p;
    Ok(NormResult {
        log_value,
        method: NormMethod::Quadrature,
        error_estimate: log_value.exp() * rel_err,
    })
}

/// `sup |f(z)|e^{−(α/2)|z|²}` over an expanding polar grid, polished by a
/// compass search from the best grid points.
pub fn sup_norm(f: &EntireFunction, alpha: f64, tol: f64) -> Result<NormResult> {
    let weighted = |z: C64| -> Result<f64> { Ok(f.log_abs(z)? - alpha * z.norm_sqr() / 2.0) };
    let r_cap = f.certified_radius();
    let mut r_hi = initial_radius(f, alpha).min(r_cap);

    let mut candidates: Vec<(f64, C64)> = Vec::new();
    let scan = |lo: f64, hi: f64, cands: &mut Vec<(f64, C64)>| -> Result<f64> {
        let step = SUP_GRID_STEP.max(hi / SUP_MAX_RING_POINTS);
        let mut best = f64::NEG_INFINITY;
        let mut r = lo;
        while r <= hi + 1e-12 {
            let n_theta = ((TAU * r / step).ceil() as usize).max(16);
            for j in 0..n_theta {
                let z = C64::from_polar(r, TAU * j as f64 / n_theta as f64);
                let v = weighted(z)?;
                if v > best {
                    best = v;
                }
                push_candidate(cands, v, z, 3.0 * step);
            }
            if r == 0.0 {
                r = step;
            } else {
                r += step;
            }
        }
        Ok(best)
    };

    let mut running = scan(0.0, r_hi, &mut candidates)?;
    let mut history = vec![running];
    let mut certified = false;
    for _ in 0..MAX_DOUBLINGS {
        if r_hi >= r_cap {
            break;
        }
        let next = (2.0 * r_hi).min(r_cap);
        let ring = scan(r_hi, next, &mut candidates)?;
        r_hi = next;
        if ring <= running + 1e-12 {
            certified = true;
            break;
        }
        running = ring;
        history.push(running);
        let k = history.len();
        if k >= 3 && history[k - 1] - history[k - 3] > DIVERGENCE_FACTOR.ln() {
            return Ok(NormResult::infinite(NormMethod::RaySup));
        }
    }
    if !certified {
        return Err(FockError::NonConvergent(format!(
            "supremum still increasing at radius {r_hi:.3}"
        )));
    }

    let mut best = running;
    for &(_, z0) in &candidates {
        best = best.max(compass_search(&weighted, z0, SUP_GRID_STEP, r_hi)?);
    }
    Ok(NormResult {
        log_value: best,
        method: NormMethod::RaySup,
        error_estimate: best.exp() * tol,
    })
}

fn push_candidate(cands: &mut Vec<(f64, C64)>, v: f64, z: C64, sep: f64) {
    const KEEP: usize = 8;
    if !v.is_finite() {
        return;
    }
    if cands.len() == KEEP && v <= cands[KEEP - 1].0 {
        return;
    }
    if let Some(pos) = cands.iter().position(|(_, w)| (w - z).norm() < sep) {
        if cands[pos].0 >= v {
            return;
        }
        cands.remove(pos);
    }
    let at = cands.iter().position(|(u, _)| *u < v).unwrap_or(cands.len());
    cands.insert(at, (v, z));
    cands.truncate(KEEP);
}

fn compass_search<F: Fn(C64) -> Result<f64>>(g: &F, start: C64, step0: f64, r_max: f64) -> Result<f64> {
    let dirs: Vec<C64> = (0..8).map(|k| C64::from_polar(1.0, TAU * k as f64 / 8.0)).collect();
    let mut z = start;
    let mut val = g(z)?;
    let mut step = step0;
    let mut iters = 0;
    while step > 1e-10 && iters < 20_000 {
        iters += 1;
        let mut moved = false;
        for d in &dirs {
            let w = z + d * step;
            if w.norm() > r_max {
                continue;
            }
            let v = g(w)?;
            if v > val {
                z = w;
                val = v;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok(val)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    In,
    NotIn,
    BoundaryIn,
    Indeterminate,
}

impl Membership {
    pub fn is_member(self) -> bool {
        matches!(self, Membership::In | Membership::BoundaryIn)
    }
}

/// Membership of `f` in the space of `ctx`.
///
/// For the structured forms this is decided from `|a2|` against `α/2`; on the
/// boundary only `F^∞_α` can contain the function, and only an exp-quadratic
/// whose linear coefficient vanishes along the null axis of the quadratic part.
pub fn membership(f: &EntireFunction, ctx: &FockContext) -> Membership {
    let f = f.clone().simplify();
    let scale = ctx.alpha / 2.0;
    if let Some(core) = f.core() {
        let m2 = core.a2.norm();
        if m2 < scale * (1.0 - BOUNDARY_SLACK) {
            return Membership::In;
        }
        if m2 > scale * (1.0 + BOUNDARY_SLACK) {
            return Membership::NotIn;
        }
        return match (ctx.flavor, &f) {
            (Flavor::FinftyFull, EntireFunction::ExpQuadratic(g)) => {
                let ax = GaussianAxes::of(g, ctx.alpha);
                if ax.b_u.abs() <= BOUNDARY_SLACK * g.a1.norm().max(1e-300) {
                    Membership::BoundaryIn
                } else {
                    Membership::NotIn
                }
            }
            _ => Membership::NotIn,
        };
    }
    // truncated Taylor series: growth estimate, numeric norm when liminal
    let EntireFunction::Taylor(series) = &f else {
        unreachable!("structured forms handled above")
    };
    if let Ok(fit) = estimate_growth(series.coeffs()) {
        match fit.order() {
            Order::Infinite => return Membership::NotIn,
            Order::Finite(rho) if rho < 2.0 - ORDER_BAND => return Membership::In,
            Order::Finite(rho) if rho > 2.0 + ORDER_BAND => return Membership::NotIn,
            Order::Finite(_) => {
                let sigma = fit.type_at_order(2.0);
                if sigma < scale * (1.0 - TYPE_BAND) {
                    return Membership::In;
                }
                if sigma > scale * (1.0 + TYPE_BAND) {
                    return Membership::NotIn;
                }
            }
        }
    }
    let ctx_num = *ctx;
    match fock_norm(&f, &ctx_num, 1e-8) {
        Ok(n) if n.is_infinite() => Membership::NotIn,
        Ok(_) if ctx.flavor == Flavor::FinftyZero => {
            let profile = decay_profile(&f, ctx.alpha, 16, f.certified_radius().min(40.0));
            match profile {
                Ok(p) if p.rays.iter().all(|r| r.verdict == DecayVerdict::DecaysToZero) => Membership::In,
                _ => Membership::Indeterminate,
            }
        }
        Ok(_) => Membership::In,
        Err(_) => Membership::Indeterminate,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayVerdict {
    DecaysToZero,
    BoundedNonVanishing,
    Grows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayProfile {
    pub theta: f64,
    /// `(r, ln(|f(re^{iθ})|e^{−(α/2)r²}))`.
    pub samples: Vec<(f64, f64)>,
    pub sup: f64,
    pub last_quartile_slope: f64,
    pub verdict: DecayVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub alpha: f64,
    pub r_max: f64,
    pub rays: Vec<RayProfile>,
}

impl DecayReport {
    pub fn has_non_vanishing_ray(&self) -> bool {
        self.rays
            .iter()
            .any(|r| r.verdict == DecayVerdict::BoundedNonVanishing)
    }
}

const DECAY_SAMPLES: usize = 200;
const DECAY_SLOPE: f64 = 1e-6;

/// Weighted modulus along `n_rays` equispaced rays starting at θ = 0.
pub fn decay_profile(f: &EntireFunction, alpha: f64, n_rays: usize, r_max: f64) -> Result<DecayReport> {
    if n_rays < 4 {
        return Err(FockError::InvalidInput("need at least 4 rays".into()));
    }
    let thetas: Vec<f64> = (0..n_rays).map(|k| TAU * k as f64 / n_rays as f64).collect();
    decay_profile_rays(f, alpha, &thetas, r_max)
}

/// As [`decay_profile`] on caller-chosen ray angles. `r_max` is clipped to
/// the certified radius of a truncated series.
pub fn decay_profile_rays(f: &EntireFunction, alpha: f64, thetas: &[f64], r_max: f64) -> Result<DecayReport> {
    if !(r_max > 0.0) {
        return Err(FockError::InvalidInput("r_max must be positive".into()));
    }
    let r_max = r_max.min(f.certified_radius());
    let mut rays = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let samples: Vec<(f64, f64)> = (1..=DECAY_SAMPLES)
            .map(|i| {
                let r = r_max * i as f64 / DECAY_SAMPLES as f64;
                f.log_abs(C64::from_polar(r, theta))
                    .map(|l| (r, l - alpha * r * r / 2.0))
            })
            .collect::<Result<_>>()?;
        let sup = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max).exp();
        let tail = &samples[samples.len() * 3 / 4..];
        let slope = fit_slope(tail);
        let verdict = if slope < -DECAY_SLOPE || slope.is_nan() && tail.iter().all(|s| s.1 == f64::NEG_INFINITY) {
            DecayVerdict::DecaysToZero
        } else if slope > DECAY_SLOPE {
            DecayVerdict::Grows
        } else {
            DecayVerdict::BoundedNonVanishing
        };
        rays.push(RayProfile {
            theta,
            samples,
            sup,
            last_quartile_slope: slope,
            verdict,
        });
    }
    Ok(DecayReport { alpha, r_max, rays })
}

/// Least-squares slope of `y` against `x`.
pub(crate) fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

//! Entire functions in the structured forms the operator theory needs:
//! `exp(a0 + a1 z + a2 z²)`, a polynomial times such an exponential, and
//! truncated Taylor series carrying a declared coefficient envelope.

use std::f64::consts::{E, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::logspace::{log_sum_exp, LogValue};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Relative size of the truncation tail, against the coefficient majorant,
/// that still counts as certified.
pub const TAYLOR_CERT_REL_TOL: f64 = 1e-13;

/// Minimum number of nonzero Taylor coefficients for growth estimation.
pub const MIN_GROWTH_COEFFS: usize = 16;

/// `ψ(z) = exp(a0 + a1·z + a2·z²)`. Zero-free by construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpQuadratic {
    pub a0: C64,
    pub a1: C64,
    pub a2: C64,
}

impl ExpQuadratic {
    pub const fn new(a0: C64, a1: C64, a2: C64) -> Self {
        ExpQuadratic { a0, a1, a2 }
    }

    pub const fn one() -> Self {
        ExpQuadratic::new(ZERO, ZERO, ZERO)
    }

    /// `exp(c·z²)`.
    pub fn gaussian(c: C64) -> Self {
        ExpQuadratic::new(ZERO, ZERO, c)
    }

    /// The reproducing kernel `k_w(z) = exp(α·conj(w)·z)`.
    pub fn kernel(w: C64, alpha: f64) -> Self {
        ExpQuadratic::new(ZERO, w.conj() * alpha, ZERO)
    }

    pub fn exponent(&self, z: C64) -> C64 {
        self.a0 + z * (self.a1 + z * self.a2)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.exponent(z).exp()
    }

    pub fn log_eval(&self, z: C64) -> LogValue {
        LogValue::from_exponent(self.exponent(z))
    }

    /// `z ↦ self(a + λz)`.
    pub fn compose_affine(&self, a: C64, lambda: C64) -> Self {
        ExpQuadratic::new(
            self.a0 + self.a1 * a + self.a2 * a * a,
            self.a1 * lambda + self.a2 * a * lambda * 2.0,
            self.a2 * lambda * lambda,
        )
    }

    pub fn mul(&self, other: &ExpQuadratic) -> Self {
        ExpQuadratic::new(self.a0 + other.a0, self.a1 + other.a1, self.a2 + other.a2)
    }

    /// `c·self`, realised as a shift of `a0`. `c` must be nonzero.
    pub fn scale(&self, c: C64) -> Self {
        ExpQuadratic::new(self.a0 + c.ln(), self.a1, self.a2)
    }

    pub fn growth(&self) -> GrowthProfile {
        if self.a2 != ZERO {
            GrowthProfile::exact(Order::Finite(2.0), Some(self.a2.norm()))
        } else if self.a1 != ZERO {
            GrowthProfile::exact(Order::Finite(1.0), Some(self.a1.norm()))
        } else {
            GrowthProfile::exact(Order::Finite(0.0), None)
        }
    }
}

/// `ψ(z) = Q(z)·exp(a0 + a1 z + a2 z²)`, `Q` in ascending coefficients with a
/// nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTimesExpQuad {
    poly: Vec<C64>,
    core: ExpQuadratic,
}

impl PolyTimesExpQuad {
    pub fn new(poly: Vec<C64>, core: ExpQuadratic) -> Result<Self> {
        let poly = trim_poly(poly);
        if poly.is_empty() {
            return Err(FockError::InvalidInput(
                "polynomial factor is identically zero".into(),
            ));
        }
        Ok(PolyTimesExpQuad { poly, core })
    }

    pub fn poly(&self) -> &[C64] {
        &self.poly
    }

    pub fn core(&self) -> &ExpQuadratic {
        &self.core
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn eval(&self, z: C64) -> C64 {
        horner(&self.poly, z) * self.core.eval(z)
    }

    pub fn log_eval(&self, z: C64) -> LogValue {
        LogValue::from_complex(horner(&self.poly, z)).mul(self.core.log_eval(z))
    }

    pub fn compose_affine(&self, a: C64, lambda: C64) -> Self {
        PolyTimesExpQuad {
            poly: trim_poly(poly_compose_affine(&self.poly, a, lambda)),
            core: self.core.compose_affine(a, lambda),
        }
    }
}

/// Declared coefficient envelope for the discarded tail of a Taylor series:
/// `|c_n| ≤ scale · gammaⁿ / √(n!)` for every index past the stored coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailRule {
    pub scale: f64,
    pub gamma: f64,
}

impl TailRule {
    /// `ln` of the tail bound `Σ_{n ≥ first} scale·(γr)ⁿ/√(n!)` at radius `r`.
    pub fn log_tail_bound(&self, first: usize, r: f64) -> f64 {
        if self.scale == 0.0 || r == 0.0 || self.gamma == 0.0 {
            return f64::NEG_INFINITY;
        }
        let x = (self.gamma * r).ln();
        let ln_scale = self.scale.ln();
        let mut ln_fact = ln_factorial(first);
        let mut terms = Vec::new();
        let mut n = first;
        loop {
            let t = ln_scale + n as f64 * x - 0.5 * ln_fact;
            terms.push(t);
            // past the peak the ratio of successive terms is γr/√(n+1) < 1
            let q = self.gamma * r / ((n + 1) as f64).sqrt();
            if q < 0.5 {
                let best = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                if t < best - 60.0 {
                    // geometric remainder with ratio ≤ q
                    terms.push(t + (q / (1.0 - q)).ln());
                    break;
                }
            }
            n += 1;
            ln_fact += (n as f64).ln();
            if n > first + 2_000_000 {
                return f64::INFINITY;
            }
        }
        log_sum_exp(terms)
    }
}

/// Truncated Taylor series `Σ c_n zⁿ`, evaluated by Horner, usable only inside
/// the radius where the declared tail is negligible against the coefficient majorant.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<C64>,
    tail: TailRule,
    radius: f64,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<C64>, tail: TailRule) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(|c| *c == ZERO) {
            return Err(FockError::InvalidInput(
                "Taylor series has no nonzero coefficient".into(),
            ));
        }
        if !(tail.scale >= 0.0 && tail.gamma >= 0.0) || !tail.scale.is_finite() {
            return Err(FockError::InvalidInput("invalid tail envelope".into()));
        }
        let mut s = TaylorSeries {
            coeffs,
            tail,
            radius: 0.0,
        };
        s.radius = s.compute_certified_radius();
        Ok(s)
    }

    /// `(exp(c·z²) − 1)/z` with exact coefficients `c^k/k!` on `z^{2k−1}`, `k = 1..=terms`.
    pub fn exp_quad_minus_one_over_z(c: C64, terms: usize) -> Result<Self> {
        if terms == 0 || c == ZERO {
            return Err(FockError::InvalidInput(
                "need c != 0 and at least one term".into(),
            ));
        }
        let mut coeffs = vec![ZERO; 2 * terms];
        let mut ck = ONE;
        for k in 1..=terms {
            ck = ck * c / k as f64;
            coeffs[2 * k - 1] = ck;
        }
        // with γ² = 2|c| the normalised envelope |c|^k √((2k−1)!)/(k! γ^{2k−1})
        // decreases in k, so its first tail value bounds all later ones
        let m = c.norm();
        let gamma = (2.0 * m).sqrt();
        let k = (terms + 1) as f64;
        let n = 2 * terms + 1;
        let ln_env = k * m.ln() + 0.5 * ln_factorial(n) - ln_factorial(terms + 1) - n as f64 * gamma.ln();
        TaylorSeries::new(
            coeffs,
            TailRule {
                scale: ln_env.exp() * (1.0 + 1e-12),
                gamma,
            },
        )
    }

    /// `exp(z)` truncated to `terms` coefficients.
    pub fn exponential(terms: usize) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(terms);
        let mut c = 1.0;
        for n in 0..terms {
            if n > 0 {
                c /= n as f64;
            }
            coeffs.push(C64::new(c, 0.0));
        }
        // n! ≥ N! for n ≥ N, hence 1/n! ≤ (1/√N!)·1/√(n!)
        let scale = (-0.5 * ln_factorial(terms)).exp();
        TaylorSeries::new(coeffs, TailRule { scale, gamma: 1.0 })
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn tail(&self) -> TailRule {
        self.tail
    }

    pub fn certified_radius(&self) -> f64 {
        self.radius
    }

    fn log_majorant(&self, r: f64) -> f64 {
        let lr = r.ln();
        log_sum_exp(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != ZERO)
                .map(|(n, c)| c.norm().ln() + if n == 0 { 0.0 } else { n as f64 * lr }),
        )
    }

    /// Bound on `|f(z) − Horner(z)|` for `|z| = r`.
    pub fn error_bound(&self, r: f64) -> f64 {
        self.tail.log_tail_bound(self.coeffs.len(), r).exp()
    }

    fn certified_at(&self, r: f64) -> bool {
        self.tail.log_tail_bound(self.coeffs.len(), r)
            <= TAYLOR_CERT_REL_TOL.ln() + self.log_majorant(r)
    }

    fn compute_certified_radius(&self) -> f64 {
        if self.tail.scale == 0.0 || self.tail.gamma == 0.0 {
            return f64::INFINITY;
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        while self.certified_at(hi) {
            lo = hi;
            hi *= 2.0;
            if hi > 1e6 {
                return hi;
            }
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.certified_at(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let m = z.norm();
        // a few ulps of slack for points generated by from_polar at the radius
        if m > self.radius * (1.0 + 1e-14) {
            return Err(FockError::RadiusExceeded {
                modulus: m,
                radius: self.radius,
            });
        }
        Ok(horner(&self.coeffs, z))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EntireFunction {
    ExpQuadratic(ExpQuadratic),
    PolyExpQuad(PolyTimesExpQuad),
    Taylor(TaylorSeries),
}

impl From<ExpQuadratic> for EntireFunction {
    fn from(f: ExpQuadratic) -> Self {
        EntireFunction::ExpQuadratic(f)
    }
}

impl From<PolyTimesExpQuad> for EntireFunction {
    fn from(f: PolyTimesExpQuad) -> Self {
        EntireFunction::PolyExpQuad(f)
    }
}

impl From<TaylorSeries> for EntireFunction {
    fn from(f: TaylorSeries) -> Self {
        EntireFunction::Taylor(f)
    }
}

impl EntireFunction {
    pub fn constant(c: C64) -> Result<Self> {
        if c == ZERO {
            return Err(FockError::InvalidInput("zero function".into()));
        }
        Ok(ExpQuadratic::new(c.ln(), ZERO, ZERO).into())
    }

    /// The monomial `zᵏ`.
    pub fn monomial(k: usize) -> Self {
        let mut poly = vec![ZERO; k + 1];
        poly[k] = ONE;
        PolyTimesExpQuad::new(poly, ExpQuadratic::one())
            .expect("monomial is nonzero")
            .into()
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            EntireFunction::ExpQuadratic(_) => "exp_quadratic",
            EntireFunction::PolyExpQuad(_) => "poly_exp_quadratic",
            EntireFunction::Taylor(_) => "taylor",
        }
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        match self {
            EntireFunction::ExpQuadratic(f) => Ok(f.eval(z)),
            EntireFunction::PolyExpQuad(f) => Ok(f.eval(z)),
            EntireFunction::Taylor(f) => f.eval(z),
        }
    }

    pub fn log_eval(&self, z: C64) -> Result<LogValue> {
        match self {
            EntireFunction::ExpQuadratic(f) => Ok(f.log_eval(z)),
            EntireFunction::PolyExpQuad(f) => Ok(f.log_eval(z)),
            EntireFunction::Taylor(f) => f.eval(z).map(LogValue::from_complex),
        }
    }

    /// `ln|f(z)|`, `-inf` at zeros.
    pub fn log_abs(&self, z: C64) -> Result<f64> {
        Ok(self.log_eval(z)?.log_abs)
    }

    pub fn certified_radius(&self) -> f64 {
        match self {
            EntireFunction::Taylor(f) => f.certified_radius(),
            _ => f64::INFINITY,
        }
    }

    /// The quadratic exponent of the structured forms, if any.
    pub fn core(&self) -> Option<&ExpQuadratic> {
        match self {
            EntireFunction::ExpQuadratic(f) => Some(f),
            EntireFunction::PolyExpQuad(f) => Some(f.core()),
            EntireFunction::Taylor(_) => None,
        }
    }

    /// Collapses a constant polynomial factor into the exponential.
    pub fn simplify(self) -> Self {
        match self {
            EntireFunction::PolyExpQuad(f) if f.degree() == 0 => {
                EntireFunction::ExpQuadratic(f.core().scale(f.poly()[0]))
            }
            other => other,
        }
    }

    pub fn compose_affine(&self, a: C64, lambda: C64) -> Result<Self> {
        match self {
            EntireFunction::ExpQuadratic(f) => Ok(f.compose_affine(a, lambda).into()),
            EntireFunction::PolyExpQuad(f) => Ok(f.compose_affine(a, lambda).into()),
            EntireFunction::Taylor(_) => Err(FockError::WrongMultiplierKind(
                "affine composition of a truncated Taylor series".into(),
            )),
        }
    }

    /// Pointwise product of two structured functions.
    pub fn mul(&self, other: &EntireFunction) -> Result<Self> {
        let split = |f: &EntireFunction| -> Option<(Vec<C64>, ExpQuadratic)> {
            match f {
                EntireFunction::ExpQuadratic(g) => Some((vec![ONE], *g)),
                EntireFunction::PolyExpQuad(g) => Some((g.poly().to_vec(), *g.core())),
                EntireFunction::Taylor(_) => None,
            }
        };
        match (split(self), split(other)) {
            (Some((p, g)), Some((q, h))) => {
                let f = PolyTimesExpQuad::new(poly_mul(&p, &q), g.mul(&h))?;
                Ok(EntireFunction::from(f).simplify())
            }
            _ => Err(FockError::WrongMultiplierKind(
                "product involving a truncated Taylor series".into(),
            )),
        }
    }

    pub fn scale(&self, c: C64) -> Result<Self> {
        if c == ZERO {
            return Err(FockError::InvalidInput("scaling by zero".into()));
        }
        match self {
            EntireFunction::ExpQuadratic(f) => Ok(f.scale(c).into()),
            EntireFunction::PolyExpQuad(f) => {
                Ok(PolyTimesExpQuad::new(f.poly().iter().map(|p| p * c).collect(), *f.core())?.into())
            }
            EntireFunction::Taylor(f) => Ok(TaylorSeries::new(
                f.coeffs().iter().map(|p| p * c).collect(),
                TailRule {
                    scale: f.tail().scale * c.norm(),
                    gamma: f.tail().gamma,
                },
            )?
            .into()),
        }
    }

    pub fn order_type(&self) -> Result<GrowthProfile> {
        match self {
            EntireFunction::ExpQuadratic(f) => Ok(f.growth()),
            EntireFunction::PolyExpQuad(f) => Ok(f.core().growth()),
            EntireFunction::Taylor(f) => Ok(estimate_growth(f.coeffs())?.profile()),
        }
    }

    /// Maximum of `|f|` over `n_theta` equispaced points of the circle `|z| = r`,
    /// starting at θ = 0. A lower bound for the true maximum modulus.
    pub fn max_modulus(&self, r: f64, n_theta: usize) -> Result<f64> {
        if n_theta < 8 {
            return Err(FockError::InvalidInput("n_theta must be at least 8".into()));
        }
        if !(r > 0.0) {
            return Err(FockError::InvalidInput("radius must be positive".into()));
        }
        let mut best = f64::NEG_INFINITY;
        for j in 0..n_theta {
            let theta = TAU * j as f64 / n_theta as f64;
            best = best.max(self.log_abs(C64::from_polar(r, theta))?);
        }
        Ok(best.exp())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    Finite(f64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exactness {
    Exact,
    Estimated,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub order: Order,
    /// Defined only for finite positive order.
    pub sigma: Option<f64>,
    pub exactness: Exactness,
}

impl GrowthProfile {
    fn exact(order: Order, sigma: Option<f64>) -> Self {
        GrowthProfile {
            order,
            sigma,
            exactness: Exactness::Exact,
        }
    }
}

/// Least-squares fit of `−ln|c_n| ≈ A·n ln n + B·n + E·ln n + D + F/n` over
/// the top quartile of nonzero coefficients.
///
/// With `A = 1/ρ`, the classical coefficient formulas give
/// `ρ = lim n ln n / ln(1/|c_n|)` and `(σeρ)^{1/ρ} = lim n^{1/ρ}|c_n|^{1/n} = e^{−B}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub a: f64,
    pub b: f64,
    points: Vec<(f64, f64)>,
}

impl GrowthFit {
    pub fn order(&self) -> Order {
        if self.a > 1e-9 {
            Order::Finite(1.0 / self.a)
        } else {
            Order::Infinite
        }
    }

    pub fn profile(&self) -> GrowthProfile {
        let order = self.order();
        let sigma = match order {
            Order::Finite(rho) if rho > 0.0 => Some((-self.b * rho).exp() / (E * rho)),
            _ => None,
        };
        GrowthProfile {
            order,
            sigma,
            exactness: Exactness::Estimated,
        }
    }

    /// Type estimate when the order is known to be `rho`: refits the window
    /// with `A = 1/rho` held fixed.
    pub fn type_at_order(&self, rho: f64) -> f64 {
        let a = 1.0 / rho;
        let rows: Vec<([f64; 4], f64)> = self
            .points
            .iter()
            .map(|&(n, y)| ([n, n.ln(), 1.0, 1.0 / n], y - a * n * n.ln()))
            .collect();
        let sol = least_squares(&rows);
        (-sol[0] * rho).exp() / (E * rho)
    }
}

pub fn estimate_growth(coeffs: &[C64]) -> Result<GrowthFit> {
    let nonzero: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(n, c)| *n >= 2 && c.norm() >= f64::MIN_POSITIVE)
        .map(|(n, c)| (n, -c.norm().ln()))
        .collect();
    if nonzero.len() < MIN_GROWTH_COEFFS {
        return Err(FockError::InsufficientCoefficients {
            needed: MIN_GROWTH_COEFFS,
            found: nonzero.len(),
        });
    }
    let last = nonzero.last().map(|p| p.0).unwrap_or(0) as f64;
    let mut window: Vec<(f64, f64)> = nonzero
        .iter()
        .filter(|(n, _)| *n as f64 >= 0.75 * last)
        .map(|&(n, y)| (n as f64, y))
        .collect();
    if window.len() < 8 {
        window = nonzero[nonzero.len() - 8..]
            .iter()
            .map(|&(n, y)| (n as f64, y))
            .collect();
    }
    let rows: Vec<([f64; 5], f64)> = window
        .iter()
        .map(|&(n, y)| ([n * n.ln(), n, n.ln(), 1.0, 1.0 / n], y))
        .collect();
    let sol = least_squares(&rows);
    Ok(GrowthFit {
        a: sol[0],
        b: sol[1],
        points: window,
    })
}

/// Solves a small least-squares problem by Householder QR on the
/// column-scaled design matrix.
fn least_squares<const K: usize>(rows: &[([f64; K], f64)]) -> [f64; K] {
    let m = rows.len();
    let mut scale = [0.0f64; K];
    for (x, _) in rows {
        for j in 0..K {
            scale[j] = scale[j].max(x[j].abs());
        }
    }
    for s in scale.iter_mut() {
        if *s == 0.0 {
            *s = 1.0;
        }
    }
    let mut a: Vec<[f64; K]> = rows
        .iter()
        .map(|(x, _)| std::array::from_fn(|j| x[j] / scale[j]))
        .collect();
    let mut b: Vec<f64> = rows.iter().map(|(_, y)| *y).collect();
    for k in 0..K.min(m) {
        let norm = (k..m).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for j in k..K {
            let d: f64 = (k..m).map(|i| v[i - k] * a[i][j]).sum::<f64>() * 2.0 / vv;
            for i in k..m {
                a[i][j] -= d * v[i - k];
            }
        }
        let d: f64 = (k..m).map(|i| v[i - k] * b[i]).sum::<f64>() * 2.0 / vv;
        for i in k..m {
            b[i] -= d * v[i - k];
        }
    }
    let mut sol = [0.0f64; K];
    for i in (0..K.min(m)).rev() {
        let mut acc = b[i];
        for j in (i + 1)..K {
            acc -= a[i][j] * sol[j];
        }
        sol[i] = if a[i][i].abs() < 1e-300 { 0.0 } else { acc / a[i][i] };
    }
    for j in 0..K {
        sol[j] /= scale[j];
    }
    sol
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

fn trim_poly(mut p: Vec<C64>) -> Vec<C64> {
    while p.last().is_some_and(|c| *c == ZERO) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul(p: &[C64], q: &[C64]) -> Vec<C64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients of `Q(a + λz)`.
pub(crate) fn poly_compose_affine(p: &[C64], a: C64, lambda: C64) -> Vec<C64> {
    let lin = [a, lambda];
    let mut acc: Vec<C64> = Vec::new();
    for c in p.iter().rev() {
        acc = poly_mul(&acc, &lin);
        if acc.is_empty() {
            acc.push(*c);
        } else {
            acc[0] += c;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let f = ExpQuadratic::gaussian(c(0.5, 0.0));
        assert_eq!(f.eval(ZERO), ONE);
        let e = ExpQuadratic::new(ZERO, ONE, ZERO).eval(ONE);
        assert!((e.re - std::f64::consts::E).abs() < 1e-15 && e.im == 0.0);
        let g = PolyTimesExpQuad::new(vec![ZERO, ONE], ExpQuadratic::gaussian(c(0.25, 0.0))).unwrap();
        let v = g.eval(c(2.0, 0.0));
        assert!((v.re - 2.0 * 1f64.exp()).abs() < 1e-14);
        assert!((v.re - 5.43656).abs() < 1e-5);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(PolyTimesExpQuad::new(vec![ZERO, ZERO], ExpQuadratic::one()).is_err());
        let p = PolyTimesExpQuad::new(vec![ONE, c(2.0, 0.0), ZERO], ExpQuadratic::one()).unwrap();
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn exact_order_type() {
        let b = c(0.3, -0.4);
        let g = EntireFunction::from(ExpQuadratic::new(c(1.0, 0.0), c(2.0, 1.0), b))
            .order_type()
            .unwrap();
        assert_eq!(g.order, Order::Finite(2.0));
        assert_eq!(g.sigma, Some(b.norm()));
        assert_eq!(g.exactness, Exactness::Exact);
        let p = PolyTimesExpQuad::new(vec![ONE, ONE, ONE], ExpQuadratic::one()).unwrap();
        let gp = EntireFunction::from(p).order_type().unwrap();
        assert_eq!(gp.order, Order::Finite(0.0));
        assert_eq!(gp.exactness, Exactness::Exact);
    }

    #[test]
    fn exp_series_growth_estimate() {
        let f = EntireFunction::from(TaylorSeries::exponential(64).unwrap());
        let g = f.order_type().unwrap();
        let Order::Finite(rho) = g.order else { panic!("infinite order") };
        assert!((rho - 1.0).abs() < 0.05, "rho = {rho}");
        let sigma = g.sigma.unwrap();
        assert!((sigma - 1.0).abs() < 0.05, "sigma = {sigma}");
        assert_eq!(g.exactness, Exactness::Estimated);
    }

    #[test]
    fn too_few_coefficients() {
        let f = EntireFunction::from(TaylorSeries::exponential(12).unwrap());
        assert!(matches!(
            f.order_type(),
            Err(FockError::InsufficientCoefficients { .. })
        ));
    }

    #[test]
    fn builtin_growth_is_order_two_type_c() {
        let s = TaylorSeries::exp_quad_minus_one_over_z(c(0.375, 0.0), 200).unwrap();
        let fit = estimate_growth(s.coeffs()).unwrap();
        let Order::Finite(rho) = fit.order() else { panic!() };
        assert!((rho - 2.0).abs() < 0.02, "rho = {rho}");
        let sigma = fit.type_at_order(2.0);
        assert!((sigma - 0.375).abs() < 0.01 * 0.375, "sigma = {sigma}");
    }

    #[test]
    fn builtin_matches_closed_form_inside_radius() {
        let cc = c(0.375, 0.0);
        let s = TaylorSeries::exp_quad_minus_one_over_z(cc, 200).unwrap();
        assert!(s.certified_radius() > 10.0, "radius {}", s.certified_radius());
        for &z in &[c(0.5, 0.1), c(2.0, -1.0), c(3.0, 0.0), c(-1.5, 2.5)] {
            let exact = ((cc * z * z).exp() - 1.0) / z;
            let got = s.eval(z).unwrap();
            assert!((got - exact).norm() <= 1e-12 * exact.norm().max(1.0));
        }
        let too_far = C64::new(s.certified_radius() * 1.01, 0.0);
        assert!(matches!(s.eval(too_far), Err(FockError::RadiusExceeded { .. })));
    }

    #[test]
    fn tail_envelope_covers_the_true_tail() {
        let cc = c(0.375, 0.0);
        let short = TaylorSeries::exp_quad_minus_one_over_z(cc, 10).unwrap();
        let r = 2.5;
        let z = C64::new(r, 0.0);
        let exact = ((cc * z * z).exp() - 1.0) / z;
        let err = (horner(short.coeffs(), z) - exact).norm();
        assert!(err <= short.error_bound(r), "err {err} bound {}", short.error_bound(r));
    }

    #[test]
    fn max_modulus_examples() {
        let f = EntireFunction::from(ExpQuadratic::gaussian(c(0.3, 0.0)));
        assert!((f.max_modulus(1.0, 8).unwrap() - 0.3f64.exp()).abs() < 1e-14);
        let five = EntireFunction::constant(c(5.0, 0.0)).unwrap();
        assert!((five.max_modulus(3.7, 9).unwrap() - 5.0).abs() < 1e-13);
        let ex = EntireFunction::from(ExpQuadratic::gaussian(c(0.375, 0.0)));
        assert!((ex.max_modulus(2.0, 16).unwrap() - 1.5f64.exp()).abs() < 1e-13);
        assert!(five.max_modulus(1.0, 7).is_err());
    }

    #[test]
    fn composition_and_product() {
        let f = EntireFunction::from(
            PolyTimesExpQuad::new(vec![c(1.0, 1.0), c(0.0, 2.0), ONE], ExpQuadratic::new(c(0.1, 0.0), c(0.2, -0.3), c(0.05, 0.1)))
                .unwrap(),
        );
        let (a, l) = (c(0.4, -0.2), c(0.3, 0.6));
        let g = f.compose_affine(a, l).unwrap();
        let h = f.mul(&g).unwrap();
        for &z in &[c(0.3, 0.2), c(-1.1, 0.7), c(2.0, -0.5)] {
            let want = f.eval(a + l * z).unwrap();
            assert!((g.eval(z).unwrap() - want).norm() < 1e-12 * want.norm());
            let prod = f.eval(z).unwrap() * want;
            assert!((h.eval(z).unwrap() - prod).norm() < 1e-12 * prod.norm());
        }
    }
}

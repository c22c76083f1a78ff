//! The acceptance criteria, each checked against an oracle that does not share
//! code with the routine under test.

use std::time::Instant;

use fock_core::dynamics::{angle_criterion_ratio, isometry_report, scaled_iterate_norms, standard_test_functions, Trend};
use fock_core::fockspace::{fock_norm, fock_norm_quadrature, sup_norm, Exponent};
use fock_core::iterates::{convergence_residual, formal_limit, iterate_apply_product, iterate_coeffs, limit_evidence, limit_function};
use fock_core::logspace::phase_distance;
use fock_core::wcomp::{m_scan, Certificate, ScanTrend};
use fock_core::{
    AffineSymbol, EntireFunction, ExpQuadratic, FockContext, PolyTimesExpQuad, Result, TaylorSeries, Verdict,
    WeightedCompOp, C64,
};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::sample::{self, boundary_op, disc_point, exp_quadratic_op, square_point, stream, unit_modulus_op, worked_example};

pub const CRITERIA: u8 = 12;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub cases_passed: usize,
    /// Largest error metric seen, in the units of `tolerance`.
    pub worst: f64,
    pub tolerance: f64,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let mut s = format!(
            "[{}] criterion {:>2} {}: {}/{} cases, worst {:.3e} (tol {:.0e}), {:.2} s (budget {} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases_passed,
            self.cases,
            self.worst,
            self.tolerance,
            self.seconds,
            self.budget_seconds,
        );
        if let Some(first) = self.notes.first() {
            s.push_str(&format!("; {first}"));
        }
        s
    }
}

/// Case bookkeeping shared by all criteria.
struct Tally {
    tol: f64,
    cases: usize,
    ok: usize,
    worst: f64,
    notes: Vec<String>,
}

impl Tally {
    fn new(tol: f64) -> Self {
        Tally {
            tol,
            cases: 0,
            ok: 0,
            worst: 0.0,
            notes: Vec::new(),
        }
    }

    /// Records a case whose error metric must not exceed the tolerance.
    fn metric(&mut self, label: impl FnOnce() -> String, err: f64) {
        self.cases += 1;
        if err.is_nan() {
            self.worst = f64::NAN;
        } else if !self.worst.is_nan() {
            self.worst = self.worst.max(err);
        }
        if err <= self.tol {
            self.ok += 1;
        } else {
            self.notes.push(format!("{}: error {err:.3e}", label()));
        }
    }

    fn check(&mut self, label: impl FnOnce() -> String, ok: bool) {
        self.cases += 1;
        if ok {
            self.ok += 1;
        } else {
            self.notes.push(label());
        }
    }

    fn absorb<T>(&mut self, label: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.notes.push(format!("{}: {e}", label()));
                None
            }
        }
    }
}

fn rel(x: f64, exact: f64) -> f64 {
    (x - exact).abs() / exact.abs()
}

/// `|e^{la − lb} − 1|`, the relative error of `e^{la}` against `e^{lb}`.
fn log_rel(la: f64, lb: f64) -> f64 {
    (la - lb).exp_m1().abs()
}

const NAMES: [&str; CRITERIA as usize] = [
    "norm oracles",
    "Gaussian closed form vs quadrature",
    "classifier trichotomy vs M_z scan",
    "worked examples",
    "iterate closed form vs product",
    "geometric convergence of c1n",
    "square of non-real boundary operator is compact",
    "scaled iterate norms",
    "angle criterion ratio",
    "limit operator on the little space",
    "isometry multiples and paranormality",
    "p-independence of the classification",
];

const BUDGETS: [f64; CRITERIA as usize] = [10.0, 10.0, 60.0, 5.0, 30.0, 20.0, 10.0, 10.0, 10.0, 20.0, 30.0, 30.0];

const TOLS: [f64; CRITERIA as usize] = [1e-8, 1e-8, 0.0, 0.0, 1e-10, 1e-3, 1e-10, 1e-8, 1e-8, 1e-6, 1e-6, 0.0];

pub fn name(id: u8) -> &'static str {
    NAMES[id as usize - 1]
}

/// Runs criterion `id` (1-based). A criterion passes when every case passes
/// and the wall time stays inside its budget.
pub fn criterion(id: u8, seed: u64) -> CriterionOutcome {
    assert!((1..=CRITERIA).contains(&id), "criteria are numbered 1..={CRITERIA}");
    let k = id as usize - 1;
    let mut t = Tally::new(TOLS[k]);
    let start = Instant::now();
    match id {
        1 => norm_oracles(&mut t, seed),
        2 => gaussian_closed_form(&mut t, seed),
        3 => trichotomy(&mut t, seed),
        4 => worked_examples(&mut t),
        5 => iterate_product(&mut t, seed),
        6 => c1_convergence(&mut t, seed),
        7 => square_compact(&mut t, seed),
        8 => scaled_norms(&mut t),
        9 => angle_ratio(&mut t),
        10 => limit_operator(&mut t),
        11 => isometries(&mut t, seed),
        _ => p_independence(&mut t, seed),
    }
    let seconds = start.elapsed().as_secs_f64();
    let mut notes = t.notes;
    let in_budget = seconds < BUDGETS[k];
    if !in_budget {
        notes.push(format!("over budget: {seconds:.2} s"));
    }
    CriterionOutcome {
        id,
        name: NAMES[k],
        passed: t.cases > 0 && t.ok == t.cases && in_budget,
        cases: t.cases,
        cases_passed: t.ok,
        worst: t.worst,
        tolerance: t.tol,
        seconds,
        budget_seconds: BUDGETS[k],
        seed,
        notes,
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    (1..=CRITERIA).map(|id| criterion(id, seed)).collect()
}

fn norm_oracles(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 1);
    let one: EntireFunction = ExpQuadratic::one().into();
    for i in 0..20 {
        let alpha = rng.gen_range(0.5..3.0);
        let w = disc_point(&mut rng, 2.0);
        let p = *[Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity].choose(&mut rng).unwrap();
        let ctx = match p {
            Exponent::Finite(p) => FockContext::fp(p, alpha),
            Exponent::Infinity => FockContext::finfty(alpha),
        }
        .expect("valid space");
        let k: EntireFunction = ExpQuadratic::kernel(w, alpha).into();
        let log_exact = alpha * w.norm_sqr() / 2.0;
        let label = || format!("case {i} (w = {w}, α = {alpha}, p = {p:?})");
        for (f, exact) in [(&one, 0.0), (&k, log_exact)] {
            if let Some(n) = t.absorb(label, fock_norm(f, &ctx, 1e-10)) {
                t.metric(label, log_rel(n.log_value, exact));
            }
            let numeric = match p {
                Exponent::Finite(p) => fock_norm_quadrature(f, p, alpha, 1e-10),
                Exponent::Infinity => sup_norm(f, alpha, 1e-10),
            };
            if let Some(n) = t.absorb(label, numeric) {
                t.metric(label, log_rel(n.log_value, exact));
            }
        }
    }
}

fn gaussian_closed_form(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 2);
    for i in 0..20 {
        let alpha: f64 = rng.gen_range(0.5..3.0);
        let c: f64 = rng.gen_range(-0.45 * alpha..0.45 * alpha);
        let exact = alpha.sqrt() / (alpha * alpha - 4.0 * c * c).powf(0.25);
        let f: EntireFunction = ExpQuadratic::gaussian(C64::new(c, 0.0)).into();
        let ctx = FockContext::fp(2.0, alpha).expect("valid space");
        let label = || format!("case {i} (c = {c}, α = {alpha})");
        if let Some(n) = t.absorb(label, fock_norm(&f, &ctx, 1e-10)) {
            t.metric(label, rel(n.value(), exact));
        }
        if let Some(n) = t.absorb(label, fock_norm_quadrature(&f, 2.0, alpha, 1e-10)) {
            t.metric(label, rel(n.value(), exact));
        }
    }
}

fn trichotomy(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 3);
    let mut done = 0;
    while done < 200 {
        let alpha = rng.gen_range(0.5..2.0);
        let lam = sample::lambda(&mut rng, 0.2, 0.9);
        let frac = rng.gen_range(0.0..2.0);
        let ab = alpha * (1.0 - lam.norm_sqr());
        if (frac * ab - ab).abs() < 0.05 {
            continue;
        }
        done += 1;
        let w = exp_quadratic_op(&mut rng, lam, frac, FockContext::fp(2.0, alpha).expect("valid space"));
        let label = || format!("case {done} (λ = {lam}, |a2|/(αβ/2) = {frac})");
        let Some(cls) = t.absorb(label, w.classify()) else { continue };
        let Some(scan) = t.absorb(label, m_scan(&w, 400.0, 200, 720)) else { continue };
        let numeric = match scan.trend {
            ScanTrend::Grows => Verdict::Unbounded,
            ScanTrend::Decays => Verdict::Compact,
            ScanTrend::Bounded => Verdict::BoundedNotCompact,
        };
        t.check(
            || format!("{}: exact {:?}, scan {:?}", label(), cls.verdict, numeric),
            cls.verdict == numeric && cls.exactness == fock_core::wcomp::VerdictExactness::Exact,
        );
    }
}

fn worked_examples(t: &mut Tally) {
    let alpha = 1.0;
    let beta = 0.75;
    let ctx = FockContext::fp(2.0, alpha).expect("valid space");
    let half = AffineSymbol::new(C64::new(0.0, 0.0), C64::new(0.5, 0.0));
    let core = ExpQuadratic::gaussian(C64::new(alpha * beta / 2.0, 0.0));
    let cases: Vec<(&str, Result<WeightedCompOp>, Verdict)> = vec![
        ("exp(αβz²/2), λ = 1/2", Ok(worked_example(ctx)), Verdict::BoundedNotCompact),
        (
            "z·exp(αβz²/2)",
            PolyTimesExpQuad::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)], core)
                .and_then(|f| WeightedCompOp::new(f.into(), half, ctx)),
            Verdict::Unbounded,
        ),
        (
            "(exp(αβz²/2) − 1)/z",
            TaylorSeries::exp_quad_minus_one_over_z(C64::new(alpha * beta / 2.0, 0.0), 200)
                .and_then(|f| WeightedCompOp::new(f.into(), half, ctx)),
            Verdict::Compact,
        ),
        (
            "ψ = 1, |λ| = 1, a ≠ 0",
            WeightedCompOp::new(
                ExpQuadratic::one().into(),
                AffineSymbol::new(C64::new(0.5, 0.2), C64::from_polar(1.0, 0.7)),
                ctx,
            ),
            Verdict::Unbounded,
        ),
        (
            "ψ = 1, |λ| = 1, a = 0",
            WeightedCompOp::new(
                ExpQuadratic::one().into(),
                AffineSymbol::new(C64::new(0.0, 0.0), C64::from_polar(1.0, 0.7)),
                ctx,
            ),
            Verdict::IsometryMultiple,
        ),
    ];
    for (label, w, want) in cases {
        let Some(w) = t.absorb(|| label.to_string(), w) else { continue };
        if let Some(cls) = t.absorb(|| label.to_string(), w.classify()) {
            t.check(|| format!("{label}: got {:?}, want {want:?}", cls.verdict), cls.verdict == want);
        }
    }
}

fn iterate_product(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 5);
    for i in 0..200 {
        let alpha = rng.gen_range(0.5..2.0);
        let lam = sample::lambda(&mut rng, 0.2, 0.95);
        let frac = rng.gen_range(0.0..1.2);
        let w = exp_quadratic_op(&mut rng, lam, frac, FockContext::fp(2.0, alpha).expect("valid space"));
        let f: EntireFunction = ExpQuadratic::new(square_point(&mut rng, 0.5), square_point(&mut rng, 1.0), square_point(&mut rng, 0.1)).into();
        let z = square_point(&mut rng, 2.0);
        for n in [2u32, 5, 17, 64] {
            let label = || format!("case {i}, n = {n}, z = {z}");
            let Some(it) = t.absorb(label, iterate_coeffs(&w, n)) else { continue };
            let Some(a) = t.absorb(label, it.log_apply(&f, z)) else { continue };
            let Some(b) = t.absorb(label, iterate_apply_product(&w, &f, n, z)) else { continue };
            let b = b.log;
            let scale = b.log_abs.abs().max(1.0);
            let err = ((a.log_abs - b.log_abs).abs()).max(phase_distance(a.phase, b.phase)) / scale;
            t.metric(label, err);
        }
    }
}

/// `c1 − c1n` summed term by term: the linear coefficient of
/// `Σ_{k≥n} (a1·φ_k(z) + a2·φ_k(z)²)` with `φ_k(z) = p_k + λᵏz`. Summing the
/// tail directly avoids the cancellation in the difference of two sums.
fn c1_tail_by_summation(g: &ExpQuadratic, a: C64, lam: C64, n: u32) -> C64 {
    let mut p = C64::new(0.0, 0.0);
    let mut lk = C64::new(1.0, 0.0);
    for _ in 0..n {
        p = a + lam * p;
        lk *= lam;
    }
    let mut sum = C64::new(0.0, 0.0);
    loop {
        let term = lk * (g.a1 + g.a2 * p * 2.0);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() || lk.norm() < 1e-300 {
            return sum;
        }
        p = a + lam * p;
        lk *= lam;
    }
}

fn c1_convergence(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 6);
    for i in 0..50 {
        let alpha = rng.gen_range(0.5..2.0);
        let lam = sample::lambda(&mut rng, 0.2, 0.9);
        let frac = rng.gen_range(0.0..1.0);
        let w = exp_quadratic_op(&mut rng, lam, frac, FockContext::fp(2.0, alpha).expect("valid space"));
        let label = || format!("case {i} (λ = {lam})");
        let Some(g) = t.absorb(label, w.exp_quadratic_psi()) else { continue };
        let Some(limit) = t.absorb(label, formal_limit(&w)) else { continue };
        let mut pts = Vec::with_capacity(40);
        let mut worst_gap: f64 = 0.0;
        for n in 1..=40u32 {
            let tail = c1_tail_by_summation(&g, w.phi().a, lam, n);
            match iterate_coeffs(&w, n) {
                Ok(it) => {
                    let scale = limit.c1.norm().max(tail.norm()).max(1.0);
                    worst_gap = worst_gap.max(((limit.c1 - it.c1n) - tail).norm() / scale.max(f64::MIN_POSITIVE));
                }
                Err(_) => worst_gap = f64::INFINITY,
            }
            pts.push((n as f64, tail.norm().ln()));
        }
        t.check(
            || format!("{}: closed-form c1n off the summed tail by {worst_gap:.3e}", label()),
            worst_gap <= 1e-12,
        );
        let r2 = r_squared(&pts);
        t.metric(|| format!("{}: R² = {r2}", label()), 1.0 - r2);
    }
}

fn r_squared(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if syy == 0.0 {
        return 1.0;
    }
    sxy * sxy / (sxx * syy)
}

fn square_compact(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 7);
    for i in 0..50 {
        let alpha = rng.gen_range(0.5..2.0);
        let w = boundary_op(&mut rng, true, i % 2 == 0, FockContext::fp(2.0, alpha).expect("valid space"));
        let lam = w.phi().lambda;
        let label = || format!("case {i} (λ = {lam}, α = {alpha})");
        let Some(cls) = t.absorb(label, w.classify()) else { continue };
        t.check(
            || format!("{}: W classified {:?}", label(), cls.verdict),
            cls.verdict == Verdict::BoundedNotCompact,
        );
        let Some(sq) = t.absorb(label, w.square().and_then(|s| s.classify())) else { continue };
        // ψ·ψ∘φ has quadratic coefficient a2(1 + λ²) and the symbol λ²z + (1 + λ)a.
        let beta = 1.0 - lam.norm_sqr();
        let mu_oracle = alpha * beta * ((C64::new(1.0, 0.0) + lam * lam).norm() - (1.0 + lam.norm_sqr()));
        match sq.certificate {
            Certificate::QuadraticForm { mu, .. } if sq.verdict == Verdict::Compact && mu < 0.0 => {
                t.metric(label, (mu - mu_oracle).abs() / mu_oracle.abs());
            }
            other => t.check(|| format!("{}: square gave {:?} / {other:?}", label(), sq.verdict), false),
        }
    }
}

fn scaled_norms(t: &mut Tally) {
    let w = worked_example(FockContext::fp(2.0, 1.0).expect("valid space"));
    let one: EntireFunction = ExpQuadratic::one().into();
    let Some(rep) = t.absorb(|| "scaled norms".into(), scaled_iterate_norms(&w, &one, 40)) else { return };
    for p in &rep.values {
        let l: f64 = 0.5;
        let exact = l.powf(-(p.n as f64) / 2.0) * (2.0 - l.powi(2 * p.n as i32)).powf(-0.25);
        t.metric(|| format!("n = {}", p.n), rel(p.value, exact));
    }
    t.check(|| format!("trend {:?}", rep.trend), rep.trend == Trend::DivergesToInfinity);
}

fn angle_ratio(t: &mut Tally) {
    let w = worked_example(FockContext::fp(2.0, 1.0).expect("valid space"));
    let one: EntireFunction = ExpQuadratic::one().into();
    let Some(rep) = t.absorb(|| "angle ratio".into(), angle_criterion_ratio(&w, &one, 40)) else { return };
    for p in &rep.values {
        let l: f64 = 0.5;
        let exact = l.powf(p.n as f64 / 2.0) * (2.0 - l.powi(2 * p.n as i32)).powf(0.25);
        t.metric(|| format!("n = {}", p.n), rel(p.value, exact));
    }
    t.check(|| format!("trend {:?}", rep.trend), rep.trend == Trend::ConvergesToZero);
}

fn limit_operator(t: &mut Tally) {
    let w = worked_example(FockContext::finfty0(1.0).expect("valid space"));
    let Some(l) = t.absorb(|| "limit".into(), limit_function(&w)) else { return };
    for z in [C64::new(0.7, 0.0), C64::new(0.3, -1.1), C64::new(-1.5, 0.4)] {
        let exact = (z * z / 2.0).exp();
        t.metric(|| format!("F({z}) against exp(z²/2)"), (l.c * l.f.eval(z) - exact).norm() / exact.norm());
    }
    let f: EntireFunction = l.f.into();
    let ctx = FockContext::finfty(1.0).expect("valid space");
    if let Some(n) = t.absorb(|| "‖F‖∞".into(), fock_norm(&f, &ctx, 1e-10)) {
        t.metric(|| "‖F‖∞ closed form".into(), (n.value() - 1.0).abs());
    }
    if let Some(n) = t.absorb(|| "‖F‖∞ grid".into(), sup_norm(&f, 1.0, 1e-10)) {
        t.metric(|| "‖F‖∞ grid search".into(), (n.value() - 1.0).abs());
    }
    if let Some(ev) = t.absorb(|| "decay profile".into(), limit_evidence(&l, 1.0, 8.0)) {
        t.check(|| "no bounded non-vanishing ray".into(), ev.decay.has_non_vanishing_ray());
    }
    let one: EntireFunction = ExpQuadratic::one().into();
    if let Some(r) = t.absorb(|| "residual".into(), convergence_residual(&w, &l, &one, 60, 2.0, 33)) {
        t.metric(|| "residual at n = 60".into(), r);
    }
}

fn isometries(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 11);
    for i in 0..20 {
        let alpha = rng.gen_range(0.5..2.0);
        let p = [1.0, 2.0, 3.0][i % 3];
        let (w, kappa) = unit_modulus_op(&mut rng, FockContext::fp(p, alpha).expect("valid space"));
        let label = || format!("case {i} (λ = {}, a = {}, p = {p})", w.phi().lambda, w.phi().a);
        let Some(rep) = t.absorb(label, isometry_report(&w, &standard_test_functions(alpha))) else { continue };
        t.metric(|| format!("{}: κ", label()), rel(rep.kappa, kappa));
        for e in &rep.entries {
            t.metric(|| format!("{}: ‖Wf‖/‖f‖ for {}", label(), e.label), rel(e.ratio, kappa));
            // the paranormal residual is pinned two orders tighter
            t.metric(|| format!("{}: paranormal residual for {}", label(), e.label), e.paranormal_residual * 100.0);
        }
    }
}

fn p_independence(t: &mut Tally, seed: u64) {
    let mut rng = stream(seed, 12);
    for i in 0..100 {
        let alpha = rng.gen_range(0.5..2.0);
        let base = FockContext::fp(2.0, alpha).expect("valid space");
        let w = match i % 4 {
            0 | 1 => {
                let lam = sample::lambda(&mut rng, 0.2, 0.9);
                let frac = rng.gen_range(0.0..1.5);
                exp_quadratic_op(&mut rng, lam, frac, base)
            }
            2 => {
                let (non_real, zero_t) = (rng.gen(), rng.gen());
                boundary_op(&mut rng, non_real, zero_t, base)
            }
            _ => {
                let lam = sample::lambda(&mut rng, 0.2, 0.9);
                exp_quadratic_op(&mut rng, lam, 1.0, base)
            }
        };
        let contexts = [
            FockContext::fp(1.0, alpha),
            FockContext::fp(2.0, alpha),
            FockContext::finfty0(alpha),
        ];
        let label = || format!("case {i} (λ = {})", w.phi().lambda);
        let results: Vec<_> = contexts
            .iter()
            .filter_map(|ctx| t.absorb(label, ctx.clone().and_then(|c| w.with_ctx(c).classify())))
            .collect();
        if results.len() == 3 {
            t.check(
                || format!("{}: {:?} / {:?} / {:?}", label(), results[0].verdict, results[1].verdict, results[2].verdict),
                results.iter().all(|r| r == &results[0]),
            );
        }
    }
}

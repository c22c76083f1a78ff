//! Complex values carried as (log-modulus, wrapped phase).
//!
//! Iterates of weighted composition operators overflow `f64` long before the
//! interesting asymptotics kick in, so products are accumulated as sums of
//! logarithms and only converted back on demand.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Wraps an angle into `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let mut w = (theta + PI).rem_euclid(TAU) - PI;
    if w <= -PI {
        w += TAU;
    }
    w
}

/// Distance between two phases on the circle, in `[0, π]`.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

/// `log(Σ exp(x_i))` without overflow. Returns `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub log_abs: f64,
    pub phase: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        log_abs: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub const ONE: LogValue = LogValue {
        log_abs: 0.0,
        phase: 0.0,
    };

    /// `exp(e)` in log form; exact for any finite exponent.
    pub fn from_exponent(e: Complex64) -> Self {
        LogValue {
            log_abs: e.re,
            phase: wrap_phase(e.im),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        LogValue {
            log_abs: z.norm().ln(),
            phase: z.arg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    pub fn mul(self, other: LogValue) -> LogValue {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        LogValue {
            log_abs: self.log_abs + other.log_abs,
            phase: wrap_phase(self.phase + other.phase),
        }
    }

    pub fn div(self, other: LogValue) -> LogValue {
        LogValue {
            log_abs: self.log_abs - other.log_abs,
            phase: wrap_phase(self.phase - other.phase),
        }
    }

    pub fn powi(self, n: i64) -> LogValue {
        if self.is_zero() {
            return if n == 0 { Self::ONE } else { Self::ZERO };
        }
        LogValue {
            log_abs: self.log_abs * n as f64,
            phase: wrap_phase(self.phase * n as f64),
        }
    }

    /// Converts back to a complex number; saturates to `inf`/`0` outside the `f64` range.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_abs.exp(), self.phase)
    }

    pub fn overflows(&self) -> bool {
        self.log_abs > f64::MAX.ln()
    }

    pub fn underflows(&self) -> bool {
        self.log_abs < f64::MIN_POSITIVE.ln()
    }
}

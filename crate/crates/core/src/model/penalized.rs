//! Penalized nonlinearity `g(x, t) = χ_Ω(x) f(t) + (1 - χ_Ω(x)) h(t)`, where
//! `h` follows `f` up to the threshold `a` and is the line `t / k` beyond it.

use super::nonlinearity::{NonlinearityKind, NonlinearitySpec};
use crate::error::{ModelError, ModelResult};

/// Root tolerance on `f(a)/a - 1/k`.
pub const THRESHOLD_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PenalizedNonlinearity {
    pub k: f64,
    pub a: f64,
    pub omega_left: f64,
    pub omega_right: f64,
}

/// Smallest admissible slope parameter: `k > max(theta/(theta-2), 2)`.
pub fn min_admissible_k(theta: f64) -> f64 {
    (theta / (theta - 2.0)).max(2.0)
}

/// Solves `f(a)/a = 1/k` by bracketing and bisection.
pub fn solve_threshold_a(f: &NonlinearitySpec, k: f64) -> ModelResult<f64> {
    let k_min = min_admissible_k(f.theta);
    if !(k > k_min) {
        return Err(ModelError::InvalidParameter {
            name: "penalization.k",
            reason: format!("need k > {k_min}, got {k}"),
        });
    }
    let target = 1.0 / k;
    let excess = |t: f64| f.f(t) / t - target;

    const T_MAX: f64 = 1e12;
    let p = f.growth_exponent();
    let mut hi = 10.0 * k.powf(1.0 / (1.0 - p));
    if !hi.is_finite() || hi <= 0.0 {
        hi = 1.0;
    }
    while excess(hi) <= 0.0 {
        hi *= 2.0;
        if hi > T_MAX {
            return Err(ModelError::NoBracket { target, t_max: T_MAX });
        }
    }
    let mut lo = hi;
    while excess(lo) >= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(ModelError::NoBracket { target, t_max: hi });
        }
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = if excess(lo).abs() <= excess(hi).abs() { lo } else { hi };
    if excess(a).abs() > THRESHOLD_TOL {
        return Err(ModelError::NoBracket { target, t_max: hi });
    }
    Ok(a)
}

impl PenalizedNonlinearity {
    pub fn new(f: &NonlinearitySpec, k: f64, omega_left: f64, omega_right: f64) -> ModelResult<Self> {
        if !(omega_left < omega_right) {
            return Err(ModelError::InvalidParameter {
                name: "penalization.omega",
                reason: format!("need omega_left < omega_right, got ({omega_left}, {omega_right})"),
            });
        }
        let a = match f.kind {
            NonlinearityKind::Zero => f64::INFINITY,
            _ => solve_threshold_a(f, k)?,
        };
        Ok(Self {
            k,
            a,
            omega_left,
            omega_right,
        })
    }

    /// `χ_Ω(x)` for the open interval `Ω`.
    pub fn in_omega(&self, x: f64) -> bool {
        x > self.omega_left && x < self.omega_right
    }

    pub fn h(&self, f: &NonlinearitySpec, t: f64) -> f64 {
        if t <= self.a {
            f.f(t)
        } else {
            t / self.k
        }
    }

    pub fn g_branch(&self, f: &NonlinearitySpec, inside: bool, t: f64) -> f64 {
        if inside {
            f.f(t)
        } else {
            self.h(f, t)
        }
    }

    /// `G(x, t) = ∫_0^t g(x, s) ds` in closed form per branch.
    pub fn big_g_branch(&self, f: &NonlinearitySpec, inside: bool, t: f64) -> f64 {
        if inside || t <= self.a {
            f.primitive(t)
        } else {
            f.primitive(self.a) + (t * t - self.a * self.a) / (2.0 * self.k)
        }
    }

    /// `∂g/∂t`, one-sided (from the right) at the kink `t = a`.
    pub fn dg_branch(&self, f: &NonlinearitySpec, inside: bool, t: f64) -> f64 {
        if inside || t < self.a {
            f.derivative(t)
        } else {
            1.0 / self.k
        }
    }

    pub fn g(&self, f: &NonlinearitySpec, x: f64, t: f64) -> f64 {
        self.g_branch(f, self.in_omega(x), t)
    }

    pub fn big_g(&self, f: &NonlinearitySpec, x: f64, t: f64) -> f64 {
        self.big_g_branch(f, self.in_omega(x), t)
    }

    pub fn dg(&self, f: &NonlinearitySpec, x: f64, t: f64) -> f64 {
        self.dg_branch(f, self.in_omega(x), t)
    }
}

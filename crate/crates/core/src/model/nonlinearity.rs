//! The superlinear nonlinearity `f` and its primitive `F`.
//!
//! Both families vanish identically on `t <= 0`, so solutions of the
//! obstacle problem are sought among nonnegative functions.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, ModelResult};

/// Monotone piecewise-cubic Hermite interpolant (Fritsch–Carlson limiter)
/// through samples `(t_i, f_i)` with `t_0 = 0` and `f_0 = 0`.
///
/// Beyond the last sample the curve continues as the power law
/// `f_m (t / t_m)^(theta - 1)`, which keeps `theta F(t) <= f(t) t` true
/// asymptotically.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    /// `prefix[i] = ∫_0^{t_i} f`.
    prefix: Vec<f64>,
    tail_exponent: f64,
}

impl MonotoneSpline {
    pub fn new(knots: Vec<f64>, values: Vec<f64>, theta: f64) -> ModelResult<Self> {
        let bad = |reason: &str| ModelError::InvalidParameter {
            name: "nonlinearity.table",
            reason: reason.to_string(),
        };
        if knots.len() != values.len() {
            return Err(bad("t and f must have the same length"));
        }
        if knots.len() < 3 {
            return Err(bad("need at least three samples"));
        }
        if knots[0] != 0.0 || values[0] != 0.0 {
            return Err(bad("table must start at (0, 0)"));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(bad("t samples must be strictly increasing"));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(bad("f samples must be nondecreasing"));
        }
        if values.iter().any(|v| !v.is_finite()) || *values.last().unwrap() <= 0.0 {
            return Err(bad("f samples must be finite with a positive last value"));
        }
        if !(theta > 2.0) {
            return Err(bad("theta must exceed 2"));
        }

        let m = knots.len();
        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let secant: Vec<f64> = (0..m - 1).map(|i| (values[i + 1] - values[i]) / h[i]).collect();

        let mut slopes = vec![0.0; m];
        for i in 1..m - 1 {
            let (s0, s1) = (secant[i - 1], secant[i]);
            if s0 * s1 > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                slopes[i] = (w1 + w2) / (w1 / s0 + w2 / s1);
            }
        }
        slopes[0] = end_slope(h[0], h[1], secant[0], secant[1]);
        slopes[m - 1] = end_slope(h[m - 2], h[m - 3], secant[m - 2], secant[m - 3]);

        let mut prefix = vec![0.0; m];
        for i in 0..m - 1 {
            let seg = h[i] * (values[i] + values[i + 1]) / 2.0 + h[i] * h[i] * (slopes[i] - slopes[i + 1]) / 12.0;
            prefix[i + 1] = prefix[i] + seg;
        }

        Ok(Self {
            knots,
            values,
            slopes,
            prefix,
            tail_exponent: theta - 1.0,
        })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn last(&self) -> (f64, f64) {
        (*self.knots.last().unwrap(), *self.values.last().unwrap())
    }

    fn segment(&self, t: f64) -> usize {
        let idx = self.knots.partition_point(|&k| k <= t);
        idx.saturating_sub(1).min(self.knots.len() - 2)
    }

    fn value(&self, t: f64) -> f64 {
        let (tm, fm) = self.last();
        if t >= tm {
            return fm * (t / tm).powf(self.tail_exponent);
        }
        let i = self.segment(t);
        let h = self.knots[i + 1] - self.knots[i];
        let s = (t - self.knots[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(s);
        h00 * self.values[i] + h10 * h * self.slopes[i] + h01 * self.values[i + 1] + h11 * h * self.slopes[i + 1]
    }

    fn derivative(&self, t: f64) -> f64 {
        let (tm, fm) = self.last();
        if t >= tm {
            let q = self.tail_exponent;
            return q * fm / tm * (t / tm).powf(q - 1.0);
        }
        let i = self.segment(t);
        let h = self.knots[i + 1] - self.knots[i];
        let s = (t - self.knots[i]) / h;
        let d00 = 6.0 * s * s - 6.0 * s;
        let d10 = 3.0 * s * s - 4.0 * s + 1.0;
        let d01 = -d00;
        let d11 = 3.0 * s * s - 2.0 * s;
        (d00 * self.values[i] + d01 * self.values[i + 1]) / h + d10 * self.slopes[i] + d11 * self.slopes[i + 1]
    }

    fn primitive(&self, t: f64) -> f64 {
        let (tm, fm) = self.last();
        if t >= tm {
            let theta = self.tail_exponent + 1.0;
            return self.prefix[self.knots.len() - 1] + fm * tm / theta * ((t / tm).powf(theta) - 1.0);
        }
        let i = self.segment(t);
        let h = self.knots[i + 1] - self.knots[i];
        let s = (t - self.knots[i]) / h;
        // antiderivatives of the Hermite basis on [0, s]
        let s2 = s * s;
        let s3 = s2 * s;
        let s4 = s3 * s;
        let i00 = s4 / 2.0 - s3 + s;
        let i10 = s4 / 4.0 - 2.0 * s3 / 3.0 + s2 / 2.0;
        let i01 = -s4 / 2.0 + s3;
        let i11 = s4 / 4.0 - s3 / 3.0;
        self.prefix[i]
            + h * (i00 * self.values[i]
                + i10 * h * self.slopes[i]
                + i01 * self.values[i + 1]
                + i11 * h * self.slopes[i + 1])
    }
}

fn hermite_basis(s: f64) -> (f64, f64, f64, f64) {
    let s2 = s * s;
    let s3 = s2 * s;
    (
        2.0 * s3 - 3.0 * s2 + 1.0,
        s3 - 2.0 * s2 + s,
        -2.0 * s3 + 3.0 * s2,
        s3 - s2,
    )
}

/// Shape-preserving three-point end slope.
fn end_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 <= 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NonlinearityKind {
    /// `f(t) = t^p` for `t >= 0`.
    Power {
        p: f64,
    },
    Tabulated(MonotoneSpline),
    /// `f ≡ 0`: the classical linear obstacle problem. Violates the growth
    /// hypotheses and never comes from a config file.
    Zero,
}

/// `f` together with its Ambrosetti–Rabinowitz exponent `theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlinearitySpec {
    pub kind: NonlinearityKind,
    pub theta: f64,
}

impl NonlinearitySpec {
    /// `t^p` with the natural exponent `theta = p + 1`.
    pub fn power(p: f64) -> ModelResult<Self> {
        Self::power_with_theta(p, p + 1.0)
    }

    pub fn power_with_theta(p: f64, theta: f64) -> ModelResult<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "nonlinearity.p",
                reason: format!("need p > 1, got {p}"),
            });
        }
        if !(theta > 2.0) {
            return Err(ModelError::InvalidParameter {
                name: "nonlinearity.theta",
                reason: format!("need theta > 2, got {theta}"),
            });
        }
        Ok(Self {
            kind: NonlinearityKind::Power { p },
            theta,
        })
    }

    pub fn tabulated(t: Vec<f64>, f: Vec<f64>, theta: f64) -> ModelResult<Self> {
        Ok(Self {
            kind: NonlinearityKind::Tabulated(MonotoneSpline::new(t, f, theta)?),
            theta,
        })
    }

    pub fn zero() -> Self {
        Self {
            kind: NonlinearityKind::Zero,
            theta: 4.0,
        }
    }

    pub fn f(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            NonlinearityKind::Power { p } => t.powf(*p),
            NonlinearityKind::Tabulated(s) => s.value(t),
            NonlinearityKind::Zero => 0.0,
        }
    }

    /// `F(t) = ∫_0^t f`.
    pub fn primitive(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            NonlinearityKind::Power { p } => t.powf(p + 1.0) / (p + 1.0),
            NonlinearityKind::Tabulated(s) => s.primitive(t),
            NonlinearityKind::Zero => 0.0,
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            NonlinearityKind::Power { p } => p * t.powf(p - 1.0),
            NonlinearityKind::Tabulated(s) => s.derivative(t),
            NonlinearityKind::Zero => 0.0,
        }
    }

    /// Growth exponent used to size root brackets (`p` for the power family).
    pub(crate) fn growth_exponent(&self) -> f64 {
        match &self.kind {
            NonlinearityKind::Power { p } => *p,
            NonlinearityKind::Tabulated(_) | NonlinearityKind::Zero => self.theta - 1.0,
        }
    }
}

/// JSON form of the nonlinearity block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NonlinearityConfig {
    Power {
        p: f64,
        /// Defaults to `p + 1`.
        #[serde(default)]
        theta: Option<f64>,
    },
    Tabulated {
        t: Vec<f64>,
        f: Vec<f64>,
        theta: f64,
    },
}

impl NonlinearityConfig {
    pub fn build(&self) -> ModelResult<NonlinearitySpec> {
        match self {
            Self::Power { p, theta } => NonlinearitySpec::power_with_theta(*p, theta.unwrap_or(p + 1.0)),
            Self::Tabulated { t, f, theta } => NonlinearitySpec::tabulated(t.clone(), f.clone(), *theta),
        }
    }
}

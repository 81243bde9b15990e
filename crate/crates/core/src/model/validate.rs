use serde::Serialize;

use super::instance::ProblemInstance;
use crate::discretize::Mesh;
use crate::error::{ModelError, ModelResult};

/// Margin below which a sampled inequality counts as violated.
pub const MARGIN_TOL: f64 = -1e-12;

/// One sampled check: its worst relative margin and where it occurred.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub worst_margin: f64,
    pub witness: Option<String>,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.checks.extend(other.checks);
        self
    }

    /// Converts the first failing check into [`ModelError::HypothesisViolated`].
    pub fn into_result(self) -> ModelResult<Self> {
        match self.first_failure() {
            None => Ok(self),
            Some(c) => Err(ModelError::HypothesisViolated {
                check: c.name.clone(),
                witness: c.witness.clone().unwrap_or_default(),
                margin: c.worst_margin,
            }),
        }
    }

    pub fn total_samples(&self) -> usize {
        self.checks.iter().map(|c| c.samples).sum()
    }
}

/// Tracks the worst margin over a sampled check.
pub(crate) struct Tally {
    name: String,
    worst: f64,
    witness: Option<String>,
    samples: usize,
    tol: f64,
}

impl Tally {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        Self::with_tol(name, MARGIN_TOL)
    }

    pub(crate) fn with_tol(name: impl Into<String>, tol: f64) -> Self {
        Self {
            name: name.into(),
            worst: f64::INFINITY,
            witness: None,
            samples: 0,
            tol,
        }
    }

    pub(crate) fn record(&mut self, margin: f64, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if margin < self.worst || margin.is_nan() {
            self.worst = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
            self.witness = Some(witness());
        }
    }

    pub(crate) fn finish(self) -> CheckOutcome {
        let worst = if self.samples == 0 { 0.0 } else { self.worst };
        CheckOutcome {
            name: self.name,
            passed: worst >= self.tol,
            worst_margin: worst,
            witness: if worst < self.tol { self.witness } else { None },
            samples: self.samples,
            note: None,
        }
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Log-spaced grid of `count` points on `[lo, hi]`.
pub(crate) fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let m = count.max(2) - 1;
    (0..=m).map(|j| (a + (b - a) * j as f64 / m as f64).exp()).collect()
}

/// Sampled checks of `(f₁)`, `(f₂)`, monotonicity of `f` and the chain
/// `2G(x,t) ≤ g(x,t)t ≤ (1/k)(1+λV(x))t²` at mesh nodes off `Ω`.
///
/// The chain uses `samples` nodes times `samples` values of `t`.
pub fn validate_hypotheses(inst: &ProblemInstance, samples: usize) -> ValidationReport {
    let samples = samples.max(4);
    let f = &inst.nonlinearity;
    let theta = f.theta;
    let a = inst.threshold();

    // (f1): f(t)/t small and nondecreasing towards 0 on a log grid.
    let mut f1 = Tally::new("(f1) f(t)/t -> 0");
    let near = log_grid(1e-12, 1e-2, samples);
    let ratio = |t: f64| f.f(t) / t;
    f1.record(1e-3 - ratio(near[0]), || format!("t = {:e}", near[0]));
    for w in near.windows(2) {
        let (r0, r1) = (ratio(w[0]), ratio(w[1]));
        f1.record(rel(r1 - r0, r1.abs().max(r0.abs())), || format!("t = {:e}", w[1]));
    }

    // t grid shared by (f2), monotonicity and the chain
    let mut ts = log_grid(1e-6, 1e3, samples - 2);
    ts.push(a);
    ts.push(-1.0);
    ts.sort_by(f64::total_cmp);

    let mut f2 = Tally::new("(f2) 0 < theta F(t) <= f(t) t");
    for &t in ts.iter().filter(|&&t| t > 0.0) {
        let tf = theta * f.primitive(t);
        let ft = f.f(t) * t;
        if !(tf > 0.0) {
            f2.record(-1.0, || format!("t = {t:e}, theta F = {tf:e}"));
        } else {
            f2.record(rel(ft - tf, ft.abs().max(tf.abs())), || format!("t = {t:e}"));
        }
    }

    let mut mono = Tally::new("f nondecreasing");
    for w in ts.windows(2) {
        let (f0, f1v) = (f.f(w[0]), f.f(w[1]));
        mono.record(rel(f1v - f0, f1v.abs().max(f0.abs())), || format!("t = {:e}", w[1]));
    }
    let mut zero = Tally::new("f = 0 for t <= 0");
    for t in [-1e3, -1.0, -1e-6, 0.0] {
        zero.record(-f.f(t).abs(), || format!("t = {t:e}"));
    }

    let mut chain = Tally::new("2G <= g t <= (1+lambda V) t^2 / k off Omega");
    match Mesh::for_instance(inst) {
        Ok(mesh) => {
            let off: Vec<f64> = mesh
                .nodes()
                .iter()
                .copied()
                .filter(|&x| !inst.penalization.in_omega(x))
                .collect();
            let stride = (off.len() as f64 / samples as f64).max(1.0);
            let picks: Vec<f64> = (0..samples.min(off.len()))
                .map(|j| off[((j as f64 * stride) as usize).min(off.len() - 1)])
                .collect();
            let k = inst.penalization.k;
            for &x in &picks {
                let v = inst.potential.value(x);
                for &t in &ts {
                    let two_g = 2.0 * inst.big_g(x, t);
                    let gt = inst.g(x, t) * t;
                    let bound = (1.0 + inst.lambda * v) * t * t / k;
                    let scale = two_g.abs().max(gt.abs()).max(bound.abs());
                    chain.record(rel(gt - two_g, scale), || format!("x = {x}, t = {t:e} (left)"));
                    chain.record(rel(bound - gt, scale), || format!("x = {x}, t = {t:e} (right)"));
                }
            }
        }
        Err(e) => chain.record(f64::NEG_INFINITY, || format!("mesh: {e}")),
    }

    ValidationReport {
        checks: vec![f1.finish(), f2.finish(), mono.finish(), zero.finish(), chain.finish()],
    }
}

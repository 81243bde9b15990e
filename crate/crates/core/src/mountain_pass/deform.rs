use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::endpoint::{build_endpoint, Endpoint};
use super::path::{diff, initial_path, lerp, MountainPath};
use super::sigma::{golden_max, sigma_bound};
use super::MountainPassError;
use crate::discretize::DiscreteProblem;
use crate::error::ModelResult;
use crate::vi_solver::{
    energy_slack, projected_step, relative_l2_distance, semismooth_newton, stationarity, SolveReport, SolverOptions,
    DISTINCT_ENERGY, DISTINCT_L2,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MountainPassOptions {
    /// Path resolution `P`.
    pub segments: usize,
    pub respread_every: usize,
    pub max_sweeps: usize,
    /// Peak stationarity below which a Newton polish is attempted.
    pub polish_threshold: f64,
    /// Sweeps between polish attempts.
    pub polish_every: usize,
    /// Consecutive sweeps without decrease before a stall is declared.
    pub stall_window: usize,
    pub stall_decrease: f64,
    /// Energy samples per segment before golden-section refinement.
    pub segment_samples: usize,
    pub tau_min: f64,
}

impl Default for MountainPassOptions {
    fn default() -> Self {
        Self {
            segments: 40,
            respread_every: 10,
            max_sweeps: 3000,
            polish_threshold: 0.3,
            polish_every: 10,
            stall_window: 100,
            stall_decrease: 1e-14,
            segment_samples: 8,
            tau_min: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub sweep: usize,
    pub peak_energy: f64,
    pub residual: f64,
}

/// Second solution `w_λ` with its mountain-pass diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct MountainPassReport {
    #[serde(flatten)]
    pub solve: SolveReport,
    pub c_lambda: f64,
    pub rho: f64,
    pub sigma_bound: f64,
    pub sweeps: usize,
    /// Highest energy on the final path.
    pub path_peak: f64,
    pub t_star: f64,
    pub endpoint_energy: f64,
    /// `c_λ / ((1/2 − 1/θ) − 1/(2k))`, the a priori bound on `‖w‖²_λ`.
    pub norm_bound_sq: f64,
    pub relative_l2_distance: f64,
    pub distinct: bool,
    #[serde(skip)]
    pub trace: Vec<TraceRow>,
    /// The deformed path when the iteration stopped.
    #[serde(skip)]
    pub path: MountainPath,
}

impl MountainPassReport {
    pub fn values(&self) -> &[f64] {
        self.solve.values()
    }

    pub fn write_trace<W: Write>(&self, writer: W) -> ModelResult<()> {
        let mut w = csv::Writer::from_writer(writer);
        for row in &self.trace {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Endpoint, initial path and deformation from a converged first solution.
pub fn mountain_pass(
    p: &DiscreteProblem,
    u_lambda: &SolveReport,
    solver: &SolverOptions,
    options: &MountainPassOptions,
) -> Result<MountainPassReport, MountainPassError> {
    let endpoint = build_endpoint(p, u_lambda.energy)?;
    let path = initial_path(p, u_lambda.values(), &endpoint.values, options.segments);
    deform(p, path, u_lambda, &endpoint, solver, options)
}

#[derive(Clone, Copy, Debug)]
struct SegmentMax {
    value: f64,
    s: f64,
}

fn segment_max(p: &DiscreteProblem, a: &[f64], b: &[f64], samples: usize) -> SegmentMax {
    let e = |s: f64| p.energy(&lerp(a, b, s));
    let samples = samples.max(2);
    let mut best = SegmentMax { value: e(0.0), s: 0.0 };
    let mut best_k = 0;
    for k in 1..=samples {
        let s = k as f64 / samples as f64;
        let v = e(s);
        if v > best.value {
            best = SegmentMax { value: v, s };
            best_k = k;
        }
    }
    let lo = best_k.saturating_sub(1) as f64 / samples as f64;
    let hi = (best_k + 1).min(samples) as f64 / samples as f64;
    let (s, v) = golden_max(e, lo, hi, 40);
    if v > best.value {
        SegmentMax { value: v, s }
    } else {
        best
    }
}

struct Deformer<'a> {
    p: &'a DiscreteProblem,
    path: MountainPath,
    segs: Vec<SegmentMax>,
    options: &'a MountainPassOptions,
}

impl<'a> Deformer<'a> {
    fn new(p: &'a DiscreteProblem, path: MountainPath, options: &'a MountainPassOptions) -> Self {
        let segs = Self::all_segments(p, &path, options.segment_samples);
        Self { p, path, segs, options }
    }

    fn all_segments(p: &DiscreteProblem, path: &MountainPath, samples: usize) -> Vec<SegmentMax> {
        (0..path.segments())
            .into_par_iter()
            .map(|j| segment_max(p, &path.points[j], &path.points[j + 1], samples))
            .collect()
    }

    /// Highest segment, smallest index on ties.
    fn peak(&self) -> (usize, SegmentMax) {
        let mut best = 0;
        for j in 1..self.segs.len() {
            if self.segs[j].value > self.segs[best].value {
                best = j;
            }
        }
        (best, self.segs[best])
    }

    fn neighbours_of(&self, m: usize, v: &[f64]) -> (SegmentMax, SegmentMax) {
        let k = self.options.segment_samples;
        (
            segment_max(self.p, &self.path.points[m - 1], v, k),
            segment_max(self.p, v, &self.path.points[m + 1], k),
        )
    }

    fn set_node(&mut self, m: usize, v: Vec<f64>, energy: f64, left: SegmentMax, right: SegmentMax) {
        self.path.points[m] = v;
        self.path.energies[m] = energy;
        self.segs[m - 1] = left;
        self.segs[m] = right;
    }

    /// Moves the peak node onto the polyline maximum when that keeps the path below `ceiling`.
    fn lift_to_peak(&mut self, j: usize, seg: SegmentMax, ceiling: f64) -> usize {
        let last = self.path.segments() - 1;
        let m = if seg.s < 0.5 { j } else { j + 1 }.clamp(1, last);
        if (m == j && seg.s == 0.0) || (m == j + 1 && seg.s == 1.0) {
            return m;
        }
        let q = self.path.on_segment(j, seg.s);
        let eq = self.p.energy(&q);
        if eq > self.path.energies[m] {
            let (l, r) = self.neighbours_of(m, &q);
            if l.value <= ceiling && r.value <= ceiling {
                self.set_node(m, q, eq, l, r);
            }
        }
        m
    }

    /// Projected descent at node `m` orthogonal to the path tangent.
    fn descend(&mut self, m: usize, ceiling: f64, solver: &SolverOptions) -> Result<bool, MountainPassError> {
        let p = self.p;
        let u = self.path.points[m].clone();
        let e0 = self.path.energies[m];
        let t = diff(&self.path.points[m + 1], &self.path.points[m - 1]);
        let at = p.op.apply(&t);
        let tat: f64 = t.iter().zip(&at).map(|(a, b)| a * b).sum();
        let mut r = p.gradient(&u);
        if tat > 0.0 {
            let c: f64 = r.iter().zip(&t).map(|(a, b)| a * b).sum::<f64>() / tat;
            for (ri, ai) in r.iter_mut().zip(&at) {
                *ri -= c * ai;
            }
        }
        let arm = solver.armijo;
        let mut tau = arm.tau0;
        while tau >= self.options.tau_min {
            let v = projected_step(p, &u, &r, tau)?;
            let ev = p.energy(&v);
            let step = diff(&v, &u);
            if ev <= e0 - arm.sigma / tau * p.op.norm_sq(&step) + energy_slack(e0) {
                let (l, rr) = self.neighbours_of(m, &v);
                if l.value <= ceiling && rr.value <= ceiling {
                    self.set_node(m, v, ev, l, rr);
                    return Ok(true);
                }
            }
            tau *= arm.beta;
        }
        Ok(false)
    }

    fn respread(&mut self, ceiling: f64) {
        let path = self.path.respread(self.p);
        let segs = Self::all_segments(self.p, &path, self.options.segment_samples);
        if segs.iter().all(|s| s.value <= ceiling) {
            self.path = path;
            self.segs = segs;
        }
    }
}

/// Moves the path peak downhill until a Newton polish from it converges to
/// a critical point distinct from `u_λ`.
pub fn deform(
    p: &DiscreteProblem,
    path: MountainPath,
    u_lambda: &SolveReport,
    endpoint: &Endpoint,
    solver: &SolverOptions,
    options: &MountainPassOptions,
) -> Result<MountainPassReport, MountainPassError> {
    solver.validate()?;
    let rho = p.inst.rho();
    let floor = u_lambda.energy.max(endpoint.energy) + rho / 100.0;
    let mut d = Deformer::new(p, path, options);
    let mut trace = Vec::new();
    let mut flat_sweeps = 0;
    let mut last_polish: Option<usize> = None;

    for sweep in 0..options.max_sweeps {
        let (j, seg) = d.peak();
        let peak = seg.value;
        if peak < floor {
            return Err(MountainPassError::PathCollapse { peak, floor, sweep });
        }
        let ceiling = peak + energy_slack(peak);
        let m = d.lift_to_peak(j, seg, ceiling);
        d.descend(m, ceiling, solver)?;
        if options.respread_every > 0 && (sweep + 1) % options.respread_every == 0 {
            d.respread(ceiling);
        }

        let (_, after) = d.peak();
        let residual = stationarity(p, &d.path.points[m])?;
        trace.push(TraceRow {
            sweep,
            peak_energy: after.value,
            residual,
        });
        if peak - after.value < options.stall_decrease {
            flat_sweeps += 1;
        } else {
            flat_sweeps = 0;
        }
        let stalled = flat_sweeps >= options.stall_window;

        let due = last_polish.is_none_or(|k| sweep >= k + options.polish_every);
        if (residual <= options.polish_threshold && due) || residual <= solver.tol || stalled {
            last_polish = Some(sweep);
            if let Some(w) = polish(p, &d.path.points[m], u_lambda, after.value, solver) {
                return finish(p, w, u_lambda, endpoint, sweep + 1, after.value, trace, d.path);
            }
            if stalled {
                return Err(MountainPassError::StallDetected { sweep, residual });
            }
        }
    }

    let (_, last) = d.peak();
    let m = d.path.peak_index().clamp(1, d.path.segments() - 1);
    let w = SolveReport::build(
        p,
        d.path.points[m].clone(),
        crate::vi_solver::Source::ProjectedGradient,
        options.max_sweeps,
        false,
    )?;
    let report = finish(p, w, u_lambda, endpoint, options.max_sweeps, last.value, trace, d.path)?;
    Err(MountainPassError::MaxIterExceeded {
        report: Box::new(report),
    })
}

fn polish(
    p: &DiscreteProblem,
    start: &[f64],
    u_lambda: &SolveReport,
    peak: f64,
    solver: &SolverOptions,
) -> Option<SolveReport> {
    let w = semismooth_newton(p, start, solver).ok()?;
    let rel = relative_l2_distance(p, u_lambda.values(), w.values());
    let distinct = rel > DISTINCT_L2 && (w.energy - u_lambda.energy).abs() > DISTINCT_ENERGY;
    (distinct && w.energy <= peak + 1e-8 * (1.0 + peak.abs())).then_some(w)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    p: &DiscreteProblem,
    w: SolveReport,
    u_lambda: &SolveReport,
    endpoint: &Endpoint,
    sweeps: usize,
    path_peak: f64,
    trace: Vec<TraceRow>,
    path: MountainPath,
) -> Result<MountainPassReport, MountainPassError> {
    let theta = p.inst.nonlinearity.theta;
    let k = p.inst.penalization.k;
    let coercivity = (0.5 - 1.0 / theta) - 1.0 / (2.0 * k);
    let rel = relative_l2_distance(p, u_lambda.values(), w.values());
    let distinct = rel > DISTINCT_L2 && (w.energy - u_lambda.energy).abs() > DISTINCT_ENERGY;
    Ok(MountainPassReport {
        c_lambda: w.energy,
        rho: p.inst.rho(),
        sigma_bound: sigma_bound(p, endpoint.t_star)?,
        sweeps,
        path_peak,
        t_star: endpoint.t_star,
        endpoint_energy: endpoint.energy,
        norm_bound_sq: if coercivity > 0.0 {
            w.energy / coercivity
        } else {
            f64::INFINITY
        },
        relative_l2_distance: rel,
        distinct,
        trace,
        path,
        solve: w,
    })
}

use crate::discretize::{assemble_with, DiscreteProblem};
use crate::error::ModelResult;

pub const SIGMA_GRID: usize = 1001;

/// `Σ = max_{t∈[0,1]} J(t t* φ₊)` with `J(u) = ½∫_Ω(|u'|² + u²) − ∫_Ω F(u)`.
pub fn sigma_bound(p: &DiscreteProblem, t_star: f64) -> ModelResult<f64> {
    sigma_bound_on_grid(p, t_star, SIGMA_GRID)
}

/// Grid maximum refined by golden section between the neighbouring grid points.
pub fn sigma_bound_on_grid(p: &DiscreteProblem, t_star: f64, grid: usize) -> ModelResult<f64> {
    let pen = &p.inst.penalization;
    let (mesh, offset) = p.mesh.sub_mesh(pen.omega_left, pen.omega_right)?;
    let op = assemble_with(&mesh, 0.0, |_| 0.0)?;
    let phi_plus = p.phi_plus();
    let base = &phi_plus[offset..offset + mesh.n()];
    let f = &p.inst.nonlinearity;
    let j = |t: f64| {
        let u: Vec<f64> = base.iter().map(|v| t * t_star * v).collect();
        let nl: f64 = u.iter().zip(&op.weights).map(|(&v, &w)| w * f.primitive(v)).sum();
        0.5 * op.norm_sq(&u) - nl
    };
    let m = grid.max(2) - 1;
    let mut best = (0usize, j(0.0));
    for k in 1..=m {
        let v = j(k as f64 / m as f64);
        if v > best.1 {
            best = (k, v);
        }
    }
    let lo = best.0.saturating_sub(1) as f64 / m as f64;
    let hi = (best.0 + 1).min(m) as f64 / m as f64;
    let (_, refined) = golden_max(j, lo, hi, 80);
    Ok(best.1.max(refined))
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

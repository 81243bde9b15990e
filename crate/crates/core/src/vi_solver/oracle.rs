//! Brute-force enumeration of discrete KKT points on tiny meshes.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{SolveReport, Source};
use super::residual::comp_residual;
use super::SolverError;
use crate::discretize::DiscreteProblem;

pub const ORACLE_MAX_NODES: usize = 14;
const ORACLE_SEED: u64 = 0x0b57_ac1e;
const RANDOM_STARTS: usize = 24;
const NEWTON_STEPS: usize = 100;
/// Sup-norm distance under which two KKT points are the same.
const SAME_POINT: f64 = 1e-8;

/// Every KKT point found by Newton's method on each of the `2^m` candidate
/// active sets, where `m` counts interior nodes with `phi > 0`; sorted by energy.
pub fn oracle_enumerate(p: &DiscreteProblem) -> Result<Vec<SolveReport>, SolverError> {
    let n = p.n();
    if n > ORACLE_MAX_NODES {
        return Err(SolverError::Options(format!(
            "enumeration needs at most {ORACLE_MAX_NODES} nodes, got {n}"
        )));
    }
    let x = p.mesh.nodes();
    let inst = &p.inst;
    let g = |i: usize, t: f64| inst.penalization.g(&inst.nonlinearity, x[i], t);
    let dg = |i: usize, t: f64| inst.penalization.dg(&inst.nonlinearity, x[i], t);
    let w = &p.op.weights;
    let a = DMatrix::from_fn(n, n, |i, j| {
        let m = &p.op.matrix;
        if i == j {
            m.diag[i]
        } else if i == j + 1 {
            m.off[j]
        } else if j == i + 1 {
            m.off[i]
        } else {
            0.0
        }
    });
    let residual = |u: &DVector<f64>| -> DVector<f64> {
        let mut r = &a * u;
        for i in 0..n {
            r[i] -= w[i] * g(i, u[i]);
        }
        r
    };

    let interior: Vec<usize> = (1..n - 1).collect();
    let candidates: Vec<usize> = interior.iter().copied().filter(|&i| p.phi[i] > 0.0).collect();
    let starts = starting_points(p);

    let mut found: Vec<DVector<f64>> = Vec::new();
    for mask in 0..(1usize << candidates.len()) {
        let fixed: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        let free: Vec<usize> = interior.iter().copied().filter(|i| !fixed.contains(i)).collect();
        for start in &starts {
            let mut u = DVector::from_column_slice(start);
            u[0] = 0.0;
            u[n - 1] = 0.0;
            for &i in &fixed {
                u[i] = p.phi[i];
            }
            let Some(u) = newton_on(&free, u, &residual, &a, w, &dg) else {
                continue;
            };
            if !is_kkt(p, &u, &fixed, &free, &residual(&u)) {
                continue;
            }
            if found.iter().all(|v| (v - &u).amax() > SAME_POINT) {
                found.push(u);
            }
        }
    }

    let mut reports = Vec::with_capacity(found.len());
    for u in found {
        let u: Vec<f64> = u.iter().zip(&p.lower).map(|(v, l)| v.max(*l)).collect();
        if comp_residual(p, &u)? > 1e-10 {
            continue;
        }
        reports.push(SolveReport::build(p, u, Source::Oracle, 0, true)?);
    }
    reports.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(reports)
}

fn starting_points(p: &DiscreteProblem) -> Vec<Vec<f64>> {
    let x = p.mesh.nodes();
    let phi_plus = p.phi_plus();
    let mut starts = Vec::new();
    for s in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0] {
        starts.push(phi_plus.iter().map(|v| s * v).collect());
    }
    for s in [0.25, 0.5, 1.0, 2.0, 3.0] {
        starts.push(x.iter().map(|&x| s / x.cosh()).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    for _ in 0..RANDOM_STARTS {
        let scale: f64 = rng.random_range(0.1..4.0);
        starts.push(x.iter().map(|_| scale * rng.random::<f64>()).collect());
    }
    starts
}

fn newton_on(
    free: &[usize],
    mut u: DVector<f64>,
    residual: &impl Fn(&DVector<f64>) -> DVector<f64>,
    a: &DMatrix<f64>,
    w: &[f64],
    dg: &impl Fn(usize, f64) -> f64,
) -> Option<DVector<f64>> {
    let m = free.len();
    if m == 0 {
        return Some(u);
    }
    let sub_norm = |r: &DVector<f64>| free.iter().map(|&i| r[i] * r[i]).sum::<f64>().sqrt();
    let mut r = residual(&u);
    for _ in 0..NEWTON_STEPS {
        let rn = sub_norm(&r);
        let scale = 1.0 + free.iter().map(|&i| u[i].abs()).fold(0.0, f64::max);
        if rn <= 1e-13 * scale {
            return Some(u);
        }
        let j = DMatrix::from_fn(m, m, |p, q| {
            let (i, k) = (free[p], free[q]);
            a[(i, k)] - if i == k { w[i] * dg(i, u[i]) } else { 0.0 }
        });
        let rhs = DVector::from_iterator(m, free.iter().map(|&i| -r[i]));
        let delta = j.lu().solve(&rhs)?;
        let mut alpha = 1.0;
        loop {
            let mut v = u.clone();
            for (p, &i) in free.iter().enumerate() {
                v[i] += alpha * delta[p];
            }
            let rv = residual(&v);
            if sub_norm(&rv) < (1.0 - 1e-4 * alpha) * rn {
                u = v;
                r = rv;
                break;
            }
            alpha *= 0.5;
            if alpha < 1e-6 {
                return None;
            }
        }
    }
    let scale = 1.0 + free.iter().map(|&i| u[i].abs()).fold(0.0, f64::max);
    (sub_norm(&r) <= 1e-11 * scale).then_some(u)
}

fn is_kkt(p: &DiscreteProblem, u: &DVector<f64>, fixed: &[usize], free: &[usize], r: &DVector<f64>) -> bool {
    free.iter().all(|&i| u[i] >= p.lower[i] - 1e-12) && fixed.iter().all(|&i| r[i] >= -1e-12)
}

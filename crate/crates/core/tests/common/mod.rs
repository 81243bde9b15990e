#![allow(dead_code)]

use obstacle_core::{DiscreteProblem, ProblemInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn problem(n: usize, lambda: f64) -> DiscreteProblem {
    let inst = ProblemInstance::default_instance()
        .with_lambda(lambda)
        .with_mesh_nodes(n);
    DiscreteProblem::new(&inst).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smooth random function on the mesh, vanishing at `±L`, lifted onto `K`.
pub fn random_feasible(p: &DiscreteProblem, rng: &mut ChaCha8Rng, scale: f64) -> Vec<f64> {
    let l = p.inst.half_width;
    let coeffs: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
    let shift: f64 = rng.random_range(0.0..1.0);
    let v: Vec<f64> = p
        .mesh
        .nodes()
        .iter()
        .map(|&x| {
            let s = 0.5 * std::f64::consts::PI * (x + l) / l;
            let wave: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * ((k + 1) as f64 * s).sin())
                .sum();
            let envelope = (-0.5 * x * x).exp();
            scale * envelope * (shift + 0.3 * wave)
        })
        .collect();
    let mut u = p.project(&v);
    let n = u.len();
    u[0] = 0.0;
    u[n - 1] = 0.0;
    u
}

/// Random combination of the first sixteen Dirichlet sine modes on `[-L, L]`.
pub fn random_direction(p: &DiscreteProblem, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let l = p.inst.half_width;
    let coeffs: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
    p.mesh
        .nodes()
        .iter()
        .map(|&x| {
            let s = 0.5 * std::f64::consts::PI * (x + l) / l;
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * ((k + 1) as f64 * s).sin())
                .sum()
        })
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

mod common;

use common::{problem, sup_dist};
use obstacle_core::mountain_pass::{
    build_endpoint, initial_path, mountain_pass, sigma_bound, sigma_bound_on_grid, MountainPassOptions,
};
use obstacle_core::vi_solver::{oracle_enumerate, solve_min, DISTINCT_L2};
use obstacle_core::SolverOptions;

#[test]
fn endpoint_on_the_obstacle_ray() {
    let p = problem(2001, 100.0);
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    let e = build_endpoint(&p, u.energy).unwrap();
    assert!(e.t_star.is_finite());
    assert_eq!(e.t_star, 64.0);
    assert!(e.energy < u.energy - 1.0);
    assert!(p.norm(&e.values) > p.inst.ball_radius);

    // t = 1 stays low and inside the ball, so the search must move past it
    let phi = p.phi_plus();
    let e1 = p.energy(&phi);
    assert!(e1 <= 0.5 * p.op.norm_sq(&phi));
    assert!(0.5 * p.op.norm_sq(&phi) < p.inst.rho());
    assert!(p.norm(&phi) < p.inst.ball_radius);

    let energies: Vec<f64> = (1..=30)
        .map(|k| {
            let t = f64::from(1u32 << k);
            p.energy(&phi.iter().map(|v| t * v).collect::<Vec<_>>())
        })
        .collect();
    let turn = energies.windows(2).position(|w| w[1] < w[0]).unwrap();
    assert!(energies[turn..].windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn initial_path_endpoints_and_feasibility() {
    let p = problem(2001, 100.0);
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    let e = build_endpoint(&p, u.energy).unwrap();
    let path = initial_path(&p, u.values(), &e.values, 40);
    assert_eq!(path.segments(), 40);
    assert_eq!(path.points[0], u.values());
    assert_eq!(path.points[40], e.values);
    assert!(path.points.iter().all(|q| p.is_feasible(q, 0.0)));
    assert_eq!(path.energies[0], u.energy);
}

#[test]
fn second_solution_at_lambda_100() {
    let p = problem(2001, 100.0);
    let solver = SolverOptions::default();
    let u = solve_min(&p, &solver).unwrap();
    let e = build_endpoint(&p, u.energy).unwrap();
    let report = mountain_pass(&p, &u, &solver, &MountainPassOptions::default()).unwrap();
    let rho = p.inst.rho();
    let c = report.c_lambda;
    assert!(report.solve.converged);
    assert!(report.solve.comp_residual <= solver.tol);
    assert!(c >= rho - 1e-8);
    assert!(u.energy < c);
    assert!(c <= report.sigma_bound + 1e-8);
    assert!(report.distinct);
    assert!(report.relative_l2_distance > DISTINCT_L2);
    let nw = report.solve.lambda_norm * report.solve.lambda_norm;
    assert!(nw <= report.norm_bound_sq + 1e-9);

    // path invariants
    let path = &report.path;
    assert_eq!(path.points[0], u.values());
    assert_eq!(path.points[path.segments()], e.values);
    assert!(path.points.iter().all(|q| p.is_feasible(q, 0.0)));
    let mut prev = f64::INFINITY;
    for row in &report.trace {
        assert!(row.peak_energy <= prev + 1e-12 * (1.0 + prev.abs()));
        prev = row.peak_energy;
    }
}

#[test]
fn mountain_pass_is_deterministic() {
    let p = problem(501, 31.6);
    let solver = SolverOptions::default();
    let u = solve_min(&p, &solver).unwrap();
    let a = mountain_pass(&p, &u, &solver, &MountainPassOptions::default()).unwrap();
    let b = mountain_pass(&p, &u, &solver, &MountainPassOptions::default()).unwrap();
    assert_eq!(a.solve.values(), b.solve.values());
    assert_eq!(a.c_lambda.to_bits(), b.c_lambda.to_bits());
    assert_eq!(a.sweeps, b.sweeps);
}

#[test]
fn coarse_mesh_saddle_is_an_enumerated_kkt_point() {
    let p = problem(12, 100.0);
    let solver = SolverOptions::default();
    let u = solve_min(&p, &solver).unwrap();
    let w = mountain_pass(&p, &u, &solver, &MountainPassOptions::default()).unwrap();
    let rho = p.inst.rho();
    let points = oracle_enumerate(&p).unwrap();
    let hit = points
        .iter()
        .filter(|q| q.energy >= rho)
        .any(|q| sup_dist(q.values(), w.solve.values()) <= 1e-6);
    assert!(hit);
}

#[test]
fn sigma_is_grid_independent() {
    let p = problem(2001, 100.0);
    let coarse = sigma_bound(&p, 64.0).unwrap();
    let fine = sigma_bound_on_grid(&p, 64.0, 4001).unwrap();
    assert!(coarse >= 0.0);
    assert!((coarse - fine).abs() < 1e-8, "{coarse} vs {fine}");
}

#[test]
fn sigma_equals_direct_maximum_at_large_lambda() {
    let p = problem(2001, 1000.0);
    let sigma = sigma_bound(&p, 64.0).unwrap();
    let phi = p.phi_plus();
    let i = |t: f64| p.energy(&phi.iter().map(|v| 64.0 * t * v).collect::<Vec<_>>());
    let grid = 4000;
    let (mut best_k, mut best) = (0, i(0.0));
    for k in 1..=grid {
        let v = i(k as f64 / grid as f64);
        if v > best {
            (best_k, best) = (k, v);
        }
    }
    // golden section around the grid maximum, written out here
    let (mut a, mut b) = ((best_k as f64 - 1.0) / grid as f64, (best_k as f64 + 1.0) / grid as f64);
    for _ in 0..100 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if i(m1) < i(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    let direct = best.max(i(0.5 * (a + b)));
    assert!((sigma - direct).abs() <= 1e-10 * sigma.abs(), "{sigma} vs {direct}");
}

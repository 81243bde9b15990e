mod common;

use std::sync::Arc;

use common::{problem, random_feasible, rng, sup_dist};
use obstacle_core::discretize::DiscreteProblem;
use obstacle_core::model::{NonlinearitySpec, ObstacleKind, ObstacleSpec, PenalizedNonlinearity};
use obstacle_core::vi_solver::{
    comp_residual, minimize, oracle_enumerate, projected_gradient, semismooth_newton, solve_limit_problem, solve_min,
    SolverError,
};
use obstacle_core::{Mesh, ProblemInstance, SolverOptions};
use rand::Rng;

const SWEEP: [f64; 7] = [1.0, 3.16, 10.0, 31.6, 100.0, 316.0, 1000.0];

fn nonpositive_obstacle() -> ProblemInstance {
    let mut inst = ProblemInstance::default_instance();
    inst.obstacle = ObstacleSpec {
        kind: ObstacleKind::Tabulated {
            x: vec![-8.0, 0.0, 8.0],
            phi: vec![-0.2, -0.05, -0.2],
        },
    };
    inst
}

fn linear(inst: &ProblemInstance) -> ProblemInstance {
    let mut inst = inst.clone();
    inst.nonlinearity = NonlinearitySpec::zero();
    inst.penalization = PenalizedNonlinearity::new(&inst.nonlinearity, 4.0, -1.5, 1.5).unwrap();
    inst
}

/// Projected SOR on `min ½uᵀAu` over `u ≥ lower` with fixed end values.
fn psor(p: &DiscreteProblem) -> Vec<f64> {
    let a = &p.op.matrix;
    let n = p.n();
    let mut u = p.project(&vec![0.0; n]);
    u[0] = 0.0;
    u[n - 1] = 0.0;
    for _ in 0..200_000 {
        let mut change: f64 = 0.0;
        for i in 1..n - 1 {
            let r = a.off[i - 1] * u[i - 1] + a.diag[i] * u[i] + a.off[i] * u[i + 1];
            let v = (u[i] - 1.5 * r / a.diag[i]).max(p.lower[i]);
            change = change.max((v - u[i]).abs());
            u[i] = v;
        }
        if change < 1e-16 {
            break;
        }
    }
    u
}

#[test]
fn nonpositive_obstacle_gives_zero_minimizer() {
    let p = DiscreteProblem::new(&nonpositive_obstacle()).unwrap();
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    assert!(u.values().iter().all(|&v| v == 0.0));
    assert_eq!(u.energy, 0.0);
}

#[test]
fn minimizer_energy_bounds_at_lambda_100() {
    let p = problem(2001, 100.0);
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    let phi = p.phi_plus();
    let nu = u.lambda_norm * u.lambda_norm;
    assert!(u.energy >= nu / 8.0);
    assert!(u.energy <= 0.5 * p.op.norm_sq(&phi));
}

#[test]
fn coarse_mesh_minimizer_matches_enumeration() {
    let p = problem(12, 100.0);
    let points = oracle_enumerate(&p).unwrap();
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    let low = &points[0];
    assert!(sup_dist(u.values(), low.values()) <= 1e-8);
    assert!(points.len() >= 2);
    let rho = p.inst.rho();
    assert!(low.energy < rho);
    assert!(points.iter().any(|q| q.energy >= rho));
    assert!(points.iter().all(|q| q.comp_residual <= 1e-10));
}

#[test]
fn newton_from_projected_gradient_output() {
    for lambda in [1.0, 100.0, 1000.0] {
        let p = problem(2001, lambda);
        let pg = solve_min(&p, &SolverOptions::default()).unwrap();
        let nt = semismooth_newton(&p, pg.values(), &SolverOptions::newton()).unwrap();
        assert!(nt.iterations <= 3);
        assert_eq!(nt.active_set, pg.active_set);
    }
}

#[test]
fn solvers_agree_across_the_sweep() {
    for lambda in SWEEP {
        let p = problem(2001, lambda);
        let pg = solve_min(&p, &SolverOptions::default()).unwrap();
        let nt = solve_min(&p, &SolverOptions::newton()).unwrap();
        assert!(sup_dist(pg.values(), nt.values()) <= 1e-6, "lambda = {lambda}");
    }
}

#[test]
fn first_solution_properties_across_the_sweep() {
    let opts = SolverOptions::default();
    for lambda in SWEEP {
        let p = problem(2001, lambda);
        let u = solve_min(&p, &opts).unwrap();
        assert!(u.converged);
        assert!(u.comp_residual <= opts.tol);
        assert!(u.min_value >= -1e-10);
        assert!(p.is_feasible(u.values(), 0.0));
        let four = 4.0 * p.op.norm_sq(&p.phi_plus());
        assert!(u.lambda_norm * u.lambda_norm <= four + 10.0 * opts.tol);
    }
}

#[test]
fn linear_case_matches_projected_sor() {
    let inst = linear(
        &ProblemInstance::default_instance()
            .with_mesh_nodes(201)
            .with_lambda(10.0),
    );
    let p = DiscreteProblem::new(&inst).unwrap();
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    let oracle = psor(&p);
    assert!(sup_dist(u.values(), &oracle) <= 1e-9);
}

#[test]
fn linear_case_has_one_kkt_point() {
    let inst = linear(&ProblemInstance::default_instance().with_lambda(10.0));
    let mesh = Mesh::from_nodes(vec![-8.0, -3.0, -1.0, -0.25, 0.25, 1.0, 3.0, 8.0]).unwrap();
    let p = DiscreteProblem::on_mesh(&inst, Arc::new(mesh)).unwrap();
    let points = oracle_enumerate(&p).unwrap();
    assert_eq!(points.len(), 1);
    assert!(sup_dist(points[0].values(), &psor(&p)) <= 1e-12);
    assert!(points[0].values()[3] > 0.0);
}

#[test]
fn residual_grows_with_perturbation() {
    let p = problem(2001, 100.0);
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    assert!(u.comp_residual <= 1e-10);
    let bump: Vec<f64> = p.mesh.nodes().iter().map(|&x| (-(x - 0.7).powi(2)).exp()).collect();
    let mut prev = u.comp_residual;
    for k in 1..=6 {
        let delta = 10f64.powi(k - 8);
        let v: Vec<f64> = u.values().iter().zip(&bump).map(|(a, b)| a + delta * b).collect();
        let v = p.project(&v);
        let res = comp_residual(&p, &v).unwrap();
        assert!(res > prev, "delta = {delta}: {res} <= {prev}");
        prev = res;
    }
}

#[test]
fn projected_gradient_iterates_descend_and_stay_feasible() {
    let p = problem(2001, 10.0);
    let start = random_feasible(&p, &mut rng(3), 0.6);
    let mut prev = p.energy(&start);
    let mut seen_unconverged = 0;
    for k in 1..=12 {
        let opts = SolverOptions {
            max_iter: k,
            ..SolverOptions::default()
        };
        let report = match projected_gradient(&p, &start, &opts) {
            Ok(r) => r,
            Err(SolverError::MaxIterExceeded { report }) => {
                seen_unconverged += 1;
                *report
            }
            Err(e) => panic!("{e}"),
        };
        assert!(p.is_feasible(report.values(), 0.0));
        assert!(report.energy <= prev + 1e-14 * (1.0 + prev.abs()));
        prev = report.energy;
    }
    assert!(seen_unconverged >= 3);
}

#[test]
fn lower_bound_on_random_points_of_the_ball() {
    let p = problem(2001, 100.0);
    let phi = p.phi_plus();
    let r = p.inst.ball_radius;
    let mut g = rng(1001);
    for _ in 0..1000 {
        let scale = g.random_range(0.05..2.0);
        let v = random_feasible(&p, &mut g, scale);
        let target = r * g.random_range(0.0..1.0f64);
        let d: Vec<f64> = v.iter().zip(&phi).map(|(a, b)| a - b).collect();
        let nv = p.norm(&v);
        let s = if nv > target {
            // largest step from phi_+ towards v staying inside the target ball
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let w: Vec<f64> = phi.iter().zip(&d).map(|(a, b)| a + mid * b).collect();
                if p.norm(&w) <= target.max(p.norm(&phi)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        } else {
            1.0
        };
        let u: Vec<f64> = phi.iter().zip(&d).map(|(a, b)| a + s * b).collect();
        let nu = p.op.norm_sq(&u);
        assert!(nu <= r * r);
        assert!(p.is_feasible(&u, 0.0));
        assert!(
            p.energy(&u) >= nu / 8.0 - 1e-12,
            "energy {} vs {}",
            p.energy(&u),
            nu / 8.0
        );
    }
}

#[test]
fn limit_problem() {
    let opts = SolverOptions::default();
    let p = problem(2001, 10.0);
    let limit = solve_limit_problem(&p, &opts).unwrap();
    assert!(limit.report.converged);
    assert!(limit.report.comp_residual <= opts.tol);
    let mut prev = f64::INFINITY;
    for lambda in [10.0, 100.0, 1000.0] {
        let u = solve_min(&p.with_lambda(lambda).unwrap(), &opts).unwrap();
        let d = limit.distance(u.values());
        assert!(d < prev);
        prev = d;
    }

    let q = DiscreteProblem::new(&nonpositive_obstacle()).unwrap();
    let zero = solve_limit_problem(&q, &opts).unwrap();
    assert!(zero.extended.iter().all(|&v| v == 0.0));
}

#[test]
fn newton_from_a_high_energy_start_reports_a_stationary_point() {
    let p = problem(2001, 100.0);
    let e: Vec<f64> = p.phi_plus().iter().map(|v| 8.0 * v).collect();
    if let Ok(r) = semismooth_newton(&p, &e, &SolverOptions::newton()) {
        assert!(r.comp_residual <= 1e-10);
        assert!(r.energy.is_finite());
    }
    let m = minimize(&p, &SolverOptions::newton()).unwrap();
    assert!(m.converged);
}

mod common;

use std::sync::Arc;

use common::{dot, problem, random_direction, random_feasible, rng};
use obstacle_core::discretize::{assemble, project_k, DiscreteProblem};
use obstacle_core::vi_solver::{active_set, gap_tol, solve_min};
use obstacle_core::{Mesh, ProblemInstance, SolverOptions};
use proptest::prelude::*;

#[test]
fn unit_function_norm_matches_trapezoid_quadrature() {
    let mut inst = ProblemInstance::default_instance().with_lambda(10.0);
    inst.half_width = 2.0;
    let mesh = Mesh::uniform(2.0, 5).unwrap();
    let op = assemble(&inst, &mesh).unwrap();
    let ones = vec![1.0; 5];
    let lumped: f64 = (0..5)
        .map(|i| op.weights[i] * (1.0 + 10.0 * inst.potential.value(mesh.nodes()[i])))
        .sum();
    assert!((op.norm_sq(&ones) - lumped).abs() < 1e-12);
    // trapezoid rule with unit spacing, written out independently
    let v = |x: f64| 1.0 + 10.0 * ((x.abs() - 1.0).max(0.0).powi(2)).min(1.0);
    let trap = 0.5 * v(-2.0) + v(-1.0) + v(0.0) + v(1.0) + 0.5 * v(2.0);
    assert!((op.norm_sq(&ones) - trap).abs() < 1e-12);
    assert!((trap - 14.0).abs() < 1e-12);
}

#[test]
fn gradient_matches_central_differences() {
    let p = problem(2001, 100.0);
    let mut r = rng(7);
    for _ in 0..5 {
        let u = random_feasible(&p, &mut r, 0.8);
        let grad = p.gradient(&u);
        for _ in 0..20 {
            let d = random_direction(&p, &mut r);
            let eps = 1e-6;
            let plus: Vec<f64> = u.iter().zip(&d).map(|(a, b)| a + eps * b).collect();
            let minus: Vec<f64> = u.iter().zip(&d).map(|(a, b)| a - eps * b).collect();
            let fd = (p.energy(&plus) - p.energy(&minus)) / (2.0 * eps);
            let exact = dot(&grad, &d);
            let rel = (fd - exact).abs() / exact.abs().max(1e-12);
            assert!(rel < 1e-6, "fd {fd} vs {exact}");
        }
    }
}

#[test]
fn gradient_vanishes_on_inactive_nodes_of_a_solution() {
    let p = problem(2001, 100.0);
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    let r = p.gradient(u.values());
    let active = active_set(&p, u.values());
    let tol = gap_tol(&p);
    let inactive = (1..p.n() - 1).filter(|&i| u.values()[i] > p.lower[i] + tol && !active.contains(&i));
    for i in inactive {
        assert!(r[i].abs() <= 1e-10, "node {i}: {}", r[i]);
    }
}

#[test]
fn energy_along_the_obstacle_ray() {
    let p = problem(2001, 100.0);
    let phi = p.phi_plus();
    assert!(p.energy(&phi) <= 0.5 * p.op.norm_sq(&phi));
    let u = solve_min(&p, &SolverOptions::default()).unwrap();
    let far: Vec<f64> = phi.iter().map(|v| 50.0 * v).collect();
    assert!(p.energy(&far) < u.energy);
}

#[test]
fn norm_is_monotone_in_lambda() {
    let base = problem(801, 1.0);
    let mut r = rng(11);
    let u = random_feasible(&base, &mut r, 1.0);
    let mut prev = 0.0;
    for lambda in [1.0, 10.0, 100.0, 1000.0] {
        let p = base.with_lambda(lambda).unwrap();
        let nrm = p.norm(&u);
        assert!(nrm > prev);
        prev = nrm;
    }
    // supported inside O: V vanishes, so the norm does not see lambda
    let inside: Vec<f64> = base
        .mesh
        .nodes()
        .iter()
        .map(|&x| if x.abs() < 1.0 { (1.0 - x * x).powi(2) } else { 0.0 })
        .collect();
    let a = base.with_lambda(1.0).unwrap().norm(&inside);
    let b = base.with_lambda(1000.0).unwrap().norm(&inside);
    assert_eq!(a, b);
}

#[test]
fn energy_of_smooth_interpolant_converges_at_second_order() {
    let inst = ProblemInstance::default_instance().with_lambda(10.0);
    // stays below a, so g = f on both branches and the integrand is smooth
    let u = |x: f64| 0.3 * (-x * x).exp() * (1.0 - (x / 8.0).powi(2));
    let energies: Vec<f64> = [161, 321, 641, 1281]
        .iter()
        .map(|&n| {
            let mesh = Arc::new(Mesh::uniform(8.0, n).unwrap());
            let p = DiscreteProblem::on_mesh(&inst, mesh.clone()).unwrap();
            let v: Vec<f64> = mesh.nodes().iter().map(|&x| u(x)).collect();
            p.energy(&v)
        })
        .collect();
    for w in energies.windows(3) {
        let ratio = (w[0] - w[1]) / (w[1] - w[2]);
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn projection_examples() {
    let p = problem(201, 10.0);
    let above: Vec<f64> = p.lower.iter().map(|l| l + 0.1).collect();
    assert_eq!(p.project(&above), above);
    let low = vec![-1e300; p.n()];
    assert_eq!(p.project(&low), p.lower);
}

proptest! {
    #[test]
    fn projection_is_nodewise_max(u in prop::collection::vec(-1.0f64..1.0, 201)) {
        let p = problem(201, 10.0);
        let v = p.project(&u);
        for i in 0..u.len() {
            prop_assert!(v[i] >= p.lower[i]);
            prop_assert_eq!(v[i], if u[i] > p.lower[i] { u[i] } else { p.lower[i] });
        }
        prop_assert_eq!(project_k(&v, &p.lower), v);
    }

    #[test]
    fn lambda_norm_is_positive(u in prop::collection::vec(-1.0f64..1.0, 201), lambda in 0.0f64..1e3) {
        prop_assume!(u.iter().any(|v| *v != 0.0));
        let p = problem(201, lambda.max(1e-9));
        prop_assert!(p.op.norm_sq(&u) > 0.0);
    }
}

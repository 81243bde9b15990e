use crate::discretize::DiscreteProblem;
use crate::model::{validate_hypotheses, CheckOutcome, ProblemInstance, ValidationReport, THRESHOLD_TOL};

/// Pairs of `(x, t)` per axis in the hypothesis sampling.
pub const HYPOTHESIS_SAMPLES: usize = 100;

fn outcome(name: &str, margin: f64, witness: impl FnOnce() -> String, samples: usize) -> CheckOutcome {
    let passed = margin > 0.0;
    CheckOutcome {
        name: name.to_string(),
        passed,
        worst_margin: margin,
        witness: (!passed).then(witness),
        samples,
        note: None,
    }
}

/// Hypothesis sampling plus the geometric requirements
/// `supp φ₊ ⊂ O`, `closure(O) ⊂ Ω ⊂ (−L, L)`, `φ(±L) ≤ 0`, the sign pattern of
/// `V`, admissibility of `k` and the smallness condition `4‖φ₊‖² < r²`.
pub fn check_instance(inst: &ProblemInstance) -> ValidationReport {
    let mut report = validate_hypotheses(inst, HYPOTHESIS_SAMPLES);
    let pot = &inst.potential;
    let pen = &inst.penalization;
    let l = inst.half_width;
    let mut checks = Vec::new();

    checks.push(outcome(
        "closure(O) inside Omega",
        (pot.o_left - pen.omega_left).min(pen.omega_right - pot.o_right),
        || {
            format!(
                "O = ({}, {}), Omega = ({}, {})",
                pot.o_left, pot.o_right, pen.omega_left, pen.omega_right
            )
        },
        1,
    ));
    let margin = 0.01 * l;
    checks.push(outcome(
        "Omega inside (-L, L)",
        (pen.omega_left + l).min(l - pen.omega_right) - margin,
        || format!("Omega = ({}, {}), L = {l}", pen.omega_left, pen.omega_right),
        1,
    ));
    checks.push(outcome(
        "phi(+-L) <= 0",
        -inst.obstacle.value(-l).max(inst.obstacle.value(l)) + f64::MIN_POSITIVE,
        || {
            format!(
                "phi(-L) = {}, phi(L) = {}",
                inst.obstacle.value(-l),
                inst.obstacle.value(l)
            )
        },
        2,
    ));
    match inst.obstacle.positive_support() {
        Some((lo, hi)) => checks.push(outcome(
            "supp phi_+ inside O",
            (lo - pot.o_left).min(pot.o_right - hi),
            || format!("supp phi_+ = [{lo}, {hi}], O = ({}, {})", pot.o_left, pot.o_right),
            1,
        )),
        None => checks.push(outcome("phi_+ nontrivial", -1.0, || "phi <= 0 everywhere".into(), 1)),
    }
    let k_min = crate::model::min_admissible_k(inst.nonlinearity.theta);
    checks.push(outcome(
        "k admissible",
        pen.k - k_min,
        || format!("k = {}, need k > {k_min}", pen.k),
        1,
    ));
    let f = &inst.nonlinearity;
    let root = (f.f(pen.a) / pen.a - 1.0 / pen.k).abs();
    checks.push(outcome(
        "f(a)/a = 1/k",
        THRESHOLD_TOL - root + f64::MIN_POSITIVE,
        || format!("a = {}, |f(a)/a - 1/k| = {root:e}", pen.a),
        1,
    ));

    match DiscreteProblem::new(inst) {
        Ok(p) => {
            let x = p.mesh.nodes();
            let n = x.len();
            let interior_pos: Vec<usize> = (1..n - 1).filter(|&i| p.phi[i] > 0.0).collect();
            checks.push(outcome(
                "phi_+ nontrivial on the mesh",
                if interior_pos.is_empty() { -1.0 } else { 1.0 },
                || "no interior node with phi > 0".into(),
                n,
            ));
            let outside = interior_pos.iter().find(|&&i| !pot.in_zero_set(x[i]));
            checks.push(outcome(
                "phi > 0 only at nodes in O",
                if outside.is_some() { -1.0 } else { 1.0 },
                || {
                    let i = *outside.unwrap();
                    format!("node {i} at x = {} has phi = {}", x[i], p.phi[i])
                },
                interior_pos.len(),
            ));
            let mut worst = (f64::INFINITY, String::new());
            for (i, &xi) in x.iter().enumerate() {
                let v = p.potential[i];
                let m = if pot.in_zero_set(xi) || xi == pot.o_left || xi == pot.o_right {
                    -v.abs()
                } else {
                    v
                };
                let m = if m == 0.0 && !pot.outside_closure(xi) {
                    f64::MIN_POSITIVE
                } else {
                    m
                };
                if m < worst.0 {
                    worst = (m, format!("x = {xi}, V = {v}"));
                }
            }
            checks.push(outcome(
                "V = 0 on closure(O), V > 0 off it",
                worst.0,
                || worst.1.clone(),
                n,
            ));
            let phi_plus = p.phi_plus();
            let four = 4.0 * p.op.norm_sq(&phi_plus);
            let r2 = inst.ball_radius * inst.ball_radius;
            let mut c = outcome(
                "4 |phi_+|^2 < r^2",
                (r2 - four) / r2,
                || format!("4 |phi_+|^2 = {four}, r^2 = {r2}"),
                1,
            );
            if inst.relax_smallness && !c.passed {
                c.passed = true;
                c.note = Some("relaxed by configuration".into());
            }
            checks.push(c);
        }
        Err(e) => checks.push(outcome("mesh", -1.0, || e.to_string(), 0)),
    }
    report.checks.extend(checks);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{InstanceConfig, ObstacleConfig};

    #[test]
    fn default_passes() {
        let r = check_instance(&ProblemInstance::default_instance());
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn omega_equal_to_o_fails() {
        let mut cfg = InstanceConfig::default_instance();
        cfg.penalization.omega_left = -1.0;
        cfg.penalization.omega_right = 1.0;
        let r = check_instance(&cfg.build().unwrap());
        let c = r.checks.iter().find(|c| c.name == "closure(O) inside Omega").unwrap();
        assert!(!c.passed);
    }

    #[test]
    fn wide_bump_fails_with_witness_node() {
        let mut cfg = InstanceConfig::default_instance();
        cfg.obstacle = ObstacleConfig::Bump {
            center: 0.0,
            halfwidth: 1.3,
            amplitude: 0.05,
            tail: 0.0,
        };
        let r = check_instance(&cfg.build().unwrap());
        assert!(!r.passed());
        let c = r
            .checks
            .iter()
            .find(|c| c.name == "phi > 0 only at nodes in O")
            .unwrap();
        assert!(!c.passed);
        assert!(c.witness.as_deref().unwrap().starts_with("node "));
    }

    #[test]
    fn smallness_can_be_relaxed() {
        let mut cfg = InstanceConfig::default_instance();
        cfg.r = 0.5;
        assert!(!check_instance(&cfg.build().unwrap()).passed());
        cfg.relax_smallness = true;
        assert!(check_instance(&cfg.build().unwrap()).passed());
    }
}

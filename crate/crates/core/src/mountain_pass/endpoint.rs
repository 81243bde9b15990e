use super::MountainPassError;
use crate::discretize::DiscreteProblem;

/// Largest doubling exponent tried for `t*`.
pub const MAX_DOUBLINGS: u32 = 30;

#[derive(Clone, Debug)]
pub struct Endpoint {
    pub values: Vec<f64>,
    pub t_star: f64,
    pub energy: f64,
}

/// `e = t* φ₊` with `t*` the first of `2, 4, 8, …` such that
/// `I(e) < I(u_λ) − 1` and `‖e‖_λ > r`.
pub fn build_endpoint(p: &DiscreteProblem, u_energy: f64) -> Result<Endpoint, MountainPassError> {
    let phi_plus = p.phi_plus();
    if phi_plus.iter().all(|&v| v == 0.0) {
        return Err(MountainPassError::EndpointNotFound { t_max: 0.0 });
    }
    let r = p.inst.ball_radius;
    for k in 1..=MAX_DOUBLINGS {
        let t = f64::from(1u32 << k);
        let e: Vec<f64> = phi_plus.iter().map(|v| t * v).collect();
        let energy = p.energy(&e);
        if energy < u_energy - 1.0 && p.norm(&e) > r {
            return Ok(Endpoint {
                values: e,
                t_star: t,
                energy,
            });
        }
    }
    Err(MountainPassError::EndpointNotFound {
        t_max: f64::from(1u32 << MAX_DOUBLINGS),
    })
}

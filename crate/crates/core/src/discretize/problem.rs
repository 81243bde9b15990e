use std::sync::Arc;

use super::function::DiscreteFunction;
use super::mesh::Mesh;
use super::operator::{assemble, DiscreteOperator};
use crate::error::ModelResult;
use crate::model::ProblemInstance;

/// An instance discretized on a mesh: operator, nodal obstacle and branch flags.
///
/// Vectors are indexed by all mesh nodes; the two boundary nodes carry the
/// Dirichlet value 0 and are never moved by the solvers.
#[derive(Clone, Debug)]
pub struct DiscreteProblem {
    pub inst: ProblemInstance,
    pub mesh: Arc<Mesh>,
    pub op: DiscreteOperator,
    /// `phi(x_i)`
    pub phi: Vec<f64>,
    /// Lower bounds of the discrete `K`: `phi` inside, 0 on the boundary nodes.
    pub lower: Vec<f64>,
    /// `x_i ∈ Ω`
    pub inside: Vec<bool>,
    pub potential: Vec<f64>,
}

impl DiscreteProblem {
    pub fn new(inst: &ProblemInstance) -> ModelResult<Self> {
        let mesh = Arc::new(Mesh::for_instance(inst)?);
        Self::on_mesh(inst, mesh)
    }

    pub fn on_mesh(inst: &ProblemInstance, mesh: Arc<Mesh>) -> ModelResult<Self> {
        let op = assemble(inst, &mesh)?;
        let x = mesh.nodes();
        let phi: Vec<f64> = x.iter().map(|&x| inst.obstacle.value(x)).collect();
        let mut lower = phi.clone();
        let n = x.len();
        lower[0] = 0.0;
        lower[n - 1] = 0.0;
        let inside = x.iter().map(|&x| inst.penalization.in_omega(x)).collect();
        let potential = x.iter().map(|&x| inst.potential.value(x)).collect();
        Ok(Self {
            inst: inst.clone(),
            mesh,
            op,
            phi,
            lower,
            inside,
            potential,
        })
    }

    /// Same mesh and data at a different `λ`.
    pub fn with_lambda(&self, lambda: f64) -> ModelResult<Self> {
        Self::on_mesh(&self.inst.with_lambda(lambda), self.mesh.clone())
    }

    pub fn n(&self) -> usize {
        self.mesh.n()
    }

    pub fn lambda(&self) -> f64 {
        self.inst.lambda
    }

    pub fn g_at(&self, i: usize, t: f64) -> f64 {
        self.inst
            .penalization
            .g_branch(&self.inst.nonlinearity, self.inside[i], t)
    }

    pub fn big_g_at(&self, i: usize, t: f64) -> f64 {
        self.inst
            .penalization
            .big_g_branch(&self.inst.nonlinearity, self.inside[i], t)
    }

    pub fn dg_at(&self, i: usize, t: f64) -> f64 {
        self.inst
            .penalization
            .dg_branch(&self.inst.nonlinearity, self.inside[i], t)
    }

    /// `½ uᵀA_λu − Σ w_i G(x_i, u_i)`
    pub fn energy(&self, u: &[f64]) -> f64 {
        let w = &self.op.weights;
        let nl: f64 = (0..u.len()).map(|i| w[i] * self.big_g_at(i, u[i])).sum();
        0.5 * self.op.norm_sq(u) - nl
    }

    /// `A_λu − diag(w) g(x, u)`
    pub fn gradient(&self, u: &[f64]) -> Vec<f64> {
        let mut r = self.op.apply(u);
        for (i, ri) in r.iter_mut().enumerate() {
            *ri -= self.op.weights[i] * self.g_at(i, u[i]);
        }
        r
    }

    /// Diagonal of `diag(w) ∂g/∂t` at `u`.
    pub fn nonlinear_jacobian(&self, u: &[f64]) -> Vec<f64> {
        (0..u.len()).map(|i| self.op.weights[i] * self.dg_at(i, u[i])).collect()
    }

    pub fn project(&self, u: &[f64]) -> Vec<f64> {
        project_k(u, &self.lower)
    }

    pub fn phi_plus(&self) -> Vec<f64> {
        let mut p: Vec<f64> = self.phi.iter().map(|v| v.max(0.0)).collect();
        let n = p.len();
        p[0] = 0.0;
        p[n - 1] = 0.0;
        p
    }

    pub fn norm(&self, u: &[f64]) -> f64 {
        self.op.norm(u)
    }

    /// `λ Σ w_i V(x_i) u_i²`
    pub fn concentration(&self, u: &[f64]) -> f64 {
        let s: f64 = (0..u.len())
            .map(|i| self.op.weights[i] * self.potential[i] * u[i] * u[i])
            .sum();
        self.lambda() * s
    }

    /// Largest nodal value on `Ω^c`.
    pub fn localization_max(&self, u: &[f64]) -> f64 {
        max_where(u, |i| !self.inside[i], |v| v)
    }

    /// Largest `|u|` at nodes outside the open set `O`.
    pub fn linf_off_o(&self, u: &[f64]) -> f64 {
        let x = self.mesh.nodes();
        max_where(u, |i| !self.inst.potential.in_zero_set(x[i]), f64::abs)
    }

    /// `∫_{|x| > L/2} (|u'|² + u²)` from the stiffness cells and lumped mass.
    pub fn boundary_mass(&self, u: &[f64]) -> f64 {
        let x = self.mesh.nodes();
        let h = self.mesh.spacing();
        let cut = 0.5 * self.inst.half_width;
        let mut s = 0.0;
        for e in 0..h.len() {
            if x[e].abs() >= cut && x[e + 1].abs() >= cut && x[e] * x[e + 1] > 0.0 {
                let d = u[e + 1] - u[e];
                s += d * d / h[e];
            }
        }
        for i in 0..u.len() {
            if x[i].abs() > cut {
                s += self.op.weights[i] * u[i] * u[i];
            }
        }
        s
    }

    pub fn function(&self, values: Vec<f64>) -> DiscreteFunction {
        DiscreteFunction::new(self.mesh.clone(), values).expect("values sized to the mesh")
    }

    /// Whether `u_i ≥ lower_i − slack` at every node.
    pub fn is_feasible(&self, u: &[f64], slack: f64) -> bool {
        u.iter().zip(&self.lower).all(|(v, l)| *v >= l - slack)
    }
}

fn max_where(u: &[f64], keep: impl Fn(usize) -> bool, map: impl Fn(f64) -> f64) -> f64 {
    (0..u.len()).filter(|&i| keep(i)).map(|i| map(u[i])).fold(0.0, f64::max)
}

/// Nodal `max(u_i, phi_i)`.
pub fn project_k(u: &[f64], phi: &[f64]) -> Vec<f64> {
    u.iter().zip(phi).map(|(a, b)| a.max(*b)).collect()
}

/// Free-function form of [`DiscreteProblem::energy`].
pub fn energy(problem: &DiscreteProblem, u: &DiscreteFunction) -> f64 {
    problem.energy(u.values())
}

/// Free-function form of [`DiscreteProblem::gradient`].
pub fn gradient(problem: &DiscreteProblem, u: &DiscreteFunction) -> DiscreteFunction {
    problem.function(problem.gradient(u.values()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_has_zero_energy_and_gradient() {
        let p = DiscreteProblem::new(&ProblemInstance::default_instance().with_mesh_nodes(201)).unwrap();
        let z = vec![0.0; p.n()];
        assert_eq!(p.energy(&z), 0.0);
        assert!(p.gradient(&z).iter().all(|&g| g == 0.0));
    }

    #[test]
    fn projection_is_idempotent() {
        let phi = [0.0, 0.5, -1.0];
        let u = [1.0, 0.0, -3.0];
        let p = project_k(&u, &phi);
        assert_eq!(p, vec![1.0, 0.5, -1.0]);
        assert_eq!(project_k(&p, &phi), p);
    }

    #[test]
    fn localization_reads_off_omega_nodes() {
        let p = DiscreteProblem::new(&ProblemInstance::default_instance().with_mesh_nodes(161)).unwrap();
        let x = p.mesh.nodes().to_vec();
        let u: Vec<f64> = x.iter().map(|&x| if x.abs() >= 1.5 { 0.3 } else { 0.9 }).collect();
        assert_eq!(p.localization_max(&u), 0.3);
        assert_eq!(p.linf_off_o(&u), 0.9);
    }
}

use super::mesh::Mesh;
use super::tridiag::SymTridiag;
use crate::error::{ModelError, ModelResult};
use crate::model::ProblemInstance;

/// `A_λ = K + diag(w (1 + λV))` with `K` the P1 stiffness matrix and `w` the lumped weights.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteOperator {
    pub matrix: SymTridiag,
    pub stiffness: SymTridiag,
    pub weights: Vec<f64>,
    pub lambda: f64,
}

/// Assembles the λ-norm on the full node set; Dirichlet rows are handled by the solvers.
pub fn assemble(inst: &ProblemInstance, mesh: &Mesh) -> ModelResult<DiscreteOperator> {
    assemble_with(mesh, inst.lambda, |x| inst.potential.value(x))
}

pub fn assemble_with(mesh: &Mesh, lambda: f64, potential: impl Fn(f64) -> f64) -> ModelResult<DiscreteOperator> {
    let n = mesh.n();
    let h = mesh.spacing();
    let mut kd = vec![0.0; n];
    let mut ko = vec![0.0; n - 1];
    for (e, &he) in h.iter().enumerate() {
        let c = 1.0 / he;
        if !(he > 0.0) || !c.is_finite() {
            return Err(ModelError::SingularAssembly { cell: e, width: he });
        }
        kd[e] += c;
        kd[e + 1] += c;
        ko[e] = -c;
    }
    let weights = mesh.lumped_weights();
    let diag = mesh
        .nodes()
        .iter()
        .zip(&weights)
        .zip(&kd)
        .map(|((&x, &w), &k)| k + w * (1.0 + lambda * potential(x)))
        .collect();
    let stiffness = SymTridiag {
        diag: kd,
        off: ko.clone(),
    };
    Ok(DiscreteOperator {
        matrix: SymTridiag { diag, off: ko },
        stiffness,
        weights,
        lambda,
    })
}

impl DiscreteOperator {
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// `‖u‖²_{λ,h} = uᵀ A_λ u`
    pub fn norm_sq(&self, u: &[f64]) -> f64 {
        self.matrix.quad_form(u)
    }

    pub fn norm(&self, u: &[f64]) -> f64 {
        self.norm_sq(u).max(0.0).sqrt()
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        self.matrix.mul(u)
    }
}

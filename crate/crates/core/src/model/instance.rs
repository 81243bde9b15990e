use std::path::Path;

use serde::{Deserialize, Serialize};

use super::nonlinearity::{NonlinearityConfig, NonlinearitySpec};
use super::obstacle::{ObstacleConfig, ObstacleSpec};
use super::penalized::PenalizedNonlinearity;
use super::potential::{PotentialConfig, PotentialSpec};
use crate::error::{ModelError, ModelResult};

/// Default node count of the truncated mesh.
pub const DEFAULT_MESH_NODES: usize = 2001;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PenalizationConfig {
    pub k: f64,
    pub omega_left: f64,
    pub omega_right: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    #[serde(default = "default_mesh_nodes")]
    pub n: usize,
}

fn default_mesh_nodes() -> usize {
    DEFAULT_MESH_NODES
}

impl Default for MeshConfig {
    fn default() -> Self {
        Self { n: DEFAULT_MESH_NODES }
    }
}

/// The JSON instance document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub nonlinearity: NonlinearityConfig,
    pub potential: PotentialConfig,
    pub obstacle: ObstacleConfig,
    pub penalization: PenalizationConfig,
    pub lambda: f64,
    #[serde(rename = "L")]
    pub half_width: f64,
    pub r: f64,
    #[serde(default)]
    pub mesh: MeshConfig,
    /// Report the smallness condition `4‖φ₊‖² < r²` without enforcing it.
    #[serde(default)]
    pub relax_smallness: bool,
}

impl InstanceConfig {
    /// `f(t) = t³`, `O = (-1, 1)`, `V = min(1, (|x|-1)₊²)`, `Ω = (-1.5, 1.5)`,
    /// bump obstacle of amplitude 0.15 and half-width 0.5, `L = 8`, `r = 1`.
    pub fn default_instance() -> Self {
        Self {
            nonlinearity: NonlinearityConfig::Power {
                p: 3.0,
                theta: Some(4.0),
            },
            potential: PotentialConfig::Well {
                o_left: -1.0,
                o_right: 1.0,
                cap: 1.0,
                slope: 1.0,
            },
            obstacle: ObstacleConfig::Bump {
                center: 0.0,
                halfwidth: 0.5,
                amplitude: 0.15,
                tail: 0.0,
            },
            penalization: PenalizationConfig {
                k: 4.0,
                omega_left: -1.5,
                omega_right: 1.5,
            },
            lambda: 100.0,
            half_width: 8.0,
            r: 1.0,
            mesh: MeshConfig::default(),
            relax_smallness: false,
        }
    }

    pub fn from_json(text: &str) -> ModelResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> ModelResult<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn build(&self) -> ModelResult<ProblemInstance> {
        let nonlinearity = self.nonlinearity.build()?;
        let potential = self.potential.build()?;
        let obstacle = self.obstacle.build()?;
        let penalization = PenalizedNonlinearity::new(
            &nonlinearity,
            self.penalization.k,
            self.penalization.omega_left,
            self.penalization.omega_right,
        )?;
        let inst = ProblemInstance {
            nonlinearity,
            potential,
            obstacle,
            penalization,
            lambda: self.lambda,
            half_width: self.half_width,
            ball_radius: self.r,
            mesh_nodes: self.mesh.n,
            relax_smallness: self.relax_smallness,
        };
        inst.check_scalars()?;
        Ok(inst)
    }
}

/// The continuous penalized obstacle problem at a fixed `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance {
    pub nonlinearity: NonlinearitySpec,
    pub potential: PotentialSpec,
    pub obstacle: ObstacleSpec,
    pub penalization: PenalizedNonlinearity,
    pub lambda: f64,
    /// Truncation half-width `L`; the line is replaced by `[-L, L]`.
    pub half_width: f64,
    /// Radius `r` of the ball holding the minimizer.
    pub ball_radius: f64,
    pub mesh_nodes: usize,
    pub relax_smallness: bool,
}

impl ProblemInstance {
    pub fn default_instance() -> Self {
        InstanceConfig::default_instance()
            .build()
            .expect("default instance is admissible")
    }

    fn check_scalars(&self) -> ModelResult<()> {
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "lambda",
                reason: format!("need a finite lambda >= 0, got {}", self.lambda),
            });
        }
        if !(self.half_width > 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "L",
                reason: format!("must be positive, got {}", self.half_width),
            });
        }
        if !(self.ball_radius > 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "r",
                reason: format!("must be positive, got {}", self.ball_radius),
            });
        }
        if self.mesh_nodes < 3 {
            return Err(ModelError::InvalidParameter {
                name: "mesh.n",
                reason: format!("need at least 3 nodes, got {}", self.mesh_nodes),
            });
        }
        Ok(())
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { lambda, ..self.clone() }
    }

    pub fn with_mesh_nodes(&self, n: usize) -> Self {
        Self {
            mesh_nodes: n,
            ..self.clone()
        }
    }

    pub fn threshold(&self) -> f64 {
        self.penalization.a
    }

    /// Mountain-pass lower level `rho = r²/8`.
    pub fn rho(&self) -> f64 {
        self.ball_radius * self.ball_radius / 8.0
    }

    pub fn g(&self, x: f64, t: f64) -> f64 {
        self.penalization.g(&self.nonlinearity, x, t)
    }

    pub fn big_g(&self, x: f64, t: f64) -> f64 {
        self.penalization.big_g(&self.nonlinearity, x, t)
    }

    /// Breakpoints of `Ω`, `O`, and `phi` inside `(-L, L)`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = vec![
            self.potential.o_left,
            self.potential.o_right,
            self.penalization.omega_left,
            self.penalization.omega_right,
        ];
        b.extend(self.obstacle.breakpoints());
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_document_round_trips() {
        let cfg = InstanceConfig::default_instance();
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        assert!(text.contains("\"L\": 8.0"));
        assert_eq!(InstanceConfig::from_json(&text).unwrap(), cfg);
    }

    #[test]
    fn default_threshold() {
        let inst = ProblemInstance::default_instance();
        assert!((inst.threshold() - 0.5).abs() < 1e-12);
        assert_eq!(inst.rho(), 0.125);
    }

    #[test]
    fn missing_field_is_rejected() {
        let err = InstanceConfig::from_json(r#"{"lambda": 1.0}"#);
        assert!(err.is_err());
    }

    #[test]
    fn minimal_document_uses_defaults() {
        let text = r#"{
            "nonlinearity": {"kind": "power", "p": 3},
            "potential": {"kind": "well", "o_left": -1, "o_right": 1, "cap": 1, "slope": 1},
            "obstacle": {"kind": "bump", "center": 0, "halfwidth": 0.5, "amplitude": 0.15},
            "penalization": {"k": 4, "omega_left": -1.5, "omega_right": 1.5},
            "lambda": 10, "L": 8, "r": 1
        }"#;
        let inst = InstanceConfig::from_json(text).unwrap().build().unwrap();
        assert_eq!(inst.mesh_nodes, DEFAULT_MESH_NODES);
        assert_eq!(inst.nonlinearity.theta, 4.0);
        assert!(!inst.relax_smallness);
    }

    #[test]
    fn negative_lambda_is_rejected() {
        let mut cfg = InstanceConfig::default_instance();
        cfg.lambda = -1.0;
        assert!(cfg.build().is_err());
    }
}

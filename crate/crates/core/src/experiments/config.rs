use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{ModelError, ModelResult};
use crate::model::InstanceConfig;
use crate::mountain_pass::MountainPassOptions;
use crate::vi_solver::SolverOptions;

pub const DEFAULT_LAMBDAS: [f64; 7] = [1.0, 3.16, 10.0, 31.6, 100.0, 316.0, 1000.0];

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default)]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default)]
    pub workers: Option<usize>,
}

/// Instance document plus optional `sweep`, `solver` and `mountain_pass` blocks.
///
/// Unknown keys are rejected at every level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigDocument {
    #[serde(flatten)]
    pub instance: InstanceConfig,
    pub sweep: SweepSection,
    pub solver: SolverOptions,
    pub mountain_pass: MountainPassOptions,
}

impl<'de> Deserialize<'de> for ConfigDocument {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let mut map = serde_json::Map::deserialize(deserializer)?;
        fn block<T: Default + for<'a> Deserialize<'a>>(
            map: &mut serde_json::Map<String, serde_json::Value>,
            key: &str,
        ) -> serde_json::Result<T> {
            map.remove(key).map_or_else(|| Ok(T::default()), serde_json::from_value)
        }
        let sweep = block(&mut map, "sweep").map_err(|e| D::Error::custom(format!("sweep: {e}")))?;
        let solver = block(&mut map, "solver").map_err(|e| D::Error::custom(format!("solver: {e}")))?;
        let mountain_pass =
            block(&mut map, "mountain_pass").map_err(|e| D::Error::custom(format!("mountain_pass: {e}")))?;
        let instance = serde_json::from_value(map.into()).map_err(D::Error::custom)?;
        Ok(Self {
            instance,
            sweep,
            solver,
            mountain_pass,
        })
    }
}

impl ConfigDocument {
    pub fn from_json(text: &str) -> ModelResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> ModelResult<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn default_document() -> Self {
        Self {
            instance: InstanceConfig::default_instance(),
            sweep: SweepSection::default(),
            solver: SolverOptions::default(),
            mountain_pass: MountainPassOptions::default(),
        }
    }

    pub fn sweep_config(&self) -> ModelResult<SweepConfig> {
        let cfg = SweepConfig {
            instance: self.instance.clone(),
            lambdas: self.sweep.lambdas.clone().unwrap_or_else(|| DEFAULT_LAMBDAS.to_vec()),
            solver: self.solver,
            mountain_pass: self.mountain_pass,
            workers: self.sweep.workers.unwrap_or(1),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub instance: InstanceConfig,
    pub lambdas: Vec<f64>,
    pub solver: SolverOptions,
    pub mountain_pass: MountainPassOptions,
    pub workers: usize,
}

impl SweepConfig {
    pub fn default_sweep() -> Self {
        ConfigDocument::default_document()
            .sweep_config()
            .expect("default sweep is valid")
    }

    pub fn validate(&self) -> ModelResult<()> {
        if self.lambdas.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
            return Err(ModelError::InvalidParameter {
                name: "sweep.lambdas",
                reason: "every lambda must be finite and positive".into(),
            });
        }
        if self.lambdas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(ModelError::InvalidParameter {
                name: "sweep.lambdas",
                reason: "lambdas must be strictly increasing".into(),
            });
        }
        if self.workers == 0 {
            return Err(ModelError::InvalidParameter {
                name: "sweep.workers",
                reason: "need at least one worker".into(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optional_blocks_default() {
        let text = serde_json::to_string(&InstanceConfig::default_instance()).unwrap();
        let doc = ConfigDocument::from_json(&text).unwrap();
        let cfg = doc.sweep_config().unwrap();
        assert_eq!(cfg.lambdas, DEFAULT_LAMBDAS.to_vec());
        assert_eq!(cfg.workers, 1);
        assert_eq!(cfg.solver, SolverOptions::default());
    }

    #[test]
    fn unsorted_lambdas_rejected() {
        let mut doc = ConfigDocument::default_document();
        doc.sweep.lambdas = Some(vec![10.0, 1.0]);
        assert!(doc.sweep_config().is_err());
        doc.sweep.lambdas = Some(vec![0.0, 1.0]);
        assert!(doc.sweep_config().is_err());
    }

    #[test]
    fn solver_block_overrides() {
        let mut v = serde_json::to_value(InstanceConfig::default_instance()).unwrap();
        v["solver"] = serde_json::json!({"tol": 1e-9, "method": "semismooth_newton"});
        v["sweep"] = serde_json::json!({"lambdas": [2.0, 20.0], "workers": 3});
        let doc: ConfigDocument = serde_json::from_value(v).unwrap();
        let cfg = doc.sweep_config().unwrap();
        assert_eq!(cfg.solver.tol, 1e-9);
        assert_eq!(cfg.lambdas, vec![2.0, 20.0]);
        assert_eq!(cfg.workers, 3);
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut v = serde_json::to_value(InstanceConfig::default_instance()).unwrap();
        v["bogus"] = serde_json::json!(1);
        assert!(serde_json::from_value::<ConfigDocument>(v.clone()).is_err());
        v.as_object_mut().unwrap().remove("bogus");
        v["solver"] = serde_json::json!({"tolerance": 1e-9});
        let err = serde_json::from_value::<ConfigDocument>(v).unwrap_err();
        assert!(err.to_string().starts_with("solver:"), "{err}");
    }

    #[test]
    fn document_round_trips() {
        let doc = ConfigDocument::default_document();
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(ConfigDocument::from_json(&text).unwrap(), doc);
    }
}

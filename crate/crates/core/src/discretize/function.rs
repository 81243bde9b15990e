use std::io::{Read, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::mesh::Mesh;
use crate::error::{ModelError, ModelResult};

/// Nodal values of a piecewise linear function on a shared mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteFunction {
    mesh: Arc<Mesh>,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    x: f64,
    value: f64,
}

impl DiscreteFunction {
    pub fn new(mesh: Arc<Mesh>, values: Vec<f64>) -> ModelResult<Self> {
        if values.len() != mesh.n() {
            return Err(ModelError::Mesh(format!(
                "{} values on a mesh of {} nodes",
                values.len(),
                mesh.n()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(ModelError::Mesh(format!("non-finite value at node {i}")));
        }
        Ok(Self { mesh, values })
    }

    pub fn zeros(mesh: Arc<Mesh>) -> Self {
        let n = mesh.n();
        Self {
            mesh,
            values: vec![0.0; n],
        }
    }

    pub fn from_fn(mesh: Arc<Mesh>, f: impl Fn(f64) -> f64) -> Self {
        let values = mesh.nodes().iter().map(|&x| f(x)).collect();
        Self { mesh, values }
    }

    pub fn mesh(&self) -> &Arc<Mesh> {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> ModelResult<()> {
        let mut w = csv::Writer::from_writer(writer);
        for (&x, &value) in self.mesh.nodes().iter().zip(&self.values) {
            w.serialize(Row { x, value })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> ModelResult<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for row in r.deserialize() {
            let row: Row = row?;
            xs.push(row.x);
            vs.push(row.value);
        }
        Self::new(Arc::new(Mesh::from_nodes(xs)?), vs)
    }
}

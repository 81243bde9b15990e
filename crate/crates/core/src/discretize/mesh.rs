use crate::error::{ModelError, ModelResult};
use crate::model::ProblemInstance;

/// Relative distance under which two breakpoints are merged.
const MERGE_TOL: f64 = 1e-12;

/// Strictly increasing nodes on `[-L, L]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    nodes: Vec<f64>,
    spacing: Vec<f64>,
}

impl Mesh {
    pub fn from_nodes(nodes: Vec<f64>) -> ModelResult<Self> {
        if nodes.len() < 3 {
            return Err(ModelError::Mesh(format!("need at least 3 nodes, got {}", nodes.len())));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(ModelError::Mesh("non-finite node".into()));
        }
        let spacing: Vec<f64> = nodes.windows(2).map(|w| w[1] - w[0]).collect();
        let scale = nodes[nodes.len() - 1].abs().max(nodes[0].abs()).max(1.0);
        if let Some((cell, &width)) = spacing.iter().enumerate().find(|(_, &h)| !(h > f64::EPSILON * scale)) {
            return Err(ModelError::SingularAssembly { cell, width });
        }
        Ok(Self { nodes, spacing })
    }

    pub fn uniform(half_width: f64, n: usize) -> ModelResult<Self> {
        Self::aligned(half_width, n, &[])
    }

    /// Piecewise uniform mesh with a node at every breakpoint inside `(-L, L)`.
    ///
    /// Cells are shared out in proportion to segment length (largest remainder,
    /// at least one per segment); ties favour segments nearer the ends, which
    /// keeps symmetric breakpoint sets symmetric.
    pub fn aligned(half_width: f64, n: usize, breakpoints: &[f64]) -> ModelResult<Self> {
        if !(half_width > 0.0) {
            return Err(ModelError::Mesh(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        if n < 3 {
            return Err(ModelError::Mesh(format!("need at least 3 nodes, got {n}")));
        }
        let tol = MERGE_TOL * half_width;
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|b| b.is_finite() && *b > -half_width + tol && *b < half_width - tol)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|b, a| (*b - *a).abs() <= tol);

        let mut ends = Vec::with_capacity(cuts.len() + 2);
        ends.push(-half_width);
        ends.extend(cuts);
        ends.push(half_width);

        let segments = ends.len() - 1;
        let cells = n - 1;
        if cells < segments {
            return Err(ModelError::Mesh(format!(
                "{n} nodes cannot resolve {} breakpoints",
                segments - 1
            )));
        }
        let counts = allocate_cells(&ends, cells);

        let mut nodes = Vec::with_capacity(n);
        for (s, &c) in counts.iter().enumerate() {
            let (lo, hi) = (ends[s], ends[s + 1]);
            for j in 0..c {
                nodes.push(lo + (hi - lo) * j as f64 / c as f64);
            }
        }
        nodes.push(half_width);
        Self::from_nodes(nodes)
    }

    /// Mesh aligned with every breakpoint of the instance data.
    pub fn for_instance(inst: &ProblemInstance) -> ModelResult<Self> {
        Self::aligned(inst.half_width, inst.mesh_nodes, &inst.breakpoints())
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn left(&self) -> f64 {
        self.nodes[0]
    }

    pub fn right(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Lumped (trapezoidal) weights: half the two adjacent cell widths.
    pub fn lumped_weights(&self) -> Vec<f64> {
        let n = self.n();
        let h = &self.spacing;
        (0..n)
            .map(|i| {
                let left = if i > 0 { h[i - 1] } else { 0.0 };
                let right = if i + 1 < n { h[i] } else { 0.0 };
                0.5 * (left + right)
            })
            .collect()
    }

    /// Index of the node at `x`, if one lies within rounding distance.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let tol = MERGE_TOL * self.left().abs().max(self.right().abs()).max(1.0);
        let i = self.nodes.partition_point(|&v| v < x - tol);
        (i < self.n() && (self.nodes[i] - x).abs() <= tol).then_some(i)
    }

    /// Nodes between the nodes at `lo` and `hi` (inclusive) with the offset of the first.
    pub fn sub_mesh(&self, lo: f64, hi: f64) -> ModelResult<(Mesh, usize)> {
        let i = self
            .index_of(lo)
            .ok_or_else(|| ModelError::Mesh(format!("no node at {lo}")))?;
        let j = self
            .index_of(hi)
            .ok_or_else(|| ModelError::Mesh(format!("no node at {hi}")))?;
        if j < i + 2 {
            return Err(ModelError::Mesh(format!("[{lo}, {hi}] holds fewer than 3 nodes")));
        }
        Ok((Mesh::from_nodes(self.nodes[i..=j].to_vec())?, i))
    }
}

fn allocate_cells(ends: &[f64], cells: usize) -> Vec<usize> {
    let segments = ends.len() - 1;
    let total = ends[segments] - ends[0];
    let ideal: Vec<f64> = ends.windows(2).map(|w| cells as f64 * (w[1] - w[0]) / total).collect();
    let mut counts: Vec<usize> = ideal.iter().map(|&c| (c.floor() as usize).max(1)).collect();

    let rank_from_end = |s: usize| s.min(segments - 1 - s);
    let mut assigned: usize = counts.iter().sum();
    if assigned < cells {
        let mut order: Vec<usize> = (0..segments).collect();
        order.sort_by(|&p, &q| {
            let rp = ideal[p] - counts[p] as f64;
            let rq = ideal[q] - counts[q] as f64;
            rq.total_cmp(&rp)
                .then(rank_from_end(p).cmp(&rank_from_end(q)))
                .then(p.cmp(&q))
        });
        for &s in order.iter().cycle() {
            if assigned == cells {
                break;
            }
            counts[s] += 1;
            assigned += 1;
        }
    }
    while assigned > cells {
        // minimum-one rounding overshot; trim the most generous segment
        let s = (0..segments)
            .filter(|&s| counts[s] > 1)
            .max_by(|&p, &q| {
                (counts[p] as f64 - ideal[p])
                    .total_cmp(&(counts[q] as f64 - ideal[q]))
                    .then(q.cmp(&p))
            })
            .expect("cells >= segments");
        counts[s] -= 1;
        assigned -= 1;
    }
    counts
}

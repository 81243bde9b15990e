use crate::discretize::{DiscreteFunction, DiscreteProblem};

/// Chain of feasible points from `u_λ` to the endpoint `e`.
#[derive(Clone, Debug)]
pub struct MountainPath {
    pub points: Vec<Vec<f64>>,
    pub energies: Vec<f64>,
}

impl MountainPath {
    pub fn new(p: &DiscreteProblem, points: Vec<Vec<f64>>) -> Self {
        let energies = points.iter().map(|u| p.energy(u)).collect();
        Self { points, energies }
    }

    /// Number of segments `P`.
    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    /// Index of the highest node, smallest index on ties.
    pub fn peak_index(&self) -> usize {
        let mut best = 0;
        for (j, &e) in self.energies.iter().enumerate() {
            if e > self.energies[best] {
                best = j;
            }
        }
        best
    }

    pub fn point(&self, p: &DiscreteProblem, j: usize) -> DiscreteFunction {
        p.function(self.points[j].clone())
    }

    /// `(1 − s) p_j + s p_{j+1}`
    pub fn on_segment(&self, j: usize, s: f64) -> Vec<f64> {
        lerp(&self.points[j], &self.points[j + 1], s)
    }

    /// Redistributes the interior nodes evenly in `‖·‖_λ` arclength along the polyline.
    pub fn respread(&self, p: &DiscreteProblem) -> MountainPath {
        let segs = self.segments();
        let mut cum = vec![0.0; segs + 1];
        for j in 0..segs {
            let d: Vec<f64> = diff(&self.points[j + 1], &self.points[j]);
            cum[j + 1] = cum[j] + p.norm(&d);
        }
        let total = cum[segs];
        let mut points = Vec::with_capacity(segs + 1);
        points.push(self.points[0].clone());
        for k in 1..segs {
            let target = total * k as f64 / segs as f64;
            let j = (cum.partition_point(|&c| c <= target).max(1) - 1).min(segs - 1);
            let len = cum[j + 1] - cum[j];
            let s = if len > 0.0 {
                ((target - cum[j]) / len).clamp(0.0, 1.0)
            } else {
                0.0
            };
            points.push(self.on_segment(j, s));
        }
        points.push(self.points[segs].clone());
        MountainPath::new(p, points)
    }
}

pub(crate) fn lerp(a: &[f64], b: &[f64], s: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * (y - x)).collect()
}

pub(crate) fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `P + 1` points `project_K((1 − s) u + s e)`, `s = j / P`.
pub fn initial_path(p: &DiscreteProblem, u: &[f64], e: &[f64], segments: usize) -> MountainPath {
    let segments = segments.max(2);
    let mut points: Vec<Vec<f64>> = (0..=segments)
        .map(|j| p.project(&lerp(u, e, j as f64 / segments as f64)))
        .collect();
    points[0] = u.to_vec();
    points[segments] = e.to_vec();
    MountainPath::new(p, points)
}

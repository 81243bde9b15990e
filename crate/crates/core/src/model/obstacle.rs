use serde::{Deserialize, Serialize};

use super::potential::{check_table, piecewise_linear};
use crate::error::{ModelError, ModelResult};

#[derive(Clone, Debug, PartialEq)]
pub enum ObstacleKind {
    /// `A max(0, 1 - ((x - c)/w)^2)`, optionally minus a tail
    /// `tail * min(1, (|x - c| - w)_+ / w)` that drops below zero off the bump.
    Bump {
        center: f64,
        halfwidth: f64,
        amplitude: f64,
        tail: f64,
    },
    /// Piecewise linear through `(x_i, phi_i)`, constant beyond the table ends.
    Tabulated { x: Vec<f64>, phi: Vec<f64> },
}

/// Obstacle `phi` with compactly supported positive part.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstacleSpec {
    pub kind: ObstacleKind,
}

impl ObstacleSpec {
    pub fn bump(center: f64, halfwidth: f64, amplitude: f64) -> ModelResult<Self> {
        Self::bump_with_tail(center, halfwidth, amplitude, 0.0)
    }

    pub fn bump_with_tail(center: f64, halfwidth: f64, amplitude: f64, tail: f64) -> ModelResult<Self> {
        if !(halfwidth > 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "obstacle.halfwidth",
                reason: format!("must be positive, got {halfwidth}"),
            });
        }
        if !(amplitude > 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "obstacle.amplitude",
                reason: format!("must be positive, got {amplitude}"),
            });
        }
        if !(tail >= 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "obstacle.tail",
                reason: format!("must be nonnegative, got {tail}"),
            });
        }
        Ok(Self {
            kind: ObstacleKind::Bump {
                center,
                halfwidth,
                amplitude,
                tail,
            },
        })
    }

    pub fn value(&self, x: f64) -> f64 {
        match &self.kind {
            ObstacleKind::Bump {
                center,
                halfwidth,
                amplitude,
                tail,
            } => {
                let s = (x - center) / halfwidth;
                let bump = amplitude * (1.0 - s * s).max(0.0);
                let drop = tail * (s.abs() - 1.0).clamp(0.0, 1.0);
                bump - drop
            }
            ObstacleKind::Tabulated { x: xs, phi } => piecewise_linear(xs, phi, x),
        }
    }

    pub fn positive_part(&self, x: f64) -> f64 {
        self.value(x).max(0.0)
    }

    /// Closed hull `[left, right]` of `{phi > 0}`; `None` when `phi_+ ≡ 0`.
    pub fn positive_support(&self) -> Option<(f64, f64)> {
        match &self.kind {
            ObstacleKind::Bump { center, halfwidth, .. } => Some((center - halfwidth, center + halfwidth)),
            ObstacleKind::Tabulated { x, phi } => {
                let first = phi.iter().position(|&p| p > 0.0)?;
                let last = phi.iter().rposition(|&p| p > 0.0)?;
                // positive part reaches zero at the neighbouring table points
                let left = if first == 0 { f64::NEG_INFINITY } else { x[first - 1] };
                let right = if last + 1 == x.len() {
                    f64::INFINITY
                } else {
                    x[last + 1]
                };
                Some((left, right))
            }
        }
    }

    /// Abscissae where `phi` has a kink or its maximum; the mesh aligns nodes there.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            ObstacleKind::Bump {
                center,
                halfwidth,
                tail,
                ..
            } => {
                let mut b = vec![center - halfwidth, *center, center + halfwidth];
                if *tail > 0.0 {
                    b.push(center - 2.0 * halfwidth);
                    b.push(center + 2.0 * halfwidth);
                }
                b
            }
            ObstacleKind::Tabulated { x, .. } => x.clone(),
        }
    }

    pub fn amplitude(&self) -> f64 {
        match &self.kind {
            ObstacleKind::Bump { amplitude, .. } => *amplitude,
            ObstacleKind::Tabulated { phi, .. } => phi.iter().cloned().fold(0.0, f64::max),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObstacleConfig {
    Bump {
        center: f64,
        halfwidth: f64,
        amplitude: f64,
        #[serde(default)]
        tail: f64,
    },
    Tabulated {
        x: Vec<f64>,
        phi: Vec<f64>,
    },
}

impl ObstacleConfig {
    pub fn build(&self) -> ModelResult<ObstacleSpec> {
        match self {
            Self::Bump {
                center,
                halfwidth,
                amplitude,
                tail,
            } => ObstacleSpec::bump_with_tail(*center, *halfwidth, *amplitude, *tail),
            Self::Tabulated { x, phi } => {
                check_table("obstacle.table", x, phi)?;
                Ok(ObstacleSpec {
                    kind: ObstacleKind::Tabulated {
                        x: x.clone(),
                        phi: phi.clone(),
                    },
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_profile() {
        let phi = ObstacleSpec::bump(0.0, 0.5, 0.2).unwrap();
        assert_eq!(phi.value(0.0), 0.2);
        assert_eq!(phi.value(0.5), 0.0);
        assert_eq!(phi.value(0.9), 0.0);
        assert!((phi.value(0.25) - 0.15).abs() < 1e-15);
        assert_eq!(phi.positive_support(), Some((-0.5, 0.5)));
    }

    #[test]
    fn tail_goes_negative_and_saturates() {
        let phi = ObstacleSpec::bump_with_tail(0.0, 0.5, 0.2, 0.1).unwrap();
        assert_eq!(phi.value(0.75), -0.05);
        assert_eq!(phi.value(5.0), -0.1);
    }

    #[test]
    fn tabulated_support() {
        let cfg = ObstacleConfig::Tabulated {
            x: vec![-2.0, -0.5, 0.0, 0.5, 2.0],
            phi: vec![-1.0, 0.0, 0.3, 0.0, -1.0],
        };
        let phi = cfg.build().unwrap();
        assert_eq!(phi.positive_support(), Some((-0.5, 0.5)));
        assert_eq!(phi.amplitude(), 0.3);
    }
}

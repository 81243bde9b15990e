use serde::{Deserialize, Serialize};

use crate::error::{ModelError, ModelResult};

#[derive(Clone, Debug, PartialEq)]
pub enum PotentialKind {
    /// `V = 0` on `[o_left, o_right]`, `min(cap, slope * dist(x, O)^2)` outside.
    Well { cap: f64, slope: f64 },
    /// Piecewise linear through `(x_i, v_i)`, constant beyond the table ends.
    Tabulated { x: Vec<f64>, v: Vec<f64> },
}

/// Nonnegative potential whose zero set has interior `O = (o_left, o_right)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    pub o_left: f64,
    pub o_right: f64,
}

impl PotentialSpec {
    pub fn well(o_left: f64, o_right: f64, cap: f64, slope: f64) -> ModelResult<Self> {
        if !(o_left < o_right) {
            return Err(ModelError::InvalidParameter {
                name: "potential",
                reason: format!("need o_left < o_right, got ({o_left}, {o_right})"),
            });
        }
        if !(cap > 0.0) || !(slope > 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "potential",
                reason: "cap and slope must be positive".into(),
            });
        }
        Ok(Self {
            kind: PotentialKind::Well { cap, slope },
            o_left,
            o_right,
        })
    }

    pub fn value(&self, x: f64) -> f64 {
        match &self.kind {
            PotentialKind::Well { cap, slope } => {
                let d = if x < self.o_left {
                    self.o_left - x
                } else if x > self.o_right {
                    x - self.o_right
                } else {
                    0.0
                };
                (slope * d * d).min(*cap)
            }
            PotentialKind::Tabulated { x: xs, v } => piecewise_linear(xs, v, x),
        }
    }

    /// `x` in the open set `O`.
    pub fn in_zero_set(&self, x: f64) -> bool {
        x > self.o_left && x < self.o_right
    }

    /// `x` outside the closure of `O`.
    pub fn outside_closure(&self, x: f64) -> bool {
        x < self.o_left || x > self.o_right
    }
}

pub(crate) fn piecewise_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[xs.len() - 1] {
        return ys[ys.len() - 1];
    }
    let i = xs.partition_point(|&k| k <= x) - 1;
    let s = (x - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] + s * (ys[i + 1] - ys[i])
}

pub(crate) fn check_table(name: &'static str, xs: &[f64], ys: &[f64]) -> ModelResult<()> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(ModelError::InvalidParameter {
            name,
            reason: "table needs matching x/value arrays with at least two entries".into(),
        });
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) || ys.iter().any(|y| !y.is_finite()) {
        return Err(ModelError::InvalidParameter {
            name,
            reason: "table abscissae must be strictly increasing and values finite".into(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Well {
        o_left: f64,
        o_right: f64,
        cap: f64,
        slope: f64,
    },
    Tabulated {
        o_left: f64,
        o_right: f64,
        x: Vec<f64>,
        v: Vec<f64>,
    },
}

impl PotentialConfig {
    pub fn build(&self) -> ModelResult<PotentialSpec> {
        match self {
            Self::Well {
                o_left,
                o_right,
                cap,
                slope,
            } => PotentialSpec::well(*o_left, *o_right, *cap, *slope),
            Self::Tabulated { o_left, o_right, x, v } => {
                check_table("potential.table", x, v)?;
                Ok(PotentialSpec {
                    kind: PotentialKind::Tabulated {
                        x: x.clone(),
                        v: v.clone(),
                    },
                    o_left: *o_left,
                    o_right: *o_right,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_is_zero_exactly_on_closed_interval() {
        let v = PotentialSpec::well(-1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(v.value(-1.0), 0.0);
        assert_eq!(v.value(0.3), 0.0);
        assert_eq!(v.value(1.0), 0.0);
        assert!(v.value(1.0 + 1e-6) > 0.0);
        assert_eq!(v.value(1.5), 0.25);
        assert_eq!(v.value(-7.0), 1.0);
    }

    #[test]
    fn tabulated_interpolates() {
        let cfg = PotentialConfig::Tabulated {
            o_left: -1.0,
            o_right: 1.0,
            x: vec![-3.0, -1.0, 1.0, 3.0],
            v: vec![2.0, 0.0, 0.0, 2.0],
        };
        let v = cfg.build().unwrap();
        assert_eq!(v.value(2.0), 1.0);
        assert_eq!(v.value(10.0), 2.0);
        assert_eq!(v.value(0.0), 0.0);
    }
}

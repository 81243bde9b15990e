//! Minimal deterministic SVG line charts.

use std::fmt::Write as _;

use super::sweep::SweepResult;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: String,
    pub dashed: bool,
    pub markers: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    /// Series with an empty label are left out of the legend.
    pub series: Vec<Series>,
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite() && (!log || *v > 0.0)) {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if log {
            (lo, hi) = (lo.floor(), hi.ceil());
        } else {
            let pad = 0.05 * (hi - lo);
            (lo, hi) = (lo - pad, hi + pad);
        }
        if hi - lo < 1e-12 {
            (lo, hi) = (lo - 0.5, hi + 0.5);
        }
        Self { lo, hi, log }
    }

    fn unit(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let step = ((self.hi - self.lo) / 8.0).ceil().max(1.0) as i32;
            let (a, b) = (self.lo as i32, self.hi as i32);
            return (a..=b)
                .step_by(step as usize)
                .map(|k| (10f64.powi(k), format!("1e{k}")))
                .collect();
        }
        let raw = (self.hi - self.lo) / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| *s >= raw)
            .unwrap_or(10.0 * mag);
        let digits = (-step.log10().floor()).max(0.0) as usize;
        let mut t = (self.lo / step).ceil() * step;
        let mut out = Vec::new();
        while t <= self.hi + 1e-9 * step {
            let v = if t.abs() < 1e-12 * step { 0.0 } else { t };
            out.push((v, format!("{v:.digits$}")));
            t += step;
        }
        out
    }
}

impl Chart {
    pub fn render(&self) -> String {
        let xs = Axis::fit(
            self.series.iter().flat_map(|s| s.points.iter().map(|p| p.0)),
            self.log_x,
        );
        let ys = Axis::fit(
            self.series.iter().flat_map(|s| s.points.iter().map(|p| p.1)),
            self.log_y,
        );
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let px = |x: f64| LEFT + xs.unit(x) * pw;
        let py = |y: f64| TOP + (1.0 - ys.unit(y)) * ph;
        let ok = |(x, y): &(f64, f64)| {
            x.is_finite() && y.is_finite() && (!self.log_x || *x > 0.0) && (!self.log_y || *y > 0.0)
        };

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&self.title)
        );
        for (v, label) in xs.ticks() {
            let x = px(v);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{TOP:.2}" x2="{x:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##,
                TOP + ph
            );
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
                TOP + ph + 16.0
            );
        }
        for (v, label) in ys.ticks() {
            let y = py(v);
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##,
                LEFT + pw
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#,
                LEFT - 6.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 18.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );

        let mut legend_row = 0;
        for series in &self.series {
            let pts: Vec<String> = series
                .points
                .iter()
                .filter(|p| ok(p))
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            let dash = if series.dashed {
                r#" stroke-dasharray="6 4""#
            } else {
                ""
            };
            if pts.len() > 1 {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                    series.color,
                    pts.join(" ")
                );
            }
            if series.markers {
                for &(x, y) in series.points.iter().filter(|p| ok(p)) {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#,
                        px(x),
                        py(y),
                        series.color
                    );
                }
            }
            if series.label.is_empty() {
                continue;
            }
            let ly = TOP + 10.0 + 18.0 * legend_row as f64;
            legend_row += 1;
            let lx = LEFT + pw + 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="2"{dash}/>"#,
                lx + 24.0,
                series.color
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                lx + 30.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn color(k: usize) -> String {
    PALETTE[k % PALETTE.len()].to_string()
}

fn all_positive(values: impl IntoIterator<Item = f64>) -> bool {
    values.into_iter().filter(|v| v.is_finite()).all(|v| v > 0.0)
}

/// Solutions near the well, the obstacle and the level `a` on the complement of `Ω`.
pub fn solutions_chart(result: &SweepResult) -> Chart {
    let inst = &result.instance;
    let pen = &inst.penalization;
    let x_lo = (pen.omega_left - 1.5).max(-inst.half_width);
    let x_hi = (pen.omega_right + 1.5).min(inst.half_width);
    let window = |x: f64| x >= x_lo && x <= x_hi;
    let mut series = Vec::new();
    for (k, o) in result.outcomes.iter().enumerate() {
        let c = color(k);
        if let Some(u) = &o.u {
            let nodes = u.solution.mesh().nodes();
            series.push(Series {
                label: format!("u, lambda = {}", o.lambda),
                points: nodes
                    .iter()
                    .zip(u.values())
                    .filter(|p| window(*p.0))
                    .map(|(&x, &v)| (x, v))
                    .collect(),
                color: c.clone(),
                dashed: false,
                markers: false,
            });
        }
        if let Some(w) = &o.w {
            let nodes = w.solve.solution.mesh().nodes();
            series.push(Series {
                label: format!("w, lambda = {}", o.lambda),
                points: nodes
                    .iter()
                    .zip(w.solve.values())
                    .filter(|p| window(*p.0))
                    .map(|(&x, &v)| (x, v))
                    .collect(),
                color: c,
                dashed: true,
                markers: false,
            });
        }
    }
    let grid: Vec<f64> = (0..=600).map(|j| x_lo + (x_hi - x_lo) * j as f64 / 600.0).collect();
    series.push(Series {
        label: "phi".into(),
        points: grid.iter().map(|&x| (x, inst.obstacle.value(x))).collect(),
        color: "#000000".into(),
        dashed: false,
        markers: false,
    });
    let a = inst.threshold();
    series.push(Series {
        label: "a off Omega".into(),
        points: vec![(x_lo, a), (pen.omega_left, a)],
        color: "#7f7f7f".into(),
        dashed: true,
        markers: false,
    });
    series.push(Series {
        label: String::new(),
        points: vec![(pen.omega_right, a), (x_hi, a)],
        color: "#7f7f7f".into(),
        dashed: true,
        markers: false,
    });
    Chart {
        title: "Solutions".into(),
        x_label: "x".into(),
        y_label: "value".into(),
        log_x: false,
        log_y: false,
        series,
    }
}

fn per_lambda(result: &SweepResult, label: &str, k: usize, dashed: bool, f: impl Fn(usize) -> f64) -> Series {
    Series {
        label: label.into(),
        points: result
            .verdict
            .records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lambda, f(i)))
            .collect(),
        color: color(k),
        dashed,
        markers: true,
    }
}

pub fn energies_chart(result: &SweepResult) -> Chart {
    let r = &result.verdict.records;
    let series = vec![
        per_lambda(result, "I(u)", 0, false, |i| r[i].i_u),
        per_lambda(result, "rho", 1, true, |i| r[i].rho),
        per_lambda(result, "I(w)", 2, false, |i| r[i].i_w),
        per_lambda(result, "Sigma", 3, true, |i| r[i].sigma),
    ];
    let log_y = all_positive(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    Chart {
        title: "Critical levels".into(),
        x_label: "lambda".into(),
        y_label: "energy".into(),
        log_x: true,
        log_y,
        series,
    }
}

pub fn concentration_chart(result: &SweepResult) -> Chart {
    let r = &result.verdict.records;
    let series = vec![
        per_lambda(result, "lambda int V u^2", 0, false, |i| r[i].conc_u),
        per_lambda(result, "lambda int V w^2", 1, false, |i| r[i].conc_w),
        per_lambda(result, "sup |u| off O", 2, true, |i| r[i].linf_u),
        per_lambda(result, "sup |w| off O", 3, true, |i| r[i].linf_w),
        per_lambda(result, "|u - psi|_H1", 4, false, |i| r[i].dist_limit_u),
    ];
    let log_y = all_positive(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    Chart {
        title: "Concentration".into(),
        x_label: "lambda".into(),
        y_label: "value".into(),
        log_x: true,
        log_y,
        series,
    }
}

//! SVG figures and their CSV tables.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::boundary::sample_boundary;
use crate::consensus::{min_time_consensus, region_of_consensus, Fleet};
use crate::error::{Error, Result};
use crate::model::{simulate, State, DEFAULT_SAMPLES};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Sets,
    Region,
    Phase,
}

impl std::str::FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sets" => Ok(Which::Sets),
            "region" => Ok(Which::Region),
            "phase" => Ok(Which::Phase),
            other => Err(Error::Config(format!(
                "unknown plot {other:?}; expected sets, region or phase"
            ))),
        }
    }
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Sets => "sets",
            Which::Region => "region",
            Which::Phase => "phase",
        }
    }
}

/// One row of a plot table; empty `t`/`u` mean "not applicable".
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub agent_id: String,
    pub t: Option<f64>,
    pub x1: f64,
    pub x2: f64,
    pub u: Option<f64>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn write_csv(path: &Path, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
    w.write_record(["agent_id", "t", "x1", "x2", "u"])
        .map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record([
            r.agent_id.clone(),
            opt(r.t),
            r.x1.to_string(),
            r.x2.to_string(),
            opt(r.u),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// A rectangular plotting area mapping data to pixels.
struct Panel {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Panel {
    fn new(x0: f64, y0: f64, w: f64, h: f64, pts: impl Iterator<Item = (f64, f64)>) -> Self {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for (a, b) in pts {
            lo = (lo.0.min(a), lo.1.min(b));
            hi = (hi.0.max(a), hi.1.max(b));
        }
        if !lo.0.is_finite() {
            lo = (-1.0, -1.0);
            hi = (1.0, 1.0);
        }
        let pad = |l: f64, h: f64| {
            let d = (h - l).max(1e-9) * 0.05;
            (l - d, h + d)
        };
        let (a, b) = pad(lo.0, hi.0);
        let (c, d) = pad(lo.1, hi.1);
        Panel {
            x0,
            y0,
            w,
            h,
            lo: (a, c),
            hi: (b, d),
        }
    }

    fn map(&self, (a, b): (f64, f64)) -> (f64, f64) {
        (
            self.x0 + (a - self.lo.0) / (self.hi.0 - self.lo.0) * self.w,
            self.y0 + self.h - (b - self.lo.1) / (self.hi.1 - self.lo.1) * self.h,
        )
    }

    fn frame(&self, svg: &mut String, xlabel: &str, ylabel: &str) {
        let _ = writeln!(
            svg,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444"/>"##,
            self.x0, self.y0, self.w, self.h
        );
        if xlabel.is_empty() && ylabel.is_empty() {
            return;
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{xlabel} [{:.4}, {:.4}]</text>"#,
            self.x0 + self.w / 2.0,
            self.y0 + self.h + 18.0,
            self.lo.0,
            self.hi.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{ylabel} [{:.4}, {:.4}]</text>"#,
            self.x0 - 10.0,
            self.y0 + self.h / 2.0,
            self.x0 - 10.0,
            self.y0 + self.h / 2.0,
            self.lo.1,
            self.hi.1
        );
    }

    fn polyline(&self, svg: &mut String, pts: &[(f64, f64)], color: &str, closed: bool) {
        let tag = if closed { "polygon" } else { "polyline" };
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<{tag} points="{}" fill="none" stroke="{color}" stroke-width="1.2"/>"#,
            coords.join(" ")
        );
    }

    fn dot(&self, svg: &mut String, p: (f64, f64), color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
    }
}

fn document(width: f64, height: f64, title: &str, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{:.1}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n{body}</svg>\n",
        width / 2.0
    )
}

fn legend(svg: &mut String, x: f64, y: f64, names: &[String]) {
    for (k, name) in names.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.1}" y="{:.1}" font-size="11" fill="{}">{name}</text>"#,
            y + 14.0 * k as f64,
            PALETTE[k % PALETTE.len()]
        );
    }
}

/// Render `which` for the fleet into `out_dir`; returns the files written.
pub fn plot(fleet: &Fleet, which: Which, time: Option<f64>, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let p = &fleet.params;
    let names: Vec<String> = fleet.agents.iter().map(|a| a.id.clone()).collect();
    let mut rows = Vec::new();
    let mut svg = String::new();
    let (width, height) = (720.0, 560.0);
    let title;
    match which {
        Which::Sets => {
            let out = min_time_consensus(fleet).ok();
            let t = time.or(out.as_ref().map(|o| o.t_bar_f)).unwrap_or(1.0);
            title = format!("Attainable sets at t = {t:.4}");
            let mut curves = Vec::new();
            for a in &fleet.agents {
                let poly: Vec<(f64, f64)> = if t > 0.0 {
                    sample_boundary(a.x0, p.beta, p.b, t, 512)?
                        .polygon()
                        .vertices()
                        .iter()
                        .map(|v| (v.x1, v.x2))
                        .collect()
                } else {
                    vec![(a.x0.x1, a.x0.x2)]
                };
                for &(x1, x2) in &poly {
                    rows.push(Row { agent_id: a.id.clone(), t: Some(t), x1, x2, u: None });
                }
                curves.push(poly);
            }
            let panel = Panel::new(70.0, 40.0, 560.0, 460.0, curves.iter().flatten().copied());
            panel.frame(&mut svg, "x1", "x2");
            for (k, c) in curves.iter().enumerate() {
                panel.polyline(&mut svg, c, PALETTE[k % PALETTE.len()], true);
            }
            if let Some(o) = out.filter(|o| time.is_none_or(|t| (t - o.t_bar_f).abs() < 1e-9)) {
                panel.dot(&mut svg, (o.x_bar.x1, o.x_bar.x2), "black");
            }
            legend(&mut svg, 640.0, 50.0, &names);
        }
        Which::Region => {
            title = "Region of consensus".to_string();
            let region = region_of_consensus(fleet);
            let pts: Vec<(f64, f64)> = region.polygon.vertices().iter().map(|v| (v.x1, v.x2)).collect();
            for &(x1, x2) in &pts {
                rows.push(Row { agent_id: "region".into(), t: Some(f64::INFINITY), x1, x2, u: None });
            }
            let starts: Vec<(f64, f64)> = fleet.agents.iter().map(|a| (a.x0.x1, a.x0.x2)).collect();
            let panel = Panel::new(70.0, 40.0, 560.0, 460.0, pts.iter().chain(&starts).copied());
            panel.frame(&mut svg, "x1", "x2");
            panel.polyline(&mut svg, &pts, "#1f77b4", true);
            for (k, &s) in starts.iter().enumerate() {
                panel.dot(&mut svg, s, PALETTE[k % PALETTE.len()]);
            }
            legend(&mut svg, 640.0, 50.0, &names);
        }
        Which::Phase => {
            let out = min_time_consensus(fleet)?;
            title = format!("Trajectories to ({:.4}, {:.4}) at t = {:.4}", out.x_bar.x1, out.x_bar.x2, out.t_bar_f);
            let mut paths = Vec::new();
            let mut inputs = Vec::new();
            for (a, plan) in fleet.agents.iter().zip(&out.plans) {
                let c = plan.steering.control;
                let traj = simulate(a.x0, &c, p, DEFAULT_SAMPLES)?;
                let mut path = Vec::new();
                let mut input = Vec::new();
                for &(t, State { x1, x2 }) in &traj.points {
                    let u = c.input_at(t);
                    rows.push(Row { agent_id: a.id.clone(), t: Some(t), x1, x2, u: Some(u) });
                    path.push((x1, x2));
                    input.push((t, u));
                }
                paths.push(path);
                inputs.push(input);
            }
            let phase = Panel::new(70.0, 40.0, 380.0, 460.0, paths.iter().flatten().copied());
            phase.frame(&mut svg, "x1", "x2");
            for (k, path) in paths.iter().enumerate() {
                phase.polyline(&mut svg, path, PALETTE[k % PALETTE.len()], false);
            }
            phase.dot(&mut svg, (out.x_bar.x1, out.x_bar.x2), "black");
            let lane = 460.0 / fleet.agents.len() as f64;
            for (k, input) in inputs.iter().enumerate() {
                let panel = Panel::new(
                    500.0,
                    40.0 + lane * k as f64 + 4.0,
                    200.0,
                    lane - 8.0,
                    [(0.0, -1.0), (out.t_bar_f.max(1e-9), 1.0)].into_iter(),
                );
                panel.polyline(&mut svg, input, PALETTE[k % PALETTE.len()], false);
                panel.frame(&mut svg, "", "");
            }
        }
    }
    let name = which.name();
    let svg_path = out_dir.join(format!("{name}.svg"));
    let csv_path = out_dir.join(format!("{name}.csv"));
    std::fs::write(&svg_path, document(width, height, &title, &svg))?;
    write_csv(&csv_path, &rows)?;
    Ok(vec![svg_path, csv_path])
}

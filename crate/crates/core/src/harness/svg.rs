use std::fmt::Write;

use super::PipelineArtifacts;
use crate::tsp::{Instance, Tour};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// T and S on the original instance, crossing points marked.
    Tours,
    /// T and the edges of S styled by partition class, on the subdivided instance.
    Partition,
    /// The partition picture with every dual arborescence drawn on top.
    Arborescence,
}

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn new(inst: &Instance) -> Self {
        let pts: Vec<(f64, f64)> = inst.points().iter().map(|p| p.to_f64()).collect();
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = if span > 0.0 {
            (SIZE - 2.0 * MARGIN) / span
        } else {
            1.0
        };
        Frame {
            min_x,
            min_y,
            scale,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x) * self.scale,
            SIZE - MARGIN - (y - self.min_y) * self.scale,
        )
    }
}

fn line(out: &mut String, frame: &Frame, a: (f64, f64), b: (f64, f64), class: &str) {
    let (x1, y1) = frame.map(a);
    let (x2, y2) = frame.map(b);
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
    );
}

fn tour_lines(out: &mut String, frame: &Frame, inst: &Instance, tour: &Tour, class: &str) {
    for (a, b) in tour.edges() {
        line(
            out,
            frame,
            inst.point(a).to_f64(),
            inst.point(b).to_f64(),
            class,
        );
    }
}

fn vertices(out: &mut String, frame: &Frame, inst: &Instance, from: usize) {
    for (i, p) in inst.points().iter().enumerate() {
        let (x, y) = frame.map(p.to_f64());
        let class = if i < from { "vertex" } else { "added" };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="4"/>"#
        );
    }
}

const STYLE: &str = "<style>
.t { stroke: #c0392b; stroke-width: 3; }
.s { stroke: #27ae60; stroke-width: 1.5; }
.s-interior { stroke: #2c3e8f; stroke-width: 1.5; }
.s-compatible { stroke: #27ae60; stroke-width: 3; }
.s-exterior { stroke: #2c3e8f; stroke-width: 1.5; stroke-dasharray: 2 4; }
.s-boundary { stroke: #2c3e8f; stroke-width: 1.5; stroke-dasharray: 10 5; }
.dual { stroke: #8e44ad; stroke-width: 2; marker-end: url(#arrow); }
.vertex { fill: #000; }
.added { fill: #2980b9; }
.site { fill: #8e44ad; }
</style>";

/// An SVG 1.1 document on a 1000 x 1000 canvas. Output depends only on the
/// artifacts, so equal runs give equal bytes.
pub fn render_svg(stage: Stage, art: &PipelineArtifacts) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str(STYLE);
    out.push('\n');
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" \
         markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" \
         fill=\"#8e44ad\"/></marker></defs>\n",
    );
    match stage {
        Stage::Tours => {
            let inst = &art.instance;
            let frame = Frame::new(inst);
            tour_lines(&mut out, &frame, inst, &art.t, "t");
            tour_lines(&mut out, &frame, inst, &art.s, "s");
            vertices(&mut out, &frame, inst, inst.len());
            for p in art.subdivided.report.points() {
                let (x, y) = frame.map(p.to_f64());
                let _ = writeln!(
                    out,
                    r#"<circle class="added" cx="{x:.3}" cy="{y:.3}" r="5"/>"#
                );
            }
        }
        Stage::Partition | Stage::Arborescence => {
            let sub = &art.subdivided;
            let inst = &sub.instance;
            let frame = Frame::new(inst);
            tour_lines(&mut out, &frame, inst, &sub.t, "t");
            let p = &art.partition;
            for e in sub.s.edges() {
                let class = if p.s1.contains(&e) {
                    "s-interior"
                } else if p.s2.contains(&e) {
                    "s-exterior"
                } else {
                    "s-boundary"
                };
                line(
                    &mut out,
                    &frame,
                    inst.point(e.0).to_f64(),
                    inst.point(e.1).to_f64(),
                    class,
                );
            }
            for &e in &p.s1_prime {
                let (a, b) = (inst.point(e.0).to_f64(), inst.point(e.1).to_f64());
                line(&mut out, &frame, a, b, "s-compatible");
            }
            vertices(&mut out, &frame, inst, art.instance.len());
            if stage == Stage::Arborescence {
                for sa in &art.arborescences {
                    let sites: Vec<(f64, f64)> = (0..sa.regions.len())
                        .map(|id| sa.regions.site(inst, id))
                        .collect();
                    let _ = writeln!(out, r#"<g class="arborescence" data-role="{}">"#, sa.role);
                    for e in sa.arborescence.edges() {
                        line(&mut out, &frame, sites[e.from], sites[e.to], "dual");
                    }
                    for &s in &sites {
                        let (x, y) = frame.map(s);
                        let _ = writeln!(
                            out,
                            r#"<circle class="site" cx="{x:.3}" cy="{y:.3}" r="6"/>"#
                        );
                    }
                    out.push_str("</g>\n");
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

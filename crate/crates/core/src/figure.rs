//! Before/after window diagrams as standalone SVG.
//!
//! The horizontal axis is the domain parameter across the step's window;
//! every codomain edge met by a fragment gets its own horizontal band, with
//! edge coordinate 0 at the bottom and 1 at the top.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num::ToPrimitive;

use crate::graph::{EdgeId, Graph};
use crate::plmap::TrackSegment;
use crate::rational::{format_rational, Rational};
use crate::steps::{HomotopyStep, MapRole};

const PANEL_WIDTH: f64 = 320.0;
const BAND_HEIGHT: f64 = 90.0;
const MARGIN: f64 = 40.0;

fn color(role: MapRole) -> &'static str {
    match role {
        MapRole::F => "#1f5fa8",
        MapRole::G => "#c0392b",
        MapRole::Both => "#555555",
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

struct Frame<'a> {
    lo: f64,
    hi: f64,
    bands: &'a [EdgeId],
}

impl Frame<'_> {
    fn x(&self, panel: usize, t: &Rational) -> f64 {
        let span = (self.hi - self.lo).max(f64::EPSILON);
        MARGIN + panel as f64 * (PANEL_WIDTH + MARGIN) + (to_f64(t) - self.lo) / span * PANEL_WIDTH
    }

    fn y(&self, carrier: EdgeId, a: &Rational) -> f64 {
        let band = self.bands.iter().position(|e| *e == carrier).unwrap_or(0) as f64;
        MARGIN + band * BAND_HEIGHT + (1.0 - to_f64(a)) * (BAND_HEIGHT - 20.0)
    }
}

fn draw_segments(out: &mut String, frame: &Frame, panel: usize, role: MapRole, segs: &[TrackSegment]) {
    for s in segs {
        writeln!(
            out,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2"/>"#,
            frame.x(panel, &s.t0),
            frame.y(s.carrier, &s.a0),
            frame.x(panel, &s.t1),
            frame.y(s.carrier, &s.a1),
            color(role)
        )
        .unwrap();
    }
    for pair in segs.windows(2) {
        if pair[0].carrier != pair[1].carrier {
            writeln!(
                out,
                r#"  <line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{}" stroke-dasharray="3,3"/>"#,
                frame.y(pair[0].carrier, &pair[0].a1),
                frame.y(pair[1].carrier, &pair[1].a0),
                color(role),
                x = frame.x(panel, &pair[0].t1),
            )
            .unwrap();
        }
    }
}

/// Two panels, the replaced fragments on the left and their replacements on
/// the right. `None` when the step has no fragment.
pub fn step_svg(step: &HomotopyStep, codomain: &Graph) -> Option<String> {
    let (edge, lo, hi) = step.window()?;
    let frags: Vec<_> = step.fragments.iter().filter(|f| f.edge == edge).collect();
    let bands: Vec<EdgeId> = frags
        .iter()
        .flat_map(|f| f.replaced.iter().chain(&f.replacement).map(|s| s.carrier))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let frame = Frame { lo: to_f64(lo), hi: to_f64(hi), bands: &bands };
    let width = 2.0 * PANEL_WIDTH + 3.0 * MARGIN;
    let height = bands.len() as f64 * BAND_HEIGHT + 2.0 * MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (panel, title) in ["before", "after"].iter().enumerate() {
        let x0 = frame.x(panel, lo);
        writeln!(
            out,
            r#"  <text x="{x0:.2}" y="{:.2}" font-family="sans-serif" font-size="13">{} {} [{}, {}]</text>"#,
            MARGIN - 18.0,
            title,
            step.kind.as_str(),
            format_rational(lo),
            format_rational(hi)
        )
        .unwrap();
        for (i, e) in bands.iter().enumerate() {
            let top = MARGIN + i as f64 * BAND_HEIGHT;
            writeln!(
                out,
                r##"  <rect x="{x0:.2}" y="{top:.2}" width="{PANEL_WIDTH:.2}" height="{:.2}" fill="none" stroke="#bbbbbb"/>"##,
                BAND_HEIGHT - 20.0
            )
            .unwrap();
            writeln!(
                out,
                r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
                x0 + PANEL_WIDTH + 4.0,
                top + (BAND_HEIGHT - 20.0) / 2.0,
                codomain.edge_name(*e)
            )
            .unwrap();
        }
        for frag in &frags {
            let segs = if panel == 0 { &frag.replaced } else { &frag.replacement };
            draw_segments(&mut out, &frame, panel, frag.map, segs);
        }
    }
    writeln!(out, "</svg>").unwrap();
    Some(out)
}

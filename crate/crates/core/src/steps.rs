//! Audit trail of the homotopies applied to a pair of maps.

use std::fmt::Write as _;

use crate::graph::{EdgeId, GraphPoint, VertexId};
use crate::plmap::{PLMap, TrackSegment};
use crate::rational::{format_rational, Rational};
use crate::text::format_segments;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    GeneralPosition,
    PushOff,
    NormalForm,
    ForkManeuver,
    ConstantDeformation,
    Rotation,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::GeneralPosition => "GeneralPosition",
            StepKind::PushOff => "PushOff",
            StepKind::NormalForm => "NormalForm",
            StepKind::ForkManeuver => "ForkManeuver",
            StepKind::ConstantDeformation => "ConstantDeformation",
            StepKind::Rotation => "Rotation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapRole {
    F,
    G,
    Both,
}

impl MapRole {
    pub fn as_str(self) -> &'static str {
        match self {
            MapRole::F => "f",
            MapRole::G => "g",
            MapRole::Both => "both",
        }
    }
}

/// One replaced piece of one track.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub map: MapRole,
    pub edge: EdgeId,
    pub lo: Rational,
    pub hi: Rational,
    pub replaced: Vec<TrackSegment>,
    pub replacement: Vec<TrackSegment>,
}

/// A changed vertex image (push-off at a domain vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMove {
    pub map: MapRole,
    pub vertex: VertexId,
    pub from: GraphPoint,
    pub to: GraphPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyStep {
    pub kind: StepKind,
    pub map: MapRole,
    pub fragments: Vec<Fragment>,
    pub vertex_moves: Vec<VertexMove>,
}

impl HomotopyStep {
    pub fn new(kind: StepKind, map: MapRole) -> Self {
        HomotopyStep { kind, map, fragments: Vec::new(), vertex_moves: Vec::new() }
    }

    /// Edge and parameter window of the first fragment.
    pub fn window(&self) -> Option<(EdgeId, &Rational, &Rational)> {
        self.fragments.first().map(|f| (f.edge, &f.lo, &f.hi))
    }

    /// Every replacement fragment keeps the endpoints of the piece it
    /// replaced, except where a vertex image moved.
    pub fn endpoints_preserved(&self, reference: &PLMap) -> bool {
        let cod = reference.codomain();
        let dom = reference.domain();
        let moved = |edge: EdgeId, at_start: bool, role: MapRole| {
            let v = if at_start { dom.origin(edge) } else { dom.terminus(edge) };
            self.vertex_moves.iter().any(|m| m.vertex == v && m.map == role)
        };
        self.fragments.iter().all(|frag| {
            let (Some(r0), Some(r1)) = (frag.replaced.first(), frag.replaced.last()) else {
                return false;
            };
            let (Some(n0), Some(n1)) = (frag.replacement.first(), frag.replacement.last()) else {
                return false;
            };
            let start_ok = r0.start_point(cod) == n0.start_point(cod)
                || (num::Zero::is_zero(&frag.lo) && moved(frag.edge, true, frag.map));
            let end_ok = r1.end_point(cod) == n1.end_point(cod)
                || (num::One::is_one(&frag.hi) && moved(frag.edge, false, frag.map));
            start_ok && end_ok && r0.t0 == n0.t0 && r1.t1 == n1.t1
        })
    }
}

/// Line-based trace: one `step` line per step, followed by the replaced
/// (`-`) and replacement (`+`) track fragments.
pub fn format_trace(steps: &[HomotopyStep], reference: &PLMap) -> String {
    let dom = reference.domain();
    let cod = reference.codomain();
    let mut out = String::new();
    for (n, step) in steps.iter().enumerate() {
        let (edge, window) = match step.window() {
            Some((e, lo, hi)) => (dom.edge_name(e).to_string(), format!("{},{}", format_rational(lo), format_rational(hi))),
            None => ("-".to_string(), "-".to_string()),
        };
        writeln!(out, "step {} {} map={} edge={} window={}", n + 1, step.kind.as_str(), step.map.as_str(), edge, window)
            .unwrap();
        for mv in &step.vertex_moves {
            writeln!(
                out,
                "  vimage {} {} {} -> {}",
                mv.map.as_str(),
                dom.vertex_name(mv.vertex),
                cod.format_point(&mv.from),
                cod.format_point(&mv.to)
            )
            .unwrap();
        }
        for frag in &step.fragments {
            let name = dom.edge_name(frag.edge);
            writeln!(out, "  - {} track {} : {}", frag.map.as_str(), name, format_segments(cod, &frag.replaced)).unwrap();
            writeln!(out, "  + {} track {} : {}", frag.map.as_str(), name, format_segments(cod, &frag.replacement))
                .unwrap();
        }
    }
    out
}

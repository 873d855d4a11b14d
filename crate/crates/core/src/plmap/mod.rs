//! Piecewise-linear maps between graphs.
//!
//! A map sends every domain edge (parameterized by `[0, 1]` from origin to
//! terminus) along a track: a sequence of affine segments, each moving
//! inside one closed codomain edge. Segment coordinates are stored in the
//! carrier edge's own parameterization, so loops are unambiguous.

mod coincidence;
mod general_position;

use std::sync::Arc;

use num::{One, Zero};

pub use coincidence::{coincidences, edge_coincidences, CoincidencePoint, Transversality};
pub use general_position::general_position;
pub(crate) use coincidence::scan_edge;

use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, Graph, GraphPoint, VertexId};
use crate::rational::{format_rational, half, in_closed_unit, lerp, Rational};

/// One affine piece of a track: over `[t0, t1]` the image sweeps the carrier
/// edge from coordinate `a0` to `a1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrackSegment {
    pub t0: Rational,
    pub t1: Rational,
    pub carrier: EdgeId,
    pub a0: Rational,
    pub a1: Rational,
}

impl TrackSegment {
    pub fn new(t0: Rational, t1: Rational, carrier: EdgeId, a0: Rational, a1: Rational) -> Self {
        debug_assert!(t0 < t1, "zero-length segment");
        TrackSegment { t0, t1, carrier, a0, a1 }
    }

    /// Segment from `p` to `q`, which must share a closed edge.
    ///
    /// An interior endpoint fixes the carrier. Two equal vertices give a
    /// constant segment; two distinct vertices use the smallest edge joining
    /// them. On a loop the vertex end nearest the interior endpoint is used;
    /// on a tie the segment is read as moving toward increasing coordinate.
    pub fn between(g: &Graph, t0: Rational, t1: Rational, p: &GraphPoint, q: &GraphPoint) -> Option<Self> {
        if t0 >= t1 {
            return None;
        }
        let vertex_coord = |e: EdgeId, v: VertexId, near: &Rational, at_end: bool| -> Option<Rational> {
            let (o, t) = (g.origin(e), g.terminus(e));
            if o == v && t == v {
                let high = if at_end { *near >= half() } else { *near > half() };
                Some(if high { Rational::one() } else { Rational::zero() })
            } else if o == v {
                Some(Rational::zero())
            } else if t == v {
                Some(Rational::one())
            } else {
                None
            }
        };
        let (carrier, a0, a1) = match (p, q) {
            (GraphPoint::Interior(e, a), GraphPoint::Interior(f, b)) => {
                if e != f {
                    return None;
                }
                (*e, a.clone(), b.clone())
            }
            (GraphPoint::Interior(e, a), GraphPoint::Vertex(v)) => (*e, a.clone(), vertex_coord(*e, *v, a, true)?),
            (GraphPoint::Vertex(v), GraphPoint::Interior(e, b)) => (*e, vertex_coord(*e, *v, b, false)?, b.clone()),
            (GraphPoint::Vertex(v), GraphPoint::Vertex(w)) if v == w => {
                let d = g.darts_at(*v)[0];
                let c = d.edge_coord(&Rational::zero());
                (d.edge, c.clone(), c)
            }
            (GraphPoint::Vertex(v), GraphPoint::Vertex(w)) => {
                let e = g.darts_at(*v).iter().map(|d| d.edge).find(|&e| {
                    let (o, t) = (g.origin(e), g.terminus(e));
                    (o == *v && t == *w) || (o == *w && t == *v)
                })?;
                if g.origin(e) == *v {
                    (e, Rational::zero(), Rational::one())
                } else {
                    (e, Rational::one(), Rational::zero())
                }
            }
        };
        Some(TrackSegment { t0, t1, carrier, a0, a1 })
    }

    pub fn is_constant(&self) -> bool {
        self.a0 == self.a1
    }

    pub fn coord_at(&self, t: &Rational) -> Rational {
        if self.is_constant() {
            return self.a0.clone();
        }
        let frac = (t - &self.t0) / (&self.t1 - &self.t0);
        lerp(&self.a0, &self.a1, &frac)
    }

    /// d(coordinate)/dt
    pub fn slope(&self) -> Rational {
        (&self.a1 - &self.a0) / (&self.t1 - &self.t0)
    }

    pub fn point_at(&self, g: &Graph, t: &Rational) -> GraphPoint {
        GraphPoint::on_edge(g, self.carrier, self.coord_at(t))
    }

    pub fn start_point(&self, g: &Graph) -> GraphPoint {
        GraphPoint::on_edge(g, self.carrier, self.a0.clone())
    }

    pub fn end_point(&self, g: &Graph) -> GraphPoint {
        GraphPoint::on_edge(g, self.carrier, self.a1.clone())
    }

    /// The same motion restricted to `[lo, hi]` within `[t0, t1]`.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Self {
        TrackSegment {
            t0: lo.clone(),
            t1: hi.clone(),
            carrier: self.carrier,
            a0: self.coord_at(lo),
            a1: self.coord_at(hi),
        }
    }
}

/// The image path of one domain edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeTrack {
    segments: Vec<TrackSegment>,
}

impl EdgeTrack {
    /// Checks coverage of `[0, 1]`, coordinate ranges and continuity.
    pub fn new(g: &Graph, segments: Vec<TrackSegment>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidMap(msg));
        if segments.is_empty() {
            return bad("empty track".into());
        }
        if !segments[0].t0.is_zero() || !segments.last().unwrap().t1.is_one() {
            return bad("track does not cover [0, 1]".into());
        }
        for (i, s) in segments.iter().enumerate() {
            if s.t0 >= s.t1 {
                return bad(format!("zero-length interval at {}", format_rational(&s.t0)));
            }
            if s.carrier.0 >= g.edge_count() || !in_closed_unit(&s.a0) || !in_closed_unit(&s.a1) {
                return bad(format!("segment {i} leaves its carrier edge"));
            }
            if i > 0 {
                let prev = &segments[i - 1];
                if prev.t1 != s.t0 {
                    return bad(format!("gap at {}", format_rational(&prev.t1)));
                }
                if prev.end_point(g) != s.start_point(g) {
                    return bad(format!("track jumps at {}", format_rational(&s.t0)));
                }
            }
        }
        Ok(EdgeTrack { segments })
    }

    pub(crate) fn from_segments_unchecked(segments: Vec<TrackSegment>) -> Self {
        EdgeTrack { segments }
    }

    /// Track through the listed `(parameter, point)` breakpoints.
    pub fn from_breakpoints(g: &Graph, points: &[(Rational, GraphPoint)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("a track needs at least two breakpoints".into()));
        }
        let mut segments = Vec::with_capacity(points.len() - 1);
        for w in points.windows(2) {
            let (t0, p) = &w[0];
            let (t1, q) = &w[1];
            let seg = TrackSegment::between(g, t0.clone(), t1.clone(), p, q).ok_or_else(|| {
                Error::InvalidMap(format!(
                    "{} and {} do not share a closed edge (or parameters not increasing)",
                    g.format_point(p),
                    g.format_point(q)
                ))
            })?;
            segments.push(seg);
        }
        EdgeTrack::new(g, segments)
    }

    /// Constant track at `p`.
    pub fn constant(g: &Graph, p: &GraphPoint) -> Self {
        let seg = TrackSegment::between(g, Rational::zero(), Rational::one(), p, p).unwrap();
        EdgeTrack { segments: vec![seg] }
    }

    pub fn segments(&self) -> &[TrackSegment] {
        &self.segments
    }

    /// Breakpoint parameters including 0 and 1.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.segments.iter().map(|s| s.t0.clone()).collect();
        out.push(Rational::one());
        out
    }

    pub fn start_point(&self, g: &Graph) -> GraphPoint {
        self.segments[0].start_point(g)
    }

    pub fn end_point(&self, g: &Graph) -> GraphPoint {
        self.segments.last().unwrap().end_point(g)
    }

    /// Index of a segment containing `t` (the left one at a breakpoint).
    pub fn segment_index(&self, t: &Rational) -> usize {
        self.segments.partition_point(|s| s.t1 < *t).min(self.segments.len() - 1)
    }

    pub fn evaluate(&self, g: &Graph, t: &Rational) -> GraphPoint {
        self.segments[self.segment_index(t)].point_at(g, t)
    }

    /// Splits segments so that every parameter in `cuts` is a breakpoint.
    pub fn refine(&self, cuts: &[Rational]) -> Self {
        let mut out = Vec::with_capacity(self.segments.len() + cuts.len());
        for s in &self.segments {
            let mut inner: Vec<&Rational> = cuts.iter().filter(|c| **c > s.t0 && **c < s.t1).collect();
            inner.sort();
            inner.dedup();
            let mut lo = s.t0.clone();
            for c in inner {
                out.push(s.restrict(&lo, c));
                lo = c.clone();
            }
            out.push(s.restrict(&lo, &s.t1));
        }
        EdgeTrack { segments: out }
    }

    /// Segments covering `[lo, hi]`, cut to that interval.
    pub fn window(&self, lo: &Rational, hi: &Rational) -> Vec<TrackSegment> {
        self.segments
            .iter()
            .filter(|s| s.t1 > *lo && s.t0 < *hi)
            .map(|s| {
                let a = if s.t0 > *lo { s.t0.clone() } else { lo.clone() };
                let b = if s.t1 < *hi { s.t1.clone() } else { hi.clone() };
                s.restrict(&a, &b)
            })
            .collect()
    }

    /// Replaces the track on `[lo, hi]` by `replacement`, which must cover
    /// exactly that interval. Returns the new track and the removed pieces.
    pub fn splice(&self, lo: &Rational, hi: &Rational, replacement: Vec<TrackSegment>) -> (Self, Vec<TrackSegment>) {
        let refined = self.refine(&[lo.clone(), hi.clone()]);
        let mut out = Vec::new();
        let mut removed = Vec::new();
        let mut inserted = false;
        for s in refined.segments {
            if s.t1 <= *lo {
                out.push(s);
            } else if s.t0 >= *hi {
                if !inserted {
                    out.extend(replacement.iter().cloned());
                    inserted = true;
                }
                out.push(s);
            } else {
                removed.push(s);
            }
        }
        if !inserted {
            out.extend(replacement);
        }
        (EdgeTrack { segments: out }, removed)
    }
}

/// Refines two tracks of the same domain edge to the union of their
/// breakpoints.
pub fn common_refinement(s: &EdgeTrack, u: &EdgeTrack) -> (EdgeTrack, EdgeTrack) {
    let mut cuts = s.breakpoints();
    cuts.extend(u.breakpoints());
    cuts.sort();
    cuts.dedup();
    (s.refine(&cuts), u.refine(&cuts))
}

/// A piecewise-linear map of graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMap {
    name: String,
    domain: Arc<Graph>,
    codomain: Arc<Graph>,
    vertex_images: Vec<GraphPoint>,
    tracks: Vec<EdgeTrack>,
}

impl PLMap {
    pub fn new(
        name: &str,
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        vertex_images: Vec<GraphPoint>,
        tracks: Vec<EdgeTrack>,
    ) -> Result<Self> {
        if vertex_images.len() != domain.vertex_count() || tracks.len() != domain.edge_count() {
            return Err(Error::InvalidMap("every vertex and edge needs an image".into()));
        }
        for p in &vertex_images {
            p.check_on(&codomain)?;
        }
        for e in domain.edges() {
            let track = &tracks[e.0];
            let start = &vertex_images[domain.origin(e).0];
            let end = &vertex_images[domain.terminus(e).0];
            if track.start_point(&codomain) != *start || track.end_point(&codomain) != *end {
                return Err(Error::InvalidMap(format!(
                    "track of `{}` does not match the images of its endpoints",
                    domain.edge_name(e)
                )));
            }
        }
        Ok(PLMap { name: name.to_string(), domain, codomain, vertex_images, tracks })
    }

    /// Vertex images are read off the track endpoints.
    pub fn from_tracks(name: &str, domain: Arc<Graph>, codomain: Arc<Graph>, tracks: Vec<EdgeTrack>) -> Result<Self> {
        if tracks.len() != domain.edge_count() {
            return Err(Error::InvalidMap("every edge needs a track".into()));
        }
        let mut images: Vec<Option<GraphPoint>> = vec![None; domain.vertex_count()];
        for e in domain.edges() {
            images[domain.origin(e).0].get_or_insert(tracks[e.0].start_point(&codomain));
            images[domain.terminus(e).0].get_or_insert(tracks[e.0].end_point(&codomain));
        }
        let images = images.into_iter().map(|p| p.expect("connected nontrivial domain")).collect();
        PLMap::new(name, domain, codomain, images, tracks)
    }

    pub fn constant(name: &str, domain: Arc<Graph>, codomain: Arc<Graph>, p: &GraphPoint) -> Result<Self> {
        p.check_on(&codomain)?;
        let tracks = domain.edges().map(|_| EdgeTrack::constant(&codomain, p)).collect();
        let images = vec![p.clone(); domain.vertex_count()];
        PLMap::new(name, domain, codomain, images, tracks)
    }

    pub fn identity(name: &str, g: Arc<Graph>) -> Self {
        let tracks = g
            .edges()
            .map(|e| {
                EdgeTrack::from_segments_unchecked(vec![TrackSegment::new(
                    Rational::zero(),
                    Rational::one(),
                    e,
                    Rational::zero(),
                    Rational::one(),
                )])
            })
            .collect();
        let images = g.vertices().map(GraphPoint::Vertex).collect();
        PLMap { name: name.to_string(), domain: g.clone(), codomain: g, vertex_images: images, tracks }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn domain(&self) -> &Arc<Graph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Graph> {
        &self.codomain
    }

    pub fn vertex_image(&self, v: VertexId) -> &GraphPoint {
        &self.vertex_images[v.0]
    }

    pub fn vertex_images(&self) -> &[GraphPoint] {
        &self.vertex_images
    }

    pub fn track(&self, e: EdgeId) -> &EdgeTrack {
        &self.tracks[e.0]
    }

    pub fn tracks(&self) -> &[EdgeTrack] {
        &self.tracks
    }

    /// Image of a domain point, in canonical form.
    pub fn evaluate(&self, p: &GraphPoint) -> Result<GraphPoint> {
        p.check_on(&self.domain)?;
        Ok(self.eval(p))
    }

    pub(crate) fn eval(&self, p: &GraphPoint) -> GraphPoint {
        match p {
            GraphPoint::Vertex(v) => self.vertex_images[v.0].clone(),
            GraphPoint::Interior(e, t) => self.tracks[e.0].evaluate(&self.codomain, t),
        }
    }

    pub fn same_graphs(&self, other: &PLMap) -> bool {
        self.domain == other.domain && self.codomain == other.codomain
    }

    /// Replaces the track of `edge` on `[lo, hi]`; the replacement must
    /// start and end at the current values there.
    pub fn with_window(&self, edge: EdgeId, lo: &Rational, hi: &Rational, replacement: Vec<TrackSegment>) -> (Self, Vec<TrackSegment>) {
        let (track, removed) = self.tracks[edge.0].splice(lo, hi, replacement);
        let mut out = self.clone();
        out.tracks[edge.0] = track;
        (out, removed)
    }

    pub(crate) fn set_vertex_image(&mut self, v: VertexId, p: GraphPoint) {
        self.vertex_images[v.0] = p;
    }

    /// Re-runs every invariant check; used by tests and after surgery.
    pub fn check(&self) -> Result<()> {
        for (e, track) in self.tracks.iter().enumerate() {
            EdgeTrack::new(&self.codomain, track.segments.clone()).map_err(|err| {
                Error::InvalidMap(format!("edge `{}`: {err}", self.domain.edge_name(EdgeId(e))))
            })?;
        }
        PLMap::new(
            &self.name,
            self.domain.clone(),
            self.codomain.clone(),
            self.vertex_images.clone(),
            self.tracks.clone(),
        )
        .map(|_| ())
    }
}

/// Point on dart `d` at distance `depth` from its base, canonical.
pub fn point_on_dart(g: &Graph, d: Dart, depth: &Rational) -> GraphPoint {
    GraphPoint::on_edge(g, d.edge, d.edge_coord(depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::q;

    fn two_loop_track() -> (Arc<Graph>, EdgeTrack) {
        let g = Arc::new(catalog::figure_eight());
        let a = g.edge_by_name("a").unwrap();
        let b = g.edge_by_name("b").unwrap();
        let track = EdgeTrack::new(
            &g,
            vec![
                TrackSegment::new(q(0, 1), q(1, 2), a, q(0, 1), q(1, 1)),
                TrackSegment::new(q(1, 2), q(1, 1), b, q(0, 1), q(1, 1)),
            ],
        )
        .unwrap();
        (g, track)
    }

    #[test]
    fn evaluate_two_segment_track() {
        let (g, track) = two_loop_track();
        let a = g.edge_by_name("a").unwrap();
        assert_eq!(track.evaluate(&g, &q(1, 4)), GraphPoint::Interior(a, q(1, 2)));
        assert_eq!(track.evaluate(&g, &q(1, 2)), GraphPoint::Vertex(VertexId(0)));
        // dense sampling against the affine formula on each piece
        for k in 0..=64 {
            let t = q(k, 64);
            let expected = if t <= q(1, 2) {
                GraphPoint::on_edge(&g, a, &t * q(2, 1))
            } else {
                GraphPoint::on_edge(&g, g.edge_by_name("b").unwrap(), (&t - q(1, 2)) * q(2, 1))
            };
            assert_eq!(track.evaluate(&g, &t), expected);
        }
    }

    #[test]
    fn evaluate_vertex_and_sweep() {
        let g = Arc::new(catalog::figure_eight());
        let id = PLMap::identity("id", g.clone());
        assert_eq!(id.evaluate(&GraphPoint::Vertex(VertexId(0))).unwrap(), GraphPoint::Vertex(VertexId(0)));
        let theta = Arc::new(catalog::theta());
        let seg = Arc::new(catalog::path(1));
        let rho = theta.edge_by_name("e1").unwrap();
        let sigma = seg.edge_by_name("e1").unwrap();
        let f = PLMap::from_tracks(
            "f",
            seg.clone(),
            theta.clone(),
            vec![EdgeTrack::new(&theta, vec![TrackSegment::new(q(0, 1), q(1, 1), rho, q(1, 1), q(0, 1))]).unwrap()],
        )
        .unwrap();
        assert_eq!(f.evaluate(&GraphPoint::Interior(sigma, q(1, 2))).unwrap(), GraphPoint::Interior(rho, q(1, 2)));
        assert!(f.evaluate(&GraphPoint::Interior(EdgeId(7), q(1, 2))).is_err());
    }

    #[test]
    fn refinement_union_and_values() {
        let g = catalog::path(1);
        let e = EdgeId(0);
        let s = EdgeTrack::from_breakpoints(
            &g,
            &[(q(0, 1), GraphPoint::Interior(e, q(1, 4))), (q(1, 2), GraphPoint::Interior(e, q(3, 4))), (q(1, 1), GraphPoint::Interior(e, q(1, 8)))],
        )
        .unwrap();
        let u = EdgeTrack::from_breakpoints(
            &g,
            &[(q(0, 1), GraphPoint::Vertex(VertexId(0))), (q(1, 3), GraphPoint::Interior(e, q(1, 2))), (q(1, 1), GraphPoint::Vertex(VertexId(1)))],
        )
        .unwrap();
        let (s2, u2) = common_refinement(&s, &u);
        let expected = vec![q(0, 1), q(1, 3), q(1, 2), q(1, 1)];
        assert_eq!(s2.breakpoints(), expected);
        assert_eq!(u2.breakpoints(), expected);
        for k in 0..=100 {
            let t = q(k, 100);
            assert_eq!(s2.evaluate(&g, &t), s.evaluate(&g, &t));
            assert_eq!(u2.evaluate(&g, &t), u.evaluate(&g, &t));
        }
        let (same, _) = common_refinement(&s, &s);
        assert_eq!(same, s);
    }

    #[test]
    fn between_resolves_loops_and_parallel_edges() {
        let g = catalog::figure_eight();
        let a = g.edge_by_name("a").unwrap();
        let w = GraphPoint::Vertex(VertexId(0));
        let near_end = TrackSegment::between(&g, q(0, 1), q(1, 1), &GraphPoint::Interior(a, q(3, 4)), &w).unwrap();
        assert_eq!(near_end.a1, q(1, 1));
        let near_start = TrackSegment::between(&g, q(0, 1), q(1, 1), &GraphPoint::Interior(a, q(1, 4)), &w).unwrap();
        assert_eq!(near_start.a1, q(0, 1));
        let c = TrackSegment::between(&g, q(0, 1), q(1, 1), &w, &w).unwrap();
        assert!(c.is_constant());
        let th = catalog::theta();
        let s = TrackSegment::between(&th, q(0, 1), q(1, 1), &GraphPoint::Vertex(VertexId(1)), &GraphPoint::Vertex(VertexId(0))).unwrap();
        assert_eq!((s.carrier, s.a0.clone(), s.a1.clone()), (th.edge_by_name("e1").unwrap(), q(1, 1), q(0, 1)));
    }

    #[test]
    fn track_rejects_jumps_and_gaps() {
        let g = catalog::figure_eight();
        let a = g.edge_by_name("a").unwrap();
        let b = g.edge_by_name("b").unwrap();
        let jump = EdgeTrack::new(
            &g,
            vec![
                TrackSegment::new(q(0, 1), q(1, 2), a, q(0, 1), q(1, 2)),
                TrackSegment::new(q(1, 2), q(1, 1), b, q(1, 2), q(1, 1)),
            ],
        );
        assert!(jump.is_err());
        let gap = EdgeTrack::new(&g, vec![TrackSegment::new(q(0, 1), q(1, 2), a, q(0, 1), q(0, 1))]);
        assert!(gap.is_err());
    }

    #[test]
    fn splice_keeps_outside() {
        let (g, track) = two_loop_track();
        let a = g.edge_by_name("a").unwrap();
        let repl = vec![TrackSegment::new(q(1, 8), q(3, 8), a, q(1, 4), q(3, 4))];
        let (out, removed) = track.splice(&q(1, 8), &q(3, 8), repl);
        assert_eq!(removed.len(), 1);
        assert_eq!(out.segments().len(), 4);
        assert!(EdgeTrack::new(&g, out.segments().to_vec()).is_ok());
        assert_eq!(out.segments()[3], track.segments()[1]);
    }
}

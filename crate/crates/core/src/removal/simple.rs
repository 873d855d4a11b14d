//! Removal for tree and circle codomains.

use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::graph::{classify, Dart, EdgeId, Graph, GraphClass, GraphPoint};
use crate::plmap::{EdgeTrack, PLMap, TrackSegment};
use crate::rational::{half, int, lerp, q, Rational};
use crate::steps::{Fragment, HomotopyStep, MapRole, StepKind, VertexMove};

fn replace_all(step: &mut HomotopyStep, role: MapRole, before: &PLMap, after: &PLMap) {
    let dom = before.domain();
    for v in dom.vertices() {
        if before.vertex_image(v) != after.vertex_image(v) {
            step.vertex_moves.push(VertexMove {
                map: role,
                vertex: v,
                from: before.vertex_image(v).clone(),
                to: after.vertex_image(v).clone(),
            });
        }
    }
    for e in dom.edges() {
        step.fragments.push(Fragment {
            map: role,
            edge: e,
            lo: Rational::zero(),
            hi: Rational::one(),
            replaced: before.track(e).segments().to_vec(),
            replacement: after.track(e).segments().to_vec(),
        });
    }
}

/// Into a tree every map is nullhomotopic: `f` becomes constant at 1/3 and
/// `g` at 2/3 of the smallest codomain edge.
pub fn deform_to_constants(f: &PLMap, g: &PLMap) -> Result<(PLMap, PLMap, HomotopyStep)> {
    if !f.same_graphs(g) {
        return Err(Error::GraphMismatch);
    }
    let cod = f.codomain();
    if classify(cod) != GraphClass::Interval {
        return Err(Error::NotInterval(cod.name().to_string()));
    }
    let e = EdgeId(0);
    let f2 = PLMap::constant(f.name(), f.domain().clone(), cod.clone(), &GraphPoint::Interior(e, q(1, 3)))?;
    let g2 = PLMap::constant(g.name(), g.domain().clone(), cod.clone(), &GraphPoint::Interior(e, q(2, 3)))?;
    let mut step = HomotopyStep::new(StepKind::ConstantDeformation, MapRole::Both);
    replace_all(&mut step, MapRole::F, f, &f2);
    replace_all(&mut step, MapRole::G, g, &g2);
    Ok((f2, g2, step))
}

/// The darts of a cycle graph in cyclic order, starting with the smallest
/// dart at the smallest vertex.
fn cycle_darts(c: &Graph) -> Vec<Dart> {
    let first = c.darts_at(crate::graph::VertexId(0))[0];
    let mut out = vec![first];
    loop {
        let last = *out.last().unwrap();
        let next = *c.darts_at(c.head(last)).iter().find(|d| **d != last.reversed()).expect("degree 2");
        if next == first {
            return out;
        }
        out.push(next);
    }
}

/// Position in `[0, n)` along the cycle, measured from the start of
/// `cycle[0]`, of coordinate `a` on `edge`.
fn position(cycle: &[Dart], edge: EdgeId, a: &Rational) -> Rational {
    let k = cycle.iter().position(|d| d.edge == edge).expect("edge on cycle");
    int(k as i64) + cycle[k].depth_of(a)
}

/// Rotation of a circle by half an edge length along its orientation. It
/// has no fixed points and is isotopic to the identity.
struct HalfTurn {
    cycle: Vec<Dart>,
}

impl HalfTurn {
    fn new(c: &Graph) -> Self {
        HalfTurn { cycle: cycle_darts(c) }
    }

    fn n(&self) -> Rational {
        int(self.cycle.len() as i64)
    }

    /// The dart carrying positions `[k, k+1]` (indices taken mod n) and the
    /// edge coordinate there.
    fn coord(&self, k: i64, pos: &Rational) -> (EdgeId, Rational) {
        let d = self.cycle[k.mod_floor(&(self.cycle.len() as i64)) as usize];
        (d.edge, d.edge_coord(&(pos - int(k))))
    }

    fn point(&self, g: &Graph, p: &GraphPoint) -> GraphPoint {
        let pos = match p {
            GraphPoint::Interior(e, a) => position(&self.cycle, *e, a),
            GraphPoint::Vertex(v) => position(&self.cycle, g.darts_at(*v)[0].edge, &g.darts_at(*v)[0].edge_coord(&Rational::zero())),
        };
        let shifted = pos + half();
        let k = shifted.floor().to_integer().try_into().expect("small");
        let (e, a) = self.coord(k, &shifted);
        GraphPoint::on_edge(g, e, a)
    }

    fn segment(&self, s: &TrackSegment) -> Vec<TrackSegment> {
        let k = self.cycle.iter().position(|d| d.edge == s.carrier).expect("edge on cycle") as i64;
        let depth = |a: &Rational| self.cycle[k as usize].depth_of(a);
        let (p0, p1) = (int(k) + depth(&s.a0) + half(), int(k) + depth(&s.a1) + half());
        let cut = int(k + 1);
        let straddles = (p0 < cut && cut < p1) || (p1 < cut && cut < p0);
        let piece = |t0: &Rational, t1: &Rational, x0: &Rational, x1: &Rational| {
            let lower = if x0 < x1 { x0 } else { x1 };
            let j: i64 = if *lower >= cut { k + 1 } else { k };
            let (e, a0) = self.coord(j, x0);
            let (_, a1) = self.coord(j, x1);
            TrackSegment::new(t0.clone(), t1.clone(), e, a0, a1)
        };
        if straddles {
            let tc = lerp(&s.t0, &s.t1, &((&cut - &p0) / (&p1 - &p0)));
            vec![piece(&s.t0, &tc, &p0, &cut), piece(&tc, &s.t1, &cut, &p1)]
        } else {
            vec![piece(&s.t0, &s.t1, &p0, &p1)]
        }
    }
}

/// `f` followed by a half turn of the circle codomain; never agrees with `f`.
pub fn rotate_half(f: &PLMap) -> Result<PLMap> {
    let cod = f.codomain();
    if classify(cod) != GraphClass::Circle {
        return Err(Error::NotCircle(cod.name().to_string()));
    }
    let turn = HalfTurn::new(cod);
    debug_assert!(turn.n() >= Rational::one());
    let images = f.vertex_images().iter().map(|p| turn.point(cod, p)).collect();
    let tracks = f
        .tracks()
        .iter()
        .map(|t| EdgeTrack::new(cod, t.segments().iter().flat_map(|s| turn.segment(s)).collect()))
        .collect::<Result<Vec<_>>>()?;
    PLMap::new(f.name(), f.domain().clone(), cod.clone(), images, tracks)
}

/// Replaces `g` by the half turn of `f`; used when `f` and `g` are homotopic.
pub fn rotation_step(f: &PLMap, g: &PLMap) -> Result<(PLMap, PLMap, HomotopyStep)> {
    let g2 = rotate_half(f)?.renamed(g.name());
    let mut step = HomotopyStep::new(StepKind::Rotation, MapRole::G);
    replace_all(&mut step, MapRole::G, g, &g2);
    Ok((f.clone(), g2, step))
}

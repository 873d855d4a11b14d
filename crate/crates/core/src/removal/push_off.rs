//! Local perturbations that remove coincidences which are not transversal
//! crossings of interior points.

use num::{One, Signed, Zero};

use super::window::{halves, isolation_radius};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphPoint, VertexId};
use crate::plmap::{scan_edge, CoincidencePoint, PLMap, TrackSegment, Transversality};
use crate::rational::{half, q, Rational};
use crate::steps::{Fragment, HomotopyStep, MapRole, StepKind, VertexMove};

/// Removes the coincidence `c`, which must not be a transversal crossing at
/// an interior value.
///
/// * At a domain vertex `v`, the image of `v` under `g` is moved a little
///   (into the value edge, or into the smallest dart at a vertex value) and
///   a short spur back to the old image is inserted at every incident end.
///   Replacement coincidences lie in the open incident edges.
/// * At a tangential touch, `g` is pulled away from `f` at the touching
///   parameter; no coincidence remains in the window.
/// * At a codomain vertex value, one map is re-timed so the two maps pass
///   the vertex at different moments (or a map resting at the vertex makes
///   a short excursion). Remaining coincidences in the window are
///   transversal crossings at interior values.
pub fn push_off(f: &PLMap, g: &PLMap, c: &CoincidencePoint) -> Result<(PLMap, PLMap, HomotopyStep)> {
    if !f.same_graphs(g) {
        return Err(Error::GraphMismatch);
    }
    match (&c.location, &c.value, c.transversality) {
        (GraphPoint::Vertex(v), _, _) => push_vertex(f, g, *v),
        (GraphPoint::Interior(e, t), GraphPoint::Interior(rho, a), Transversality::Tangential) => {
            push_tangential(f, g, *e, t, *rho, a)
        }
        (GraphPoint::Interior(e, t), GraphPoint::Vertex(w), _) => push_vertex_value(f, g, *e, t, *w),
        _ => Err(Error::Precondition("transversal crossings are removed by the fork maneuver".into())),
    }
}

/// Distance from the `at_start` end of `e` to the nearest other breakpoint
/// or interior coincidence, halved, and at most 1/4.
fn end_radius(f: &PLMap, g: &PLMap, e: EdgeId, at_start: bool) -> Rational {
    let end = if at_start { Rational::zero() } else { Rational::one() };
    let scan = scan_edge(f.codomain(), f.track(e), g.track(e));
    let nearest = f
        .track(e)
        .breakpoints()
        .into_iter()
        .chain(g.track(e).breakpoints())
        .chain(scan.points.into_iter().map(|(s, _, _)| s))
        .filter(|s| *s != end)
        .map(|s| (s - &end).abs())
        .min()
        .unwrap_or_else(Rational::one);
    (nearest * half()).min(q(1, 4))
}

fn push_vertex(f: &PLMap, g: &PLMap, v: VertexId) -> Result<(PLMap, PLMap, HomotopyStep)> {
    let cod = g.codomain();
    let dom = g.domain();
    let y = g.vertex_image(v).clone();
    // spur from the new image back to the old one
    let (spur_edge, near, far) = match &y {
        GraphPoint::Interior(e, a) => (*e, a * half(), a.clone()),
        GraphPoint::Vertex(w) => {
            let d = cod.darts_at(*w)[0];
            (d.edge, d.edge_coord(&q(1, 4)), d.edge_coord(&Rational::zero()))
        }
    };
    let y_new = GraphPoint::on_edge(cod, spur_edge, near.clone());
    let mut g_out = g.clone();
    let mut step = HomotopyStep::new(StepKind::PushOff, MapRole::G);
    step.vertex_moves.push(VertexMove { map: MapRole::G, vertex: v, from: y.clone(), to: y_new.clone() });
    for e in dom.edges() {
        for at_start in [true, false] {
            let end_vertex = if at_start { dom.origin(e) } else { dom.terminus(e) };
            if end_vertex != v {
                continue;
            }
            let eps = end_radius(f, g, e, at_start);
            let (lo, hi) = if at_start { (Rational::zero(), eps.clone()) } else { (Rational::one() - &eps, Rational::one()) };
            let old = g.track(e).window(&lo, &hi);
            debug_assert_eq!(old.len(), 1);
            let s = &old[0];
            let mid = (&lo + &hi) * half();
            let replacement = if at_start {
                vec![
                    TrackSegment::new(lo.clone(), mid.clone(), spur_edge, near.clone(), far.clone()),
                    TrackSegment::new(mid, hi.clone(), s.carrier, s.a0.clone(), s.a1.clone()),
                ]
            } else {
                vec![
                    TrackSegment::new(lo.clone(), mid.clone(), s.carrier, s.a0.clone(), s.a1.clone()),
                    TrackSegment::new(mid, hi.clone(), spur_edge, far.clone(), near.clone()),
                ]
            };
            let (next, replaced) = g_out.with_window(e, &lo, &hi, replacement.clone());
            g_out = next;
            step.fragments.push(Fragment { map: MapRole::G, edge: e, lo, hi, replaced, replacement });
        }
    }
    g_out.set_vertex_image(v, y_new);
    g_out.check()?;
    Ok((f.clone(), g_out, step))
}

/// Replaces one map on `[lo, hi]` of edge `e` and accepts the result when
/// every coincidence left in the window is a transversal crossing at an
/// interior value away from `t`.
#[allow(clippy::too_many_arguments)]
fn try_replace(
    f: &PLMap,
    g: &PLMap,
    role: MapRole,
    e: EdgeId,
    lo: &Rational,
    t: &Rational,
    hi: &Rational,
    replacement: Vec<TrackSegment>,
) -> Option<(PLMap, PLMap, HomotopyStep)> {
    let target = if role == MapRole::F { f } else { g };
    let (changed, replaced) = target.with_window(e, lo, hi, replacement.clone());
    changed.check().ok()?;
    let (f2, g2) = if role == MapRole::F { (changed, g.clone()) } else { (f.clone(), changed) };
    let scan = scan_edge(f.codomain(), f2.track(e), g2.track(e));
    let clean = scan.overlaps.is_empty()
        && scan
            .points
            .iter()
            .filter(|(s, _, _)| s >= lo && s <= hi)
            .all(|(s, _, kind)| s != t && *kind == Transversality::Crossing);
    if !clean {
        return None;
    }
    let mut step = HomotopyStep::new(StepKind::PushOff, role);
    step.fragments.push(Fragment { map: role, edge: e, lo: lo.clone(), hi: hi.clone(), replaced, replacement });
    Some((f2, g2, step))
}

fn push_tangential(
    f: &PLMap,
    g: &PLMap,
    e: EdgeId,
    t: &Rational,
    rho: EdgeId,
    a: &Rational,
) -> Result<(PLMap, PLMap, HomotopyStep)> {
    let eps = isolation_radius(f, g, e, t);
    let (lo, hi) = (t - &eps, t + &eps);
    let (fl, _) = halves(f, e, &lo, t, &hi);
    let (gl, gr) = halves(g, e, &lo, t, &hi);
    let moved = if fl.a0 > gl.a0 { a * half() } else { a + (Rational::one() - a) * half() };
    let replacement = vec![
        TrackSegment::new(lo.clone(), t.clone(), rho, gl.a0.clone(), moved.clone()),
        TrackSegment::new(t.clone(), hi.clone(), rho, moved, gr.a1.clone()),
    ];
    try_replace(f, g, MapRole::G, e, &lo, t, &hi, replacement)
        .ok_or_else(|| Error::Precondition("tangential push-off failed".into()))
}

fn push_vertex_value(
    f: &PLMap,
    g: &PLMap,
    e: EdgeId,
    t: &Rational,
    w: VertexId,
) -> Result<(PLMap, PLMap, HomotopyStep)> {
    let cod = f.codomain();
    let mut eps = isolation_radius(f, g, e, t);
    {
        let (lo, hi) = (t - &eps, t + &eps);
        let (fl, fr) = halves(f, e, &lo, t, &hi);
        let (gl, gr) = halves(g, e, &lo, t, &hi);
        // keep every excursion within a quarter of an edge of the vertex
        for s in [fl, fr, gl, gr] {
            let slope = s.slope().abs();
            if !slope.is_zero() {
                eps = eps.min(q(1, 4) / slope);
            }
        }
    }
    let (lo, hi) = (t - &eps, t + &eps);
    let vertex = GraphPoint::Vertex(w);
    let through = |points: &[(Rational, GraphPoint)]| -> Option<Vec<TrackSegment>> {
        points.windows(2).map(|p| TrackSegment::between(cod, p[0].0.clone(), p[1].0.clone(), &p[0].1, &p[1].1)).collect()
    };
    let shifted = |m: &PLMap, tau: Rational| {
        through(&[
            (lo.clone(), m.eval(&GraphPoint::Interior(e, lo.clone()))),
            (t + &eps * tau, vertex.clone()),
            (hi.clone(), m.eval(&GraphPoint::Interior(e, hi.clone()))),
        ])
    };
    let tent = |m: &PLMap| {
        let rests = [&lo, &hi].iter().all(|s| m.eval(&GraphPoint::Interior(e, (*s).clone())) == vertex);
        if !rests {
            return None;
        }
        let d = cod.darts_at(w)[0];
        through(&[
            (lo.clone(), vertex.clone()),
            (t.clone(), GraphPoint::on_edge(cod, d.edge, d.edge_coord(&q(1, 4)))),
            (hi.clone(), vertex.clone()),
        ])
    };
    let candidates = [
        (MapRole::G, shifted(g, half())),
        (MapRole::G, shifted(g, -half())),
        (MapRole::F, shifted(f, half())),
        (MapRole::F, shifted(f, -half())),
        (MapRole::G, tent(g)),
        (MapRole::F, tent(f)),
    ];
    candidates
        .into_iter()
        .filter_map(|(role, repl)| repl.map(|r| (role, r)))
        .find_map(|(role, repl)| try_replace(f, g, role, e, &lo, t, &hi, repl))
        .ok_or_else(|| Error::Precondition("no push-off at the vertex value succeeded".into()))
}

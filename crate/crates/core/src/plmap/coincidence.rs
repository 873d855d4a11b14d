//! Exact coincidence sets.

use std::cmp::Ordering;

use num::{Signed, Zero};

use super::{common_refinement, EdgeTrack, PLMap, TrackSegment};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, GraphPoint};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transversality {
    /// Interior location and value; the coordinate difference changes sign.
    Crossing,
    /// Interior location and value; the difference touches zero only.
    Tangential,
    /// The location is a domain vertex.
    AtVertexLocation,
    /// Interior location, the common value is a codomain vertex.
    AtVertexValue,
}

impl Transversality {
    pub fn as_str(self) -> &'static str {
        match self {
            Transversality::Crossing => "Crossing",
            Transversality::Tangential => "Tangential",
            Transversality::AtVertexLocation => "AtVertexLocation",
            Transversality::AtVertexValue => "AtVertexValue",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoincidencePoint {
    pub location: GraphPoint,
    pub value: GraphPoint,
    pub transversality: Transversality,
}

impl CoincidencePoint {
    /// Location parameter for interior locations.
    pub fn edge_parameter(&self) -> Option<(EdgeId, &Rational)> {
        match &self.location {
            GraphPoint::Interior(e, t) => Some((*e, t)),
            GraphPoint::Vertex(_) => None,
        }
    }
}

/// Result of scanning one domain edge.
#[derive(Debug, Default)]
pub(crate) struct EdgeScan {
    /// Isolated coincidences at interior parameters, ascending.
    pub points: Vec<(Rational, GraphPoint, Transversality)>,
    /// Maximal intervals on which both maps agree.
    pub overlaps: Vec<(Rational, Rational)>,
}

fn segments_agree(cod: &Graph, f: &TrackSegment, g: &TrackSegment) -> bool {
    if f.is_constant() && g.is_constant() {
        return f.start_point(cod) == g.start_point(cod);
    }
    f.carrier == g.carrier && f.a0 == g.a0 && f.a1 == g.a1
}

fn sign(r: &Rational) -> Ordering {
    r.cmp(&Rational::zero())
}

pub(crate) fn scan_edge(cod: &Graph, f: &EdgeTrack, g: &EdgeTrack) -> EdgeScan {
    let (fr, gr) = common_refinement(f, g);
    let fs = fr.segments();
    let gs = gr.segments();
    let mut scan = EdgeScan::default();
    let mut agree = vec![false; fs.len()];

    for (i, (fa, ga)) in fs.iter().zip(gs).enumerate() {
        if segments_agree(cod, fa, ga) {
            agree[i] = true;
            match scan.overlaps.last_mut() {
                Some((_, hi)) if *hi == fa.t0 => *hi = fa.t1.clone(),
                _ => scan.overlaps.push((fa.t0.clone(), fa.t1.clone())),
            }
            continue;
        }
        // breakpoint at the left end of this segment
        if i > 0 && !agree[i - 1] {
            let t = &fa.t0;
            let p = fa.point_at(cod, t);
            if p == ga.point_at(cod, t) {
                let kind = match &p {
                    GraphPoint::Vertex(_) => Transversality::AtVertexValue,
                    GraphPoint::Interior(..) => {
                        let left = sign(&(&fs[i - 1].a0 - &gs[i - 1].a0));
                        let right = sign(&(&fa.a1 - &ga.a1));
                        if left != right {
                            Transversality::Crossing
                        } else {
                            Transversality::Tangential
                        }
                    }
                };
                scan.points.push((t.clone(), p, kind));
            }
        }
        if fa.carrier == ga.carrier && !(fa.is_constant() && ga.is_constant()) {
            let d0 = &fa.a0 - &ga.a0;
            let d1 = &fa.a1 - &ga.a1;
            if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                let t = &fa.t0 + (&fa.t1 - &fa.t0) * &d0 / (&d0 - &d1);
                let p = fa.point_at(cod, &t);
                let kind = if p.is_vertex() { Transversality::AtVertexValue } else { Transversality::Crossing };
                scan.points.push((t, p, kind));
            }
        }
    }
    scan
}

fn check_pair(f: &PLMap, g: &PLMap) -> Result<()> {
    if f.same_graphs(g) {
        Ok(())
    } else {
        Err(Error::GraphMismatch)
    }
}

/// Coincidences at interior parameters of one domain edge, ascending.
pub fn edge_coincidences(f: &PLMap, g: &PLMap, e: EdgeId) -> Result<Vec<CoincidencePoint>> {
    check_pair(f, g)?;
    let cod = f.codomain();
    let scan = scan_edge(cod, f.track(e), g.track(e));
    if let Some((lo, hi)) = scan.overlaps.first() {
        return Err(Error::DegenerateOverlap {
            edge: f.domain().edge_name(e).to_string(),
            from: format_rational(lo),
            to: format_rational(hi),
        });
    }
    Ok(scan
        .points
        .into_iter()
        .map(|(t, value, transversality)| CoincidencePoint {
            location: GraphPoint::Interior(e, t),
            value,
            transversality,
        })
        .collect())
}

/// The exact coincidence set: domain vertices first, then interior points
/// ordered by (edge, parameter). Fails on a positive-length overlap.
pub fn coincidences(f: &PLMap, g: &PLMap) -> Result<Vec<CoincidencePoint>> {
    check_pair(f, g)?;
    let dom = f.domain();
    let mut out = Vec::new();
    for v in dom.vertices() {
        if f.vertex_image(v) == g.vertex_image(v) {
            out.push(CoincidencePoint {
                location: GraphPoint::Vertex(v),
                value: f.vertex_image(v).clone(),
                transversality: Transversality::AtVertexLocation,
            });
        }
    }
    for e in dom.edges() {
        out.extend(edge_coincidences(f, g, e)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::rational::q;

    fn seg_map(name: &str, cod: &Arc<Graph>, edge: &str, pts: &[(Rational, Rational)]) -> PLMap {
        let dom = Arc::new(catalog::path(1));
        let e = cod.edge_by_name(edge).unwrap();
        let bps: Vec<(Rational, GraphPoint)> =
            pts.iter().map(|(t, a)| (t.clone(), GraphPoint::on_edge(cod, e, a.clone()))).collect();
        let segs: Vec<TrackSegment> = bps
            .windows(2)
            .zip(pts.windows(2))
            .map(|(_, w)| TrackSegment::new(w[0].0.clone(), w[1].0.clone(), e, w[0].1.clone(), w[1].1.clone()))
            .collect();
        PLMap::from_tracks(name, dom, cod.clone(), vec![EdgeTrack::new(cod, segs).unwrap()]).unwrap()
    }

    #[test]
    fn opposite_sweeps_cross_once() {
        let cod = Arc::new(catalog::theta());
        let f = seg_map("f", &cod, "e1", &[(q(0, 1), q(3, 4)), (q(1, 1), q(1, 4))]);
        let g = seg_map("g", &cod, "e1", &[(q(0, 1), q(1, 4)), (q(1, 1), q(3, 4))]);
        let cs = coincidences(&f, &g).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].location, GraphPoint::Interior(EdgeId(0), q(1, 2)));
        assert_eq!(cs[0].value, GraphPoint::Interior(cod.edge_by_name("e1").unwrap(), q(1, 2)));
        assert_eq!(cs[0].transversality, Transversality::Crossing);
    }

    #[test]
    fn distinct_constants_do_not_meet() {
        let cod = Arc::new(catalog::theta());
        let f = seg_map("f", &cod, "e2", &[(q(0, 1), q(1, 3)), (q(1, 1), q(1, 3))]);
        let g = seg_map("g", &cod, "e2", &[(q(0, 1), q(2, 3)), (q(1, 1), q(2, 3))]);
        assert!(coincidences(&f, &g).unwrap().is_empty());
    }

    #[test]
    fn sweep_against_constant() {
        let cod = Arc::new(catalog::theta());
        let f = seg_map("f", &cod, "e1", &[(q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))]);
        let g = seg_map("g", &cod, "e1", &[(q(0, 1), q(1, 4)), (q(1, 1), q(1, 4))]);
        let cs = coincidences(&f, &g).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].location, GraphPoint::Interior(EdgeId(0), q(1, 4)));
        assert_eq!(cs[0].transversality, Transversality::Crossing);
        // grid cross-check at 1/1024
        let hits: Vec<i64> = (1..1024)
            .filter(|k| {
                let p = GraphPoint::Interior(EdgeId(0), q(*k, 1024));
                f.evaluate(&p).unwrap() == g.evaluate(&p).unwrap()
            })
            .collect();
        assert_eq!(hits, vec![256]);
    }

    #[test]
    fn tangential_touch_at_breakpoint() {
        let cod = Arc::new(catalog::theta());
        let f = seg_map("f", &cod, "e1", &[(q(0, 1), q(3, 4)), (q(1, 2), q(1, 2)), (q(1, 1), q(3, 4))]);
        let g = seg_map("g", &cod, "e1", &[(q(0, 1), q(1, 2)), (q(1, 1), q(1, 2))]);
        let cs = coincidences(&f, &g).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].transversality, Transversality::Tangential);
        let swapped = coincidences(&g, &f).unwrap();
        assert_eq!(swapped, cs);
    }

    #[test]
    fn overlap_is_reported() {
        let cod = Arc::new(catalog::figure_eight());
        let id = PLMap::identity("id", cod.clone());
        match coincidences(&id, &id) {
            Err(Error::DegenerateOverlap { edge, from, to }) => {
                assert_eq!((edge.as_str(), from.as_str(), to.as_str()), ("a", "0", "1"));
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn vertex_location_and_value() {
        let cod = Arc::new(catalog::figure_eight());
        let dom = cod.clone();
        let id = PLMap::identity("id", cod.clone());
        let w = GraphPoint::Vertex(crate::graph::VertexId(0));
        let c = PLMap::constant("c", dom, cod.clone(), &w).unwrap();
        let cs = coincidences(&id, &c).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].transversality, Transversality::AtVertexLocation);
        assert_eq!(cs[0].value, w);
    }
}

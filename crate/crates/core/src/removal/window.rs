//! Isolating windows around coincidences.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphPoint};
use crate::plmap::{scan_edge, CoincidencePoint, PLMap, TrackSegment, Transversality};
use crate::rational::{half, Rational};

/// `[center − radius, center + radius]` on one domain edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalWindow {
    pub edge: EdgeId,
    pub center: Rational,
    pub radius: Rational,
}

impl LocalWindow {
    pub fn lo(&self) -> Rational {
        &self.center - &self.radius
    }

    pub fn hi(&self) -> Rational {
        &self.center + &self.radius
    }

    pub fn contains(&self, t: &Rational) -> bool {
        *t > self.lo() && *t < self.hi()
    }
}

/// Half the distance from `t` to the nearest edge end, breakpoint of either
/// track, or other coincidence on edge `e`.
pub(crate) fn isolation_radius(f: &PLMap, g: &PLMap, e: EdgeId, t: &Rational) -> Rational {
    let scan = scan_edge(f.codomain(), f.track(e), g.track(e));
    let mut nearest = t.clone().min(Rational::one() - t);
    let others = f
        .track(e)
        .breakpoints()
        .into_iter()
        .chain(g.track(e).breakpoints())
        .chain(scan.points.into_iter().map(|(s, _, _)| s));
    for s in others {
        if s != *t {
            let d = if s > *t { &s - t } else { t - &s };
            nearest = nearest.min(d);
        }
    }
    nearest * half()
}

/// The pieces of a track on `[lo, t]` and `[t, hi]`; each is a single
/// affine segment when the window isolates `t`.
pub(crate) fn halves(m: &PLMap, e: EdgeId, lo: &Rational, t: &Rational, hi: &Rational) -> (TrackSegment, TrackSegment) {
    let left = m.track(e).window(lo, t);
    let right = m.track(e).window(t, hi);
    debug_assert_eq!((left.len(), right.len()), (1, 1));
    (left[0].clone(), right[0].clone())
}

/// Isolating window of a transversal crossing, and whether `f` and `g`
/// exchange roles: in the unswapped configuration the first map lies above
/// the second (in the value edge's coordinate) at the start of the window
/// and below it at the end.
pub fn normal_form(f: &PLMap, g: &PLMap, c: &CoincidencePoint) -> Result<(LocalWindow, bool)> {
    let (Some((edge, t)), GraphPoint::Interior(rho, _), Transversality::Crossing) =
        (c.edge_parameter(), &c.value, c.transversality)
    else {
        return Err(Error::Precondition("normal form needs a transversal crossing".into()));
    };
    if !f.same_graphs(g) {
        return Err(Error::GraphMismatch);
    }
    let radius = isolation_radius(f, g, edge, t);
    if radius.is_zero() {
        return Err(Error::Precondition("crossing at an edge end".into()));
    }
    let window = LocalWindow { edge, center: t.clone(), radius };
    let (fl, _) = halves(f, edge, &window.lo(), t, &window.hi());
    let (gl, _) = halves(g, edge, &window.lo(), t, &window.hi());
    if fl.carrier != *rho || gl.carrier != *rho {
        return Err(Error::Precondition("maps leave the value edge inside the window".into()));
    }
    let swapped = fl.a0 < gl.a0;
    Ok((window, swapped))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::plmap::{coincidences, EdgeTrack};
    use crate::rational::q;

    fn sweep(name: &str, pts: &[(Rational, Rational)]) -> PLMap {
        let cod = Arc::new(catalog::theta());
        let dom = Arc::new(catalog::path(1));
        let e1 = cod.edge_by_name("e1").unwrap();
        let bps: Vec<(Rational, GraphPoint)> =
            pts.iter().map(|(t, a)| (t.clone(), GraphPoint::on_edge(&cod, e1, a.clone()))).collect();
        let track = EdgeTrack::from_breakpoints(&cod, &bps).unwrap();
        PLMap::from_tracks(name, dom, cod, vec![track]).unwrap()
    }

    #[test]
    fn opposite_sweeps_window() {
        let f = sweep("f", &[(q(0, 1), q(3, 4)), (q(1, 1), q(1, 4))]);
        let g = sweep("g", &[(q(0, 1), q(1, 4)), (q(1, 1), q(3, 4))]);
        let c = &coincidences(&f, &g).unwrap()[0];
        let (w, swapped) = normal_form(&f, &g, c).unwrap();
        assert_eq!((w.lo(), w.hi(), swapped), (q(1, 4), q(3, 4), false));
        let (w2, swapped2) = normal_form(&g, &f, c).unwrap();
        assert_eq!((w2, swapped2), (w, true));
    }

    #[test]
    fn radius_respects_breakpoints() {
        let f = sweep("f", &[(q(0, 1), q(1, 1)), (q(1, 1), q(0, 1))]);
        let g = sweep("g", &[(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 1), q(1, 1))]);
        let cs = coincidences(&f, &g).unwrap();
        assert_eq!(cs.len(), 1);
        let (_, t) = cs[0].edge_parameter().unwrap();
        assert_eq!(*t, q(1, 3));
        let (w, swapped) = normal_form(&f, &g, &cs[0]).unwrap();
        assert!(w.radius <= q(1, 2) - t);
        assert_eq!(w.radius, q(1, 12));
        assert!(!swapped);
    }
}

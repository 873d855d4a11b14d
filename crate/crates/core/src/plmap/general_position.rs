//! Perturbation that makes the coincidence set finite.

use num::{One, Zero};

use super::coincidence::scan_edge;
use super::{common_refinement, PLMap, TrackSegment};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphPoint};
use crate::rational::{half, Rational};
use crate::steps::{Fragment, HomotopyStep, MapRole, StepKind};

/// Replacement for `g` on one segment where it agrees with `f`.
///
/// A moving segment is replaced by a lagging reparameterization of itself
/// (half speed, then catching up), which meets the original only at the
/// ends. A constant segment becomes a tent: retreat toward coordinate 0 of
/// the carrier (or into the smallest dart at a vertex) and return.
fn detour(cod: &Graph, s: &TrackSegment) -> Vec<TrackSegment> {
    let mid = (&s.t0 + &s.t1) * half();
    if !s.is_constant() {
        let lagged = s.coord_at(&((&s.t0 + &mid) * half()));
        return vec![
            TrackSegment::new(s.t0.clone(), mid.clone(), s.carrier, s.a0.clone(), lagged.clone()),
            TrackSegment::new(mid, s.t1.clone(), s.carrier, lagged, s.a1.clone()),
        ];
    }
    let (carrier, base, apex) = match s.start_point(cod) {
        GraphPoint::Interior(e, c) => {
            let apex = &c * half();
            (e, c, apex)
        }
        GraphPoint::Vertex(w) => {
            let d = cod.darts_at(w)[0];
            (d.edge, d.edge_coord(&Rational::zero()), d.edge_coord(&half()))
        }
    };
    vec![
        TrackSegment::new(s.t0.clone(), mid.clone(), carrier, base.clone(), apex.clone()),
        TrackSegment::new(mid, s.t1.clone(), carrier, apex, base),
    ]
}

/// Removes every positive-length overlap of `f` and `g` by modifying `g`
/// inside the overlapping segments. Each change stays in one closed codomain
/// edge with fixed endpoints, so it is a homotopy rel endpoints.
pub fn general_position(f: &PLMap, g: &PLMap) -> Result<(PLMap, PLMap, Vec<HomotopyStep>)> {
    if !f.same_graphs(g) {
        return Err(Error::GraphMismatch);
    }
    let cod = f.codomain().clone();
    let mut g_out = g.clone();
    let mut log = Vec::new();
    for e in f.domain().edges() {
        let scan = scan_edge(&cod, f.track(e), g.track(e));
        if scan.overlaps.is_empty() {
            continue;
        }
        let (fr, _) = common_refinement(f.track(e), g.track(e));
        for (lo, hi) in &scan.overlaps {
            let replacement: Vec<TrackSegment> = fr
                .segments()
                .iter()
                .filter(|s| s.t0 >= *lo && s.t1 <= *hi)
                .flat_map(|s| detour(&cod, s))
                .collect();
            let (next, replaced) = g_out.with_window(e, lo, hi, replacement.clone());
            g_out = next;
            let mut step = HomotopyStep::new(StepKind::GeneralPosition, MapRole::G);
            step.fragments.push(Fragment {
                map: MapRole::G,
                edge: e,
                lo: lo.clone(),
                hi: hi.clone(),
                replaced,
                replacement,
            });
            log.push(step);
        }
    }
    debug_assert!(g_out.check().is_ok());
    debug_assert!(g_out.tracks().iter().all(|t| t.segments()[0].t0.is_zero() && t.segments().last().unwrap().t1.is_one()));
    Ok((f.clone(), g_out, log))
}

//! Letting two crossing maps pass each other at a fork.

use num::{One, Zero};

use super::window::{halves, LocalWindow};
use crate::error::{Error, Result};
use crate::graph::{fork_route, Dart, ForkRoute, Graph, GraphPoint};
use crate::plmap::{scan_edge, PLMap, TrackSegment};
use crate::rational::{int, lerp, q, Rational};
use crate::steps::{Fragment, HomotopyStep, MapRole, StepKind};

/// Normalized breakpoint times of the leading map: reaches the fork,
/// deepest in its side road, back at the fork.
pub const LEADING_TIMES: [(i64, i64); 3] = [(3, 20), (7, 20), (13, 20)];
/// Normalized breakpoint times of the trailing map.
pub const TRAILING_TIMES: [(i64, i64); 3] = [(7, 20), (13, 20), (17, 20)];
/// How far each map ducks into its side road.
pub const SIDE_DEPTH: (i64, i64) = (1, 4);

/// Darts from the fork out to the value edge: the reversed retreat path,
/// then the start dart itself. Distance `x` along the road lies on
/// `road[floor(x)]` at depth `x − floor(x)`.
fn road(route: &ForkRoute) -> Vec<Dart> {
    route.path.iter().rev().map(|d| d.reversed()).chain([route.start]).collect()
}

fn floor(x: &Rational) -> usize {
    x.floor().to_integer().try_into().expect("nonnegative distance")
}

/// Motion along the road, affine in distance, from `x0` at `t0` to `x1` at
/// `t1`, with a breakpoint wherever a vertex is passed.
fn along_road(road: &[Dart], t0: &Rational, t1: &Rational, x0: &Rational, x1: &Rational) -> Vec<TrackSegment> {
    let (lo, hi) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
    let mut cuts: Vec<Rational> = (floor(lo) + 1..)
        .map(|k| int(k as i64))
        .take_while(|k| k < hi)
        .collect();
    if x0 > x1 {
        cuts.reverse();
    }
    let mut xs = vec![x0.clone()];
    xs.extend(cuts);
    xs.push(x1.clone());
    let time = |x: &Rational| {
        if x0 == x1 {
            t0.clone()
        } else {
            lerp(t0, t1, &((x - x0) / (x1 - x0)))
        }
    };
    xs.windows(2)
        .map(|w| {
            let k = floor(if w[0] < w[1] { &w[0] } else { &w[1] });
            let d = road[k];
            let base = int(k as i64);
            TrackSegment::new(time(&w[0]), time(&w[1]), d.edge, d.edge_coord(&(&w[0] - &base)), d.edge_coord(&(&w[1] - &base)))
        })
        .collect()
}

fn side_trip(d: Dart, t0: &Rational, t1: &Rational, depth0: &Rational, depth1: &Rational) -> TrackSegment {
    TrackSegment::new(t0.clone(), t1.clone(), d.edge, d.edge_coord(depth0), d.edge_coord(depth1))
}

/// One map's replacement on the window: retreat to the fork by `times[0]`,
/// duck into `side` to full depth at `times[1]`, back at the fork at
/// `times[2]`, then advance to the exit value.
fn schedule(
    road: &[Dart],
    side: Dart,
    times: [(i64, i64); 3],
    lo: &Rational,
    hi: &Rational,
    enter: &Rational,
    exit: &Rational,
) -> Vec<TrackSegment> {
    let at = |(n, d): (i64, i64)| lo + (hi - lo) * q(n, d);
    let (t1, t2, t3) = (at(times[0]), at(times[1]), at(times[2]));
    let depth = q(SIDE_DEPTH.0, SIDE_DEPTH.1);
    let zero = Rational::zero();
    let mut out = along_road(road, lo, &t1, enter, &zero);
    out.push(side_trip(side, &t1, &t2, &zero, &depth));
    out.push(side_trip(side, &t2, &t3, &depth, &zero));
    out.extend(along_road(road, &t3, hi, &zero, exit));
    out
}

/// Replaces both tracks on the window by the fork schedule. The map nearer
/// the fork along the road (at the window start) leads: it uses side dart
/// `λ`, the other map uses `γ`. Each map ends at its own exit value, so the
/// change is rel endpoints; the detour is a backtracking excursion, hence
/// homotopic to the original path.
pub fn fork_maneuver(f: &PLMap, g: &PLMap, w: &LocalWindow, r: &ForkRoute) -> Result<(PLMap, PLMap, HomotopyStep)> {
    if !f.same_graphs(g) {
        return Err(Error::GraphMismatch);
    }
    let cod: &Graph = f.codomain();
    let (lo, hi) = (w.lo(), w.hi());
    let (fl, fr) = halves(f, w.edge, &lo, &w.center, &hi);
    let (gl, gr) = halves(g, w.edge, &lo, &w.center, &hi);
    let rho = r.start.edge;
    if [&fl, &fr, &gl, &gr].iter().any(|s| s.carrier != rho) {
        return Err(Error::Precondition("the route does not start on the value edge".into()));
    }
    let ends = [&fl.a0, &fr.a1, &gl.a0, &gr.a1];
    if ends.iter().any(|a| a.is_zero() || a.is_one()) {
        return Err(Error::Precondition("window reaches a vertex".into()));
    }
    let road = road(r);
    let len = int(r.path.len() as i64);
    let dist = |a: &Rational| &len + r.start.depth_of(a);
    let (fx0, fx1, gx0, gx1) = (dist(&fl.a0), dist(&fr.a1), dist(&gl.a0), dist(&gr.a1));
    if (fx0 < gx0) == (fx1 < gx1) || fx0 == gx0 {
        return Err(Error::Precondition("the maps do not cross on the window".into()));
    }
    let f_leads = fx0 < gx0;
    let (f_side, f_times, g_side, g_times) = if f_leads {
        (r.lambda, LEADING_TIMES, r.gamma, TRAILING_TIMES)
    } else {
        (r.gamma, TRAILING_TIMES, r.lambda, LEADING_TIMES)
    };
    let f_new = schedule(&road, f_side, f_times, &lo, &hi, &fx0, &fx1);
    let g_new = schedule(&road, g_side, g_times, &lo, &hi, &gx0, &gx1);
    let (f_out, f_old) = f.with_window(w.edge, &lo, &hi, f_new.clone());
    let (g_out, g_old) = g.with_window(w.edge, &lo, &hi, g_new.clone());
    debug_assert!(f_out.check().is_ok() && g_out.check().is_ok());
    let scan = scan_edge(cod, f_out.track(w.edge), g_out.track(w.edge));
    if !scan.overlaps.is_empty() || scan.points.iter().any(|(t, _, _)| *t >= lo && *t <= hi) {
        return Err(Error::Precondition("fork schedule meets itself; window not isolated".into()));
    }
    let mut step = HomotopyStep::new(StepKind::ForkManeuver, MapRole::Both);
    step.fragments.push(Fragment { map: MapRole::F, edge: w.edge, lo: lo.clone(), hi: hi.clone(), replaced: f_old, replacement: f_new });
    step.fragments.push(Fragment { map: MapRole::G, edge: w.edge, lo, hi, replaced: g_old, replacement: g_new });
    Ok((f_out, g_out, step))
}

/// Fork route from one end of the value edge, trying the origin end first.
pub fn route_for(cod: &Graph, value: &GraphPoint) -> Result<ForkRoute> {
    let GraphPoint::Interior(rho, _) = value else {
        return Err(Error::Precondition("value must be interior".into()));
    };
    fork_route(cod, Dart::forward(*rho)).or_else(|_| fork_route(cod, Dart::backward(*rho)))
}

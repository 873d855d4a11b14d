//! Random piecewise-linear maps between catalog graphs.
#![allow(dead_code)]

use std::sync::Arc;

use graph_coin::catalog;
use graph_coin::graph::{EdgeId, Graph, GraphPoint, VertexId};
use graph_coin::plmap::{EdgeTrack, PLMap};
use graph_coin::rational::{q, Rational};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const MAX_SEGMENTS: usize = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn branched_codomains() -> Vec<Arc<Graph>> {
    vec![catalog::figure_eight(), catalog::theta(), catalog::lollipop(), catalog::k4()].into_iter().map(Arc::new).collect()
}

pub fn domains() -> Vec<Arc<Graph>> {
    vec![catalog::figure_eight(), catalog::theta(), catalog::lollipop(), catalog::k4(), catalog::path(3)]
        .into_iter()
        .map(Arc::new)
        .collect()
}

/// A coordinate on a coarse grid, so that random maps share values often.
fn coord<R: Rng>(rng: &mut R) -> Rational {
    q(rng.gen_range(0..=8), 8)
}

fn random_point<R: Rng>(rng: &mut R, g: &Graph) -> GraphPoint {
    let e = EdgeId(rng.gen_range(0..g.edge_count()));
    GraphPoint::on_edge(g, e, coord(rng))
}

fn incident_edges(g: &Graph, p: &GraphPoint) -> Vec<EdgeId> {
    match p {
        GraphPoint::Interior(e, _) => vec![*e],
        GraphPoint::Vertex(v) => {
            let mut es: Vec<EdgeId> = g.darts_at(*v).iter().map(|d| d.edge).collect();
            es.dedup();
            es
        }
    }
}

fn share_edge(g: &Graph, p: &GraphPoint, r: &GraphPoint) -> bool {
    let mine = incident_edges(g, p);
    incident_edges(g, r).iter().any(|e| mine.contains(e))
}

/// Vertices at the ends of the edge carrying `p` (or `p` itself).
fn anchors(g: &Graph, p: &GraphPoint) -> Vec<VertexId> {
    match p {
        GraphPoint::Vertex(v) => vec![*v],
        GraphPoint::Interior(e, _) => vec![g.origin(*e), g.terminus(*e)],
    }
}

/// Shortest vertex path between the anchor sets of two points.
fn vertex_route(g: &Graph, from: &[VertexId], to: &[VertexId]) -> Vec<VertexId> {
    let mut best: Option<Vec<VertexId>> = None;
    for &s in from {
        let mut prev: Vec<Option<VertexId>> = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[s.0] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for d in g.darts_at(v) {
                let w = g.head(*d);
                if !seen[w.0] {
                    seen[w.0] = true;
                    prev[w.0] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        for &t in to {
            let mut path = vec![t];
            let mut cur = t;
            while let Some(p) = prev[cur.0] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best.unwrap()
}

/// Waypoints from `start` to `end`, consecutive ones sharing a closed edge.
fn waypoints<R: Rng>(rng: &mut R, g: &Graph, start: &GraphPoint, end: &GraphPoint) -> Vec<GraphPoint> {
    loop {
        let mut pts = vec![start.clone()];
        for _ in 0..rng.gen_range(0..=3) {
            let cur = pts.last().unwrap().clone();
            let e = *incident_edges(g, &cur).choose(rng).unwrap();
            pts.push(GraphPoint::on_edge(g, e, coord(rng)));
        }
        let cur = pts.last().unwrap().clone();
        if !share_edge(g, &cur, end) {
            let route = vertex_route(g, &anchors(g, &cur), &anchors(g, end));
            pts.extend(route.into_iter().map(GraphPoint::Vertex));
        }
        pts.push(end.clone());
        pts.dedup();
        if pts.len() == 1 {
            pts.push(end.clone());
        }
        if pts.len() - 1 <= MAX_SEGMENTS {
            return pts;
        }
    }
}

fn times<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let mut cuts: Vec<i64> = (1..60).collect();
    cuts.shuffle(rng);
    let mut inner: Vec<i64> = cuts.into_iter().take(n - 1).collect();
    inner.sort();
    let mut out = vec![q(0, 1)];
    out.extend(inner.into_iter().map(|k| q(k, 60)));
    out.push(q(1, 1));
    out
}

pub fn random_map<R: Rng>(rng: &mut R, name: &str, dom: &Arc<Graph>, cod: &Arc<Graph>) -> PLMap {
    let images: Vec<GraphPoint> = dom.vertices().map(|_| random_point(rng, cod)).collect();
    let tracks = dom
        .edges()
        .map(|e| {
            let start = &images[dom.origin(e).0];
            let end = &images[dom.terminus(e).0];
            let pts = waypoints(rng, cod, start, end);
            let ts = times(rng, pts.len() - 1);
            let bps: Vec<(Rational, GraphPoint)> = ts.into_iter().zip(pts).collect();
            EdgeTrack::from_breakpoints(cod, &bps).expect("waypoints share edges")
        })
        .collect();
    PLMap::new(name, dom.clone(), cod.clone(), images, tracks).expect("consistent random map")
}

/// A random pair into a branched codomain.
pub fn random_branched_pair<R: Rng>(rng: &mut R) -> (PLMap, PLMap) {
    let dom = domains().choose(rng).unwrap().clone();
    let cod = branched_codomains().choose(rng).unwrap().clone();
    (random_map(rng, "f", &dom, &cod), random_map(rng, "g", &dom, &cod))
}

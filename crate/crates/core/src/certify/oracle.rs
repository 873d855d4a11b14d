//! Brute-force coincidence search on a uniform grid.

use crate::graph::GraphPoint;
use crate::plmap::PLMap;
use crate::rational::q;

/// Domain vertices and the points `(e, k/resolution)`, `0 < k < resolution`,
/// at which both maps agree exactly. Order: vertices, then by edge and `k`.
pub fn grid_oracle(f: &PLMap, g: &PLMap, resolution: u32) -> Vec<GraphPoint> {
    assert!(f.same_graphs(g), "maps must share domain and codomain");
    let dom = f.domain();
    let n = i64::from(resolution.max(1));
    let vertices = dom.vertices().map(GraphPoint::Vertex);
    let interior = dom.edges().flat_map(|e| (1..n).map(move |k| GraphPoint::Interior(e, q(k, n))));
    vertices.chain(interior).filter(|p| f.eval(p) == g.eval(p)).collect()
}

//! Finite connected graphs as combinatorial 1-complexes.
//!
//! Vertices and edges are stored sorted by their textual identifiers, so the
//! index order of [`VertexId`], [`EdgeId`] and [`Dart`] is the total order
//! used for every tie-break in the crate.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{in_open_unit, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// origin to terminus
    Forward,
    /// terminus to origin
    Backward,
}

/// A directed end of an edge (half-edge). The dart is based at the vertex it
/// leaves from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub dir: Direction,
}

impl Dart {
    pub fn forward(edge: EdgeId) -> Self {
        Dart { edge, dir: Direction::Forward }
    }

    pub fn backward(edge: EdgeId) -> Self {
        Dart { edge, dir: Direction::Backward }
    }

    pub fn reversed(self) -> Self {
        let dir = match self.dir {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        };
        Dart { edge: self.edge, dir }
    }

    /// Edge coordinate of the point at distance `depth` along this dart.
    pub fn edge_coord(self, depth: &Rational) -> Rational {
        match self.dir {
            Direction::Forward => depth.clone(),
            Direction::Backward => Rational::one() - depth,
        }
    }

    /// Inverse of [`Dart::edge_coord`].
    pub fn depth_of(self, edge_coord: &Rational) -> Rational {
        self.edge_coord(edge_coord)
    }
}

/// A vertex or an interior point of an edge, in canonical form: an edge
/// coordinate of 0 or 1 is always stored as the corresponding vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint {
    Vertex(VertexId),
    Interior(EdgeId, Rational),
}

impl GraphPoint {
    /// Canonical point at edge coordinate `t` in `[0, 1]`.
    pub fn on_edge(graph: &Graph, edge: EdgeId, t: Rational) -> Self {
        if t.is_zero() {
            GraphPoint::Vertex(graph.origin(edge))
        } else if t.is_one() {
            GraphPoint::Vertex(graph.terminus(edge))
        } else {
            GraphPoint::Interior(edge, t)
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, GraphPoint::Vertex(_))
    }

    pub fn as_vertex(&self) -> Option<VertexId> {
        match self {
            GraphPoint::Vertex(v) => Some(*v),
            GraphPoint::Interior(..) => None,
        }
    }

    /// Whether this point lies on the closed edge `edge`.
    pub fn on_closed_edge(&self, graph: &Graph, edge: EdgeId) -> bool {
        match self {
            GraphPoint::Vertex(v) => graph.origin(edge) == *v || graph.terminus(edge) == *v,
            GraphPoint::Interior(e, _) => *e == edge,
        }
    }

    /// Checks that ids exist and the parameter is strictly inside.
    pub fn check_on(&self, graph: &Graph) -> Result<()> {
        let ok = match self {
            GraphPoint::Vertex(v) => v.0 < graph.vertex_count(),
            GraphPoint::Interior(e, t) => e.0 < graph.edge_count() && in_open_unit(t),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::PointNotOnGraph(graph.name().to_string()))
        }
    }
}

/// Unchecked textual description of a graph, as read from a file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphDesc {
    pub name: String,
    pub vertices: Vec<String>,
    /// (edge id, origin, terminus)
    pub edges: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.violations.join("; "))
        }
    }
}

/// Checks every graph invariant and lists the violated ones.
pub fn validate(desc: &GraphDesc) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for v in &desc.vertices {
        if !seen.insert(v.as_str()) {
            violations.push(format!("duplicate vertex `{v}`"));
        }
    }
    let mut edge_names = BTreeSet::new();
    for (e, o, t) in &desc.edges {
        if !edge_names.insert(e.as_str()) {
            violations.push(format!("duplicate edge `{e}`"));
        }
        for end in [o, t] {
            if !seen.contains(end.as_str()) {
                violations.push(format!("edge `{e}` references unknown vertex `{end}`"));
            }
        }
    }
    if desc.edges.is_empty() {
        violations.push("no edges (trivial graph)".to_string());
    }
    if !violations.is_empty() || desc.vertices.is_empty() {
        return ValidationReport { violations };
    }

    // union-find over vertex names
    let index: HashMap<&str, usize> =
        desc.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..desc.vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (_, o, t) in &desc.edges {
        let a = find(&mut parent, index[o.as_str()]);
        let b = find(&mut parent, index[t.as_str()]);
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    if (0..desc.vertices.len()).any(|v| find(&mut parent, v) != root) {
        violations.push("not connected".to_string());
    }
    ValidationReport { violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeRecord {
    name: String,
    origin: VertexId,
    terminus: VertexId,
}

/// A finite connected nontrivial graph. Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    darts_at: Vec<Vec<Dart>>,
}

impl Graph {
    pub fn from_desc(desc: &GraphDesc) -> Result<Graph> {
        let report = validate(desc);
        if !report.is_ok() {
            return Err(Error::InvalidGraph { name: desc.name.clone(), violations: report.violations });
        }
        let mut vertices = desc.vertices.clone();
        vertices.sort();
        let index: HashMap<&str, VertexId> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), VertexId(i))).collect();
        let mut edges: Vec<EdgeRecord> = desc
            .edges
            .iter()
            .map(|(e, o, t)| EdgeRecord {
                name: e.clone(),
                origin: index[o.as_str()],
                terminus: index[t.as_str()],
            })
            .collect();
        edges.sort_by(|a, b| a.name.cmp(&b.name));
        let mut darts_at = vec![Vec::new(); vertices.len()];
        for (i, rec) in edges.iter().enumerate() {
            darts_at[rec.origin.0].push(Dart::forward(EdgeId(i)));
            darts_at[rec.terminus.0].push(Dart::backward(EdgeId(i)));
        }
        for darts in &mut darts_at {
            darts.sort();
        }
        Ok(Graph { name: desc.name.clone(), vertices, edges, darts_at })
    }

    /// Convenience constructor from string slices.
    pub fn new(name: &str, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph> {
        Graph::from_desc(&GraphDesc {
            name: name.to_string(),
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(e, o, t)| (e.to_string(), o.to_string(), t.to_string()))
                .collect(),
        })
    }

    pub fn to_desc(&self) -> GraphDesc {
        GraphDesc {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|r| {
                    (r.name.clone(), self.vertices[r.origin.0].clone(), self.vertices[r.terminus.0].clone())
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.edges().flat_map(|e| [Dart::forward(e), Dart::backward(e)])
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok().map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.binary_search_by(|r| r.name.as_str().cmp(name)).ok().map(EdgeId)
    }

    pub fn origin(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].origin
    }

    pub fn terminus(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].terminus
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.origin(e) == self.terminus(e)
    }

    /// Vertex a dart leaves from.
    pub fn base(&self, d: Dart) -> VertexId {
        match d.dir {
            Direction::Forward => self.origin(d.edge),
            Direction::Backward => self.terminus(d.edge),
        }
    }

    /// Vertex a dart points to.
    pub fn head(&self, d: Dart) -> VertexId {
        self.base(d.reversed())
    }

    /// Darts based at `v`, sorted.
    pub fn darts_at(&self, v: VertexId) -> &[Dart] {
        &self.darts_at[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.darts_at[v.0].len()
    }

    /// Dart of `edge` based at `v` whose coordinate at `v` is `coord`
    /// (0 or 1); used to resolve loops.
    pub fn dart_at_end(&self, edge: EdgeId, coord_is_one: bool) -> Dart {
        if coord_is_one {
            Dart::backward(edge)
        } else {
            Dart::forward(edge)
        }
    }

    /// Vertex distances from `source`, all edges of length 1.
    pub fn hop_distances(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source.0] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v.0].unwrap();
            for &d in self.darts_at(v) {
                let w = self.head(d);
                if dist[w.0].is_none() {
                    dist[w.0] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn format_point(&self, p: &GraphPoint) -> String {
        match p {
            GraphPoint::Vertex(v) => format!("v:{}", self.vertex_name(*v)),
            GraphPoint::Interior(e, t) => {
                format!("e:{}@{}", self.edge_name(*e), crate::rational::format_rational(t))
            }
        }
    }

    pub fn format_dart(&self, d: Dart) -> String {
        match d.dir {
            Direction::Forward => format!("{}+", self.edge_name(d.edge)),
            Direction::Backward => format!("{}-", self.edge_name(d.edge)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    /// Homeomorphic to `[0, 1]`.
    Interval,
    /// Homeomorphic to the circle.
    Circle,
    /// Some vertex has degree at least 3; not a manifold.
    Branched,
}

pub fn classify(g: &Graph) -> GraphClass {
    if g.vertices().any(|v| g.degree(v) >= 3) {
        GraphClass::Branched
    } else if g.edge_count() == g.vertex_count() {
        // connected, max degree 2, one independent cycle
        GraphClass::Circle
    } else {
        GraphClass::Interval
    }
}

/// How points of the original graph map to the subdivided one.
#[derive(Debug, Clone)]
pub struct Relabeling {
    pub old_edge: EdgeId,
    pub split_at: Rational,
    pub new_vertex: VertexId,
    pub first: EdgeId,
    pub second: EdgeId,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<Option<EdgeId>>,
    inverse_vertex: HashMap<VertexId, VertexId>,
    inverse_edge: HashMap<EdgeId, EdgeId>,
}

impl Relabeling {
    /// Point of the old graph expressed on the subdivided graph.
    pub fn relabel(&self, p: &GraphPoint) -> GraphPoint {
        match p {
            GraphPoint::Vertex(v) => GraphPoint::Vertex(self.vertex_map[v.0]),
            GraphPoint::Interior(e, t) if *e == self.old_edge => {
                let s = &self.split_at;
                if t == s {
                    GraphPoint::Vertex(self.new_vertex)
                } else if t < s {
                    GraphPoint::Interior(self.first, t / s)
                } else {
                    GraphPoint::Interior(self.second, (t - s) / (Rational::one() - s))
                }
            }
            GraphPoint::Interior(e, t) => GraphPoint::Interior(self.edge_map[e.0].unwrap(), t.clone()),
        }
    }

    /// Inverse of [`Relabeling::relabel`].
    pub fn coarsen(&self, p: &GraphPoint) -> GraphPoint {
        let s = &self.split_at;
        match p {
            GraphPoint::Vertex(v) if *v == self.new_vertex => GraphPoint::Interior(self.old_edge, s.clone()),
            GraphPoint::Vertex(v) => GraphPoint::Vertex(self.inverse_vertex[v]),
            GraphPoint::Interior(e, t) if *e == self.first => GraphPoint::Interior(self.old_edge, t * s),
            GraphPoint::Interior(e, t) if *e == self.second => {
                GraphPoint::Interior(self.old_edge, s + t * (Rational::one() - s))
            }
            GraphPoint::Interior(e, t) => GraphPoint::Interior(self.inverse_edge[e], t.clone()),
        }
    }
}

fn fresh_name(taken: &BTreeSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Splits edge `e` at parameter `t` into `<e>_1` (origin side) and `<e>_2`,
/// joined at a new degree-2 vertex `<e>_mid`.
pub fn subdivide(g: &Graph, e: EdgeId, t: &Rational) -> Result<(Graph, Relabeling)> {
    if !in_open_unit(t) {
        return Err(Error::ParameterOutOfRange(crate::rational::format_rational(t)));
    }
    let mut desc = g.to_desc();
    let mut taken: BTreeSet<String> = desc.vertices.iter().cloned().collect();
    taken.extend(desc.edges.iter().map(|(n, _, _)| n.clone()));
    let old = g.edge_name(e).to_string();
    let mid = fresh_name(&taken, format!("{old}_mid"));
    taken.insert(mid.clone());
    let first = fresh_name(&taken, format!("{old}_1"));
    taken.insert(first.clone());
    let second = fresh_name(&taken, format!("{old}_2"));
    let origin = g.vertex_name(g.origin(e)).to_string();
    let terminus = g.vertex_name(g.terminus(e)).to_string();
    desc.vertices.push(mid.clone());
    desc.edges.retain(|(n, _, _)| *n != old);
    desc.edges.push((first.clone(), origin, mid.clone()));
    desc.edges.push((second.clone(), mid.clone(), terminus));
    let fine = Graph::from_desc(&desc)?;

    let vertex_map: Vec<VertexId> =
        g.vertices().map(|v| fine.vertex_by_name(g.vertex_name(v)).unwrap()).collect();
    let edge_map: Vec<Option<EdgeId>> = g
        .edges()
        .map(|x| if x == e { None } else { fine.edge_by_name(g.edge_name(x)) })
        .collect();
    let inverse_vertex = vertex_map.iter().enumerate().map(|(i, v)| (*v, VertexId(i))).collect();
    let inverse_edge = edge_map
        .iter()
        .enumerate()
        .filter_map(|(i, x)| x.map(|x| (x, EdgeId(i))))
        .collect();
    let relabeling = Relabeling {
        old_edge: e,
        split_at: t.clone(),
        new_vertex: fine.vertex_by_name(&mid).unwrap(),
        first: fine.edge_by_name(&first).unwrap(),
        second: fine.edge_by_name(&second).unwrap(),
        vertex_map,
        edge_map,
        inverse_vertex,
        inverse_edge,
    };
    Ok((fine, relabeling))
}

/// Retreat route from one end of a codomain edge to a fork vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkRoute {
    /// Dart of the edge the maps travel on, based at the end they retreat to.
    pub start: Dart,
    /// Darts walked from `base(start)` to the fork; never uses `start.edge`.
    pub path: Vec<Dart>,
    pub fork: VertexId,
    /// Side road entered by the trailing map.
    pub gamma: Dart,
    /// Side road entered by the leading map.
    pub lambda: Dart,
}

impl ForkRoute {
    /// Dart at the fork pointing back the way the maps arrived.
    pub fn arrival(&self) -> Dart {
        match self.path.last() {
            Some(d) => d.reversed(),
            None => self.start,
        }
    }
}

fn side_darts(g: &Graph, v: VertexId, arrival: Dart, road_edge: EdgeId) -> Option<(Dart, Dart)> {
    let mut candidates: Vec<Dart> = g.darts_at(v).iter().copied().filter(|d| *d != arrival).collect();
    // darts of the travelled edge itself are only used as a last resort
    candidates.sort_by_key(|d| (d.edge == road_edge, *d));
    match candidates.as_slice() {
        [a, b, ..] => Some((*a, *b)),
        _ => None,
    }
}

/// Breadth-first search from `base(start)`, avoiding `start.edge`, for the
/// nearest vertex offering two side darts other than the arrival dart.
pub fn fork_route(g: &Graph, start: Dart) -> Result<ForkRoute> {
    let source = g.base(start);
    let mut via: Vec<Option<Dart>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[source.0] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(d) = via[cur.0] {
            path.push(d);
            cur = g.base(d);
        }
        path.reverse();
        let arrival = path.last().map(|d| d.reversed()).unwrap_or(start);
        if g.degree(v) >= 3 {
            if let Some((gamma, lambda)) = side_darts(g, v, arrival, start.edge) {
                return Ok(ForkRoute { start, path, fork: v, gamma, lambda });
            }
        }
        for &d in g.darts_at(v) {
            if d.edge == start.edge {
                continue;
            }
            let w = g.head(d);
            if !seen[w.0] {
                seen[w.0] = true;
                via[w.0] = Some(d);
                queue.push_back(w);
            }
        }
    }
    Err(Error::NoFork)
}

/// Shortest-path distance in the metric graph with unit edge lengths.
pub fn path_distance(g: &Graph, p: &GraphPoint, q: &GraphPoint) -> Rational {
    // (vertex, distance from the point to that vertex)
    fn anchors(g: &Graph, p: &GraphPoint) -> Vec<(VertexId, Rational)> {
        match p {
            GraphPoint::Vertex(v) => vec![(*v, Rational::zero())],
            GraphPoint::Interior(e, t) => {
                vec![(g.origin(*e), t.clone()), (g.terminus(*e), Rational::one() - t)]
            }
        }
    }
    let mut best: Option<Rational> = None;
    if let (GraphPoint::Interior(e1, t1), GraphPoint::Interior(e2, t2)) = (p, q) {
        if e1 == e2 {
            best = Some(if t1 > t2 { t1 - t2 } else { t2 - t1 });
        }
    }
    if p == q {
        return Rational::zero();
    }
    for (x, dx) in anchors(g, p) {
        let hops = g.hop_distances(x);
        for (y, dy) in anchors(g, q) {
            if let Some(h) = hops[y.0] {
                let total = &dx + int(h as i64) + &dy;
                if best.as_ref().is_none_or(|b| total < *b) {
                    best = Some(total);
                }
            }
        }
    }
    best.expect("graph is connected")
}

/// Breadth-first spanning tree rooted at the smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: VertexId,
    pub tree_edges: BTreeSet<EdgeId>,
    /// Forward darts of the non-tree edges, in edge order; free generators
    /// of the fundamental group.
    pub generators: Vec<Dart>,
    /// Dart from the parent into each vertex (`None` at the root).
    pub parent_dart: Vec<Option<Dart>>,
}

impl SpanningTree {
    /// Darts from the root down to `v`.
    pub fn path_from_root(&self, g: &Graph, v: VertexId) -> Vec<Dart> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(d) = self.parent_dart[cur.0] {
            path.push(d);
            cur = g.base(d);
        }
        path.reverse();
        path
    }

    pub fn generator_index(&self, e: EdgeId) -> Option<usize> {
        self.generators.iter().position(|d| d.edge == e)
    }
}

pub fn spanning_tree(g: &Graph) -> SpanningTree {
    let root = VertexId(0);
    let mut parent_dart = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut tree_edges = BTreeSet::new();
    seen[root.0] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &d in g.darts_at(v) {
            let w = g.head(d);
            if !seen[w.0] {
                seen[w.0] = true;
                parent_dart[w.0] = Some(d);
                tree_edges.insert(d.edge);
                queue.push_back(w);
            }
        }
    }
    let generators = g.edges().filter(|e| !tree_edges.contains(e)).map(Dart::forward).collect();
    SpanningTree { root, tree_edges, generators, parent_dart }
}

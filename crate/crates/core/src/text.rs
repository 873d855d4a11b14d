//! Line-based text formats for graphs and maps.
//!
//! ```text
//! # comments start with '#'
//! graph theta
//! vertex x
//! vertex y
//! edge e1 x y
//!
//! map f seg theta
//! vimage p0 e:e1@3/4
//! track e1 : (0,e:e1@3/4) (1,e:e1@1/4)
//! ```
//!
//! Points are `v:<vertex>` or `e:<edge>@<p/q>`. Consecutive track points
//! must share a closed edge; see [`TrackSegment::between`] for how the
//! carrier edge is resolved.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{validate, Graph, GraphDesc, GraphPoint, ValidationReport};
use crate::plmap::{EdgeTrack, PLMap, TrackSegment};
use crate::rational::{format_rational, half, in_closed_unit, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
enum PointToken {
    Vertex(String),
    Edge(String, Rational),
}

#[derive(Debug, Clone, Default)]
struct MapDesc {
    line: usize,
    name: String,
    domain: String,
    codomain: String,
    vimages: Vec<(usize, String, PointToken)>,
    tracks: Vec<(usize, String, Vec<(Rational, PointToken)>)>,
}

/// Parsed file contents before graph validation.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub graphs: Vec<GraphDesc>,
    graph_lines: Vec<usize>,
    maps: Vec<MapDesc>,
}

enum Block {
    None,
    Graph,
    Map,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_point(line: usize, text: &str) -> Result<PointToken> {
    if let Some(v) = text.strip_prefix("v:") {
        if v.is_empty() {
            return Err(parse_err(line, "empty vertex id"));
        }
        return Ok(PointToken::Vertex(v.to_string()));
    }
    if let Some(rest) = text.strip_prefix("e:") {
        let (edge, param) = rest
            .split_once('@')
            .ok_or_else(|| parse_err(line, format!("expected e:<edge>@<p/q>, got `{text}`")))?;
        let t = parse_rational(param).ok_or_else(|| parse_err(line, format!("malformed rational `{param}`")))?;
        if !in_closed_unit(&t) {
            return Err(parse_err(line, format!("edge parameter `{param}` outside [0, 1]")));
        }
        return Ok(PointToken::Edge(edge.to_string(), t));
    }
    Err(parse_err(line, format!("malformed point `{text}`")))
}

fn parse_track_points(line: usize, text: &str) -> Result<Vec<(Rational, PointToken)>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| parse_err(line, "expected `(`"))?;
        let close = open.find(')').ok_or_else(|| parse_err(line, "missing `)`"))?;
        let inner = &open[..close];
        let (t, p) = inner.split_once(',').ok_or_else(|| parse_err(line, "expected `(<t>,<point>)`"))?;
        let t = parse_rational(t).ok_or_else(|| parse_err(line, format!("malformed rational `{}`", t.trim())))?;
        if !in_closed_unit(&t) {
            return Err(parse_err(line, "track parameter outside [0, 1]"));
        }
        out.push((t, parse_point(line, p.trim())?));
        rest = open[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses the syntax of a document. Graph invariants are not checked here.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut block = Block::None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "graph" => {
                let [_, name] = words[..] else {
                    return Err(parse_err(line, "expected `graph <name>`"));
                };
                doc.graphs.push(GraphDesc { name: name.to_string(), ..Default::default() });
                doc.graph_lines.push(line);
                block = Block::Graph;
            }
            "vertex" => {
                let (Block::Graph, [_, id]) = (&block, &words[..]) else {
                    return Err(parse_err(line, "expected `vertex <id>` inside a graph block"));
                };
                doc.graphs.last_mut().unwrap().vertices.push(id.to_string());
            }
            "edge" => {
                let (Block::Graph, [_, id, o, t]) = (&block, &words[..]) else {
                    return Err(parse_err(line, "expected `edge <id> <origin> <terminus>` inside a graph block"));
                };
                doc.graphs.last_mut().unwrap().edges.push((id.to_string(), o.to_string(), t.to_string()));
            }
            "map" => {
                let [_, name, dom, cod] = words[..] else {
                    return Err(parse_err(line, "expected `map <name> <domain-graph> <codomain-graph>`"));
                };
                doc.maps.push(MapDesc {
                    line,
                    name: name.to_string(),
                    domain: dom.to_string(),
                    codomain: cod.to_string(),
                    ..Default::default()
                });
                block = Block::Map;
            }
            "vimage" => {
                let (Block::Map, [_, v, p]) = (&block, &words[..]) else {
                    return Err(parse_err(line, "expected `vimage <vertex> <point>` inside a map block"));
                };
                let p = parse_point(line, p)?;
                doc.maps.last_mut().unwrap().vimages.push((line, v.to_string(), p));
            }
            "track" => {
                if !matches!(block, Block::Map) {
                    return Err(parse_err(line, "`track` outside a map block"));
                }
                let body = content["track".len()..].trim_start();
                let (edge, points) =
                    body.split_once(':').ok_or_else(|| parse_err(line, "expected `track <edge> : ...`"))?;
                let edge = edge.trim();
                if edge.is_empty() || edge.contains(char::is_whitespace) {
                    return Err(parse_err(line, "expected a single edge id before `:`"));
                }
                let points = parse_track_points(line, points)?;
                doc.maps.last_mut().unwrap().tracks.push((line, edge.to_string(), points));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(doc)
}

impl Document {
    /// Validation report per graph, in file order.
    pub fn graph_reports(&self) -> Vec<(String, ValidationReport)> {
        self.graphs.iter().map(|g| (g.name.clone(), validate(g))).collect()
    }

    pub fn build_graphs(&self) -> Result<HashMap<String, Arc<Graph>>> {
        let mut out = HashMap::new();
        for (desc, line) in self.graphs.iter().zip(&self.graph_lines) {
            let g = Graph::from_desc(desc)?;
            if out.insert(desc.name.clone(), Arc::new(g)).is_some() {
                return Err(parse_err(*line, format!("graph `{}` defined twice", desc.name)));
            }
        }
        Ok(out)
    }

    pub fn build_maps(&self) -> Result<Vec<PLMap>> {
        let graphs = self.build_graphs()?;
        self.maps.iter().map(|m| build_map(m, &graphs)).collect()
    }
}

fn resolve_point(g: &Graph, line: usize, token: &PointToken) -> Result<GraphPoint> {
    match token {
        PointToken::Vertex(v) => g
            .vertex_by_name(v)
            .map(GraphPoint::Vertex)
            .ok_or_else(|| Error::InvalidMap(format!("line {line}: unknown vertex `{v}` in `{}`", g.name()))),
        PointToken::Edge(e, t) => g
            .edge_by_name(e)
            .map(|e| GraphPoint::on_edge(g, e, t.clone()))
            .ok_or_else(|| Error::InvalidMap(format!("line {line}: unknown edge `{e}` in `{}`", g.name()))),
    }
}

fn build_map(desc: &MapDesc, graphs: &HashMap<String, Arc<Graph>>) -> Result<PLMap> {
    let lookup = |name: &str| {
        graphs
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidMap(format!("line {}: unknown graph `{name}`", desc.line)))
    };
    let dom = lookup(&desc.domain)?;
    let cod = lookup(&desc.codomain)?;
    let mut tracks: Vec<Option<EdgeTrack>> = vec![None; dom.edge_count()];
    for (line, edge, points) in &desc.tracks {
        let e = dom
            .edge_by_name(edge)
            .ok_or_else(|| Error::InvalidMap(format!("line {line}: unknown domain edge `{edge}`")))?;
        let pts = points
            .iter()
            .map(|(t, p)| Ok((t.clone(), resolve_point(&cod, *line, p)?)))
            .collect::<Result<Vec<_>>>()?;
        let track = EdgeTrack::from_breakpoints(&cod, &pts)
            .map_err(|err| Error::InvalidMap(format!("line {line}: {err}")))?;
        if tracks[e.0].replace(track).is_some() {
            return Err(Error::InvalidMap(format!("line {line}: second track for `{edge}`")));
        }
    }
    let tracks = tracks
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| {
                Error::InvalidMap(format!("map `{}`: no track for edge `{}`", desc.name, dom.edge_name(crate::graph::EdgeId(i))))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut map = PLMap::from_tracks(&desc.name, dom.clone(), cod.clone(), tracks)?;
    let mut images = map.vertex_images().to_vec();
    for (line, v, p) in &desc.vimages {
        let vid = dom
            .vertex_by_name(v)
            .ok_or_else(|| Error::InvalidMap(format!("line {line}: unknown domain vertex `{v}`")))?;
        images[vid.0] = resolve_point(&cod, *line, p)?;
    }
    map = PLMap::new(&desc.name, dom, cod, images, map.tracks().to_vec())?;
    Ok(map)
}

/// Parses a document holding exactly one map.
pub fn parse_single_map(text: &str) -> Result<PLMap> {
    let doc = parse_document(text)?;
    let mut maps = doc.build_maps()?;
    match maps.len() {
        1 => Ok(maps.pop().unwrap()),
        n => Err(Error::InvalidMap(format!("expected exactly one map, found {n}"))),
    }
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.name());
    for v in g.vertices() {
        writeln!(out, "vertex {}", g.vertex_name(v)).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "edge {} {} {}", g.edge_name(e), g.vertex_name(g.origin(e)), g.vertex_name(g.terminus(e)))
            .unwrap();
    }
    out
}

fn resolves_to(cod: &Graph, s: &TrackSegment) -> bool {
    match TrackSegment::between(cod, s.t0.clone(), s.t1.clone(), &s.start_point(cod), &s.end_point(cod)) {
        Some(r) if r.is_constant() && s.is_constant() => true,
        Some(r) => r.carrier == s.carrier && r.a0 == s.a0 && r.a1 == s.a1,
        None => false,
    }
}

/// Breakpoint list `(t,point) ...` for a run of contiguous segments. A
/// segment whose carrier would be read back differently gets extra
/// breakpoints: its midpoint if that suffices, otherwise its thirds.
pub fn format_segments(cod: &Graph, segments: &[TrackSegment]) -> String {
    let mut points: Vec<(Rational, GraphPoint)> = Vec::new();
    for s in segments {
        if points.is_empty() {
            points.push((s.t0.clone(), s.start_point(cod)));
        }
        if !resolves_to(cod, s) {
            let mid = (&s.t0 + &s.t1) * half();
            let halves = [s.restrict(&s.t0, &mid), s.restrict(&mid, &s.t1)];
            let cuts = if halves.iter().all(|h| resolves_to(cod, h)) {
                vec![mid]
            } else {
                let third = (&s.t1 - &s.t0) / crate::rational::int(3);
                vec![&s.t0 + &third, &s.t1 - &third]
            };
            for c in cuts {
                let p = s.point_at(cod, &c);
                points.push((c, p));
            }
        }
        points.push((s.t1.clone(), s.end_point(cod)));
    }
    points
        .iter()
        .map(|(t, p)| format!("({},{})", format_rational(t), cod.format_point(p)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_map(m: &PLMap) -> String {
    let dom = m.domain();
    let cod = m.codomain();
    let mut out = format!("map {} {} {}\n", m.name(), dom.name(), cod.name());
    for v in dom.vertices() {
        writeln!(out, "vimage {} {}", dom.vertex_name(v), cod.format_point(m.vertex_image(v))).unwrap();
    }
    for e in dom.edges() {
        writeln!(out, "track {} : {}", dom.edge_name(e), format_segments(cod, m.track(e).segments())).unwrap();
    }
    out
}

/// Self-contained file: the graphs a map needs, then the map.
pub fn format_map_document(m: &PLMap) -> String {
    let mut out = format_graph(m.domain());
    if m.codomain().name() != m.domain().name() {
        out.push('\n');
        out.push_str(&format_graph(m.codomain()));
    }
    out.push('\n');
    out.push_str(&format_map(m));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::q;

    const FIGURE_EIGHT_ID: &str = "\
# identity of the figure-eight
graph figure-eight
vertex w
edge a w w
edge b w w

map id figure-eight figure-eight
vimage w v:w
track a : (0,v:w) (1/2,e:a@1/2) (1,v:w)
track b : (0,v:w) (1/2,e:b@1/2) (1,v:w)
";

    #[test]
    fn parses_identity() {
        let m = parse_single_map(FIGURE_EIGHT_ID).unwrap();
        let g = catalog::figure_eight();
        let a = g.edge_by_name("a").unwrap();
        assert_eq!(m.evaluate(&GraphPoint::Interior(a, q(1, 3))).unwrap(), GraphPoint::Interior(a, q(1, 3)));
        assert_eq!(**m.domain(), g);
    }

    #[test]
    fn zero_denominator_is_a_parse_error_with_line() {
        let text = FIGURE_EIGHT_ID.replace("(1/2,e:a@1/2)", "(1/2,e:a@1/0)");
        assert_eq!(parse_document(&text).unwrap_err(), Error::Parse { line: 9, message: "malformed rational `1/0`".into() });
    }

    #[test]
    fn unknown_directive() {
        assert!(matches!(parse_document("graph g\nvertx v\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn canonical_round_trip() {
        let m = parse_single_map(FIGURE_EIGHT_ID).unwrap();
        let text = format_map_document(&m);
        let again = parse_single_map(&text).unwrap();
        assert_eq!(format_map_document(&again), text);
        assert_eq!(again, m);
    }

    #[test]
    fn loop_traversal_written_with_midpoint() {
        let g = Arc::new(catalog::figure_eight());
        let id = PLMap::identity("id", g);
        let text = format_map(&id);
        assert!(text.contains("track a : (0,v:w) (1/2,e:a@1/2) (1,v:w)"), "{text}");
    }
}

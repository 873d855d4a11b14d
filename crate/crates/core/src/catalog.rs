//! Small named graphs used by the examples, the CLI sample data and the test
//! suites.

use crate::graph::Graph;

/// One vertex `w` with loops `a` and `b`.
pub fn figure_eight() -> Graph {
    Graph::new("figure-eight", &["w"], &[("a", "w", "w"), ("b", "w", "w")]).unwrap()
}

/// Vertices `x`, `y` joined by parallel edges `e1`, `e2`, `e3`, all `x -> y`.
pub fn theta() -> Graph {
    Graph::new("theta", &["x", "y"], &[("e1", "x", "y"), ("e2", "x", "y"), ("e3", "x", "y")]).unwrap()
}

/// Triangle `j p q` (edges `c1 c2 c3`) with the tail `j -t1-> m -t2-> l`.
pub fn lollipop() -> Graph {
    Graph::new(
        "lollipop",
        &["j", "p", "q", "m", "l"],
        &[("c1", "j", "p"), ("c2", "p", "q"), ("c3", "q", "j"), ("t1", "j", "m"), ("t2", "m", "l")],
    )
    .unwrap()
}

/// Complete graph on `v1 .. v4`.
pub fn k4() -> Graph {
    Graph::new(
        "k4",
        &["v1", "v2", "v3", "v4"],
        &[
            ("e12", "v1", "v2"),
            ("e13", "v1", "v3"),
            ("e14", "v1", "v4"),
            ("e23", "v2", "v3"),
            ("e24", "v2", "v4"),
            ("e34", "v3", "v4"),
        ],
    )
    .unwrap()
}

/// Path `p0 -e1-> p1 -> ... -> pn`.
pub fn path(n: usize) -> Graph {
    assert!(n >= 1);
    let vertices: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
    let edges: Vec<(String, String, String)> =
        (1..=n).map(|i| (format!("e{i}"), format!("p{}", i - 1), format!("p{i}"))).collect();
    let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let e: Vec<(&str, &str, &str)> =
        edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    Graph::new(&format!("path{n}"), &v, &e).unwrap()
}

/// Cycle `x -a-> y -b-> z -c-> x`.
pub fn triangle() -> Graph {
    Graph::new("triangle", &["x", "y", "z"], &[("a", "x", "y"), ("b", "y", "z"), ("c", "z", "x")]).unwrap()
}

/// Cycle of `n` consistently oriented edges; `n = 1` is the loop `a` at `v`.
pub fn circle(n: usize) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::new("circle1", &["v"], &[("a", "v", "v")]).unwrap();
    }
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> =
        (0..n).map(|i| (format!("a{i}"), format!("v{i}"), format!("v{}", (i + 1) % n))).collect();
    let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let e: Vec<(&str, &str, &str)> =
        edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    Graph::new(&format!("circle{n}"), &v, &e).unwrap()
}

/// The graphs random test instances are drawn from.
pub fn suite() -> Vec<Graph> {
    vec![figure_eight(), theta(), lollipop(), k4(), path(3)]
}

//! Induced homomorphisms on fundamental groups, homotopy classes and degrees.

use std::fmt::Write as _;

use num::One;

use super::conjugacy::simultaneously_conjugate;
use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::graph::{classify, spanning_tree, Dart, Direction, Graph, GraphClass, SpanningTree};
use crate::plmap::{EdgeTrack, PLMap, TrackSegment};

/// The homomorphism a map induces between the free fundamental groups of
/// its domain and codomain, based at the respective tree roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedHom {
    pub domain_tree: SpanningTree,
    pub codomain_tree: SpanningTree,
    /// Domain generators (forward darts of non-tree edges).
    pub generators: Vec<Dart>,
    /// Reduced image of each generator, in the codomain generators.
    pub images: Vec<Word>,
}

impl InducedHom {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The same homomorphism followed by the inner automorphism `x ↦ c x c⁻¹`.
    pub fn conjugated(&self, c: &Word) -> InducedHom {
        InducedHom { images: self.images.iter().map(|w| w.conjugate_by(c)).collect(), ..self.clone() }
    }

    /// Lines `gen -> word` naming generators by their edges.
    pub fn format(&self, domain: &Graph, codomain: &Graph) -> String {
        let names = generator_names(codomain, &self.codomain_tree);
        let mut out = String::new();
        for (d, img) in self.generators.iter().zip(&self.images) {
            writeln!(out, "  {} -> {}", domain.edge_name(d.edge), img.format_with(&names)).unwrap();
        }
        out
    }
}

fn generator_names(g: &Graph, tree: &SpanningTree) -> Vec<String> {
    tree.generators.iter().map(|d| g.edge_name(d.edge).to_string()).collect()
}

/// Letter for one segment after retracting every interior point of an
/// edge onto the edge's origin: the segment then either stays at a vertex
/// or runs once along its carrier.
fn segment_letter(tree: &SpanningTree, s: &TrackSegment) -> Option<Letter> {
    let x0 = s.a0.is_one();
    let x1 = s.a1.is_one();
    if x0 == x1 {
        return None;
    }
    tree.generator_index(s.carrier).map(|gen| Letter::new(gen, x0))
}

fn track_word(tree: &SpanningTree, track: &EdgeTrack) -> Word {
    Word::from_letters(track.segments().iter().filter_map(|s| segment_letter(tree, s)).collect()).reduced()
}

pub fn induced_hom(m: &PLMap) -> InducedHom {
    let dom = m.domain();
    let cod = m.codomain();
    let domain_tree = spanning_tree(dom);
    let codomain_tree = spanning_tree(cod);
    let edge_words: Vec<Word> = dom.edges().map(|e| track_word(&codomain_tree, m.track(e))).collect();
    let dart_word = |d: Dart| match d.dir {
        Direction::Forward => edge_words[d.edge.0].clone(),
        Direction::Backward => edge_words[d.edge.0].inverse(),
    };
    let images = domain_tree
        .generators
        .iter()
        .map(|&gen| {
            let mut loop_darts = domain_tree.path_from_root(dom, dom.base(gen));
            loop_darts.push(gen);
            loop_darts.extend(domain_tree.path_from_root(dom, dom.head(gen)).iter().rev().map(|d| d.reversed()));
            loop_darts.into_iter().fold(Word::identity(), |acc, d| acc.mul(&dart_word(d)))
        })
        .collect();
    InducedHom { generators: domain_tree.generators.clone(), domain_tree, codomain_tree, images }
}

/// Conjugator `c` with `c · h1(x) · c⁻¹ = h2(x)` for all generators.
pub fn homs_conjugate(h1: &InducedHom, h2: &InducedHom) -> Option<Word> {
    if h1.rank() != h2.rank() {
        return None;
    }
    simultaneously_conjugate(&h1.images, &h2.images)
}

/// Free homotopy of maps between graphs: the induced homomorphisms agree up
/// to one simultaneous conjugation.
pub fn maps_homotopic(m1: &PLMap, m2: &PLMap) -> bool {
    m1.same_graphs(m2) && homs_conjugate(&induced_hom(m1), &induced_hom(m2)).is_some()
}

/// Exponent sum of each domain generator's image, for a circle codomain.
pub fn circle_degrees(m: &PLMap) -> Result<Vec<i64>> {
    if classify(m.codomain()) != GraphClass::Circle {
        return Err(Error::NotCircle(m.codomain().name().to_string()));
    }
    Ok(induced_hom(m).images.iter().map(|w| w.exponent_sum(0)).collect())
}

/// Degree of a map into a circle: the exponent sum of the first domain
/// generator's image (0 when the domain is a tree). For a circle domain
/// this is the classical degree.
pub fn circle_degree(m: &PLMap) -> Result<i64> {
    Ok(circle_degrees(m)?.first().copied().unwrap_or(0))
}

/// `|deg f − deg g|` for a pair of circle self-maps.
pub fn nielsen_circle(f: &PLMap, g: &PLMap) -> Result<u64> {
    if !f.same_graphs(g) {
        return Err(Error::GraphMismatch);
    }
    if classify(f.domain()) != GraphClass::Circle {
        return Err(Error::NotCircle(f.domain().name().to_string()));
    }
    Ok((circle_degree(f)? - circle_degree(g)?).unsigned_abs())
}

/// Textual homotopy certificate for one map: both induced homomorphisms,
/// the conjugator and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub label: String,
    pub verdict: bool,
    pub text: String,
}

pub fn certificate(label: &str, before: &PLMap, after: &PLMap) -> Certificate {
    let dom = before.domain();
    let cod = before.codomain();
    let mut text = String::new();
    writeln!(text, "certificate {label}").unwrap();
    if !before.same_graphs(after) {
        writeln!(text, "graphs differ").unwrap();
        writeln!(text, "verdict not homotopic").unwrap();
        return Certificate { label: label.to_string(), verdict: false, text };
    }
    let h1 = induced_hom(before);
    let h2 = induced_hom(after);
    writeln!(
        text,
        "basepoints {} {}",
        dom.vertex_name(h1.domain_tree.root),
        cod.vertex_name(h1.codomain_tree.root)
    )
    .unwrap();
    writeln!(text, "before").unwrap();
    text.push_str(&h1.format(dom, cod));
    writeln!(text, "after").unwrap();
    text.push_str(&h2.format(dom, cod));
    let c = homs_conjugate(&h1, &h2);
    let names = generator_names(cod, &h1.codomain_tree);
    match &c {
        Some(c) => writeln!(text, "conjugator {}", c.format_with(&names)).unwrap(),
        None => writeln!(text, "conjugator none").unwrap(),
    }
    writeln!(text, "verdict {}", if c.is_some() { "homotopic" } else { "not homotopic" }).unwrap();
    Certificate { label: label.to_string(), verdict: c.is_some(), text }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::graph::{EdgeId, GraphPoint, VertexId};
    use crate::rational::{q, Rational};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap().reduced()
    }

    /// Circle self-map of `circle(1)` winding `k` times.
    fn winding(k: i64) -> PLMap {
        let c = Arc::new(catalog::circle(1));
        let a = EdgeId(0);
        let track = if k == 0 {
            EdgeTrack::constant(&c, &GraphPoint::Vertex(VertexId(0)))
        } else {
            let n = k.unsigned_abs() as i64;
            let segs = (0..n)
                .map(|i| {
                    let (a0, a1) = if k > 0 { (q(0, 1), q(1, 1)) } else { (q(1, 1), q(0, 1)) };
                    TrackSegment::new(q(i, n), q(i + 1, n), a, a0, a1)
                })
                .collect();
            EdgeTrack::new(&c, segs).unwrap()
        };
        PLMap::from_tracks("w", c.clone(), c, vec![track]).unwrap()
    }

    #[test]
    fn identity_on_figure_eight() {
        let g8 = Arc::new(catalog::figure_eight());
        let h = induced_hom(&PLMap::identity("id", g8));
        assert_eq!(h.images, vec![w("a"), w("b")]);
    }

    #[test]
    fn track_through_a_then_b() {
        let g8 = Arc::new(catalog::figure_eight());
        let (a, b) = (EdgeId(0), EdgeId(1));
        let ta = EdgeTrack::new(
            &g8,
            vec![
                TrackSegment::new(q(0, 1), q(1, 2), a, q(0, 1), q(1, 1)),
                TrackSegment::new(q(1, 2), q(1, 1), b, q(0, 1), q(1, 1)),
            ],
        )
        .unwrap();
        let tb = PLMap::identity("id", g8.clone()).track(b).clone();
        let m = PLMap::from_tracks("m", g8.clone(), g8, vec![ta, tb]).unwrap();
        assert_eq!(induced_hom(&m).images[0], w("ab"));
    }

    #[test]
    fn constant_map_is_trivial() {
        let g8 = Arc::new(catalog::figure_eight());
        let p = GraphPoint::Interior(EdgeId(1), q(1, 3));
        let m = PLMap::constant("c", g8.clone(), g8, &p).unwrap();
        assert!(induced_hom(&m).images.iter().all(Word::is_empty));
    }

    #[test]
    fn interior_excursions_cancel() {
        let g8 = Arc::new(catalog::figure_eight());
        let a = EdgeId(0);
        let pts: Vec<(Rational, Rational)> = vec![(q(0, 1), q(0, 1)), (q(1, 3), q(2, 3)), (q(2, 3), q(0, 1)), (q(1, 1), q(1, 1))];
        let segs = pts.windows(2).map(|p| TrackSegment::new(p[0].0.clone(), p[1].0.clone(), a, p[0].1.clone(), p[1].1.clone())).collect();
        let ta = EdgeTrack::new(&g8, segs).unwrap();
        let tb = PLMap::identity("id", g8.clone()).track(EdgeId(1)).clone();
        let m = PLMap::from_tracks("m", g8.clone(), g8, vec![ta, tb]).unwrap();
        assert_eq!(induced_hom(&m).images[0], w("a"));
    }

    #[test]
    fn homotopy_examples() {
        let tri = Arc::new(catalog::triangle());
        let id = PLMap::identity("id", tri.clone());
        assert_eq!(circle_degree(&id).unwrap(), 1);
        let p = PLMap::constant("p", tri.clone(), tri.clone(), &GraphPoint::Interior(EdgeId(0), q(1, 2))).unwrap();
        let r = PLMap::constant("r", tri.clone(), tri.clone(), &GraphPoint::Vertex(VertexId(2))).unwrap();
        assert!(maps_homotopic(&p, &r));
        assert!(!maps_homotopic(&id, &p));
        assert_eq!(circle_degree(&p).unwrap(), 0);
        assert!(matches!(circle_degree(&PLMap::identity("g8", Arc::new(catalog::figure_eight()))), Err(Error::NotCircle(_))));
    }

    #[test]
    fn degrees_and_nielsen() {
        assert_eq!(circle_degree(&winding(2)).unwrap(), 2);
        assert_eq!(circle_degree(&winding(-3)).unwrap(), -3);
        assert!(!maps_homotopic(&winding(1), &winding(2)));
        assert_eq!(nielsen_circle(&winding(2), &winding(0)).unwrap(), 2);
        assert_eq!(nielsen_circle(&winding(-1), &winding(3)).unwrap(), 4);
        for k in -2..=2 {
            assert_eq!(nielsen_circle(&winding(k), &winding(k)).unwrap(), 0);
        }
    }

    #[test]
    fn certificate_text() {
        let g8 = Arc::new(catalog::figure_eight());
        let id = PLMap::identity("id", g8.clone());
        let cert = certificate("f", &id, &id);
        assert!(cert.verdict);
        assert_eq!(
            cert.text,
            "certificate f\nbasepoints w w\nbefore\n  a -> a\n  b -> b\nafter\n  a -> a\n  b -> b\nconjugator 1\nverdict homotopic\n"
        );
    }
}

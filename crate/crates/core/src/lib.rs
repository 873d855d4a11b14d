//! Piecewise-linear maps between finite graphs: exact coincidence sets,
//! constructive removal of coincidences by homotopy, and an independent
//! fundamental-group certifier for the homotopies.

pub mod catalog;
pub mod certify;
pub mod error;
pub mod figure;
pub mod graph;
pub mod plmap;
pub mod rational;
pub mod removal;
pub mod steps;
pub mod text;

pub use error::{Error, Result};
pub use graph::{classify, Dart, EdgeId, Graph, GraphClass, GraphPoint, VertexId};
pub use plmap::{coincidences, CoincidencePoint, EdgeTrack, PLMap, TrackSegment, Transversality};

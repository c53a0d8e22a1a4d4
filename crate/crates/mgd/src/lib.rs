//! Marked graph diagrams (ch-diagrams) of surface-links.
//!
//! This crate implements:
//!
//! - planar combinatorial maps for marked graph diagrams and tangles, with a
//!   line-oriented text format (`mgd v1`), validation, face tracing, and
//!   canonical codes (`diagram`, `format`, `canon`);
//! - resolutions and the diagram invariants used to separate Yoshikawa moves:
//!   crossing parity, component counts, mu+/mu-, Euler characteristic, s, T,
//!   and the transversal component count sharp (`invariants`);
//! - the Kauffman bracket and bounded Reidemeister simplification backing the
//!   admissibility check (`bracket`, `simplify`);
//! - the Yoshikawa/Reidemeister move catalogs as data, a generic tangle
//!   matcher and rewriter (`rules`, `matching`, `rewrite`);
//! - bounded breadth-first search producing replayable move-sequence
//!   certificates, plus the generating-set and independence harnesses
//!   (`search`).

pub mod bracket;
pub mod canon;
pub mod diagram;
pub mod format;
pub mod invariants;
pub mod matching;
pub mod orient;
pub mod rewrite;
pub mod rules;
pub mod search;
pub mod simplify;

pub use diagram::{
    CircleId, Dart, Diagram, DiagramError, EdgeId, End, FaceGlue, FaceId, FaceToken, OrientData,
    OverPair, PlusPairing, PortId, RawDiagram, Slot, VertexId, VertexKind,
};

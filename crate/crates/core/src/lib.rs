//! Ordered graphs, pure pairs, and the blockade machinery that turns
//! "no big anticomplete pair" into rainbow copies of ordered forests.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`] — packed-bit ordered graphs, vertex sets, basic measures,
//!   and the OGR v1 text format.
//! * [`patterns`] — ordered induced-subgraph containment, rainbow
//!   containment relative to a blockade, and the named gadget patterns.
//! * [`purepair`] — exact/branch-and-bound/greedy search for pure pairs,
//!   the degree/copy/pair trichotomy, and an alpha-omega utility.
//! * [`blockade`] — width/shrinkage/linkage measures, shrink-resistant
//!   contraction, band classification, and the composed selectors.
//! * [`leafcover`] — the leaf-covered structure: single covering step,
//!   induction step, iterated version, and the full selector.
//! * [`embed`] — rainbow tree embedding, the sparse trichotomy driver,
//!   degree-peeling extraction, and the pure-pair driver.
//! * [`gen`] — reproducible G(n,p), the girth construction, and the
//!   pure-pair scaling experiment.
//!
//! All randomness is counter-based and keyed by an explicit seed, so any
//! result is bit-identical across runs, platforms and thread counts.

pub mod bits;
pub mod blockade;
pub mod embed;
pub mod error;
pub mod gen;
pub mod graph;
pub mod leafcover;
pub mod logspace;
pub mod patterns;
pub mod purepair;

pub use error::Error;
pub use graph::{OrderedGraph, VertexSet};
pub use patterns::Embedding;
pub use purepair::PurePairWitness;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

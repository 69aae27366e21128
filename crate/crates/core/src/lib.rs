//! Minimal symplectic fillings of lens spaces via zero-representing tuples,
//! flip graphs of polygon triangulations, lantern monodromy words and
//! plumbing lattices.

mod error;

pub mod contfrac;
pub mod export;
pub mod flipgraph;
pub mod lattice;
pub mod monodromy;
pub mod polygon;
pub mod tuples;
pub mod verify;

pub use contfrac::{cf_eval, hj_expand, is_wahl_family, riemenschneider_dual, wahl_params, HJTuple, Lens, Rational, WahlParams};
pub use error::{Error, Result};
pub use polygon::{initial_triangulation, phi_inverse, FlipQuad, Triangulation};
pub use tuples::{betti, blowdown, blowup, enumerate_zk, fillings, max_k, BlowSite, ZTuple};
pub use flipgraph::{build_gk, build_gpq, count_paths, depth_recipe, edge_weights, graph_distance, DepthRecipe, GradedGraph, Selector};
pub use monodromy::{initial_word, lantern_substitute, word_for, word_stats, Curve, TwistWord, WordStats};
pub use lattice::{adjunction_c1, chain_embeddings, is_even, plumbing_form, vectors_of_square, IntForm, LatticeClass};
pub use export::GraphExport;

//! Dense induced bipartite subgraphs of triangle-free and `K_t`-free graphs.
//!
//! Every extractor returns a [`BipartiteCert`] that has already been checked with
//! [`verify_bipartite_cert`], which uses nothing but the graph and the two sides.

pub mod binomial;
pub mod cert;
pub mod coloring;
pub mod degeneracy;
pub mod dense;
pub mod error;
pub mod generators;
pub mod gf2k;
pub mod graph;
pub mod reduction;
pub mod rng;
pub mod sparse;
pub mod spectral;
pub mod triangles;

pub use cert::{verify_bipartite_cert, BipartiteCert, CertError, ExtractionTrace, Failure, VerificationReport};
pub use degeneracy::{core, degeneracy_order, half_avg_subgraph, minimal_min_degree_subgraph, DegeneracyOrder, PeelError};
pub use dense::{c4_through_edge, extract_dense_c4, extract_dense_pair, PairSearch};
pub use error::ExtractError;
pub use generators::{GenError, GeneratorParams};
pub use graph::{Graph, GraphError};
pub use reduction::reduce_extract;
pub use sparse::extract_sparse;
pub use spectral::{alpha_bounds, best_color_pair, mixing_check, spectral_gap, SpectralReport};

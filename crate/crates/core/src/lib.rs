//! Deciding digraph isomorphism through companion skeletons, and equivalence
//! of reaction systems through their zero-context dynamics.
//!
//! The crate is organized around a chain of structures:
//!
//! * [`mask`] / [`family`] — subsets of a finite universe, set families,
//!   companion partitions (Venn regions) and intersection closures.
//! * [`correspondence`] — faithful correspondences between families: size-
//!   and intersection-preserving bijections of their closures.
//! * [`graph`] — dense digraphs, out-families, and a brute-force isomorphism
//!   oracle used to validate the certificate.
//! * [`skeleton`] — skeletons `(𝒪, R, f)` that define digraphs, companion
//!   skeletons, edge swapping, and the isomorphism certificate.
//! * [`lattice`] — the powerset poset, upper cones, main skeletons, and the
//!   embedding of a digraph as a graph of cones.
//! * [`reaction`] — reaction systems, their zero-context and transition
//!   graphs, synthesis from one-out graphs, and the equivalence decision.
//! * [`format`] — text formats for all of the above, plus DOT export.

pub mod correspondence;
pub mod error;
pub mod family;
pub mod format;
pub mod graph;
pub mod lattice;
pub mod mask;
pub mod reaction;
pub mod skeleton;

pub use correspondence::{find_faithful_correspondence, FaithfulCorrespondence};
pub use error::{Error, Result};
pub use family::{CompanionPartition, RegionSignature, SetFamily};
pub use graph::{brute_force_isomorphic, Digraph, OneOutGraph};
pub use lattice::{ConeEmbedding, MainSkeleton, PowersetPoset};
pub use mask::SubsetMask;
pub use reaction::{Equivalence, Reaction, ReactionSystem, ResultFamily};
pub use skeleton::{certify_isomorphic, Skeleton};

//! Sum graphs over magmas: labellings, constructions, and bounded search.

pub mod claims;
pub mod constructors;
pub mod corpora;
pub mod exactla;
pub mod fib;
pub mod fixtures;
pub mod graphs;
pub mod labelling;
pub mod magmas;
pub mod product;
pub mod search;

pub use graphs::{build_family, FamilySpec, Graph};
pub use labelling::{induced_graph, is_strong, verify, Labelling, Verdict};
pub use magmas::{MagmaElement, MagmaSpec, SetOp};

//! Exact combinatorial machinery for quasitoric manifolds presented as
//! characteristic pairs `(K, lambda)`: a pure simplicial complex `K` on the
//! facet set of a simple polytope together with a facet-to-lattice map
//! satisfying the unimodularity condition on every face.
//!
//! The crate computes, entirely over arbitrary-precision integers:
//!
//! * normal forms and cokernel presentations over `Z^n` ([`lattice`]),
//! * face combinatorics and complex isomorphisms ([`complex`]),
//! * the degree-2 cohomology model, omniorientation normalization and the
//!   partition of facets by Poincare dual ([`charpair`]),
//! * the maximal compact connected symmetry type `prod SU(k) x T^l`, the
//!   inductive sphere-bundle/blow-up construction behind it, the lifted
//!   automorphism group of the pair, and admissible triples ([`symmetry`]),
//! * a JSON document format, a catalog of named example pairs, and the
//!   `torsym` command-line interface ([`document`], [`catalog`], [`cli`]).
//!
//! All values are immutable and all operations are pure functions; results
//! are deterministic for fixed inputs.

pub mod catalog;
pub mod charpair;
pub mod cli;
pub mod complex;
pub mod document;
pub mod lattice;
pub mod report;
pub mod symmetry;

pub use complex::SimplicialComplex;
pub use lattice::{IntMatrix, IntVector};

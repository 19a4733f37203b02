//! Exact combinatorics of wonderful models of graphic arrangements.
//!
//! A finite graph `Γ` on vertices `1..=n` determines two arrangements: the
//! *toric* arrangement of subtori `x_i = x_j` (one per edge) in the quotient
//! torus, and the *linear* arrangement of hyperplanes `x_i = x_j` in the
//! quotient vector space.  Both have wonderful compactifications whose
//! cohomology admits an explicit monomial basis indexed by *admissible
//! functions* on a building set of connected subgraphs.  This crate computes
//! those objects exactly — no floating point anywhere — and cross-checks the
//! structural identities relating them:
//!
//! * the poset of Γ-connected set partitions and its realization as the
//!   intersection lattice of the graphic hyperplane arrangement
//!   ([`partitions`], [`linoracle`]);
//! * building sets of one-block partitions, nested sets, and valid blow-up
//!   orders ([`buildingset`]);
//! * admissible functions and the Poincaré polynomials of both wonderful
//!   models, which coincide for a graph and its cone ([`cohomology`]);
//! * admissible forests, the bijection with pairs of forests plus a
//!   permutation, and the hook/`lec` statistics it transports ([`forests`],
//!   [`permstats`]);
//! * truncated exponential generating functions tying the bigraded counts
//!   to Eulerian polynomials ([`series`]).
//!
//! All polynomial and series coefficients are arbitrary-precision integers
//! or rationals, so every equality test in the crate is exact.
//!
//! ```
//! use wonder::graphs::Graph;
//! use wonder::cohomology::verify_model_iso;
//!
//! // The toric model of the triangle matches the linear model of its cone.
//! let k3 = Graph::complete(3).unwrap();
//! let report = verify_model_iso(&k3).unwrap();
//! assert!(report.equal);
//! assert_eq!(report.toric.to_string(), "1 + 5q + q^2");
//! ```

#![forbid(unsafe_code)]

pub mod buildingset;
pub mod cohomology;
pub mod error;
pub mod forests;
pub mod graphs;
pub mod linoracle;
pub mod partitions;
pub mod permstats;
pub mod qpoly;
pub mod series;

pub use error::{Error, Result};

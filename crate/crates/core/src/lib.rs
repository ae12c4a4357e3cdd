//! Exact computations with multigraded free resolutions of monomial ideals.
//!
//! The crate is organised around five areas:
//!
//! * [`monomial`]: multidegrees, monomial ideals, polarization, lcm lattices
//!   and finite posets.
//! * [`complexes`]: multigraded free complexes (Taylor, Scarf, Lyubeznik),
//!   exactness and minimality checks, minimization by Gaussian cancellation,
//!   Betti tables and maximal shifts.
//! * [`dga`]: multiplications on free complexes: construction, solving the
//!   Leibniz system, axiom verification and structure maps.
//! * [`comb`]: simplicial complexes, f-vectors, Kruskal–Katona, cones and
//!   Morse matchings.
//! * [`regression`]: reproducible end-to-end computations on a fixed set of
//!   ideals, shared by the CLI and the acceptance tests.
//!
//! All arithmetic is over the rationals with arbitrary precision. Every map
//! between free modules is multigraded of degree zero, so it is stored as a
//! sparse matrix of scalars; the monomial factor of an entry is implied by the
//! difference of the multidegrees of source and target.

pub mod comb;
pub mod complexes;
pub mod corpus;
pub mod dga;
mod error;
pub mod linalg;
pub mod monomial;
pub mod regression;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Scalar, SparseVec};

//! Combinatorial invariants of Weyl groups and of rationally smooth group
//! embeddings.
//!
//! The crate is organised bottom-up:
//!
//! - [`rootsys`]: Cartan types, root systems and Dynkin graphs.
//! - [`weyl`]: Weyl group elements, enumeration of `W`, `W_J` and `W^J`,
//!   minimal coset representatives and the Bruhat order.
//! - [`poly`]: exact sparse integer polynomials in one and two variables.
//! - [`descent`]: descent systems `(W^J, S^J)` and the `ν` statistics.
//! - [`smooth`]: the combinatorial smoothness criterion for `J ⊆ S`.
//! - [`hpoly`]: length polynomials, Eulerian and toric h-polynomials and the
//!   H-polynomials of simple, wonderful and rank-two embeddings.
//! - [`oracle`]: brute-force `B×B`-orbit counting in `M_n(F_q)`.

pub mod descent;
pub mod error;
pub mod hpoly;
pub mod limits;
pub mod oracle;
pub mod poly;
pub mod rootsys;
pub mod smooth;
pub mod weyl;

pub use error::{Error, Result};
pub use limits::Limits;
pub use poly::{IntPoly, IntPoly2};
pub use rootsys::{CartanType, DynkinGraph, Family, NodeSet, RootSystem};
pub use weyl::{ParabolicQuotient, WeylElt, WeylGroup};

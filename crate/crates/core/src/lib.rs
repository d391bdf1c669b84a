//! Exact verification of the twelve-point identity for lattice polygons,
//!
//! ```text
//! 12 · Σ_{n ∈ Δ ∩ ℤ²} (κ_Δ(n) + 1)² = nvol(Δ) + nvol(Δ*),
//! ```
//!
//! for every convex lattice polygon `Δ` with the origin in its interior and
//! primitive vertices, together with its cone-by-cone refinement and the
//! Dedekind-sum machinery behind it. All arithmetic is over arbitrary
//! precision integers and rationals.
//!
//! ```
//! use ldp12::{identity, LatticePolygon, Rational};
//!
//! let p = LatticePolygon::from_coords(&[(0, -1), (3, 2), (-1, 2)])?;
//! assert_eq!(identity::global_lhs(&p)?, Rational::from(18));
//! assert_eq!(identity::global_rhs(&p)?, Rational::from(18));
//! # Ok::<(), ldp12::Error>(())
//! ```

pub mod corpus;
pub mod dedekind;
pub mod error;
pub mod fan;
pub mod identity;
pub mod io;
pub mod lattice;
pub mod polygon;
pub mod reduction;

pub use error::{Error, Result};
pub use fan::{refined_fan, spanning_fan, CompleteUnimodularFan, Cone, Sail};
pub use identity::{verify_polygon, VerificationReport};
pub use lattice::{det2, edge_functional, LatticePoint, Rational, RationalPoint, Unimodular};
pub use polygon::{LatticePolygon, RationalPolygon};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/polygons.md")]
    mod polygons {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/dedekind.md")]
    mod dedekind {}
    #[doc = include_str!("../../../book/src/identity.md")]
    mod identity {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/corpus.md")]
    mod corpus {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Exact computational toolkit for orientable Seifert fibered 3-manifolds.
//!
//! The crate works with normalized Seifert symbols over exact rational
//! arithmetic and provides:
//!
//! - normalization of Seifert symbols and the induced base 2-orbifold
//!   ([`SeifertSymbol`], [`Orbifold2D`]),
//! - the orbifold Euler characteristic, the Euler number of the fibration,
//!   and the Thurston geometry of the total space ([`Geometry`]),
//! - detection of bad (non-geometrizable) base orbifolds and of spherical
//!   total spaces,
//! - the solid-torus local model of a Seifert fibration, its fiber-product
//!   desingularization, circle action, trivialization, and deck rotation,
//!   in both floating-point and exact polar-rational arithmetic
//!   ([`local_model`]),
//! - smooth manifold covers of good base orbifolds as explicit permutation
//!   certificates, with an independent verifier and Galois closure
//!   ([`cover`]),
//! - the fiber-exponent arithmetic used to descend an equivariant line
//!   bundle through the cover ([`descent`]),
//! - an end-to-end pipeline combining all stages, with a JSON report
//!   ([`pipeline`]).
//!
//! Runnable walkthroughs for each capability live in `examples/`; the same
//! functionality is exposed on the command line by the `seifert` binary.
//!
//! ```
//! use seifert::{parse_symbol, classify_geometry, Geometry};
//!
//! let s = parse_symbol("{b=-1; g=0; (2,1)(3,1)(5,1)}").unwrap().normalize().unwrap();
//! let chi = s.base_orbifold().euler_characteristic();
//! let e = s.euler_number();
//! assert_eq!(classify_geometry(chi, e), Geometry::S3);
//! ```

pub mod cover;
pub mod descent;
pub mod geometry;
pub mod local_model;
pub mod orbifold;
pub mod parse;
pub mod perm;
pub mod pipeline;
pub mod symbol;

/// Exact rational scalar used for all invariants.
///
/// Numerator and denominator are kept in lowest terms with a positive
/// denominator by the underlying representation.
pub type Rational = num::rational::Rational64;

/// Shorthand constructor for [`Rational`] values.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

pub use cover::{
    galois_closure, orientation_double_cover, smooth_cover_search, verify_certificate,
    CoverCertificate, CoverError,
};
pub use descent::{DescentReport, FiberRepDatum, TwistDivisor};
pub use geometry::{classify_geometry, Geometry};
pub use orbifold::{BadOrbifold, Orbifold2D};
pub use parse::{parse_orbifold, parse_symbol, ParseError};
pub use perm::Permutation;
pub use pipeline::{run_pipeline, PipelineOptions, PipelineReport, PipelineStatus};
pub use symbol::{RawSeifertSymbol, SeifertSymbol, SymbolError};

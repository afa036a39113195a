//! Thurston geometries of orientable Seifert fibered spaces.

use crate::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The six Thurston geometries carried by orientable Seifert fibered
/// 3-manifolds, determined by the sign of the base orbifold Euler
/// characteristic and the vanishing of the Euler number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    #[serde(rename = "S3")]
    S3,
    #[serde(rename = "S2xR")]
    S2xR,
    #[serde(rename = "E3")]
    E3,
    #[serde(rename = "Nil")]
    Nil,
    #[serde(rename = "H2xR")]
    H2xR,
    #[serde(rename = "SL2R-tilde")]
    SL2Rtilde,
}

/// Looks up the geometry from the exact pair (chi, e).
///
///   chi > 0: S2xR when e = 0, S3 otherwise.
///   chi = 0: E3 when e = 0, Nil otherwise.
///   chi < 0: H2xR when e = 0, SL2R-tilde otherwise.
pub fn classify_geometry(chi: Rational, e: Rational) -> Geometry {
    let zero = Rational::from_integer(0);
    match (chi.cmp(&zero), e == zero) {
        (std::cmp::Ordering::Greater, true) => Geometry::S2xR,
        (std::cmp::Ordering::Greater, false) => Geometry::S3,
        (std::cmp::Ordering::Equal, true) => Geometry::E3,
        (std::cmp::Ordering::Equal, false) => Geometry::Nil,
        (std::cmp::Ordering::Less, true) => Geometry::H2xR,
        (std::cmp::Ordering::Less, false) => Geometry::SL2Rtilde,
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Geometry::S3 => "S\u{b3}",
            Geometry::S2xR => "S\u{b2}\u{d7}\u{211d}",
            Geometry::E3 => "E\u{b3}",
            Geometry::Nil => "Nil",
            Geometry::H2xR => "H\u{b2}\u{d7}\u{211d}",
            Geometry::SL2Rtilde => "SL\u{2082}\u{211d}~",
        };
        f.write_str(name)
    }
}

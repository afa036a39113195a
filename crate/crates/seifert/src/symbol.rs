//! Seifert symbols and their normalization.
//!
//! A Seifert symbol records an orientable Seifert fibered 3-manifold: base
//! genus and orientability, an integer section obstruction `b`, and one
//! `(p, q)` pair per exceptional fiber. Normalization reduces every pair to
//! `0 <= q < p` by moving integer parts into `b`, and drops `p = 1` pairs;
//! this leaves the Euler number `-(b + sum q_i/p_i)` unchanged.

use crate::geometry::{classify_geometry, Geometry};
use crate::orbifold::Orbifold2D;
use crate::{rational, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Unvalidated symbol data, as read from input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSeifertSymbol {
    /// Genus of the base surface (crosscap count when nonorientable).
    pub base_genus: u32,
    pub base_orientable: bool,
    /// Integer Euler-number offset.
    pub b: i64,
    /// Exceptional fiber pairs `(p, q)`; `q` unrestricted.
    pub fibers: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("fiber pair ({p},{q}): orders must be positive")]
    NonPositiveOrder { p: i64, q: i64 },
    #[error("fiber pair ({p},{q}): p and q must be coprime")]
    NonCoprimePair { p: i64, q: i64 },
    #[error("a nonorientable base needs at least one crosscap")]
    ZeroGenusNonOrientable,
    #[error("fiber pair ({p},{q}): q must lie in 0..p")]
    UnreducedPair { p: i64, q: i64 },
}

/// A validated Seifert symbol.
///
/// Every pair satisfies `p >= 1`, `0 <= q < p`, `gcd(p, q) = 1` (so `p = 1`
/// forces `q = 0`). Symbols produced by [`RawSeifertSymbol::normalize`]
/// additionally contain no `p = 1` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeifertSymbol", into = "RawSeifertSymbol")]
pub struct SeifertSymbol {
    base_genus: u32,
    base_orientable: bool,
    b: i64,
    fibers: Vec<(i64, i64)>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RawSeifertSymbol {
    /// Normalizes the symbol: reduces each `q` into `0..p` (the integer part
    /// carries into `b`), drops `p = 1` pairs, and validates coprimality.
    pub fn normalize(&self) -> Result<SeifertSymbol, SymbolError> {
        if !self.base_orientable && self.base_genus == 0 {
            return Err(SymbolError::ZeroGenusNonOrientable);
        }
        let mut b = self.b;
        let mut fibers = Vec::with_capacity(self.fibers.len());
        for &(p, q) in &self.fibers {
            if p <= 0 {
                return Err(SymbolError::NonPositiveOrder { p, q });
            }
            if gcd(p, q) != 1 {
                return Err(SymbolError::NonCoprimePair { p, q });
            }
            let r = q.rem_euclid(p);
            b += (q - r) / p;
            if p > 1 {
                fibers.push((p, r));
            }
        }
        Ok(SeifertSymbol {
            base_genus: self.base_genus,
            base_orientable: self.base_orientable,
            b,
            fibers,
        })
    }
}

impl SeifertSymbol {
    /// Validates already-reduced symbol data without renormalizing.
    ///
    /// Unlike [`RawSeifertSymbol::normalize`] this keeps `p = 1` pairs
    /// (with `q = 0`) and rejects any `q` outside `0..p`.
    pub fn new(raw: RawSeifertSymbol) -> Result<Self, SymbolError> {
        if !raw.base_orientable && raw.base_genus == 0 {
            return Err(SymbolError::ZeroGenusNonOrientable);
        }
        for &(p, q) in &raw.fibers {
            if p <= 0 {
                return Err(SymbolError::NonPositiveOrder { p, q });
            }
            if gcd(p, q) != 1 {
                return Err(SymbolError::NonCoprimePair { p, q });
            }
            if q < 0 || q >= p {
                return Err(SymbolError::UnreducedPair { p, q });
            }
        }
        Ok(SeifertSymbol {
            base_genus: raw.base_genus,
            base_orientable: raw.base_orientable,
            b: raw.b,
            fibers: raw.fibers,
        })
    }

    pub fn base_genus(&self) -> u32 {
        self.base_genus
    }

    pub fn base_orientable(&self) -> bool {
        self.base_orientable
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn fibers(&self) -> &[(i64, i64)] {
        &self.fibers
    }

    /// The base 2-orbifold: base surface with one cone point of order `p`
    /// per exceptional fiber (pairs with `p = 1` contribute nothing).
    pub fn base_orbifold(&self) -> Orbifold2D {
        let orders: Vec<i64> = self
            .fibers
            .iter()
            .filter(|&&(p, _)| p >= 2)
            .map(|&(p, _)| p)
            .collect();
        Orbifold2D::new(self.base_genus, self.base_orientable, orders)
            .expect("validated symbol yields a valid orbifold")
    }

    /// Euler number of the Seifert fibration: `-(b + sum q_i/p_i)`, exact.
    pub fn euler_number(&self) -> Rational {
        let mut e = Rational::from_integer(self.b);
        for &(p, q) in &self.fibers {
            e += rational(q, p);
        }
        -e
    }

    /// True when the total space admits spherical geometry: positive
    /// orbifold Euler characteristic together with nonzero Euler number.
    pub fn is_spherical(&self) -> bool {
        let chi = self.base_orbifold().euler_characteristic();
        chi > Rational::from_integer(0) && self.euler_number() != Rational::from_integer(0)
    }

    /// Thurston geometry of the total space.
    pub fn geometry(&self) -> Geometry {
        classify_geometry(
            self.base_orbifold().euler_characteristic(),
            self.euler_number(),
        )
    }
}

impl From<SeifertSymbol> for RawSeifertSymbol {
    fn from(s: SeifertSymbol) -> Self {
        RawSeifertSymbol {
            base_genus: s.base_genus,
            base_orientable: s.base_orientable,
            b: s.b,
            fibers: s.fibers,
        }
    }
}

impl TryFrom<RawSeifertSymbol> for SeifertSymbol {
    type Error = SymbolError;

    fn try_from(raw: RawSeifertSymbol) -> Result<Self, Self::Error> {
        SeifertSymbol::new(raw)
    }
}

impl fmt::Display for SeifertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{b={}; g={}{}; ",
            self.b,
            self.base_genus,
            if self.base_orientable { "" } else { "n" }
        )?;
        if self.fibers.is_empty() {
            write!(f, "-")?;
        } else {
            for &(p, q) in &self.fibers {
                write!(f, "({},{})", p, q)?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;

    fn raw(b: i64, genus: u32, orientable: bool, fibers: &[(i64, i64)]) -> RawSeifertSymbol {
        RawSeifertSymbol {
            base_genus: genus,
            base_orientable: orientable,
            b,
            fibers: fibers.to_vec(),
        }
    }

    #[test]
    fn normalize_reduces_q_and_carries_into_b() {
        let s = raw(0, 0, true, &[(3, 7)]).normalize().unwrap();
        assert_eq!(s.b(), 2);
        assert_eq!(s.fibers(), &[(3, 1)]);

        let s = raw(0, 0, true, &[(2, 3)]).normalize().unwrap();
        assert_eq!(s.b(), 1);
        assert_eq!(s.fibers(), &[(2, 1)]);
    }

    #[test]
    fn normalize_fixes_already_reduced_symbols() {
        let input = raw(2, 1, true, &[]);
        let s = input.normalize().unwrap();
        assert_eq!(s.b(), 2);
        assert_eq!(s.base_genus(), 1);
        assert!(s.fibers().is_empty());
    }

    #[test]
    fn normalize_handles_negative_q() {
        let s = raw(0, 0, true, &[(3, -1)]).normalize().unwrap();
        assert_eq!(s.b(), -1);
        assert_eq!(s.fibers(), &[(3, 2)]);
    }

    #[test]
    fn normalize_drops_order_one_pairs() {
        let s = raw(0, 0, true, &[(1, 5), (4, 3)]).normalize().unwrap();
        assert_eq!(s.b(), 5);
        assert_eq!(s.fibers(), &[(4, 3)]);
    }

    #[test]
    fn normalize_rejects_invalid_pairs() {
        assert_eq!(
            raw(0, 0, true, &[(2, 4)]).normalize(),
            Err(SymbolError::NonCoprimePair { p: 2, q: 4 })
        );
        assert_eq!(
            raw(0, 0, true, &[(0, 1)]).normalize(),
            Err(SymbolError::NonPositiveOrder { p: 0, q: 1 })
        );
        assert_eq!(
            raw(0, 0, false, &[]).normalize(),
            Err(SymbolError::ZeroGenusNonOrientable)
        );
    }

    #[test]
    fn euler_number_examples() {
        let s = raw(-1, 0, true, &[(2, 1), (3, 1), (5, 1)]).normalize().unwrap();
        assert_eq!(s.euler_number(), rational(-1, 30));

        let s = raw(0, 1, true, &[]).normalize().unwrap();
        assert_eq!(s.euler_number(), rational(0, 1));

        let s = raw(-1, 0, true, &[(2, 1), (3, 1), (7, 1)]).normalize().unwrap();
        assert_eq!(s.euler_number(), rational(1, 42));
    }

    #[test]
    fn euler_number_is_preserved_by_normalization() {
        let raw_sym = raw(0, 0, true, &[(3, 7), (5, -2)]);
        let normalized = raw_sym.normalize().unwrap();
        // -(0 + 7/3 - 2/5) = -29/15 before; must be identical after.
        assert_eq!(normalized.euler_number(), rational(-29, 15));
    }

    #[test]
    fn base_orbifold_skips_order_one_fibers() {
        let s = SeifertSymbol::new(raw(0, 0, true, &[(1, 0), (4, 3)])).unwrap();
        let o = s.base_orbifold();
        assert_eq!(o.cone_orders(), &[4]);
        assert_eq!(o.genus(), 0);
        assert!(o.orientable());
    }

    #[test]
    fn spherical_detection() {
        let poincare = raw(-1, 0, true, &[(2, 1), (3, 1), (5, 1)]).normalize().unwrap();
        assert!(poincare.is_spherical());

        let torus = raw(0, 1, true, &[]).normalize().unwrap();
        assert!(!torus.is_spherical());

        // chi > 0 but e = 0: S2 x S1, not refused as spherical.
        let product = raw(0, 0, true, &[]).normalize().unwrap();
        assert!(!product.is_spherical());
    }

    #[test]
    fn display_round_trips_through_parser() {
        let s = raw(-1, 0, true, &[(2, 1), (3, 1), (5, 1)]).normalize().unwrap();
        assert_eq!(s.to_string(), "{b=-1; g=0; (2,1)(3,1)(5,1)}");
        let reparsed = crate::parse::parse_symbol(&s.to_string())
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!(reparsed, s);

        let t = raw(2, 1, true, &[]).normalize().unwrap();
        assert_eq!(t.to_string(), "{b=2; g=1; -}");
    }

    #[test]
    fn serde_rejects_unnormalized_pairs() {
        let json = r#"{"base_genus":0,"base_orientable":true,"b":0,"fibers":[[3,7]]}"#;
        assert!(serde_json::from_str::<SeifertSymbol>(json).is_err());
        let json = r#"{"base_genus":0,"base_orientable":true,"b":2,"fibers":[[3,1]]}"#;
        let s: SeifertSymbol = serde_json::from_str(json).unwrap();
        assert_eq!(s.fibers(), &[(3, 1)]);
    }
}

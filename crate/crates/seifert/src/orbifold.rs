//! Closed 2-orbifolds with cone points.

use crate::{rational, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A closed 2-orbifold: a closed surface together with cone points.
///
/// `genus` counts handles when `orientable`, crosscaps otherwise (so a
/// nonorientable orbifold has `genus >= 1`). Cone orders are all `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OrbifoldData", into = "OrbifoldData")]
pub struct Orbifold2D {
    genus: u32,
    orientable: bool,
    cone_orders: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct OrbifoldData {
    genus: u32,
    orientable: bool,
    cone_orders: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("cone order {0} is not >= 2")]
    ConeOrderTooSmall(i64),
    #[error("a nonorientable surface needs at least one crosscap")]
    ZeroGenusNonOrientable,
}

/// The two families of closed 2-orbifolds with no manifold cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BadOrbifold {
    /// Sphere with a single cone point.
    Teardrop,
    /// Sphere with two cone points of distinct orders.
    Spindle,
}

impl fmt::Display for BadOrbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BadOrbifold::Teardrop => write!(f, "teardrop"),
            BadOrbifold::Spindle => write!(f, "spindle"),
        }
    }
}

impl Orbifold2D {
    pub fn new(
        genus: u32,
        orientable: bool,
        cone_orders: Vec<i64>,
    ) -> Result<Self, OrbifoldError> {
        if !orientable && genus == 0 {
            return Err(OrbifoldError::ZeroGenusNonOrientable);
        }
        for &p in &cone_orders {
            if p < 2 {
                return Err(OrbifoldError::ConeOrderTooSmall(p));
            }
        }
        Ok(Orbifold2D {
            genus,
            orientable,
            cone_orders,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn cone_orders(&self) -> &[i64] {
        &self.cone_orders
    }

    /// Euler characteristic of the underlying surface.
    pub fn underlying_euler(&self) -> i64 {
        if self.orientable {
            2 - 2 * i64::from(self.genus)
        } else {
            2 - i64::from(self.genus)
        }
    }

    /// Orbifold Euler characteristic: underlying surface minus
    /// `sum (1 - 1/p)` over the cone points. Exact.
    pub fn euler_characteristic(&self) -> Rational {
        let mut chi = Rational::from_integer(self.underlying_euler());
        for &p in &self.cone_orders {
            chi -= rational(p - 1, p);
        }
        chi
    }

    /// Detects the orbifolds with no smooth manifold cover: the teardrop
    /// (one cone point on the sphere) and the spindle (two cone points of
    /// distinct orders on the sphere).
    pub fn bad_orbifold(&self) -> Option<BadOrbifold> {
        if !self.orientable || self.genus != 0 {
            return None;
        }
        match self.cone_orders.as_slice() {
            [_] => Some(BadOrbifold::Teardrop),
            [p, q] if p != q => Some(BadOrbifold::Spindle),
            _ => None,
        }
    }
}

impl From<Orbifold2D> for OrbifoldData {
    fn from(o: Orbifold2D) -> Self {
        OrbifoldData {
            genus: o.genus,
            orientable: o.orientable,
            cone_orders: o.cone_orders,
        }
    }
}

impl TryFrom<OrbifoldData> for Orbifold2D {
    type Error = OrbifoldError;

    fn try_from(d: OrbifoldData) -> Result<Self, Self::Error> {
        Orbifold2D::new(d.genus, d.orientable, d.cone_orders)
    }
}

impl fmt::Display for Orbifold2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.orientable, self.genus) {
            (true, 0) => write!(f, "S2")?,
            (true, 1) => write!(f, "T2")?,
            (true, g) => write!(f, "Sigma_{}", g)?,
            (false, 1) => write!(f, "RP2")?,
            (false, 2) => write!(f, "K2")?,
            (false, k) => write!(f, "N_{}", k)?,
        }
        if !self.cone_orders.is_empty() {
            write!(f, "(")?;
            for (i, p) in self.cone_orders.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(orders: &[i64]) -> Orbifold2D {
        Orbifold2D::new(0, true, orders.to_vec()).unwrap()
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(sphere(&[2, 3, 5]).euler_characteristic(), rational(1, 30));
        assert_eq!(
            Orbifold2D::new(1, true, vec![]).unwrap().euler_characteristic(),
            rational(0, 1)
        );
        assert_eq!(sphere(&[2, 3, 7]).euler_characteristic(), rational(-1, 42));
    }

    #[test]
    fn euler_characteristic_nonorientable() {
        // Projective plane: chi = 1; Klein bottle: chi = 0.
        assert_eq!(
            Orbifold2D::new(1, false, vec![]).unwrap().euler_characteristic(),
            rational(1, 1)
        );
        assert_eq!(
            Orbifold2D::new(2, false, vec![]).unwrap().euler_characteristic(),
            rational(0, 1)
        );
    }

    #[test]
    fn bad_orbifold_detection() {
        assert_eq!(sphere(&[3]).bad_orbifold(), Some(BadOrbifold::Teardrop));
        assert_eq!(sphere(&[2, 3]).bad_orbifold(), Some(BadOrbifold::Spindle));
        assert_eq!(sphere(&[2, 2]).bad_orbifold(), None);
        assert_eq!(sphere(&[]).bad_orbifold(), None);
        assert_eq!(sphere(&[2, 3, 5]).bad_orbifold(), None);
        // One cone point is fine away from the sphere.
        assert_eq!(
            Orbifold2D::new(1, true, vec![3]).unwrap().bad_orbifold(),
            None
        );
        assert_eq!(
            Orbifold2D::new(1, false, vec![3]).unwrap().bad_orbifold(),
            None
        );
    }

    #[test]
    fn rejects_invalid_data() {
        assert!(Orbifold2D::new(0, true, vec![1]).is_err());
        assert!(Orbifold2D::new(0, false, vec![]).is_err());
    }

    #[test]
    fn display_names_common_surfaces() {
        assert_eq!(sphere(&[2, 3, 5]).to_string(), "S2(2,3,5)");
        assert_eq!(Orbifold2D::new(1, true, vec![]).unwrap().to_string(), "T2");
        assert_eq!(Orbifold2D::new(1, false, vec![]).unwrap().to_string(), "RP2");
        assert_eq!(Orbifold2D::new(2, false, vec![]).unwrap().to_string(), "K2");
    }
}

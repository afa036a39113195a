//! Bundle descent arithmetic for Seifert circle bundles over orbifold
//! covers.
//!
//! At each exceptional fiber of order p the residual cyclic isotropy acts
//! on the descended fiber coordinate by a root-of-unity character. This
//! module computes that exponent two independent ways (closed form and a
//! numeric probe of the local model), builds the twist divisor that cancels
//! every fiber character, and checks the integrality bookkeeping for the
//! Euler number pulled back along a smooth cover.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::local_model::{
    circle_action, deck_rotation, standard_section, trivialize, CirclePoint, DiscPoint,
    ModelParams,
};
use crate::symbol::SeifertSymbol;
use crate::{rational, Rational};

/// Matching tolerance for the numeric exponent probe. Root-of-unity
/// candidates at the orders in play are separated by about 0.3 or more,
/// so any tolerance far under that and far over float noise works.
const ORACLE_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DescentError {
    #[error("q = {q} is not invertible modulo p = {p}")]
    NonInvertible { p: i64, q: i64 },
    #[error("twist has {twist} coefficients but the fiber data has {data}")]
    LengthMismatch { data: usize, twist: usize },
    #[error("{degree} times the Euler number {euler} is not an integer")]
    NonIntegralPullback { degree: i64, euler: Rational },
    #[error("no unique root-of-unity exponent matches the rotated fiber coordinate")]
    AmbiguousExponent,
}

/// How the order-p isotropy at one exceptional fiber acts on the descended
/// fiber coordinate: by the `q_exp`-th power of the standard character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRepDatum {
    /// Isotropy order at the fiber.
    pub p: i64,
    /// Character exponent, the inverse of q modulo p; always in `0..p`.
    pub q_exp: i64,
}

/// Cone-point coefficients of the twisting divisor, one per exceptional
/// fiber and each reduced into `0..p` for its fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistDivisor {
    pub coefficients: Vec<i64>,
}

/// The full descent bookkeeping for one symbol and one cover degree:
/// fiber characters, the twist that cancels them, the residual exponents
/// after twisting, and the pulled-back Euler number with its divisibility
/// flag for descending the bundle back down the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentReport {
    pub fiber_data: Vec<FiberRepDatum>,
    pub twist: TwistDivisor,
    pub residuals: Vec<i64>,
    pub pullback_euler: i64,
    pub descended_degree_ok: bool,
}

fn mod_inverse(q: i64, p: i64) -> Option<i64> {
    // extended Euclid, tracking s with s * q = r (mod p)
    let (mut r0, mut r1) = (p, q.rem_euclid(p));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    if r0 == 1 {
        Some(s0.rem_euclid(p))
    } else {
        None
    }
}

/// The fiber character exponents of a symbol's exceptional fibers: at a
/// (p, q) fiber the isotropy acts on the descended fiber coordinate by the
/// power q^{-1} mod p of the standard character. Unmarked p = 1 fibers
/// carry no isotropy and are skipped.
pub fn fiber_exponents_from_symbol(s: &SeifertSymbol) -> Result<Vec<FiberRepDatum>, DescentError> {
    let mut out = Vec::new();
    for &(p, q) in s.fibers() {
        if p < 2 {
            continue;
        }
        let q_exp = mod_inverse(q, p).ok_or(DescentError::NonInvertible { p, q })?;
        out.push(FiberRepDatum { p, q_exp });
    }
    Ok(out)
}

/// Brute-force probe of one fiber exponent through the local model.
///
/// Takes a sample point t = v * section(z) with z away from the core, then
/// compares the trivializations of t and of its deck rotation by a
/// primitive p-th root xi: the base coordinate must come back multiplied
/// by xi and the fiber coordinate by a unique power xi^k. Returns k.
pub fn numeric_exponent_oracle(m: &ModelParams) -> Result<i64, DescentError> {
    let p = m.p();
    if p == 1 {
        return Ok(0);
    }
    let turn = std::f64::consts::TAU;
    let v0 = CirclePoint::new(Complex64::from_polar(1.0, 0.137 * turn))
        .expect("sample fiber coordinate is a unit");
    let z0 = DiscPoint::new(Complex64::new(0.35, 0.2)).expect("sample base point is in the disc");
    let t = circle_action(m, &v0, &standard_section(m, &z0))
        .expect("sample point lies in the resolved model");
    let (v, w) = trivialize(m, &t).expect("sample point trivializes");

    let xi = Complex64::from_polar(1.0, turn / p as f64);
    let xi_point = CirclePoint::new(xi).expect("primitive root is a unit");
    let rotated = deck_rotation(m, &xi_point, &t).expect("deck rotation preserves the model");
    let (v_rot, w_rot) = trivialize(m, &rotated).expect("rotated point trivializes");

    if (w_rot.value() - xi * w.value()).norm() > ORACLE_EPS {
        return Err(DescentError::AmbiguousExponent);
    }
    let mut matched = None;
    for k in 0..p {
        let candidate = xi.powi(k as i32) * v.value();
        if (v_rot.value() - candidate).norm() <= ORACLE_EPS {
            if matched.is_some() {
                return Err(DescentError::AmbiguousExponent);
            }
            matched = Some(k);
        }
    }
    matched.ok_or(DescentError::AmbiguousExponent)
}

/// The twist divisor whose cone coefficients cancel every fiber character:
/// the fiber of a degree-q point divisor carries the inverse character, so
/// the coefficients are exactly the exponents.
pub fn compute_twist(data: &[FiberRepDatum]) -> TwistDivisor {
    TwistDivisor {
        coefficients: data.iter().map(|d| d.q_exp).collect(),
    }
}

/// Character exponents left after twisting, each reduced into `0..p`.
/// Identically zero against `compute_twist(data)`.
pub fn residual_exponents(
    data: &[FiberRepDatum],
    twist: &TwistDivisor,
) -> Result<Vec<i64>, DescentError> {
    if data.len() != twist.coefficients.len() {
        return Err(DescentError::LengthMismatch {
            data: data.len(),
            twist: twist.coefficients.len(),
        });
    }
    Ok(data
        .iter()
        .zip(&twist.coefficients)
        .map(|(d, &c)| (d.q_exp - c).rem_euclid(d.p))
        .collect())
}

/// Euler number of the circle bundle pulled back along a degree-`degree`
/// smooth cover of the base orbifold: degree times the Euler number, which
/// is an integer whenever the degree is a multiple of every fiber order,
/// as the degrees of smooth-cover certificates always are.
pub fn pullback_euler(s: &SeifertSymbol, degree: i64) -> Result<i64, DescentError> {
    debug_assert!(degree >= 1);
    let euler = s.euler_number();
    let total = rational(degree, 1) * euler;
    if !total.is_integer() {
        return Err(DescentError::NonIntegralPullback { degree, euler });
    }
    Ok(total.to_integer())
}

/// Degree bookkeeping for descending a line bundle along a degree-`degree`
/// quotient: the candidate downstairs degree `total_degree / degree`, and
/// whether it is an integer, the necessary divisibility condition.
pub fn descent_degree_check(total_degree: i64, degree: i64) -> (Rational, bool) {
    debug_assert!(degree >= 1);
    (
        rational(total_degree, degree),
        total_degree % degree == 0,
    )
}

/// Assemble the full descent report for one symbol and one cover degree.
pub fn build_report(s: &SeifertSymbol, degree: i64) -> Result<DescentReport, DescentError> {
    let fiber_data = fiber_exponents_from_symbol(s)?;
    let twist = compute_twist(&fiber_data);
    let residuals = residual_exponents(&fiber_data, &twist)?;
    let pullback = pullback_euler(s, degree)?;
    let (_, descended_degree_ok) = descent_degree_check(pullback, degree);
    Ok(DescentReport {
        fiber_data,
        twist,
        residuals,
        pullback_euler: pullback,
        descended_degree_ok,
    })
}

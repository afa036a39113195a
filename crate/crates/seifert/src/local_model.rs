//! Solid-torus local model of a Seifert fibration and its resolution.
//!
//! The model fibration over the disc is (u, z) ↦ u^q z^p on S¹ × D², with
//! gcd(p, q) = 1. Pulling it back along the p-fold branched cover w ↦ w^p
//! of the disc gives the naive fiber product {u^q z^p = w^p}, singular
//! along the core circle z = w = 0 whenever p ≥ 2. The resolved space
//! {u^q = x^p} in S¹ × D² × S¹ maps onto it by (u, z, x) ↦ (u, z, xz),
//! carries a transitive circle action, admits a global section over the
//! disc, and is trivialized using Bézout exponents for (p, q). The residual
//! rotation of order p acting on x is the deck symmetry of the branched
//! cover; quotienting by it recovers the model fibration.
//!
//! Every map is generic over [`ModelScalar`]. `Complex64` gives fast
//! floating-point evaluation with the tolerances [`EPS_UNIT`], [`EPS_MEM`]
//! and [`EPS_ROUND`]; [`exact::PolarRational`] restricts circle coordinates
//! to rational angles and disc coordinates to Gaussian rationals, under
//! which the identities hold with residual exactly zero. The randomized
//! verification harness lives in [`battery`].

use num::complex::Complex64;
use num::integer::gcd;

pub mod battery;
pub mod exact;

pub use battery::{run_exact_battery, run_float_battery, BatteryReport};
pub use exact::PolarRational;

/// Allowed deviation of a unit-circle coordinate from modulus one.
pub const EPS_UNIT: f64 = 1e-12;
/// Allowed defect in a fiber-product membership equation.
pub const EPS_MEM: f64 = 1e-12;
/// Allowed error in trivialization round trips.
pub const EPS_ROUND: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid model parameters (p, q) = ({p}, {q}): need p >= 1, 0 <= q < p, gcd(p, q) = 1")]
    InvalidParams { p: i64, q: i64 },
    #[error("coordinate is off the unit circle by {defect:e}")]
    NotUnit { defect: f64 },
    #[error("coordinate lies outside the closed unit disc by {defect:e}")]
    OutsideDisc { defect: f64 },
    #[error("point violates its fiber-product membership equation by {residual:e}")]
    MembershipViolation { residual: f64 },
    #[error("rotation scalar is not a p-th root of unity (defect {defect:e})")]
    NotRootOfUnity { defect: f64 },
}

/// Complex scalar the local model is evaluated over.
///
/// The model only multiplies, takes integer powers, and compares values,
/// so both a floating-point and an exact implementation are possible. For
/// an exact implementation ([`EXACT`](Self::EXACT) true) the defect and
/// distance methods return exactly `0.0` precisely when the underlying
/// algebraic condition holds, and validation gates require that.
pub trait ModelScalar: Clone + PartialEq + std::fmt::Debug {
    /// True when arithmetic is exact and checks require zero residuals.
    const EXACT: bool;

    fn one() -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn product(&self, rhs: &Self) -> Self;
    /// Integer power. Negative exponents require an invertible value;
    /// `pow_int(0)` is one for every value, including zero.
    fn pow_int(&self, n: i64) -> Self;
    /// Multiplication by the imaginary unit.
    fn times_i(&self) -> Self;
    /// Multiplication by an integer.
    fn times_int(&self, k: i64) -> Self;
    fn modulus(&self) -> f64;
    /// |self - rhs|, as a check residual.
    fn distance(&self, rhs: &Self) -> f64;
    /// | |self| - 1 |.
    fn unit_defect(&self) -> f64;
    /// max(|self| - 1, 0).
    fn disc_defect(&self) -> f64;
    /// Floating-point approximation, for reporting.
    fn approx(&self) -> Complex64;
}

impl ModelScalar for Complex64 {
    const EXACT: bool = false;

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn pow_int(&self, n: i64) -> Self {
        debug_assert!(i32::try_from(n).is_ok());
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        self.powi(n as i32)
    }

    fn times_i(&self) -> Self {
        self * Complex64::new(0.0, 1.0)
    }

    fn times_int(&self, k: i64) -> Self {
        self * (k as f64)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn distance(&self, rhs: &Self) -> f64 {
        (self - rhs).norm()
    }

    fn unit_defect(&self) -> f64 {
        (self.norm() - 1.0).abs()
    }

    fn disc_defect(&self) -> f64 {
        (self.norm() - 1.0).max(0.0)
    }

    fn approx(&self) -> Complex64 {
        *self
    }
}

fn unit_tol<S: ModelScalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        EPS_UNIT
    }
}

fn mem_tol<S: ModelScalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        EPS_MEM
    }
}

/// Multiplicity pair (p, q) of the local model: p >= 1, 0 <= q < p,
/// gcd(p, q) = 1. Also carries the canonical Bézout pair (a, b) with
/// a·p + b·q = 1, chosen with minimal |b| (ties broken toward b > 0) so
/// that trivialization is deterministic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelParams {
    p: i64,
    q: i64,
    a: i64,
    b: i64,
}

/// (g, x, y) with x·a + y·b = g = gcd(a, b).
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl ModelParams {
    pub fn new(p: i64, q: i64) -> Result<Self, ModelError> {
        if p < 1 || q < 0 || q >= p || gcd(p, q) != 1 {
            return Err(ModelError::InvalidParams { p, q });
        }
        let (a, b) = if q == 0 {
            // Only p = 1 reaches here.
            (1, 0)
        } else {
            let (_, _, b0) = ext_gcd(p, q);
            let hi = b0.rem_euclid(p);
            let lo = hi - p;
            let b = if hi.abs() < lo.abs() || (hi.abs() == lo.abs() && hi > 0) {
                hi
            } else {
                lo
            };
            ((1 - b * q) / p, b)
        };
        debug_assert_eq!(a * p + b * q, 1);
        Ok(ModelParams { p, q, a, b })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The canonical Bézout pair (a, b) with a·p + b·q = 1.
    pub fn bezout(&self) -> (i64, i64) {
        (self.a, self.b)
    }
}

/// Validated point on the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePoint<S: ModelScalar>(S);

impl<S: ModelScalar> CirclePoint<S> {
    pub fn new(value: S) -> Result<Self, ModelError> {
        let defect = value.unit_defect();
        if defect > unit_tol::<S>() {
            return Err(ModelError::NotUnit { defect });
        }
        Ok(CirclePoint(value))
    }

    pub fn value(&self) -> &S {
        &self.0
    }
}

/// Validated point of the closed unit disc.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscPoint<S: ModelScalar>(S);

impl<S: ModelScalar> DiscPoint<S> {
    pub fn new(value: S) -> Result<Self, ModelError> {
        let defect = value.disc_defect();
        if defect > unit_tol::<S>() {
            return Err(ModelError::OutsideDisc { defect });
        }
        Ok(DiscPoint(value))
    }

    /// For op outputs whose modulus bound follows from the inputs.
    fn new_unchecked(value: S) -> Self {
        DiscPoint(value)
    }

    pub fn value(&self) -> &S {
        &self.0
    }
}

/// Point (u, z, x) of the resolved model {u^q = x^p} in S¹ × D² × S¹.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedPoint<S: ModelScalar> {
    u: S,
    z: S,
    x: S,
}

impl<S: ModelScalar> ResolvedPoint<S> {
    pub fn new(m: &ModelParams, u: S, z: S, x: S) -> Result<Self, ModelError> {
        CirclePoint::new(u.clone())?;
        DiscPoint::new(z.clone())?;
        CirclePoint::new(x.clone())?;
        let t = ResolvedPoint { u, z, x };
        let residual = t.membership_residual(m);
        if residual > mem_tol::<S>() {
            return Err(ModelError::MembershipViolation { residual });
        }
        Ok(t)
    }

    fn new_unchecked(u: S, z: S, x: S) -> Self {
        ResolvedPoint { u, z, x }
    }

    pub fn u(&self) -> &S {
        &self.u
    }

    pub fn z(&self) -> &S {
        &self.z
    }

    pub fn x(&self) -> &S {
        &self.x
    }

    /// |u^q - x^p|, the defining equation's defect.
    pub fn membership_residual(&self, m: &ModelParams) -> f64 {
        self.u.pow_int(m.q).distance(&self.x.pow_int(m.p))
    }
}

/// Point (u, z, w) of the naive fiber product {u^q z^p = w^p} in
/// S¹ × D² × D².
#[derive(Clone, Debug, PartialEq)]
pub struct FiberProductPoint<S: ModelScalar> {
    u: S,
    z: S,
    w: S,
}

impl<S: ModelScalar> FiberProductPoint<S> {
    pub fn new(m: &ModelParams, u: S, z: S, w: S) -> Result<Self, ModelError> {
        CirclePoint::new(u.clone())?;
        DiscPoint::new(z.clone())?;
        DiscPoint::new(w.clone())?;
        let t = FiberProductPoint { u, z, w };
        let residual = t.membership_residual(m);
        if residual > mem_tol::<S>() {
            return Err(ModelError::MembershipViolation { residual });
        }
        Ok(t)
    }

    pub fn u(&self) -> &S {
        &self.u
    }

    pub fn z(&self) -> &S {
        &self.z
    }

    pub fn w(&self) -> &S {
        &self.w
    }

    /// |u^q z^p - w^p|, the defining equation's defect.
    pub fn membership_residual(&self, m: &ModelParams) -> f64 {
        self.u
            .pow_int(m.q)
            .product(&self.z.pow_int(m.p))
            .distance(&self.w.pow_int(m.p))
    }
}

/// The model fibration (u, z) ↦ u^q z^p.
pub fn solid_torus_fibration<S: ModelScalar>(
    m: &ModelParams,
    u: &CirclePoint<S>,
    z: &DiscPoint<S>,
) -> DiscPoint<S> {
    DiscPoint::new_unchecked(u.value().pow_int(m.q).product(&z.value().pow_int(m.p)))
}

/// The p-fold branched cover of the disc, w ↦ w^p.
pub fn branched_disc_cover<S: ModelScalar>(p: i64, w: &DiscPoint<S>) -> DiscPoint<S> {
    debug_assert!(p >= 1);
    DiscPoint::new_unchecked(w.value().pow_int(p))
}

/// Resolution map (u, z, x) ↦ (u, z, xz) onto the naive fiber product.
/// The output is re-validated; membership holds because (xz)^p = x^p z^p
/// = u^q z^p.
pub fn desingularize<S: ModelScalar>(
    m: &ModelParams,
    t: &ResolvedPoint<S>,
) -> Result<FiberProductPoint<S>, ModelError> {
    FiberProductPoint::new(
        m,
        t.u().clone(),
        t.z().clone(),
        t.x().product(t.z()),
    )
}

/// The fibration (u, z, x) ↦ xz of the resolved model over the disc.
pub fn resolved_fibration<S: ModelScalar>(_m: &ModelParams, t: &ResolvedPoint<S>) -> DiscPoint<S> {
    DiscPoint::new_unchecked(t.x().product(t.z()))
}

/// Circle action v · (u, z, x) = (v^p u, v^{-q} z, v^q x) on the resolved
/// model. It preserves membership ((v^p u)^q = v^{pq} u^q = (v^q x)^p) and
/// the resolved fibration; the output is re-validated.
pub fn circle_action<S: ModelScalar>(
    m: &ModelParams,
    v: &CirclePoint<S>,
    t: &ResolvedPoint<S>,
) -> Result<ResolvedPoint<S>, ModelError> {
    ResolvedPoint::new(
        m,
        v.value().pow_int(m.p).product(t.u()),
        v.value().pow_int(-m.q).product(t.z()),
        v.value().pow_int(m.q).product(t.x()),
    )
}

/// The section z ↦ (1, z, 1) of the resolved fibration.
pub fn standard_section<S: ModelScalar>(_m: &ModelParams, z: &DiscPoint<S>) -> ResolvedPoint<S> {
    ResolvedPoint::new_unchecked(S::one(), z.value().clone(), S::one())
}

/// Inverse of the trivialization (v, w) ↦ v · section(w): returns
/// (v, base) = (u^a x^b, xz) using the Bézout pair a·p + b·q = 1. Since
/// x^p = u^q, the returned v satisfies v^p = u and v^q = x.
pub fn trivialize<S: ModelScalar>(
    m: &ModelParams,
    t: &ResolvedPoint<S>,
) -> Result<(CirclePoint<S>, DiscPoint<S>), ModelError> {
    let v = t.u().pow_int(m.a).product(&t.x().pow_int(m.b));
    let base = t.x().product(t.z());
    Ok((CirclePoint::new(v)?, DiscPoint::new(base)?))
}

/// Residual rotation ξ · (u, z, x) = (u, z, ξx) for a p-th root of unity
/// ξ; the deck symmetry of the branched cover. Errors when ξ^p is not 1.
pub fn deck_rotation<S: ModelScalar>(
    m: &ModelParams,
    xi: &CirclePoint<S>,
    t: &ResolvedPoint<S>,
) -> Result<ResolvedPoint<S>, ModelError> {
    let defect = xi.value().pow_int(m.p).distance(&S::one());
    if defect > unit_tol::<S>() {
        return Err(ModelError::NotRootOfUnity { defect });
    }
    ResolvedPoint::new(m, t.u().clone(), t.z().clone(), xi.value().product(t.x()))
}

/// Defect of the quotient identity u^q z^p = (xz)^p relating the model
/// fibration to the p-th power of the resolved one. Zero (within the
/// membership tolerance) on every resolved point.
pub fn quotient_defect<S: ModelScalar>(m: &ModelParams, t: &ResolvedPoint<S>) -> f64 {
    let model = t.u().pow_int(m.q).product(&t.z().pow_int(m.p));
    let resolved_pow = t.x().product(t.z()).pow_int(m.p);
    model.distance(&resolved_pow)
}

/// Norm of the derivative of h(u, z, w) = u^q z^p - w^p on S¹ × D² × D²,
/// with complex partials ∂h/∂z = p u^q z^{p-1}, ∂h/∂w = -p w^{p-1} and the
/// angular derivative ∂h/∂θ = i q u^q z^p along the circle factor. On the
/// core circle z = w = 0 the norm vanishes iff p >= 2, which is the
/// singularity dichotomy of the naive fiber product. Exactly 0.0 whenever
/// all three partials are exactly zero.
pub fn fiber_product_gradient_norm<S: ModelScalar>(
    m: &ModelParams,
    u: &CirclePoint<S>,
    z: &DiscPoint<S>,
    w: &DiscPoint<S>,
) -> f64 {
    let uq = u.value().pow_int(m.q);
    let dz = uq.product(&z.value().pow_int(m.p - 1)).times_int(m.p);
    let dw = w.value().pow_int(m.p - 1).times_int(-m.p);
    let dtheta = uq.product(&z.value().pow_int(m.p)).times_int(m.q).times_i();
    if dz.is_zero() && dw.is_zero() && dtheta.is_zero() {
        return 0.0;
    }
    let (a, b, c) = (dz.modulus(), dw.modulus(), dtheta.modulus());
    (a * a + b * b + c * c).sqrt()
}

//! Exact polar-rational complex scalar.
//!
//! Values have the form e^{2πi·turns} · c with `turns` a rational number
//! of full turns and c a Gaussian rational. The only roots of unity inside
//! the Gaussian rationals are the four quarter-turn units, so folding whole
//! quarter turns into c and keeping `turns` in [0, 1/4) makes the
//! representation unique: two values are equal iff their fields are equal.
//! Multiplication, integer powers and conjugation stay in this form, which
//! covers every map of the local model; no addition is ever needed.

use super::ModelScalar;
use num::complex::{Complex, Complex64};
use num::{BigInt, BigRational, One, ToPrimitive, Zero};

type GaussianRational = Complex<BigRational>;

/// Exact scalar e^{2πi·turns} · coeff with `turns` in [0, 1/4) and `coeff`
/// a Gaussian rational. Zero is stored with `turns` = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarRational {
    turns: BigRational,
    coeff: GaussianRational,
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn imaginary_unit() -> GaussianRational {
    Complex::new(BigRational::zero(), BigRational::one())
}

fn canonical(mut turns: BigRational, mut coeff: GaussianRational) -> PolarRational {
    if coeff.is_zero() {
        return PolarRational {
            turns: BigRational::zero(),
            coeff: GaussianRational::zero(),
        };
    }
    turns -= turns.floor();
    let quarters = (&turns * BigRational::from_integer(BigInt::from(4)))
        .floor()
        .to_integer()
        .to_i64()
        .expect("quarter count is 0..=3");
    turns -= rational(quarters, 4);
    for _ in 0..quarters {
        coeff = coeff * imaginary_unit();
    }
    PolarRational { turns, coeff }
}

/// Integer power of a Gaussian rational by repeated squaring; negative
/// exponents invert via the conjugate.
fn gaussian_pow(c: &GaussianRational, n: i64) -> GaussianRational {
    if n == 0 {
        return GaussianRational::one();
    }
    if n < 0 {
        let norm = c.norm_sqr();
        assert!(!norm.is_zero(), "cannot invert zero");
        let inv = Complex::new(c.re.clone() / &norm, -c.im.clone() / &norm);
        return gaussian_pow(&inv, -n);
    }
    let mut acc = GaussianRational::one();
    let mut base = c.clone();
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

impl PolarRational {
    /// The root of unity e^{2πi·k/n}.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        assert!(n >= 1, "root order must be positive");
        canonical(rational(k, n), GaussianRational::one())
    }

    /// The unit e^{2πi·turns}.
    pub fn from_turns(turns: BigRational) -> Self {
        canonical(turns, GaussianRational::one())
    }

    /// The Gaussian rational (re_num + im_num·i) / denom.
    pub fn gaussian(re_num: i64, im_num: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        canonical(
            BigRational::zero(),
            Complex::new(rational(re_num, denom), rational(im_num, denom)),
        )
    }

    pub fn from_ratio(re: BigRational, im: BigRational) -> Self {
        canonical(BigRational::zero(), Complex::new(re, im))
    }

    /// Angle part, a rational number of turns in [0, 1/4).
    pub fn turns(&self) -> &BigRational {
        &self.turns
    }

    /// Gaussian-rational part.
    pub fn coeff(&self) -> &GaussianRational {
        &self.coeff
    }
}

impl ModelScalar for PolarRational {
    const EXACT: bool = true;

    fn one() -> Self {
        canonical(BigRational::zero(), GaussianRational::one())
    }

    fn zero() -> Self {
        PolarRational {
            turns: BigRational::zero(),
            coeff: GaussianRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn product(&self, rhs: &Self) -> Self {
        canonical(&self.turns + &rhs.turns, &self.coeff * &rhs.coeff)
    }

    fn pow_int(&self, n: i64) -> Self {
        if n == 0 {
            return <Self as ModelScalar>::one();
        }
        if self.is_zero() {
            assert!(n > 0, "cannot raise zero to a negative power");
            return <Self as ModelScalar>::zero();
        }
        canonical(
            &self.turns * BigRational::from_integer(BigInt::from(n)),
            gaussian_pow(&self.coeff, n),
        )
    }

    fn times_i(&self) -> Self {
        canonical(self.turns.clone(), &self.coeff * imaginary_unit())
    }

    fn times_int(&self, k: i64) -> Self {
        canonical(
            self.turns.clone(),
            &self.coeff * Complex::new(BigRational::from_integer(BigInt::from(k)), BigRational::zero()),
        )
    }

    fn modulus(&self) -> f64 {
        self.coeff.norm_sqr().to_f64().unwrap_or(f64::NAN).sqrt()
    }

    fn distance(&self, rhs: &Self) -> f64 {
        // Canonical form makes structural equality value equality.
        if self == rhs {
            0.0
        } else {
            (self.approx() - rhs.approx()).norm()
        }
    }

    fn unit_defect(&self) -> f64 {
        if self.coeff.norm_sqr().is_one() {
            0.0
        } else {
            (self.modulus() - 1.0).abs()
        }
    }

    fn disc_defect(&self) -> f64 {
        if self.coeff.norm_sqr() <= BigRational::one() {
            0.0
        } else {
            self.modulus() - 1.0
        }
    }

    fn approx(&self) -> Complex64 {
        let angle = std::f64::consts::TAU * self.turns.to_f64().unwrap_or(0.0);
        Complex64::from_polar(1.0, angle)
            * Complex64::new(
                self.coeff.re.to_f64().unwrap_or(f64::NAN),
                self.coeff.im.to_f64().unwrap_or(f64::NAN),
            )
    }
}

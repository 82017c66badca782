//! Exact scalars: rationals, and the field Q(i, √2) used by the mode algebra.
//!
//! An element is stored as `(a + b√2) + i(c + d√2)` with rational `a..d`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// Build a rational from a numerator/denominator pair.
pub fn q(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, `"p"` or `"-p/q"` into an exact rational. No floating point is involved.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        field: "rational".into(),
        message: format!("cannot parse {s:?} as p/q"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Render a rational as `"p/q"` (or `"p"` for integers).
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational equal to the binary value of a finite float.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

/// Element `a + b√2` of Q(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
}

impl Surd {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// `a² − 2b²`, rational and nonzero for nonzero input.
    fn norm(&self) -> Rational {
        &self.a * &self.a - qi(2) * &self.b * &self.b
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.a * &o.a + qi(2) * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(&self.a - &o.a, &self.b - &o.b)
    }

    fn neg(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone())
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r)
    }

    fn inv(&self) -> Self {
        let n = self.norm();
        let c = self.conj();
        Self::new(c.a / &n, c.b / &n)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

/// Exact element of Q(i, √2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub re: Surd,
    pub im: Surd,
}

impl Scalar {
    pub fn from_rational(r: Rational) -> Self {
        Self {
            re: Surd::new(r, Rational::zero()),
            im: Surd::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(qi(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(q(n, d))
    }

    pub fn i() -> Self {
        Self {
            re: Surd::zero(),
            im: Surd::new(Rational::one(), Rational::zero()),
        }
    }

    pub fn sqrt2() -> Self {
        Self {
            re: Surd::new(Rational::zero(), Rational::one()),
            im: Surd::zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.re.a.is_one() && self.re.b.is_zero() && self.im.is_zero()
    }

    /// The rational value, if the element has no `i` or `√2` component.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.re.b.is_zero() && self.im.is_zero()).then_some(&self.re.a)
    }

    /// Coordinates in the rational basis `(1, √2, i, i√2)`.
    pub fn parts(&self) -> [&Rational; 4] {
        [&self.re.a, &self.re.b, &self.im.a, &self.im.b]
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            re: self.re.scale(r),
            im: self.im.scale(r),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(x + iy) = (x − iy)/(x² + y²), with x² + y² ∈ Q(√2) nonzero.
        let den = self.re.mul(&self.re).add(&self.im.mul(&self.im)).inv();
        Ok(Self {
            re: self.re.mul(&den),
            im: self.im.neg().mul(&den),
        })
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self {
            re: Surd::zero(),
            im: Surd::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::int(1)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked variant.
    fn div(self, o: Scalar) -> Scalar {
        &self * &o.inv().expect("division by zero in Q(i, √2)")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

fn fmt_surd(s: &Surd) -> Option<String> {
    match (s.a.is_zero(), s.b.is_zero()) {
        (true, true) => None,
        (false, true) => Some(fmt_rational(&s.a)),
        (true, false) => Some(format!("{}*r2", fmt_rational(&s.b))),
        (false, false) => Some(format!(
            "({}{}{}*r2)",
            fmt_rational(&s.a),
            if s.b.is_negative() { "" } else { "+" },
            fmt_rational(&s.b)
        )),
    }
}

impl fmt::Display for Scalar {
    /// Canonical text: rationals as `p/q`, `r2` for √2, `i` for the imaginary unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (fmt_surd(&self.re), fmt_surd(&self.im)) {
            (None, None) => write!(f, "0"),
            (Some(r), None) => write!(f, "{r}"),
            (None, Some(i)) => write!(f, "{i}*i"),
            (Some(r), Some(i)) => write!(f, "({r}+{i}*i)"),
        }
    }
}

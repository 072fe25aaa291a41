use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::KernelError;

/// Arbitrary-precision fraction, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    /// Reduces `n/d` to canonical form. The sign ends up on the numerator.
    pub fn normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, KernelError> {
        let d = d.into();
        if d.is_zero() {
            return Err(KernelError::ZeroDenominator);
        }
        // BigRational::new reduces and moves the sign onto the numerator.
        Ok(Self(BigRational::new(n.into(), d)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self(self.0.recip()))
        }
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Exact square root, when the value is the square of a rational.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Self(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Large numerators and denominators overflow f64 individually; scale
        // them down together before dividing.
        if let (Some(n), Some(d)) = (self.numer().to_f64(), self.denom().to_f64()) {
            if n.is_finite() && d.is_finite() {
                return n / d;
            }
        }
        let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(1000);
        let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

/// Multiplies a slice of rationals by the lcm of their denominators and divides
/// by the gcd of the resulting numerators, so the entries become coprime
/// integers. The sign is left untouched.
pub(crate) fn clear_to_coprime_integers(values: &mut [Rational]) {
    let mut lcm = BigInt::one();
    for v in values.iter() {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        return;
    }
    for (slot, i) in values.iter_mut().zip(ints.iter_mut()) {
        *slot = Rational::from_integer(&*i / &g);
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Self(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p`, `p/q`, or a decimal such as `-1.25` into an exact value.
impl FromStr for Rational {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KernelError::InvalidLiteral(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Rational::normalize(n, d);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.starts_with('-');
            let digits = int_part.trim_start_matches(['-', '+']);
            if !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let whole: BigInt = format!("{}{}", if digits.is_empty() { "0" } else { digits }, frac_part)
                .parse()
                .map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac_part.len());
            let n = if negative { -whole } else { whole };
            return Rational::normalize(n, scale);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

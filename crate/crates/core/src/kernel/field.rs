use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::rational::{clear_to_coprime_integers, Rational};
use super::KernelError;

/// Zero-test policy for the floating-point backend.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    eps_abs: f64,
    eps_rel: f64,
}

impl Tolerance {
    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self, KernelError> {
        let ok = eps_abs.is_finite()
            && eps_rel.is_finite()
            && eps_abs >= 0.0
            && eps_rel >= 0.0
            && (eps_abs > 0.0 || eps_rel > 0.0);
        if ok {
            Ok(Self { eps_abs, eps_rel })
        } else {
            Err(KernelError::InvalidTolerance { eps_abs, eps_rel })
        }
    }

    pub fn eps_abs(&self) -> f64 {
        self.eps_abs
    }

    pub fn eps_rel(&self) -> f64 {
        self.eps_rel
    }

    /// Largest magnitude still treated as zero for a value whose natural
    /// scale is `scale_hint`.
    pub fn threshold(&self, scale_hint: f64) -> f64 {
        self.eps_abs.max(self.eps_rel * scale_hint.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_abs: 1e-12,
            eps_rel: 1e-9,
        }
    }
}

/// A scalar tagged with the backend that produced it.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "Exact({r})"),
            Scalar::Approx(x) => write!(f, "Approx({x:e})"),
        }
    }
}

/// Exact values vanish only when their numerator does; approximate values
/// vanish below `tol.threshold(scale_hint)`.
pub fn scalar_is_zero(x: &Scalar, tol: &Tolerance, scale_hint: f64) -> bool {
    match x {
        Scalar::Exact(r) => r.is_zero(),
        Scalar::Approx(v) => v.abs() <= tol.threshold(scale_hint),
    }
}

/// Coordinate field shared by every geometric type.
///
/// A configuration is built over a single `Field`, so exact and approximate
/// values can never meet inside one computation.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn to_scalar(&self) -> Scalar;
    fn abs(&self) -> Self;
    fn is_zero_within(&self, tol: &Tolerance, scale_hint: f64) -> bool;

    /// Square root when it exists in the field: exact values must be perfect
    /// squares, approximate values must be nonnegative up to tolerance.
    fn sqrt(&self) -> Option<Self>;

    /// Rescales a homogeneous coordinate vector to its canonical
    /// representative: the first nonzero entry is positive and, for exact
    /// values, the entries are coprime integers.
    fn canonicalize(coords: &mut [Self]);

    fn is_zero(&self) -> bool {
        self.is_zero_within(&Tolerance::default(), 1.0)
    }

    fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn abs(&self) -> Self {
        Rational::abs(self)
    }

    fn is_zero_within(&self, _tol: &Tolerance, _scale_hint: f64) -> bool {
        Rational::is_zero(self)
    }

    fn sqrt(&self) -> Option<Self> {
        Rational::sqrt(self)
    }

    fn canonicalize(coords: &mut [Self]) {
        clear_to_coprime_integers(coords);
        if let Some(first) = coords.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                for c in coords.iter_mut() {
                    *c = -&*c;
                }
            }
        }
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn signum(&self) -> i32 {
        Rational::signum(self)
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Approx(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_zero_within(&self, tol: &Tolerance, scale_hint: f64) -> bool {
        f64::abs(*self) <= tol.threshold(scale_hint)
    }

    fn sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(f64::sqrt(*self))
        } else if self.is_zero() {
            Some(0.0)
        } else {
            None
        }
    }

    fn canonicalize(coords: &mut [Self]) {
        let max = coords.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 || !max.is_finite() {
            return;
        }
        for c in coords.iter_mut() {
            *c /= max;
        }
        let flip = coords
            .iter()
            .find(|c| c.abs() > 1e-12)
            .is_some_and(|c| *c < 0.0);
        for c in coords.iter_mut() {
            if flip {
                *c = -*c;
            }
            // Avoid -0.0 so that canonical vectors compare and print stably.
            if *c == 0.0 {
                *c = 0.0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_zero_test_ignores_magnitude() {
        let tol = Tolerance::default();
        assert!(scalar_is_zero(&Scalar::Exact(Rational::zero()), &tol, 1.0));
        let tiny = Rational::normalize(1, 1_000_000_000).unwrap();
        assert!(!scalar_is_zero(&Scalar::Exact(tiny), &tol, 1.0));
    }

    #[test]
    fn approx_zero_below_tolerance() {
        let tol = Tolerance::new(1e-12, 0.0).unwrap();
        assert!(scalar_is_zero(&Scalar::Approx(1e-15), &tol, 1.0));
        assert!(!scalar_is_zero(&Scalar::Approx(1e-6), &tol, 1.0));
    }

    #[test]
    fn relative_term_uses_scale_hint() {
        let tol = Tolerance::new(0.0, 1e-9).unwrap();
        assert!(scalar_is_zero(&Scalar::Approx(1e-4), &tol, 1e6));
        assert!(!scalar_is_zero(&Scalar::Approx(1e-4), &tol, 1.0));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 0.0).is_err());
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(f64::NAN, 1.0).is_err());
        assert!(Tolerance::new(1e-9, 0.0).is_ok());
    }

    #[test]
    fn canonical_rational_vectors() {
        let mut v: Vec<Rational> = ["-1/2", "3/4", "0"].iter().map(|s| s.parse().unwrap()).collect();
        Rational::canonicalize(&mut v);
        let expect: Vec<Rational> = [2, -3, 0].iter().map(|&i| Rational::from(i as i64)).collect();
        assert_eq!(v, expect);
    }

    #[test]
    fn canonical_float_vectors() {
        let mut v = vec![0.0, -2.0, 1.0];
        f64::canonicalize(&mut v);
        assert_eq!(v, vec![0.0, 1.0, -0.5]);
    }
}

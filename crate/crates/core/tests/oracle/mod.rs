//! Plain `BigRational` vector arithmetic, written independently of the
//! library, for checking its results.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use epure::kernel::Rational;
use epure::p2::{LineP2, PointP2};
use epure::p3::{PlaneP3, PointP3};

pub type Q = BigRational;
pub type V3 = [Q; 3];
pub type V4 = [Q; 4];

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn from(r: &Rational) -> Q {
    Q::new(r.numer().clone(), r.denom().clone())
}

pub fn pt(p: &PointP2<Rational>) -> V3 {
    p.coords().clone().map(|c| from(&c))
}

pub fn ln(l: &LineP2<Rational>) -> V3 {
    l.coeffs().clone().map(|c| from(&c))
}

pub fn pt4(p: &PointP3<Rational>) -> V4 {
    p.coords().clone().map(|c| from(&c))
}

pub fn plane4(p: &PlaneP3<Rational>) -> V4 {
    p.coeffs().clone().map(|c| from(&c))
}

pub fn affine(x: Q, y: Q) -> V3 {
    [x, y, Q::one()]
}

pub fn cross(a: &V3, b: &V3) -> V3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot<const N: usize>(a: &[Q; N], b: &[Q; N]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

pub fn det3(a: &V3, b: &V3, c: &V3) -> Q {
    dot(a, &cross(b, c))
}

pub fn is_zero<const N: usize>(v: &[Q; N]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Equal as projective points: both nonzero and proportional.
pub fn same(a: &V3, b: &V3) -> bool {
    !is_zero(a) && !is_zero(b) && is_zero(&cross(a, b))
}

pub fn scale<const N: usize>(k: &Q, v: &[Q; N]) -> [Q; N] {
    std::array::from_fn(|i| k * &v[i])
}

pub fn sub<const N: usize>(a: &[Q; N], b: &[Q; N]) -> [Q; N] {
    std::array::from_fn(|i| &a[i] - &b[i])
}

/// The point common to three planes of space.
pub fn meet3(a: &V4, b: &V4, c: &V4) -> V4 {
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let row = |v: &V4| -> V3 { [v[cols[0]].clone(), v[cols[1]].clone(), v[cols[2]].clone()] };
        det3(&row(a), &row(b), &row(c))
    };
    std::array::from_fn(|j| if j % 2 == 0 { minor(j) } else { -minor(j) })
}

/// Where the line through `p` and `r` crosses `plane`.
pub fn line_plane(p: &V4, r: &V4, plane: &V4) -> V4 {
    sub(&scale(&dot(plane, r), p), &scale(&dot(plane, p), r))
}

/// Central projection from `eye` onto `z = 0`, keeping `(x, y, w)`.
pub fn project_from(eye: &V4, x: &V4) -> V3 {
    let p = sub(&scale(&eye[2], x), &scale(&x[2], eye));
    [p[0].clone(), p[1].clone(), p[3].clone()]
}

/// Orthogonal projection onto `z = 0`.
pub fn drop_z(x: &V4) -> V3 {
    [x[0].clone(), x[1].clone(), x[3].clone()]
}

//! The real projective plane: homogeneous points and lines, incidence,
//! homographies, cross-ratio and involutions on a line.
//!
//! Every point and line is stored in canonical form (see
//! [`Field::canonicalize`]), so in the exact backend equality modulo scale is
//! plain `==`. Points at infinity (`z = 0`) are ordinary values and flow through
//! every construction.

use std::fmt;

use crate::error::GeomError;
use crate::kernel::linalg::{adjugate3, cross, det2, det3, det3_rows, dot, mat_mul3, mat_vec3, transpose3};
use crate::kernel::{Field, Tolerance};

fn canonical<S: Field>(mut v: [S; 3]) -> Result<[S; 3], GeomError> {
    if v.iter().all(|c| c.is_zero()) {
        return Err(GeomError::ZeroVector);
    }
    S::canonicalize(&mut v);
    Ok(v)
}

pub(crate) fn inf_norm<S: Field>(v: &[S]) -> f64 {
    v.iter().fold(0.0f64, |m, c| m.max(c.to_f64().abs()))
}

#[derive(Clone, PartialEq)]
pub struct PointP2<S> {
    coords: [S; 3],
}

#[derive(Clone, PartialEq)]
pub struct LineP2<S> {
    coeffs: [S; 3],
}

impl<S: Field> PointP2<S> {
    pub fn new(x: S, y: S, z: S) -> Result<Self, GeomError> {
        Self::from_array([x, y, z])
    }

    pub fn from_array(coords: [S; 3]) -> Result<Self, GeomError> {
        Ok(Self {
            coords: canonical(coords)?,
        })
    }

    pub fn affine(x: S, y: S) -> Self {
        Self::from_array([x, y, S::one()]).expect("z = 1 is nonzero")
    }

    /// The point at infinity in direction `(dx, dy)`.
    pub fn at_infinity(dx: S, dy: S) -> Result<Self, GeomError> {
        Self::from_array([dx, dy, S::zero()])
    }

    pub fn coords(&self) -> &[S; 3] {
        &self.coords
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2].is_zero()
    }

    pub fn to_affine(&self) -> Option<(S, S)> {
        if self.is_at_infinity() {
            None
        } else {
            let z = self.coords[2].clone();
            Some((self.coords[0].clone() / z.clone(), self.coords[1].clone() / z))
        }
    }

    pub fn to_f64(&self) -> PointP2<f64> {
        PointP2::from_array(self.coords.clone().map(|c| c.to_f64()))
            .expect("canonical coordinates stay nonzero")
    }

    /// Same coordinates read as a line.
    pub fn dual(&self) -> LineP2<S> {
        LineP2 {
            coeffs: self.coords.clone(),
        }
    }

    /// Equality modulo scale within `tol` (exact equality for exact fields).
    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        let c = cross(&self.coords, &other.coords);
        let scale = inf_norm(&self.coords) * inf_norm(&other.coords);
        c.iter().all(|x| x.is_zero_within(tol, scale))
    }
}

impl<S: Field> LineP2<S> {
    pub fn new(u: S, v: S, w: S) -> Result<Self, GeomError> {
        Self::from_array([u, v, w])
    }

    pub fn from_array(coeffs: [S; 3]) -> Result<Self, GeomError> {
        Ok(Self {
            coeffs: canonical(coeffs)?,
        })
    }

    /// `x = c`
    pub fn vertical(c: S) -> Self {
        Self::from_array([S::one(), S::zero(), -c]).expect("nonzero")
    }

    /// `y = c`
    pub fn horizontal(c: S) -> Self {
        Self::from_array([S::zero(), S::one(), -c]).expect("nonzero")
    }

    pub fn at_infinity() -> Self {
        Self::from_array([S::zero(), S::zero(), S::one()]).expect("nonzero")
    }

    pub fn coeffs(&self) -> &[S; 3] {
        &self.coeffs
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs[1].is_zero()
    }

    pub fn eval(&self, p: &PointP2<S>) -> S {
        dot(&self.coeffs, &p.coords)
    }

    pub fn to_f64(&self) -> LineP2<f64> {
        LineP2::from_array(self.coeffs.clone().map(|c| c.to_f64()))
            .expect("canonical coefficients stay nonzero")
    }

    pub fn dual(&self) -> PointP2<S> {
        PointP2 {
            coords: self.coeffs.clone(),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.dual().approx_eq(&other.dual(), tol)
    }

    /// Two distinct points spanning the line.
    pub fn two_points(&self) -> (PointP2<S>, PointP2<S>) {
        let axes: [[S; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })
        });
        let mut found: Vec<PointP2<S>> = Vec::with_capacity(2);
        for axis in &axes {
            if let Ok(p) = PointP2::from_array(cross(&self.coeffs, axis)) {
                if found.iter().all(|q| join(q, &p).is_ok()) {
                    found.push(p);
                }
            }
            if found.len() == 2 {
                break;
            }
        }
        let q = found.pop().expect("a line has two distinct axis meets");
        let p = found.pop().expect("a line has two distinct axis meets");
        (p, q)
    }
}

impl<S: Field> fmt::Display for PointP2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x}:{y}:{z})")
    }
}

impl<S: Field> fmt::Debug for PointP2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Field> fmt::Display for LineP2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [u, v, w] = &self.coeffs;
        write!(f, "[{u}:{v}:{w}]")
    }
}

impl<S: Field> fmt::Debug for LineP2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn join<S: Field>(p: &PointP2<S>, q: &PointP2<S>) -> Result<LineP2<S>, GeomError> {
    LineP2::from_array(cross(&p.coords, &q.coords)).map_err(|_| GeomError::CoincidentPoints)
}

/// Dual of [`join`]; parallel lines meet at infinity.
pub fn meet<S: Field>(l: &LineP2<S>, m: &LineP2<S>) -> Result<PointP2<S>, GeomError> {
    join(&l.dual(), &m.dual())
        .map(|x| x.dual())
        .map_err(|_| GeomError::CoincidentLines)
}

/// `u·x + v·y + w·z = 0`, the float backend scaling by the product of the
/// largest coordinate magnitudes.
pub fn incident<S: Field>(p: &PointP2<S>, l: &LineP2<S>, tol: &Tolerance) -> bool {
    let scale = inf_norm(&p.coords) * inf_norm(&l.coeffs);
    l.eval(p).is_zero_within(tol, scale)
}

pub fn collinear<S: Field>(p: &PointP2<S>, q: &PointP2<S>, r: &PointP2<S>, tol: &Tolerance) -> bool {
    let scale = inf_norm(&p.coords) * inf_norm(&q.coords) * inf_norm(&r.coords);
    det3_rows(&p.coords, &q.coords, &r.coords).is_zero_within(tol, scale)
}

pub fn concurrent<S: Field>(l: &LineP2<S>, m: &LineP2<S>, n: &LineP2<S>, tol: &Tolerance) -> bool {
    collinear(&l.dual(), &m.dual(), &n.dual(), tol)
}

/// Invertible projective map of the plane.
#[derive(Clone, PartialEq)]
pub struct Homography<S> {
    m: [[S; 3]; 3],
}

impl<S: Field> Homography<S> {
    pub fn new(m: [[S; 3]; 3]) -> Result<Self, GeomError> {
        if det3(&m).is_zero() {
            return Err(GeomError::SingularHomography);
        }
        let mut flat: Vec<S> = m.iter().flatten().cloned().collect();
        S::canonicalize(&mut flat);
        let m = std::array::from_fn(|i| std::array::from_fn(|j| flat[3 * i + j].clone()));
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })
        }))
        .expect("identity is invertible")
    }

    pub fn diagonal(a: S, b: S, c: S) -> Result<Self, GeomError> {
        Self::new([
            [a, S::zero(), S::zero()],
            [S::zero(), b, S::zero()],
            [S::zero(), S::zero(), c],
        ])
    }

    pub fn matrix(&self) -> &[[S; 3]; 3] {
        &self.m
    }

    pub fn inverse(&self) -> Self {
        Self::new(adjugate3(&self.m)).expect("adjugate of an invertible matrix is invertible")
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(mat_mul3(&self.m, &other.m)).expect("product of invertible matrices")
    }

    pub fn apply_line(&self, l: &LineP2<S>) -> LineP2<S> {
        // Lines transform by the inverse transpose; the adjugate is enough
        // modulo scale.
        let it = transpose3(&adjugate3(&self.m));
        LineP2::from_array(mat_vec3(&it, &l.coeffs)).expect("invertible map keeps lines nonzero")
    }
}

impl<S: Field> fmt::Debug for Homography<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homography{:?}", self.m)
    }
}

pub fn apply_homography<S: Field>(h: &Homography<S>, p: &PointP2<S>) -> PointP2<S> {
    PointP2::from_array(mat_vec3(&h.m, &p.coords)).expect("invertible map keeps points nonzero")
}

/// Two distinct points `P`, `Q` on a line, with the coordinate pair used to
/// read off parameters `(α, β)` such that `X = α·P + β·Q`.
#[derive(Clone, Debug)]
pub struct LineBasis<S: Field> {
    p: PointP2<S>,
    q: PointP2<S>,
    line: LineP2<S>,
    i: usize,
    j: usize,
    minor: S,
}

impl<S: Field> LineBasis<S> {
    pub fn new(p: PointP2<S>, q: PointP2<S>) -> Result<Self, GeomError> {
        let line = join(&p, &q)?;
        let (pc, qc) = (&p.coords, &q.coords);
        let (i, j, minor) = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .map(|(i, j)| (i, j, det2(&pc[i], &pc[j], &qc[i], &qc[j])))
            .max_by(|a, b| a.2.to_f64().abs().total_cmp(&b.2.to_f64().abs()))
            .expect("three coordinate pairs");
        Ok(Self { p, q, line, i, j, minor })
    }

    /// Basis through the first two distinct points of `points`.
    pub fn spanning(points: &[&PointP2<S>]) -> Option<Self> {
        let first = points.first()?;
        points
            .iter()
            .skip(1)
            .find_map(|x| LineBasis::new((*first).clone(), (*x).clone()).ok())
    }

    pub fn line(&self) -> &LineP2<S> {
        &self.line
    }

    pub fn first(&self) -> &PointP2<S> {
        &self.p
    }

    pub fn second(&self) -> &PointP2<S> {
        &self.q
    }

    pub fn contains(&self, x: &PointP2<S>, tol: &Tolerance) -> bool {
        incident(x, &self.line, tol)
    }

    /// Parameters of `x`, or `None` when `x` is off the line.
    pub fn params(&self, x: &PointP2<S>, tol: &Tolerance) -> Option<(S, S)> {
        if !self.contains(x, tol) {
            return None;
        }
        let (pc, qc, xc) = (&self.p.coords, &self.q.coords, &x.coords);
        let (i, j) = (self.i, self.j);
        let alpha = det2(&xc[i], &xc[j], &qc[i], &qc[j]) / self.minor.clone();
        let beta = det2(&pc[i], &pc[j], &xc[i], &xc[j]) / self.minor.clone();
        Some((alpha, beta))
    }

    pub fn point(&self, alpha: &S, beta: &S) -> Result<PointP2<S>, GeomError> {
        let c = std::array::from_fn(|k| {
            alpha.clone() * self.p.coords[k].clone() + beta.clone() * self.q.coords[k].clone()
        });
        PointP2::from_array(c)
    }
}

fn bracket<S: Field>(x: &(S, S), y: &(S, S)) -> S {
    det2(&x.0, &x.1, &y.0, &y.1)
}

/// Cross-ratio `(a, b; c, d) = (|ac|·|bd|) / (|bc|·|ad|)`, which in an affine
/// parameter reads `((c−a)(d−b)) / ((c−b)(d−a))`.
pub fn cross_ratio<S: Field>(
    a: &PointP2<S>,
    b: &PointP2<S>,
    c: &PointP2<S>,
    d: &PointP2<S>,
) -> Result<S, GeomError> {
    let tol = Tolerance::default();
    let basis = LineBasis::spanning(&[a, b, c, d]).ok_or(GeomError::DegenerateQuadruple)?;
    let param = |x: &PointP2<S>| basis.params(x, &tol).ok_or(GeomError::NotCollinear);
    let (pa, pb, pc, pd) = (param(a)?, param(b)?, param(c)?, param(d)?);
    let den = bracket(&pb, &pc) * bracket(&pa, &pd);
    if den.is_zero() {
        return Err(GeomError::DegenerateQuadruple);
    }
    Ok(bracket(&pa, &pc) * bracket(&pb, &pd) / den)
}

/// A projective involution of a line, acting on parameters relative to
/// `base`.
#[derive(Clone, Debug)]
pub struct Involution<S: Field> {
    basis: LineBasis<S>,
    m: [[S; 2]; 2],
}

impl<S: Field> Involution<S> {
    pub fn base(&self) -> (&PointP2<S>, &PointP2<S>) {
        (self.basis.first(), self.basis.second())
    }

    pub fn matrix(&self) -> &[[S; 2]; 2] {
        &self.m
    }

    pub fn line(&self) -> &LineP2<S> {
        self.basis.line()
    }

    /// `m²` as a multiple of the identity, `λ`; `None` if `m²` is not scalar.
    pub fn square_factor(&self) -> Option<S> {
        let [[a, b], [c, d]] = &self.m;
        let sq = [
            [a.clone() * a.clone() + b.clone() * c.clone(), a.clone() * b.clone() + b.clone() * d.clone()],
            [c.clone() * a.clone() + d.clone() * c.clone(), c.clone() * b.clone() + d.clone() * d.clone()],
        ];
        let scalar = sq[0][1].is_zero() && sq[1][0].is_zero() && (sq[0][0].clone() - sq[1][1].clone()).is_zero();
        scalar.then(|| sq[0][0].clone())
    }
}

/// The unique involution exchanging the points of `pair1` and of `pair2`. A
/// pair may repeat a point, which then becomes a fixed point.
pub fn involution_from_pairs<S: Field>(
    pair1: (&PointP2<S>, &PointP2<S>),
    pair2: (&PointP2<S>, &PointP2<S>),
) -> Result<Involution<S>, GeomError> {
    let tol = Tolerance::default();
    let all = [pair1.0, pair1.1, pair2.0, pair2.1];
    let basis = LineBasis::spanning(&all).ok_or(GeomError::DegeneratePairs)?;
    let param = |x: &PointP2<S>| basis.params(x, &tol).ok_or(GeomError::NotCollinear);
    // Pairs (x, y) of an involution are the conjugate pairs of a symmetric
    // bilinear form A·xα·yα + B·(xα·yβ + xβ·yα) + C·xβ·yβ.
    let row = |x: (S, S), y: (S, S)| {
        vec![
            x.0.clone() * y.0.clone(),
            x.0.clone() * y.1.clone() + x.1.clone() * y.0.clone(),
            x.1 * y.1,
        ]
    };
    let rows = vec![
        row(param(pair1.0)?, param(pair1.1)?),
        row(param(pair2.0)?, param(pair2.1)?),
    ];
    let ns = crate::kernel::linalg::null_space(&rows, 3);
    if ns.len() != 1 {
        return Err(GeomError::DegeneratePairs);
    }
    let (a, b, c) = (ns[0][0].clone(), ns[0][1].clone(), ns[0][2].clone());
    if (b.clone() * b.clone() - a.clone() * c.clone()).is_zero() {
        return Err(GeomError::DegeneratePairs);
    }
    Ok(Involution {
        basis,
        m: [[b.clone(), c], [-a, -b]],
    })
}

pub fn apply_involution<S: Field>(inv: &Involution<S>, p: &PointP2<S>) -> Result<PointP2<S>, GeomError> {
    let (alpha, beta) = inv
        .basis
        .params(p, &Tolerance::default())
        .ok_or(GeomError::NotOnLine)?;
    let [[a, b], [c, d]] = &inv.m;
    let na = a.clone() * alpha.clone() + b.clone() * beta.clone();
    let nb = c.clone() * alpha + d.clone() * beta;
    inv.basis.point(&na, &nb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{q, Rational};

    type P = PointP2<Rational>;
    type L = LineP2<Rational>;

    fn pt(x: i64, y: i64, z: i64) -> P {
        P::new(x.into(), y.into(), z.into()).unwrap()
    }

    fn ln(u: i64, v: i64, w: i64) -> L {
        L::new(u.into(), v.into(), w.into()).unwrap()
    }

    fn aff(x: Rational, y: Rational) -> P {
        P::affine(x, y)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn canonical_form() {
        let p = P::new(q(-1, 2), q(1, 3), q(0, 1)).unwrap();
        assert_eq!(p.coords(), &[Rational::from(3), Rational::from(-2), Rational::from(0)]);
        assert_eq!(pt(2, 4, 2), pt(1, 2, 1));
        assert!(matches!(P::new(0.into(), 0.into(), 0.into()), Err(GeomError::ZeroVector)));
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&pt(1, 0, 0), &pt(0, 1, 0)).unwrap(), ln(0, 0, 1));
        assert_eq!(join(&pt(1, 0, 1), &pt(0, 1, 1)).unwrap(), ln(1, 1, -1));
        assert_eq!(join(&pt(1, 2, 1), &pt(2, 4, 2)), Err(GeomError::CoincidentPoints));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&ln(1, 0, 0), &ln(0, 1, 0)).unwrap(), pt(0, 0, 1));
        assert_eq!(meet(&ln(1, 0, -1), &ln(1, 0, -2)).unwrap(), pt(0, 1, 0));
        assert_eq!(meet(&ln(1, 1, 1), &ln(2, 2, 2)), Err(GeomError::CoincidentLines));
    }

    #[test]
    fn incidence_examples() {
        assert!(incident(&pt(1, 1, 1), &ln(1, -1, 0), &tol()));
        assert!(incident(&pt(1, 0, 0), &ln(0, 0, 1), &tol()));
        assert!(!incident(&pt(1, 1, 1), &ln(1, 1, 1), &tol()));
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear(&pt(4, -3, 1), &pt(-8, 1, 1), &pt(1, -2, 1), &tol()));
        assert!(!collinear(&pt(1, 0, 1), &pt(0, 1, 1), &pt(0, 0, 1), &tol()));
        let (p, r) = (pt(3, 1, 2), pt(-1, 5, 1));
        assert!(collinear(&p, &p, &r, &tol()));
    }

    #[test]
    fn concurrent_examples() {
        assert!(concurrent(&ln(1, 0, 0), &ln(0, 1, 0), &ln(1, 1, 0), &tol()));
        assert!(!concurrent(&ln(1, 0, 0), &ln(0, 1, 0), &ln(0, 0, 1), &tol()));
        assert!(concurrent(&ln(1, 0, -1), &ln(1, 0, -5), &ln(1, 0, 7), &tol()));
    }

    #[test]
    fn homography_examples() {
        let p = pt(2, 3, 5);
        assert_eq!(apply_homography(&Homography::identity(), &p), p);
        let h = Homography::diagonal(2.into(), 1.into(), 1.into()).unwrap();
        assert_eq!(apply_homography(&h, &pt(1, 1, 1)), pt(2, 1, 1));
        let g = Homography::new([
            [1.into(), 2.into(), 0.into()],
            [0.into(), 1.into(), 3.into()],
            [1.into(), 0.into(), 1.into()],
        ])
        .unwrap();
        assert_eq!(apply_homography(&g.inverse(), &apply_homography(&g, &p)), p);
        // Incidence is preserved when lines are mapped covariantly.
        let l = join(&p, &pt(1, -1, 1)).unwrap();
        assert!(incident(&apply_homography(&g, &p), &g.apply_line(&l), &tol()));
        assert_eq!(
            Homography::diagonal(Rational::from(1), Rational::from(0), Rational::from(1)),
            Err(GeomError::SingularHomography)
        );
    }

    #[test]
    fn cross_ratio_affine_sequence() {
        let x = |t: i64| aff(t.into(), 0.into());
        assert_eq!(cross_ratio(&x(0), &x(1), &x(2), &x(3)).unwrap(), q(4, 3));
    }

    #[test]
    fn cross_ratio_harmonic() {
        let cr = cross_ratio(&pt(0, 0, 1), &pt(1, 0, 0), &pt(1, 0, 1), &pt(-1, 0, 1)).unwrap();
        assert_eq!(cr, q(-1, 1));
    }

    #[test]
    fn cross_ratio_errors() {
        let x = |t: i64| aff(t.into(), 0.into());
        assert_eq!(
            cross_ratio(&x(0), &x(1), &x(2), &pt(0, 1, 1)),
            Err(GeomError::NotCollinear)
        );
        assert_eq!(
            cross_ratio(&x(0), &x(1), &x(1), &x(3)),
            Err(GeomError::DegenerateQuadruple)
        );
    }

    #[test]
    fn cross_ratio_swap_identity() {
        let x = |t: i64| aff(t.into(), t.into());
        let a = cross_ratio(&x(0), &x(2), &x(5), &x(-3)).unwrap();
        let b = cross_ratio(&x(0), &x(2), &x(-3), &x(5)).unwrap();
        assert_eq!(a * b, Rational::one());
    }

    fn on_x_axis(t: Rational) -> P {
        aff(t, 0.into())
    }

    #[test]
    fn involution_swapping_plus_minus_one_and_zero_infinity() {
        // {−1, 1} and {0, ∞} are exchanged by t ↦ −1/t (fixed points ±i).
        let inv = involution_from_pairs(
            (&on_x_axis(q(-1, 1)), &on_x_axis(q(1, 1))),
            (&on_x_axis(q(0, 1)), &pt(1, 0, 0)),
        )
        .unwrap();
        let lambda = inv.square_factor().unwrap();
        assert!(!lambda.is_zero());
        assert_eq!(apply_involution(&inv, &pt(1, 0, 0)).unwrap(), on_x_axis(q(0, 1)));
        assert_eq!(apply_involution(&inv, &on_x_axis(q(5, 1))).unwrap(), on_x_axis(q(-1, 5)));
    }

    #[test]
    fn involution_with_fixed_point_is_reflection() {
        let origin = on_x_axis(q(0, 1));
        let inv = involution_from_pairs(
            (&origin, &origin),
            (&on_x_axis(q(1, 1)), &on_x_axis(q(-1, 1))),
        )
        .unwrap();
        assert_eq!(apply_involution(&inv, &on_x_axis(q(5, 1))).unwrap(), on_x_axis(q(-5, 1)));
        assert_eq!(apply_involution(&inv, &pt(1, 0, 0)).unwrap(), pt(1, 0, 0));
        assert_eq!(apply_involution(&inv, &origin).unwrap(), origin);
    }

    #[test]
    fn involution_errors() {
        let a = on_x_axis(q(0, 1));
        let b = on_x_axis(q(1, 1));
        assert_eq!(
            involution_from_pairs((&a, &b), (&pt(0, 1, 1), &pt(2, 3, 1))).unwrap_err(),
            GeomError::NotCollinear
        );
        assert_eq!(
            involution_from_pairs((&a, &b), (&b, &a)).unwrap_err(),
            GeomError::DegeneratePairs
        );
        let inv = involution_from_pairs((&a, &a), (&b, &on_x_axis(q(-1, 1)))).unwrap();
        assert_eq!(apply_involution(&inv, &pt(0, 1, 1)), Err(GeomError::NotOnLine));
    }

    #[test]
    fn involution_is_involutory() {
        let inv = involution_from_pairs(
            (&on_x_axis(q(2, 1)), &on_x_axis(q(7, 3))),
            (&on_x_axis(q(-1, 2)), &on_x_axis(q(4, 1))),
        )
        .unwrap();
        for k in -50..50 {
            let p = on_x_axis(q(k, 7));
            let image = apply_involution(&inv, &p).unwrap();
            assert_eq!(apply_involution(&inv, &image).unwrap(), p);
        }
    }

    #[test]
    fn float_backend_join_meet() {
        let p = PointP2::<f64>::affine(1.0, 2.0);
        let r = PointP2::<f64>::affine(-3.0, 0.5);
        let l = join(&p, &r).unwrap();
        assert!(incident(&p, &l, &tol()));
        assert!(incident(&r, &l, &tol()));
        let m = LineP2::<f64>::vertical(0.25);
        let x = meet(&l, &m).unwrap();
        assert!(incident(&x, &l, &tol()) && incident(&x, &m, &tol()));
        let near = PointP2::<f64>::affine(1.0, 2.0 + 1e-14);
        assert_eq!(join(&p, &near), Err(GeomError::CoincidentPoints));
    }

    #[test]
    fn two_points_span_the_line() {
        for l in [ln(1, 0, -3), ln(0, 0, 1), ln(2, -5, 7), ln(0, 1, 0)] {
            let (a, b) = l.two_points();
            assert_ne!(a, b);
            assert!(incident(&a, &l, &tol()) && incident(&b, &l, &tol()));
        }
    }
}

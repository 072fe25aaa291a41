//! Conics as symmetric 3×3 matrices: tangents and polars, the conic through
//! five points, line–conic meets, and circle pairs with their same-side
//! tangent apex.

use std::fmt;

use crate::error::GeomError;
use crate::kernel::linalg::{adjugate3, det3, dot, mat_vec3, null_space};
use crate::kernel::{Field, Rational, Tolerance};
use crate::p2::{inf_norm, incident, LineP2, PointP2};

/// Point conic `pᵀ·M·p = 0`, `M` symmetric and nonzero, stored canonically.
#[derive(Clone, PartialEq)]
pub struct Conic<S> {
    m: [[S; 3]; 3],
}

impl<S: Field> Conic<S> {
    pub fn new(m: [[S; 3]; 3]) -> Result<Self, GeomError> {
        for i in 0..3 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(GeomError::InvalidConic);
                }
            }
        }
        let mut flat: Vec<S> = m.iter().flatten().cloned().collect();
        if flat.iter().all(|x| x.is_zero()) {
            return Err(GeomError::InvalidConic);
        }
        S::canonicalize(&mut flat);
        Ok(Self {
            m: std::array::from_fn(|i| std::array::from_fn(|j| flat[3 * i + j].clone())),
        })
    }

    /// Conic `a·x² + b·xy + c·y² + d·xz + e·yz + f·z² = 0`.
    pub fn from_coefficients([a, b, c, d, e, f]: [S; 6]) -> Result<Self, GeomError> {
        let half = S::one() / S::from_i64(2);
        let (b, d, e) = (b * half.clone(), d * half.clone(), e * half);
        Self::new([[a, b.clone(), d.clone()], [b, c, e.clone()], [d, e, f]])
    }

    /// The pair of lines `l ∪ m`, matrix `l·mᵀ + m·lᵀ`.
    pub fn line_pair(l: &LineP2<S>, m: &LineP2<S>) -> Result<Self, GeomError> {
        let (a, b) = (l.coeffs(), m.coeffs());
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i].clone() * b[j].clone() + b[i].clone() * a[j].clone())
        }))
    }

    pub fn matrix(&self) -> &[[S; 3]; 3] {
        &self.m
    }

    pub fn eval(&self, p: &PointP2<S>) -> S {
        self.bilinear(p, p)
    }

    /// `pᵀ·M·q`
    pub fn bilinear(&self, p: &PointP2<S>, q: &PointP2<S>) -> S {
        dot(p.coords(), &mat_vec3(&self.m, q.coords()))
    }

    pub fn contains(&self, p: &PointP2<S>, tol: &Tolerance) -> bool {
        let n = inf_norm(p.coords());
        let scale = self.norm() * n * n;
        self.eval(p).is_zero_within(tol, scale)
    }

    pub fn det(&self) -> S {
        det3(&self.m)
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    /// The dual conic (adjugate): a line `l` is tangent iff `lᵀ·adj(M)·l = 0`.
    pub fn dual(&self) -> [[S; 3]; 3] {
        adjugate3(&self.m)
    }

    pub fn to_f64(&self) -> Conic<f64> {
        Conic::new(self.m.clone().map(|row| row.map(|x| x.to_f64()))).expect("canonical matrix stays nonzero")
    }

    fn norm(&self) -> f64 {
        self.m.iter().map(|r| inf_norm(r)).fold(0.0, f64::max)
    }
}

impl<S: Field> fmt::Display for Conic<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[S; 3]| format!("[{}, {}, {}]", r[0], r[1], r[2]);
        write!(f, "conic[{}, {}, {}]", row(&self.m[0]), row(&self.m[1]), row(&self.m[2]))
    }
}

impl<S: Field> fmt::Debug for Conic<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(x − cx)² + (y − cy)² = r²`
pub fn conic_from_circle<S: Field>(center: (S, S), radius: S) -> Result<Conic<S>, GeomError> {
    if radius <= S::zero() {
        return Err(GeomError::NonPositiveRadius);
    }
    let (cx, cy) = center;
    let f = cx.clone() * cx.clone() + cy.clone() * cy.clone() - radius.clone() * radius;
    let (o, i) = (S::zero(), S::one());
    Conic::new([
        [i.clone(), o.clone(), -cx.clone()],
        [o, i, -cy.clone()],
        [-cx, -cy, f],
    ])
}

pub fn conic_through_five<S: Field>(pts: [&PointP2<S>; 5]) -> Result<Conic<S>, GeomError> {
    let rows: Vec<Vec<S>> = pts
        .iter()
        .map(|p| {
            let [x, y, z] = p.coords().clone();
            vec![
                x.clone() * x.clone(),
                x.clone() * y.clone(),
                y.clone() * y.clone(),
                x * z.clone(),
                y * z.clone(),
                z.clone() * z,
            ]
        })
        .collect();
    let ns = null_space(&rows, 6);
    if ns.len() != 1 {
        return Err(GeomError::NoUniqueConic);
    }
    let v = ns.into_iter().next().expect("one vector");
    let coeffs: [S; 6] = std::array::from_fn(|i| v[i].clone());
    Conic::from_coefficients(coeffs)
}

/// The line `M·p`.
pub fn polar<S: Field>(c: &Conic<S>, p: &PointP2<S>) -> Result<LineP2<S>, GeomError> {
    LineP2::from_array(mat_vec3(&c.m, p.coords())).map_err(|_| GeomError::SingularPoint)
}

pub fn tangent_at<S: Field>(c: &Conic<S>, p: &PointP2<S>) -> Result<LineP2<S>, GeomError> {
    if !c.contains(p, &Tolerance::default()) {
        return Err(GeomError::PointNotOnConic);
    }
    polar(c, p)
}

/// The other meet of `l` with `c`, given one meet `known`. Returns `known`
/// when `l` is tangent there.
pub fn second_intersection<S: Field>(c: &Conic<S>, known: &PointP2<S>, l: &LineP2<S>) -> Result<PointP2<S>, GeomError> {
    let tol = Tolerance::default();
    if !c.contains(known, &tol) || !incident(known, l, &tol) {
        return Err(GeomError::InvalidIncidence);
    }
    let (p, q) = l.two_points();
    let other = if p.approx_eq(known, &tol) { q } else { p };
    // On α·K + β·Q the restricted form is β·(2·KMQ·α + QMQ·β).
    let b = c.bilinear(known, &other);
    let cc = c.eval(&other);
    let k = known.coords();
    let o = other.coords();
    let two_b = S::from_i64(2) * b;
    PointP2::from_array(std::array::from_fn(|i| two_b.clone() * o[i].clone() - cc.clone() * k[i].clone()))
        .map_err(|_| GeomError::InvalidIncidence)
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeetResult<S: Field> {
    /// Two distinct real meets.
    Two([PointP2<S>; 2]),
    Tangent(PointP2<S>),
    NoRealMeet,
    /// Real meets that are not rational. With `P`, `Q` spanning the line, the
    /// meets are `α·P + β·Q` for the roots of `a·α² + 2b·αβ + c·β²`.
    Irrational {
        p: PointP2<S>,
        q: PointP2<S>,
        a: S,
        b: S,
        c: S,
    },
    /// The line is a component of a degenerate conic.
    Contained,
}

pub fn line_conic_meet<S: Field>(c: &Conic<S>, l: &LineP2<S>) -> MeetResult<S> {
    let (p, q) = l.two_points();
    let a = c.eval(&p);
    let b = c.bilinear(&p, &q);
    let cc = c.eval(&q);
    let scale = c.norm();
    let tol = Tolerance::default();
    let zero = |x: &S| x.is_zero_within(&tol, scale);
    if zero(&a) && zero(&b) && zero(&cc) {
        return MeetResult::Contained;
    }
    let combine = |alpha: S, beta: S| -> PointP2<S> {
        PointP2::from_array(std::array::from_fn(|i| {
            alpha.clone() * p.coords()[i].clone() + beta.clone() * q.coords()[i].clone()
        }))
        .expect("P and Q are independent")
    };
    let disc = b.clone() * b.clone() - a.clone() * cc.clone();
    if disc.is_zero_within(&tol, scale * scale) {
        return if zero(&a) {
            MeetResult::Tangent(p.clone())
        } else {
            MeetResult::Tangent(combine(-b, a))
        };
    }
    if disc < S::zero() {
        return MeetResult::NoRealMeet;
    }
    if zero(&a) {
        // P is a root; the other is (−c : 2b).
        return MeetResult::Two([p.clone(), combine(-cc, S::from_i64(2) * b)]);
    }
    match disc.sqrt() {
        Some(r) => MeetResult::Two([
            combine(-b.clone() - r.clone(), a.clone()),
            combine(-b + r, a),
        ]),
        None => MeetResult::Irrational {
            p: p.clone(),
            q: q.clone(),
            a,
            b,
            c: cc,
        },
    }
}

/// Two circles, each given by an affine center and a positive radius.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePair<S> {
    pub c1: (S, S),
    pub r1: S,
    pub c2: (S, S),
    pub r2: S,
}

impl<S: Field> CirclePair<S> {
    pub fn new(c1: (S, S), r1: S, c2: (S, S), r2: S) -> Result<Self, GeomError> {
        if r1 <= S::zero() || r2 <= S::zero() {
            return Err(GeomError::NonPositiveRadius);
        }
        if c1 == c2 && r1 == r2 {
            return Err(GeomError::IdenticalCircles);
        }
        Ok(Self { c1, r1, c2, r2 })
    }

    pub fn first(&self) -> Conic<S> {
        conic_from_circle(self.c1.clone(), self.r1.clone()).expect("radius checked")
    }

    pub fn second(&self) -> Conic<S> {
        conic_from_circle(self.c2.clone(), self.r2.clone()).expect("radius checked")
    }
}

/// External homothety center `(r2·C1 − r1·C2)/(r2 − r1)`, where the two
/// same-side common tangents meet; at infinity for equal radii.
pub fn same_side_tangent_apex<S: Field>(cp: &CirclePair<S>) -> Result<PointP2<S>, GeomError> {
    let dx = cp.c2.0.clone() - cp.c1.0.clone();
    let dy = cp.c2.1.clone() - cp.c1.1.clone();
    let dr = cp.r2.clone() - cp.r1.clone();
    if dx.clone() * dx + dy.clone() * dy <= dr.clone() * dr.clone() {
        return Err(GeomError::NoSameSideTangents);
    }
    PointP2::new(
        cp.r2.clone() * cp.c1.0.clone() - cp.r1.clone() * cp.c2.0.clone(),
        cp.r2.clone() * cp.c1.1.clone() - cp.r1.clone() * cp.c2.1.clone(),
        dr,
    )
}

/// Image of a point of the first circle under the homothety (or translation)
/// carrying it onto the second, `X ↦ C2 + (r2/r1)·(X − C1)`.
pub fn homothety_image<S: Field>(cp: &CirclePair<S>, p: &PointP2<S>) -> Result<PointP2<S>, GeomError> {
    if !cp.first().contains(p, &Tolerance::default()) {
        return Err(GeomError::PointNotOnConic);
    }
    let (x, y) = p.to_affine().ok_or(GeomError::PointNotOnConic)?;
    let k = cp.r2.clone() / cp.r1.clone();
    Ok(PointP2::affine(
        cp.c2.0.clone() + k.clone() * (x - cp.c1.0.clone()),
        cp.c2.1.clone() + k * (y - cp.c1.1.clone()),
    ))
}

/// Rational point `C + r·((1 − t²)/(1 + t²), 2t/(1 + t²))` of a circle.
pub fn circle_point(center: (&Rational, &Rational), r: &Rational, t: &Rational) -> PointP2<Rational> {
    let t2 = t.clone() * t.clone();
    let den = Rational::one() + t2.clone();
    let x = center.0.clone() + r.clone() * (Rational::one() - t2) / den.clone();
    let y = center.1.clone() + r.clone() * Rational::from(2) * t.clone() / den;
    PointP2::affine(x, y)
}

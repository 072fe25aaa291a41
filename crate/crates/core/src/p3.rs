//! Projective 3-space: points, planes and lines, central and parallel
//! projection onto a drawing plane, folded sheets, and the spatial witness
//! for a planar Desargues configuration.

use std::fmt;

use crate::error::GeomError;
use crate::kernel::linalg::{adjugate3, cofactor_row, det3, det4, dot, mat_vec3};
use crate::kernel::{Field, Tolerance};
use crate::p2::{self, LineP2, PointP2};

fn canonical4<S: Field>(mut v: [S; 4]) -> Result<[S; 4], GeomError> {
    if v.iter().all(|c| c.is_zero()) {
        return Err(GeomError::ZeroVector);
    }
    S::canonicalize(&mut v);
    Ok(v)
}

fn unit4<S: Field>(k: usize) -> [S; 4] {
    std::array::from_fn(|i| if i == k { S::one() } else { S::zero() })
}

#[derive(Clone, PartialEq)]
pub struct PointP3<S> {
    coords: [S; 4],
}

#[derive(Clone, PartialEq)]
pub struct PlaneP3<S> {
    coeffs: [S; 4],
}

/// A line given by two distinct points.
#[derive(Clone)]
pub struct LineP3<S> {
    p: PointP3<S>,
    q: PointP3<S>,
}

impl<S: Field> PointP3<S> {
    pub fn new(x: S, y: S, z: S, w: S) -> Result<Self, GeomError> {
        Self::from_array([x, y, z, w])
    }

    pub fn from_array(coords: [S; 4]) -> Result<Self, GeomError> {
        Ok(Self {
            coords: canonical4(coords)?,
        })
    }

    pub fn affine(x: S, y: S, z: S) -> Self {
        Self::from_array([x, y, z, S::one()]).expect("w = 1 is nonzero")
    }

    pub fn coords(&self) -> &[S; 4] {
        &self.coords
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[3].is_zero()
    }

    /// `a·self + b·other`
    pub fn combine(&self, a: &S, other: &Self, b: &S) -> Result<Self, GeomError> {
        Self::from_array(std::array::from_fn(|k| {
            a.clone() * self.coords[k].clone() + b.clone() * other.coords[k].clone()
        }))
    }
}

impl<S: Field> PlaneP3<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self, GeomError> {
        Self::from_array([a, b, c, d])
    }

    pub fn from_array(coeffs: [S; 4]) -> Result<Self, GeomError> {
        Ok(Self {
            coeffs: canonical4(coeffs)?,
        })
    }

    pub fn coeffs(&self) -> &[S; 4] {
        &self.coeffs
    }

    pub fn eval(&self, p: &PointP3<S>) -> S {
        dot(&self.coeffs, &p.coords)
    }

    pub fn contains(&self, p: &PointP3<S>) -> bool {
        self.eval(p).is_zero()
    }

    pub fn contains_line(&self, l: &LineP3<S>) -> bool {
        self.contains(&l.p) && self.contains(&l.q)
    }
}

impl<S: Field> LineP3<S> {
    pub fn new(p: PointP3<S>, q: PointP3<S>) -> Result<Self, GeomError> {
        if is_dependent2(&p, &q) {
            return Err(GeomError::CoincidentPoints);
        }
        Ok(Self { p, q })
    }

    pub fn points(&self) -> (&PointP3<S>, &PointP3<S>) {
        (&self.p, &self.q)
    }

    pub fn contains(&self, x: &PointP3<S>) -> bool {
        cofactor_row(&self.p.coords, &self.q.coords, &x.coords)
            .iter()
            .all(|c| c.is_zero())
    }

    pub fn same_line(&self, other: &Self) -> bool {
        self.contains(&other.p) && self.contains(&other.q)
    }

    pub fn coplanar_with(&self, other: &Self) -> bool {
        det4(&[
            self.p.coords.clone(),
            self.q.coords.clone(),
            other.p.coords.clone(),
            other.q.coords.clone(),
        ])
        .is_zero()
    }
}

fn is_dependent2<S: Field>(p: &PointP3<S>, q: &PointP3<S>) -> bool {
    (0..4).all(|i| {
        (i + 1..4).all(|j| {
            (p.coords[i].clone() * q.coords[j].clone() - p.coords[j].clone() * q.coords[i].clone()).is_zero()
        })
    })
}

macro_rules! display4 {
    ($ty:ident, $field:ident, $open:literal, $close:literal) => {
        impl<S: Field> fmt::Display for $ty<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c, d] = &self.$field;
                write!(f, concat!($open, "{}:{}:{}:{}", $close), a, b, c, d)
            }
        }
        impl<S: Field> fmt::Debug for $ty<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

display4!(PointP3, coords, "(", ")");
display4!(PlaneP3, coeffs, "[", "]");

impl<S: Field> fmt::Debug for LineP3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({} ∨ {})", self.p, self.q)
    }
}

pub fn plane_through<S: Field>(p: &PointP3<S>, q: &PointP3<S>, r: &PointP3<S>) -> Result<PlaneP3<S>, GeomError> {
    PlaneP3::from_array(cofactor_row(&p.coords, &q.coords, &r.coords)).map_err(|_| GeomError::CollinearPoints)
}

/// Point common to three planes, if they are independent.
fn point_of_planes<S: Field>(a: &[S; 4], b: &[S; 4], c: &[S; 4]) -> Option<PointP3<S>> {
    PointP3::from_array(cofactor_row(a, b, c)).ok()
}

pub fn meet_planes<S: Field>(a: &PlaneP3<S>, b: &PlaneP3<S>) -> Result<LineP3<S>, GeomError> {
    let mut found: Vec<PointP3<S>> = Vec::with_capacity(2);
    for k in 0..4 {
        if let Some(x) = point_of_planes(&a.coeffs, &b.coeffs, &unit4(k)) {
            if found.iter().all(|y| !is_dependent2(y, &x)) {
                found.push(x);
            }
        }
        if found.len() == 2 {
            let q = found.pop().expect("two points");
            let p = found.pop().expect("two points");
            return Ok(LineP3 { p, q });
        }
    }
    Err(GeomError::CoincidentPlanes)
}

pub fn meet_line_plane<S: Field>(l: &LineP3<S>, pl: &PlaneP3<S>) -> Result<PointP3<S>, GeomError> {
    let a = pl.eval(&l.q);
    let b = -pl.eval(&l.p);
    l.p.combine(&a, &l.q, &b).map_err(|_| GeomError::LineInPlane)
}

/// Common point of two coplanar lines.
pub fn meet_lines<S: Field>(l: &LineP3<S>, m: &LineP3<S>) -> Result<PointP3<S>, GeomError> {
    if l.same_line(m) {
        return Err(GeomError::CoincidentLines);
    }
    if !l.coplanar_with(m) {
        return Err(GeomError::SkewLines);
    }
    // Cut `l` with a plane through `m` that does not contain `l`.
    for k in 0..4 {
        let e = PointP3::from_array(unit4(k)).expect("unit vector");
        let Ok(plane) = plane_through(&m.p, &m.q, &e) else {
            continue;
        };
        if plane.contains_line(l) {
            continue;
        }
        return meet_line_plane(l, &plane);
    }
    unreachable!("some coordinate point lies off the plane of two distinct lines")
}

#[derive(Clone, Debug)]
pub enum ProjectionKind<S: Field> {
    Central(PointP3<S>),
    /// Parallel projection along a direction (a point at infinity).
    Orthogonal(PointP3<S>),
}

/// Projection from a center (or along a direction) onto an image plane, with
/// a frame `(origin, ex, ey)` on that plane fixing 2D coordinates:
/// `Y = z·origin + x·ex + y·ey` has coordinates `(x : y : z)`.
#[derive(Clone, Debug)]
pub struct Projection<S: Field> {
    kind: ProjectionKind<S>,
    image_plane: PlaneP3<S>,
    frame: [PointP3<S>; 3],
    rows: [usize; 3],
    solve: [[S; 3]; 3],
}

impl<S: Field> Projection<S> {
    pub fn new(kind: ProjectionKind<S>, image_plane: PlaneP3<S>, frame: [PointP3<S>; 3]) -> Result<Self, GeomError> {
        let center = match &kind {
            ProjectionKind::Central(c) => c,
            ProjectionKind::Orthogonal(d) => {
                if !d.is_at_infinity() {
                    return Err(GeomError::InvalidProjection("direction must be a point at infinity"));
                }
                d
            }
        };
        if image_plane.contains(center) {
            return Err(GeomError::InvalidProjection("center lies on the image plane"));
        }
        if frame.iter().any(|f| !image_plane.contains(f)) {
            return Err(GeomError::InvalidProjection("frame point off the image plane"));
        }
        // Pick three coordinate rows on which the frame matrix is invertible.
        let col = |r: usize| -> [S; 3] { std::array::from_fn(|j| frame[j].coords[r].clone()) };
        let choices = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let (rows, m) = choices
            .iter()
            .map(|rows| (*rows, [col(rows[0]), col(rows[1]), col(rows[2])]))
            .find(|(_, m)| !det3(m).is_zero())
            .ok_or(GeomError::InvalidProjection("frame points are dependent"))?;
        Ok(Self {
            kind,
            image_plane,
            frame,
            rows,
            solve: adjugate3(&m),
        })
    }

    /// Parallel projection along `z` onto `z = 0`, coordinates `(x, y)`.
    pub fn orthogonal_xy() -> Self {
        let (o, i) = (S::zero(), S::one());
        Self::new(
            ProjectionKind::Orthogonal(PointP3::new(o.clone(), o.clone(), i.clone(), o.clone()).expect("nonzero")),
            Self::xy_plane(),
            Self::xy_frame(),
        )
        .expect("valid standard projection")
    }

    /// Central projection from `center` onto `z = 0`, coordinates `(x, y)`.
    pub fn central_xy(center: PointP3<S>) -> Result<Self, GeomError> {
        Self::new(ProjectionKind::Central(center), Self::xy_plane(), Self::xy_frame())
    }

    fn xy_plane() -> PlaneP3<S> {
        PlaneP3::new(S::zero(), S::zero(), S::one(), S::zero()).expect("nonzero")
    }

    fn xy_frame() -> [PointP3<S>; 3] {
        [
            PointP3::from_array(unit4(3)).expect("unit"),
            PointP3::from_array(unit4(0)).expect("unit"),
            PointP3::from_array(unit4(1)).expect("unit"),
        ]
    }

    pub fn kind(&self) -> &ProjectionKind<S> {
        &self.kind
    }

    pub fn center(&self) -> &PointP3<S> {
        match &self.kind {
            ProjectionKind::Central(c) | ProjectionKind::Orthogonal(c) => c,
        }
    }

    pub fn image_plane(&self) -> &PlaneP3<S> {
        &self.image_plane
    }

    /// The point of the image plane with 2D coordinates `p`.
    pub fn lift_to_plane(&self, p: &PointP2<S>) -> PointP3<S> {
        let [x, y, z] = p.coords();
        let [o, ex, ey] = &self.frame;
        PointP3::from_array(std::array::from_fn(|k| {
            z.clone() * o.coords[k].clone() + x.clone() * ex.coords[k].clone() + y.clone() * ey.coords[k].clone()
        }))
        .expect("frame points are independent")
    }

    /// The line of space points projecting onto `p`.
    pub fn projecting_ray(&self, p: &PointP2<S>) -> LineP3<S> {
        LineP3::new(self.center().clone(), self.lift_to_plane(p)).expect("center is off the image plane")
    }

    pub fn project_line(&self, l: &LineP3<S>) -> Result<LineP2<S>, GeomError> {
        let a = project(self, &l.p)?;
        let b = project(self, &l.q)?;
        p2::join(&a, &b).map_err(|_| GeomError::UndefinedProjection)
    }
}

pub fn project<S: Field>(pr: &Projection<S>, p: &PointP3<S>) -> Result<PointP2<S>, GeomError> {
    let c = pr.center();
    let a = pr.image_plane.eval(c);
    let b = -pr.image_plane.eval(p);
    let y = p.combine(&a, c, &b).map_err(|_| GeomError::UndefinedProjection)?;
    let rhs: [S; 3] = std::array::from_fn(|i| y.coords[pr.rows[i]].clone());
    let [z, x, yy] = mat_vec3(&pr.solve, &rhs);
    PointP2::new(x, yy, z).map_err(|_| GeomError::UndefinedProjection)
}

/// A polyhedral developable: flat faces joined along fold lines.
/// `faces[i]` and `faces[i + 1]` meet in `folds[i]`.
#[derive(Clone, Debug)]
pub struct FoldedSheet<S: Field> {
    folds: Vec<LineP3<S>>,
    faces: Vec<PlaneP3<S>>,
}

impl<S: Field> FoldedSheet<S> {
    pub fn new(folds: Vec<LineP3<S>>, faces: Vec<PlaneP3<S>>) -> Result<Self, GeomError> {
        if folds.is_empty() {
            return Err(GeomError::InvalidSheet("at least one fold is required"));
        }
        if faces.len() != folds.len() + 1 {
            return Err(GeomError::InvalidSheet("need exactly one more face than folds"));
        }
        for (i, fold) in folds.iter().enumerate() {
            if faces[i] == faces[i + 1] {
                return Err(GeomError::InvalidSheet("consecutive faces coincide"));
            }
            if !faces[i].contains_line(fold) || !faces[i + 1].contains_line(fold) {
                return Err(GeomError::InvalidSheet("fold does not lie on its adjacent faces"));
            }
        }
        Ok(Self { folds, faces })
    }

    /// Sheet whose folds are the meets of consecutive faces.
    pub fn from_faces(faces: Vec<PlaneP3<S>>) -> Result<Self, GeomError> {
        let folds = faces
            .windows(2)
            .map(|w| meet_planes(&w[0], &w[1]))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GeomError::InvalidSheet("consecutive faces coincide"))?;
        Self::new(folds, faces)
    }

    pub fn folds(&self) -> &[LineP3<S>] {
        &self.folds
    }

    pub fn faces(&self) -> &[PlaneP3<S>] {
        &self.faces
    }
}

/// One point per fold: where the cutting plane crosses it.
pub fn section_by_plane<S: Field>(s: &FoldedSheet<S>, pl: &PlaneP3<S>) -> Result<Vec<PointP3<S>>, GeomError> {
    s.folds
        .iter()
        .enumerate()
        .map(|(i, f)| meet_line_plane(f, pl).map_err(|_| GeomError::PlaneContainsFold(i)))
        .collect()
}

/// Builds, over the drawing plane `z = 0` with parallel projection along
/// `z`, a sheet whose four folds project onto `carriers` and whose section by
/// `z = 0` is exactly `points`. The fold through `points[0]` gets slope
/// `first_slope` in the `z` direction; the remaining slopes follow from
/// requiring consecutive folds to be coplanar.
pub fn sheet_over_section<S: Field>(
    carriers: &[LineP2<S>],
    points: &[PointP2<S>],
    first_slope: S,
) -> Result<FoldedSheet<S>, GeomError> {
    if carriers.len() != points.len() || carriers.len() < 2 {
        return Err(GeomError::InvalidSheet("carriers and points must pair up"));
    }
    let mut bases = Vec::with_capacity(points.len());
    let mut dirs = Vec::with_capacity(points.len());
    for (c, p) in carriers.iter().zip(points) {
        let (x, y) = p.to_affine().ok_or(GeomError::PointAtInfinity)?;
        let [u, v, _] = c.coeffs().clone();
        if u.is_zero() && v.is_zero() {
            return Err(GeomError::PointAtInfinity);
        }
        bases.push([x, y]);
        dirs.push([-v, u]);
    }
    let mut slopes = vec![first_slope];
    for i in 0..points.len() - 1 {
        // det[Δ; V_i; V_{i+1}] is affine in the next slope k.
        let delta = [
            bases[i + 1][0].clone() - bases[i][0].clone(),
            bases[i + 1][1].clone() - bases[i][1].clone(),
            S::zero(),
        ];
        let vi = [dirs[i][0].clone(), dirs[i][1].clone(), slopes[i].clone()];
        let det_at = |k: S| det3(&[delta.clone(), vi.clone(), [dirs[i + 1][0].clone(), dirs[i + 1][1].clone(), k]]);
        let d0 = det_at(S::zero());
        let d1 = det_at(S::one()) - d0.clone();
        if d1.is_zero() {
            return Err(GeomError::InvalidSheet("fold slope is unconstrained"));
        }
        slopes.push(-d0 / d1);
    }
    let folds: Vec<LineP3<S>> = (0..points.len())
        .map(|i| {
            let p = PointP3::affine(bases[i][0].clone(), bases[i][1].clone(), S::zero());
            let dir = PointP3::new(dirs[i][0].clone(), dirs[i][1].clone(), slopes[i].clone(), S::zero())?;
            LineP3::new(p, dir)
        })
        .collect::<Result<_, _>>()?;
    let mut faces = Vec::with_capacity(folds.len() + 1);
    faces.push(outer_face(&folds[0], None)?);
    for w in folds.windows(2) {
        faces.push(plane_of_lines(&w[0], &w[1])?);
    }
    let last = folds.last().expect("nonempty");
    faces.push(outer_face(last, faces.last())?);
    faces[0] = outer_face(&folds[0], Some(&faces[1]))?;
    FoldedSheet::new(folds, faces)
}

fn plane_of_lines<S: Field>(l: &LineP3<S>, m: &LineP3<S>) -> Result<PlaneP3<S>, GeomError> {
    plane_through(&l.p, &l.q, &m.p)
        .or_else(|_| plane_through(&l.p, &l.q, &m.q))
        .map_err(|_| GeomError::InvalidSheet("consecutive folds coincide"))
}

/// A plane through `fold` distinct from `avoid`.
fn outer_face<S: Field>(fold: &LineP3<S>, avoid: Option<&PlaneP3<S>>) -> Result<PlaneP3<S>, GeomError> {
    (0..4)
        .filter_map(|k| {
            let e = PointP3::from_array(unit4(k)).ok()?;
            plane_through(&fold.p, &fold.q, &e).ok()
        })
        .find(|pl| avoid != Some(pl))
        .ok_or(GeomError::InvalidSheet("no outer face"))
}

/// Spatial witness of a planar Desargues configuration: the first triangle
/// lies in the drawing plane, the second in a section plane of the
/// tetrahedron with apex `apex`, and everything is seen from `eye`.
#[derive(Clone, Debug)]
pub struct LiftWitness<S: Field> {
    pub base_plane: PlaneP3<S>,
    pub section_plane: PlaneP3<S>,
    pub apex: PointP3<S>,
    pub projection: Projection<S>,
    /// Lifts of `A, B, C, A', B', C'`.
    pub points: [PointP3<S>; 6],
}

impl<S: Field> LiftWitness<S> {
    /// Side lines `AB, BC, CA` of the base and `A'B', B'C', C'A'` of the
    /// section, in space.
    pub fn side_lines(&self) -> Result<[(LineP3<S>, LineP3<S>); 3], GeomError> {
        let p = &self.points;
        let side = |i: usize, j: usize| LineP3::new(p[i].clone(), p[j].clone());
        Ok([
            (side(0, 1)?, side(3, 4)?),
            (side(1, 2)?, side(4, 5)?),
            (side(2, 0)?, side(5, 3)?),
        ])
    }

    pub fn axis(&self) -> Result<LineP3<S>, GeomError> {
        meet_planes(&self.base_plane, &self.section_plane)
    }
}

const LIFT_HEIGHTS: [(i64, i64); 5] = [(1, 2), (2, 3), (1, 3), (3, 5), (2, 7)];

/// Lifts `ABC`, `A'B'C'` (perspective from `center`) to a tetrahedron cut by
/// a plane: `ABC` stays in the drawing plane `z = 0`, the apex sits above
/// `center`, each of `A', B', C'` is lifted onto the edge from the apex, and
/// the eye above `center` projects everything back onto the drawing.
pub fn lift_desargues<S: Field>(
    triangle: [&PointP2<S>; 3],
    section: [&PointP2<S>; 3],
    center: &PointP2<S>,
) -> Result<LiftWitness<S>, GeomError> {
    let tol = Tolerance::default();
    for t in [&triangle, &section] {
        if p2::collinear(t[0], t[1], t[2], &tol) {
            return Err(GeomError::DegenerateTriangle);
        }
    }
    if triangle.contains(&center) {
        return Err(GeomError::DegenerateTriangle);
    }
    for (v, w) in triangle.iter().zip(&section) {
        if !p2::collinear(v, w, center, &tol) {
            return Err(GeomError::HypothesisFails);
        }
    }
    if triangle.iter().zip(&section).all(|(v, w)| v == w) {
        return Err(GeomError::CoincidentPlanes);
    }

    let in_plane = |p: &PointP2<S>| {
        let [x, y, z] = p.coords().clone();
        PointP3::new(x, y, S::zero(), z).expect("nonzero")
    };
    let center3 = in_plane(center);
    let up = PointP3::new(S::zero(), S::zero(), S::one(), S::zero()).expect("nonzero");
    let base_plane = PlaneP3::new(S::zero(), S::zero(), S::one(), S::zero()).expect("nonzero");

    let mut last_err = GeomError::DegenerateTriangle;
    for (h_apex, h_eye) in LIFT_HEIGHTS {
        // Lift the apex and eye to heights proportional to w, so that a center
        // at infinity yields directions.
        let raise = |h: i64| center3.combine(&S::one(), &up, &S::from_i64(h));
        let (apex, eye) = match (raise(h_apex), raise(h_eye)) {
            (Ok(a), Ok(e)) => (a, e),
            _ => continue,
        };
        let attempt = || -> Result<LiftWitness<S>, GeomError> {
            let projection = Projection::central_xy(eye.clone())?;
            let base: Vec<PointP3<S>> = triangle.iter().map(|p| in_plane(p)).collect();
            let mut lifted = Vec::with_capacity(3);
            for (b, s) in base.iter().zip(&section) {
                let edge = LineP3::new(apex.clone(), b.clone())?;
                let ray = projection.projecting_ray(s);
                let p = if edge.same_line(&ray) {
                    b.clone()
                } else {
                    meet_lines(&edge, &ray)?
                };
                lifted.push(p);
            }
            let section_plane = plane_through(&lifted[0], &lifted[1], &lifted[2])?;
            if section_plane == base_plane {
                return Err(GeomError::CoincidentPlanes);
            }
            let points = [
                base[0].clone(),
                base[1].clone(),
                base[2].clone(),
                lifted[0].clone(),
                lifted[1].clone(),
                lifted[2].clone(),
            ];
            let w = LiftWitness {
                base_plane: base_plane.clone(),
                section_plane,
                apex: apex.clone(),
                projection,
                points,
            };
            for (p, expected) in w.points.iter().zip(triangle.iter().chain(section.iter())) {
                if &project(&w.projection, p)? != *expected && S::EXACT {
                    return Err(GeomError::UndefinedProjection);
                }
            }
            Ok(w)
        };
        match attempt() {
            Ok(w) => return Ok(w),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

use crate::error::GeomError;
use crate::kernel::{Field, Tolerance};
use crate::p2::{collinear, incident, join, meet, LineP2, PointP2};
use crate::p3::{meet_line_plane, meet_lines, plane_through, project, sheet_over_section, FoldedSheet, Projection};

/// Four points `A..D`, one on each of four carrier lines (the drawn folds of
/// a sheet).
#[derive(Clone, Debug, PartialEq)]
pub struct SectionQuadruplet<S: Field> {
    pub points: [PointP2<S>; 4],
    pub carriers: [LineP2<S>; 4],
    /// Whether some folded sheet over the carriers, seen in parallel
    /// projection, has a plane section drawn as these points.
    pub admissible: bool,
}

impl<S: Field> SectionQuadruplet<S> {
    pub fn new(points: [PointP2<S>; 4], carriers: [LineP2<S>; 4]) -> Result<Self, GeomError> {
        let tol = Tolerance::default();
        for (i, (p, c)) in points.iter().zip(&carriers).enumerate() {
            if !incident(p, c, &tol) {
                return Err(GeomError::CarrierIncidenceViolated(i));
            }
        }
        let admissible = sheet_over_section(&carriers, &points, S::one()).is_ok();
        Ok(Self {
            points,
            carriers,
            admissible,
        })
    }
}

/// `D′` on the fourth carrier such that `A′B′C′D′` is drawn from a second
/// plane section of the same sheet as `first`.
pub fn complete_section<S: Field>(
    first: &SectionQuadruplet<S>,
    a2: &PointP2<S>,
    b2: &PointP2<S>,
    c2: &PointP2<S>,
) -> Result<PointP2<S>, GeomError> {
    if !first.admissible {
        return Err(GeomError::InadmissibleSection);
    }
    let tol = Tolerance::default();
    let second = [a2, b2, c2];
    for (i, p) in second.iter().enumerate() {
        if !incident(p, &first.carriers[i], &tol) {
            return Err(GeomError::CarrierIncidenceViolated(i));
        }
        if p.approx_eq(&first.points[i], &tol) {
            return Err(GeomError::DegenerateAxis);
        }
    }
    let [a, b, c, d] = &first.points;
    let degenerate = |_| GeomError::DegenerateAxis;
    let m1 = meet(&join(a, b).map_err(degenerate)?, &join(a2, b2).map_err(degenerate)?).map_err(degenerate)?;
    let m2 = meet(&join(b, c).map_err(degenerate)?, &join(b2, c2).map_err(degenerate)?).map_err(degenerate)?;
    let axis = join(&m1, &m2).map_err(degenerate)?;
    let m3 = meet(&join(c, d).map_err(degenerate)?, &axis).map_err(degenerate)?;
    let side = join(c2, &m3).map_err(degenerate)?;
    meet(&first.carriers[3], &side).map_err(degenerate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectionAlignment {
    /// The meets of `AB, A′B′`, `BC, B′C′` and `CD, C′D′` are collinear.
    pub aligned: bool,
    /// Some pair of corresponding sides coincides, leaving its meet
    /// undetermined; `aligned` then only constrains the remaining meets.
    pub degenerate: bool,
}

pub fn check_section_alignment<S: Field>(
    q1: &SectionQuadruplet<S>,
    q2: &SectionQuadruplet<S>,
) -> Result<SectionAlignment, GeomError> {
    let tol = Tolerance::default();
    for (i, p) in q2.points.iter().enumerate() {
        if !incident(p, &q1.carriers[i], &tol) {
            return Err(GeomError::CarrierIncidenceViolated(i));
        }
    }
    let mut meets = Vec::with_capacity(3);
    let mut degenerate = false;
    for i in 0..3 {
        let s1 = join(&q1.points[i], &q1.points[i + 1]);
        let s2 = join(&q2.points[i], &q2.points[i + 1]);
        match (s1, s2) {
            (Ok(l), Ok(m)) if !l.approx_eq(&m, &tol) => meets.push(meet(&l, &m).expect("distinct lines")),
            _ => degenerate = true,
        }
    }
    let aligned = match meets.as_slice() {
        [x, y, z] => collinear(x, y, z, &tol),
        _ => true,
    };
    Ok(SectionAlignment { aligned, degenerate })
}

/// Lifts `A, B, C` along their projecting rays onto the first three folds,
/// and tests whether the plane through the lifts cuts the fourth fold in a
/// point drawn as `D`.
pub fn verify_section_against_lift<S: Field>(
    sheet: &FoldedSheet<S>,
    projection: &Projection<S>,
    q: &SectionQuadruplet<S>,
) -> Result<bool, GeomError> {
    let folds = sheet.folds();
    if folds.len() != 4 {
        return Err(GeomError::InvalidSheet("exactly four folds are required"));
    }
    let lifts = (0..3)
        .map(|i| {
            let ray = projection.projecting_ray(&q.points[i]);
            meet_lines(&ray, &folds[i]).map_err(|_| GeomError::RayMissesFold(i))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let plane = plane_through(&lifts[0], &lifts[1], &lifts[2])?;
    let fourth = meet_line_plane(&folds[3], &plane).map_err(|_| GeomError::PlaneContainsFold(3))?;
    let drawn = project(projection, &fourth)?;
    Ok(drawn.approx_eq(&q.points[3], &Tolerance::default()))
}

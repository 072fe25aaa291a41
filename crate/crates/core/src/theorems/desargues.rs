use crate::conics::{line_conic_meet, Conic, MeetResult};
use crate::error::GeomError;
use crate::kernel::{Field, Tolerance};
use crate::p2::{
    apply_involution, collinear, concurrent, incident, involution_from_pairs, join, meet, LineP2,
    PointP2,
};

/// Outcome of checking one pair of triangles.
///
/// For the direct theorem the hypothesis is concurrency of `AA′, BB′, CC′`
/// and the conclusion collinearity of the side meets; the converse swaps
/// the two.
#[derive(Clone, Debug, PartialEq)]
pub struct DesarguesVerdict<S: Field> {
    pub hypothesis_holds: bool,
    /// Common point of `AA′, BB′, CC′`, when they are concurrent.
    pub perspective_center: Option<PointP2<S>>,
    /// `AB ∧ A′B′`, `BC ∧ B′C′`, `CA ∧ C′A′`.
    pub side_meets: [PointP2<S>; 3],
    /// Line carrying the side meets, when they are collinear.
    pub axis: Option<LineP2<S>>,
    pub conclusion_holds: bool,
}

struct Analysis<S: Field> {
    center: Option<PointP2<S>>,
    meets: [PointP2<S>; 3],
    axis: Option<LineP2<S>>,
}

fn analyse<S: Field>(t: [&PointP2<S>; 3], u: [&PointP2<S>; 3]) -> Result<Analysis<S>, GeomError> {
    let tol = Tolerance::default();
    if collinear(t[0], t[1], t[2], &tol) || collinear(u[0], u[1], u[2], &tol) {
        return Err(GeomError::DegenerateTriangle);
    }
    let side = |p: &[&PointP2<S>; 3], i: usize| join(p[i], p[(i + 1) % 3]).expect("triangle is nondegenerate");
    let mut meets = Vec::with_capacity(3);
    for i in 0..3 {
        let (s, s2) = (side(&t, i), side(&u, i));
        if s.approx_eq(&s2, &tol) {
            return Err(GeomError::CoincidentSides);
        }
        meets.push(meet(&s, &s2).expect("distinct sides"));
    }
    let meets: [PointP2<S>; 3] = meets.try_into().expect("three meets");

    // A vertex shared by both triangles puts no constraint on the center.
    let rays: Vec<LineP2<S>> = (0..3).filter_map(|i| join(t[i], u[i]).ok()).collect();
    let center = match rays.as_slice() {
        [a, b, c] => concurrent(a, b, c, &tol).then(|| meet(a, b).expect("rays are distinct")),
        [a, b] => Some(meet(a, b).expect("rays are distinct")),
        _ => unreachable!("two shared vertices make a pair of sides coincide"),
    };

    let axis = if collinear(&meets[0], &meets[1], &meets[2], &tol) {
        let (line, _) = super::fit_line(&meets, &tol);
        line
    } else {
        None
    };
    Ok(Analysis { center, meets, axis })
}

/// If `AA′, BB′, CC′` are concurrent, the meets of corresponding sides are
/// collinear.
pub fn check_desargues<S: Field>(
    a: &PointP2<S>,
    b: &PointP2<S>,
    c: &PointP2<S>,
    a2: &PointP2<S>,
    b2: &PointP2<S>,
    c2: &PointP2<S>,
) -> Result<DesarguesVerdict<S>, GeomError> {
    let an = analyse([a, b, c], [a2, b2, c2])?;
    let conclusion = collinear(&an.meets[0], &an.meets[1], &an.meets[2], &Tolerance::default());
    Ok(DesarguesVerdict {
        hypothesis_holds: an.center.is_some(),
        perspective_center: an.center,
        side_meets: an.meets,
        axis: an.axis,
        conclusion_holds: conclusion,
    })
}

/// If the meets of corresponding sides are collinear, `AA′, BB′, CC′` are
/// concurrent.
pub fn check_desargues_converse<S: Field>(
    a: &PointP2<S>,
    b: &PointP2<S>,
    c: &PointP2<S>,
    a2: &PointP2<S>,
    b2: &PointP2<S>,
    c2: &PointP2<S>,
) -> Result<DesarguesVerdict<S>, GeomError> {
    let an = analyse([a, b, c], [a2, b2, c2])?;
    Ok(DesarguesVerdict {
        hypothesis_holds: an.axis.is_some(),
        conclusion_holds: an.center.is_some(),
        perspective_center: an.center,
        side_meets: an.meets,
        axis: an.axis,
    })
}

/// The three line pairs through four base points cut `l` in three pairs of
/// an involution: builds it from two pairs and tests the third.
pub fn check_desargues_involution<S: Field>(base: [&PointP2<S>; 4], l: &LineP2<S>) -> Result<bool, GeomError> {
    let tol = Tolerance::default();
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                if collinear(base[i], base[j], base[k], &tol) {
                    return Err(GeomError::DegenerateBase);
                }
            }
        }
        if incident(base[i], l, &tol) {
            return Err(GeomError::LineThroughBasePoint);
        }
    }
    let j = |x: usize, y: usize| join(base[x], base[y]).expect("base points are distinct");
    let members = [
        Conic::line_pair(&j(0, 1), &j(2, 3))?,
        Conic::line_pair(&j(0, 2), &j(1, 3))?,
        Conic::line_pair(&j(0, 3), &j(1, 2))?,
    ];
    let pairs: Vec<(PointP2<S>, PointP2<S>)> = members
        .iter()
        .map(|m| match line_conic_meet(m, l) {
            MeetResult::Two([p, q]) => Ok((p, q)),
            MeetResult::Tangent(p) => Ok((p.clone(), p)),
            _ => Err(GeomError::LineThroughBasePoint),
        })
        .collect::<Result<_, _>>()?;

    // Any two pairs determine the involution unless both are the same
    // fixed point; try the other orderings in that case.
    for (x, y, z) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let Ok(inv) = involution_from_pairs((&pairs[x].0, &pairs[x].1), (&pairs[y].0, &pairs[y].1)) else {
            continue;
        };
        let image = apply_involution(&inv, &pairs[z].0)?;
        return Ok(image.approx_eq(&pairs[z].1, &tol));
    }
    Err(GeomError::DegeneratePairs)
}

//! The Moulton plane: the affine plane in which lines of negative slope are
//! refracted at the `y`-axis, their slope doubling for `x ≥ 0`. Incidence
//! axioms hold but Desargues' theorem does not.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kernel::linalg::det3_rows;
use crate::kernel::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoultonError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines coincide")]
    CoincidentLines,
    #[error("no Desargues failure found within {0} trials")]
    BudgetExhausted(u64),
    #[error("search box is empty")]
    InvalidBox,
    #[error("degenerate triangle")]
    DegenerateTriangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoultonPoint {
    pub x: Rational,
    pub y: Rational,
}

impl MoultonPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for MoultonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoultonLine {
    /// `x = c`
    Vertical(Rational),
    /// `y = m·x + b`, except that for `m < 0` the part with `x ≥ 0` is
    /// `y = 2m·x + b`.
    Bent { m: Rational, b: Rational },
}

/// A straight piece `y = m·x + b` restricted to a half-plane.
struct Piece {
    m: Rational,
    b: Rational,
    /// `Some(false)`: `x ≤ 0`; `Some(true)`: `x ≥ 0`; `None`: everywhere.
    right: Option<bool>,
}

impl Piece {
    fn admits(&self, x: &Rational) -> bool {
        match self.right {
            None => true,
            Some(false) => !x.is_positive(),
            Some(true) => !x.is_negative(),
        }
    }
}

impl MoultonLine {
    pub fn contains(&self, p: &MoultonPoint) -> bool {
        match self {
            MoultonLine::Vertical(c) => &p.x == c,
            MoultonLine::Bent { m, b } => p.y == self.slope_at(m, &p.x) * p.x.clone() + b.clone(),
        }
    }

    fn slope_at(&self, m: &Rational, x: &Rational) -> Rational {
        if m.is_negative() && !x.is_negative() {
            m.clone() * Rational::from(2)
        } else {
            m.clone()
        }
    }

    /// Negative slope: the line changes direction at the `y`-axis.
    pub fn is_bent(&self) -> bool {
        matches!(self, MoultonLine::Bent { m, .. } if m.is_negative())
    }

    fn pieces(&self) -> Vec<Piece> {
        match self {
            MoultonLine::Vertical(_) => Vec::new(),
            MoultonLine::Bent { m, b } if m.is_negative() => vec![
                Piece {
                    m: m.clone(),
                    b: b.clone(),
                    right: Some(false),
                },
                Piece {
                    m: m.clone() * Rational::from(2),
                    b: b.clone(),
                    right: Some(true),
                },
            ],
            MoultonLine::Bent { m, b } => vec![Piece {
                m: m.clone(),
                b: b.clone(),
                right: None,
            }],
        }
    }

    /// `y` at abscissa `x`, for non-vertical lines.
    pub fn y_at(&self, x: &Rational) -> Option<Rational> {
        match self {
            MoultonLine::Vertical(_) => None,
            MoultonLine::Bent { m, b } => Some(self.slope_at(m, x) * x.clone() + b.clone()),
        }
    }
}

impl fmt::Display for MoultonLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoultonLine::Vertical(c) => write!(f, "x = {c}"),
            MoultonLine::Bent { m, b } => write!(f, "y = {m}·x + {b}"),
        }
    }
}

pub fn m_line_through(p: &MoultonPoint, q: &MoultonPoint) -> Result<MoultonLine, MoultonError> {
    if p == q {
        return Err(MoultonError::CoincidentPoints);
    }
    if p.x == q.x {
        return Ok(MoultonLine::Vertical(p.x.clone()));
    }
    let (p, q) = if p.x < q.x { (p, q) } else { (q, p) };
    let s = (q.y.clone() - p.y.clone()) / (q.x.clone() - p.x.clone());
    let (m, b) = if !s.is_negative() || !q.x.is_positive() {
        (s.clone(), p.y.clone() - s * p.x.clone())
    } else if !p.x.is_negative() {
        (s.clone() / Rational::from(2), p.y.clone() - s * p.x.clone())
    } else {
        // p.x < 0 < q.x: m·px + b = py and 2m·qx + b = qy.
        let m = (q.y.clone() - p.y.clone()) / (Rational::from(2) * q.x.clone() - p.x.clone());
        let b = p.y.clone() - m.clone() * p.x.clone();
        (m, b)
    };
    Ok(MoultonLine::Bent { m, b })
}

/// Common point of two distinct lines, `None` when they are parallel.
pub fn m_meet(l1: &MoultonLine, l2: &MoultonLine) -> Result<Option<MoultonPoint>, MoultonError> {
    if l1 == l2 {
        return Err(MoultonError::CoincidentLines);
    }
    let on_vertical = |c: &Rational, other: &MoultonLine| other.y_at(c).map(|y| MoultonPoint::new(c.clone(), y));
    Ok(match (l1, l2) {
        (MoultonLine::Vertical(c), other) | (other, MoultonLine::Vertical(c)) => on_vertical(c, other),
        _ => {
            let mut found: Option<MoultonPoint> = None;
            for p in l1.pieces() {
                for q in l2.pieces() {
                    if p.m == q.m {
                        continue;
                    }
                    let x = (q.b.clone() - p.b.clone()) / (p.m.clone() - q.m.clone());
                    if p.admits(&x) && q.admits(&x) {
                        let y = p.m.clone() * x.clone() + p.b.clone();
                        found = Some(MoultonPoint::new(x, y));
                    }
                }
            }
            found
        }
    })
}

/// Result of testing Desargues on six points of the Moulton plane.
#[derive(Clone, Debug, PartialEq)]
pub struct MoultonVerdict {
    pub perspective_center: Option<MoultonPoint>,
    /// `None` when some pair of corresponding sides is parallel.
    pub side_meets: Option<[MoultonPoint; 3]>,
    /// The side meets lie on one Moulton line.
    pub conclusion_holds: bool,
}

impl MoultonVerdict {
    pub fn hypothesis_holds(&self) -> bool {
        self.perspective_center.is_some()
    }

    /// Perspective from a point but not from a line.
    pub fn is_failure(&self) -> bool {
        self.hypothesis_holds() && self.side_meets.is_some() && !self.conclusion_holds
    }
}

pub fn m_collinear(a: &MoultonPoint, b: &MoultonPoint, c: &MoultonPoint) -> bool {
    match m_line_through(a, b) {
        Ok(l) => l.contains(c),
        Err(_) => true,
    }
}

pub fn check_moulton_desargues(pts: [&MoultonPoint; 6]) -> Result<MoultonVerdict, MoultonError> {
    let [a, b, c, a2, b2, c2] = pts;
    if m_collinear(a, b, c) || m_collinear(a2, b2, c2) {
        return Err(MoultonError::DegenerateTriangle);
    }
    let rays = [m_line_through(a, a2), m_line_through(b, b2), m_line_through(c, c2)];
    let center = match &rays {
        [Ok(r1), Ok(r2), Ok(r3)] if r1 != r2 => m_meet(r1, r2)?.filter(|o| r3.contains(o)),
        _ => None,
    };
    let t = [a, b, c];
    let u = [a2, b2, c2];
    let mut meets = Vec::with_capacity(3);
    for i in 0..3 {
        let s1 = m_line_through(t[i], t[(i + 1) % 3])?;
        let s2 = m_line_through(u[i], u[(i + 1) % 3])?;
        if s1 == s2 {
            return Err(MoultonError::CoincidentLines);
        }
        meets.push(m_meet(&s1, &s2)?);
    }
    let side_meets: Option<Vec<MoultonPoint>> = meets.into_iter().collect();
    let side_meets: Option<[MoultonPoint; 3]> = side_meets.map(|v| v.try_into().expect("three meets"));
    let conclusion_holds = side_meets
        .as_ref()
        .is_some_and(|[x, y, z]| m_collinear(x, y, z));
    Ok(MoultonVerdict {
        perspective_center: center,
        side_meets,
        conclusion_holds,
    })
}

/// A pair of triangles perspective from `center` in the Moulton plane whose
/// side meets are not on a common Moulton line.
#[derive(Clone, Debug, PartialEq)]
pub struct FailureWitness {
    /// `A, B, C, A′, B′, C′`.
    pub points: [MoultonPoint; 6],
    pub center: MoultonPoint,
    pub side_meets: [MoultonPoint; 3],
    /// `|det|` of the side meets in homogeneous coordinates, for display.
    pub collinearity_defect: Rational,
}

pub const WITNESS_NAMES: [&str; 6] = ["A", "B", "C", "A'", "B'", "C'"];

impl FailureWitness {
    /// Recomputes everything from the six points.
    pub fn verify(&self) -> bool {
        let p = &self.points;
        match check_moulton_desargues([&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]]) {
            Ok(v) => {
                v.is_failure()
                    && v.perspective_center.as_ref() == Some(&self.center)
                    && v.side_meets.as_ref() == Some(&self.side_meets)
                    && euclidean_defect(&self.side_meets) == self.collinearity_defect
                    && self.collinearity_defect.is_positive()
            }
            Err(_) => false,
        }
    }

    /// The side lines of both triangles, `AB, BC, CA, A′B′, B′C′, C′A′`.
    pub fn side_lines(&self) -> Vec<MoultonLine> {
        let p = &self.points;
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
            .iter()
            .map(|&(i, j)| m_line_through(&p[i], &p[j]).expect("vertices are distinct"))
            .collect()
    }

    /// Scene text declaring the witness and checking it.
    pub fn to_scene(&self) -> String {
        let mut s = String::from("# Desargues configuration that fails in the Moulton plane\n");
        for (name, p) in WITNESS_NAMES.iter().zip(&self.points) {
            s.push_str(&format!("point {name} = ({}, {})\n", p.x, p.y));
        }
        s.push_str("moulton check A B C A' B' C' expect=failure\n");
        s
    }
}

fn euclidean_defect(m: &[MoultonPoint; 3]) -> Rational {
    let h = |p: &MoultonPoint| [p.x.clone(), p.y.clone(), Rational::one()];
    det3_rows(&h(&m[0]), &h(&m[1]), &h(&m[2])).abs()
}

/// Rectangle `[xmin, xmax] × [ymin, ymax]` for the search grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchBox {
    pub xmin: Rational,
    pub ymin: Rational,
    pub xmax: Rational,
    pub ymax: Rational,
}

impl Default for SearchBox {
    fn default() -> Self {
        Self {
            xmin: Rational::from(-4),
            ymin: Rational::from(-4),
            xmax: Rational::from(4),
            ymax: Rational::from(4),
        }
    }
}

const GRID_STEPS: i64 = 16;
const SEARCH_SEED: u64 = 0x004d_6f75_6c74_6f6e;
const RATIOS: [(i64, i64); 6] = [(2, 1), (3, 1), (1, 2), (3, 2), (-1, 1), (-1, 2)];

/// Deterministic search of a rational grid for a configuration perspective
/// from a point whose side meets are not Moulton-collinear. The rays from
/// the center are chosen so that they are also Euclidean lines, which lets
/// the same six points be compared against ordinary Desargues.
pub fn find_desargues_failure(search: &SearchBox, budget: u64) -> Result<FailureWitness, MoultonError> {
    if search.xmin >= search.xmax || search.ymin >= search.ymax {
        return Err(MoultonError::InvalidBox);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    let steps = Rational::from(GRID_STEPS);
    let dx = (search.xmax.clone() - search.xmin.clone()) / steps.clone();
    let dy = (search.ymax.clone() - search.ymin.clone()) / steps;
    let grid_point = |rng: &mut ChaCha8Rng| {
        let i = Rational::from(rng.gen_range(0..=GRID_STEPS));
        let j = Rational::from(rng.gen_range(0..=GRID_STEPS));
        MoultonPoint::new(search.xmin.clone() + i * dx.clone(), search.ymin.clone() + j * dy.clone())
    };
    for _ in 0..budget {
        let o = grid_point(&mut rng);
        let tri = [grid_point(&mut rng), grid_point(&mut rng), grid_point(&mut rng)];
        let ratios: Vec<Rational> = (0..3)
            .map(|_| {
                let (n, d) = RATIOS[rng.gen_range(0..RATIOS.len())];
                Rational::normalize(n, d).expect("nonzero denominator")
            })
            .collect();
        if let Some(w) = try_configuration(&o, &tri, &ratios) {
            return Ok(w);
        }
    }
    Err(MoultonError::BudgetExhausted(budget))
}

fn try_configuration(o: &MoultonPoint, tri: &[MoultonPoint; 3], ratios: &[Rational]) -> Option<FailureWitness> {
    let mut images = Vec::with_capacity(3);
    for (p, t) in tri.iter().zip(ratios) {
        if p == o {
            return None;
        }
        let img = MoultonPoint::new(
            o.x.clone() + t.clone() * (p.x.clone() - o.x.clone()),
            o.y.clone() + t.clone() * (p.y.clone() - o.y.clone()),
        );
        // The Euclidean ray must also be a Moulton line.
        if !m_line_through(o, p).ok()?.contains(&img) {
            return None;
        }
        images.push(img);
    }
    let points: [MoultonPoint; 6] = [
        tri[0].clone(),
        tri[1].clone(),
        tri[2].clone(),
        images[0].clone(),
        images[1].clone(),
        images[2].clone(),
    ];
    let p = &points;
    let v = check_moulton_desargues([&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]]).ok()?;
    if !v.is_failure() || v.perspective_center.as_ref() != Some(o) {
        return None;
    }
    let side_meets = v.side_meets?;
    let defect = euclidean_defect(&side_meets);
    if !defect.is_positive() {
        return None;
    }
    Some(FailureWitness {
        points,
        center: o.clone(),
        side_meets,
        collinearity_defect: defect,
    })
}

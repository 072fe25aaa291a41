use std::fmt;
use std::str::FromStr;

use crate::conics::{line_conic_meet, tangent_at, Conic, MeetResult};
use crate::error::GeomError;
use crate::kernel::{Field, Tolerance};
use crate::p2::{incident, meet, LineP2, PointP2};

/// Which meet of each conic to take along a secant, ordered by distance from
/// the apex. For an apex at infinity "near" is the meet further along its
/// direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pairing {
    NearNear,
    FarFar,
    NearFar,
    FarNear,
}

impl Pairing {
    pub const ALL: [Pairing; 4] = [Pairing::NearNear, Pairing::FarFar, Pairing::NearFar, Pairing::FarNear];
    /// Both pairings whose meets share a line with `NearNear`.
    pub const SAME: [Pairing; 2] = [Pairing::NearNear, Pairing::FarFar];
    pub const CROSSED: [Pairing; 2] = [Pairing::NearFar, Pairing::FarNear];

    fn picks(self) -> (usize, usize) {
        match self {
            Pairing::NearNear => (0, 0),
            Pairing::FarFar => (1, 1),
            Pairing::NearFar => (0, 1),
            Pairing::FarNear => (1, 0),
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pairing::NearNear => "near-near",
            Pairing::FarFar => "far-far",
            Pairing::NearFar => "near-far",
            Pairing::FarNear => "far-near",
        })
    }
}

impl FromStr for Pairing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pairing::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| format!("unknown pairing `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlignmentReport<S: Field> {
    pub secant_count: usize,
    /// Tangent meets in secant order; with several pairings, each secant
    /// contributes one meet per pairing.
    pub meets: Vec<PointP2<S>>,
    pub fitted_line: Option<LineP2<S>>,
    pub all_collinear: bool,
    /// Largest normalized residual `|l·p| / (|l|·|p|)`, approximate backend only.
    pub max_residual: Option<f64>,
}

/// Ordering key along the secant: smaller is nearer to the apex.
fn distance_key<S: Field>(apex: &PointP2<S>, p: &PointP2<S>) -> Option<S> {
    let (x, y) = p.to_affine()?;
    Some(match apex.to_affine() {
        Some((ax, ay)) => {
            let (dx, dy) = (x - ax, y - ay);
            dx.clone() * dx + dy.clone() * dy
        }
        None => {
            let [dx, dy, _] = apex.coords().clone();
            -(x * dx + y * dy)
        }
    })
}

fn near_far<S: Field>(apex: &PointP2<S>, c: &Conic<S>, secant: &LineP2<S>, idx: usize) -> Result<[PointP2<S>; 2], GeomError> {
    let MeetResult::Two([p, q]) = line_conic_meet(c, secant) else {
        return Err(GeomError::SecantMissesConic(idx));
    };
    let tol = Tolerance::default();
    if p.approx_eq(&q, &tol) {
        return Err(GeomError::SecantMissesConic(idx));
    }
    let p_first = match (distance_key(apex, &p), distance_key(apex, &q)) {
        (Some(a), Some(b)) => a <= b,
        (Some(_), None) => true,
        (None, _) => false,
    };
    Ok(if p_first { [p, q] } else { [q, p] })
}

pub fn check_example1<S: Field>(
    c1: &Conic<S>,
    c2: &Conic<S>,
    apex: &PointP2<S>,
    secants: &[LineP2<S>],
    pairing: Pairing,
) -> Result<AlignmentReport<S>, GeomError> {
    check_example1_with(c1, c2, apex, secants, &[pairing], &Tolerance::default())
}

/// Along each secant through `apex`, meets the tangents at the selected
/// points of `c1` and `c2` (one meet per pairing), then fits a line through
/// the first two distinct meets and tests the rest against it.
pub fn check_example1_with<S: Field>(
    c1: &Conic<S>,
    c2: &Conic<S>,
    apex: &PointP2<S>,
    secants: &[LineP2<S>],
    pairings: &[Pairing],
    tol: &Tolerance,
) -> Result<AlignmentReport<S>, GeomError> {
    let mut meets = Vec::with_capacity(secants.len() * pairings.len());
    for (i, s) in secants.iter().enumerate() {
        if !incident(apex, s, tol) {
            return Err(GeomError::SecantNotThroughApex(i));
        }
        let on1 = near_far(apex, c1, s, i)?;
        let on2 = near_far(apex, c2, s, i)?;
        for pairing in pairings {
            let (k1, k2) = pairing.picks();
            let t1 = tangent_at(c1, &on1[k1])?;
            let t2 = tangent_at(c2, &on2[k2])?;
            meets.push(meet(&t1, &t2)?);
        }
    }
    let (fitted_line, exact_ok) = super::fit_line(&meets, tol);
    let (max_residual, all_collinear) = if S::EXACT {
        (None, exact_ok)
    } else {
        let r = fitted_line
            .as_ref()
            .map(|l| meets.iter().map(|p| residual(l, p)).fold(0.0, f64::max))
            .unwrap_or(0.0);
        (Some(r), r <= tol.threshold(1.0))
    };
    Ok(AlignmentReport {
        secant_count: secants.len(),
        meets,
        fitted_line,
        all_collinear,
        max_residual,
    })
}

fn residual<S: Field>(l: &LineP2<S>, p: &PointP2<S>) -> f64 {
    let norm = |v: &[S; 3]| v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
    l.eval(p).to_f64().abs() / (norm(l.coeffs()) * norm(p.coords()))
}

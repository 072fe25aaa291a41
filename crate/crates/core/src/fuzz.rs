//! Seeded random property suites. Case `i` of seed `s` draws from its own
//! ChaCha stream, so it is the same whatever the case count.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conics::{circle_point, conic_from_circle, line_conic_meet, same_side_tangent_apex, second_intersection};
use crate::conics::{CirclePair, Conic, MeetResult};
use crate::error::GeomError;
use crate::kernel::{q, Field, Rational, Tolerance};
use crate::moulton::{m_line_through, m_meet, MoultonError, MoultonLine, MoultonPoint};
use crate::p2::{collinear, incident, join, meet, LineP2, PointP2};
use crate::p3::{lift_desargues, project, section_by_plane, FoldedSheet, PlaneP3, Projection};
use crate::theorems::{
    check_desargues, check_desargues_converse, check_desargues_involution, check_example1_with,
    check_section_alignment, complete_section, verify_section_against_lift, Pairing, SectionQuadruplet,
};

type R = Rational;
type P = PointP2<R>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Desargues,
    Converse,
    Involution,
    Example1Circles,
    /// General conic pairs on the approximate backend.
    Example1Conics,
    Example2Lift,
    /// Spatial lift of planar Desargues configurations.
    Lift,
    MoultonAxioms,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Desargues,
        Property::Converse,
        Property::Involution,
        Property::Example1Circles,
        Property::Example1Conics,
        Property::Example2Lift,
        Property::Lift,
        Property::MoultonAxioms,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Desargues => "desargues",
            Property::Converse => "converse",
            Property::Involution => "involution",
            Property::Example1Circles => "example1-circles",
            Property::Example1Conics => "example1-conics",
            Property::Example2Lift => "example2-lift",
            Property::Lift => "lift",
            Property::MoultonAxioms => "moulton-axioms",
        }
    }

    /// What `FuzzReport::tally` counts.
    fn tally_label(&self) -> Option<&'static str> {
        Some(match self {
            Property::Desargues => "with a side meet at infinity",
            Property::Converse => "with the center at infinity",
            Property::Involution => "with the line through a diagonal point",
            Property::Example1Circles => "with equal radii",
            Property::Example1Conics => "with secants crossing both conics",
            Property::Example2Lift => return None,
            Property::Lift => "with the axis at infinity",
            Property::MoultonAxioms => "with a bent line",
        })
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
                format!("unknown property '{s}' (expected one of: {})", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseFailure {
    pub index: u64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzReport {
    pub property: Property,
    pub seed: u64,
    pub count: u64,
    pub failures: Vec<CaseFailure>,
    /// Cases exhibiting the special feature the suite makes sure to cover.
    pub tally: u64,
    /// Largest normalized residual, approximate suites only.
    pub max_residual: Option<f64>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} seed={}: {}/{} cases passed",
            self.property,
            self.seed,
            self.count - self.failures.len() as u64,
            self.count,
        )?;
        if let Some(label) = self.property.tally_label() {
            write!(f, ", {} {label}", self.tally)?;
        }
        if let Some(r) = self.max_residual {
            write!(f, ", max residual {r:.3e}")?;
        }
        Ok(())
    }
}

/// The random stream for one case.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Outcome of one case: whether it showed the tallied feature, plus a
/// residual for approximate suites.
struct CaseResult {
    notable: bool,
    residual: Option<f64>,
}

impl CaseResult {
    fn exact(notable: bool) -> Self {
        Self { notable, residual: None }
    }
}

pub fn run(property: Property, seed: u64, count: u64) -> FuzzReport {
    let mut report = FuzzReport {
        property,
        seed,
        count,
        failures: Vec::new(),
        tally: 0,
        max_residual: None,
    };
    for index in 0..count {
        let mut rng = case_rng(seed, index);
        let outcome = match property {
            Property::Desargues => desargues_case(&mut rng, index),
            Property::Converse => converse_case(&mut rng, index),
            Property::Involution => involution_check(&mut rng, index),
            Property::Example1Circles => circles_check(&mut rng, index),
            Property::Example1Conics => conics_check(&mut rng),
            Property::Example2Lift => sheet_check(&mut rng),
            Property::Lift => lift_check(&mut rng, index),
            Property::MoultonAxioms => moulton_check(&mut rng, index),
        };
        match outcome {
            Ok(r) => {
                report.tally += r.notable as u64;
                if let Some(x) = r.residual {
                    report.max_residual = Some(report.max_residual.map_or(x, |m: f64| m.max(x)));
                }
            }
            Err(message) => report.failures.push(CaseFailure { index, message }),
        }
    }
    report
}

fn geom(e: GeomError) -> String {
    e.to_string()
}

// ----- generators -----

/// A rational with small numerator and denominator.
pub fn small_rational(rng: &mut impl Rng) -> R {
    q(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn nonzero_rational(rng: &mut impl Rng) -> R {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn positive_rational(rng: &mut impl Rng) -> R {
    q(rng.gen_range(1..=12), rng.gen_range(1..=4))
}

pub fn random_point(rng: &mut impl Rng) -> P {
    PointP2::affine(small_rational(rng), small_rational(rng))
}

fn random_line(rng: &mut impl Rng) -> LineP2<R> {
    loop {
        if let Ok(l) = join(&random_point(rng), &random_point(rng)) {
            return l;
        }
    }
}

fn exact() -> Tolerance {
    Tolerance::default()
}

fn is_collinear(a: &P, b: &P, c: &P) -> bool {
    collinear(a, b, c, &exact())
}

fn affine(p: &P) -> (R, R) {
    p.to_affine().expect("finite point")
}

/// `A, B, C, A', B', C'` in perspective from `center`.
#[derive(Clone, Debug)]
pub struct PerspectiveCase {
    pub points: [P; 6],
    pub center: P,
}

/// Perspective triangles with a random center and random ratios along the
/// rays. Every tenth case is a homothety or translation (all sides
/// parallel), every tenth offset by five has one pair of parallel sides, and
/// every twentieth offset by seven has its center at infinity.
pub fn perspective_case(rng: &mut impl Rng, index: u64) -> PerspectiveCase {
    loop {
        let center_at_infinity = index % 20 == 7;
        let center = if center_at_infinity {
            match PointP2::at_infinity(small_rational(rng), small_rational(rng)) {
                Ok(c) => c,
                Err(_) => continue,
            }
        } else {
            random_point(rng)
        };
        let tri = [random_point(rng), random_point(rng), random_point(rng)];
        if is_collinear(&tri[0], &tri[1], &tri[2]) || tri.contains(&center) {
            continue;
        }
        // A center on a side line would make that side its own image.
        if [(0, 1), (1, 2), (2, 0)].iter().any(|&(i, j)| is_collinear(&tri[i], &tri[j], &center)) {
            continue;
        }
        let mut ratio = || loop {
            let t = nonzero_rational(rng);
            if center_at_infinity || t != R::one() {
                return t;
            }
        };
        let t = ratio();
        let ratios = match index % 10 {
            0 => [t.clone(), t.clone(), t],
            5 => [t.clone(), t, ratio()],
            _ => [t, ratio(), ratio()],
        };
        let image = |v: &P, t: &R| -> P {
            let (x, y) = affine(v);
            match center.to_affine() {
                // O + t(V - O)
                Some((ox, oy)) => PointP2::affine(
                    ox.clone() + t.clone() * (x - ox),
                    oy.clone() + t.clone() * (y - oy),
                ),
                None => {
                    let [dx, dy, _] = center.coords().clone();
                    PointP2::affine(x + t.clone() * dx, y + t.clone() * dy)
                }
            }
        };
        let sec: Vec<P> = tri.iter().zip(&ratios).map(|(v, t)| image(v, t)).collect();
        if is_collinear(&sec[0], &sec[1], &sec[2]) {
            continue;
        }
        let [a, b, c] = tri;
        let [a2, b2, c2]: [P; 3] = sec.try_into().expect("three");
        return PerspectiveCase {
            points: [a, b, c, a2, b2, c2],
            center,
        };
    }
}

fn desargues_case(rng: &mut impl Rng, index: u64) -> Result<CaseResult, String> {
    let case = perspective_case(rng, index);
    let [a, b, c, a2, b2, c2] = &case.points;
    let v = check_desargues(a, b, c, a2, b2, c2).map_err(geom)?;
    if !v.hypothesis_holds {
        return Err("perspective configuration reported as not perspective".into());
    }
    if v.perspective_center.as_ref() != Some(&case.center) {
        return Err(format!("center {:?} differs from {}", v.perspective_center, case.center));
    }
    if !v.conclusion_holds {
        return Err(format!("side meets not collinear: {:?}", v.side_meets));
    }
    Ok(CaseResult::exact(v.side_meets.iter().any(|m| m.is_at_infinity())))
}

/// `A, B, C, A', B', C'` whose corresponding sides meet on `axis`.
#[derive(Clone, Debug)]
pub struct AxialCase {
    pub points: [P; 6],
    pub axis: LineP2<R>,
}

/// Axial triangles: `B'` is taken on the line from `A'` to the meet of `AB`
/// with the axis, `C'` closes the figure. Every tenth axis is the line at
/// infinity.
pub fn axial_case(rng: &mut impl Rng, index: u64) -> AxialCase {
    let tol = exact();
    'retry: loop {
        let axis = if index.is_multiple_of(10) { LineP2::at_infinity() } else { random_line(rng) };
        let tri = [random_point(rng), random_point(rng), random_point(rng)];
        if is_collinear(&tri[0], &tri[1], &tri[2]) || tri.iter().any(|v| incident(v, &axis, &tol)) {
            continue;
        }
        let [a, b, c] = &tri;
        let side_meet = |u: &P, v: &P| meet(&join(u, v).expect("distinct"), &axis).expect("side not the axis");
        let (p, qq, r) = (side_meet(a, b), side_meet(b, c), side_meet(c, a));
        let a2 = random_point(rng);
        if incident(&a2, &axis, &tol) {
            continue;
        }
        let s = nonzero_rational(rng);
        if s == R::one() {
            continue;
        }
        let (ax, ay) = affine(&a2);
        let b2 = match p.to_affine() {
            Some((px, py)) => PointP2::affine(
                ax.clone() + s.clone() * (px - ax.clone()),
                ay.clone() + s.clone() * (py - ay.clone()),
            ),
            None => {
                let [dx, dy, _] = p.coords().clone();
                PointP2::affine(ax.clone() + s.clone() * dx, ay.clone() + s * dy)
            }
        };
        let (Ok(l1), Ok(l2)) = (join(&b2, &qq), join(&a2, &r)) else { continue };
        let Ok(c2) = meet(&l1, &l2) else { continue };
        if c2.is_at_infinity() || is_collinear(&a2, &b2, &c2) {
            continue;
        }
        let points = [a.clone(), b.clone(), c.clone(), a2, b2, c2];
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            if points[i] == points[i + 3] {
                continue 'retry;
            }
            if join(&points[i], &points[j]).ok() == join(&points[i + 3], &points[j + 3]).ok() {
                continue 'retry;
            }
        }
        return AxialCase { points, axis };
    }
}

fn converse_case(rng: &mut impl Rng, index: u64) -> Result<CaseResult, String> {
    let case = axial_case(rng, index);
    let [a, b, c, a2, b2, c2] = &case.points;
    let v = check_desargues_converse(a, b, c, a2, b2, c2).map_err(geom)?;
    if !v.hypothesis_holds {
        return Err("axial configuration reported as not axial".into());
    }
    if v.axis.as_ref() != Some(&case.axis) {
        return Err(format!("axis {:?} differs from {}", v.axis, case.axis));
    }
    if !v.conclusion_holds {
        return Err("joins of corresponding vertices not concurrent".into());
    }
    Ok(CaseResult::exact(
        v.perspective_center.as_ref().is_some_and(|c| c.is_at_infinity()),
    ))
}

/// Four base points, no three collinear, and a line through none of them.
/// Every tenth line passes through the diagonal point `AB·CD`.
pub fn involution_case(rng: &mut impl Rng, index: u64) -> ([P; 4], LineP2<R>) {
    loop {
        let base: [P; 4] = std::array::from_fn(|_| random_point(rng));
        let general = (0..4).all(|skip| {
            let t: Vec<&P> = (0..4).filter(|&i| i != skip).map(|i| &base[i]).collect();
            !is_collinear(t[0], t[1], t[2])
        });
        if !general {
            continue;
        }
        let l = if index.is_multiple_of(10) {
            let [a, b, c, d] = &base;
            let diag = meet(&join(a, b).expect("distinct"), &join(c, d).expect("distinct")).expect("distinct sides");
            match join(&diag, &random_point(rng)) {
                Ok(l) => l,
                Err(_) => continue,
            }
        } else {
            random_line(rng)
        };
        if base.iter().any(|p| incident(p, &l, &exact())) {
            continue;
        }
        return (base, l);
    }
}

fn involution_check(rng: &mut impl Rng, index: u64) -> Result<CaseResult, String> {
    let (base, l) = involution_case(rng, index);
    let [a, b, c, d] = &base;
    let holds = check_desargues_involution([a, b, c, d], &l).map_err(geom)?;
    if !holds {
        return Err("pencil does not cut an involution".into());
    }
    let diagonal = [(a, b, c, d), (a, c, b, d), (a, d, b, c)].iter().any(|(p, q1, r, s)| {
        let m = meet(&join(p, q1).expect("distinct"), &join(r, s).expect("distinct")).expect("distinct sides");
        incident(&m, &l, &exact())
    });
    Ok(CaseResult::exact(diagonal))
}

/// Two circles with same-side tangents, the apex of those tangents and
/// secants through it, each through a rational point of the first circle.
#[derive(Clone, Debug)]
pub struct CircleCase {
    pub c1: ((R, R), R),
    pub c2: ((R, R), R),
    pub apex: P,
    pub secants: Vec<LineP2<R>>,
}

/// Every tenth case offset by three has equal radii, so the apex is at
/// infinity.
pub fn circle_case(rng: &mut impl Rng, index: u64, secants: usize) -> CircleCase {
    'retry: loop {
        let m1 = (small_rational(rng), small_rational(rng));
        let m2 = (small_rational(rng), small_rational(rng));
        let r1 = positive_rational(rng);
        let r2 = if index % 10 == 3 { r1.clone() } else { positive_rational(rng) };
        let (dx, dy) = (m2.0.clone() - m1.0.clone(), m2.1.clone() - m1.1.clone());
        let d2 = dx.clone() * dx + dy.clone() * dy;
        let dr = r1.clone() - r2.clone();
        if d2.is_zero() || d2 <= dr.clone() * dr {
            continue;
        }
        let Ok(pair) = CirclePair::new(m1.clone(), r1.clone(), m2.clone(), r2.clone()) else { continue };
        let Ok(apex) = same_side_tangent_apex(&pair) else { continue };
        let k1 = conic_from_circle(m1.clone(), r1.clone()).expect("positive radius");
        let mut lines: Vec<LineP2<R>> = Vec::with_capacity(secants);
        let mut tries = 0;
        while lines.len() < secants {
            tries += 1;
            if tries > 20 * secants {
                continue 'retry;
            }
            let p = circle_point((&m1.0, &m1.1), &r1, &small_rational(rng));
            let Ok(s) = join(&apex, &p) else { continue };
            // A tangent from the apex meets the circle only at p.
            if second_intersection(&k1, &p, &s).ok().as_ref() == Some(&p) || lines.contains(&s) {
                continue;
            }
            lines.push(s);
        }
        return CircleCase {
            c1: (m1, r1),
            c2: (m2, r2),
            apex,
            secants: lines,
        };
    }
}

/// The radical axis of two circles, computed from their powers.
fn radical_axis(c1: &((R, R), R), c2: &((R, R), R)) -> LineP2<R> {
    let power_const = |((x, y), r): &((R, R), R)| x.clone() * x.clone() + y.clone() * y.clone() - r.clone() * r.clone();
    LineP2::new(
        R::from(2) * (c2.0 .0.clone() - c1.0 .0.clone()),
        R::from(2) * (c2.0 .1.clone() - c1.0 .1.clone()),
        power_const(c1) - power_const(c2),
    )
    .expect("distinct centers")
}

fn circles_check(rng: &mut impl Rng, index: u64) -> Result<CaseResult, String> {
    let case = circle_case(rng, index, 5);
    let k1 = conic_from_circle(case.c1.0.clone(), case.c1.1.clone()).map_err(geom)?;
    let k2 = conic_from_circle(case.c2.0.clone(), case.c2.1.clone()).map_err(geom)?;
    let tol = exact();
    let same = check_example1_with(&k1, &k2, &case.apex, &case.secants, &Pairing::SAME, &tol).map_err(geom)?;
    if !same.all_collinear || same.meets.iter().any(|m| !m.is_at_infinity()) {
        return Err("same-pairing meets are not on the line at infinity".into());
    }
    let crossed = check_example1_with(&k1, &k2, &case.apex, &case.secants, &Pairing::CROSSED, &tol).map_err(geom)?;
    let axis = radical_axis(&case.c1, &case.c2);
    if !crossed.all_collinear || crossed.meets.iter().any(|m| !incident(m, &axis, &tol)) {
        return Err(format!("crossed meets are not on the radical axis {axis}"));
    }
    Ok(CaseResult::exact(case.apex.is_at_infinity()))
}

/// Two ellipses inscribed in the same angle, its vertex as apex, and
/// secants through the apex crossing both.
#[derive(Clone, Debug)]
pub struct ConicCase {
    pub c1: Conic<f64>,
    pub c2: Conic<f64>,
    pub apex: PointP2<f64>,
    pub secants: Vec<LineP2<f64>>,
}

/// Each ellipse is `t1·t2ᵀ + t2·t1ᵀ + k·c·cᵀ`: it touches both sides `t1`,
/// `t2` of the angle where the chord `c` crosses them.
pub fn conic_case(rng: &mut impl Rng, secants: usize) -> ConicCase {
    let tol = Tolerance::default();
    'retry: loop {
        let (ox, oy) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let o = PointP2::affine(ox, oy);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let spread: f64 = rng.gen_range(0.4..1.4);
        let ray = |phi: f64, t: f64| PointP2::affine(ox + t * phi.cos(), oy + t * phi.sin());
        let (Ok(t1), Ok(t2)) = (join(&o, &ray(theta, 1.0)), join(&o, &ray(theta + spread, 1.0))) else {
            continue;
        };
        let mut make = || -> Option<Conic<f64>> {
            let chord = join(&ray(theta, rng.gen_range(1.0..6.0)), &ray(theta + spread, rng.gen_range(1.0..6.0))).ok()?;
            let k = rng.gen_range(0.2..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let (u, v, c) = (t1.coeffs(), t2.coeffs(), chord.coeffs());
            let m: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| u[i] * v[j] + v[i] * u[j] + k * c[i] * c[j]));
            let conic = Conic::new(m).ok()?;
            let m = conic.matrix();
            let scale = m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()));
            let ellipse = m[0][0] * m[1][1] - m[0][1] * m[0][1] > 1e-6 * scale * scale;
            let apex_outside = conic.eval(&o) * m[0][0] > 0.0;
            (ellipse && apex_outside && conic.det().abs() > 1e-9 * scale.powi(3)).then_some(conic)
        };
        let (Some(c1), Some(c2)) = (make(), make()) else { continue };
        let mut lines = Vec::with_capacity(secants);
        let mut tries = 0;
        while lines.len() < secants {
            tries += 1;
            if tries > 50 * secants {
                continue 'retry;
            }
            let Ok(s) = join(&o, &ray(theta + spread * rng.gen_range(0.05..0.95), 1.0)) else { continue };
            let crosses = |c: &Conic<f64>| matches!(line_conic_meet(c, &s), MeetResult::Two([p, q]) if !p.approx_eq(&q, &tol));
            if crosses(&c1) && crosses(&c2) {
                lines.push(s);
            }
        }
        return ConicCase {
            c1,
            c2,
            apex: o,
            secants: lines,
        };
    }
}

fn conics_check(rng: &mut impl Rng) -> Result<CaseResult, String> {
    let case = conic_case(rng, 5);
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;
    for pairings in [&Pairing::SAME[..], &Pairing::CROSSED[..]] {
        let r = check_example1_with(&case.c1, &case.c2, &case.apex, &case.secants, pairings, &tol).map_err(geom)?;
        let res = r.max_residual.unwrap_or(f64::INFINITY);
        worst = worst.max(res);
        if !r.all_collinear {
            return Err(format!("{pairings:?} meets off their line, residual {res:.3e}"));
        }
    }
    Ok(CaseResult {
        notable: true,
        residual: Some(worst),
    })
}

/// A folded sheet with two plane sections, as drawn in orthogonal
/// projection onto `z = 0`.
#[derive(Clone, Debug)]
pub struct SheetCase {
    pub sheet: FoldedSheet<R>,
    pub carriers: [LineP2<R>; 4],
    pub first: [P; 4],
    pub second: [P; 4],
    /// The cutting planes of the two sections.
    pub planes: [PlaneP3<R>; 2],
}

fn random_plane(rng: &mut impl Rng) -> PlaneP3<R> {
    PlaneP3::new(small_rational(rng), small_rational(rng), nonzero_rational(rng), small_rational(rng))
        .expect("nonzero normal")
}

/// Five random non-vertical faces, cut by two random non-vertical planes.
/// Cases where the construction of the second section is undetermined are
/// drawn again: coincident corresponding points, collinear consecutive
/// vertices, coincident corresponding sides, or a single side meet.
pub fn sheet_case(rng: &mut impl Rng) -> SheetCase {
    let ortho = Projection::orthogonal_xy();
    'retry: loop {
        let faces: Vec<PlaneP3<R>> = (0..5).map(|_| random_plane(rng)).collect();
        let Ok(sheet) = FoldedSheet::from_faces(faces) else { continue };
        let carriers: Vec<LineP2<R>> = match sheet.folds().iter().map(|f| ortho.project_line(f)).collect() {
            Ok(c) => c,
            Err(_) => continue,
        };
        let section = |plane: &PlaneP3<R>| -> Option<Vec<P>> {
            let pts = section_by_plane(&sheet, plane).ok()?;
            let drawn: Vec<P> = pts.iter().map(|p| project(&ortho, p)).collect::<Result<_, _>>().ok()?;
            drawn.iter().all(|p| !p.is_at_infinity()).then_some(drawn)
        };
        let planes = [random_plane(rng), random_plane(rng)];
        let (Some(first), Some(second)) = (section(&planes[0]), section(&planes[1])) else { continue };
        for quad in [&first, &second] {
            if quad.windows(3).any(|w| is_collinear(&w[0], &w[1], &w[2])) {
                continue 'retry;
            }
        }
        if first.iter().zip(&second).any(|(p, q2)| p == q2) {
            continue;
        }
        let mut meets = Vec::with_capacity(3);
        for i in 0..3 {
            let s1 = join(&first[i], &first[i + 1]).expect("distinct");
            let s2 = join(&second[i], &second[i + 1]).expect("distinct");
            match meet(&s1, &s2) {
                Ok(m) => meets.push(m),
                Err(_) => continue 'retry,
            }
        }
        if meets[0] == meets[1] {
            continue;
        }
        return SheetCase {
            sheet,
            carriers: carriers.try_into().expect("four folds"),
            first: first.try_into().expect("four points"),
            second: second.try_into().expect("four points"),
            planes,
        };
    }
}

fn sheet_check(rng: &mut impl Rng) -> Result<CaseResult, String> {
    let case = sheet_case(rng);
    let q1 = SectionQuadruplet::new(case.first.clone(), case.carriers.clone()).map_err(geom)?;
    if !q1.admissible {
        return Err("section of a genuine sheet judged inadmissible".into());
    }
    let [a2, b2, c2, d2] = &case.second;
    let built = complete_section(&q1, a2, b2, c2).map_err(geom)?;
    if &built != d2 {
        return Err(format!("constructed {built}, section has {d2}"));
    }
    let q2 = SectionQuadruplet::new(case.second.clone(), case.carriers.clone()).map_err(geom)?;
    if !verify_section_against_lift(&case.sheet, &Projection::orthogonal_xy(), &q2).map_err(geom)? {
        return Err("lift disagrees with the drawn section".into());
    }
    let alignment = check_section_alignment(&q1, &q2).map_err(geom)?;
    if !alignment.aligned {
        return Err("side meets of the two sections not aligned".into());
    }
    Ok(CaseResult::exact(false))
}

fn lift_check(rng: &mut impl Rng, index: u64) -> Result<CaseResult, String> {
    let case = perspective_case(rng, index);
    let [a, b, c, a2, b2, c2] = &case.points;
    let w = lift_desargues([a, b, c], [a2, b2, c2], &case.center).map_err(geom)?;
    for (i, (p3, p2)) in w.points.iter().zip(&case.points).enumerate() {
        let back = project(&w.projection, p3).map_err(geom)?;
        if &back != p2 {
            return Err(format!("point {i} projects to {back}, expected {p2}"));
        }
    }
    let axis = w.projection.project_line(&w.axis().map_err(geom)?).map_err(geom)?;
    let v = check_desargues(a, b, c, a2, b2, c2).map_err(geom)?;
    if v.axis.as_ref() != Some(&axis) {
        return Err(format!("projected plane meet {axis} differs from axis {:?}", v.axis));
    }
    Ok(CaseResult::exact(axis.is_at_infinity()))
}

fn moulton_point(rng: &mut impl Rng) -> MoultonPoint {
    // Abscissa zero often enough to exercise the fold.
    let x = if rng.gen_bool(0.1) { R::zero() } else { small_rational(rng) };
    MoultonPoint::new(x, small_rational(rng))
}

fn moulton_check(rng: &mut impl Rng, index: u64) -> Result<CaseResult, String> {
    let p = moulton_point(rng);
    let q2 = loop {
        let mut cand = moulton_point(rng);
        if index.is_multiple_of(10) {
            cand.x = p.x.clone();
        }
        if cand != p {
            break cand;
        }
    };
    let merr = |e: MoultonError| e.to_string();
    let l = m_line_through(&p, &q2).map_err(merr)?;
    if !l.contains(&p) || !l.contains(&q2) {
        return Err(format!("{l} misses {p} or {q2}"));
    }
    if m_line_through(&q2, &p).map_err(merr)? != l {
        return Err("line depends on the order of its points".into());
    }
    // Uniqueness: any other point of l spans the same line with p.
    let r = match &l {
        MoultonLine::Vertical(c) => MoultonPoint::new(c.clone(), small_rational(rng)),
        MoultonLine::Bent { .. } => {
            let x = small_rational(rng);
            let y = l.y_at(&x).expect("not vertical");
            MoultonPoint::new(x, y)
        }
    };
    if r != p && m_line_through(&p, &r).map_err(merr)? != l {
        return Err(format!("{p} and {r} on {l} span another line"));
    }
    let other = loop {
        let (u, v) = (moulton_point(rng), moulton_point(rng));
        if u != v {
            break m_line_through(&u, &v).map_err(merr)?;
        }
    };
    match m_meet(&l, &other) {
        Ok(Some(x)) => {
            if !l.contains(&x) || !other.contains(&x) {
                return Err(format!("meet {x} of {l} and {other} is off a line"));
            }
        }
        Ok(None) => {
            let parallel = match (&l, &other) {
                (MoultonLine::Vertical(_), MoultonLine::Vertical(_)) => true,
                (MoultonLine::Bent { m, .. }, MoultonLine::Bent { m: m2, .. }) => m == m2,
                _ => false,
            };
            if !parallel {
                return Err(format!("{l} and {other} reported parallel"));
            }
        }
        Err(MoultonError::CoincidentLines) if l == other => {}
        Err(e) => return Err(e.to_string()),
    }
    Ok(CaseResult::exact(l.is_bent()))
}

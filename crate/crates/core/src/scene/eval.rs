use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{Check, Construction, Decl, Expectation, Ident, LineExpr, Num, PointExpr, Scene, SourceSpan, StatementKind};
use crate::conics::{conic_from_circle, conic_through_five, same_side_tangent_apex, CirclePair, Conic};
use crate::error::GeomError;
use crate::kernel::{Field, Rational, Tolerance};
use crate::moulton::{
    check_moulton_desargues, find_desargues_failure, FailureWitness, MoultonError, MoultonPoint, MoultonVerdict,
    SearchBox,
};
use crate::p2::{join, meet, LineP2, PointP2};
use crate::p3::{sheet_over_section, Projection};
use crate::theorems::{
    check_desargues, check_desargues_converse, check_desargues_involution, check_example1_with,
    check_section_alignment, complete_section, verify_section_against_lift, AlignmentReport, DesarguesVerdict,
    Pairing, SectionAlignment, SectionQuadruplet,
};

const DEFAULT_WITNESS_BUDGET: u64 = 100_000;

#[derive(Clone, Debug)]
pub enum Value<S: Field> {
    Point(PointP2<S>),
    Line(LineP2<S>),
    Circle {
        conic: Conic<S>,
        center: (S, S),
        radius: S,
    },
    Conic(Conic<S>),
}

#[derive(Clone, Debug)]
pub enum CheckDetail<S: Field> {
    Desargues {
        points: [PointP2<S>; 6],
        verdict: DesarguesVerdict<S>,
    },
    Converse {
        points: [PointP2<S>; 6],
        verdict: DesarguesVerdict<S>,
    },
    Involution {
        holds: bool,
    },
    Example1 {
        report: AlignmentReport<S>,
        apex: PointP2<S>,
        secants: Vec<LineP2<S>>,
        pairings: Vec<Pairing>,
    },
    Section {
        alignment: SectionAlignment,
        /// Whether the second quadruplet is a section of a sheet built over
        /// the first; `None` when no such sheet exists.
        lift_verified: Option<bool>,
        first: [PointP2<S>; 4],
        second: [PointP2<S>; 4],
        axis: Option<LineP2<S>>,
    },
    Moulton {
        points: [MoultonPoint; 6],
        verdict: MoultonVerdict,
        expect: Expectation,
    },
    Witness(FailureWitness),
}

#[derive(Clone, Debug)]
pub struct CheckOutcome<S: Field> {
    /// The check as written in canonical form.
    pub name: String,
    pub passed: bool,
    pub detail: CheckDetail<S>,
    pub span: SourceSpan,
}

impl<S: Field> CheckOutcome<S> {
    /// One-line account of what was computed.
    pub fn summary(&self) -> String {
        let opt = |o: &Option<PointP2<S>>| o.as_ref().map_or("none".to_string(), |p| p.to_string());
        let opt_line = |o: &Option<LineP2<S>>| o.as_ref().map_or("none".to_string(), |l| l.to_string());
        match &self.detail {
            CheckDetail::Desargues { verdict: v, .. } | CheckDetail::Converse { verdict: v, .. } => format!(
                "center {}, side meets {} {} {}, axis {}",
                opt(&v.perspective_center),
                v.side_meets[0],
                v.side_meets[1],
                v.side_meets[2],
                opt_line(&v.axis)
            ),
            CheckDetail::Involution { holds } => {
                format!("third pair {} by the involution of the first two", if *holds { "exchanged" } else { "not exchanged" })
            }
            CheckDetail::Example1 { report, apex, .. } => {
                let mut s = format!(
                    "apex {apex}, {} meets from {} secants, line {}",
                    report.meets.len(),
                    report.secant_count,
                    opt_line(&report.fitted_line)
                );
                if let Some(r) = report.max_residual {
                    s.push_str(&format!(", max residual {r:.3e}"));
                }
                s
            }
            CheckDetail::Section {
                alignment,
                lift_verified,
                axis,
                ..
            } => {
                let lift = match lift_verified {
                    Some(true) => "lift agrees",
                    Some(false) => "lift disagrees",
                    None => "no lift",
                };
                let degen = if alignment.degenerate { ", degenerate comparison" } else { "" };
                format!(
                    "meets {}aligned on {}{degen}, {lift}",
                    if alignment.aligned { "" } else { "not " },
                    opt_line(axis)
                )
            }
            CheckDetail::Moulton { verdict, .. } => {
                let center = verdict.perspective_center.as_ref().map_or("none".into(), |p| p.to_string());
                let meets = verdict.side_meets.as_ref().map_or("parallel sides".into(), |m| {
                    format!("{} {} {}", m[0], m[1], m[2])
                });
                format!(
                    "center {center}, side meets {meets}, {}",
                    if verdict.conclusion_holds { "on one Moulton line" } else { "not on one Moulton line" }
                )
            }
            CheckDetail::Witness(w) => {
                let pts: Vec<String> = w.points.iter().map(|p| p.to_string()).collect();
                format!(
                    "triangles {} center {}, defect {}",
                    pts.join(" "),
                    w.center,
                    w.collinearity_defect
                )
            }
        }
    }
}

impl<S: Field> fmt::Display for CheckOutcome<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} line {}: {} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.span.line,
            self.name,
            self.summary()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalErrorKind {
    #[error("undefined name '{0}'")]
    UndefinedName(String),
    #[error("name '{0}' is already defined")]
    DuplicateName(String),
    #[error("'{name}' is not a {expected}")]
    WrongKind { name: String, expected: &'static str },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Moulton(#[from] MoultonError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{span}: {kind}")]
pub struct EvaluationError {
    pub span: SourceSpan,
    pub kind: EvalErrorKind,
}

/// Every named value in declaration order, and the outcome of every check.
#[derive(Clone, Debug)]
pub struct Evaluation<S: Field> {
    pub values: Vec<(String, Value<S>)>,
    pub outcomes: Vec<CheckOutcome<S>>,
}

impl<S: Field> Evaluation<S> {
    pub fn get(&self, name: &str) -> Option<&Value<S>> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

struct Env<S: Field> {
    values: Vec<(String, Value<S>)>,
    index: BTreeMap<String, usize>,
    /// Exact affine coordinates of points given by coordinates.
    literals: BTreeMap<String, (Rational, Rational)>,
}

type EResult<T> = Result<T, EvaluationError>;

fn err<T>(span: SourceSpan, kind: impl Into<EvalErrorKind>) -> EResult<T> {
    Err(EvaluationError {
        span,
        kind: kind.into(),
    })
}

impl<S: Field> Env<S> {
    fn lookup(&self, id: &Ident) -> EResult<&Value<S>> {
        match self.index.get(&id.name) {
            Some(&i) => Ok(&self.values[i].1),
            None => err(id.span, EvalErrorKind::UndefinedName(id.name.clone())),
        }
    }

    fn point(&self, id: &Ident) -> EResult<PointP2<S>> {
        match self.lookup(id)? {
            Value::Point(p) => Ok(p.clone()),
            _ => err(id.span, wrong(id, "point")),
        }
    }

    fn line(&self, id: &Ident) -> EResult<LineP2<S>> {
        match self.lookup(id)? {
            Value::Line(l) => Ok(l.clone()),
            _ => err(id.span, wrong(id, "line")),
        }
    }

    fn conic(&self, id: &Ident) -> EResult<Conic<S>> {
        match self.lookup(id)? {
            Value::Circle { conic, .. } | Value::Conic(conic) => Ok(conic.clone()),
            _ => err(id.span, wrong(id, "conic")),
        }
    }

    fn points<const N: usize>(&self, ids: &[Ident; N]) -> EResult<[PointP2<S>; N]> {
        let v = ids.iter().map(|i| self.point(i)).collect::<EResult<Vec<_>>>()?;
        Ok(v.try_into().expect("N points"))
    }

    fn lines<const N: usize>(&self, ids: &[Ident; N]) -> EResult<[LineP2<S>; N]> {
        let v = ids.iter().map(|i| self.line(i)).collect::<EResult<Vec<_>>>()?;
        Ok(v.try_into().expect("N lines"))
    }

    fn define(&mut self, id: &Ident, v: Value<S>) -> EResult<()> {
        if self.index.contains_key(&id.name) {
            return err(id.span, EvalErrorKind::DuplicateName(id.name.clone()));
        }
        self.index.insert(id.name.clone(), self.values.len());
        self.values.push((id.name.clone(), v));
        Ok(())
    }
}

fn wrong(id: &Ident, expected: &'static str) -> EvalErrorKind {
    EvalErrorKind::WrongKind {
        name: id.name.clone(),
        expected,
    }
}

fn num<S: Field>(n: &Num) -> S {
    S::from_rational(&n.value)
}

/// Evaluates declarations and constructions in order and runs every check.
pub fn evaluate_scene<S: Field>(scene: &Scene, tol: &Tolerance) -> Result<Evaluation<S>, EvaluationError> {
    let mut env = Env {
        values: Vec::new(),
        index: BTreeMap::new(),
        literals: BTreeMap::new(),
    };
    let mut outcomes = Vec::new();
    for st in &scene.statements {
        let geom = |e: GeomError| EvaluationError {
            span: st.span,
            kind: EvalErrorKind::Geom(e),
        };
        match &st.kind {
            StatementKind::Decl(d) => {
                let value = declare(&mut env, d).map_err(|e| match e {
                    Ok(ev) => ev,
                    Err(g) => geom(g),
                })?;
                env.define(d.name(), value)?;
            }
            StatementKind::Construct(Construction::CompleteSection {
                carriers,
                first,
                second,
                name,
            }) => {
                let q1 = SectionQuadruplet::new(env.points(first)?, env.lines(carriers)?).map_err(geom)?;
                let [a2, b2, c2] = env.points(second)?;
                let d2 = complete_section(&q1, &a2, &b2, &c2).map_err(geom)?;
                env.define(name, Value::Point(d2))?;
            }
            StatementKind::Check(c) => {
                let (passed, detail) = run_check(&env, c, st.span, tol)?;
                outcomes.push(CheckOutcome {
                    name: c.to_string(),
                    passed,
                    detail,
                    span: st.span,
                });
            }
            StatementKind::Render(_) => {}
        }
    }
    Ok(Evaluation {
        values: env.values,
        outcomes,
    })
}

/// `Err(Ok(_))` carries a located error, `Err(Err(_))` one to be located at
/// the statement.
fn declare<S: Field>(env: &mut Env<S>, d: &Decl) -> Result<Value<S>, Result<EvaluationError, GeomError>> {
    Ok(match d {
        Decl::Point { name, expr } => Value::Point(match expr {
            PointExpr::Affine(x, y) => {
                env.literals.insert(name.name.clone(), (x.value.clone(), y.value.clone()));
                PointP2::affine(num(x), num(y))
            }
            PointExpr::Homogeneous(x, y, z) => {
                if !z.value.is_zero() {
                    env.literals.insert(
                        name.name.clone(),
                        (x.value.clone() / z.value.clone(), y.value.clone() / z.value.clone()),
                    );
                }
                PointP2::new(num(x), num(y), num(z)).map_err(Err)?
            }
            PointExpr::Meet(l, m) => {
                let (l, m) = (env.line(l).map_err(Ok)?, env.line(m).map_err(Ok)?);
                meet(&l, &m).map_err(Err)?
            }
        }),
        Decl::Line { expr, .. } => Value::Line(match expr {
            LineExpr::Join(a, b) => {
                let (a, b) = (env.point(a).map_err(Ok)?, env.point(b).map_err(Ok)?);
                join(&a, &b).map_err(Err)?
            }
            LineExpr::Vertical(c) => LineP2::vertical(num(c)),
            LineExpr::Horizontal(c) => LineP2::horizontal(num(c)),
            LineExpr::Coeffs(u, v, w) => LineP2::new(num(u), num(v), num(w)).map_err(Err)?,
        }),
        Decl::Circle { center, radius, .. } => {
            let c: (S, S) = (num(&center.0), num(&center.1));
            let r: S = num(radius);
            Value::Circle {
                conic: conic_from_circle(c.clone(), r.clone()).map_err(Err)?,
                center: c,
                radius: r,
            }
        }
        Decl::Conic { through, .. } => {
            let pts = through.iter().map(|i| env.point(i)).collect::<EResult<Vec<_>>>().map_err(Ok)?;
            Value::Conic(conic_through_five([&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]]).map_err(Err)?)
        }
    })
}

fn run_check<S: Field>(
    env: &Env<S>,
    c: &Check,
    span: SourceSpan,
    tol: &Tolerance,
) -> EResult<(bool, CheckDetail<S>)> {
    let geom = |e: GeomError| EvaluationError {
        span,
        kind: EvalErrorKind::Geom(e),
    };
    Ok(match c {
        Check::Desargues(ids) | Check::Converse(ids) => {
            let points = env.points(ids)?;
            let [a, b, cc, a2, b2, c2] = &points;
            if matches!(c, Check::Desargues(_)) {
                let verdict = check_desargues(a, b, cc, a2, b2, c2).map_err(geom)?;
                (verdict.hypothesis_holds && verdict.conclusion_holds, CheckDetail::Desargues { points, verdict })
            } else {
                let verdict = check_desargues_converse(a, b, cc, a2, b2, c2).map_err(geom)?;
                (verdict.hypothesis_holds && verdict.conclusion_holds, CheckDetail::Converse { points, verdict })
            }
        }
        Check::Involution { base, line } => {
            let pts = env.points(base)?;
            let l = env.line(line)?;
            let holds = check_desargues_involution([&pts[0], &pts[1], &pts[2], &pts[3]], &l).map_err(geom)?;
            (holds, CheckDetail::Involution { holds })
        }
        Check::Example1 {
            c1,
            c2,
            pairing,
            apex,
            secants,
        } => {
            let (k1, k2) = (env.conic(c1)?, env.conic(c2)?);
            let apex = match apex {
                Some(a) => env.point(a)?,
                None => match (env.lookup(c1)?, env.lookup(c2)?) {
                    (
                        Value::Circle {
                            center: m1, radius: r1, ..
                        },
                        Value::Circle {
                            center: m2, radius: r2, ..
                        },
                    ) => {
                        let cp = CirclePair::new(m1.clone(), r1.clone(), m2.clone(), r2.clone()).map_err(geom)?;
                        same_side_tangent_apex(&cp).map_err(geom)?
                    }
                    _ => {
                        return err(
                            span,
                            EvalErrorKind::Invalid("an apex is required unless both conics are circles".into()),
                        )
                    }
                },
            };
            let lines = secants
                .iter()
                .map(|s| match env.lookup(s)? {
                    Value::Line(l) => Ok(l.clone()),
                    Value::Point(p) => join(&apex, p).map_err(|e| EvaluationError {
                        span: s.span,
                        kind: e.into(),
                    }),
                    _ => err(s.span, wrong(s, "line or point")),
                })
                .collect::<EResult<Vec<_>>>()?;
            let pairings = pairing.pairings();
            let report = check_example1_with(&k1, &k2, &apex, &lines, &pairings, tol).map_err(geom)?;
            (
                report.all_collinear,
                CheckDetail::Example1 {
                    report,
                    apex,
                    secants: lines,
                    pairings,
                },
            )
        }
        Check::Section {
            carriers,
            first,
            second,
        } => {
            let carriers = env.lines(carriers)?;
            let first = env.points(first)?;
            let second = env.points(second)?;
            let q1 = SectionQuadruplet::new(first.clone(), carriers.clone()).map_err(geom)?;
            let q2 = SectionQuadruplet::new(second.clone(), carriers.clone()).map_err(geom)?;
            let alignment = check_section_alignment(&q1, &q2).map_err(geom)?;
            let lift_verified = if q1.admissible {
                let sheet = sheet_over_section(&carriers, &first, S::one()).map_err(geom)?;
                Some(verify_section_against_lift(&sheet, &Projection::orthogonal_xy(), &q2).map_err(geom)?)
            } else {
                None
            };
            let side_meet = |i: usize| -> Option<PointP2<S>> {
                let l = join(&first[i], &first[i + 1]).ok()?;
                let m = join(&second[i], &second[i + 1]).ok()?;
                meet(&l, &m).ok()
            };
            let axis = match (side_meet(0), side_meet(1)) {
                (Some(p), Some(q)) => join(&p, &q).ok(),
                _ => None,
            };
            (
                alignment.aligned && lift_verified != Some(false),
                CheckDetail::Section {
                    alignment,
                    lift_verified,
                    first,
                    second,
                    axis,
                },
            )
        }
        Check::Moulton { points, expect } => {
            let pts = points
                .iter()
                .map(|id| {
                    env.lookup(id)?;
                    match env.literals.get(&id.name) {
                        Some((x, y)) => Ok(MoultonPoint::new(x.clone(), y.clone())),
                        None => err(
                            id.span,
                            EvalErrorKind::Invalid(format!("'{}' must be given by finite coordinates", id.name)),
                        ),
                    }
                })
                .collect::<EResult<Vec<_>>>()?;
            let pts: [MoultonPoint; 6] = pts.try_into().expect("six points");
            let verdict = check_moulton_desargues([&pts[0], &pts[1], &pts[2], &pts[3], &pts[4], &pts[5]])
                .map_err(|e| EvaluationError { span, kind: e.into() })?;
            let passed = match expect {
                Expectation::Failure => verdict.is_failure(),
                Expectation::Holds => verdict.hypothesis_holds() && verdict.conclusion_holds,
            };
            (
                passed,
                CheckDetail::Moulton {
                    points: pts,
                    verdict,
                    expect: *expect,
                },
            )
        }
        Check::MoultonWitness { budget, bounds } => {
            let search = match bounds {
                Some([a, b, c, d]) => SearchBox {
                    xmin: a.value.clone(),
                    ymin: b.value.clone(),
                    xmax: c.value.clone(),
                    ymax: d.value.clone(),
                },
                None => SearchBox::default(),
            };
            let w = find_desargues_failure(&search, budget.unwrap_or(DEFAULT_WITNESS_BUDGET))
                .map_err(|e| EvaluationError { span, kind: e.into() })?;
            (w.verify(), CheckDetail::Witness(w))
        }
    })
}

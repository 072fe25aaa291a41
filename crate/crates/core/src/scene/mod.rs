//! Scene descriptions: a small line-oriented language declaring points,
//! lines and conics, applying constructions, stating checks and asking for
//! figures.
//!
//! ```text
//! point A = (1, 0)
//! line d = x = 3/2
//! check desargues A B C A' B' C'
//! render figure.svg viewport=(-10, -5, 10, 5)
//! ```

mod eval;
mod parse;
mod print;
mod render;

use std::fmt;

use crate::kernel::Rational;
use crate::theorems::Pairing;

pub use eval::{evaluate_scene, CheckDetail, CheckOutcome, EvalErrorKind, Evaluation, EvaluationError, Value};
pub use parse::{parse_scene, ParseError};
pub use render::{render_svg, RenderError};

/// 1-based position of a node in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

/// A name with its position. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub span: SourceSpan,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            span: SourceSpan::default(),
        }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// An exact numeric literal. Equality compares values only.
#[derive(Clone, Debug)]
pub struct Num {
    pub value: Rational,
    pub span: SourceSpan,
}

impl Num {
    pub fn new(value: Rational) -> Self {
        Self {
            value,
            span: SourceSpan::default(),
        }
    }
}

impl PartialEq for Num {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointExpr {
    Affine(Num, Num),
    Homogeneous(Num, Num, Num),
    Meet(Ident, Ident),
}

#[derive(Clone, Debug, PartialEq)]
pub enum LineExpr {
    Join(Ident, Ident),
    /// `x = c`
    Vertical(Num),
    /// `y = c`
    Horizontal(Num),
    Coeffs(Num, Num, Num),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Point { name: Ident, expr: PointExpr },
    Line { name: Ident, expr: LineExpr },
    Circle { name: Ident, center: (Num, Num), radius: Num },
    Conic { name: Ident, through: Vec<Ident> },
}

impl Decl {
    pub fn name(&self) -> &Ident {
        match self {
            Decl::Point { name, .. } | Decl::Line { name, .. } | Decl::Circle { name, .. } | Decl::Conic { name, .. } => {
                name
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingSpec {
    Single(Pairing),
    /// `near-near` and `far-far` together.
    Same,
    /// `near-far` and `far-near` together.
    Crossed,
}

impl PairingSpec {
    pub fn pairings(&self) -> Vec<Pairing> {
        match self {
            PairingSpec::Single(p) => vec![*p],
            PairingSpec::Same => Pairing::SAME.to_vec(),
            PairingSpec::Crossed => Pairing::CROSSED.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Failure,
    Holds,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    Desargues([Ident; 6]),
    Converse([Ident; 6]),
    Involution {
        base: [Ident; 4],
        line: Ident,
    },
    Example1 {
        c1: Ident,
        c2: Ident,
        pairing: PairingSpec,
        apex: Option<Ident>,
        /// Lines through the apex, or points naming the line from the apex.
        secants: Vec<Ident>,
    },
    Section {
        carriers: [Ident; 4],
        first: [Ident; 4],
        second: [Ident; 4],
    },
    Moulton {
        points: [Ident; 6],
        expect: Expectation,
    },
    MoultonWitness {
        budget: Option<u64>,
        bounds: Option<[Num; 4]>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    /// Completes a second section of a folded sheet, naming its fourth point.
    CompleteSection {
        carriers: [Ident; 4],
        first: [Ident; 4],
        second: [Ident; 3],
        name: Ident,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Render {
    pub file: String,
    /// `(xmin, ymin, xmax, ymax)`
    pub viewport: [Num; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub enum StatementKind {
    Decl(Decl),
    Construct(Construction),
    Check(Check),
    Render(Render),
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: SourceSpan,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub statements: Vec<Statement>,
}

impl Scene {
    pub fn declarations(&self) -> impl Iterator<Item = &Decl> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StatementKind::Decl(d) => Some(d),
            _ => None,
        })
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StatementKind::Check(c) => Some(c),
            _ => None,
        })
    }

    pub fn renders(&self) -> impl Iterator<Item = &Render> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StatementKind::Render(r) => Some(r),
            _ => None,
        })
    }
}

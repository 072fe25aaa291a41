//! Canonical text for scenes; parsing the output gives back the same scene.

use std::fmt;

use super::{
    Check, Construction, Decl, Expectation, Ident, LineExpr, Num, PairingSpec, PointExpr, Render, Scene, Statement,
    StatementKind,
};

fn names(items: &[Ident]) -> String {
    items.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(" ")
}

fn list(items: &[Ident]) -> String {
    let inner: Vec<&str> = items.iter().map(|i| i.name.as_str()).collect();
    format!("[{}]", inner.join(", "))
}

fn tuple(nums: &[Num]) -> String {
    let inner: Vec<String> = nums.iter().map(|n| n.value.to_string()).collect();
    format!("({})", inner.join(", "))
}

impl fmt::Display for PairingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingSpec::Single(p) => write!(f, "{p}"),
            PairingSpec::Same => f.write_str("same"),
            PairingSpec::Crossed => f.write_str("crossed"),
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Point { name, expr } => {
                write!(f, "point {} = ", name.name)?;
                match expr {
                    PointExpr::Affine(x, y) => write!(f, "({}, {})", x.value, y.value),
                    PointExpr::Homogeneous(x, y, z) => write!(f, "({}:{}:{})", x.value, y.value, z.value),
                    PointExpr::Meet(l, m) => write!(f, "meet({}, {})", l.name, m.name),
                }
            }
            Decl::Line { name, expr } => {
                write!(f, "line {} = ", name.name)?;
                match expr {
                    LineExpr::Join(a, b) => write!(f, "join({}, {})", a.name, b.name),
                    LineExpr::Vertical(c) => write!(f, "x = {}", c.value),
                    LineExpr::Horizontal(c) => write!(f, "y = {}", c.value),
                    LineExpr::Coeffs(u, v, w) => write!(f, "[{}:{}:{}]", u.value, v.value, w.value),
                }
            }
            Decl::Circle { name, center, radius } => write!(
                f,
                "circle {} = (center: ({}, {}), r: {})",
                name.name, center.0.value, center.1.value, radius.value
            ),
            Decl::Conic { name, through } => {
                let pts: Vec<&str> = through.iter().map(|i| i.name.as_str()).collect();
                write!(f, "conic {} = through({})", name.name, pts.join(", "))
            }
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Desargues(p) => write!(f, "check desargues {}", names(p)),
            Check::Converse(p) => write!(f, "check converse {}", names(p)),
            Check::Involution { base, line } => write!(f, "check involution base={} line={}", list(base), line.name),
            Check::Example1 {
                c1,
                c2,
                pairing,
                apex,
                secants,
            } => {
                write!(f, "check example1 {} {} pairing={pairing}", c1.name, c2.name)?;
                if let Some(a) = apex {
                    write!(f, " apex={}", a.name)?;
                }
                write!(f, " secants={}", list(secants))
            }
            Check::Section {
                carriers,
                first,
                second,
            } => write!(
                f,
                "check section carriers={} first={} second={}",
                list(carriers),
                list(first),
                list(second)
            ),
            Check::Moulton { points, expect } => {
                let e = match expect {
                    Expectation::Failure => "failure",
                    Expectation::Holds => "holds",
                };
                write!(f, "moulton check {} expect={e}", names(points))
            }
            Check::MoultonWitness { budget, bounds } => {
                f.write_str("moulton witness")?;
                if let Some(b) = budget {
                    write!(f, " budget={b}")?;
                }
                if let Some(b) = bounds {
                    write!(f, " box={}", tuple(b))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::CompleteSection {
                carriers,
                first,
                second,
                name,
            } => write!(
                f,
                "complete section carriers={} first={} second={} as {}",
                list(carriers),
                list(first),
                list(second),
                name.name
            ),
        }
    }
}

impl fmt::Display for Render {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "render {} viewport={}", self.file, tuple(&self.viewport))
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StatementKind::Decl(d) => d.fmt(f),
            StatementKind::Construct(c) => c.fmt(f),
            StatementKind::Check(c) => c.fmt(f),
            StatementKind::Render(r) => r.fmt(f),
        }
    }
}

impl fmt::Display for Scene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

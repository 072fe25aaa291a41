use thiserror::Error;

use super::{
    Check, Construction, Decl, Expectation, Ident, LineExpr, Num, PairingSpec, PointExpr, Render, Scene, SourceSpan,
    Statement, StatementKind,
};
use crate::kernel::Rational;
use crate::theorems::Pairing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn span(&self, start: usize) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: start + 1,
            length: self.pos - start,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied().filter(|&c| c != '#')
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            span: SourceSpan {
                line: self.line,
                column: self.pos + 1,
                length: usize::from(self.peek().is_some()),
            },
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(is_ident_start) {
            return Err(self.error(format!("expected {what}")));
        }
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        while self.peek() == Some('\'') {
            self.pos += 1;
        }
        Ok(Ident {
            name: self.chars[start..self.pos].iter().collect(),
            span: self.span(start),
        })
    }

    /// Next bare word, without consuming it.
    fn peek_word(&mut self) -> String {
        self.skip_ws();
        self.chars[self.pos..]
            .iter()
            .take_while(|c| is_ident_char(**c))
            .collect()
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        if self.peek_word() == kw {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.error(format!("expected '{kw}'")))
        }
    }

    fn number(&mut self) -> PResult<Num> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        let digits = |cur: &mut Self| {
            let s = cur.pos;
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.pos += 1;
            }
            cur.pos - s
        };
        let mut n = digits(self);
        if self.peek() == Some('/') && n > 0 {
            self.pos += 1;
            if digits(self) == 0 {
                return Err(self.error("expected denominator"));
            }
        } else if self.peek() == Some('.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.error("expected number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let span = self.span(start);
        let value: Rational = text.parse().map_err(|e| ParseError {
            span,
            message: format!("{e}"),
        })?;
        Ok(Num { value, span })
    }

    fn unsigned(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.error("expected a nonnegative integer")
        })
    }

    /// A run of non-space characters.
    fn word(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(format!("expected {what}")));
        }
        Ok((self.chars[start..self.pos].iter().collect(), self.span(start)))
    }

    fn list(&mut self) -> PResult<(Vec<Ident>, SourceSpan)> {
        self.skip_ws();
        let start = self.pos;
        self.expect('[')?;
        let mut items = Vec::new();
        if !self.eat(']') {
            loop {
                items.push(self.ident("name")?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok((items, self.span(start)))
    }

    fn fixed_list<const N: usize>(&mut self) -> PResult<[Ident; N]> {
        let (items, span) = self.list()?;
        items.try_into().map_err(|v: Vec<Ident>| ParseError {
            span,
            message: format!("expected {N} names, found {}", v.len()),
        })
    }

    fn idents<const N: usize>(&mut self) -> PResult<[Ident; N]> {
        let v = (0..N).map(|_| self.ident("point name")).collect::<PResult<Vec<_>>>()?;
        Ok(v.try_into().expect("N names"))
    }

    fn tuple4(&mut self) -> PResult<[Num; 4]> {
        self.expect('(')?;
        let a = self.number()?;
        self.expect(',')?;
        let b = self.number()?;
        self.expect(',')?;
        let c = self.number()?;
        self.expect(',')?;
        let d = self.number()?;
        self.expect(')')?;
        Ok([a, b, c, d])
    }

    fn end(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("expected end of line"))
        }
    }
}

/// `key=value` options in any order.
struct Options<'a> {
    cur: &'a mut Cursor,
    seen: Vec<String>,
}

impl<'a> Options<'a> {
    fn new(cur: &'a mut Cursor) -> Self {
        Self { cur, seen: Vec::new() }
    }

    /// Next option key, or `None` at the end of the line (or at `stop`).
    fn next_key(&mut self, allowed: &[&str], stop: Option<&str>) -> PResult<Option<Ident>> {
        if self.cur.at_end() {
            return Ok(None);
        }
        if stop.is_some_and(|s| self.cur.peek_word() == s) {
            return Ok(None);
        }
        let key = self.cur.ident("option")?;
        if !allowed.contains(&key.name.as_str()) {
            return Err(ParseError {
                span: key.span,
                message: format!("unknown option '{}', expected one of {}", key.name, allowed.join(", ")),
            });
        }
        if self.seen.contains(&key.name) {
            return Err(ParseError {
                span: key.span,
                message: format!("duplicate option '{}'", key.name),
            });
        }
        self.seen.push(key.name.clone());
        self.cur.expect('=')?;
        Ok(Some(key))
    }
}

fn missing<T>(cur: &Cursor, value: Option<T>, key: &str) -> PResult<T> {
    value.ok_or_else(|| cur.error(format!("missing option '{key}'")))
}

pub fn parse_scene(text: &str) -> Result<Scene, ParseError> {
    let mut statements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(raw, i + 1);
        if cur.at_end() {
            continue;
        }
        let start = cur.pos;
        let kind = statement(&mut cur)?;
        cur.end()?;
        let span = SourceSpan {
            line: i + 1,
            column: start + 1,
            length: cur.pos - start,
        };
        statements.push(Statement { kind, span });
    }
    Ok(Scene { statements })
}

const KEYWORDS: &str = "point, line, circle, conic, check, complete, moulton, render";

fn statement(cur: &mut Cursor) -> PResult<StatementKind> {
    let word = cur.peek_word();
    match word.as_str() {
        "point" | "line" | "circle" | "conic" => {
            cur.pos += word.len();
            let name = cur.ident("name")?;
            cur.expect('=')?;
            let decl = match word.as_str() {
                "point" => Decl::Point {
                    name,
                    expr: point_expr(cur)?,
                },
                "line" => Decl::Line {
                    name,
                    expr: line_expr(cur)?,
                },
                "circle" => {
                    let (center, radius) = circle_expr(cur)?;
                    Decl::Circle { name, center, radius }
                }
                _ => {
                    cur.keyword("through")?;
                    cur.skip_ws();
                    let start = cur.pos;
                    cur.expect('(')?;
                    let mut through = vec![cur.ident("point name")?];
                    while cur.eat(',') {
                        through.push(cur.ident("point name")?);
                    }
                    cur.expect(')')?;
                    if through.len() != 5 {
                        return Err(ParseError {
                            span: cur.span(start),
                            message: format!("a conic needs five points, found {}", through.len()),
                        });
                    }
                    Decl::Conic { name, through }
                }
            };
            Ok(StatementKind::Decl(decl))
        }
        "check" => {
            cur.pos += word.len();
            Ok(StatementKind::Check(check(cur)?))
        }
        "complete" => {
            cur.pos += word.len();
            cur.keyword("section")?;
            let mut opts = Options::new(cur);
            let (mut carriers, mut first, mut second) = (None, None, None);
            while let Some(key) = opts.next_key(&["carriers", "first", "second"], Some("as"))? {
                match key.name.as_str() {
                    "carriers" => carriers = Some(opts.cur.fixed_list::<4>()?),
                    "first" => first = Some(opts.cur.fixed_list::<4>()?),
                    _ => second = Some(opts.cur.fixed_list::<3>()?),
                }
            }
            let carriers = missing(cur, carriers, "carriers")?;
            let first = missing(cur, first, "first")?;
            let second = missing(cur, second, "second")?;
            cur.keyword("as")?;
            let name = cur.ident("name")?;
            Ok(StatementKind::Construct(Construction::CompleteSection {
                carriers,
                first,
                second,
                name,
            }))
        }
        "moulton" => {
            cur.pos += word.len();
            let what = cur.peek_word();
            match what.as_str() {
                "check" => {
                    cur.pos += what.len();
                    let points = cur.idents::<6>()?;
                    let mut expect = Expectation::Failure;
                    let mut opts = Options::new(cur);
                    while opts.next_key(&["expect"], None)?.is_some() {
                        let (w, span) = opts.cur.word("failure or holds")?;
                        expect = match w.as_str() {
                            "failure" => Expectation::Failure,
                            "holds" => Expectation::Holds,
                            _ => {
                                return Err(ParseError {
                                    span,
                                    message: "expected 'failure' or 'holds'".into(),
                                })
                            }
                        };
                    }
                    Ok(StatementKind::Check(Check::Moulton { points, expect }))
                }
                "witness" => {
                    cur.pos += what.len();
                    let (mut budget, mut bounds) = (None, None);
                    let mut opts = Options::new(cur);
                    while let Some(key) = opts.next_key(&["budget", "box"], None)? {
                        if key.name == "budget" {
                            budget = Some(opts.cur.unsigned()?);
                        } else {
                            bounds = Some(opts.cur.tuple4()?);
                        }
                    }
                    Ok(StatementKind::Check(Check::MoultonWitness { budget, bounds }))
                }
                _ => Err(cur.error("expected 'check' or 'witness'")),
            }
        }
        "render" => {
            cur.pos += word.len();
            let (file, _) = cur.word("output file name")?;
            let mut viewport = None;
            let mut opts = Options::new(cur);
            while opts.next_key(&["viewport"], None)?.is_some() {
                viewport = Some(opts.cur.tuple4()?);
            }
            let viewport = missing(cur, viewport, "viewport")?;
            Ok(StatementKind::Render(Render { file, viewport }))
        }
        _ => Err(cur.error(format!("expected one of {KEYWORDS}"))),
    }
}

fn point_expr(cur: &mut Cursor) -> PResult<PointExpr> {
    if cur.peek_word() == "meet" {
        cur.pos += 4;
        cur.expect('(')?;
        let l = cur.ident("line name")?;
        cur.expect(',')?;
        let m = cur.ident("line name")?;
        cur.expect(')')?;
        return Ok(PointExpr::Meet(l, m));
    }
    cur.expect('(')?;
    let x = cur.number()?;
    if cur.eat(':') {
        let y = cur.number()?;
        cur.expect(':')?;
        let z = cur.number()?;
        cur.expect(')')?;
        return Ok(PointExpr::Homogeneous(x, y, z));
    }
    cur.expect(',')?;
    let y = cur.number()?;
    cur.expect(')')?;
    Ok(PointExpr::Affine(x, y))
}

fn line_expr(cur: &mut Cursor) -> PResult<LineExpr> {
    if cur.eat('[') {
        let u = cur.number()?;
        cur.expect(':')?;
        let v = cur.number()?;
        cur.expect(':')?;
        let w = cur.number()?;
        cur.expect(']')?;
        return Ok(LineExpr::Coeffs(u, v, w));
    }
    let word = cur.peek_word();
    match word.as_str() {
        "join" => {
            cur.pos += 4;
            cur.expect('(')?;
            let a = cur.ident("point name")?;
            cur.expect(',')?;
            let b = cur.ident("point name")?;
            cur.expect(')')?;
            Ok(LineExpr::Join(a, b))
        }
        "x" | "y" => {
            cur.pos += 1;
            cur.expect('=')?;
            let c = cur.number()?;
            Ok(if word == "x" {
                LineExpr::Vertical(c)
            } else {
                LineExpr::Horizontal(c)
            })
        }
        _ => Err(cur.error("expected 'join(..)', 'x = ..', 'y = ..' or '[u:v:w]'")),
    }
}

fn circle_expr(cur: &mut Cursor) -> PResult<((Num, Num), Num)> {
    cur.expect('(')?;
    cur.keyword("center")?;
    cur.expect(':')?;
    cur.expect('(')?;
    let cx = cur.number()?;
    cur.expect(',')?;
    let cy = cur.number()?;
    cur.expect(')')?;
    cur.expect(',')?;
    cur.keyword("r")?;
    cur.expect(':')?;
    let r = cur.number()?;
    cur.expect(')')?;
    Ok(((cx, cy), r))
}

fn check(cur: &mut Cursor) -> PResult<Check> {
    let word = cur.peek_word();
    match word.as_str() {
        "desargues" | "converse" => {
            cur.pos += word.len();
            let pts = cur.idents::<6>()?;
            Ok(if word == "desargues" {
                Check::Desargues(pts)
            } else {
                Check::Converse(pts)
            })
        }
        "involution" => {
            cur.pos += word.len();
            let (mut base, mut line) = (None, None);
            let mut opts = Options::new(cur);
            while let Some(key) = opts.next_key(&["base", "line"], None)? {
                if key.name == "base" {
                    base = Some(opts.cur.fixed_list::<4>()?);
                } else {
                    line = Some(opts.cur.ident("line name")?);
                }
            }
            Ok(Check::Involution {
                base: missing(cur, base, "base")?,
                line: missing(cur, line, "line")?,
            })
        }
        "example1" => {
            cur.pos += word.len();
            let c1 = cur.ident("conic name")?;
            let c2 = cur.ident("conic name")?;
            let (mut pairing, mut apex, mut secants) = (None, None, None);
            let mut opts = Options::new(cur);
            while let Some(key) = opts.next_key(&["pairing", "apex", "secants"], None)? {
                match key.name.as_str() {
                    "pairing" => {
                        let (w, span) = opts.cur.word("pairing")?;
                        pairing = Some(match w.as_str() {
                            "same" => PairingSpec::Same,
                            "crossed" => PairingSpec::Crossed,
                            other => PairingSpec::Single(other.parse::<Pairing>().map_err(|_| ParseError {
                                span,
                                message: "expected 'same', 'crossed', 'near-near', 'far-far', 'near-far' or 'far-near'"
                                    .into(),
                            })?),
                        });
                    }
                    "apex" => apex = Some(opts.cur.ident("point name")?),
                    _ => secants = Some(opts.cur.list()?.0),
                }
            }
            Ok(Check::Example1 {
                c1,
                c2,
                pairing: missing(cur, pairing, "pairing")?,
                apex,
                secants: missing(cur, secants, "secants")?,
            })
        }
        "section" => {
            cur.pos += word.len();
            let (mut carriers, mut first, mut second) = (None, None, None);
            let mut opts = Options::new(cur);
            while let Some(key) = opts.next_key(&["carriers", "first", "second"], None)? {
                let list = opts.cur.fixed_list::<4>()?;
                match key.name.as_str() {
                    "carriers" => carriers = Some(list),
                    "first" => first = Some(list),
                    _ => second = Some(list),
                }
            }
            Ok(Check::Section {
                carriers: missing(cur, carriers, "carriers")?,
                first: missing(cur, first, "first")?,
                second: missing(cur, second, "second")?,
            })
        }
        _ => Err(cur.error("expected 'desargues', 'converse', 'involution', 'example1' or 'section'")),
    }
}

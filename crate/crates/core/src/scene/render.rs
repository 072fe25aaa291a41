//! SVG output. Everything is drawn in `f64` pixel space after the exact
//! evaluation is done; numbers are printed with six decimals so identical
//! scenes give identical bytes.

use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use super::eval::{CheckDetail, Evaluation, Value};
use super::{Decl, Render, Scene};
use crate::conics::{line_conic_meet, polar, Conic, MeetResult};
use crate::kernel::Field;
use crate::moulton::{m_line_through, MoultonLine, MoultonPoint, WITNESS_NAMES};
use crate::p2::{join, LineP2, PointP2};

const WIDTH: f64 = 800.0;
const CONIC_SEGMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("scene has no render directive")]
    NoRenderDirective,
    #[error("viewport must have xmin < xmax and ymin < ymax")]
    EmptyViewport,
}

const STYLE: &str = "\
.point { fill: #000000; }
.label { font: 13px sans-serif; fill: #000000; }
.line { stroke: #555555; stroke-width: 1; fill: none; }
.axis { stroke: #c0392b; stroke-width: 2; fill: none; }
.fitted { stroke: #c0392b; stroke-width: 2; stroke-dasharray: 8 4; fill: none; }
.secant { stroke: #2471a3; stroke-width: 1; fill: none; }
.tangent { stroke: #7d3c98; stroke-width: 1; stroke-dasharray: 4 3; fill: none; }
.derived { fill: #c0392b; }
.witness { fill: #d35400; }
.infinity { stroke: #117a65; fill: #117a65; font: 12px sans-serif; }
.conic { stroke: #1e8449; stroke-width: 1.5; fill: none; }
.moulton-line { stroke: #555555; stroke-width: 1; fill: none; }
.section { stroke: #2471a3; stroke-width: 1.5; fill: none; }
";

/// Fixed six-decimal formatting without negative zero.
fn n(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Canvas {
    xmin: f64,
    ymin: f64,
    xmax: f64,
    ymax: f64,
    height: f64,
    body: String,
    /// Annotations stacked along the top edge.
    notes: usize,
}

impl Canvas {
    fn new(r: &Render) -> Result<Self, RenderError> {
        let [xmin, ymin, xmax, ymax] = [0, 1, 2, 3].map(|i| r.viewport[i].value.to_f64());
        if xmin >= xmax || ymin >= ymax {
            return Err(RenderError::EmptyViewport);
        }
        Ok(Canvas {
            xmin,
            ymin,
            xmax,
            ymax,
            height: WIDTH * (ymax - ymin) / (xmax - xmin),
            body: String::new(),
            notes: 0,
        })
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            (x - self.xmin) / (self.xmax - self.xmin) * WIDTH,
            (self.ymax - y) / (self.ymax - self.ymin) * self.height,
        )
    }

    fn center(&self) -> (f64, f64) {
        ((self.xmin + self.xmax) / 2.0, (self.ymin + self.ymax) / 2.0)
    }

    fn diagonal(&self) -> f64 {
        (self.xmax - self.xmin).hypot(self.ymax - self.ymin)
    }

    /// Liang-Barsky clipping of a segment to the viewport.
    fn clip(&self, p: (f64, f64), q: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
        let (dx, dy) = (q.0 - p.0, q.1 - p.1);
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for (pp, qq) in [
            (-dx, p.0 - self.xmin),
            (dx, self.xmax - p.0),
            (-dy, p.1 - self.ymin),
            (dy, self.ymax - p.1),
        ] {
            if pp == 0.0 {
                if qq < 0.0 {
                    return None;
                }
            } else {
                let r = qq / pp;
                if pp < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
        if t0 > t1 {
            return None;
        }
        Some(((p.0 + t0 * dx, p.1 + t0 * dy), (p.0 + t1 * dx, p.1 + t1 * dy)))
    }

    fn note(&mut self, text: &str) {
        self.notes += 1;
        let y = 16.0 * self.notes as f64;
        let _ = writeln!(
            self.body,
            "<text class=\"infinity\" x=\"{}\" y=\"{}\">{}</text>",
            n(8.0),
            n(y),
            escape(text)
        );
    }

    /// Draws a polyline in world coordinates; pieces outside the viewport
    /// are dropped.
    fn polyline(&mut self, class: &str, pts: &[(f64, f64)]) {
        let mut d = String::new();
        let mut last: Option<(f64, f64)> = None;
        for w in pts.windows(2) {
            let Some((a, b)) = self.clip(w[0], w[1]) else {
                last = None;
                continue;
            };
            let (pa, pb) = (self.px(a), self.px(b));
            if last != Some(a) {
                let _ = write!(d, "M {} {} ", n(pa.0), n(pa.1));
            }
            let _ = write!(d, "L {} {} ", n(pb.0), n(pb.1));
            last = Some(b);
        }
        if !d.is_empty() {
            let _ = writeln!(self.body, "<path class=\"{class}\" d=\"{}\"/>", d.trim_end());
        }
    }

    fn line<S: Field>(&mut self, class: &str, l: &LineP2<S>, name: &str) {
        if l.is_at_infinity() {
            let label = if name.is_empty() { class } else { name };
            self.note(&format!("{label}: the line at infinity"));
            return;
        }
        let [a, b, c] = *l.to_f64().coeffs();
        let (cx, cy) = self.center();
        let nn = a * a + b * b;
        let s = (a * cx + b * cy + c) / nn;
        let p0 = (cx - s * a, cy - s * b);
        let len = self.diagonal() / nn.sqrt();
        let p = (p0.0 - b * len, p0.1 + a * len);
        let q = (p0.0 + b * len, p0.1 - a * len);
        if let Some((p, q)) = self.clip(p, q) {
            let (pp, pq) = (self.px(p), self.px(q));
            let _ = writeln!(
                self.body,
                "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                n(pp.0),
                n(pp.1),
                n(pq.0),
                n(pq.1)
            );
        }
    }

    fn point<S: Field>(&mut self, class: &str, p: &PointP2<S>, label: &str) {
        if p.is_at_infinity() {
            self.arrow(p, label);
            return;
        }
        let [x, y, z] = *p.to_f64().coords();
        let (wx, wy) = (x / z, y / z);
        if wx < self.xmin || wx > self.xmax || wy < self.ymin || wy > self.ymax {
            return;
        }
        let (px, py) = self.px((wx, wy));
        let _ = writeln!(
            self.body,
            "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            n(px),
            n(py),
            n(if class == "point" { 3.5 } else { 3.0 })
        );
        if !label.is_empty() {
            let _ = writeln!(
                self.body,
                "<text class=\"label\" x=\"{}\" y=\"{}\">{}</text>",
                n(px + 6.0),
                n(py - 6.0),
                escape(label)
            );
        }
    }

    /// A point at infinity: an arrow at the edge of the figure in its
    /// direction, annotated with its coordinates.
    fn arrow<S: Field>(&mut self, p: &PointP2<S>, label: &str) {
        let [dx, dy, _] = *p.to_f64().coords();
        // Pixel space has y pointing down.
        let len = dx.hypot(dy);
        let u = (dx / len, -dy / len);
        let (cx, cy) = (WIDTH / 2.0, self.height / 2.0);
        let tx = if u.0 == 0.0 { f64::INFINITY } else { cx / u.0.abs() };
        let ty = if u.1 == 0.0 { f64::INFINITY } else { cy / u.1.abs() };
        let t = tx.min(ty) - 4.0;
        let head = (cx + t * u.0, cy + t * u.1);
        let tail = (head.0 - 36.0 * u.0, head.1 - 36.0 * u.1);
        let _ = writeln!(
            self.body,
            "<line class=\"infinity\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" marker-end=\"url(#arrow)\"/>",
            n(tail.0),
            n(tail.1),
            n(head.0),
            n(head.1)
        );
        let text = if label.is_empty() { format!("{p}") } else { format!("{label} {p}") };
        let (tx, ty) = (
            (tail.0 - 14.0 * u.0).clamp(4.0, WIDTH - 120.0),
            (tail.1 - 14.0 * u.1).clamp(14.0, self.height - 4.0),
        );
        let _ = writeln!(
            self.body,
            "<text class=\"infinity\" x=\"{}\" y=\"{}\">{}</text>",
            n(tx),
            n(ty),
            escape(&text)
        );
    }

    /// 64-segment polyline through the second intersections of the conic
    /// with the lines through `base`, a point on it. Pieces are split where
    /// the curve passes through infinity.
    fn conic<S: Field>(&mut self, c: &Conic<S>, base: &PointP2<S>) {
        let m = *c.to_f64().matrix();
        let [bx, by, bz] = *base.to_f64().coords();
        let p = [bx / bz, by / bz, 1.0];
        let form = |u: &[f64; 3], v: &[f64; 3]| -> f64 {
            (0..3).map(|i| (0..3).map(|j| u[i] * m[i][j] * v[j]).sum::<f64>()).sum()
        };
        let mut piece: Vec<(f64, f64)> = Vec::new();
        let mut last_sign = 0.0;
        for k in 0..=CONIC_SEGMENTS {
            let th = PI * k as f64 / CONIC_SEGMENTS as f64;
            let d = [th.cos(), th.sin(), 0.0];
            let w = form(&d, &d);
            let pd = form(&p, &d);
            if w.abs() < 1e-12 || (last_sign != 0.0 && w.signum() != last_sign) {
                self.polyline("conic", &piece);
                piece.clear();
            }
            if w.abs() >= 1e-12 {
                last_sign = w.signum();
                piece.push((p[0] - 2.0 * pd * d[0] / w, p[1] - 2.0 * pd * d[1] / w));
            } else {
                last_sign = 0.0;
            }
        }
        self.polyline("conic", &piece);
    }

    fn moulton_line(&mut self, l: &MoultonLine) {
        match l {
            MoultonLine::Vertical(c) => {
                let x = c.to_f64();
                self.polyline("moulton-line", &[(x, self.ymin), (x, self.ymax)]);
            }
            MoultonLine::Bent { m, b } => {
                let (m, b) = (m.to_f64(), b.to_f64());
                let span = self.diagonal();
                let (lo, hi) = (self.xmin - span, self.xmax + span);
                let mut xs = vec![lo];
                if lo < 0.0 && hi > 0.0 {
                    xs.push(0.0);
                }
                xs.push(hi);
                let pts: Vec<(f64, f64)> = xs
                    .iter()
                    .map(|&x| (x, if m < 0.0 && x >= 0.0 { 2.0 * m * x + b } else { m * x + b }))
                    .collect();
                self.polyline("moulton-line", &pts);
            }
        }
    }

    fn moulton_point(&mut self, class: &str, p: &MoultonPoint, label: &str) {
        let q = PointP2::affine(p.x.clone(), p.y.clone());
        self.point(class, &q, label);
    }

    fn finish(self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
            n(WIDTH),
            n(self.height),
            n(WIDTH),
            n(self.height)
        );
        out.push_str("<defs>\n<marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">\n<path d=\"M 0 0 L 8 4 L 0 8 z\" class=\"infinity\"/>\n</marker>\n</defs>\n");
        let _ = write!(out, "<style type=\"text/css\"><![CDATA[\n{STYLE}]]></style>\n");
        let _ = writeln!(
            out,
            "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
            n(WIDTH),
            n(self.height)
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn joins<S: Field>(pairs: &[(&PointP2<S>, &PointP2<S>)]) -> Vec<LineP2<S>> {
    pairs.iter().filter_map(|(p, q)| join(p, q).ok()).collect()
}

fn tangents_from<S: Field>(c: &Conic<S>, apex: &PointP2<S>) -> Vec<LineP2<f64>> {
    let c = c.to_f64();
    let a = apex.to_f64();
    let Ok(pl) = polar(&c, &a) else { return Vec::new() };
    match line_conic_meet(&c, &pl) {
        MeetResult::Two([p, q]) => joins(&[(&a, &p), (&a, &q)]),
        _ => Vec::new(),
    }
}

/// Renders the scene through its first render directive.
pub fn render_svg<S: Field>(scene: &Scene, ev: &Evaluation<S>) -> Result<String, RenderError> {
    let directive = scene.renders().next().ok_or(RenderError::NoRenderDirective)?;
    let mut cv = Canvas::new(directive)?;

    for (name, v) in &ev.values {
        match v {
            Value::Line(l) => cv.line("line", l, name),
            Value::Circle { conic, center, radius } => {
                let base = PointP2::affine(center.0.clone() + radius.clone(), center.1.clone());
                cv.conic(conic, &base);
            }
            Value::Conic(c) => {
                let first = scene.declarations().find_map(|d| match d {
                    Decl::Conic { name: nm, through } if &nm.name == name => Some(through[0].name.clone()),
                    _ => None,
                });
                if let Some(Value::Point(p)) = first.and_then(|f| ev.get(&f)) {
                    cv.conic(c, p);
                }
            }
            Value::Point(_) => {}
        }
    }

    for o in &ev.outcomes {
        match &o.detail {
            CheckDetail::Desargues { points, verdict } | CheckDetail::Converse { points, verdict } => {
                let [a, b, c, a2, b2, c2] = points;
                for l in joins(&[(a, a2), (b, b2), (c, c2), (a, b), (b, c), (c, a), (a2, b2), (b2, c2), (c2, a2)]) {
                    cv.line("line", &l, "");
                }
                if let Some(axis) = &verdict.axis {
                    cv.line("axis", axis, "axis");
                }
                for m in &verdict.side_meets {
                    cv.point("derived", m, "");
                }
                if let Some(center) = &verdict.perspective_center {
                    cv.point("derived", center, "");
                }
            }
            CheckDetail::Involution { .. } => {}
            CheckDetail::Example1 { report, apex, secants, .. } => {
                for s in secants {
                    cv.line("secant", s, "");
                }
                let conics: Vec<&Conic<S>> = ev
                    .values
                    .iter()
                    .filter_map(|(_, v)| match v {
                        Value::Circle { conic, .. } | Value::Conic(conic) => Some(conic),
                        _ => None,
                    })
                    .collect();
                for c in conics {
                    for t in tangents_from(c, apex) {
                        cv.line("tangent", &t, "");
                    }
                }
                if let Some(l) = &report.fitted_line {
                    cv.line("fitted", l, "fitted line");
                }
                for m in &report.meets {
                    cv.point("derived", m, "");
                }
                cv.point("derived", apex, "apex");
            }
            CheckDetail::Section { first, second, axis, .. } => {
                for quad in [first, second] {
                    let pts: Vec<(f64, f64)> = quad
                        .iter()
                        .chain(std::iter::once(&quad[0]))
                        .filter_map(|p| p.to_f64().to_affine())
                        .collect();
                    cv.polyline("section", &pts);
                }
                if let Some(axis) = axis {
                    cv.line("axis", axis, "axis");
                }
            }
            CheckDetail::Moulton { points, verdict, .. } => {
                moulton_figure(&mut cv, points, verdict.perspective_center.as_ref(), verdict.side_meets.as_ref());
            }
            CheckDetail::Witness(w) => {
                moulton_figure(&mut cv, &w.points, Some(&w.center), Some(&w.side_meets));
                for (p, name) in w.points.iter().zip(WITNESS_NAMES) {
                    cv.moulton_point("witness", p, name);
                }
            }
        }
    }

    for (name, v) in &ev.values {
        if let Value::Point(p) = v {
            cv.point("point", p, name);
        }
    }
    Ok(cv.finish())
}

fn moulton_figure(
    cv: &mut Canvas,
    p: &[MoultonPoint; 6],
    center: Option<&MoultonPoint>,
    meets: Option<&[MoultonPoint; 3]>,
) {
    for (i, j) in [(0, 3), (1, 4), (2, 5), (0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
        if let Ok(l) = m_line_through(&p[i], &p[j]) {
            cv.moulton_line(&l);
        }
    }
    if let Some(c) = center {
        cv.moulton_point("derived", c, "O");
    }
    for m in meets.into_iter().flatten() {
        cv.moulton_point("derived", m, "");
    }
}

//! SVG rendering of planar instances, shapes and cuts.

use std::fmt::Write;

use mayocut::measure::Component;
use mayocut::{Hyperplane, Scalar};

use crate::format::Document;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;
const COLORS: [&str; 2] = ["#1f77b4", "#d62728"];

/// World-to-canvas map with the y axis pointing up.
struct View {
    lo: [f64; 2],
    hi: [f64; 2],
    scale: f64,
}

impl View {
    fn new(lo: [f64; 2], hi: [f64; 2]) -> Self {
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let pad = 0.1 * span;
        let span = span + 2.0 * pad;
        let center = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        let lo = [center[0] - span / 2.0, center[1] - span / 2.0];
        let hi = [center[0] + span / 2.0, center[1] + span / 2.0];
        View {
            lo,
            hi,
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.lo[0]) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        SIZE - MARGIN - (y - self.lo[1]) * self.scale
    }
}

fn color(i: usize) -> &'static str {
    COLORS[i % COLORS.len()]
}

/// Callers check that the document is planar.
pub fn render(doc: &Document, plane: Option<&Hyperplane<f64>>) -> String {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |p: &[f64]| {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    };
    match doc {
        Document::Instance(inst) => {
            for a in inst.measures().iter().flat_map(|m| m.atoms()) {
                grow(a.point.to_f64().coords());
            }
        }
        Document::Shapes(shapes) => {
            for s in shapes {
                let (a, b) = s.bounds();
                grow(&a);
                grow(&b);
            }
        }
    }
    let view = View::new(lo, hi);

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#
    )
    .unwrap();
    match doc {
        Document::Instance(inst) => {
            let heaviest = inst
                .measures()
                .iter()
                .flat_map(|m| m.atoms())
                .map(|a| a.mass.to_f64())
                .fold(0.0, f64::max);
            for (i, m) in inst.measures().iter().enumerate() {
                writeln!(svg, r#"<g id="set-{i}" fill="{}">"#, color(i)).unwrap();
                for a in m.atoms() {
                    let p = a.point.to_f64();
                    let r = 2.0 + 4.0 * (a.mass.to_f64() / heaviest).sqrt();
                    writeln!(
                        svg,
                        r#"<circle cx="{:.3}" cy="{:.3}" r="{r:.3}"/>"#,
                        view.x(p.coords()[0]),
                        view.y(p.coords()[1])
                    )
                    .unwrap();
                }
                writeln!(svg, "</g>").unwrap();
            }
        }
        Document::Shapes(shapes) => {
            for (i, s) in shapes.iter().enumerate() {
                writeln!(
                    svg,
                    r#"<g id="shape-{i}" fill="none" stroke="{}" stroke-width="1.5">"#,
                    color(i)
                )
                .unwrap();
                for c in s.components() {
                    match c {
                        Component::Ball { center, radius, .. } => writeln!(
                            svg,
                            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#,
                            view.x(center[0]),
                            view.y(center[1]),
                            radius * view.scale
                        ),
                        Component::Box { min, max, .. } => writeln!(
                            svg,
                            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
                            view.x(min[0]),
                            view.y(max[1]),
                            (max[0] - min[0]) * view.scale,
                            (max[1] - min[1]) * view.scale
                        ),
                    }
                    .unwrap();
                }
                writeln!(svg, "</g>").unwrap();
            }
        }
    }
    if let Some(h) = plane {
        let ([x0, y0], [x1, y1]) = line_ends(h, &view);
        writeln!(
            svg,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#000000" stroke-width="1.5"/>"##,
            view.x(x0),
            view.y(y0),
            view.x(x1),
            view.y(y1)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

/// Endpoints of `⟨u,x⟩ = c` across the view, parametrized along the
/// coordinate in which the line is less steep.
fn line_ends(h: &Hyperplane<f64>, view: &View) -> ([f64; 2], [f64; 2]) {
    let (u, c) = (h.normal(), *h.offset());
    if u[1].abs() >= u[0].abs() {
        let y = |x: f64| (c - u[0] * x) / u[1];
        ([view.lo[0], y(view.lo[0])], [view.hi[0], y(view.hi[0])])
    } else {
        let x = |y: f64| (c - u[1] * y) / u[0];
        ([x(view.lo[1]), view.lo[1]], [x(view.hi[1]), view.hi[1]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_document;

    #[test]
    fn horizontal_line_spans_the_view() {
        let doc = parse_document(
            r#"{"dimension": 2, "sets": [
            {"name": "A", "atoms": [{"point": [0, 0]}]},
            {"name": "B", "atoms": [{"point": [10, 10], "mass": 4}]}]}"#,
        )
        .unwrap();
        let h = Hyperplane::new(vec![0.0, 1.0], 5.0).unwrap();
        let svg = render(&doc, Some(&h));
        assert!(
            svg.contains(r#"<line x1="20.000" y1="300.000" x2="580.000" y2="300.000""#),
            "{svg}"
        );
        // Heaviest atom gets the largest dot.
        assert!(svg.contains(r#"r="6.000""#) && svg.contains(r#"r="4.000""#));
        assert_eq!(svg, render(&doc, Some(&h)));
    }
}

//! Deterministic SVG plots of reparametrizations, paths and stop data.
//!
//! The plot area is the square `[32, 480]²` inside a `512 × 512` viewBox,
//! with the y axis pointing up. Coordinates are printed with three decimals.

use std::fmt::Write;

use num_traits::ToPrimitive;

use reparam_core::{Path, Rat, Reparam, StopData};

use crate::document::Document;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 32.0;
const SPAN: f64 = SIZE - 2.0 * MARGIN;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unrenderable(pub String);

impl std::fmt::Display for Unrenderable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for Unrenderable {}

pub fn render(doc: &Document) -> Result<String, Unrenderable> {
    match doc {
        Document::Reparam(f) => Ok(render_reparam(f)),
        Document::Class(c) => Ok(render_reparam(c.representative())),
        Document::StopData(s) => Ok(render_stopdata(s)),
        Document::Path(p) => render_path(p),
        Document::Witness(_) => Err(Unrenderable("witness documents have no plot".into())),
    }
}

fn f(q: &Rat) -> f64 {
    q.to_f64().expect("rationals convert to f64")
}

/// Maps `[lo, hi]` onto the plot width.
#[derive(Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn unit() -> Axis {
        Axis { lo: 0.0, hi: 1.0 }
    }

    fn fit<'a>(xs: impl Iterator<Item = &'a Rat>) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for x in xs {
            lo = lo.min(f(x));
            hi = hi.max(f(x));
        }
        if hi - lo <= 0.0 {
            Axis {
                lo: lo - 0.5,
                hi: hi + 0.5,
            }
        } else {
            Axis { lo, hi }
        }
    }

    fn x(&self, v: f64) -> f64 {
        MARGIN + SPAN * (v - self.lo) / (self.hi - self.lo)
    }

    fn y(&self, v: f64) -> f64 {
        SIZE - MARGIN - SPAN * (v - self.lo) / (self.hi - self.lo)
    }
}

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Svg {
        let mut body = String::new();
        body.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 512 512\" width=\"512\" height=\"512\">\n",
        );
        body.push_str(
            "  <rect class=\"frame\" x=\"32.000\" y=\"32.000\" width=\"448.000\" height=\"448.000\" fill=\"none\" stroke=\"#999999\"/>\n",
        );
        Svg { body }
    }

    fn band(&mut self, class: &str, x0: f64, x1: f64, y0: f64, y1: f64) {
        let (top, bottom) = (y0.min(y1), y0.max(y1));
        writeln!(
            self.body,
            "  <rect class=\"{class}\" x=\"{x0:.3}\" y=\"{top:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"#cfe0f3\"/>",
            x1 - x0,
            bottom - top
        )
        .unwrap();
    }

    fn line(&mut self, class: &str, x1: f64, y1: f64, x2: f64, y2: f64, width: f64) {
        writeln!(
            self.body,
            "  <line class=\"{class}\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"#1f3b73\" stroke-width=\"{width:.1}\"/>"
        )
        .unwrap();
    }

    fn dot(&mut self, class: &str, x: f64, y: f64) {
        writeln!(
            self.body,
            "  <circle class=\"{class}\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4.000\" fill=\"#c0392b\"/>"
        )
        .unwrap();
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn render_reparam(r: &Reparam) -> String {
    let ax = Axis::unit();
    let mut svg = Svg::new();
    for s in r.stop_data().stops() {
        svg.band(
            "plateau",
            ax.x(f(s.interval.lo())),
            ax.x(f(s.interval.hi())),
            ax.y(0.0),
            ax.y(1.0),
        );
    }
    for (a, b) in r.segments() {
        svg.line("graph", ax.x(f(&a.x)), ax.y(f(&a.y)), ax.x(f(&b.x)), ax.y(f(&b.y)), 2.0);
    }
    svg.finish()
}

fn render_stopdata(s: &StopData) -> String {
    // domain along the bottom, stop values along the top, each stop interval
    // joined to its value
    let ax = Axis::unit();
    let (bottom, top) = (ax.y(0.125), ax.y(0.875));
    let mut svg = Svg::new();
    svg.line("axis", ax.x(0.0), bottom, ax.x(1.0), bottom, 1.0);
    svg.line("axis", ax.x(0.0), top, ax.x(1.0), top, 1.0);
    for stop in s.stops() {
        let (lo, hi, v) = (f(stop.interval.lo()), f(stop.interval.hi()), f(&stop.value));
        svg.band("stop-interval", ax.x(lo), ax.x(hi), bottom - 6.0, bottom + 6.0);
        svg.line("pairing", ax.x(lo), bottom, ax.x(v), top, 1.0);
        svg.line("pairing", ax.x(hi), bottom, ax.x(v), top, 1.0);
        svg.dot("stop-value", ax.x(v), top);
    }
    svg.finish()
}

fn render_path(p: &Path) -> Result<String, Unrenderable> {
    let mut svg = Svg::new();
    match p.dim() {
        1 => {
            let (tx, vy) = (Axis::unit(), Axis::fit(p.vertices().map(|v| &v[0])));
            for stop in p.stop_data().stops {
                svg.band(
                    "plateau",
                    tx.x(f(stop.interval.lo())),
                    tx.x(f(stop.interval.hi())),
                    vy.y(vy.lo),
                    vy.y(vy.hi),
                );
            }
            for (a, b) in p.segments() {
                svg.line(
                    "graph",
                    tx.x(f(&a.t)),
                    vy.y(f(&a.point[0])),
                    tx.x(f(&b.t)),
                    vy.y(f(&b.point[0])),
                    2.0,
                );
            }
        }
        2 => {
            let coords = |k: usize| p.vertices().map(move |v| &v[k]);
            let (ax, ay) = (Axis::fit(coords(0)), Axis::fit(coords(1)));
            // a common scale keeps angles honest
            let half = (ax.hi - ax.lo).max(ay.hi - ay.lo) / 2.0;
            let centered = |a: Axis| {
                let mid = (a.lo + a.hi) / 2.0;
                Axis {
                    lo: mid - half,
                    hi: mid + half,
                }
            };
            let (ax, ay) = (centered(ax), centered(ay));
            for (a, b) in p.segments() {
                if a.point != b.point {
                    svg.line(
                        "trace",
                        ax.x(f(&a.point[0])),
                        ay.y(f(&a.point[1])),
                        ax.x(f(&b.point[0])),
                        ay.y(f(&b.point[1])),
                        2.0,
                    );
                }
            }
            for stop in p.stop_data().stops {
                svg.dot("stop", ax.x(f(&stop.value[0])), ay.y(f(&stop.value[1])));
            }
        }
        d => return Err(Unrenderable(format!("cannot plot a path in dimension {d}"))),
    }
    Ok(svg.finish())
}

//! Upper half-plane pictures of labeled polygons.
//!
//! Sides between finite cusps are drawn as half-ellipses standing in for
//! geodesic semicircles (the vertical scale is squeezed so the unit arc
//! fits the 1000×400 frame), sides at `∞` as vertical rays.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::polygon::{LabeledPolygon, SideLabel};

const WIDTH: f64 = 1000.0;
const HEIGHT: f64 = 400.0;
const X_MIN: f64 = -0.05;
const X_MAX: f64 = 1.05;
const BASE: f64 = 360.0;
const TOP: f64 = 20.0;

const PALETTE: [&str; 8] = ["#2ca02c", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#bcbd22", "#7f7f7f", "#1f3b73"];

fn px(x: f64) -> f64 {
    (x - X_MIN) / (X_MAX - X_MIN) * WIDTH
}

fn color(label: SideLabel) -> &'static str {
    match label {
        SideLabel::Vertical => "#1f77b4",
        SideLabel::Even => "#d62728",
        SideLabel::Odd => "#9467bd",
        SideLabel::Free => "#999999",
        SideLabel::Paired(k) => PALETTE[(k as usize) % PALETTE.len()],
    }
}

fn value(c: &crate::frac::ExtFrac) -> f64 {
    c.num() as f64 / c.den() as f64
}

pub fn render_svg(p: &LabeledPolygon) -> String {
    let sx = WIDTH / (X_MAX - X_MIN);
    let sy = (BASE - TOP) / 0.5;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<title>Gamma0({}) polygon, {} cusps</title>"#, p.level(), p.cusps().len());
    let _ = writeln!(s, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(s, r##"<line x1="0" y1="{BASE}" x2="{WIDTH}" y2="{BASE}" stroke="#cccccc"/>"##);

    let last = p.num_sides() - 1;
    for (i, &label) in p.labels().iter().enumerate() {
        let stroke = color(label);
        let dash = if label == SideLabel::Free { r#" stroke-dasharray="6 4""# } else { "" };
        let (x, y) = p.side(i);
        let (lx, ly, text) = if i == 0 || i == last {
            let at = if i == 0 { 0.0 } else { 1.0 };
            let xp = px(at);
            let _ = writeln!(
                s,
                r#"<line class="ray" x1="{xp:.2}" y1="{BASE}" x2="{xp:.2}" y2="0" stroke="{stroke}" stroke-width="2"/>"#
            );
            (xp + if i == 0 { -14.0 } else { 6.0 }, TOP + 20.0, label.code())
        } else {
            let (a, b) = (value(&x), value(&y));
            let rx = (b - a) / 2.0 * sx;
            let ry = (b - a) / 2.0 * sy;
            let _ = writeln!(
                s,
                r#"<path class="arc" d="M {:.2} {BASE} A {rx:.2} {ry:.2} 0 0 1 {:.2} {BASE}" fill="none" stroke="{stroke}" stroke-width="2"{dash}/>"#,
                px(a),
                px(b)
            );
            (px((a + b) / 2.0) - 4.0, BASE - ry - 4.0, label.code())
        };
        let _ = writeln!(
            s,
            r#"<text class="side-label" x="{lx:.2}" y="{ly:.2}" font-size="11" fill="{stroke}">{text}</text>"#
        );
    }

    for c in p.cusps().iter().filter(|c| !c.is_infinite()) {
        let xp = px(value(c));
        let _ = writeln!(s, r##"<circle cx="{xp:.2}" cy="{BASE}" r="2.5" fill="#000000"/>"##);
        let _ = writeln!(
            s,
            r#"<text class="cusp" x="{xp:.2}" y="{:.2}" font-size="10" text-anchor="middle">{c}</text>"#,
            BASE + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="cusp" x="{:.2}" y="14" font-size="12" text-anchor="middle">∞</text>"#,
        px(0.5)
    );
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(p: &LabeledPolygon, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(p)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

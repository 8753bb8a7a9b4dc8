//! SVG drawings of knot diagrams with the understrand broken at crossings.

use std::fmt::Write;

use stickknot::KnotDiagram;

pub const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
/// Gap left in the understrand, as a fraction of the drawing width.
pub const GAP_FRACTION: f64 = 0.02;

/// Renders the closed strand of `d`; `vertices` marks the polyline points
/// with dots (used for stick knots).
pub fn svg(d: &KnotDiagram, vertices: bool, title: &str) -> String {
    let pts = &d.points;
    let m = pts.len();
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in pts {
        lo = [lo[0].min(p[0]), lo[1].min(p[1])];
        hi = [hi[0].max(p[0]), hi[1].max(p[1])];
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let scale = (WIDTH - 2.0 * MARGIN) / span;
    let height = (hi[1] - lo[1]) * scale + 2.0 * MARGIN;
    let to_px = |p: [f64; 2]| [MARGIN + (p[0] - lo[0]) * scale, height - MARGIN - (p[1] - lo[1]) * scale];
    let px: Vec<[f64; 2]> = pts.iter().map(|&p| to_px(p)).collect();

    // arc length along the drawn strand
    let seg_len: Vec<f64> = (0..m)
        .map(|i| {
            let (a, b) = (px[i], px[(i + 1) % m]);
            (b[0] - a[0]).hypot(b[1] - a[1])
        })
        .collect();
    let mut start = vec![0.0; m + 1];
    for i in 0..m {
        start[i + 1] = start[i] + seg_len[i];
    }
    let total = start[m];
    let half_gap = 0.5 * GAP_FRACTION * WIDTH;

    let mut cuts: Vec<(f64, f64)> = Vec::new();
    for c in &d.crossings {
        let s = start[c.under] + c.under_param * seg_len[c.under];
        let (a, b) = (s - half_gap, s + half_gap);
        if a < 0.0 {
            cuts.push((a + total, total));
            cuts.push((0.0, b));
        } else if b > total {
            cuts.push((a, total));
            cuts.push((0.0, b - total));
        } else {
            cuts.push((a, b));
        }
    }
    cuts.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut visible: Vec<(f64, f64)> = Vec::new();
    let mut cursor = 0.0;
    for (a, b) in cuts {
        if a > cursor {
            visible.push((cursor, a));
        }
        cursor = f64::max(cursor, b);
    }
    if cursor < total {
        visible.push((cursor, total));
    }
    // a piece running through the start joins the last piece to the first
    if visible.len() > 1 && visible[0].0 == 0.0 && visible.last().unwrap().1 == total {
        let last = visible.pop().unwrap();
        visible[0] = (last.0, visible[0].1 + total);
    }

    let at = |s: f64| -> [f64; 2] {
        let s = s.rem_euclid(total);
        let i = start.partition_point(|&x| x <= s).saturating_sub(1).min(m - 1);
        let t = if seg_len[i] > 0.0 { (s - start[i]) / seg_len[i] } else { 0.0 };
        let (a, b) = (px[i], px[(i + 1) % m]);
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
    };

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (a, b) in visible {
        let mut line = vec![at(a)];
        for k in 0..=2 * m {
            let s = start[k % m] + if k >= m { total } else { 0.0 };
            if s > a && s < b {
                line.push(at(s));
            }
        }
        line.push(at(b));
        let coords: Vec<String> = line.iter().map(|p| format!("{:.3},{:.3}", p[0], p[1])).collect();
        writeln!(
            out,
            r#"<polyline fill="none" stroke="black" stroke-width="3" stroke-linejoin="round" points="{}"/>"#,
            coords.join(" ")
        )
        .unwrap();
    }
    if vertices {
        for p in &px {
            writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="crimson"/>"#, p[0], p[1]).unwrap();
        }
    }
    writeln!(out, "</svg>").unwrap();
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

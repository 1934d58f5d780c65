//! SVG drawings of wiring diagrams and line arrangements.

use std::fmt::Write as _;

use crate::diagram::{WireState, WiringDiagram};
use crate::faces::{count_triangles, Triangle};
use crate::geometry::{GeometryError, LineArrangement};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub label_wires: bool,
    pub highlight_triangles: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 400,
            margin: 20,
            label_wires: true,
            highlight_triangles: false,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), String> {
        if self.width == 0 || self.height == 0 {
            return Err("width and height must be positive".into());
        }
        if 2 * self.margin >= self.width.min(self.height) {
            return Err("margin leaves no room to draw".into());
        }
        Ok(())
    }
}

fn header(o: &RenderOptions) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
        w = o.width,
        h = o.height
    )
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

struct Layout {
    x0: f64,
    dx: f64,
    y0: f64,
    dy: f64,
    half: f64,
}

impl Layout {
    fn column_x(&self, k: usize) -> f64 {
        self.x0 + (k as f64 + 1.0) * self.dx
    }

    fn track_y(&self, pos: usize) -> f64 {
        self.y0 + pos as f64 * self.dy
    }

    fn switch_y(&self, row: usize) -> f64 {
        self.y0 + (row as f64 - 0.5) * self.dy
    }
}

fn triangle_corners(d: &WiringDiagram, t: &Triangle) -> Option<[(usize, usize); 3]> {
    let cols = d.columns();
    let close = (t.column + 1..cols.len()).find(|&k| cols[k].contains(t.row))?;
    let middle = (t.column + 1..close).find_map(|k| {
        [t.row - 1, t.row + 1]
            .into_iter()
            .find(|&r| r >= 1 && cols[k].contains(r))
            .map(|r| (k, r))
    })?;
    Some([(t.column, t.row), middle, (close, t.row)])
}

/// Tracks top to bottom, one column of switches per diagram column.
pub fn render_diagram(d: &WiringDiagram, o: &RenderOptions) -> String {
    let n = d.n();
    let m = d.columns().len();
    let (w, h, margin) = (o.width as f64, o.height as f64, o.margin as f64);
    let label_room = if o.label_wires { 24.0 } else { 0.0 };
    let dx = (w - 2.0 * margin - 2.0 * label_room) / (m as f64 + 1.0);
    let layout = Layout {
        x0: margin + label_room,
        dx,
        y0: margin,
        dy: if n > 1 {
            (h - 2.0 * margin) / (n - 1) as f64
        } else {
            0.0
        },
        half: dx * 0.3,
    };
    let mut out = header(o);

    if o.highlight_triangles {
        for t in &count_triangles(d).triangles {
            let Some(corners) = triangle_corners(d, t) else {
                continue;
            };
            let pts: Vec<String> = corners
                .iter()
                .map(|&(k, r)| format!("{:.2},{:.2}", layout.column_x(k), layout.switch_y(r)))
                .collect();
            writeln!(
                out,
                "<polygon class=\"triangle\" points=\"{}\" fill=\"#ffe08a\" stroke=\"none\"/>",
                pts.join(" ")
            )
            .unwrap();
        }
    }

    let x_end = layout.column_x(m);
    let mut state = WireState::identity(n);
    let mut paths: Vec<Vec<(f64, f64)>> = (0..n)
        .map(|p| vec![(layout.x0, layout.track_y(p))])
        .collect();
    for (k, c) in d.columns().iter().enumerate() {
        let xc = layout.column_x(k);
        for &r in c.rows() {
            let (a, b) = (state.wire_at(r - 1), state.wire_at(r));
            paths[a].push((xc - layout.half, layout.track_y(r - 1)));
            paths[a].push((xc + layout.half, layout.track_y(r)));
            paths[b].push((xc - layout.half, layout.track_y(r)));
            paths[b].push((xc + layout.half, layout.track_y(r - 1)));
            state.swap_row(r);
        }
    }
    for (wire, path) in paths.iter_mut().enumerate() {
        path.push((x_end, layout.track_y(state.position_of(wire))));
    }
    for (wire, path) in paths.iter().enumerate() {
        let pts: Vec<String> = path.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        writeln!(
            out,
            "<polyline class=\"wire\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
            pts.join(" "),
            PALETTE[wire % PALETTE.len()]
        )
        .unwrap();
    }
    for (k, c) in d.columns().iter().enumerate() {
        for &r in c.rows() {
            writeln!(
                out,
                "<circle class=\"switch\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"black\"/>",
                layout.column_x(k),
                layout.switch_y(r)
            )
            .unwrap();
        }
    }
    if o.label_wires {
        for p in 0..n {
            writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>",
                layout.x0 - 4.0,
                layout.track_y(p) + 4.0,
                p + 1
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Clips the segment of `y = m (x - a)` over `[x0, x1]` to `[y0, y1]`.
fn clip(
    m: f64,
    a: f64,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
) -> Option<((f64, f64), (f64, f64))> {
    let y = |x: f64| m * (x - a);
    let (mut lo, mut hi) = (x0, x1);
    if m != 0.0 {
        let (xa, xb) = (a + y0 / m, a + y1 / m);
        lo = lo.max(xa.min(xb));
        hi = hi.min(xa.max(xb));
    } else if !(y0..=y1).contains(&0.0) {
        return None;
    }
    (lo <= hi).then(|| ((lo, y(lo)), (hi, y(hi))))
}

/// Straight lines clipped to the bounding box of all crossings plus a
/// margin of a tenth of its size.
pub fn render_arrangement(a: &LineArrangement, o: &RenderOptions) -> Result<String, GeometryError> {
    let ev = a.evaluate()?;
    let k = a.len();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for i in 0..k {
        for j in i + 1..k {
            let c = ev.crossing(i, j)?;
            let (x, y) = (c.x.to_f64(), c.y.to_f64());
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    if k < 2 {
        (xmin, xmax, ymin, ymax) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad_x = ((xmax - xmin) * 0.1).max(1e-300);
    let pad_y = ((ymax - ymin) * 0.1).max(1e-300);
    let (xs, ys) = ((xmin - pad_x, xmax + pad_x), (ymin - pad_y, ymax + pad_y));
    let (w, h, margin) = (o.width as f64, o.height as f64, o.margin as f64);
    let sx = |x: f64| margin + (x - xs.0) / (xs.1 - xs.0) * (w - 2.0 * margin);
    let sy = |y: f64| h - margin - (y - ys.0) / (ys.1 - ys.0) * (h - 2.0 * margin);

    let mut out = header(o);
    for (i, line) in ev.slopes.iter().zip(&ev.anchors).enumerate() {
        let (m, anchor) = (line.0.to_f64(), line.1.to_f64());
        let Some(((x1, y1), (x2, y2))) = clip(m, anchor, xs, ys) else {
            continue;
        };
        writeln!(
            out,
            "<line class=\"line\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            sx(x1),
            sy(y1),
            sx(x2),
            sy(y2),
            PALETTE[i % PALETTE.len()]
        )
        .unwrap();
        if o.label_wires {
            writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>",
                sx(x2) + 2.0,
                sy(y2),
                i + 1
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn three_wires() {
        let d = WiringDiagram::from_rows(3, &[&[1], &[2], &[1]]).unwrap();
        let svg = render_diagram(&d, &RenderOptions::default());
        assert_eq!(count(&svg, "<polyline"), 3);
        assert_eq!(count(&svg, "class=\"switch\""), 3);
        assert_eq!(count(&svg, "<polygon"), 0);
        let svg = render_diagram(
            &d,
            &RenderOptions {
                highlight_triangles: true,
                ..RenderOptions::default()
            },
        );
        assert_eq!(count(&svg, "<polygon"), 1);
    }

    #[test]
    fn clipping() {
        assert!(clip(0.0, 0.0, (-1.0, 1.0), (1.0, 2.0)).is_none());
        let ((x1, y1), (x2, y2)) = clip(1.0, 0.0, (-5.0, 5.0), (-1.0, 1.0)).unwrap();
        assert_eq!((x1, y1, x2, y2), (-1.0, -1.0, 1.0, 1.0));
    }

    #[test]
    fn options_validate() {
        assert!(RenderOptions::default().validate().is_ok());
        let bad = RenderOptions {
            width: 0,
            ..RenderOptions::default()
        };
        assert!(bad.validate().is_err());
    }
}

//! Minimal SVG line plots: the front-view trajectory overlay and per-step
//! error curves. No plotting dependency; the files are small and the
//! geometry is simple enough to emit directly.

use std::fmt::Write as _;

const COLORS: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// One labelled polyline in plot coordinates.
pub struct Series {
    pub label: String,
    pub points: Vec<[f64; 2]>,
    pub dashed: bool,
}

/// Front view of trajectories: the observer faces the robot, so the
/// horizontal axis is −y (the robot's right appears on the left) and the
/// vertical axis is z. Positions come in as world-space [x, y, z].
pub fn front_view_series(label: impl Into<String>, positions: &[[f64; 3]], dashed: bool) -> Series {
    Series {
        label: label.into(),
        points: positions.iter().map(|p| [-p[1], p[2]]).collect(),
        dashed,
    }
}

/// Per-step curve (step index on the horizontal axis).
pub fn curve_series(label: impl Into<String>, values: impl IntoIterator<Item = (usize, f64)>) -> Series {
    Series {
        label: label.into(),
        points: values.into_iter().map(|(i, v)| [i as f64, v]).collect(),
        dashed: false,
    }
}

/// Renders the series into a self-contained SVG with axes, tick labels, and
/// a legend.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    const W: f64 = 720.0;
    const H: f64 = 540.0;
    const ML: f64 = 62.0; // margins
    const MR: f64 = 160.0;
    const MT: f64 = 42.0;
    const MB: f64 = 50.0;

    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in series {
        for p in &s.points {
            if p[0].is_finite() && p[1].is_finite() {
                x_min = x_min.min(p[0]);
                x_max = x_max.max(p[0]);
                y_min = y_min.min(p[1]);
                y_max = y_max.max(p[1]);
            }
        }
    }
    if !x_min.is_finite() {
        (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
    }
    if x_max - x_min < 1e-12 {
        x_max = x_min + 1.0;
    }
    if y_max - y_min < 1e-12 {
        y_max = y_min + 1.0;
    }
    let pad_x = 0.04 * (x_max - x_min);
    let pad_y = 0.04 * (y_max - y_min);
    x_min -= pad_x;
    x_max += pad_x;
    y_min -= pad_y;
    y_max += pad_y;

    let map_x = |x: f64| ML + (x - x_min) / (x_max - x_min) * (W - ML - MR);
    let map_y = |y: f64| H - MB - (y - y_min) / (y_max - y_min) * (H - MT - MB);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"##
    );
    let _ = writeln!(svg, r##"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"##,
        ML + (W - ML - MR) / 2.0,
        escape(title)
    );

    // frame and ticks
    let _ = writeln!(
        svg,
        r##"<rect x="{ML}" y="{MT}" width="{}" height="{}" fill="none" stroke="#888"/>"##,
        W - ML - MR,
        H - MT - MB
    );
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let xv = x_min + t * (x_max - x_min);
        let yv = y_min + t * (y_max - y_min);
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" fill="#444">{}</text>"##,
            map_x(xv),
            H - MB + 16.0,
            tick(xv)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="end" fill="#444">{}</text>"##,
            ML - 6.0,
            map_y(yv) + 4.0,
            tick(yv)
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{ML}" y1="{0:.1}" x2="{1}" y2="{0:.1}" stroke="#eee"/>"##,
            map_y(yv),
            W - MR
        );
    }
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" text-anchor="middle" fill="#222">{}</text>"##,
        ML + (W - ML - MR) / 2.0,
        H - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r##"<text x="16" y="{}" text-anchor="middle" fill="#222" transform="rotate(-90 16 {})">{}</text>"##,
        MT + (H - MT - MB) / 2.0,
        MT + (H - MT - MB) / 2.0,
        escape(y_label)
    );

    for (idx, s) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let mut path = String::new();
        let mut pen_down = false;
        for p in &s.points {
            if !(p[0].is_finite() && p[1].is_finite()) {
                pen_down = false;
                continue;
            }
            let cmd = if pen_down { 'L' } else { 'M' };
            let _ = write!(path, "{cmd}{:.2} {:.2} ", map_x(p[0]), map_y(p[1]));
            pen_down = true;
        }
        let dash = if s.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="none" stroke="{color}" stroke-width="1.6"{dash}/>"##,
            path.trim_end()
        );
        let ly = MT + 14.0 + idx as f64 * 16.0;
        let _ = writeln!(
            svg,
            r##"<line x1="{0}" y1="{ly}" x2="{1}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>"##,
            W - MR + 10.0,
            W - MR + 34.0
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" fill="#222">{}</text>"##,
            W - MR + 40.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if a >= 100.0 {
        format!("{v:.0}")
    } else if a >= 1.0 {
        format!("{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

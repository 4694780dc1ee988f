//! Minimal deterministic SVG scatter plot with an optional fitted curve.

use std::fmt::Write as _;

use newsort_core::format::format_sig;
use newsort_core::regression::predict;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 60.0;
/// Points on the fitted polyline.
pub const CURVE_POINTS: usize = 200;

/// Tick positions at a 1, 2 or 5 times power-of-ten step covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

/// Widens a degenerate or tight range and pads it by 5%.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
        let half = lo.abs().max(1.0) * 0.5;
        return (lo - half, hi + half);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

fn range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn num(v: f64) -> String {
    format!("{v:.2}")
}

pub fn render(xs: &[f64], ys: &[f64], coefficients: Option<&[f64]>, xlabel: &str, ylabel: &str) -> String {
    let (x_lo, x_hi) = range(xs.iter().copied());
    let curve: Vec<(f64, f64)> = match coefficients {
        Some(c) => (0..CURVE_POINTS)
            .map(|i| {
                let x = x_lo + (x_hi - x_lo) * i as f64 / (CURVE_POINTS - 1) as f64;
                (x, predict(c, x))
            })
            .collect(),
        None => Vec::new(),
    };
    let (x0, x1) = padded(x_lo, x_hi);
    let (y0, y1) = {
        let (lo, hi) = range(ys.iter().copied().chain(curve.iter().map(|p| p.1)));
        padded(lo, hi)
    };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (bottom, right) = (TOP + plot_h, LEFT + plot_w);
    let _ = writeln!(
        svg,
        r#"<path d="M{LEFT} {TOP} V{bottom} H{right}" fill="none" stroke="black"/>"#
    );
    for t in ticks(x0, x1) {
        let x = num(sx(t));
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{bottom}" x2="{x}" y2="{}" stroke="black"/>"#,
            bottom + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            bottom + 18.0,
            format_sig(t, 6)
        );
    }
    for t in ticks(y0, y1) {
        let y = num(sy(t));
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="black"/>"#,
            LEFT - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            LEFT - 8.0,
            format_sig(t, 6)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        num(LEFT + plot_w / 2.0),
        HEIGHT - 15.0,
        escape(xlabel)
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        num(TOP + plot_h / 2.0),
        escape(ylabel)
    );
    if !curve.is_empty() {
        let pts: Vec<String> = curve
            .iter()
            .map(|&(x, y)| format!("{},{}", num(sx(x)), num(sy(y))))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
    }
    for (&x, &y) in xs.iter().zip(ys) {
        let _ = writeln!(
            svg,
            r#"<circle cx="{}" cy="{}" r="3.5" fill="firebrick"/>"#,
            num(sx(x)),
            num(sy(y))
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tick_steps() {
        assert_eq!(ticks(0.0, 10.0), [0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert_eq!(ticks(2.75, 52.25), [10.0, 20.0, 30.0, 40.0, 50.0]);
        assert!(ticks(0.001, 0.004).len() >= 3);
    }

    #[test]
    fn single_point_still_renders() {
        let svg = render(&[1.0], &[2.0], None, "x", "y");
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("NaN"));
    }
}

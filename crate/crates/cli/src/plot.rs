//! Minimal SVG line chart of mean concurrence against `l0`.

use std::collections::BTreeMap;
use std::fmt::Write;

use mepnet_core::{AggregateRow, Strategy, TopologyKind};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

fn color(t: TopologyKind) -> &'static str {
    match t {
        TopologyKind::Rn => "#1f77b4",
        TopologyKind::Ban => "#ff7f0e",
        TopologyKind::Tln => "#2ca02c",
        TopologyKind::Sln => "#d62728",
        TopologyKind::Hln => "#9467bd",
    }
}

fn dash(s: &Strategy) -> Option<&'static str> {
    match s {
        Strategy::Spf => None,
        Strategy::Spl => Some("8 4"),
        Strategy::Custom(_) => Some("4 2 1 2"),
        Strategy::Baseline => Some("2 4"),
    }
}

/// Series key as it appears in the legend.
fn label(t: TopologyKind, s: &Strategy, k: usize) -> String {
    match s {
        Strategy::Baseline => format!("{t} {s}"),
        _ => format!("{t} {s} k={k}"),
    }
}

/// Renders one polyline per (topology, strategy, k). Callers must pass at
/// least one row.
pub fn render_svg(rows: &[AggregateRow]) -> String {
    type Series<'a> = (TopologyKind, &'a Strategy, usize, Vec<(f64, f64)>);
    let mut series: BTreeMap<(&'static str, String, usize), Series> = BTreeMap::new();
    for r in rows {
        let entry = series
            .entry((r.topology.name(), r.strategy.to_string(), r.k))
            .or_insert((r.topology, &r.strategy, r.k, Vec::new()));
        entry.3.push((f64::from(r.l0), r.mean_concurrence));
    }
    for s in series.values_mut() {
        s.3.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    let xs = rows.iter().map(|r| f64::from(r.l0));
    let ys = rows.iter().map(|r| r.mean_concurrence);
    let (mut x0, mut x1) = bounds(xs);
    let (mut y0, mut y1) = bounds(ys);
    if x1 - x0 < 1.0 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let pad = ((y1 - y0) * 0.05).max(0.005);
    y0 -= pad;
    y1 += pad;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let py = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );

    let first = x0.ceil() as i64;
    let last = x1.floor() as i64;
    for l in first..=last {
        let x = px(l as f64);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{l}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0
        );
    }
    for i in 0..=5 {
        let y = y0 + (y1 - y0) * f64::from(i) / 5.0;
        let yy = py(y);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{yy:.2}" x2="{LEFT}" y2="{yy:.2}" stroke="black"/><line x1="{LEFT}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{y:.4}</text>"##,
            LEFT - 5.0,
            LEFT + plot_w,
            LEFT - 8.0,
            yy + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">shortest-path distance l0 (hops)</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">mean concurrence</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, (topology, strategy, k, points)) in series.values().enumerate() {
        let stroke = color(*topology);
        let dash_attr = dash(strategy).map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"{dash_attr}/>"#,
            coords.join(" ")
        );
        for &(x, y) in points {
            let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{stroke}"/>"#, px(x), py(y));
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{stroke}" stroke-width="1.5"{dash_attr}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 30.0,
            lx + 36.0,
            ly + 4.0,
            label(*topology, strategy, *k)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

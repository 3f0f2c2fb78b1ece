//! SVG rendering of configurations.

use std::fmt::Write;

use crate::engine::PLConfiguration;

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Renders the curves and finite punctures. Output is deterministic.
pub fn to_svg(cfg: &PLConfiguration) -> String {
    let scale = 80.0;
    let pts = cfg.curves.iter().flatten().map(|p| p.approx());
    let punct = (1..cfg.b).map(|i| (i as f64, 0.0));
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, -1.0f64, cfg.b as f64, 1.0f64);
    for (x, y) in pts.chain(punct) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (w, h) = ((x1 - x0 + 1.0) * scale, (y1 - y0 + 1.0) * scale);
    let tx = |x: f64| (x - x0 + 0.5) * scale;
    let ty = |y: f64| (y1 - y + 0.5) * scale;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}">"#).unwrap();
    for (i, poly) in cfg.curves.iter().enumerate() {
        let d: Vec<String> = poly
            .iter()
            .map(|p| {
                let (x, y) = p.approx();
                format!("{:.3},{:.3}", tx(x), ty(y))
            })
            .collect();
        writeln!(
            s,
            r#"  <polygon points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            d.join(" "),
            COLORS[i % COLORS.len()]
        )
        .unwrap();
    }
    for i in 1..cfg.b {
        writeln!(s, r#"  <circle cx="{:.3}" cy="{:.3}" r="3" fill="black"/>"#, tx(i as f64), ty(0.0)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::block_curve;

    #[test]
    fn renders_each_curve_and_puncture() {
        let cfg = crate::engine::realize(&block_curve(6, &[2, 3]).unwrap()).unwrap();
        let s = to_svg(&cfg);
        assert_eq!(s.matches("<polygon").count(), 1);
        assert_eq!(s.matches("<circle").count(), 5);
        assert_eq!(s, to_svg(&cfg));
    }
}

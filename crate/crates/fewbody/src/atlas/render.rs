//! Deterministic SVG 1.1 rendering of stability maps: a ternary diagram for
//! triangle scans, a square for charge-plane scans, four fixed status
//! classes in the legend.

use super::{CellCoords, MapChart, StabilityMap};
use crate::deduce::Status;

const CLASSES: [(Status, &str, &str); 4] = [
    (Status::CertifiedStable, "#2e7d32", "certified stable"),
    (Status::NumericallyStable, "#1565c0", "numerically stable"),
    (Status::Unknown, "#bdbdbd", "unknown"),
    (Status::CertifiedUnstable, "#c62828", "certified unstable"),
];

fn color(status: Status) -> &'static str {
    CLASSES.iter().find(|(s, _, _)| *s == status).map(|(_, c, _)| *c).unwrap()
}

fn legend(out: &mut String, x: f64, y: f64) {
    out.push_str(&format!(
        "<g font-family=\"sans-serif\" font-size=\"14\" transform=\"translate({x:.1},{y:.1})\">\n"
    ));
    for (k, (_, color, label)) in CLASSES.iter().enumerate() {
        let dy = k as f64 * 22.0;
        out.push_str(&format!(
            "<circle cx=\"8\" cy=\"{:.1}\" r=\"6\" fill=\"{color}\"/>\
             <text x=\"20\" y=\"{:.1}\">{label}</text>\n",
            dy + 8.0,
            dy + 13.0
        ));
    }
    out.push_str("</g>\n");
}

/// Render a map to an SVG document. Output bytes are a pure function of the
/// map contents.
pub fn render_svg(map: &StabilityMap) -> String {
    match map.chart {
        MapChart::Simplex { q2, q3 } => render_triangle(map, q2, q3),
        MapChart::ChargePlane { x } => render_charge_plane(map, x),
    }
}

fn render_triangle(map: &StabilityMap, q2: f64, q3: f64) -> String {
    let (w, h) = (860.0, 760.0);
    // summit 1 on top, summit 3 on the lower left (paper orientation)
    let v1 = [430.0, 70.0];
    let v2 = [770.0, 660.0];
    let v3 = [90.0, 660.0];
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<polygon points=\"{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}\" fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\"/>\n",
        v1[0], v1[1], v2[0], v2[1], v3[0], v3[1]
    ));
    out.push_str(&format!(
        "<g font-family=\"sans-serif\" font-size=\"18\" fill=\"#333\">\
         <text x=\"{:.1}\" y=\"{:.1}\">1</text>\
         <text x=\"{:.1}\" y=\"{:.1}\">2</text>\
         <text x=\"{:.1}\" y=\"{:.1}\">3</text></g>\n",
        v1[0] - 5.0,
        v1[1] - 12.0,
        v2[0] + 10.0,
        v2[1] + 6.0,
        v3[0] - 24.0,
        v3[1] + 6.0
    ));
    out.push_str(&format!(
        "<text x=\"20\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#333\">mass triangle, q2 = {q2:.3}, q3 = {q3:.3}, h = {:.3}</text>\n",
        map.resolution
    ));
    let r = (6.0 * map.resolution / 0.05).clamp(2.0, 9.0);
    for cell in &map.cells {
        if let CellCoords::Simplex(a) = cell.coords {
            let x = a[0] * v1[0] + a[1] * v2[0] + a[2] * v3[0];
            let y = a[0] * v1[1] + a[1] * v2[1] + a[2] * v3[1];
            out.push_str(&format!(
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r:.1}\" fill=\"{}\"/>\n",
                color(cell.status)
            ));
        }
    }
    legend(&mut out, 20.0, 680.0);
    out.push_str("</svg>\n");
    out
}

fn render_charge_plane(map: &StabilityMap, x_masses: [f64; 3]) -> String {
    let (w, h) = (820.0, 760.0);
    let q_max = map
        .cells
        .iter()
        .filter_map(|c| match c.coords {
            CellCoords::Charge(q) => Some(q[0].max(q[1])),
            _ => None,
        })
        .fold(1.0_f64, f64::max);
    let (x0, y0, side) = (90.0, 660.0, 580.0);
    let to_px = |q2: f64, q3: f64| -> (f64, f64) {
        (x0 + q2 / q_max * side, y0 - q3 / q_max * side)
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<rect x=\"{x0:.1}\" y=\"{:.1}\" width=\"{side:.1}\" height=\"{side:.1}\" fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\"/>\n",
        y0 - side
    ));
    out.push_str(&format!(
        "<g font-family=\"sans-serif\" font-size=\"16\" fill=\"#333\">\
         <text x=\"{:.1}\" y=\"{:.1}\">q2</text>\
         <text x=\"{:.1}\" y=\"{:.1}\">q3</text></g>\n",
        x0 + side + 12.0,
        y0 + 5.0,
        x0 - 40.0,
        y0 - side + 5.0
    ));
    out.push_str(&format!(
        "<text x=\"20\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#333\">charge plane at x = ({:.4}, {:.4}, {:.4})</text>\n",
        x_masses[0], x_masses[1], x_masses[2]
    ));
    // dividing curve q2^2/(x1+x2) = q3^2/(x1+x3): a straight ray from the origin
    let slope = ((x_masses[0] + x_masses[2]) / (x_masses[0] + x_masses[1])).sqrt();
    let q2_end = if slope >= 1.0 { q_max / slope } else { q_max };
    let (px0, py0) = to_px(0.0, 0.0);
    let (px1, py1) = to_px(q2_end, q2_end * slope);
    out.push_str(&format!(
        "<line x1=\"{px0:.2}\" y1=\"{py0:.2}\" x2=\"{px1:.2}\" y2=\"{py1:.2}\" stroke=\"#555\" stroke-dasharray=\"6,4\" stroke-width=\"1.2\"/>\n"
    ));
    let r = (side / (q_max / map.resolution) / 2.6).clamp(2.0, 10.0);
    for cell in &map.cells {
        if let CellCoords::Charge(q) = cell.coords {
            let (px, py) = to_px(q[0], q[1]);
            out.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"{r:.1}\" fill=\"{}\"/>\n",
                color(cell.status)
            ));
        }
    }
    legend(&mut out, 660.0, 80.0);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{scan_triangle, ScanConfig};

    #[test]
    fn svg_has_four_legend_classes_and_nodes() {
        let map = scan_triangle(1.0, 1.0, 0.2, &ScanConfig::default(), None).unwrap();
        let svg = render_svg(&map);
        assert!(svg.starts_with("<svg"));
        for (_, _, label) in CLASSES {
            assert!(svg.contains(label), "missing legend class {label}");
        }
        let circles = svg.matches("<circle").count();
        // one circle per node plus the four legend swatches
        assert_eq!(circles, map.cells.len() + 4);
    }

    #[test]
    fn empty_map_renders_blank_triangle_with_legend() {
        let map = StabilityMap {
            chart: MapChart::Simplex { q2: 1.0, q3: 1.0 },
            resolution: 0.1,
            cells: vec![],
            metadata: crate::atlas::MapMetadata {
                seed: 0,
                solver: None,
                rulebase_version: "rulebase-1".into(),
            },
        };
        let svg = render_svg(&map);
        assert!(svg.contains("<polygon"));
        assert_eq!(svg.matches("<circle").count(), 4); // legend only
    }
}

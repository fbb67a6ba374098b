//! Scan the mass triangle at unit charges and write the stability diagram
//! as CSV and SVG: the band along the symmetric axis is certified stable,
//! the region behind the two anchor points is certified unstable.
//!
//! ```bash
//! cargo run --release -p fewbody --example triangle_map
//! ```

use fewbody::atlas::{render, scan_triangle, write_csv, ScanConfig};
use fewbody::deduce::Status;

fn main() {
    let map = scan_triangle(1.0, 1.0, 0.05, &ScanConfig::default(), None).unwrap();
    let count = |s: Status| map.cells.iter().filter(|c| c.status == s).count();
    println!(
        "{} nodes at h = {}: {} certified stable, {} certified unstable, {} unknown",
        map.cells.len(),
        map.resolution,
        count(Status::CertifiedStable),
        count(Status::CertifiedUnstable),
        count(Status::Unknown)
    );
    std::fs::write("triangle_map.csv", write_csv(&map)).unwrap();
    std::fs::write("triangle_map.svg", render::render_svg(&map)).unwrap();
    println!("wrote triangle_map.csv and triangle_map.svg");

    // a second chart at equal charges 1.5: the stability band is gone
    let hot = scan_triangle(1.5, 1.5, 0.05, &ScanConfig::default(), None).unwrap();
    let unstable = hot.cells.iter().filter(|c| c.status == Status::CertifiedUnstable).count();
    println!(
        "q2 = q3 = 1.5: {} of {} nodes certified unstable (overcritical equal charges)",
        unstable,
        hot.cells.len()
    );
}

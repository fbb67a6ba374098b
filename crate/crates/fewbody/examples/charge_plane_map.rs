//! Scan the (q2, q3) charge plane at a fixed mass point and render it with
//! the threshold dividing ray overlaid. Sub-unit charges are certified
//! stable everywhere; large charges lose stability by charge counting and
//! the overcritical-charge rules.
//!
//! ```bash
//! cargo run --release -p fewbody --example charge_plane_map
//! ```

use fewbody::atlas::{render, scan_charge_plane, write_csv, ScanConfig};
use fewbody::deduce::Status;

fn main() {
    // infinitely heavy particle 1 with two equal-mass satellites
    let x = [0.0, 0.5, 0.5];
    let map = scan_charge_plane(&x, 3.0, 0.1, &ScanConfig::default(), None).unwrap();
    let count = |s: Status| map.cells.iter().filter(|c| c.status == s).count();
    println!(
        "{} nodes: {} certified stable, {} certified unstable, {} unknown",
        map.cells.len(),
        count(Status::CertifiedStable),
        count(Status::CertifiedUnstable),
        count(Status::Unknown)
    );
    std::fs::write("charge_plane.csv", write_csv(&map)).unwrap();
    std::fs::write("charge_plane.svg", render::render_svg(&map)).unwrap();
    println!("wrote charge_plane.csv and charge_plane.svg");
}

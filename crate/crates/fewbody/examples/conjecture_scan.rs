//! Exploratory scan of the conjecture "a 2+2 four-body system is stable
//! whenever one of its three-body subsystems is stable". The solver is
//! one-sided, so a sample can support the conjecture or surface a
//! counterexample candidate, never refute it.
//!
//! ```bash
//! cargo run --release -p fewbody --example conjecture_scan
//! ```

use fewbody::atlas::conjecture_scan;
use fewbody::varsolve::SolverConfig;

fn main() {
    let cfg = SolverConfig { max_basis: 120, candidates_per_step: 20, ..Default::default() };
    let report = conjecture_scan(6, 11, &cfg).unwrap();
    for s in &report.samples {
        let subs: Vec<String> = s.subsystem_statuses.iter().map(|st| st.to_string()).collect();
        println!("{}", s.system);
        println!("  subsystems: {}", subs.join(", "));
        println!("  four-body:  {}", s.fourbody_status);
        println!(
            "  -> {}\n",
            if !s.hypothesis_met {
                "excluded (no stable subsystem)"
            } else if s.consistent {
                "supports the conjecture"
            } else {
                "counterexample candidate (one-sided numerics: not a refutation)"
            }
        );
    }
    println!(
        "supporting {}, candidates {}, excluded {}",
        report.supporting, report.candidates, report.excluded
    );
}

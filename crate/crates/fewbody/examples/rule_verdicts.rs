//! Run the deduction engine over a gallery of named systems and print each
//! verdict with its provenance chain.
//!
//! ```bash
//! cargo run --release -p fewbody --example rule_verdicts
//! ```

use fewbody::deduce::Engine;
use fewbody::masses::*;
use fewbody::systems::ParticleSystem;

fn main() {
    let engine = Engine::new();
    let gallery: Vec<(&str, ParticleSystem)> = vec![
        (
            "p_inf e- e-  (hydrogen anion, infinitely heavy proton)",
            ParticleSystem::from_masses(&[f64::INFINITY, 1.0, 1.0], &[1.0, -1.0, -1.0]).unwrap(),
        ),
        (
            "e+ e- e-  (positronium anion)",
            ParticleSystem::new(&[1.0, 1.0, 1.0], &[1.0, -1.0, -1.0]).unwrap(),
        ),
        (
            "p e+ e-",
            ParticleSystem::from_masses(&[PROTON, 1.0, 1.0], &[1.0, 1.0, -1.0]).unwrap(),
        ),
        (
            "p mu+ mu-",
            ParticleSystem::from_masses(&[PROTON, MUON, MUON], &[1.0, 1.0, -1.0]).unwrap(),
        ),
        (
            "p mu- e-",
            ParticleSystem::from_masses(&[PROTON, MUON, 1.0], &[1.0, -1.0, -1.0]).unwrap(),
        ),
        (
            "p pbar e-",
            ParticleSystem::from_masses(&[PROTON, PROTON, 1.0], &[1.0, -1.0, -1.0]).unwrap(),
        ),
        (
            "alpha p e-  (overcritical charge 2 on the heavier nucleus)",
            ParticleSystem::from_masses(&[ALPHA, PROTON, 1.0], &[2.0, 1.0, -1.0]).unwrap(),
        ),
        (
            "alpha t mu-",
            ParticleSystem::from_masses(&[ALPHA, TRITON, MUON], &[2.0, 1.0, -1.0]).unwrap(),
        ),
        (
            "q2 = q3 = 0.9, arbitrary masses",
            ParticleSystem::from_masses(&[PROTON, MUON, 1.0], &[1.0, -0.9, -0.9]).unwrap(),
        ),
        (
            "pi+ mu- mu+  (band evidence insufficient: honest unknown)",
            ParticleSystem::from_masses(&[PION, MUON, MUON], &[1.0, -1.0, 1.0]).unwrap(),
        ),
    ];
    for (name, sys) in gallery {
        let v = engine.evaluate_rules(&sys).unwrap();
        println!("{name}");
        println!("  -> {}", v.status);
        for rule in &v.provenance {
            println!("     {}: {}", rule.rule, rule.citation);
        }
        if let Some(note) = &v.note {
            println!("     note: {note}");
        }
        println!();
    }

    // the certified boundary of the p z+ z- family
    let report = engine.rules.pzz_report().unwrap();
    println!(
        "p z+ z- family: certified unstable for m_p/m_z >= {:.4} (claimed value {} is unverified)",
        report.certified_above, report.unverified_claim
    );
}

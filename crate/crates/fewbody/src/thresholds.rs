//! Analytic two-body Coulomb energies and dissociation channels.
//!
//! Units are hartree-like: `hbar = |e| = 1`, masses in the caller's mass
//! unit. An attractive pair `(i, j)` has ground energy
//! `-(q_i q_j)^2 / (2 (x_i + x_j))`; repulsive and chargeless pairs carry no
//! bound state and contribute 0 to thresholds.

use crate::systems::{ChargeStructure, ParticleSystem};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThresholdError {
    /// Both members of an attractive pair are infinitely heavy: the pair
    /// energy diverges. Surfaced as an error rather than a large number so
    /// deduction near triangle vertices stays sound.
    #[error("attractive pair of two infinite masses: energy diverges")]
    DegenerateLimit,
    #[error("no attractive pair: the system has no two-body threshold")]
    NoThreshold,
    #[error("pair-level thresholds are incomplete for {0}")]
    Unsupported(String),
}

/// One dissociation channel: a partition into bound fragments and its energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelEnergy {
    /// Human-readable partition, e.g. `"(1,2) + 3"` (1-based indices).
    pub partition: String,
    /// Total channel energy, `<= 0`.
    pub energy: f64,
}

/// Ground-state energy of the two-body Coulomb system, or 0 when no bound
/// state exists (repulsive or chargeless pair).
pub fn pair_energy(x_i: f64, x_j: f64, q_i: f64, q_j: f64) -> Result<f64, ThresholdError> {
    let qq = q_i * q_j;
    if qq >= 0.0 {
        return Ok(0.0);
    }
    let xsum = x_i + x_j;
    if xsum <= 0.0 {
        return Err(ThresholdError::DegenerateLimit);
    }
    Ok(-(qq * qq) / (2.0 * xsum))
}

/// Lowest dissociation threshold of a canonical system.
///
/// Three bodies: the deeper of the channels `(1,2)+3` and `(1,3)+2` (the
/// same-sign pair is unbound). Four bodies with a 2+2 charge split: the
/// deeper of the two pairings into neutral-forming pairs; splits leaving
/// oppositely charged fragments are never thresholds because the residual
/// Coulomb attraction always binds. 1+3 splits need three-body energies and
/// are not resolved at pair level.
pub fn lowest_threshold(sys: &ParticleSystem) -> Result<ChannelEnergy, ThresholdError> {
    let structure = sys
        .charge_structure()
        .map_err(|_| ThresholdError::NoThreshold)?;
    let x = sys.x();
    let q = sys.q();
    match structure {
        ChargeStructure::ThreeBody => {
            let mut best: Option<ChannelEnergy> = None;
            for (j, spectator) in [(1usize, 3usize), (2usize, 2usize)] {
                if q[0] * q[j] >= 0.0 {
                    continue;
                }
                let e = pair_energy(x[0], x[j], q[0], q[j])?;
                let ch = ChannelEnergy { partition: format!("(1,{}) + {}", j + 1, spectator), energy: e };
                if best.as_ref().map_or(true, |b| ch.energy < b.energy) {
                    best = Some(ch);
                }
            }
            best.ok_or(ThresholdError::NoThreshold)
        }
        ChargeStructure::TwoTwo => {
            // canonical order: [+, +, -, -]; the two 2+2 pairings
            let pairings = [((0usize, 2usize), (1usize, 3usize)), ((0, 3), (1, 2))];
            let mut best: Option<ChannelEnergy> = None;
            for ((a, b), (c, d)) in pairings {
                let e = pair_energy(x[a], x[b], q[a], q[b])?
                    + pair_energy(x[c], x[d], q[c], q[d])?;
                let ch = ChannelEnergy {
                    partition: format!("({},{}) + ({},{})", a + 1, b + 1, c + 1, d + 1),
                    energy: e,
                };
                if best.as_ref().map_or(true, |bst| ch.energy < bst.energy) {
                    best = Some(ch);
                }
            }
            best.ok_or(ThresholdError::NoThreshold)
        }
        ChargeStructure::OneThree => Err(ThresholdError::Unsupported(
            "1+3 charge splits (lowest channel involves a three-body fragment)".into(),
        )),
    }
}

/// Implicit linear form of the locus `E(12) = E(13)` in the triangle:
/// `q2^2 (1 - alpha2) - q3^2 (1 - alpha3) = 0`, positive where channel (12)
/// is the deeper threshold. The locus passes through `alpha2 = alpha3 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DividingLine {
    pub q2: f64,
    pub q3: f64,
}

impl DividingLine {
    pub fn new(q2: f64, q3: f64) -> Self {
        assert!(q2 > 0.0 && q3 > 0.0, "dividing line needs positive charge magnitudes");
        Self { q2, q3 }
    }

    /// Signed value of the form at `(alpha2, alpha3)`; `> 0` means channel
    /// (12) is the lowest threshold, `< 0` channel (13), `0` the line itself.
    pub fn eval(&self, alpha2: f64, alpha3: f64) -> f64 {
        self.q2 * self.q2 * (1.0 - alpha2) - self.q3 * self.q3 * (1.0 - alpha3)
    }

    /// Which channel is lowest at a triangle point.
    pub fn lowest_channel(&self, alpha2: f64, alpha3: f64) -> &'static str {
        if self.eval(alpha2, alpha3) >= 0.0 {
            "(12) is lowest"
        } else {
            "(13) is lowest"
        }
    }
}

/// Dividing curve in the charge plane at fixed masses:
/// `q2^2 m2/(m1+m2) = q3^2 m3/(m1+m3)`, expressed through inverse masses.
/// Returns the signed difference, `> 0` where channel (12) is deeper.
pub fn charge_plane_dividing(x: &[f64; 3], q2: f64, q3: f64) -> f64 {
    q2 * q2 / (x[0] + x[1]) - q3 * q3 / (x[0] + x[2])
}

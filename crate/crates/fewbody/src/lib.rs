//! Stability of three- and four-body nonrelativistic Coulomb systems.
//!
//! A system is *stable* when its ground-state energy lies strictly below the
//! energy of every dissociation into bound subsystems. This crate decides
//! stability three ways and keeps the three routes separate:
//!
//! - [`thresholds`]: exact two-body Coulomb energies and dissociation
//!   channels, the comparison baseline;
//! - [`varsolve`]: variational upper bounds from a stochastically grown
//!   correlated-Gaussian basis (upper bounds can certify stability, never
//!   instability);
//! - [`deduce`]: a rule engine over the triangle of normalized inverse
//!   masses and the inverse-charge plane, combining convexity, star-shape
//!   and scaling arguments with anchor facts from the literature. Every
//!   verdict carries a provenance chain.
//!
//! [`fourbody`] holds the four-body machinery (exponential-cosh variational
//! bound, concavity chains, critical mass ratios, Monte Carlo cross-check)
//! and [`atlas`] turns verdicts into grid scans, CSV/JSON records and SVG
//! stability diagrams.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `fewbody` binary exposes the same operations as subcommands.

pub mod atlas;
pub mod deduce;
pub mod fourbody;
pub mod systems;
pub mod thresholds;
pub mod varsolve;

pub use deduce::{Engine, RuleBase, Status, Verdict};
pub use systems::{canonicalize, from_simplex, to_simplex, ParticleSystem, SimplexPoint};
pub use thresholds::{lowest_threshold, pair_energy};
pub use varsolve::{svm_optimize, SolverConfig, VariationalResult};

/// Particle masses in electron-mass units.
pub mod masses {
    pub const ELECTRON: f64 = 1.0;
    pub const MUON: f64 = 206.768_283_0;
    pub const PION: f64 = 273.132_4;
    pub const PROTON: f64 = 1_836.152_673_43;
    pub const DEUTERON: f64 = 3_670.482_967_88;
    pub const TRITON: f64 = 5_496.921_535_73;
    pub const ALPHA: f64 = 7_294.299_541_42;
}

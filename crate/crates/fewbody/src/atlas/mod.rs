//! Grid scans over the mass triangle and the charge plane, combining the
//! rule engine with the variational solver into tri-state-plus stability
//! maps, with CSV/JSON persistence, an append-only run cache and SVG
//! rendering.

pub mod cache;
pub mod render;

use crate::deduce::{Engine, Rule, Status};
use crate::fourbody;
use crate::systems::{canonicalize, from_simplex, ParticleSystem, SimplexPoint, SystemError};
use crate::thresholds::lowest_threshold;
use crate::varsolve::{
    svm_optimize, ExcessBindingTable, SolverConfig, SolverError, CERT_MARGIN_REL,
};
use cache::RunCache;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("grid resolution {0} outside [0.01, 0.25]")]
    BadResolution(f64),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Which chart a map covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MapChart {
    /// Mass triangle at fixed charge magnitudes `(1, q2, q3)`.
    Simplex { q2: f64, q3: f64 },
    /// Charge plane at fixed inverse masses.
    ChargePlane { x: [f64; 3] },
}

/// Node coordinates within the chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CellCoords {
    Simplex([f64; 3]),
    Charge([f64; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapCell {
    pub coords: CellCoords,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threshold: Option<f64>,
    pub provenance: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapMetadata {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solver: Option<SolverConfig>,
    pub rulebase_version: String,
}

/// A finished scan: chart, resolution, per-node verdict summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityMap {
    pub chart: MapChart,
    pub resolution: f64,
    pub cells: Vec<MapCell>,
    pub metadata: MapMetadata,
}

/// Scan options. The solver runs only on nodes the rules leave unknown, at
/// most `solver_node_budget` of them, with per-node seeds derived from
/// `seed`; `None` keeps scans rules-only.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub seed: u64,
    pub solver: Option<SolverConfig>,
    pub solver_node_budget: usize,
    pub gtable: Option<ExcessBindingTable>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { seed: 1, solver: None, solver_node_budget: usize::MAX, gtable: None }
    }
}

fn solve_cached(
    sys: &ParticleSystem,
    cfg: &SolverConfig,
    cache: &mut Option<&mut RunCache>,
) -> Result<crate::varsolve::VariationalResult, SolverError> {
    let canonical = canonicalize(sys)?.system;
    if let Some(c) = cache {
        if let Some(hit) = c.get(&canonical, cfg) {
            return Ok(hit);
        }
    }
    let res = svm_optimize(&canonical, cfg)?;
    if let Some(c) = cache {
        c.insert(&canonical, cfg, &res).ok();
    }
    Ok(res)
}

/// Evaluate the rule engine on every node of a triangular grid with spacing
/// `h` (nodes `(i, j, k)/N`, `N = round(1/h)`). The three corner nodes are
/// degenerate two-infinite-mass limits and are skipped. Deterministic for a
/// fixed configuration.
pub fn scan_triangle(
    q2: f64,
    q3: f64,
    h: f64,
    cfg: &ScanConfig,
    mut cache: Option<&mut RunCache>,
) -> Result<StabilityMap, AtlasError> {
    if !(0.01..=0.25).contains(&h) {
        return Err(AtlasError::BadResolution(h));
    }
    let n = (1.0 / h).round() as usize;
    let mut engine = Engine::new();
    if let Some(t) = &cfg.gtable {
        engine = engine.with_gtable(t.clone());
    }
    let mut cells = Vec::new();
    let mut solver_budget = cfg.solver_node_budget;
    let mut node_index: u64 = 0;
    for i in 0..=n {
        for j in 0..=(n - i) {
            let k = n - i - j;
            node_index += 1;
            // skip the three summits (two infinite masses)
            if (i == n) || (j == n) || (k == n) {
                continue;
            }
            let alpha = SimplexPoint::new(
                i as f64 / n as f64,
                j as f64 / n as f64,
                k as f64 / n as f64,
            )?;
            let sys = from_simplex(&alpha, &[1.0, -q2, -q3])?;
            let mut verdict = engine.evaluate_rules(&sys)?;
            let canonical = canonicalize(&sys)?.system;
            let threshold = lowest_threshold(&canonical).ok().map(|c| c.energy);
            let mut energy = None;
            if verdict.status == Status::Unknown && solver_budget > 0 {
                if let Some(solver) = &cfg.solver {
                    solver_budget -= 1;
                    let node_cfg = solver.clone().with_seed(
                        cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(node_index),
                    );
                    if let Ok(res) = solve_cached(&sys, &node_cfg, &mut cache) {
                        energy = Some(res.energy);
                        if let Some(thr) = threshold {
                            if res.energy <= thr - CERT_MARGIN_REL * thr.abs() {
                                verdict = crate::deduce::Verdict::numeric(res, thr);
                            }
                        }
                    }
                }
            }
            cells.push(MapCell {
                coords: CellCoords::Simplex(alpha.alpha()),
                status: verdict.status,
                energy,
                threshold,
                provenance: verdict.provenance,
            });
        }
    }
    Ok(StabilityMap {
        chart: MapChart::Simplex { q2, q3 },
        resolution: 1.0 / n as f64,
        cells,
        metadata: MapMetadata {
            seed: cfg.seed,
            solver: cfg.solver.clone(),
            rulebase_version: Engine::new().rules.version.to_string(),
        },
    })
}

/// Scan the charge plane at a fixed mass point: nodes
/// `q2, q3 in {res, 2 res, ..., q_max}`, rules first, solver fallback on
/// unknowns within the budget.
pub fn scan_charge_plane(
    x: &[f64; 3],
    q_max: f64,
    res: f64,
    cfg: &ScanConfig,
    mut cache: Option<&mut RunCache>,
) -> Result<StabilityMap, AtlasError> {
    if !(res > 0.0) || !(q_max >= res) {
        return Err(AtlasError::BadResolution(res));
    }
    let steps = (q_max / res).round() as usize;
    let mut cells = Vec::new();
    let engine = Engine::new();
    let mut solver_budget = cfg.solver_node_budget;
    let mut node_index: u64 = 0;
    for i in 1..=steps {
        for j in 1..=steps {
            node_index += 1;
            let (q2, q3) = (i as f64 * res, j as f64 * res);
            let sys = ParticleSystem::new(x, &[1.0, -q2, -q3])?;
            let mut verdict = engine.evaluate_rules(&sys)?;
            let canonical = canonicalize(&sys)?.system;
            let threshold = lowest_threshold(&canonical).ok().map(|c| c.energy);
            let mut energy = None;
            if verdict.status == Status::Unknown && solver_budget > 0 {
                if let Some(solver) = &cfg.solver {
                    solver_budget -= 1;
                    let node_cfg = solver.clone().with_seed(
                        cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(node_index),
                    );
                    if let Ok(res_) = solve_cached(&sys, &node_cfg, &mut cache) {
                        energy = Some(res_.energy);
                        if let Some(thr) = threshold {
                            if res_.energy <= thr - CERT_MARGIN_REL * thr.abs() {
                                verdict = crate::deduce::Verdict::numeric(res_, thr);
                            }
                        }
                    }
                }
            }
            cells.push(MapCell {
                coords: CellCoords::Charge([q2, q3]),
                status: verdict.status,
                energy,
                threshold,
                provenance: verdict.provenance,
            });
        }
    }
    Ok(StabilityMap {
        chart: MapChart::ChargePlane { x: *x },
        resolution: res,
        cells,
        metadata: MapMetadata {
            seed: cfg.seed,
            solver: cfg.solver.clone(),
            rulebase_version: engine.rules.version.to_string(),
        },
    })
}

/// CSV rendering. Triangle maps use
/// `alpha1,alpha2,alpha3,status,energy,threshold,provenance`; charge-plane
/// maps use `q2,q3,status,energy,threshold,provenance`. Deterministic bytes.
pub fn write_csv(map: &StabilityMap) -> String {
    let mut out = String::new();
    match map.chart {
        MapChart::Simplex { .. } => {
            out.push_str("alpha1,alpha2,alpha3,status,energy,threshold,provenance\n")
        }
        MapChart::ChargePlane { .. } => {
            out.push_str("q2,q3,status,energy,threshold,provenance\n")
        }
    }
    for cell in &map.cells {
        match &cell.coords {
            CellCoords::Simplex(a) => {
                out.push_str(&format!("{:.6},{:.6},{:.6},", a[0], a[1], a[2]))
            }
            CellCoords::Charge(q) => out.push_str(&format!("{:.6},{:.6},", q[0], q[1])),
        }
        out.push_str(&cell.status.to_string());
        out.push(',');
        if let Some(e) = cell.energy {
            out.push_str(&format!("{e:.9}"));
        }
        out.push(',');
        if let Some(t) = cell.threshold {
            out.push_str(&format!("{t:.9}"));
        }
        out.push(',');
        let prov: Vec<String> = cell
            .provenance
            .iter()
            .map(|r| format!("{}: {}", r.rule, r.citation))
            .collect();
        out.push('"');
        out.push_str(&prov.join("; ").replace('"', "'"));
        out.push('"');
        out.push('\n');
    }
    out
}

/// One sample of the exploratory four-body conjecture scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureSample {
    pub system: ParticleSystem,
    pub subsystem_statuses: Vec<Status>,
    pub fourbody_status: Status,
    /// Hypothesis: at least one three-body subsystem is stable.
    pub hypothesis_met: bool,
    /// Hypothesis met and four-body stability also established.
    pub consistent: bool,
}

/// Report of the conjecture scan ("a 2+2 four-body system is stable when one
/// three-body subsystem is stable"). Candidates are samples where the
/// hypothesis holds but no four-body stability evidence was found; the
/// solver is one-sided, so they are leads, never refutations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub samples: Vec<ConjectureSample>,
    pub supporting: usize,
    pub candidates: usize,
    pub excluded: usize,
}

pub fn conjecture_scan(
    samples: usize,
    seed: u64,
    solver: &SolverConfig,
) -> Result<ConjectureReport, AtlasError> {
    let mut rng = crate::varsolve::rng::CounterRng::new(seed);
    let engine = Engine::new();
    let mut out = Vec::with_capacity(samples);
    let (mut supporting, mut candidates, mut excluded) = (0usize, 0usize, 0usize);
    for k in 0..samples {
        let x: Vec<f64> = (0..4).map(|_| rng.log_uniform(0.05, 2.0)).collect();
        let sys = ParticleSystem::new(&x, &[1.0, 1.0, -1.0, -1.0])?;
        let mut subsystem_statuses = Vec::with_capacity(4);
        let mut hypothesis_met = false;
        for drop in 0..4 {
            let xs: Vec<f64> = (0..4).filter(|&i| i != drop).map(|i| x[i]).collect();
            let qs: Vec<f64> = (0..4)
                .filter(|&i| i != drop)
                .map(|i| [1.0, 1.0, -1.0, -1.0][i])
                .collect();
            let sub = ParticleSystem::new(&xs, &qs)?;
            let mut v = engine.evaluate_rules(&sub)?;
            if v.status == Status::Unknown {
                let sub_cfg = solver.clone().with_seed(seed.wrapping_add(1000 + 4 * k as u64 + drop as u64));
                let canonical = canonicalize(&sub)?.system;
                if let (Ok(res), Ok(thr)) = (svm_optimize(&canonical, &sub_cfg), lowest_threshold(&canonical)) {
                    if res.energy <= thr.energy - CERT_MARGIN_REL * thr.energy.abs() {
                        v = crate::deduce::Verdict::numeric(res, thr.energy);
                    }
                }
            }
            if matches!(v.status, Status::CertifiedStable | Status::NumericallyStable) {
                hypothesis_met = true;
            }
            subsystem_statuses.push(v.status);
        }
        let four_cfg = solver.clone().with_seed(seed.wrapping_add(9000 + k as u64));
        let fv = fourbody::evaluate_fourbody(&sys, Some(&four_cfg))
            .map(|v| v.status)
            .unwrap_or(Status::Unknown);
        let four_stable = matches!(fv, Status::CertifiedStable | Status::NumericallyStable);
        let consistent = hypothesis_met && four_stable;
        if !hypothesis_met {
            excluded += 1;
        } else if consistent {
            supporting += 1;
        } else {
            candidates += 1;
        }
        out.push(ConjectureSample {
            system: sys,
            subsystem_statuses,
            fourbody_status: fv,
            hypothesis_met,
            consistent,
        });
    }
    Ok(ConjectureReport { samples: out, supporting, candidates, excluded })
}

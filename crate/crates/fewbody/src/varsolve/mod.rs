//! Variational upper bounds from a stochastically grown correlated-Gaussian
//! basis.
//!
//! The basis is enlarged one function at a time: each step draws a batch of
//! random candidates (pair correlation lengths log-uniform around the
//! relevant Bohr radii), scores every candidate exactly through a rank-one
//! secular equation against the current spectrum, and keeps the best. The
//! run is reproducible from its seed. Energies are upper bounds; they can
//! certify stability, never instability.

pub mod elements;
pub mod rng;

use crate::systems::{canonicalize, ParticleSystem, SystemError};
use elements::{elements, BasisEntry, CorrelatedGaussian, Elements, Geometry};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rng::CounterRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative margin for calling a variational bound "numerically stable":
/// `E_var <= E_thr - CERT_MARGIN_REL * |E_thr|`. Anything closer is unknown.
pub const CERT_MARGIN_REL: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("system not usable by the solver: {0}")]
    BadSystem(String),
    #[error("no attractive pair; nothing to bind")]
    NoAttractivePair,
    #[error("combined quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid basis function: {0}")]
    BadBasisFunction(String),
    #[error("overlap matrix too ill-conditioned even after cutoff retry")]
    IllConditionedBasis,
    #[error("empty basis")]
    EmptyBasis,
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Knobs of the stochastic basis growth. All fields must be positive and
/// `width_range.0 < width_range.1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub seed: u64,
    pub max_basis: usize,
    pub candidates_per_step: usize,
    /// Pair correlation lengths are drawn log-uniformly from
    /// `width_range * (Bohr length of the pair)`; repulsive pairs use the
    /// system's largest attractive Bohr length.
    pub width_range: (f64, f64),
    /// Relative eigenvalue cutoff for overlap filtering.
    pub overlap_cutoff: f64,
    /// Stop when a step improves the energy by less than this relative amount.
    pub energy_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            max_basis: 150,
            candidates_per_step: 25,
            width_range: (0.1, 10.0),
            overlap_cutoff: 1e-12,
            energy_tol: 1e-9,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_basis(mut self, max_basis: usize) -> Self {
        self.max_basis = max_basis;
        self
    }

    pub fn with_candidates(mut self, candidates: usize) -> Self {
        self.candidates_per_step = candidates;
        self
    }

    fn validate(&self) -> Result<(), SolverError> {
        let ok = self.max_basis > 0
            && self.candidates_per_step > 0
            && self.width_range.0 > 0.0
            && self.width_range.0 < self.width_range.1
            && self.overlap_cutoff > 0.0
            && self.energy_tol > 0.0;
        if ok {
            Ok(())
        } else {
            Err(SolverError::BadSystem("invalid solver configuration".into()))
        }
    }
}

/// Outcome of a variational run. The trace holds the energy after each
/// accepted basis function and is non-increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationalResult {
    pub energy: f64,
    pub basis_size: usize,
    pub trace: Vec<f64>,
    pub seed: Option<u64>,
    /// True when the run stopped because a step improved less than
    /// `energy_tol`, rather than by exhausting `max_basis`.
    pub converged: bool,
}

/// JSON record attaching the result to its system, as consumed by the cache.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationalRecord {
    pub system: ParticleSystem,
    pub seed: Option<u64>,
    pub basis_size: usize,
    pub energy: f64,
    pub trace: Vec<f64>,
}

impl VariationalResult {
    pub fn record(&self, system: &ParticleSystem) -> VariationalRecord {
        VariationalRecord {
            system: system.clone(),
            seed: self.seed,
            basis_size: self.basis_size,
            energy: self.energy,
            trace: self.trace.clone(),
        }
    }
}

/// Normalized overlap, kinetic and charge-weighted Coulomb elements between
/// two basis functions for the given system.
pub fn matrix_elements(
    g1: &CorrelatedGaussian,
    g2: &CorrelatedGaussian,
    sys: &ParticleSystem,
) -> Result<Elements, SolverError> {
    let geom = Geometry::new(sys.x(), sys.q())?;
    let a = BasisEntry::new(g1.clone(), &geom)?;
    let b = BasisEntry::new(g2.clone(), &geom)?;
    elements(&a, &b, &geom)
}

/// Spectrum of the generalized problem `(H, S)` restricted to the overlap
/// eigendirections above the cutoff; `evecs^T S evecs = I`.
struct Spectral {
    evals: Vec<f64>,
    evecs: DMatrix<f64>,
}

fn filtered_solve(
    h: &DMatrix<f64>,
    s: &DMatrix<f64>,
    cutoff_rel: f64,
) -> Result<Spectral, SolverError> {
    let k = s.nrows();
    let se = SymmetricEigen::new(s.clone());
    let max_ev = se.eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
    if !(max_ev > 0.0) || !max_ev.is_finite() {
        return Err(SolverError::IllConditionedBasis);
    }
    let kept: Vec<usize> = (0..k)
        .filter(|&i| se.eigenvalues[i] >= cutoff_rel * max_ev && se.eigenvalues[i] > 0.0)
        .collect();
    if kept.is_empty() {
        return Err(SolverError::IllConditionedBasis);
    }
    let mut v = DMatrix::zeros(k, kept.len());
    for (col, &i) in kept.iter().enumerate() {
        let scale = 1.0 / se.eigenvalues[i].sqrt();
        v.set_column(col, &(se.eigenvectors.column(i) * scale));
    }
    let h_tilde = v.transpose() * h * &v;
    let he = SymmetricEigen::new(h_tilde);
    let mut order: Vec<usize> = (0..kept.len()).collect();
    order.sort_by(|&a, &b| he.eigenvalues[a].partial_cmp(&he.eigenvalues[b]).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| he.eigenvalues[i]).collect();
    if evals.iter().any(|e| !e.is_finite()) {
        return Err(SolverError::IllConditionedBasis);
    }
    let mut y = DMatrix::zeros(kept.len(), kept.len());
    for (col, &i) in order.iter().enumerate() {
        y.set_column(col, &he.eigenvectors.column(i));
    }
    Ok(Spectral { evals, evecs: v * y })
}

fn solve_with_retry(h: &DMatrix<f64>, s: &DMatrix<f64>, cutoff: f64) -> Result<Spectral, SolverError> {
    match filtered_solve(h, s, cutoff) {
        Ok(sp) => Ok(sp),
        // retry once with a stronger cutoff before giving up
        Err(SolverError::IllConditionedBasis) => filtered_solve(h, s, cutoff.max(1e-10)),
        Err(e) => Err(e),
    }
}

/// Growable pair of normalized `(H, S)` matrices over basis entries.
struct MatrixPair {
    h: DMatrix<f64>,
    s: DMatrix<f64>,
}

impl MatrixPair {
    fn new() -> Self {
        Self { h: DMatrix::zeros(0, 0), s: DMatrix::zeros(0, 0) }
    }

    fn push(&mut self, entries: &[BasisEntry], geom: &Geometry) -> Result<(), SolverError> {
        let k = entries.len();
        let new = &entries[k - 1];
        let mut h = DMatrix::zeros(k, k);
        let mut s = DMatrix::zeros(k, k);
        h.view_mut((0, 0), (k - 1, k - 1)).copy_from(&self.h);
        s.view_mut((0, 0), (k - 1, k - 1)).copy_from(&self.s);
        for i in 0..k {
            let e = elements(&entries[i], new, geom)?;
            h[(i, k - 1)] = e.hamiltonian();
            h[(k - 1, i)] = h[(i, k - 1)];
            s[(i, k - 1)] = e.overlap;
            s[(k - 1, i)] = s[(i, k - 1)];
        }
        self.h = h;
        self.s = s;
        Ok(())
    }

    fn pop(&mut self) {
        let k = self.h.nrows() - 1;
        self.h = self.h.view((0, 0), (k, k)).into();
        self.s = self.s.view((0, 0), (k, k)).into();
    }
}

/// Lowest generalized eigenvalue after adding one candidate, via the
/// bordered secular equation against the current spectrum. Returns `None`
/// when the candidate is numerically dependent on the existing basis.
fn candidate_energy(
    spectral: &Spectral,
    s_raw: &DVector<f64>,
    h_raw: &DVector<f64>,
    h_self: f64,
) -> Option<f64> {
    let st = spectral.evecs.transpose() * s_raw;
    let ht = spectral.evecs.transpose() * h_raw;
    let residual = 1.0 - st.dot(&st);
    if residual < 1e-10 {
        return None;
    }
    let e0 = spectral.evals[0];
    let d = |e: f64| -> f64 {
        let mut acc = h_self - e;
        for m in 0..spectral.evals.len() {
            let num = ht[m] - e * st[m];
            acc -= num * num / (spectral.evals[m] - e);
        }
        acc
    };
    let scale = e0.abs().max(1.0);
    let mut hi = e0 - 1e-12 * scale;
    if d(hi) >= 0.0 {
        return Some(e0); // no coupling to the ground direction
    }
    let mut lo = e0 - scale;
    let mut tries = 0;
    while d(lo) <= 0.0 {
        lo = e0 - (e0 - lo) * 2.0;
        tries += 1;
        if tries > 200 {
            return None;
        }
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if d(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn draw_candidate(geom: &Geometry, cfg: &SolverConfig, rng: &mut CounterRng) -> CorrelatedGaussian {
    let widths: Vec<f64> = geom
        .pair_scale
        .iter()
        .map(|&scale| scale * rng.log_uniform(cfg.width_range.0, cfg.width_range.1))
        .collect();
    // widths are positive by construction
    CorrelatedGaussian::from_widths(&widths).expect("positive widths")
}

/// Smallest generalized eigenvalue of `(H, S)` over an explicit basis.
/// Deterministic; fails with [`SolverError::IllConditionedBasis`] when no
/// overlap eigendirection survives filtering.
pub fn ground_state(
    basis: &[CorrelatedGaussian],
    sys: &ParticleSystem,
    cfg: &SolverConfig,
) -> Result<VariationalResult, SolverError> {
    let geom = Geometry::new(sys.x(), sys.q())?;
    ground_state_geom(basis, &geom, cfg)
}

pub(crate) fn ground_state_geom(
    basis: &[CorrelatedGaussian],
    geom: &Geometry,
    cfg: &SolverConfig,
) -> Result<VariationalResult, SolverError> {
    if basis.is_empty() {
        return Err(SolverError::EmptyBasis);
    }
    let entries: Vec<BasisEntry> = basis
        .iter()
        .map(|cg| BasisEntry::new(cg.clone(), geom))
        .collect::<Result<_, _>>()?;
    let mut mats = MatrixPair::new();
    let mut grown: Vec<BasisEntry> = Vec::new();
    for e in entries {
        grown.push(e);
        mats.push(&grown, geom)?;
    }
    let spectral = solve_with_retry(&mats.h, &mats.s, cfg.overlap_cutoff)?;
    let energy = spectral.evals[0];
    Ok(VariationalResult {
        energy,
        basis_size: basis.len(),
        trace: vec![energy],
        seed: None,
        converged: false,
    })
}

/// Stochastic variational optimization: grow the basis to `max_basis`
/// functions or until a step improves the energy by less than `energy_tol`
/// relative. Reproducible from `cfg.seed`; the trace is non-increasing.
pub fn svm_optimize(
    sys: &ParticleSystem,
    cfg: &SolverConfig,
) -> Result<VariationalResult, SolverError> {
    let canonical = canonicalize(sys)?;
    let geom = Geometry::new(canonical.system.x(), canonical.system.q())?;
    svm_optimize_geom(&geom, cfg)
}

pub(crate) fn svm_optimize_geom(
    geom: &Geometry,
    cfg: &SolverConfig,
) -> Result<VariationalResult, SolverError> {
    cfg.validate()?;
    let root = CounterRng::new(cfg.seed);
    let mut entries: Vec<BasisEntry> = Vec::new();
    let mut mats = MatrixPair::new();
    let mut trace: Vec<f64> = Vec::new();
    let mut spectral: Option<Spectral> = None;
    let mut converged = false;

    for step in 0..cfg.max_basis {
        let mut rng = root.split(step as u64);
        let mut scored: Vec<(f64, BasisEntry)> = Vec::new();
        for _ in 0..cfg.candidates_per_step {
            let cg = draw_candidate(geom, cfg, &mut rng);
            let entry = match BasisEntry::new(cg, geom) {
                Ok(e) => e,
                Err(_) => continue,
            };
            let score = match &spectral {
                None => {
                    let e = match elements(&entry, &entry, geom) {
                        Ok(e) => e,
                        Err(_) => continue,
                    };
                    Some(e.hamiltonian())
                }
                Some(sp) => {
                    let k = entries.len();
                    let mut s_raw = DVector::zeros(k);
                    let mut h_raw = DVector::zeros(k);
                    let mut h_self = 0.0;
                    let mut ok = true;
                    for i in 0..k {
                        match elements(&entries[i], &entry, geom) {
                            Ok(e) => {
                                s_raw[i] = e.overlap;
                                h_raw[i] = e.hamiltonian();
                            }
                            Err(_) => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        match elements(&entry, &entry, geom) {
                            Ok(e) => h_self = e.hamiltonian(),
                            Err(_) => ok = false,
                        }
                    }
                    if ok {
                        candidate_energy(sp, &s_raw, &h_raw, h_self)
                    } else {
                        None
                    }
                }
            };
            if let Some(en) = score {
                if en.is_finite() {
                    scored.push((en, entry));
                }
            }
        }
        scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if scored.is_empty() {
            continue;
        }
        let current = trace.last().copied();
        if let Some(cur) = current {
            let best = scored[0].0;
            if cur - best <= cfg.energy_tol * cur.abs() {
                converged = true;
                break;
            }
        }
        // Accept the best candidate whose full solve keeps the trace monotone.
        let mut accepted = false;
        for (_, entry) in scored {
            entries.push(entry);
            if mats.push(&entries, geom).is_err() {
                entries.pop();
                mats.pop();
                continue;
            }
            match solve_with_retry(&mats.h, &mats.s, cfg.overlap_cutoff) {
                Ok(sp) => {
                    let e_new = sp.evals[0];
                    if current.map_or(true, |cur| e_new <= cur) {
                        spectral = Some(sp);
                        trace.push(e_new);
                        accepted = true;
                        break;
                    }
                    entries.pop();
                    mats.pop();
                }
                Err(_) => {
                    entries.pop();
                    mats.pop();
                }
            }
        }
        if !accepted && !entries.is_empty() {
            // nothing in this batch kept monotonicity; treat as a stalled step
            converged = true;
            break;
        }
    }

    if entries.is_empty() {
        return Err(SolverError::IllConditionedBasis);
    }
    Ok(VariationalResult {
        energy: *trace.last().unwrap(),
        basis_size: entries.len(),
        trace,
        seed: Some(cfg.seed),
        converged,
    })
}

/// Relative excess binding on the symmetry axis:
/// `g(a1) = E123(a1, t, t) / E12(a1, t) - 1` with `t = (1 - a1)/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GEntry {
    pub alpha1: f64,
    pub g: f64,
    pub basis_size: usize,
}

/// Solver-derived table of `g(alpha1)` for a charge configuration
/// `q2 = q3 = charge` (relative to `q1 = 1`). Between grid nodes the
/// conservative (smaller) endpoint value is used, so certified statements
/// never borrow more excess binding than the solver established.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcessBindingTable {
    pub charge: f64,
    pub entries: Vec<GEntry>,
}

impl ExcessBindingTable {
    /// Conservative lower estimate of `g` at `alpha1`; `None` outside the
    /// covered range.
    pub fn conservative_g(&self, alpha1: f64) -> Option<f64> {
        let e = &self.entries;
        if e.is_empty() {
            return None;
        }
        if alpha1 < e[0].alpha1 - 1e-12 || alpha1 > e[e.len() - 1].alpha1 + 1e-12 {
            return None;
        }
        for w in e.windows(2) {
            if alpha1 <= w[1].alpha1 + 1e-12 {
                if (alpha1 - w[0].alpha1).abs() <= 1e-12 {
                    return Some(w[0].g);
                }
                if (alpha1 - w[1].alpha1).abs() <= 1e-12 {
                    return Some(w[1].g);
                }
                return Some(w[0].g.min(w[1].g));
            }
        }
        Some(e[e.len() - 1].g)
    }
}

/// Build the axis table by running the solver at each grid node.
/// Requires `charge > 0` and every node strictly inside `(0, 1)`.
pub fn excess_binding_table(
    charge: f64,
    alpha1_grid: &[f64],
    cfg: &SolverConfig,
) -> Result<ExcessBindingTable, SolverError> {
    if !(charge > 0.0) {
        return Err(SolverError::BadSystem("charge must be positive".into()));
    }
    let mut entries = Vec::with_capacity(alpha1_grid.len());
    for (k, &a1) in alpha1_grid.iter().enumerate() {
        if !(0.0 < a1 && a1 < 1.0) {
            return Err(SolverError::BadSystem(format!(
                "axis node {a1} outside (0, 1)"
            )));
        }
        let t = 0.5 * (1.0 - a1);
        let sys = ParticleSystem::new(&[a1, t, t], &[1.0, -charge, -charge])?;
        let node_cfg = cfg.clone().with_seed(cfg.seed.wrapping_add(k as u64));
        let res = svm_optimize(&sys, &node_cfg)?;
        let e12 = -(charge * charge) / (2.0 * (a1 + t));
        entries.push(GEntry { alpha1: a1, g: res.energy / e12 - 1.0, basis_size: res.basis_size });
    }
    entries.sort_by(|a, b| a.alpha1.partial_cmp(&b.alpha1).unwrap());
    Ok(ExcessBindingTable { charge, entries })
}

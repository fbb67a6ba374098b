//! Analytic matrix elements between correlated Gaussians.
//!
//! A basis function is `exp(-1/2 sum_{i<j} c_ij r_ij^2)` with all pair
//! coefficients `c_ij >= 0` and the combined quadratic form positive
//! definite. Internally the form is expressed in the relative coordinates
//! `eta_i = r_i - r_n` (last particle as reference), which stay well defined
//! when one particle is infinitely heavy. For `L = 0` the overlap, kinetic
//! and `1/r_ij` integrals are closed-form in the form matrices.

use super::SolverError;
use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::{Deserialize, Serialize};

/// Pair list in lexicographic order for `n` particles.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Precomputed coordinate data for one system: kinetic matrix, pair
/// difference vectors and charge products.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub n: usize,
    pub d: usize,
    /// Kinetic matrix Lambda_ij = x_ref + delta_ij x_i in relative coordinates.
    pub lambda: DMatrix<f64>,
    pub pairs: Vec<(usize, usize)>,
    /// w such that r_i - r_j = w . eta, one vector per pair.
    pub w: Vec<DVector<f64>>,
    /// q_i * q_j per pair.
    pub qq: Vec<f64>,
    /// Bohr length (x_i + x_j)/|q_i q_j| of each attractive pair, and the
    /// fallback scale used for non-attractive pairs.
    pub pair_scale: Vec<f64>,
}

impl Geometry {
    /// Supports 2 to 4 particles with at most one infinite mass.
    pub fn new(x: &[f64], q: &[f64]) -> Result<Self, SolverError> {
        let n = x.len();
        if !(2..=4).contains(&n) || q.len() != n {
            return Err(SolverError::BadSystem(format!("{n} particles")));
        }
        if x.iter().filter(|&&xi| xi == 0.0).count() > 1 {
            return Err(SolverError::BadSystem(
                "more than one infinite mass freezes the relative motion".into(),
            ));
        }
        let d = n - 1;
        let mut lambda = DMatrix::from_element(d, d, x[n - 1]);
        for i in 0..d {
            lambda[(i, i)] += x[i];
        }
        let pairs = pair_list(n);
        let mut w = Vec::with_capacity(pairs.len());
        let mut qq = Vec::with_capacity(pairs.len());
        for &(i, j) in &pairs {
            let mut v = DVector::zeros(d);
            if j == n - 1 {
                v[i] = 1.0;
            } else {
                v[i] = 1.0;
                v[j] = -1.0;
            }
            w.push(v);
            qq.push(q[i] * q[j]);
        }
        let attractive_scales: Vec<f64> = pairs
            .iter()
            .zip(&qq)
            .filter(|(_, &qqp)| qqp < 0.0)
            .map(|(&(i, j), &qqp)| (x[i] + x[j]) / qqp.abs())
            .collect();
        if attractive_scales.is_empty() {
            return Err(SolverError::NoAttractivePair);
        }
        let fallback = attractive_scales.iter().cloned().fold(f64::MIN, f64::max);
        let pair_scale = pairs
            .iter()
            .zip(&qq)
            .map(|(&(i, j), &qqp)| {
                if qqp < 0.0 {
                    (x[i] + x[j]) / qqp.abs()
                } else {
                    fallback
                }
            })
            .collect();
        Ok(Self { n, d, lambda, pairs, w, qq, pair_scale })
    }

    /// Quadratic form matrix of a basis function in relative coordinates.
    pub fn a_matrix(&self, g: &CorrelatedGaussian) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.d, self.d);
        for (p, &c) in g.coeffs.iter().enumerate() {
            let w = &self.w[p];
            for r in 0..self.d {
                if w[r] == 0.0 {
                    continue;
                }
                for s in 0..self.d {
                    if w[s] != 0.0 {
                        a[(r, s)] += c * w[r] * w[s];
                    }
                }
            }
        }
        a
    }
}

/// Pair-coefficient parametrization of one `L = 0` correlated Gaussian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatedGaussian {
    /// One coefficient per pair in [`pair_list`] order, each `>= 0`.
    pub coeffs: Vec<f64>,
}

impl CorrelatedGaussian {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, SolverError> {
        if coeffs.iter().any(|&c| !c.is_finite() || c < 0.0) {
            return Err(SolverError::BadBasisFunction(
                "pair coefficients must be finite and >= 0".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// From pair correlation lengths: `c_ij = 1 / b_ij^2`.
    pub fn from_widths(widths: &[f64]) -> Result<Self, SolverError> {
        if widths.iter().any(|&b| !(b > 0.0)) {
            return Err(SolverError::BadBasisFunction("widths must be positive".into()));
        }
        Self::new(widths.iter().map(|&b| 1.0 / (b * b)).collect())
    }
}

/// Normalized matrix elements between two basis functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Elements {
    /// `<a|b>` with both functions unit-normalized.
    pub overlap: f64,
    /// `<a|T|b>` (relative kinetic energy).
    pub kinetic: f64,
    /// Charge-weighted Coulomb terms `q_i q_j <a|1/r_ij|b>` per pair.
    pub coulomb: Vec<f64>,
}

impl Elements {
    pub fn hamiltonian(&self) -> f64 {
        self.kinetic + self.coulomb.iter().sum::<f64>()
    }
}

fn log_det_spd(chol: &Cholesky<f64, Dyn>) -> f64 {
    2.0 * chol.l_dirty().diagonal().iter().map(|v| v.ln()).sum::<f64>()
}

/// Cached per-basis-function data (form matrix and its log-determinant).
#[derive(Debug, Clone)]
pub struct BasisEntry {
    pub cg: CorrelatedGaussian,
    pub a: DMatrix<f64>,
    /// `ln det(2 A)` for normalization.
    pub log_det_2a: f64,
}

impl BasisEntry {
    pub fn new(cg: CorrelatedGaussian, geom: &Geometry) -> Result<Self, SolverError> {
        let a = geom.a_matrix(&cg);
        let chol = Cholesky::new(2.0 * &a).ok_or(SolverError::NotPositiveDefinite)?;
        Ok(Self { cg, a, log_det_2a: log_det_spd(&chol) })
    }
}

/// Normalized overlap, kinetic and per-pair Coulomb elements.
///
/// Fails with [`SolverError::NotPositiveDefinite`] when the combined form
/// `A + B` is not positive definite.
pub fn elements(a: &BasisEntry, b: &BasisEntry, geom: &Geometry) -> Result<Elements, SolverError> {
    let m = &a.a + &b.a;
    let chol = Cholesky::new(m).ok_or(SolverError::NotPositiveDefinite)?;
    let log_det_sum = log_det_spd(&chol);
    // S = [det(2A)^(1/2) det(2B)^(1/2) / det(A+B)]^(3/2)
    let overlap = ((0.5 * (a.log_det_2a + b.log_det_2a) - log_det_sum) * 1.5).exp();
    let minv = chol.inverse();
    // T/S = (3/2) Tr[Lambda A (A+B)^{-1} B]
    let kinetic = 1.5 * (&geom.lambda * &a.a * &minv * &b.a).trace() * overlap;
    let mut coulomb = Vec::with_capacity(geom.pairs.len());
    for (p, w) in geom.w.iter().enumerate() {
        let c = (w.transpose() * &minv * w)[(0, 0)];
        let inv_r = (2.0 / (std::f64::consts::PI * c)).sqrt() * overlap;
        coulomb.push(geom.qq[p] * inv_r);
    }
    Ok(Elements { overlap, kinetic, coulomb })
}

//! Metropolis evaluation of the exponential-cosh trial function for the
//! equal-mass `A+A+A-A-` system (unit masses, unit charges).
//!
//! `psi = exp(-(r13+r14+r23+r24)/2) cosh[(beta/2)(r13-r14-r23+r24)]`
//!
//! Only opposite-charge distances enter. The local energy is analytic; the
//! sampler also accumulates kinetic and potential parts separately so the
//! exact minimization over a global length scale (`E* = -<V>^2 / (4 <T>)`,
//! from the quadratic scale dependence of Coulomb expectation values) comes
//! for free. Chains are reproducible from the seed; two independent chains
//! may be pooled by inverse variance.

use super::{FourBodyError, OreParameter};
use crate::varsolve::rng::CounterRng;
use serde::{Deserialize, Serialize};

type Vec3 = [f64; 3];

/// Opposite-charge pairs (indices into [pos0, pos1, neg0, neg1]) with their
/// signs in the cosh argument.
const ORE_PAIRS: [(usize, usize, f64); 4] =
    [(0, 2, 1.0), (0, 3, -1.0), (1, 2, -1.0), (1, 3, 1.0)];

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: Vec3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

fn log_psi(r: &[Vec3; 4], beta: f64) -> f64 {
    let mut s = 0.0;
    let mut d = 0.0;
    for &(i, j, sign) in &ORE_PAIRS {
        let rij = norm(sub(r[i], r[j]));
        s += rij;
        d += sign * rij;
    }
    -0.5 * s + ln_cosh(0.5 * beta * d)
}

/// Kinetic and potential parts of the local energy.
fn local_tv(r: &[Vec3; 4], beta: f64) -> (f64, f64) {
    let mut d = 0.0;
    for &(i, j, sign) in &ORE_PAIRS {
        d += sign * norm(sub(r[i], r[j]));
    }
    let th = (0.5 * beta * d).tanh();
    let sech2 = 1.0 - th * th;
    let mut kinetic = 0.0;
    for p in 0..4 {
        let mut grad_s = [0.0; 3];
        let mut grad_d = [0.0; 3];
        let mut lap_s = 0.0;
        let mut lap_d = 0.0;
        for &(i, j, sign) in &ORE_PAIRS {
            if p != i && p != j {
                continue;
            }
            let other = if p == i { j } else { i };
            let diff = sub(r[p], r[other]);
            let rij = norm(diff);
            let u = [diff[0] / rij, diff[1] / rij, diff[2] / rij];
            for k in 0..3 {
                grad_s[k] += u[k];
                grad_d[k] += sign * u[k];
            }
            lap_s += 2.0 / rij;
            lap_d += sign * 2.0 / rij;
        }
        // log psi = -S/2 + ln cosh(beta D / 2)
        let mut grad_log = [0.0; 3];
        let mut grad_d_sq = 0.0;
        for k in 0..3 {
            grad_log[k] = -0.5 * grad_s[k] + 0.5 * beta * th * grad_d[k];
            grad_d_sq += grad_d[k] * grad_d[k];
        }
        let lap_log = -0.5 * lap_s
            + 0.5 * beta * th * lap_d
            + 0.25 * beta * beta * sech2 * grad_d_sq;
        let grad_log_sq: f64 = grad_log.iter().map(|g| g * g).sum();
        // unit masses: -1/2 (lap psi / psi) per particle
        kinetic += -0.5 * (lap_log + grad_log_sq);
    }
    let mut potential = 0.0;
    for &(i, j, _) in &ORE_PAIRS {
        potential -= 1.0 / norm(sub(r[i], r[j]));
    }
    potential += 1.0 / norm(sub(r[0], r[1]));
    potential += 1.0 / norm(sub(r[2], r[3]));
    (kinetic, potential)
}

/// One Monte Carlo estimate at fixed `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VmcEstimate {
    pub beta: f64,
    pub samples: usize,
    /// `<H>` at unit length scale, with its blocked standard error.
    pub energy: f64,
    pub stderr: f64,
    /// Energy after exact minimization over the global length scale,
    /// `-<V>^2 / (4 <T>)`, with a jackknife standard error.
    pub scale_opt_energy: f64,
    pub scale_opt_stderr: f64,
    pub acceptance: f64,
    pub step: f64,
}

const BLOCKS: usize = 100;

struct Chain {
    blocks_t: Vec<f64>,
    blocks_v: Vec<f64>,
    acceptance: f64,
    step: f64,
}

fn run_chain(beta: f64, samples: usize, seed: u64) -> Result<Chain, FourBodyError> {
    let mut rng = CounterRng::new(seed);
    let mut r: [Vec3; 4] = [[0.0; 3]; 4];
    for p in r.iter_mut() {
        for k in 0..3 {
            p[k] = 2.0 * rng.normal();
        }
    }
    let mut logp = log_psi(&r, beta);
    let mut step = 1.0;
    let burn_in = (samples / 10).max(2_000);
    let mut window_acc = 0usize;
    let mut window_n = 0usize;
    let propose = |r: &mut [Vec3; 4], logp: &mut f64, step: f64, rng: &mut CounterRng| -> bool {
        let mut accepted = false;
        for p in 0..4 {
            let old = r[p];
            for k in 0..3 {
                r[p][k] += step * rng.normal();
            }
            let new_logp = log_psi(r, beta);
            if rng.uniform().ln() < 2.0 * (new_logp - *logp) {
                *logp = new_logp;
                accepted = true;
            } else {
                r[p] = old;
            }
        }
        accepted
    };
    for sweep in 0..burn_in {
        if propose(&mut r, &mut logp, step, &mut rng) {
            window_acc += 1;
        }
        window_n += 1;
        if window_n == 250 {
            // steer toward ~50% sweep acceptance
            let acc = window_acc as f64 / window_n as f64;
            step *= (acc / 0.5).clamp(0.5, 2.0);
            step = step.clamp(1e-3, 50.0);
            window_acc = 0;
            window_n = 0;
        }
        if sweep % 1024 == 0 {
            // recenter; distances are unchanged
            let mut cm = [0.0; 3];
            for p in &r {
                for k in 0..3 {
                    cm[k] += p[k] / 4.0;
                }
            }
            for p in r.iter_mut() {
                for k in 0..3 {
                    p[k] -= cm[k];
                }
            }
        }
    }
    let block_len = samples / BLOCKS;
    let mut blocks_t = Vec::with_capacity(BLOCKS);
    let mut blocks_v = Vec::with_capacity(BLOCKS);
    let mut accepted = 0usize;
    for _ in 0..BLOCKS {
        let (mut bt, mut bv) = (0.0, 0.0);
        for _ in 0..block_len {
            if propose(&mut r, &mut logp, step, &mut rng) {
                accepted += 1;
            }
            let (t, v) = local_tv(&r, beta);
            bt += t;
            bv += v;
        }
        blocks_t.push(bt / block_len as f64);
        blocks_v.push(bv / block_len as f64);
    }
    let acceptance = accepted as f64 / (BLOCKS * block_len) as f64;
    if !(0.2..=0.8).contains(&acceptance) {
        return Err(FourBodyError::BadParameter(acceptance));
    }
    Ok(Chain { blocks_t, blocks_v, acceptance, step })
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn stderr_of_mean(v: &[f64]) -> f64 {
    let m = mean(v);
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
    (var / v.len() as f64).sqrt()
}

/// Metropolis estimate of the trial energy at `beta`, from `samples` sweeps
/// after a 10% burn-in with step auto-tuning. `samples >= 10^4`. Fails when
/// the tuned acceptance leaves `[0.2, 0.8]`.
pub fn ore_vmc(beta: OreParameter, samples: usize, seed: u64) -> Result<VmcEstimate, FourBodyError> {
    if samples < 10_000 {
        return Err(FourBodyError::BadParameter(samples as f64));
    }
    let chain = run_chain(beta.value(), samples, seed)?;
    let e_blocks: Vec<f64> = chain
        .blocks_t
        .iter()
        .zip(&chain.blocks_v)
        .map(|(t, v)| t + v)
        .collect();
    let energy = mean(&e_blocks);
    let stderr = stderr_of_mean(&e_blocks);
    // jackknife for the scale-optimized functional -V^2/(4T)
    let (tm, vm) = (mean(&chain.blocks_t), mean(&chain.blocks_v));
    let nb = chain.blocks_t.len() as f64;
    let estimate = |t: f64, v: f64| -v * v / (4.0 * t);
    let full = estimate(tm, vm);
    let mut jack = Vec::with_capacity(chain.blocks_t.len());
    for k in 0..chain.blocks_t.len() {
        let t_k = (tm * nb - chain.blocks_t[k]) / (nb - 1.0);
        let v_k = (vm * nb - chain.blocks_v[k]) / (nb - 1.0);
        jack.push(estimate(t_k, v_k));
    }
    let jm = mean(&jack);
    let var = jack.iter().map(|x| (x - jm) * (x - jm)).sum::<f64>() * (nb - 1.0) / nb;
    Ok(VmcEstimate {
        beta: beta.value(),
        samples,
        energy,
        stderr,
        scale_opt_energy: full,
        scale_opt_stderr: var.sqrt(),
        acceptance: chain.acceptance,
        step: chain.step,
    })
}

/// Scan a grid of `beta` values with per-beta derived seeds.
pub fn ore_vmc_scan(
    betas: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Vec<VmcEstimate>, FourBodyError> {
    betas
        .iter()
        .enumerate()
        .map(|(k, &b)| ore_vmc(OreParameter::new(b)?, samples, seed.wrapping_add(k as u64)))
        .collect()
}

/// Pool independent estimates by inverse variance (on the scale-optimized
/// energy).
pub fn pool_estimates(estimates: &[VmcEstimate]) -> Option<(f64, f64)> {
    if estimates.is_empty() {
        return None;
    }
    let mut wsum = 0.0;
    let mut esum = 0.0;
    for e in estimates {
        let w = 1.0 / (e.scale_opt_stderr * e.scale_opt_stderr);
        wsum += w;
        esum += w * e.scale_opt_energy;
    }
    Some((esum / wsum, (1.0 / wsum).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_energy_matches_finite_difference_laplacian() {
        let mut rng = CounterRng::new(11);
        for trial in 0..20 {
            let beta = 0.1 + 0.08 * trial as f64 % 0.9;
            let mut r: [Vec3; 4] = [[0.0; 3]; 4];
            for p in r.iter_mut() {
                for k in 0..3 {
                    p[k] = 2.5 * rng.normal();
                }
            }
            let logp0 = log_psi(&r, beta);
            let h = 1e-4;
            let mut fd_kinetic = 0.0;
            for p in 0..4 {
                let mut lap_over_psi = 0.0;
                for k in 0..3 {
                    let mut rp = r;
                    rp[p][k] += h;
                    let up = (log_psi(&rp, beta) - logp0).exp();
                    rp[p][k] -= 2.0 * h;
                    let dn = (log_psi(&rp, beta) - logp0).exp();
                    lap_over_psi += (up + dn - 2.0) / (h * h);
                }
                fd_kinetic += -0.5 * lap_over_psi;
            }
            let (t, _) = local_tv(&r, beta);
            assert!(
                (t - fd_kinetic).abs() < 1e-4 * (1.0 + t.abs()),
                "beta={beta} analytic {t} vs fd {fd_kinetic}"
            );
        }
    }

    /// Validates the Metropolis/blocking machinery on a two-body problem
    /// where dense radial quadrature gives the exact expectation.
    #[test]
    fn two_body_chain_cross_check() {
        // psi = exp(-kappa r), equal unit masses (mu = 1/2)
        let kappa = 0.3f64;
        let log_psi2 = |r: &[Vec3; 2]| -kappa * norm(sub(r[0], r[1]));
        let local2 = |r: &[Vec3; 2]| {
            let d = norm(sub(r[0], r[1]));
            -kappa * kappa + (2.0 * kappa - 1.0) / d
        };
        // dense quadrature oracle over the radial density r^2 exp(-2 kappa r)
        let quad = {
            let (n, rmax) = (200_000, 80.0);
            let h = rmax / n as f64;
            let (mut num, mut den) = (0.0, 0.0);
            for i in 1..=n {
                let r = i as f64 * h;
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                let rho = r * r * (-2.0 * kappa * r).exp();
                num += w * rho * (-kappa * kappa + (2.0 * kappa - 1.0) / r);
                den += w * rho;
            }
            num / den
        };
        assert!((quad - (kappa * kappa - kappa)).abs() < 1e-9); // analytic identity
        // small dedicated chain
        let mut rng = CounterRng::new(5);
        let mut r: [Vec3; 2] = [[0.5, 0.0, 0.0], [-0.5, 0.2, 0.1]];
        let mut logp = log_psi2(&r);
        let step = 1.6;
        let mut acc = 0usize;
        let total = 400_000usize;
        let mut blocks = vec![0.0; 100];
        for sweep in 0..total {
            for p in 0..2 {
                let old = r[p];
                for k in 0..3 {
                    r[p][k] += step * rng.normal();
                }
                let nl = log_psi2(&r);
                if rng.uniform().ln() < 2.0 * (nl - logp) {
                    logp = nl;
                    acc += 1;
                } else {
                    r[p] = old;
                }
            }
            blocks[sweep * 100 / total] += local2(&r) / (total / 100) as f64;
        }
        assert!((0.2..0.9).contains(&(acc as f64 / (2 * total) as f64)));
        let e = mean(&blocks);
        let se = stderr_of_mean(&blocks);
        assert!((e - quad).abs() < 3.0 * se, "vmc {e} +- {se} vs quadrature {quad}");
    }

    #[test]
    fn zero_beta_reduction_consistency() {
        // cosh(0) = 1: two independent seeds must agree within 3 sigma
        let a = ore_vmc(OreParameter::new(0.0).unwrap(), 60_000, 1).unwrap();
        let b = ore_vmc(OreParameter::new(0.0).unwrap(), 60_000, 99).unwrap();
        let sigma = (a.stderr * a.stderr + b.stderr * b.stderr).sqrt();
        assert!((a.energy - b.energy).abs() < 3.0 * sigma, "{} vs {}", a.energy, b.energy);
    }

    #[test]
    fn error_scaling_with_samples() {
        let a = ore_vmc(OreParameter::new(0.3).unwrap(), 100_000, 7).unwrap();
        let b = ore_vmc(OreParameter::new(0.3).unwrap(), 200_000, 7).unwrap();
        let ratio = b.stderr / a.stderr;
        let expected = 1.0 / 2.0_f64.sqrt();
        assert!(
            (ratio - expected).abs() < 0.2 * expected + 0.08,
            "ratio {ratio} expected about {expected}"
        );
    }

    #[test]
    fn cosh_factor_lowers_the_energy() {
        let e0 = ore_vmc(OreParameter::new(0.0).unwrap(), 80_000, 3).unwrap();
        let e5 = ore_vmc(OreParameter::new(0.5).unwrap(), 80_000, 3).unwrap();
        let sigma = (e0.scale_opt_stderr.powi(2) + e5.scale_opt_stderr.powi(2)).sqrt();
        assert!(e5.scale_opt_energy < e0.scale_opt_energy + 3.0 * sigma);
    }

    #[test]
    fn pooling_reduces_error() {
        let a = ore_vmc(OreParameter::new(0.4).unwrap(), 50_000, 21).unwrap();
        let b = ore_vmc(OreParameter::new(0.4).unwrap(), 50_000, 22).unwrap();
        let (pooled, se) = pool_estimates(&[a.clone(), b.clone()]).unwrap();
        assert!(se < a.scale_opt_stderr && se < b.scale_opt_stderr);
        assert!((pooled - a.scale_opt_energy).abs() < 4.0 * a.scale_opt_stderr);
    }
}

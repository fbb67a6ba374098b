//! Canonical representation of few-body Coulomb systems and the simplex
//! geometry shared by all modules.
//!
//! Masses enter as inverse masses `x = 1/m` (in electron-mass units), with
//! `x = 0` encoding an infinitely heavy particle. A three-body system maps to
//! the point `alpha_i = x_i / (x_1+x_2+x_3)` of the barycentric triangle;
//! stability depends only on that point and on the charges.

pub mod geometry;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Tolerance for simplex-sum checks and geometric predicates.
pub const GEOM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SystemError {
    #[error("all charges share one sign; the system is trivially unbound")]
    TriviallyUnbound,
    #[error("unsupported charge pattern: {0}")]
    UnsupportedCharges(String),
    #[error("invalid mass: {0}")]
    InvalidMass(String),
    #[error("invalid charge: {0}")]
    InvalidCharge(String),
    #[error("degenerate point: all inverse masses vanish")]
    DegenerateSimplex,
    #[error("particle count {0} not supported (expected 3 or 4)")]
    BadCount(usize),
    #[error("system is not in canonical form: {0}")]
    NotCanonical(String),
    #[error("invalid simplex coordinates: {0}")]
    BadSimplexPoint(String),
    #[error("points belong to different coordinate charts")]
    ChartMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Charge layout of a system after sign counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChargeStructure {
    /// Three bodies, one charge sign in the minority.
    ThreeBody,
    /// Four bodies, two of each sign.
    TwoTwo,
    /// Four bodies, a single particle against three of the opposite sign
    /// (e.g. a doubly negative hydrogen ion candidate). Pair-level
    /// thresholds are incomplete for these; they are handled by charge
    /// counting rules.
    OneThree,
}

/// A nonrelativistic Coulomb system of 3 or 4 point particles.
///
/// Invariants enforced at construction: particle count 3 or 4; every inverse
/// mass finite and `>= 0` with at least one `> 0`; every charge finite and
/// nonzero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleSystem {
    x: Vec<f64>,
    q: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
}

impl ParticleSystem {
    pub fn new(x: &[f64], q: &[f64]) -> Result<Self, SystemError> {
        if x.len() != q.len() || !(x.len() == 3 || x.len() == 4) {
            return Err(SystemError::BadCount(x.len()));
        }
        for &xi in x {
            if !xi.is_finite() || xi < 0.0 {
                return Err(SystemError::InvalidMass(format!(
                    "inverse mass {xi} must be finite and >= 0"
                )));
            }
        }
        if x.iter().all(|&xi| xi == 0.0) {
            return Err(SystemError::InvalidMass(
                "at least one particle must have finite mass".into(),
            ));
        }
        for &qi in q {
            if !qi.is_finite() || qi == 0.0 {
                return Err(SystemError::InvalidCharge(format!(
                    "charge {qi} must be finite and nonzero"
                )));
            }
        }
        Ok(Self { x: x.to_vec(), q: q.to_vec(), labels: None })
    }

    /// Build from masses (electron-mass units), `f64::INFINITY` allowed.
    pub fn from_masses(m: &[f64], q: &[f64]) -> Result<Self, SystemError> {
        let x: Vec<f64> = m
            .iter()
            .map(|&mi| if mi.is_infinite() { 0.0 } else { 1.0 / mi })
            .collect();
        Self::new(&x, q)
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        self.labels = Some(labels.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Inverse masses; 0 encodes infinite mass.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Signed charges in units of the elementary charge.
    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn charge_structure(&self) -> Result<ChargeStructure, SystemError> {
        let pos = self.q.iter().filter(|&&qi| qi > 0.0).count();
        let neg = self.n() - pos;
        match (self.n(), pos.min(neg)) {
            (_, 0) => Err(SystemError::TriviallyUnbound),
            (3, 1) => Ok(ChargeStructure::ThreeBody),
            (4, 2) => Ok(ChargeStructure::TwoTwo),
            (4, 1) => Ok(ChargeStructure::OneThree),
            _ => Err(SystemError::UnsupportedCharges(format!(
                "{pos} positive / {neg} negative"
            ))),
        }
    }

    /// True when already in the canonical order produced by [`canonicalize`].
    pub fn is_canonical(&self) -> bool {
        match canonicalize(self) {
            Ok(c) => c.system == *self,
            Err(_) => false,
        }
    }

    /// Uniform rescaling of all charges (stability is invariant under it).
    pub fn rescale_charges(&self, c: f64) -> Self {
        let mut out = self.clone();
        for qi in &mut out.q {
            *qi *= c;
        }
        out
    }

    /// Uniform rescaling of all masses (x -> x/c).
    pub fn rescale_masses(&self, c: f64) -> Self {
        let mut out = self.clone();
        for xi in &mut out.x {
            *xi /= c;
        }
        out
    }
}

impl fmt::Display for ParticleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .x
            .iter()
            .zip(&self.q)
            .map(|(&x, &q)| {
                let m = if x == 0.0 { "inf".to_string() } else { format!("{}", 1.0 / x) };
                format!("{m}:{q:+}")
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `"m1:q1, m2:q2, m3:q3[, m4:q4]"` with `inf` allowed for a mass.
impl FromStr for ParticleSystem {
    type Err = SystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut m = Vec::new();
        let mut q = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let (ms, qs) = item
                .split_once(':')
                .ok_or_else(|| SystemError::Parse(format!("expected `mass:charge`, got `{item}`")))?;
            let ms = ms.trim();
            let mass = if ms.eq_ignore_ascii_case("inf") {
                f64::INFINITY
            } else {
                ms.parse::<f64>()
                    .map_err(|e| SystemError::Parse(format!("bad mass `{ms}`: {e}")))?
            };
            if !(mass > 0.0) {
                return Err(SystemError::Parse(format!("mass `{ms}` must be positive")));
            }
            let charge = qs
                .trim()
                .parse::<f64>()
                .map_err(|e| SystemError::Parse(format!("bad charge `{qs}`: {e}")))?;
            m.push(mass);
            q.push(charge);
        }
        ParticleSystem::from_masses(&m, &q)
    }
}

/// Result of [`canonicalize`]: the reordered system plus the permutation and
/// charge conjugation that produced it. `permutation[k]` is the index in the
/// input of the particle now at position `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Canonical {
    pub system: ParticleSystem,
    pub permutation: Vec<usize>,
    pub conjugated: bool,
}

/// Reorder a system into canonical form.
///
/// Three bodies: particle 1 carries the minority charge sign (made positive
/// by charge conjugation if necessary), particles 2 and 3 carry the common
/// sign with `m2 >= m3` (ties keep input order). Four bodies with a 2+2
/// split: positives first, each group ordered by descending mass, conjugated
/// so the heaviest particle is positive. A 1+3 split puts the minority first.
/// Verdicts are invariant under this map.
pub fn canonicalize(sys: &ParticleSystem) -> Result<Canonical, SystemError> {
    let structure = sys.charge_structure()?;
    // Sort by descending mass = ascending inverse mass; stable sort keeps
    // input order on ties.
    let by_mass = |idx: &mut Vec<usize>, sys: &ParticleSystem| {
        idx.sort_by(|&a, &b| sys.x[a].partial_cmp(&sys.x[b]).unwrap());
    };
    let mut perm: Vec<usize>;
    let conjugated;
    match structure {
        ChargeStructure::ThreeBody => {
            let pos: Vec<usize> = (0..3).filter(|&i| sys.q[i] > 0.0).collect();
            let (minority, mut majority): (usize, Vec<usize>) = if pos.len() == 1 {
                (pos[0], (0..3).filter(|&i| sys.q[i] < 0.0).collect())
            } else {
                let neg = (0..3).find(|&i| sys.q[i] < 0.0).unwrap();
                (neg, pos)
            };
            conjugated = sys.q[minority] < 0.0;
            by_mass(&mut majority, sys);
            perm = vec![minority, majority[0], majority[1]];
        }
        ChargeStructure::TwoTwo => {
            let heaviest = (0..4)
                .min_by(|&a, &b| sys.x[a].partial_cmp(&sys.x[b]).unwrap())
                .unwrap();
            conjugated = sys.q[heaviest] < 0.0;
            let sign = if conjugated { -1.0 } else { 1.0 };
            let mut first: Vec<usize> = (0..4).filter(|&i| sys.q[i] * sign > 0.0).collect();
            let mut second: Vec<usize> = (0..4).filter(|&i| sys.q[i] * sign < 0.0).collect();
            by_mass(&mut first, sys);
            by_mass(&mut second, sys);
            perm = first;
            perm.extend(second);
        }
        ChargeStructure::OneThree => {
            let pos = (0..4).filter(|&i| sys.q[i] > 0.0).count();
            let minority_sign = if pos == 1 { 1.0 } else { -1.0 };
            let minority = (0..4).find(|&i| sys.q[i] * minority_sign > 0.0).unwrap();
            conjugated = minority_sign < 0.0;
            let mut rest: Vec<usize> = (0..4).filter(|&i| i != minority).collect();
            by_mass(&mut rest, sys);
            perm = vec![minority];
            perm.extend(rest);
        }
    }
    let sign = if conjugated { -1.0 } else { 1.0 };
    let x: Vec<f64> = perm.iter().map(|&i| sys.x[i]).collect();
    let q: Vec<f64> = perm.iter().map(|&i| sys.q[i] * sign).collect();
    let labels = sys
        .labels
        .as_ref()
        .map(|ls| perm.iter().map(|&i| ls[i].clone()).collect());
    Ok(Canonical {
        system: ParticleSystem { x, q, labels },
        permutation: perm,
        conjugated,
    })
}

/// A point of the barycentric triangle of constrained inverse masses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    alpha: [f64; 3],
}

impl SimplexPoint {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self, SystemError> {
        let alpha = [a1, a2, a3];
        for a in alpha {
            if !a.is_finite() || !(-GEOM_TOL..=1.0 + GEOM_TOL).contains(&a) {
                return Err(SystemError::BadSimplexPoint(format!(
                    "coordinate {a} outside [0, 1]"
                )));
            }
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > GEOM_TOL {
            return Err(SystemError::BadSimplexPoint(format!(
                "coordinates sum to {sum}, expected 1"
            )));
        }
        Ok(Self { alpha: [a1.max(0.0), a2.max(0.0), a3.max(0.0)] })
    }

    pub fn alpha(&self) -> [f64; 3] {
        self.alpha
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha[0]
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha[1]
    }

    pub fn alpha3(&self) -> f64 {
        self.alpha[2]
    }

    /// Two independent coordinates `(alpha2, alpha3)` used by the geometry kit.
    pub fn uv(&self) -> [f64; 2] {
        [self.alpha[1], self.alpha[2]]
    }

    pub fn from_uv(uv: [f64; 2]) -> Result<Self, SystemError> {
        Self::new(1.0 - uv[0] - uv[1], uv[0], uv[1])
    }

    /// Swap particles 2 and 3 (mirror across the symmetry axis).
    pub fn reflected(&self) -> Self {
        Self { alpha: [self.alpha[0], self.alpha[2], self.alpha[1]] }
    }

    /// The half-triangle `alpha2 <= alpha3` (i.e. `m2 >= m3`), where the
    /// star-shape and convexity rules operate.
    pub fn is_left_half(&self) -> bool {
        self.alpha[1] <= self.alpha[2] + GEOM_TOL
    }

    /// Reflect into the left half if needed.
    pub fn to_left_half(&self) -> Self {
        if self.is_left_half() {
            *self
        } else {
            self.reflected()
        }
    }

    /// On the symmetry axis `alpha2 = alpha3` within tolerance `tol`.
    pub fn is_on_axis(&self, tol: f64) -> bool {
        (self.alpha[1] - self.alpha[2]).abs() <= tol
    }
}

/// Map a canonical three-body system to its triangle point
/// `alpha_i = x_i / sum(x)`. Invariant under uniform mass rescaling.
pub fn to_simplex(sys: &ParticleSystem) -> Result<SimplexPoint, SystemError> {
    if sys.n() != 3 {
        return Err(SystemError::BadCount(sys.n()));
    }
    let sum: f64 = sys.x().iter().sum();
    if sum <= 0.0 {
        return Err(SystemError::DegenerateSimplex);
    }
    SimplexPoint::new(sys.x()[0] / sum, sys.x()[1] / sum, sys.x()[2] / sum)
}

/// Representative system at a triangle point, normalized so `sum(x) = 1`.
/// Charges are supplied separately; `to_simplex(from_simplex(a, q)) == a`.
pub fn from_simplex(alpha: &SimplexPoint, q: &[f64; 3]) -> Result<ParticleSystem, SystemError> {
    let a = alpha.alpha();
    ParticleSystem::new(&a, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masses::*;

    fn sys(m: &[f64], q: &[f64]) -> ParticleSystem {
        ParticleSystem::from_masses(m, q).unwrap()
    }

    #[test]
    fn canonicalize_already_canonical() {
        let s = sys(&[f64::INFINITY, 1.0, 1.0], &[1.0, -1.0, -1.0]);
        let c = canonicalize(&s).unwrap();
        assert_eq!(c.system, s);
        assert_eq!(c.permutation, vec![0, 1, 2]);
        assert!(!c.conjugated);
    }

    #[test]
    fn canonicalize_reorders_by_minority_and_mass() {
        // (e-, p+, mu-) -> (p+, mu-, e-)
        let s = sys(&[ELECTRON, PROTON, MUON], &[-1.0, 1.0, -1.0]);
        let c = canonicalize(&s).unwrap();
        assert_eq!(c.permutation, vec![1, 2, 0]);
        assert_eq!(c.system.q(), &[1.0, -1.0, -1.0]);
        assert!(c.system.x()[1] < c.system.x()[2]);
        assert!(!c.conjugated);
    }

    #[test]
    fn canonicalize_conjugates_negative_minority() {
        // p e+ e-: minority is the electron; conjugation makes slot 1 positive.
        let s = sys(&[PROTON, ELECTRON, ELECTRON], &[1.0, 1.0, -1.0]);
        let c = canonicalize(&s).unwrap();
        assert!(c.conjugated);
        assert_eq!(c.system.q(), &[1.0, -1.0, -1.0]);
        // heavier negative (the conjugated proton) sits second
        assert_eq!(c.system.x()[1], 1.0 / PROTON);
    }

    #[test]
    fn canonicalize_rejects_same_sign() {
        let s = sys(&[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0]);
        assert_eq!(canonicalize(&s).unwrap_err(), SystemError::TriviallyUnbound);
    }

    #[test]
    fn canonicalize_idempotent() {
        let s = sys(&[PROTON, ELECTRON, MUON], &[-1.0, 1.0, 1.0]);
        let once = canonicalize(&s).unwrap().system;
        let twice = canonicalize(&once).unwrap();
        assert_eq!(once, twice.system);
        assert_eq!(twice.permutation, vec![0, 1, 2]);
        assert!(!twice.conjugated);
    }

    #[test]
    fn canonicalize_two_two() {
        // e- e+ p+ p-(antiproton): heaviest is p+, no conjugation; groups by mass.
        let s = sys(&[1.0, 1.0, PROTON, PROTON], &[-1.0, 1.0, 1.0, -1.0]);
        let c = canonicalize(&s).unwrap();
        assert_eq!(c.system.q(), &[1.0, 1.0, -1.0, -1.0]);
        assert_eq!(c.permutation, vec![2, 1, 3, 0]);
    }

    #[test]
    fn canonicalize_one_three_flagged() {
        let s = sys(&[PROTON, 1.0, 1.0, 1.0], &[1.0, -1.0, -1.0, -1.0]);
        let c = canonicalize(&s).unwrap();
        assert_eq!(c.system.charge_structure().unwrap(), ChargeStructure::OneThree);
        assert_eq!(c.permutation[0], 0);
    }

    #[test]
    fn to_simplex_symmetric_hminus() {
        let s = sys(&[f64::INFINITY, 1.0, 1.0], &[1.0, -1.0, -1.0]);
        let a = to_simplex(&s).unwrap().alpha();
        assert_eq!(a, [0.0, 0.5, 0.5]);
    }

    #[test]
    fn to_simplex_pmue() {
        let c = canonicalize(&sys(&[PROTON, MUON, ELECTRON], &[1.0, -1.0, -1.0])).unwrap();
        let a = to_simplex(&c.system).unwrap().alpha();
        assert!((a[0] - 0.000542).abs() < 1e-6, "{a:?}");
        assert!((a[1] - 0.004810).abs() < 1e-6);
        assert!((a[2] - 0.994648).abs() < 1e-6);
    }

    #[test]
    fn simplex_scale_invariance() {
        let s = sys(&[2.0, 3.0, 5.0], &[1.0, -1.0, -1.0]);
        let scaled = s.rescale_masses(7.5);
        let a = to_simplex(&s).unwrap().alpha();
        let b = to_simplex(&scaled).unwrap().alpha();
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn from_simplex_round_trip() {
        let p = SimplexPoint::new(0.6016, 0.0, 0.3984).unwrap();
        let s = from_simplex(&p, &[1.0, -1.0, -1.0]).unwrap();
        assert_eq!(s.x()[1], 0.0);
        let back = to_simplex(&s).unwrap();
        assert!((back.alpha1() - p.alpha1()).abs() < 1e-15);
    }

    #[test]
    fn from_simplex_equal_masses() {
        let p = SimplexPoint::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        let s = from_simplex(&p, &[1.0, -1.0, -1.0]).unwrap();
        for &xi in s.x() {
            assert!((1.0 / xi - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::new(0.5, 0.5, 0.5).is_err());
        assert!(SimplexPoint::new(-0.1, 0.6, 0.5).is_err());
        assert!(SimplexPoint::new(0.2, 0.3, 0.5).is_ok());
    }

    #[test]
    fn parse_system_literal() {
        let s: ParticleSystem = "inf:+1, 1:-1, 1:-1".parse().unwrap();
        assert_eq!(s.x(), &[0.0, 1.0, 1.0]);
        assert_eq!(s.q(), &[1.0, -1.0, -1.0]);
        let four: ParticleSystem = "1836.15:1, 1836.15:1, 1:-1, 1:-1".parse().unwrap();
        assert_eq!(four.n(), 4);
        assert!("1:-1, 2".parse::<ParticleSystem>().is_err());
        assert!("0:+1, 1:-1, 1:-1".parse::<ParticleSystem>().is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let s = sys(&[f64::INFINITY, 2.0, 1.0], &[2.0, -1.0, -1.0]);
        let t: ParticleSystem = s.to_string().parse().unwrap();
        assert_eq!(s, t);
    }
}

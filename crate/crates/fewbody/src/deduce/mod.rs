//! The theorem engine: geometric deduction rules over the mass triangle and
//! the inverse-charge plane, producing verdicts with provenance chains.
//!
//! The architectural asymmetry: instability propagates only from cited
//! anchor facts through star-shape and convexity arguments; numerics alone
//! never certify instability, because variational bounds are one-sided.
//! Certified stability comes from charge-range rules, the equal-mass rule,
//! or the axis excess-binding band.

use crate::systems::geometry::{line_intersect_edges, Chart, Line, Point2, Polygon};
use crate::systems::{canonicalize, to_simplex, ParticleSystem, SimplexPoint, SystemError};
use crate::thresholds::lowest_threshold;
use crate::varsolve::{
    svm_optimize, ExcessBindingTable, SolverConfig, VariationalResult, CERT_MARGIN_REL,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuleError {
    #[error("fact lives in a different chart")]
    ChartMismatch,
    #[error("star extension is only taken toward summit 3 in the left half")]
    WrongVertex,
    #[error("facts carry different ratio levels")]
    MismatchedEpsilon,
    #[error("facts must share a status and half-triangle/sector: {0}")]
    IncompatibleFacts(String),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Stability status of a verdict. Certified statuses rest on cited rules;
/// `NumericallyStable` rests on a variational upper bound; `Unknown` is an
/// acceptable outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    CertifiedStable,
    CertifiedUnstable,
    NumericallyStable,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::CertifiedStable => "certified-stable",
            Status::CertifiedUnstable => "certified-unstable",
            Status::NumericallyStable => "numerically-stable",
            Status::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// One applied rule with its citation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub rule: String,
    pub citation: String,
}

impl Rule {
    pub fn new(rule: &str, citation: &str) -> Self {
        Self { rule: rule.into(), citation: citation.into() }
    }
}

/// A stability verdict with its provenance chain. `also_applicable` records
/// rules that matched but were not the deciding one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub provenance: Vec<Rule>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub also_applicable: Vec<Rule>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variational: Option<VariationalResult>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Verdict {
    /// A certified verdict must carry at least one cited rule.
    pub fn certified(status: Status, provenance: Vec<Rule>) -> Self {
        assert!(
            !matches!(status, Status::CertifiedStable | Status::CertifiedUnstable)
                || !provenance.is_empty(),
            "certified verdicts need provenance"
        );
        Self {
            status,
            provenance,
            also_applicable: Vec::new(),
            variational: None,
            threshold: None,
            note: None,
        }
    }

    /// A numerically-stable verdict always references its variational result.
    pub fn numeric(result: VariationalResult, threshold: f64) -> Self {
        Self {
            status: Status::NumericallyStable,
            provenance: vec![Rule::new(
                "variational-upper-bound",
                "energy upper bound below the lowest dissociation threshold",
            )],
            also_applicable: Vec::new(),
            variational: Some(result),
            threshold: Some(threshold),
            note: None,
        }
    }

    pub fn unknown(note: &str) -> Self {
        Self {
            status: Status::Unknown,
            provenance: Vec::new(),
            also_applicable: Vec::new(),
            variational: None,
            threshold: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Geometric carrier of a fact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FactGeometry {
    Point(Point2),
    Segment(Point2, Point2),
    Region(Polygon),
}

/// What a fact asserts on its geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FactStatus {
    Unstable,
    Stable,
    /// `E(123)/E(12) <= 1 + epsilon` holds on the geometry.
    RatioLevel { epsilon: f64 },
}

/// A chart-tagged geometric fact with its citation. Simplex-chart facts are
/// kept in the left half (`alpha2 <= alpha3`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fact {
    pub chart: Chart,
    pub geometry: FactGeometry,
    pub status: FactStatus,
    pub citation: String,
}

impl Fact {
    pub fn point(chart: Chart, p: Point2, status: FactStatus, citation: &str) -> Result<Self, RuleError> {
        let fact = Self { chart, geometry: FactGeometry::Point(p), status, citation: citation.into() };
        fact.validate()?;
        Ok(fact)
    }

    fn validate(&self) -> Result<(), RuleError> {
        if let FactStatus::RatioLevel { epsilon } = self.status {
            if !(epsilon >= 0.0) {
                return Err(RuleError::IncompatibleFacts("ratio level needs epsilon >= 0".into()));
            }
        }
        if matches!(self.chart, Chart::Simplex { .. }) {
            for p in self.points() {
                if p[0] > p[1] + 1e-9 {
                    return Err(RuleError::IncompatibleFacts(format!(
                        "simplex fact at ({}, {}) leaves the left half",
                        p[0], p[1]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<Point2> {
        match &self.geometry {
            FactGeometry::Point(p) => vec![*p],
            FactGeometry::Segment(p, q) => vec![*p, *q],
            FactGeometry::Region(poly) => poly.vertices().to_vec(),
        }
    }
}

/// Extend an unstable point fact along the segment toward summit 3.
///
/// Raising `x3` at fixed `x1, x2` keeps the (12) threshold fixed while the
/// three-body energy cannot sink (Feynman-Hellmann), so instability at the
/// point propagates along the whole segment `alpha1/alpha2 = const` up to
/// the summit. Valid in the left half with `q2 = q3`.
pub fn star_extend(fact: &Fact, vertex: usize) -> Result<Fact, RuleError> {
    if vertex != 3 {
        return Err(RuleError::WrongVertex);
    }
    let q_eq = match fact.chart {
        Chart::Simplex { q2, q3 } => (q2 - q3).abs() < 1e-12,
        _ => false,
    };
    if !q_eq {
        return Err(RuleError::ChartMismatch);
    }
    if !matches!(fact.status, FactStatus::Unstable) {
        return Err(RuleError::IncompatibleFacts("star extension needs an unstable fact".into()));
    }
    let p = match fact.geometry {
        FactGeometry::Point(p) => p,
        _ => return Err(RuleError::IncompatibleFacts("star extension starts from a point".into())),
    };
    let summit = [0.0, 1.0];
    Ok(Fact {
        chart: fact.chart,
        geometry: FactGeometry::Segment(p, summit),
        status: FactStatus::Unstable,
        citation: format!(
            "{}; star-shape of the instability domain with respect to summit 3",
            fact.citation
        ),
    })
}

fn charge_sector(chart: &Chart, p: Point2) -> Result<f64, RuleError> {
    match chart {
        Chart::InverseCharge { alpha } => {
            if p[0] <= 0.0 || p[1] <= 0.0 {
                return Err(RuleError::IncompatibleFacts("z coordinates must be positive".into()));
            }
            let (q2, q3) = (1.0 / p[0], 1.0 / p[1]);
            Ok(crate::thresholds::charge_plane_dividing(alpha, q2, q3))
        }
        _ => Err(RuleError::ChartMismatch),
    }
}

/// Convex hull of unstable facts: the instability region is convex per half
/// triangle at fixed charges, and per threshold sector in the inverse-charge
/// plane, so the hull of unstable facts is unstable.
pub fn hull_unstable(facts: &[Fact]) -> Result<Fact, RuleError> {
    if facts.is_empty() {
        return Err(RuleError::IncompatibleFacts("no facts".into()));
    }
    let chart = facts[0].chart;
    let mut points = Vec::new();
    for f in facts {
        if f.chart != chart {
            return Err(RuleError::ChartMismatch);
        }
        if !matches!(f.status, FactStatus::Unstable) {
            return Err(RuleError::IncompatibleFacts("hull needs unstable facts".into()));
        }
        points.extend(f.points());
    }
    match chart {
        Chart::Simplex { .. } => {
            // validation below rejects facts leaving the left half
        }
        Chart::InverseCharge { .. } => {
            let sectors: Vec<f64> = points
                .iter()
                .map(|&p| charge_sector(&chart, p))
                .collect::<Result<_, _>>()?;
            let has_pos = sectors.iter().any(|&s| s > 1e-12);
            let has_neg = sectors.iter().any(|&s| s < -1e-12);
            if has_pos && has_neg {
                return Err(RuleError::IncompatibleFacts(
                    "inverse-charge facts straddle the dividing line".into(),
                ));
            }
        }
    }
    let poly = Polygon::convex_hull(chart, &points)
        .map_err(|e| RuleError::IncompatibleFacts(e.to_string()))?;
    let citation = {
        let mut cites: Vec<&str> = facts.iter().map(|f| f.citation.as_str()).collect();
        cites.dedup();
        let base = match chart {
            Chart::Simplex { .. } => "convexity of the instability domain (left half, fixed charges)",
            Chart::InverseCharge { .. } => {
                "convexity of the instability regions in the inverse charges (per threshold sector)"
            }
        };
        format!("{}; anchors: {}", base, cites.join(" | "))
    };
    let fact = Fact { chart, geometry: FactGeometry::Region(poly), status: FactStatus::Unstable, citation };
    fact.validate()?;
    Ok(fact)
}

/// Hull of facts sharing one ratio level `E(123)/E(12) <= 1 + eps`; the
/// level set is convex in the left half, and `eps = 0` recovers
/// [`hull_unstable`].
pub fn ratio_hull(facts: &[Fact], epsilon: f64) -> Result<Fact, RuleError> {
    if facts.is_empty() {
        return Err(RuleError::IncompatibleFacts("no facts".into()));
    }
    let chart = facts[0].chart;
    let mut points = Vec::new();
    for f in facts {
        if f.chart != chart {
            return Err(RuleError::ChartMismatch);
        }
        match f.status {
            FactStatus::RatioLevel { epsilon: e } if e == epsilon => {}
            FactStatus::Unstable if epsilon == 0.0 => {}
            _ => return Err(RuleError::MismatchedEpsilon),
        }
        points.extend(f.points());
    }
    let poly = Polygon::convex_hull(chart, &points)
        .map_err(|e| RuleError::IncompatibleFacts(e.to_string()))?;
    let status = if epsilon == 0.0 {
        FactStatus::Unstable
    } else {
        FactStatus::RatioLevel { epsilon }
    };
    let fact = Fact {
        chart,
        geometry: FactGeometry::Region(poly),
        status,
        citation: "convexity of relative-binding level sets (left half)".into(),
    };
    fact.validate()?;
    Ok(fact)
}

/// Critical parameter where a one-parameter family line crosses the hull
/// boundary: the smallest `t >= t_min` on the line that enters the region.
/// Returns `None` when the line misses the region.
pub fn line_boundary(line: &Line, hull: &Polygon, t_min: f64) -> Option<f64> {
    let hits = line_intersect_edges(line, hull);
    hits.into_iter().map(|(t, _)| t).find(|&t| t >= t_min - 1e-12)
}

/// Report on the family `p z+ z-` (a proton against a lighter
/// particle-antiparticle pair): certified instability threshold in the mass
/// ratio `rho = m_p / m_z`, next to the unverified literature value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PzzReport {
    /// Ratio above which the hull construction certifies instability.
    pub certified_above: f64,
    /// Claimed threshold 2.2 from the source literature; the construction
    /// behind it is not spelled out anywhere we can check, so it is
    /// surfaced but not certified.
    pub unverified_claim: f64,
}

/// Built-in anchor facts and constants, all with citations.
#[derive(Debug, Clone)]
pub struct RuleBase {
    /// Limit point of `p_inf A+ B-` instability (`m_A/m_B = 1.51`), on the
    /// side `alpha2 = 0`.
    pub point_x: SimplexPoint,
    /// Limit point of `p_inf A- e-` instability (`m_A = 1.57 m_e`), on the
    /// side `alpha1 = 0`.
    pub point_y: SimplexPoint,
    /// Hull of {summit 3, X, Y} in the unit-charge left half.
    pub unit_hull: Polygon,
    /// Critical charge of the two-centre problem: no binding for `q > 1.24`.
    pub bo_critical_charge: f64,
    /// Charge window in which the equal-charge stability band splits in two.
    pub band_split_window: (f64, f64),
    /// Equal-charge value above which the symmetric midpoint `alpha1 = 0`
    /// loses binding.
    pub midpoint_critical_charge: f64,
    pub version: &'static str,
}

pub const CITE_HILL: &str = "Hill: equal masses of the two like-charged particles imply stability";
pub const CITE_GLASER: &str = "Glaser-Grosse-Martin-Thirring: p_inf A- e- is unstable for m_A > 1.57 m_e";
pub const CITE_ARMOUR: &str = "Armour-Schrader: p_inf A+ B- is unstable for m_A/m_B < 1.51";
pub const CITE_HOGREVE: &str = "Hogreve: the Born-Oppenheimer two-centre system loses binding for q > 1.24";
pub const CITE_LIEB: &str = "Lieb: a charge Z binds fewer than 2Z + 1 unit charges";
pub const CITE_SUMMIT3: &str = "two infinitely heavy opposite charges exert no net force on the third particle";
pub const CITE_HILL_MIDPOINT: &str =
    "Hill et al.: the symmetric midpoint alpha1 = 0 loses binding for q >= 1.1";
pub const CITE_SUBUNIT: &str =
    "sub-unit like charges: the compact pair keeps a net long-range Coulomb attraction on the third particle";

impl RuleBase {
    pub fn builtin() -> Self {
        let point_x = SimplexPoint::new(1.51 / 2.51, 0.0, 1.0 / 2.51).unwrap();
        let point_y = SimplexPoint::new(0.0, 1.0 / 2.57, 1.57 / 2.57).unwrap();
        let chart = Chart::unit_simplex();
        let unit_hull = Polygon::convex_hull(
            chart,
            &[[0.0, 1.0], point_x.uv(), point_y.uv()],
        )
        .unwrap();
        Self {
            point_x,
            point_y,
            unit_hull,
            bo_critical_charge: 1.24,
            band_split_window: (1.0, 1.1),
            midpoint_critical_charge: 1.1,
            version: "rulebase-1",
        }
    }

    /// The anchor facts of the unit-charge chart as a fact list.
    pub fn unit_anchor_facts(&self) -> Vec<Fact> {
        let chart = Chart::unit_simplex();
        vec![
            Fact::point(chart, [0.0, 1.0], FactStatus::Unstable, CITE_SUMMIT3).unwrap(),
            Fact::point(chart, self.point_x.uv(), FactStatus::Unstable, CITE_ARMOUR).unwrap(),
            Fact::point(chart, self.point_y.uv(), FactStatus::Unstable, CITE_GLASER).unwrap(),
        ]
    }

    /// Family line of `p z+ z-` systems in `(alpha2, alpha3)`: from the
    /// equal-mass centre (rho = 1) toward `(0, 1/2)` (rho -> inf), with
    /// `alpha2 = 1/(2 rho + 1)` and `alpha1 = alpha3`.
    pub fn pzz_family_line() -> Line {
        Line::through([1.0 / 3.0, 1.0 / 3.0], [0.0, 0.5])
    }

    /// Certified instability threshold of the `p z+ z-` family from the
    /// unit hull, with the unverified literature claim alongside.
    pub fn pzz_report(&self) -> Option<PzzReport> {
        let line = Self::pzz_family_line();
        let t = line_boundary(&line, &self.unit_hull, 0.0)?;
        let u = line.at(t)[0];
        Some(PzzReport { certified_above: (1.0 - u) / (2.0 * u), unverified_claim: 2.2 })
    }
}

/// Emit the unstable point fact at `alpha = (0, 1/2, 1/2)` when
/// `1/q2 + 1/q3 <= 1` (charge counting at the symmetric midpoint).
pub fn lieb_point_rule(q2: f64, q3: f64) -> Option<Fact> {
    assert!(q2 > 0.0 && q3 > 0.0);
    if 1.0 / q2 + 1.0 / q3 <= 1.0 {
        Some(
            Fact::point(
                Chart::Simplex { q2, q3 },
                [0.5, 0.5],
                FactStatus::Unstable,
                CITE_LIEB,
            )
            .unwrap(),
        )
    } else {
        None
    }
}

/// Certify stability at an off-axis point from the axis excess-binding
/// table: stability is assured when
/// `1/(alpha1 + alpha2) < (1 + g(alpha1)) * 2/(1 + alpha1)`.
pub fn axis_band_certify(alpha: &SimplexPoint, table: &ExcessBindingTable) -> Verdict {
    let left = alpha.to_left_half();
    let a1 = left.alpha1();
    let a2 = left.alpha2();
    match table.conservative_g(a1) {
        None => Verdict::unknown(&format!("alpha1 = {a1:.4} outside the excess-binding table")),
        Some(g) => {
            let lhs = 1.0 / (a1 + a2);
            let rhs = (1.0 + g.max(0.0)) * 2.0 / (1.0 + a1);
            if lhs < rhs {
                Verdict::certified(
                    Status::CertifiedStable,
                    vec![
                        Rule::new(
                            "axis-band",
                            "concavity along alpha1 = const plus the solver's axis excess binding",
                        ),
                        Rule::new("hill-axis", CITE_HILL),
                    ],
                )
            } else {
                Verdict::unknown(&format!(
                    "band condition fails: 1/(a1+a2) = {lhs:.4} >= {rhs:.4}"
                ))
            }
        }
    }
}

/// The deduction engine: rule base plus optional solver-backed extensions.
#[derive(Debug, Clone)]
pub struct Engine {
    pub rules: RuleBase,
    /// Axis excess-binding table for the band rule (charge-matched).
    pub gtable: Option<ExcessBindingTable>,
    /// Solver fallback configuration; `None` keeps the engine rules-only.
    pub solver: Option<SolverConfig>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self { rules: RuleBase::builtin(), gtable: None, solver: None }
    }

    pub fn with_gtable(mut self, table: ExcessBindingTable) -> Self {
        self.gtable = Some(table);
        self
    }

    pub fn with_solver(mut self, cfg: SolverConfig) -> Self {
        self.solver = Some(cfg);
        self
    }

    /// Ordered rule evaluation for a three-body system: charge-range rules,
    /// exact-symmetry rules, geometric facts, band certification, then the
    /// solver fallback. The first decisive rule wins; every other applicable
    /// rule is still logged.
    pub fn evaluate_rules(&self, sys: &ParticleSystem) -> Result<Verdict, SystemError> {
        let canonical = canonicalize(sys)?;
        let c = &canonical.system;
        if c.n() != 3 {
            return Err(SystemError::BadCount(c.n()));
        }
        // charges normalized to q1 = 1; q2 >= 0 sits on the heavier particle
        let q1 = c.q()[0];
        let q2 = c.q()[1].abs() / q1;
        let q3 = c.q()[2].abs() / q1;
        let alpha = to_simplex(c)?;
        let masses_equal = {
            let (x2, x3) = (c.x()[1], c.x()[2]);
            (x2 - x3).abs() <= 1e-12 * x3.abs().max(1.0)
        };
        let unit_charges = (q2 - 1.0).abs() < 1e-12 && (q3 - 1.0).abs() < 1e-12;
        let bo = self.rules.bo_critical_charge;

        let mut decided: Option<Verdict> = None;
        let mut applicable: Vec<Rule> = Vec::new();
        let mut decide = |v: Verdict, applicable: &mut Vec<Rule>| {
            if decided.is_none() {
                decided = Some(v);
            } else {
                applicable.extend(v.provenance);
            }
        };

        // 1. charge-range rules
        if q2 < 1.0 && q3 < 1.0 {
            decide(
                Verdict::certified(
                    Status::CertifiedStable,
                    vec![Rule::new("sub-unit-charges", CITE_SUBUNIT)],
                ),
                &mut applicable,
            );
        }
        if (q2 - q3).abs() < 1e-12 && q2 > bo {
            decide(
                Verdict::certified(
                    Status::CertifiedUnstable,
                    vec![
                        Rule::new("equal-overcritical-charges", CITE_HOGREVE),
                        Rule::new("midpoint-anchor", CITE_HILL_MIDPOINT),
                        Rule::new(
                            "axis-convexity-and-star",
                            "instability along the whole symmetric axis by convexity, swept over the triangle by the star-shape property",
                        ),
                    ],
                ),
                &mut applicable,
            );
        }
        // composite rule: overcritical charge on the not-lighter particle
        if q2 > bo && q2 >= q3 {
            decide(
                Verdict::certified(
                    Status::CertifiedUnstable,
                    vec![
                        Rule::new("overcritical-charge-on-heavier", CITE_HOGREVE),
                        Rule::new(
                            "axis-then-star",
                            "no stability on the equal-mass axis for either charge above 1.24 (concavity in the inverse charges), extended to m2 >= m3 by the star-shape property",
                        ),
                    ],
                ),
                &mut applicable,
            );
        }
        if masses_equal && q2.max(q3) > bo {
            decide(
                Verdict::certified(
                    Status::CertifiedUnstable,
                    vec![
                        Rule::new("equal-mass-overcritical-charge", CITE_HOGREVE),
                        Rule::new(
                            "axis-charge-concavity",
                            "instability across the equal-mass axis by concavity in the inverse charges",
                        ),
                    ],
                ),
                &mut applicable,
            );
        }
        if let Some(fact) = lieb_point_rule(q2.max(1e-300), q3.max(1e-300)) {
            let at_point = alpha.alpha1() <= 1e-12 && masses_equal;
            if at_point {
                decide(
                    Verdict::certified(
                        Status::CertifiedUnstable,
                        vec![Rule::new("lieb-midpoint", &fact.citation)],
                    ),
                    &mut applicable,
                );
            }
        }

        // 2. exact-symmetry rules
        if unit_charges && masses_equal {
            decide(
                Verdict::certified(Status::CertifiedStable, vec![Rule::new("hill-equal-mass", CITE_HILL)]),
                &mut applicable,
            );
        }

        // 3. geometric facts (unit charges): membership in the anchor hull
        if unit_charges {
            let left = alpha.to_left_half();
            if self.rules.unit_hull.contains_unchecked(left.uv()) {
                decide(
                    Verdict::certified(
                        Status::CertifiedUnstable,
                        vec![
                            Rule::new(
                                "anchor-hull-membership",
                                "convexity of the instability domain (left half)",
                            ),
                            Rule::new("anchor-x", CITE_ARMOUR),
                            Rule::new("anchor-y", CITE_GLASER),
                            Rule::new("anchor-summit", CITE_SUMMIT3),
                        ],
                    ),
                    &mut applicable,
                );
            }
        }

        // 4. axis band certification
        if let Some(table) = &self.gtable {
            if (q2 - q3).abs() < 1e-12 && (table.charge - q2).abs() < 1e-12 {
                let v = axis_band_certify(&alpha, table);
                if v.status == Status::CertifiedStable {
                    decide(v, &mut applicable);
                }
            }
        }

        if let Some(mut v) = decided {
            v.also_applicable = applicable;
            return Ok(v);
        }

        // 5. solver fallback: one-sided, can only certify stability
        if let Some(cfg) = &self.solver {
            if let (Ok(res), Ok(thr)) = (svm_optimize(c, cfg), lowest_threshold(c)) {
                if res.energy <= thr.energy - CERT_MARGIN_REL * thr.energy.abs() {
                    return Ok(Verdict::numeric(res, thr.energy));
                }
                let mut v = Verdict::unknown(
                    "variational bound does not clear the certification margin",
                );
                v.variational = Some(res);
                v.threshold = Some(thr.energy);
                return Ok(v);
            }
        }
        Ok(Verdict::unknown("no rule decides this system"))
    }
}

//! Planar geometry kit: convex polygons, membership tests and line
//! intersections at `1e-12` tolerance, with boundary counting as inside.
//!
//! All inputs to one operation must live in the same coordinate chart. The
//! triangle chart uses the two independent coordinates `(alpha2, alpha3)`;
//! the inverse-charge chart uses `(1/q2, 1/q3)` at fixed masses.

use super::{SimplexPoint, SystemError, GEOM_TOL};
use serde::{Deserialize, Serialize};

/// Coordinate chart a geometric fact lives in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Chart {
    /// Triangle of constrained inverse masses at fixed charge magnitudes
    /// `(1, q2, q3)`; coordinates are `(alpha2, alpha3)`.
    Simplex { q2: f64, q3: f64 },
    /// Inverse-charge plane `(z2, z3) = (1/q2, 1/q3)` at a fixed mass point,
    /// identified by its normalized inverse masses.
    InverseCharge { alpha: [f64; 3] },
}

impl Chart {
    pub fn unit_simplex() -> Self {
        Chart::Simplex { q2: 1.0, q3: 1.0 }
    }
}

pub type Point2 = [f64; 2];

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: Point2, b: Point2) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// A convex polygon (possibly degenerate: a point or a segment) in a chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    chart: Chart,
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn point(chart: Chart, p: Point2) -> Self {
        Self { chart, vertices: vec![p] }
    }

    /// The segment from `p` to `q`; its points are `(1-lambda) p + lambda q`.
    pub fn segment(chart: Chart, p: Point2, q: Point2) -> Self {
        Self { chart, vertices: vec![p, q] }
    }

    /// Convex hull of a point set (gift wrapping, counterclockwise).
    /// Collinear sets degenerate to a segment, singletons to a point.
    pub fn convex_hull(chart: Chart, points: &[Point2]) -> Result<Self, SystemError> {
        if points.is_empty() {
            return Err(SystemError::BadSimplexPoint("empty point set".into()));
        }
        // Dedup within tolerance.
        let mut pts: Vec<Point2> = Vec::new();
        for &p in points {
            if !pts.iter().any(|&r| dist(p, r) <= GEOM_TOL) {
                pts.push(p);
            }
        }
        if pts.len() == 1 {
            return Ok(Self::point(chart, pts[0]));
        }
        if pts.len() == 2 {
            return Ok(Self::segment(chart, pts[0], pts[1]));
        }
        // Check for a collinear set.
        let collinear = pts[2..]
            .iter()
            .all(|&p| cross(pts[0], pts[1], p).abs() <= GEOM_TOL);
        if collinear {
            let (mut lo, mut hi) = (pts[0], pts[0]);
            for &p in &pts {
                if (p[0], p[1]) < (lo[0], lo[1]) {
                    lo = p;
                }
                if (p[0], p[1]) > (hi[0], hi[1]) {
                    hi = p;
                }
            }
            return Ok(Self::segment(chart, lo, hi));
        }
        let start = *pts
            .iter()
            .min_by(|a, b| (a[0], a[1]).partial_cmp(&(b[0], b[1])).unwrap())
            .unwrap();
        let mut hull = Vec::new();
        let mut on = start;
        loop {
            hull.push(on);
            // counterclockwise wrap: pick the candidate with no point to its
            // right; on collinear ties take the farther point
            let mut next = pts[0];
            for &p in &pts {
                if dist(p, on) <= GEOM_TOL {
                    continue;
                }
                if dist(next, on) <= GEOM_TOL {
                    next = p;
                    continue;
                }
                let c = cross(on, next, p);
                if c < -GEOM_TOL || (c.abs() <= GEOM_TOL && dist(on, p) > dist(on, next)) {
                    next = p;
                }
            }
            on = next;
            if dist(on, start) <= GEOM_TOL {
                break;
            }
            if hull.len() > pts.len() {
                return Err(SystemError::BadSimplexPoint("hull did not close".into()));
            }
        }
        Ok(Self { chart, vertices: hull })
    }

    pub fn hull_of_simplex_points(
        chart: Chart,
        points: &[SimplexPoint],
    ) -> Result<Self, SystemError> {
        let uv: Vec<Point2> = points.iter().map(|p| p.uv()).collect();
        Self::convex_hull(chart, &uv)
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Membership with the boundary counting as inside.
    ///
    /// Uses signed-distance half-plane tests against every edge, so the
    /// decision quality is set by `GEOM_TOL` rather than by coordinate
    /// magnitudes. Rejects points from a different chart.
    pub fn contains(&self, chart: Chart, p: Point2) -> Result<bool, SystemError> {
        if chart != self.chart {
            return Err(SystemError::ChartMismatch);
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: Point2) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => dist(self.vertices[0], p) <= GEOM_TOL,
            2 => {
                let [a, b] = [self.vertices[0], self.vertices[1]];
                let len = dist(a, b);
                if len <= GEOM_TOL {
                    return dist(a, p) <= GEOM_TOL;
                }
                // perpendicular distance and segment-range check
                let t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (len * len);
                let t = t.clamp(0.0, 1.0);
                let proj = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
                dist(proj, p) <= GEOM_TOL
            }
            n => {
                // counterclockwise polygon: inside iff left of (or on) every edge,
                // with the tolerance scaled by edge length (signed distance).
                for k in 0..n {
                    let a = self.vertices[k];
                    let b = self.vertices[(k + 1) % n];
                    let len = dist(a, b).max(GEOM_TOL);
                    if cross(a, b, p) / len < -GEOM_TOL {
                        return false;
                    }
                }
                true
            }
        }
    }

    pub fn contains_simplex_point(&self, p: &SimplexPoint) -> Result<bool, SystemError> {
        match self.chart {
            Chart::Simplex { .. } => Ok(self.contains_unchecked(p.uv())),
            _ => Err(SystemError::ChartMismatch),
        }
    }
}

/// An infinite oriented line `origin + t * dir`.
#[derive(Debug, Clone, Copy)]
pub struct Line {
    pub origin: Point2,
    pub dir: Point2,
}

impl Line {
    pub fn through(p: Point2, q: Point2) -> Self {
        Self { origin: p, dir: [q[0] - p[0], q[1] - p[1]] }
    }

    pub fn at(&self, t: f64) -> Point2 {
        [self.origin[0] + t * self.dir[0], self.origin[1] + t * self.dir[1]]
    }
}

/// Intersections of a line with the edges of a polygon, as `(t, point)`
/// pairs sorted by the line parameter. Degenerate polygons yield at most one
/// point; tangential touching at a vertex reports that vertex once.
pub fn line_intersect_edges(line: &Line, poly: &Polygon) -> Vec<(f64, Point2)> {
    let verts = poly.vertices();
    let mut hits: Vec<(f64, Point2)> = Vec::new();
    let mut push = |t: f64, p: Point2| {
        if !hits.iter().any(|&(_, r)| dist(r, p) <= 1e-9) {
            hits.push((t, p));
        }
    };
    let edges: Vec<(Point2, Point2)> = match verts.len() {
        0 | 1 => Vec::new(),
        2 => vec![(verts[0], verts[1])],
        n => (0..n).map(|k| (verts[k], verts[(k + 1) % n])).collect(),
    };
    for (a, b) in edges {
        let e = [b[0] - a[0], b[1] - a[1]];
        let denom = line.dir[0] * e[1] - line.dir[1] * e[0];
        if denom.abs() <= GEOM_TOL {
            continue; // parallel (collinear overlap handled by vertex hits of neighbours)
        }
        let dx = [a[0] - line.origin[0], a[1] - line.origin[1]];
        let t = (dx[0] * e[1] - dx[1] * e[0]) / denom;
        let s = (dx[0] * line.dir[1] - dx[1] * line.dir[0]) / denom;
        if (-GEOM_TOL..=1.0 + GEOM_TOL).contains(&s) {
            push(t, line.at(t));
        }
    }
    if verts.len() == 1 {
        // point polygon: report if the line passes through it
        let p = verts[0];
        let d = cross(line.origin, line.at(1.0), p).abs();
        let norm = (line.dir[0].powi(2) + line.dir[1].powi(2)).sqrt().max(GEOM_TOL);
        if d / norm <= GEOM_TOL {
            let t = ((p[0] - line.origin[0]) * line.dir[0] + (p[1] - line.origin[1]) * line.dir[1])
                / (norm * norm);
            push(t, p);
        }
    }
    hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    hits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Chart {
        Chart::unit_simplex()
    }

    /// Whole triangle in (u, v) = (alpha2, alpha3) coordinates.
    fn whole_triangle() -> Polygon {
        Polygon::convex_hull(unit(), &[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn centroid_inside_whole_triangle() {
        let tri = whole_triangle();
        assert!(tri.contains(unit(), [1.0 / 3.0, 1.0 / 3.0]).unwrap());
    }

    #[test]
    fn vertex_counts_as_inside() {
        let tri = whole_triangle();
        assert!(tri.contains(unit(), [0.0, 1.0]).unwrap());
        assert!(!tri.contains(unit(), [1.0 + 5e-12, 0.0]).unwrap());
    }

    #[test]
    fn pmue_point_inside_xy_hull() {
        // hull {vertex3, X, Y} in (alpha2, alpha3) coordinates
        let hull = Polygon::convex_hull(
            unit(),
            &[[0.0, 1.0], [0.0, 0.3984063745], [0.3891050584, 0.6108949416]],
        )
        .unwrap();
        assert!(hull.contains(unit(), [0.004810, 0.994648]).unwrap());
        // a point on the symmetry axis is outside
        assert!(!hull.contains(unit(), [0.3, 0.3]).unwrap());
    }

    #[test]
    fn mixed_charts_rejected() {
        let tri = whole_triangle();
        let z = Chart::InverseCharge { alpha: [0.0, 0.5, 0.5] };
        assert_eq!(tri.contains(z, [0.1, 0.1]).unwrap_err(), SystemError::ChartMismatch);
    }

    #[test]
    fn degenerate_hulls() {
        let p = Polygon::convex_hull(unit(), &[[0.2, 0.3], [0.2, 0.3]]).unwrap();
        assert_eq!(p.vertices().len(), 1);
        assert!(p.contains(unit(), [0.2, 0.3]).unwrap());
        let s = Polygon::convex_hull(unit(), &[[0.0, 0.0], [0.5, 0.5], [0.25, 0.25]]).unwrap();
        assert_eq!(s.vertices().len(), 2);
        assert!(s.contains(unit(), [0.1, 0.1]).unwrap());
        assert!(!s.contains(unit(), [0.1, 0.2]).unwrap());
    }

    #[test]
    fn line_hits_triangle_twice() {
        let tri = whole_triangle();
        let line = Line::through([-0.5, 0.25], [1.5, 0.25]);
        let hits = line_intersect_edges(&line, &tri);
        assert_eq!(hits.len(), 2);
        assert!((hits[0].1[0] - 0.0).abs() < 1e-12);
        assert!((hits[1].1[0] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn line_missing_polygon() {
        let tri = whole_triangle();
        let line = Line::through([2.0, 2.0], [3.0, 2.0]);
        assert!(line_intersect_edges(&line, &tri).is_empty());
    }

    #[test]
    fn hull_oracle_equivalence() {
        // against an independent crossing-number membership test, away from
        // the boundary where the two conventions may differ
        fn crossing_number(vs: &[Point2], p: Point2) -> bool {
            let n = vs.len();
            let mut inside = false;
            let mut j = n - 1;
            for i in 0..n {
                let (vi, vj) = (vs[i], vs[j]);
                if (vi[1] > p[1]) != (vj[1] > p[1])
                    && p[0] < (vj[0] - vi[0]) * (p[1] - vi[1]) / (vj[1] - vi[1]) + vi[0]
                {
                    inside = !inside;
                }
                j = i;
            }
            inside
        }
        let mut rng = crate::varsolve::rng::CounterRng::new(7);
        let mut disagreements = 0;
        for _ in 0..1000 {
            let m = 3 + (rng.next_u64() % 6) as usize;
            let pts: Vec<Point2> = (0..m)
                .map(|_| [rng.uniform(), rng.uniform()])
                .collect();
            let hull = match Polygon::convex_hull(Chart::unit_simplex(), &pts) {
                Ok(h) if h.vertices().len() >= 3 => h,
                _ => continue,
            };
            for _ in 0..20 {
                let p = [rng.uniform() * 1.2 - 0.1, rng.uniform() * 1.2 - 0.1];
                // skip points too close to any edge for a fair comparison
                let near_edge = {
                    let vs = hull.vertices();
                    (0..vs.len()).any(|k| {
                        let a = vs[k];
                        let b = vs[(k + 1) % vs.len()];
                        let len = dist(a, b).max(1e-30);
                        (cross(a, b, p) / len).abs() < 1e-9
                    })
                };
                if near_edge {
                    continue;
                }
                if hull.contains_unchecked(p) != crossing_number(hull.vertices(), p) {
                    disagreements += 1;
                }
            }
        }
        assert_eq!(disagreements, 0);
    }
}

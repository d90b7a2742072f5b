//! Weighted mixed angulations together with the curvature data that fixes
//! an HCMU metric: the top curvature, the angle ratio and saddle levels.

use crate::angulation::{AngulationError, Color, MixedAngulation};
use crate::constraints::{AngleVector, TypePartition};
use crate::rational::{fmt_q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DataSetIssue {
    #[error(transparent)]
    Angulation(#[from] AngulationError),
    #[error("top curvature must be finite and positive")]
    BadK0,
    #[error("ratio {0} is outside [0, 1)")]
    BadRatio(String),
    #[error("weight of arc {arc} is not positive")]
    BadWeight { arc: usize },
    #[error("level of face {face} is outside (0, 1)")]
    BadLevel { face: String },
    #[error("expected {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

/// Every problem found by [`validate_dataset`]. Empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<DataSetIssue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Checks the scalar data against an angulation without constructing a
/// [`DataSet`]. Levels are indexed like `angulation.faces()`.
pub fn validate_dataset(
    angulation: &MixedAngulation,
    k0: f64,
    ratio: Q,
    weights: &[Q],
    levels: &[Q],
) -> ValidationReport {
    let mut issues = Vec::new();
    if !(k0.is_finite() && k0 > 0.0) {
        issues.push(DataSetIssue::BadK0);
    }
    if ratio < Q::zero() || ratio >= Q::one() {
        issues.push(DataSetIssue::BadRatio(fmt_q(&ratio)));
    }
    if weights.len() != angulation.num_arcs() {
        issues.push(DataSetIssue::CountMismatch {
            what: "weights",
            expected: angulation.num_arcs(),
            found: weights.len(),
        });
    }
    for (arc, w) in weights.iter().enumerate() {
        if *w <= Q::zero() {
            issues.push(DataSetIssue::BadWeight { arc });
        }
    }
    if levels.len() != angulation.num_faces() {
        issues.push(DataSetIssue::CountMismatch {
            what: "face levels",
            expected: angulation.num_faces(),
            found: levels.len(),
        });
    }
    for (f, s) in angulation.faces().iter().zip(levels) {
        if *s <= Q::zero() || *s >= Q::one() {
            issues.push(DataSetIssue::BadLevel {
                face: f.key.to_string(),
            });
        }
    }
    ValidationReport { issues }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    angulation: MixedAngulation,
    k0: f64,
    ratio: Q,
    weights: Vec<Q>,
    levels: Vec<Q>,
}

impl DataSet {
    pub fn new(
        angulation: MixedAngulation,
        k0: f64,
        ratio: Q,
        weights: Vec<Q>,
        levels: Vec<Q>,
    ) -> Result<DataSet, ValidationReport> {
        let report = validate_dataset(&angulation, k0, ratio, &weights, &levels);
        if !report.is_ok() {
            return Err(report);
        }
        Ok(DataSet {
            angulation,
            k0,
            ratio,
            weights,
            levels,
        })
    }

    pub fn angulation(&self) -> &MixedAngulation {
        &self.angulation
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn ratio(&self) -> Q {
        self.ratio
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn weight(&self, arc: usize) -> Q {
        self.weights[arc]
    }

    /// Levels in `angulation().faces()` order.
    pub fn levels(&self) -> &[Q] {
        &self.levels
    }

    pub fn level(&self, face: usize) -> Q {
        self.levels[face]
    }

    pub fn genus(&self) -> u32 {
        self.angulation.genus()
    }

    pub fn with_k0(mut self, k0: f64) -> Result<DataSet, ValidationReport> {
        self.k0 = k0;
        DataSet::new(self.angulation, self.k0, self.ratio, self.weights, self.levels)
    }

    pub fn with_levels(self, levels: Vec<Q>) -> Result<DataSet, ValidationReport> {
        DataSet::new(self.angulation, self.k0, self.ratio, self.weights, levels)
    }

    /// Sum of weights around a vertex.
    pub fn weight_sum(&self, v: usize) -> Q {
        self.angulation
            .rotation(v)
            .iter()
            .map(|d| self.weights[d.arc])
            .sum()
    }

    /// Cone angle at a vertex in units of `2*pi`.
    pub fn vertex_angle(&self, v: usize) -> Q {
        match self.angulation.color(v) {
            Color::Black => self.weight_sum(v),
            Color::White => self.ratio * self.weight_sum(v),
        }
    }

    /// Isomorphism of underlying maps that also matches weights, levels,
    /// ratio and top curvature.
    pub fn is_isomorphic(&self, other: &DataSet) -> bool {
        if self.ratio != other.ratio || self.k0 != other.k0 {
            return false;
        }
        let a = &self.angulation;
        let b = &other.angulation;
        if a.num_arcs() != b.num_arcs() {
            return false;
        }
        // Try every starting image; the angulation search returns only the first.
        (0..b.num_arcs()).any(|e| {
            a.isomorphism_from(b, 0, e).is_some_and(|iso| {
                (0..a.num_arcs()).all(|x| self.weights[x] == other.weights[iso.arcs[x]])
                    && (0..a.num_faces()).all(|f| self.levels[f] == other.levels[iso.faces[f]])
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    Maximum,
    Minimum,
    Saddle,
}

/// Where a cone point lives: a vertex or a face of the angulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Vertex(usize),
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConePoint {
    pub kind: PointKind,
    pub site: Site,
    pub angle: Q,
    pub smooth: bool,
}

/// Every vertex (in id order) and every face (in face order).
pub fn cone_points(d: &DataSet) -> Vec<ConePoint> {
    let a = d.angulation();
    let mut out = Vec::with_capacity(a.num_vertices() + a.num_faces());
    for v in 0..a.num_vertices() {
        let angle = d.vertex_angle(v);
        let kind = match a.color(v) {
            Color::Black => PointKind::Maximum,
            Color::White => PointKind::Minimum,
        };
        out.push(ConePoint {
            kind,
            site: Site::Vertex(v),
            angle,
            smooth: angle.is_one(),
        });
    }
    for (i, f) in a.faces().iter().enumerate() {
        out.push(ConePoint {
            kind: PointKind::Saddle,
            site: Site::Face(i),
            angle: Q::new(f.degree() as i64, 2),
            smooth: false,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// Number of maxima and minima.
    pub p: i64,
    pub q: i64,
    /// Smooth maxima and smooth minima.
    pub m_plus: i64,
    pub m_minus: i64,
    /// Sums of the cone angles at non-smooth maxima and minima.
    pub a_plus: Q,
    pub a_minus: Q,
    pub a: i64,
    pub m: i64,
    pub b: i64,
    pub cusps: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("Poincare-Hopf sum is {found}, expected {expected}")]
    PoincareHopf { found: i64, expected: i64 },
    #[error("arc count {arcs} differs from the saddle angle sum {sum}")]
    ArcCount { arcs: i64, sum: i64 },
    #[error("counts differ from the prescription: {0}")]
    Mismatch(String),
}

/// Counts of extremal points and arcs, checked against the Poincare-Hopf
/// identity and the saddle angle sum.
pub fn census(d: &DataSet) -> Result<Census, CensusError> {
    let a = d.angulation();
    let mut c = Census {
        p: 0,
        q: 0,
        m_plus: 0,
        m_minus: 0,
        a_plus: Q::zero(),
        a_minus: Q::zero(),
        a: 0,
        m: 0,
        b: a.num_arcs() as i64,
        cusps: 0,
    };
    let mut saddle_sum = 0i64;
    let mut twice_index = 0i64;
    for cp in cone_points(d) {
        match cp.kind {
            PointKind::Saddle => {
                saddle_sum += cp.angle.to_integer();
                // Index of a saddle of angle k is 1 - k.
                twice_index += 2 - 2 * cp.angle.to_integer();
            }
            PointKind::Maximum | PointKind::Minimum => {
                twice_index += 2;
                let max = cp.kind == PointKind::Maximum;
                if max {
                    c.p += 1;
                } else {
                    c.q += 1;
                }
                if cp.smooth {
                    if max {
                        c.m_plus += 1;
                    } else {
                        c.m_minus += 1;
                    }
                } else if max {
                    c.a_plus += cp.angle;
                } else {
                    c.a_minus += cp.angle;
                    if cp.angle.is_zero() {
                        c.cusps += 1;
                    }
                }
            }
        }
    }
    let expected = 2 * (2 - 2 * d.genus() as i64);
    if twice_index != expected {
        return Err(CensusError::PoincareHopf {
            found: twice_index / 2,
            expected: expected / 2,
        });
    }
    if saddle_sum != c.b {
        return Err(CensusError::ArcCount {
            arcs: c.b,
            sum: saddle_sum,
        });
    }
    c.a = c.p + c.q;
    c.m = c.m_plus + c.m_minus;
    Ok(c)
}

/// Census, then comparison with a prescribed angle vector and type partition.
pub fn census_against(
    d: &DataSet,
    alpha: &AngleVector,
    t: &TypePartition,
) -> Result<Census, CensusError> {
    let c = census(d)?;
    let (m, a, b) = crate::constraints::invariants_m_a(d.genus(), alpha, &t.saddles)
        .map_err(|e| CensusError::Mismatch(e.to_string()))?;
    if (c.m, c.a, c.b) != (m, a, b) {
        return Err(CensusError::Mismatch(format!(
            "(m, a, b) = ({}, {}, {}), prescribed ({m}, {a}, {b})",
            c.m, c.a, c.b
        )));
    }
    let (got, _) = realized_angle_vector(d);
    let sorted = |v: &[Q]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    if sorted(got.entries()) != sorted(alpha.entries()) {
        return Err(CensusError::Mismatch(format!("realized angles {got}, prescribed {alpha}")));
    }
    Ok(c)
}

/// Angles of all non-smooth points in conventional order, with the matching
/// type partition. Saddles come first within the integer block.
pub fn realized_angle_vector(d: &DataSet) -> (AngleVector, TypePartition) {
    let mut items: Vec<(u8, PointKind, Q)> = cone_points(d)
        .into_iter()
        .filter(|c| !c.smooth)
        .map(|c| {
            let group = if c.angle.is_zero() {
                2
            } else if c.angle.is_integer() {
                0
            } else {
                1
            };
            let order = match c.kind {
                PointKind::Saddle => 0,
                PointKind::Maximum => 1,
                PointKind::Minimum => 2,
            };
            (group * 3 + order, c.kind, c.angle)
        })
        .collect();
    items.sort_by(|x, y| x.0.cmp(&y.0).then(y.2.cmp(&x.2)));
    let alpha = AngleVector::new(items.iter().map(|x| x.2).collect())
        .expect("non-smooth angles form a valid vector");
    let mut t = TypePartition::default();
    for (i, (_, kind, _)) in items.iter().enumerate() {
        let set: &mut BTreeSet<usize> = match kind {
            PointKind::Saddle => &mut t.saddles,
            PointKind::Maximum => &mut t.maxima,
            PointKind::Minimum => &mut t.minima,
        };
        set.insert(i);
    }
    (alpha, t)
}

//! Charging graphs: weighted bipartite multigraphs between touching points
//! and same-class crossings, together with the per-vertex audits that pin
//! down every counting bound the graphs are built to witness.

pub mod bipartite;
pub mod monotone;

use crate::arrangement::{Arrangement, CurveId, PointId};
use crate::rational::{format_rat, to_f64, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum ChargeError {
    #[error("alpha must be a rational greater than 1")]
    AlphaTooSmall,
    #[error("levels must be distinct powers of two in increasing order")]
    BadLevels,
    #[error("expected a monotone arrangement")]
    NotMonotone,
    #[error("expected a closed arrangement")]
    NotClosed,
    #[error("touching {0:?} is not an S1 curve over an S2 curve; normalize first")]
    NotNormalized(PointId),
    #[error("curve {0:?} has no orientation; orient the family first")]
    NotOriented(CurveId),
    #[error("touching {0:?} has its partner on the right; orient the family first")]
    BadTouchingSide(PointId),
    #[error("within-class touching {0:?} is outside this scheme's hypotheses")]
    WithinClassTouching(PointId),
    #[error("complete bipartite touchings required: {0}")]
    NotCompleteBipartite(String),
    #[error(transparent)]
    Arrangement(#[from] crate::arrangement::ArrangementError),
}

/// Edge family tags. The primed families occur only in the closed scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    APrime,
    ADoublePrime,
    B,
    C,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::APrime => "A'",
            Family::ADoublePrime => "A''",
            Family::B => "B",
            Family::C => "C",
        }
    }
}

/// An exact edge weight `coeff * alpha^alpha_exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub coeff: Rat,
    pub alpha_exp: i8,
}

impl Weight {
    pub fn new(coeff: Rat, alpha_exp: i8) -> Self {
        debug_assert!((-1..=2).contains(&alpha_exp));
        Weight { coeff, alpha_exp }
    }

    pub fn value(&self, alpha: &Rat) -> Rat {
        &self.coeff * alpha_pow(alpha, self.alpha_exp)
    }
}

fn alpha_pow(alpha: &Rat, exp: i8) -> Rat {
    match exp {
        -1 => Rat::one() / alpha,
        0 => Rat::one(),
        1 => alpha.clone(),
        2 => alpha * alpha,
        _ => unreachable!("alpha exponent out of range"),
    }
}

/// Exact sum of weights, kept per alpha exponent so comparisons against
/// rational bounds stay exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSum {
    /// Coefficient of alpha^(index - 1).
    coeffs: [Rat; 4],
}

impl Default for WeightSum {
    fn default() -> Self {
        WeightSum {
            coeffs: [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()],
        }
    }
}

impl WeightSum {
    pub fn add(&mut self, weight: &Weight) {
        self.coeffs[(weight.alpha_exp + 1) as usize] += &weight.coeff;
    }

    pub fn add_sum(&mut self, other: &WeightSum) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact value at a rational alpha.
    pub fn value(&self, alpha: &Rat) -> Rat {
        let mut total = Rat::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += c * alpha_pow(alpha, i as i8 - 1);
            }
        }
        total
    }

    /// Numeric value at an arbitrary alpha, for log-bearing bounds.
    pub fn value_f64(&self, alpha: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| to_f64(c) * alpha.powi(i as i32 - 1))
            .sum()
    }
}

/// Family-specific witness data carried by an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    None,
    /// Monotone C edge: carrier curve of the arc and its open x-interval.
    MonotoneArc {
        carrier: CurveId,
        x_lo: Rat,
        x_hi: Rat,
    },
    /// Closed B edge: the intermediate touching.
    ThroughTouching { r: PointId },
    /// Closed C edge: the partner curve playing d and the crossing after q.
    NextCrossing { d: CurveId, q_next: PointId },
}

#[derive(Debug, Clone)]
pub struct ChargingEdge {
    pub touching: PointId,
    pub crossing: PointId,
    pub family: Family,
    pub level: u64,
    pub weight: Weight,
    /// The curve through both endpoints of the edge.
    pub along: CurveId,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub struct ChargingParams {
    pub alpha: Rat,
    /// Increasing powers of two.
    pub levels: Vec<u64>,
}

impl ChargingParams {
    pub fn new(alpha: Rat, levels: Vec<u64>) -> Result<Self, ChargeError> {
        if alpha <= Rat::one() {
            return Err(ChargeError::AlphaTooSmall);
        }
        if levels.windows(2).any(|w| w[0] >= w[1])
            || levels.iter().any(|k| !k.is_power_of_two())
        {
            return Err(ChargeError::BadLevels);
        }
        Ok(ChargingParams { alpha, levels })
    }

    /// Monotone default: `k = 1, 2, 4, ...` while `k <= t_eff / 2`,
    /// equivalently `2 k n <= |T|`. Empty when `t_eff < 2`.
    pub fn monotone_default(arr: &Arrangement, alpha: Rat) -> Result<Self, ChargeError> {
        let mut levels = Vec::new();
        let mut k = 1u64;
        let t = arr.stats.touchings as u64;
        let n = arr.stats.n as u64;
        while 2 * k * n <= t {
            levels.push(k);
            k *= 2;
        }
        Self::new(alpha, levels)
    }

    /// Closed default: `k = 1, 2, 4, ...` with `k < n`, which yields
    /// `ceil(log2 n)` levels.
    pub fn closed_default(arr: &Arrangement, alpha: Rat) -> Result<Self, ChargeError> {
        let n = arr.stats.n as u64;
        let mut levels = Vec::new();
        let mut k = 1u64;
        while k < n {
            levels.push(k);
            k *= 2;
        }
        Self::new(alpha, levels)
    }

    pub fn alpha_f64(&self) -> f64 {
        to_f64(&self.alpha)
    }
}

#[derive(Debug, Clone)]
pub struct ChargingGraph {
    pub edges: Vec<ChargingEdge>,
    pub params: ChargingParams,
    by_crossing: BTreeMap<PointId, Vec<usize>>,
    by_touching: BTreeMap<PointId, Vec<usize>>,
}

impl ChargingGraph {
    pub fn from_edges(mut edges: Vec<ChargingEdge>, params: ChargingParams) -> Self {
        edges.sort_by(|a, b| {
            (a.touching, a.crossing, a.family, a.level, a.along)
                .cmp(&(b.touching, b.crossing, b.family, b.level, b.along))
                .then_with(|| format!("{:?}", a.witness).cmp(&format!("{:?}", b.witness)))
        });
        let mut by_crossing: BTreeMap<PointId, Vec<usize>> = BTreeMap::new();
        let mut by_touching: BTreeMap<PointId, Vec<usize>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            by_crossing.entry(e.crossing).or_default().push(i);
            by_touching.entry(e.touching).or_default().push(i);
        }
        ChargingGraph {
            edges,
            params,
            by_crossing,
            by_touching,
        }
    }

    pub fn edges_at_crossing(&self, q: PointId) -> impl Iterator<Item = &ChargingEdge> {
        self.by_crossing
            .get(&q)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    pub fn edges_at_touching(&self, p: PointId) -> impl Iterator<Item = &ChargingEdge> {
        self.by_touching
            .get(&p)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    pub fn total_weight(&self) -> WeightSum {
        let mut sum = WeightSum::default();
        for e in &self.edges {
            sum.add(&e.weight);
        }
        sum
    }
}

// ---------------------------------------------------------------------------
// audit reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditStatus {
    Pass,
    Fail,
    Skipped,
    Vacuous,
}

impl AuditStatus {
    pub fn label(self) -> &'static str {
        match self {
            AuditStatus::Pass => "pass",
            AuditStatus::Fail => "fail",
            AuditStatus::Skipped => "skipped",
            AuditStatus::Vacuous => "vacuous",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuditRow {
    pub audit: &'static str,
    pub vertex: Option<PointId>,
    pub level: Option<u64>,
    pub family: Option<Family>,
    pub computed: String,
    pub bound: String,
    pub status: AuditStatus,
    pub detail: Option<String>,
}

impl AuditRow {
    pub fn new(audit: &'static str, computed: String, bound: String, status: AuditStatus) -> Self {
        AuditRow {
            audit,
            vertex: None,
            level: None,
            family: None,
            computed,
            bound,
            status,
            detail: None,
        }
    }

    pub fn at_vertex(mut self, vertex: PointId) -> Self {
        self.vertex = Some(vertex);
        self
    }

    pub fn at_level(mut self, level: u64) -> Self {
        self.level = Some(level);
        self
    }

    pub fn in_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn push(&mut self, row: AuditRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: Vec<AuditRow>) {
        self.rows.extend(rows);
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| r.status == AuditStatus::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, status: AuditStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }
}

/// Compares an exact count against an exact rational bound, producing a row.
pub(crate) fn exact_count_row(
    audit: &'static str,
    count: usize,
    bound: Rat,
) -> (AuditStatus, String, String) {
    let computed = Rat::from_integer(count.into());
    let status = if computed <= bound {
        AuditStatus::Pass
    } else {
        AuditStatus::Fail
    };
    (status, format_rat(&computed), format_rat(&bound))
}

/// The expected weight of a family at a level, per scheme.
pub fn expected_weight(closed_scheme: bool, family: Family, level: u64) -> Weight {
    let k = Rat::from_integer(level.into());
    match (closed_scheme, family) {
        (_, Family::A) => Weight::new(Rat::one() / &k, 0),
        (false, Family::B) => Weight::new(Rat::one() / &k, 1),
        (false, Family::C) | (true, Family::C) => Weight::new(Rat::one() / &k, 2),
        (true, Family::APrime) => Weight::new(Rat::one() / &k, 1),
        (true, Family::ADoublePrime) => Weight::new(Rat::one() / &k, -1),
        (true, Family::B) => Weight::new(Rat::one() / (&k * &k), -1),
        (false, Family::APrime) | (false, Family::ADoublePrime) => {
            unreachable!("primed families occur only in the closed scheme")
        }
    }
}

/// Checks that every edge carries exactly the weight its family and level
/// prescribe. One row per offending edge plus one summary row.
pub fn audit_weight_exactness(graph: &ChargingGraph, closed_scheme: bool) -> Vec<AuditRow> {
    let mut rows = Vec::new();
    let mut bad = 0usize;
    for e in &graph.edges {
        let want = expected_weight(closed_scheme, e.family, e.level);
        if want != e.weight {
            bad += 1;
            rows.push(
                AuditRow::new(
                    "weight_exact",
                    format!("{}*a^{}", format_rat(&e.weight.coeff), e.weight.alpha_exp),
                    format!("{}*a^{}", format_rat(&want.coeff), want.alpha_exp),
                    AuditStatus::Fail,
                )
                .at_vertex(e.touching)
                .at_level(e.level)
                .in_family(e.family),
            );
        }
    }
    rows.push(AuditRow::new(
        "weight_exact_total",
        bad.to_string(),
        "0".to_string(),
        if bad == 0 {
            AuditStatus::Pass
        } else {
            AuditStatus::Fail
        },
    ));
    rows
}

/// Formats an f64 with enough digits to round-trip, for report output.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

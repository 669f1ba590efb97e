//! Arrangement of a curve family: every pairwise intersection point, exactly
//! classified, plus the per-curve ordered sequences and counting queries the
//! charging schemes are built on.

pub mod brute;

use crate::geometry::{
    classify_local_closed_at, classify_local_monotone_at, curve_pair_intersections, ClosedLocal,
    CurveGeometry, CurveKind, GeometryError, MonotoneLocal, Orientation, Point,
};
use crate::rational::{format_rat, Rat};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveClass {
    S1,
    S2,
}

impl CurveClass {
    pub fn other(self) -> Self {
        match self {
            CurveClass::S1 => CurveClass::S2,
            CurveClass::S2 => CurveClass::S1,
        }
    }
}

/// A curve of the family: identity, class tag and geometry.
#[derive(Debug, Clone)]
pub struct CurveRecord {
    pub id: CurveId,
    pub class: Option<CurveClass>,
    pub geometry: CurveGeometry,
}

/// Local classification of an intersection point, with the curve that is
/// locally above (monotone families) or has its partner on its left (closed
/// families, under the traversal in force at build time).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Crossing,
    Touching { upper_or_left: CurveId },
}

impl PointKind {
    pub fn is_touching(&self) -> bool {
        matches!(self, PointKind::Touching { .. })
    }
}

#[derive(Debug, Clone)]
pub struct IntersectionPoint {
    pub id: PointId,
    pub point: Point,
    pub curve_lo: CurveId,
    pub curve_hi: CurveId,
    pub kind: PointKind,
    /// For touchings of closed curves: whether the partner lies on the left
    /// of `curve_lo` resp. `curve_hi`, under each curve's traversal sense.
    pub closed_sides: Option<(bool, bool)>,
    /// Stored position on `curve_lo` / `curve_hi` (abscissa for monotone
    /// curves, edge index plus fraction for closed ones).
    pub pos_lo: Rat,
    pub pos_hi: Rat,
}

impl IntersectionPoint {
    pub fn curves(&self) -> (CurveId, CurveId) {
        (self.curve_lo, self.curve_hi)
    }

    pub fn involves(&self, curve: CurveId) -> bool {
        self.curve_lo == curve || self.curve_hi == curve
    }

    pub fn other_curve(&self, curve: CurveId) -> CurveId {
        if self.curve_lo == curve {
            self.curve_hi
        } else {
            self.curve_lo
        }
    }

    pub fn stored_pos_on(&self, curve: CurveId) -> &Rat {
        if self.curve_lo == curve {
            &self.pos_lo
        } else {
            &self.pos_hi
        }
    }
}

/// What to count along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Touchings,
    Crossings,
    /// Crossings whose two curves carry the same class tag; these are the
    /// crossings the charging schemes call `X`.
    SameClassCrossings,
}

#[derive(Debug, Clone)]
pub struct SeqEntry {
    pub point: PointId,
    /// Sort key: abscissa for monotone curves, traversal parameter in `[0, m)`
    /// for closed curves.
    pub pos: Rat,
    pub is_touch: bool,
    pub is_same_class_cross: bool,
}

/// Intersection points along one curve, ordered by x (monotone) or by
/// oriented traversal (closed), with prefix counts per kind.
#[derive(Debug, Clone, Default)]
pub struct CurveSequence {
    pub entries: Vec<SeqEntry>,
    prefix_touch: Vec<usize>,
    prefix_same_cross: Vec<usize>,
    by_point: BTreeMap<PointId, usize>,
}

impl CurveSequence {
    fn build(mut entries: Vec<SeqEntry>) -> Self {
        entries.sort_by(|a, b| a.pos.cmp(&b.pos));
        let mut prefix_touch = Vec::with_capacity(entries.len() + 1);
        let mut prefix_same_cross = Vec::with_capacity(entries.len() + 1);
        prefix_touch.push(0);
        prefix_same_cross.push(0);
        let mut by_point = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            prefix_touch.push(prefix_touch[i] + usize::from(e.is_touch));
            prefix_same_cross.push(prefix_same_cross[i] + usize::from(e.is_same_class_cross));
            by_point.insert(e.point, i);
        }
        CurveSequence {
            entries,
            prefix_touch,
            prefix_same_cross,
            by_point,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, point: PointId) -> Option<usize> {
        self.by_point.get(&point).copied()
    }

    fn count_range(&self, lo: usize, hi: usize, kind: CountKind) -> usize {
        match kind {
            CountKind::Touchings => self.prefix_touch[hi] - self.prefix_touch[lo],
            CountKind::SameClassCrossings => {
                self.prefix_same_cross[hi] - self.prefix_same_cross[lo]
            }
            CountKind::Crossings => {
                (hi - lo) - (self.prefix_touch[hi] - self.prefix_touch[lo])
            }
        }
    }

    /// Count of entries with position strictly inside `(lo, hi)`.
    pub fn count_open_interval(&self, lo: &Rat, hi: &Rat, kind: CountKind) -> usize {
        let from = self.entries.partition_point(|e| &e.pos <= lo);
        let to = self.entries.partition_point(|e| &e.pos < hi);
        if from >= to {
            0
        } else {
            self.count_range(from, to, kind)
        }
    }

    /// Count of entries with position strictly greater than `pos`.
    pub fn count_after(&self, pos: &Rat, kind: CountKind) -> usize {
        let from = self.entries.partition_point(|e| &e.pos <= pos);
        self.count_range(from, self.len(), kind)
    }

    /// Count on the open cyclic arc from entry `i` to entry `j` (exclusive on
    /// both ends); `i == j` counts everything except the entry itself.
    pub fn count_cyclic_between(&self, i: usize, j: usize, kind: CountKind) -> usize {
        let n = self.len();
        if i == j {
            let all = self.count_range(0, n, kind);
            let own = self.count_range(i, i + 1, kind);
            return all - own;
        }
        if i < j {
            self.count_range(i + 1, j, kind)
        } else {
            self.count_range(i + 1, n, kind) + self.count_range(0, j, kind)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Stats {
    pub s1: usize,
    pub s2: usize,
    pub unassigned: usize,
    /// Class size used for densities: the smaller class when both are
    /// populated, otherwise the whole family.
    pub n: usize,
    /// Touchings per curve, `|T| / n`, exact.
    #[serde(serialize_with = "crate::files::serialize_rat")]
    pub t_eff: Rat,
    pub touchings: usize,
    pub x1: usize,
    pub x2: usize,
    pub x_cross: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Monotone,
    Closed,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub curves: Vec<CurveRecord>,
    pub points: Vec<IntersectionPoint>,
    pub touchings: Vec<PointId>,
    pub x1: Vec<PointId>,
    pub x2: Vec<PointId>,
    pub x_cross: Vec<PointId>,
    pub per_curve: Vec<CurveSequence>,
    pub touch_index: BTreeMap<(CurveId, CurveId), PointId>,
    pub stats: Stats,
    pub family_kind: FamilyKind,
}

// ---------------------------------------------------------------------------
// general position
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    TriplePoint,
    InfiniteOverlap,
    VertexDegeneracy,
    MultiPointTangency,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub curves: Vec<usize>,
    pub point: Option<[String; 2]>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneralPositionReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for GeneralPositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "general position holds");
        }
        write!(f, "{} violation(s); first: ", self.violations.len())?;
        let v = &self.violations[0];
        write!(f, "{:?} involving curves {:?}: {}", v.kind, v.curves, v.detail)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ArrangementError {
    #[error("curve ids must equal their index (curve at position {0} has id {1})")]
    BadIds(usize, usize),
    #[error("family mixes closed and monotone curves")]
    MixedFamily,
    #[error("{0}")]
    GeneralPosition(GeneralPositionReport),
    #[error("curve {0:?} is not part of this arrangement")]
    UnknownCurve(CurveId),
    #[error("curve {0:?} has no orientation assigned")]
    OrientationUnset(CurveId),
    #[error("curve {curve:?} is touched on both sides; one-sided orientation impossible")]
    TwoSidedTouching { curve: CurveId },
    #[error("point is not on curve {0:?}")]
    PointNotOnCurve(CurveId),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn point_strings(p: &Point) -> [String; 2] {
    [format_rat(&p.x), format_rat(&p.y)]
}

// ---------------------------------------------------------------------------
// pairwise intersection data (shared by validation and construction)
// ---------------------------------------------------------------------------

struct PairRecord {
    lo: usize,
    hi: usize,
    point: Point,
    pos_lo: Rat,
    pos_hi: Rat,
    kind: PointKind,
    closed_sides: Option<(bool, bool)>,
}

struct PairScan {
    records: Vec<PairRecord>,
    violations: Vec<Violation>,
}

fn family_kind(curves: &[CurveRecord]) -> Result<FamilyKind, ArrangementError> {
    let mut kind = None;
    for c in curves {
        let k = match c.geometry.kind() {
            CurveKind::Closed => FamilyKind::Closed,
            _ => FamilyKind::Monotone,
        };
        match kind {
            None => kind = Some(k),
            Some(prev) if prev != k => return Err(ArrangementError::MixedFamily),
            _ => {}
        }
    }
    Ok(kind.unwrap_or(FamilyKind::Monotone))
}

fn check_ids(curves: &[CurveRecord]) -> Result<(), ArrangementError> {
    for (i, c) in curves.iter().enumerate() {
        if c.id.0 != i {
            return Err(ArrangementError::BadIds(i, c.id.0));
        }
    }
    Ok(())
}

fn is_vertex_position(geometry: &CurveGeometry, pos: &Rat) -> bool {
    match geometry.kind() {
        CurveKind::Closed => pos == &pos.floor(),
        _ => geometry.vertices().iter().any(|v| &v.x == pos),
    }
}

fn is_open_endpoint(geometry: &CurveGeometry, pos: &Rat) -> bool {
    match geometry.domain() {
        Some((lo, hi)) => pos == lo || pos == hi,
        None => false,
    }
}

/// Scans every curve pair: intersection points, classification and the
/// general-position findings discovered along the way.
fn scan_pairs(curves: &[CurveRecord], kind: FamilyKind) -> PairScan {
    let n = curves.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let per_pair: Vec<(Vec<PairRecord>, Vec<Violation>)> = pairs
        .par_iter()
        .map(|&(i, j)| scan_one_pair(curves, kind, i, j))
        .collect();
    let mut records = Vec::new();
    let mut violations = Vec::new();
    for (mut r, mut v) in per_pair {
        records.append(&mut r);
        violations.append(&mut v);
    }
    // Triple points: any location shared by three or more curves.
    let mut at_point: BTreeMap<Point, BTreeSet<usize>> = BTreeMap::new();
    for r in &records {
        let entry = at_point.entry(r.point.clone()).or_default();
        entry.insert(r.lo);
        entry.insert(r.hi);
    }
    for (point, ids) in at_point {
        if ids.len() >= 3 {
            violations.push(Violation {
                kind: ViolationKind::TriplePoint,
                curves: ids.into_iter().collect(),
                point: Some(point_strings(&point)),
                detail: "three or more curves pass through one point".into(),
            });
        }
    }
    violations.sort_by(|a, b| {
        (a.kind as usize, &a.curves, &a.point).cmp(&(b.kind as usize, &b.curves, &b.point))
    });
    PairScan {
        records,
        violations,
    }
}

fn scan_one_pair(
    curves: &[CurveRecord],
    kind: FamilyKind,
    i: usize,
    j: usize,
) -> (Vec<PairRecord>, Vec<Violation>) {
    let a = &curves[i];
    let b = &curves[j];
    let mut records = Vec::new();
    let mut violations = Vec::new();
    let pair = curve_pair_intersections(&a.geometry, &b.geometry);
    if let Some(at) = &pair.overlap {
        violations.push(Violation {
            kind: ViolationKind::InfiniteOverlap,
            curves: vec![i, j],
            point: Some(point_strings(at)),
            detail: "curves share infinitely many points".into(),
        });
        return (records, violations);
    }
    let xs: Vec<Rat> = pair.points.iter().map(|p| p.pos_a.clone()).collect();
    let mut touch_count = 0usize;
    for hit in &pair.points {
        let mut sides = None;
        let classified: Result<PointKind, GeometryError> = match kind {
            FamilyKind::Monotone => {
                let others: Vec<Rat> = xs.iter().filter(|x| **x != hit.pos_a).cloned().collect();
                classify_local_monotone_at(&a.geometry, &b.geometry, &hit.pos_a, &others).map(
                    |local| match local {
                        MonotoneLocal::Crossing => PointKind::Crossing,
                        MonotoneLocal::Touching { upper_is_first } => PointKind::Touching {
                            upper_or_left: if upper_is_first { a.id } else { b.id },
                        },
                    },
                )
            }
            FamilyKind::Closed => {
                classify_local_closed_at(&a.geometry, &b.geometry, &hit.pos_a, &hit.pos_b).map(
                    |local| match local {
                        ClosedLocal::Crossing => PointKind::Crossing,
                        ClosedLocal::Touching {
                            second_left_of_first,
                            first_left_of_second,
                        } => {
                            sides = Some((second_left_of_first, first_left_of_second));
                            PointKind::Touching {
                                upper_or_left: if second_left_of_first { a.id } else { b.id },
                            }
                        }
                    },
                )
            }
        };
        match classified {
            Ok(kind_point) => {
                if kind_point.is_touching() {
                    touch_count += 1;
                    if is_open_endpoint(&a.geometry, &hit.pos_a)
                        || is_open_endpoint(&b.geometry, &hit.pos_b)
                    {
                        violations.push(Violation {
                            kind: ViolationKind::VertexDegeneracy,
                            curves: vec![i, j],
                            point: Some(point_strings(&hit.point)),
                            detail: "touching at an open curve endpoint".into(),
                        });
                    }
                }
                if kind == FamilyKind::Closed
                    && is_vertex_position(&a.geometry, &hit.pos_a)
                    && is_vertex_position(&b.geometry, &hit.pos_b)
                {
                    violations.push(Violation {
                        kind: ViolationKind::VertexDegeneracy,
                        curves: vec![i, j],
                        point: Some(point_strings(&hit.point)),
                        detail: "intersection at a vertex of both closed curves".into(),
                    });
                }
                records.push(PairRecord {
                    lo: i,
                    hi: j,
                    point: hit.point.clone(),
                    pos_lo: hit.pos_a.clone(),
                    pos_hi: hit.pos_b.clone(),
                    kind: kind_point,
                    closed_sides: sides,
                });
            }
            Err(err) => violations.push(Violation {
                kind: ViolationKind::VertexDegeneracy,
                curves: vec![i, j],
                point: Some(point_strings(&hit.point)),
                detail: err.to_string(),
            }),
        }
    }
    if touch_count > 0 && pair.points.len() > 1 {
        violations.push(Violation {
            kind: ViolationKind::MultiPointTangency,
            curves: vec![i, j],
            point: None,
            detail: format!(
                "pair has a tangential point but {} common points in total",
                pair.points.len()
            ),
        });
    }
    (records, violations)
}

/// Checks the family for general position: no three curves through one point,
/// no infinite overlaps, and no configurations that defeat the local
/// classifier (endpoint touchings, shared closed-curve vertices, tangencies
/// on pairs with several common points).
pub fn validate_general_position(
    curves: &[CurveRecord],
) -> Result<GeneralPositionReport, ArrangementError> {
    check_ids(curves)?;
    let kind = family_kind(curves)?;
    let scan = scan_pairs(curves, kind);
    Ok(GeneralPositionReport {
        ok: scan.violations.is_empty(),
        violations: scan.violations,
    })
}

/// Builds the arrangement of a valid family.
pub fn build_arrangement(curves: Vec<CurveRecord>) -> Result<Arrangement, ArrangementError> {
    check_ids(&curves)?;
    let kind = family_kind(&curves)?;
    let scan = scan_pairs(&curves, kind);
    if !scan.violations.is_empty() {
        return Err(ArrangementError::GeneralPosition(GeneralPositionReport {
            ok: false,
            violations: scan.violations,
        }));
    }
    let mut records = scan.records;
    records.sort_by(|a, b| {
        a.point
            .cmp(&b.point)
            .then_with(|| (a.lo, a.hi).cmp(&(b.lo, b.hi)))
    });

    let class_of = |id: usize| curves[id].class;
    let mut points = Vec::with_capacity(records.len());
    let mut touchings = Vec::new();
    let mut x1 = Vec::new();
    let mut x2 = Vec::new();
    let mut x_cross = Vec::new();
    let mut touch_index = BTreeMap::new();
    let mut per_curve_entries: Vec<Vec<SeqEntry>> = vec![Vec::new(); curves.len()];

    for (idx, r) in records.into_iter().enumerate() {
        let id = PointId(idx);
        let same_class = matches!(
            (class_of(r.lo), class_of(r.hi)),
            (Some(a), Some(b)) if a == b
        );
        match r.kind {
            PointKind::Touching { .. } => {
                touchings.push(id);
                touch_index.insert((CurveId(r.lo), CurveId(r.hi)), id);
                touch_index.insert((CurveId(r.hi), CurveId(r.lo)), id);
            }
            PointKind::Crossing => match (class_of(r.lo), class_of(r.hi)) {
                (Some(CurveClass::S1), Some(CurveClass::S1)) => x1.push(id),
                (Some(CurveClass::S2), Some(CurveClass::S2)) => x2.push(id),
                _ => x_cross.push(id),
            },
        }
        let is_touch = r.kind.is_touching();
        for (curve_idx, pos) in [(r.lo, &r.pos_lo), (r.hi, &r.pos_hi)] {
            let seq_pos = match kind {
                FamilyKind::Monotone => pos.clone(),
                FamilyKind::Closed => curves[curve_idx].geometry.traversal_param(pos),
            };
            per_curve_entries[curve_idx].push(SeqEntry {
                point: id,
                pos: seq_pos,
                is_touch,
                is_same_class_cross: !is_touch && same_class,
            });
        }
        points.push(IntersectionPoint {
            id,
            point: r.point,
            curve_lo: CurveId(r.lo),
            curve_hi: CurveId(r.hi),
            kind: r.kind,
            closed_sides: r.closed_sides,
            pos_lo: r.pos_lo,
            pos_hi: r.pos_hi,
        });
    }

    let per_curve: Vec<CurveSequence> = per_curve_entries
        .into_iter()
        .map(CurveSequence::build)
        .collect();

    let s1 = curves
        .iter()
        .filter(|c| c.class == Some(CurveClass::S1))
        .count();
    let s2 = curves
        .iter()
        .filter(|c| c.class == Some(CurveClass::S2))
        .count();
    let unassigned = curves.len() - s1 - s2;
    let n = if s1 > 0 && s2 > 0 {
        s1.min(s2)
    } else {
        curves.len().max(1)
    };
    let t_eff = Rat::from_integer(touchings.len().into()) / Rat::from_integer(n.into());
    let stats = Stats {
        s1,
        s2,
        unassigned,
        n,
        t_eff,
        touchings: touchings.len(),
        x1: x1.len(),
        x2: x2.len(),
        x_cross: x_cross.len(),
    };

    Ok(Arrangement {
        curves,
        points,
        touchings,
        x1,
        x2,
        x_cross,
        per_curve,
        touch_index,
        stats,
        family_kind: kind,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NextCrossingMode {
    XOrder,
    AlongCurve(CurveId),
}

impl Arrangement {
    pub fn curve(&self, id: CurveId) -> &CurveRecord {
        &self.curves[id.0]
    }

    pub fn point(&self, id: PointId) -> &IntersectionPoint {
        &self.points[id.0]
    }

    pub fn class_of(&self, id: CurveId) -> Option<CurveClass> {
        self.curves[id.0].class
    }

    pub fn seq(&self, id: CurveId) -> &CurveSequence {
        &self.per_curve[id.0]
    }

    pub fn is_same_class_crossing(&self, id: PointId) -> bool {
        let p = self.point(id);
        !p.kind.is_touching()
            && matches!(
                (self.class_of(p.curve_lo), self.class_of(p.curve_hi)),
                (Some(a), Some(b)) if a == b
            )
    }

    /// The touching point of a pair, if the pair touches.
    pub fn touching_of_pair(&self, a: CurveId, b: CurveId) -> Option<PointId> {
        self.touch_index.get(&(a, b)).copied()
    }

    /// Number of intersection points of the given kind on `curve` with
    /// abscissa strictly between `x_lo` and `x_hi`.
    pub fn count_between_monotone(
        &self,
        curve: CurveId,
        x_lo: &Rat,
        x_hi: &Rat,
        kind: CountKind,
    ) -> usize {
        self.seq(curve).count_open_interval(x_lo, x_hi, kind)
    }

    /// Number of points of the given kind strictly to the right of `x`.
    pub fn count_right_of_monotone(&self, curve: CurveId, x: &Rat, kind: CountKind) -> usize {
        self.seq(curve).count_after(x, kind)
    }

    /// Number of kind-points on the open oriented arc of a closed `curve`
    /// from `from_pt` to `to_pt` (endpoints excluded; `from_pt == to_pt`
    /// counts the whole curve minus the point itself).
    pub fn count_on_arc_closed(
        &self,
        curve: CurveId,
        from_pt: PointId,
        to_pt: PointId,
        kind: CountKind,
    ) -> Result<usize, ArrangementError> {
        if self.curve(curve).geometry.orientation_tag().is_none() {
            return Err(ArrangementError::OrientationUnset(curve));
        }
        let seq = self.seq(curve);
        let i = seq
            .index_of(from_pt)
            .ok_or(ArrangementError::PointNotOnCurve(curve))?;
        let j = seq
            .index_of(to_pt)
            .ok_or(ArrangementError::PointNotOnCurve(curve))?;
        Ok(seq.count_cyclic_between(i, j, kind))
    }

    /// First crossing of the pair `(a, c)` strictly after `after` in the
    /// requested order.
    pub fn next_crossing_of_pair(
        &self,
        a: CurveId,
        c: CurveId,
        after: &Point,
        mode: NextCrossingMode,
    ) -> Option<PointId> {
        match mode {
            NextCrossingMode::XOrder => self
                .points
                .iter()
                .filter(|p| {
                    !p.kind.is_touching()
                        && ((p.curve_lo == a && p.curve_hi == c)
                            || (p.curve_lo == c && p.curve_hi == a))
                        && p.point.x > after.x
                })
                .min_by(|p, q| p.point.x.cmp(&q.point.x))
                .map(|p| p.id),
            NextCrossingMode::AlongCurve(d) => {
                let seq = self.seq(d);
                let start = seq
                    .entries
                    .iter()
                    .position(|e| self.point(e.point).point == *after)?;
                let n = seq.len();
                for step in 1..=n {
                    let e = &seq.entries[(start + step) % n];
                    let p = self.point(e.point);
                    if !p.kind.is_touching()
                        && ((p.curve_lo == a && p.curve_hi == c)
                            || (p.curve_lo == c && p.curve_hi == a))
                    {
                        return Some(e.point);
                    }
                }
                None
            }
        }
    }

    /// Orientation assignment making every touching partner lie on the left
    /// of every curve, per curve; errors when some curve is touched on both
    /// sides. Curves without touchings default to counterclockwise.
    pub fn orient_closed_family(
        &self,
    ) -> Result<Vec<(CurveId, Orientation)>, ArrangementError> {
        let mut assignment = Vec::with_capacity(self.curves.len());
        for curve in &self.curves {
            let current = curve
                .geometry
                .effective_orientation()
                .ok_or(ArrangementError::UnknownCurve(curve.id))?;
            let mut lefts = 0usize;
            let mut rights = 0usize;
            for &t in &self.touchings {
                let p = self.point(t);
                if !p.involves(curve.id) {
                    continue;
                }
                let (lo_left, hi_left) = p
                    .closed_sides
                    .expect("closed touchings carry side bits");
                let partner_left = if p.curve_lo == curve.id {
                    lo_left
                } else {
                    hi_left
                };
                if partner_left {
                    lefts += 1;
                } else {
                    rights += 1;
                }
            }
            let orientation = if lefts > 0 && rights > 0 {
                return Err(ArrangementError::TwoSidedTouching { curve: curve.id });
            } else if rights > 0 {
                current.flipped()
            } else if lefts > 0 {
                current
            } else {
                Orientation::Ccw
            };
            assignment.push((curve.id, orientation));
        }
        Ok(assignment)
    }

    /// Applies [`Self::orient_closed_family`] and rebuilds, so that sequence
    /// orders and side bits reflect the assigned orientations.
    pub fn oriented(&self) -> Result<Arrangement, ArrangementError> {
        let assignment = self.orient_closed_family()?;
        let curves = self
            .curves
            .iter()
            .zip(assignment)
            .map(|(c, (_, o))| CurveRecord {
                id: c.id,
                class: c.class,
                geometry: c.geometry.with_orientation(o),
            })
            .collect();
        build_arrangement(curves)
    }

    /// True when every S1 curve touches every S2 curve exactly once and no
    /// other touchings exist.
    pub fn is_complete_bipartite_touching(&self) -> bool {
        let s1: Vec<CurveId> = self
            .curves
            .iter()
            .filter(|c| c.class == Some(CurveClass::S1))
            .map(|c| c.id)
            .collect();
        let s2: Vec<CurveId> = self
            .curves
            .iter()
            .filter(|c| c.class == Some(CurveClass::S2))
            .map(|c| c.id)
            .collect();
        if s1.is_empty() || s2.is_empty() {
            return false;
        }
        if self.touchings.len() != s1.len() * s2.len() {
            return false;
        }
        for &a in &s1 {
            for &b in &s2 {
                if self.touching_of_pair(a, b).is_none() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests;

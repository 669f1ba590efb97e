//! Family-level reductions: decomposition of closed curves into x-monotone
//! pieces, extension of open curves to bi-infinite ones by steep terminal
//! rays, one-sided touching normalization, random bipartition, and the exact
//! shear that removes vertical edges.

use crate::arrangement::{
    build_arrangement, Arrangement, ArrangementError, CountKind, CurveClass, CurveId, CurveRecord,
    PointKind,
};
use crate::geometry::{CurveGeometry, Point};
use crate::rational::{rat_int, sign, Rat};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum TransformError {
    #[error("curve has a vertical edge; shear the input first")]
    VerticalEdge,
    #[error("operation requires a closed curve")]
    NotClosed,
    #[error("operation requires open monotone curves")]
    NotOpenMonotone,
    #[error("every curve needs a class tag for this operation")]
    ClassRequired,
    #[error("need at least two curves")]
    TooFewCurves,
    #[error("lift refused near ({0}, {1}): {2}")]
    RefusedLift(String, String, String),
    #[error("no balanced partition with a majority of cross touchings found")]
    BipartitionFailed,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

// ---------------------------------------------------------------------------
// decomposition into x-monotone pieces
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MonotonePiece {
    pub source: CurveId,
    pub piece_index: usize,
    /// Vertices in increasing-x order.
    pub curve: CurveGeometry,
    /// True when the source traversal runs right-to-left along this piece.
    pub reversed: bool,
}

#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub source: CurveId,
    pub pieces: Vec<MonotonePiece>,
    /// Number of cut points; every cut is a locally x-extremal vertex.
    pub cut_count: usize,
    /// Indices (into the stored vertex list) of the x-extremal cut vertices,
    /// in stored order.
    pub cut_vertices: Vec<usize>,
}

/// Cuts a closed curve at its locally x-extremal vertices into maximal
/// x-monotone chains.
pub fn decompose_closed(
    curve: &CurveGeometry,
    source: CurveId,
) -> Result<DecompositionResult, TransformError> {
    let vertices = match curve {
        CurveGeometry::Closed { vertices, .. } => vertices,
        _ => return Err(TransformError::NotClosed),
    };
    let m = vertices.len();
    let dx_sign = |i: usize| -> Result<i8, TransformError> {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % m];
        let s = sign(&(&b.x - &a.x));
        if s == 0 {
            Err(TransformError::VerticalEdge)
        } else {
            Ok(s)
        }
    };
    let mut cut_vertices = Vec::new();
    for i in 0..m {
        let before = dx_sign((i + m - 1) % m)?;
        let after = dx_sign(i)?;
        if before != after {
            cut_vertices.push(i);
        }
    }
    debug_assert!(cut_vertices.len() >= 2 && cut_vertices.len() % 2 == 0);
    let mut pieces = Vec::new();
    for (k, &start) in cut_vertices.iter().enumerate() {
        let end = cut_vertices[(k + 1) % cut_vertices.len()];
        let mut chain = vec![vertices[start].clone()];
        let mut i = start;
        while i != end {
            i = (i + 1) % m;
            chain.push(vertices[i].clone());
        }
        let reversed = chain[0].x > chain[chain.len() - 1].x;
        if reversed {
            chain.reverse();
        }
        let geometry = CurveGeometry::open_monotone(chain)
            .expect("chains between extrema are strictly monotone");
        pieces.push(MonotonePiece {
            source,
            piece_index: k,
            curve: geometry,
            reversed,
        });
    }
    Ok(DecompositionResult {
        source,
        cut_count: cut_vertices.len(),
        cut_vertices,
        pieces,
    })
}

/// Rebuilds the source vertex cycle from the pieces, for verification.
pub fn reassemble(result: &DecompositionResult) -> Vec<Point> {
    let mut cycle = Vec::new();
    for piece in &result.pieces {
        let mut vs: Vec<Point> = piece.curve.vertices().to_vec();
        if piece.reversed {
            vs.reverse();
        }
        vs.pop(); // the last vertex is the first of the next piece
        cycle.extend(vs);
    }
    cycle
}

// ---------------------------------------------------------------------------
// bi-infinite extension
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub curves: Vec<CurveRecord>,
    /// Terminal ray slope magnitude; exceeds every segment slope.
    pub z: Rat,
}

/// Extends every open curve to a bi-infinite one with terminal rays of slope
/// `z` or `-z`, where `z` exceeds all segment slopes. S1 curves rise away on
/// both sides and S2 curves fall, so a touching with the S1 curve above
/// survives: the vertical gap between the extended partners grows
/// monotonically through the ray zones. Every pair gains at most two new
/// crossings. Curves that are already bi-infinite pass through unchanged.
pub fn extend_biinfinite(curves: &[CurveRecord]) -> Result<ExtensionResult, TransformError> {
    let mut z = Rat::zero();
    for record in curves {
        let s = record.geometry.segment_max_abs_slope();
        if s > z {
            z = s;
        }
    }
    z += Rat::one();
    let mut out = Vec::with_capacity(curves.len());
    for record in curves {
        let geometry = match &record.geometry {
            CurveGeometry::OpenMonotone { vertices } => {
                let class = record.class.ok_or(TransformError::ClassRequired)?;
                let (left, right) = match class {
                    CurveClass::S1 => (-z.clone(), z.clone()),
                    CurveClass::S2 => (z.clone(), -z.clone()),
                };
                CurveGeometry::bi_infinite(vertices.clone(), left, right)
                    .expect("extension preserves monotonicity")
            }
            CurveGeometry::BiInfiniteMonotone { .. } => record.geometry.clone(),
            CurveGeometry::Closed { .. } => return Err(TransformError::NotOpenMonotone),
        };
        out.push(CurveRecord {
            id: record.id,
            class: record.class,
            geometry,
        });
    }
    Ok(ExtensionResult { curves: out, z })
}

// ---------------------------------------------------------------------------
// one-sided touching normalization
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct NormalizationResult {
    pub curves: Vec<CurveRecord>,
    pub retained_touchings: usize,
    pub removed_touchings: usize,
    pub swapped: bool,
}

fn is_good_touching(arr: &Arrangement, point: crate::arrangement::PointId) -> bool {
    let p = arr.point(point);
    let PointKind::Touching { upper_or_left } = p.kind else {
        return false;
    };
    let lower = p.other_curve(upper_or_left);
    arr.class_of(upper_or_left) == Some(CurveClass::S1)
        && arr.class_of(lower) == Some(CurveClass::S2)
}

/// Eliminates every touching except those where an S1 curve touches an S2
/// curve from above. Classes are swapped first when that retains more
/// touchings. Each unwanted touching is removed by moving the vertex that
/// carries it away from the partner curve by an exact clearance-bounded
/// offset, which leaves the crossing set untouched.
pub fn normalize_one_sided(curves: &[CurveRecord]) -> Result<NormalizationResult, TransformError> {
    let mut curves: Vec<CurveRecord> = curves.to_vec();
    if curves.iter().any(|c| c.class.is_none()) {
        return Err(TransformError::ClassRequired);
    }
    let arr = build_arrangement(curves.clone())?;
    let total = arr.touchings.len();
    let good = arr
        .touchings
        .iter()
        .filter(|&&t| is_good_touching(&arr, t))
        .count();
    let bad_cross = arr
        .touchings
        .iter()
        .filter(|&&t| {
            let p = arr.point(t);
            let PointKind::Touching { upper_or_left } = p.kind else {
                return false;
            };
            let lower = p.other_curve(upper_or_left);
            arr.class_of(upper_or_left) == Some(CurveClass::S2)
                && arr.class_of(lower) == Some(CurveClass::S1)
        })
        .count();
    let swapped = bad_cross > good;
    if swapped {
        for c in &mut curves {
            c.class = c.class.map(|cl| cl.other());
        }
    }
    let mut removed = 0usize;
    loop {
        let arr = build_arrangement(curves.clone())?;
        let target = arr
            .touchings
            .iter()
            .copied()
            .filter(|&t| !is_good_touching(&arr, t))
            .min_by(|&a, &b| arr.point(a).point.cmp(&arr.point(b).point));
        let Some(target) = target else {
            let retained = arr.touchings.len();
            debug_assert_eq!(retained + removed, total);
            return Ok(NormalizationResult {
                curves,
                retained_touchings: retained,
                removed_touchings: removed,
                swapped,
            });
        };
        lift_away(&mut curves, &arr, target)?;
        removed += 1;
    }
}

/// Moves the vertex carrying the touching away from the partner curve by an
/// exact offset smaller than half the vertical clearance over the two edited
/// segments.
fn lift_away(
    curves: &mut [CurveRecord],
    arr: &Arrangement,
    touching: crate::arrangement::PointId,
) -> Result<(), TransformError> {
    let p = arr.point(touching).clone();
    let PointKind::Touching { upper_or_left } = p.kind else {
        unreachable!("lift target is a touching");
    };
    let (u, v) = p.curves();
    let refuse = |msg: &str| -> TransformError {
        TransformError::RefusedLift(
            crate::rational::format_rat(&p.point.x),
            crate::rational::format_rat(&p.point.y),
            msg.to_string(),
        )
    };
    // The vertex owner is the curve that has the touching point as a vertex;
    // when both do, move the upper one.
    let owns = |id: CurveId| -> bool {
        arr.curve(id)
            .geometry
            .vertices()
            .iter()
            .any(|w| w.x == p.point.x)
    };
    let owner = if owns(upper_or_left) {
        upper_or_left
    } else if owns(p.other_curve(upper_or_left)) {
        p.other_curve(upper_or_left)
    } else {
        return Err(refuse("touching point is a vertex of neither curve"));
    };
    let move_up = owner == upper_or_left;

    // Work on a copy of the owner's vertex list; make the touching vertex
    // interior by inserting a helper vertex on an adjacent terminal ray.
    let mut geometry = arr.curve(owner).geometry.clone();
    let (mut vertices, rays) = match &geometry {
        CurveGeometry::OpenMonotone { vertices } => (vertices.clone(), None),
        CurveGeometry::BiInfiniteMonotone {
            vertices,
            left_ray_slope,
            right_ray_slope,
        } => (
            vertices.clone(),
            Some((left_ray_slope.clone(), right_ray_slope.clone())),
        ),
        CurveGeometry::Closed { .. } => return Err(refuse("owner must be monotone")),
    };
    let idx = vertices
        .iter()
        .position(|w| w.x == p.point.x)
        .expect("owner has the vertex");
    if idx == 0 {
        let Some((left_slope, _)) = &rays else {
            return Err(refuse("touching at an open curve endpoint"));
        };
        let x = &vertices[0].x - rat_int(1);
        let y = &vertices[0].y - left_slope;
        vertices.insert(0, Point::new(x, y));
    }
    let idx = vertices
        .iter()
        .position(|w| w.x == p.point.x)
        .expect("owner has the vertex");
    if idx == vertices.len() - 1 {
        let Some((_, right_slope)) = &rays else {
            return Err(refuse("touching at an open curve endpoint"));
        };
        let x = &vertices[idx].x + rat_int(1);
        let y = &vertices[idx].y + right_slope;
        vertices.push(Point::new(x, y));
    }
    let window_lo = vertices[idx - 1].x.clone();
    let window_hi = vertices[idx + 1].x.clone();

    // The moved portion must contain no intersection point except the
    // touching itself.
    let inside = arr.count_between_monotone(owner, &window_lo, &window_hi, CountKind::Touchings)
        + arr.count_between_monotone(owner, &window_lo, &window_hi, CountKind::Crossings);
    if inside != 1 {
        return Err(refuse("another intersection lies on the edited segments"));
    }

    // Exact vertical clearance on the move side over the window.
    let owner_geom = &geometry;
    let mut clearance: Option<Rat> = None;
    for other in arr.curves.iter().filter(|c| c.id != owner) {
        let og = &other.geometry;
        let (lo, hi) = match og.domain() {
            Some((dlo, dhi)) => (dlo.clone().max(window_lo.clone()), dhi.clone().min(window_hi.clone())),
            None => (window_lo.clone(), window_hi.clone()),
        };
        if lo > hi {
            continue;
        }
        let mut samples = vec![lo.clone(), hi.clone()];
        if p.point.x > lo && p.point.x < hi {
            samples.push(p.point.x.clone());
        }
        for w in og.vertices() {
            if w.x > lo && w.x < hi {
                samples.push(w.x.clone());
            }
        }
        let mut min_gap: Option<Rat> = None;
        for x in &samples {
            let gap = og.eval_at(x).map_err(|_| refuse("evaluation failed"))?
                - owner_geom.eval_at(x).map_err(|_| refuse("evaluation failed"))?;
            let keep = match move_up {
                true => gap.is_positive(),
                false => gap.is_negative(),
            };
            if !keep {
                if gap.is_zero() && x != &p.point.x {
                    return Err(refuse("another intersection sits on the window boundary"));
                }
                min_gap = None;
                break;
            }
            let gap = gap.abs();
            min_gap = Some(match min_gap {
                Some(g) => g.min(gap),
                None => gap,
            });
        }
        if let Some(g) = min_gap {
            clearance = Some(match clearance {
                Some(c) => c.min(g),
                None => g,
            });
        }
    }
    let delta = match clearance {
        Some(c) => c / rat_int(4),
        None => Rat::one(),
    };
    if delta.is_zero() {
        return Err(refuse("clearance window is empty"));
    }
    let shift = if move_up { delta } else { -delta };
    vertices[idx] = Point::new(vertices[idx].x.clone(), &vertices[idx].y + shift);

    geometry = match rays {
        Some((l, r)) => CurveGeometry::bi_infinite(vertices, l, r),
        None => CurveGeometry::open_monotone(vertices),
    }
    .expect("lift preserves monotonicity");
    curves[owner.0].geometry = geometry;
    Ok(())
}

// ---------------------------------------------------------------------------
// random bipartition
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct BipartitionResult {
    pub curves: Vec<CurveRecord>,
    /// Touching pairs separated by the partition.
    pub cross_touchings: usize,
    pub attempts: u64,
}

/// Splits the family into classes of size `floor(n/2)` and `ceil(n/2)`,
/// retrying deterministically derived seeds until more than half of the
/// touching pairs run between the classes.
pub fn random_bipartition(
    curves: &[CurveRecord],
    seed: u64,
) -> Result<BipartitionResult, TransformError> {
    let n = curves.len();
    if n < 2 {
        return Err(TransformError::TooFewCurves);
    }
    let arr = build_arrangement(curves.to_vec())?;
    let touch_pairs: Vec<(usize, usize)> = arr
        .touchings
        .iter()
        .map(|&t| {
            let p = arr.point(t);
            (p.curve_lo.0, p.curve_hi.0)
        })
        .collect();
    let half = n / 2;
    for attempt in 0..10_000u64 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E3779B97F4A7C15)));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut class = vec![CurveClass::S2; n];
        for &i in order.iter().take(half) {
            class[i] = CurveClass::S1;
        }
        let cross = touch_pairs
            .iter()
            .filter(|&&(a, b)| class[a] != class[b])
            .count();
        if touch_pairs.is_empty() || 2 * cross > touch_pairs.len() {
            let curves = curves
                .iter()
                .map(|c| CurveRecord {
                    id: c.id,
                    class: Some(class[c.id.0]),
                    geometry: c.geometry.clone(),
                })
                .collect();
            return Ok(BipartitionResult {
                curves,
                cross_touchings: cross,
                attempts: attempt + 1,
            });
        }
    }
    Err(TransformError::BipartitionFailed)
}

// ---------------------------------------------------------------------------
// shear
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ShearResult {
    pub curves: Vec<CurveRecord>,
    pub epsilon: Rat,
}

/// Applies the exact shear `x <- x + eps * y` to the whole family, with `eps`
/// small enough that no two vertices swap x-order except pairs that shared an
/// abscissa; those become ordered, which removes vertical edges.
pub fn shear_family(curves: &[CurveRecord], epsilon: Option<Rat>) -> ShearResult {
    let epsilon = epsilon.unwrap_or_else(|| auto_epsilon(curves));
    let map = |p: &Point| Point::new(&p.x + &epsilon * &p.y, p.y.clone());
    let slope = |s: &Rat| -> Rat {
        // y = s x + c turns into dy/dx' = s / (1 + eps s).
        s / (Rat::one() + &epsilon * s)
    };
    let out = curves
        .iter()
        .map(|c| {
            let geometry = match &c.geometry {
                CurveGeometry::OpenMonotone { vertices } => {
                    CurveGeometry::open_monotone(vertices.iter().map(&map).collect())
                        .expect("shear preserves monotonicity")
                }
                CurveGeometry::BiInfiniteMonotone {
                    vertices,
                    left_ray_slope,
                    right_ray_slope,
                } => CurveGeometry::bi_infinite(
                    vertices.iter().map(&map).collect(),
                    slope(left_ray_slope),
                    slope(right_ray_slope),
                )
                .expect("shear preserves monotonicity"),
                CurveGeometry::Closed {
                    vertices,
                    orientation,
                } => CurveGeometry::closed(vertices.iter().map(&map).collect(), *orientation)
                    .expect("shear preserves simplicity"),
            };
            CurveRecord {
                id: c.id,
                class: c.class,
                geometry,
            }
        })
        .collect();
    ShearResult {
        curves: out,
        epsilon,
    }
}

fn auto_epsilon(curves: &[CurveRecord]) -> Rat {
    let mut vertices = Vec::new();
    for c in curves {
        vertices.extend(c.geometry.vertices().iter().cloned());
    }
    let mut bound: Option<Rat> = None;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let dx = (&vertices[i].x - &vertices[j].x).abs();
            let dy = (&vertices[i].y - &vertices[j].y).abs();
            if dx.is_zero() || dy.is_zero() {
                continue;
            }
            let r = dx / dy;
            bound = Some(match bound {
                Some(b) => b.min(r),
                None => r,
            });
        }
    }
    match bound {
        Some(b) => b / rat_int(2),
        None => Rat::one(),
    }
}

// ---------------------------------------------------------------------------
// piece separation for pipelines
// ---------------------------------------------------------------------------

/// Turns the pieces of several decompositions into an open-curve family with
/// fresh dense ids, pulling every piece back from its cut vertices by an
/// exact per-cut margin so that pieces of the same source become disjoint.
/// The margin stays below a quarter of the x-distance from the cut to the
/// nearest intersection or vertex of the source curve, so no intersection
/// point of the source family is lost or moved.
pub fn separate_pieces(
    decompositions: &[DecompositionResult],
    source_arr: &Arrangement,
) -> Vec<CurveRecord> {
    let mut out = Vec::new();
    for dec in decompositions {
        let source = source_arr.curve(dec.source);
        let vertices = source.geometry.vertices();
        let mut event_xs: Vec<Rat> = vertices.iter().map(|v| v.x.clone()).collect();
        for e in &source_arr.seq(dec.source).entries {
            let p = source_arr.point(e.point);
            event_xs.push(p.point.x.clone());
        }
        let margin_at = |x: &Rat| -> Rat {
            let mut best: Option<Rat> = None;
            for e in &event_xs {
                let d = (e - x).abs();
                if d.is_zero() {
                    continue;
                }
                best = Some(match best.take() {
                    Some(b) => b.min(d),
                    None => d,
                });
            }
            best.map(|b| b / rat_int(4)).unwrap_or_else(Rat::one)
        };
        for piece in &dec.pieces {
            let vs = piece.curve.vertices();
            let first = &vs[0];
            let last = &vs[vs.len() - 1];
            let lo = &first.x + margin_at(&first.x);
            let hi = &last.x - margin_at(&last.x);
            let mut trimmed: Vec<Point> = Vec::new();
            trimmed.push(Point::new(lo.clone(), piece.curve.eval_at(&lo).unwrap()));
            for v in vs {
                if v.x > lo && v.x < hi {
                    trimmed.push(v.clone());
                }
            }
            trimmed.push(Point::new(hi.clone(), piece.curve.eval_at(&hi).unwrap()));
            let id = CurveId(out.len());
            out.push(CurveRecord {
                id,
                class: None,
                geometry: CurveGeometry::open_monotone(trimmed)
                    .expect("trimmed pieces stay monotone"),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests;

//! Deterministic, seeded generators of valid curve families with known
//! touching and crossing structure.
//!
//! The comb generator realizes a dense touching pattern between two classes:
//! S2 consists of pairwise-crossing lines tangent to a common parabola, so
//! every line carries a window where it is the strict upper envelope of its
//! class; S1 consists of zigzag curves riding a lifted copy of that envelope
//! and dipping to touch chosen lines inside their windows. A curve that
//! touches a line from above must stay weakly above it everywhere, and the
//! envelope construction is what makes many touchings per curve possible at
//! all.

use crate::arrangement::{validate_general_position, CurveClass, CurveId, CurveRecord};
use crate::geometry::{CurveGeometry, Orientation, Point};
use crate::rational::{rat, rat_int, Rat};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum GeneratorError {
    #[error("touches_per may not exceed the number of lines")]
    TooManyTouches,
    #[error("bipartite closed instances exist for n in {{1, 2}} only")]
    UnsupportedSize,
    #[error("need at least {0} curves")]
    TooFewCurves(usize),
    #[error("no valid family found after {0} attempts")]
    RetriesExhausted(u32),
}

const MAX_ATTEMPTS: u32 = 64;

fn attempt_rng(seed: u64, attempt: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add((attempt as u64).wrapping_mul(0x9E3779B97F4A7C15)))
}

/// The tangent line of the generator's parabola at integer abscissa `j`:
/// `y = 2 j x - j^2`. Distinct tangents cross exactly once and never three
/// through a point.
fn tangent_line_at(j: i64, x: &Rat) -> Rat {
    rat_int(2 * j) * x - rat_int(j * j)
}

#[derive(Debug, Clone)]
pub struct CombFamily {
    pub curves: Vec<CurveRecord>,
    /// Ground truth: one entry per dip, `(comb curve id, line curve id, x)`.
    pub dips: Vec<(usize, usize, Rat)>,
}

/// `n_combs` zigzag curves in S1, each touching `touches_per` distinct lines
/// of the `n_lines` tangent lines in S2 from above, with all dip abscissas
/// distinct. Same seed, same family.
pub fn gen_comb(
    n_lines: usize,
    n_combs: usize,
    touches_per: usize,
    seed: u64,
) -> Result<CombFamily, GeneratorError> {
    if touches_per > n_lines {
        return Err(GeneratorError::TooManyTouches);
    }
    'attempts: for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(seed, attempt);
        let l = n_lines as i64;
        let mut curves = Vec::new();
        let mut dips = Vec::new();
        // Combs first (ids 0..n_combs), lines after.
        let denom = 1i64 << 20;
        let mut used_offsets = std::collections::BTreeSet::new();
        for i in 0..n_combs {
            // Clearance above the envelope; distinct per comb.
            let h = rat(i as i64 + 1, 4 * (n_combs as i64 + 1));
            let mut targets: Vec<usize> = (0..n_lines).collect();
            targets.shuffle(&mut rng);
            targets.truncate(touches_per);
            targets.sort_unstable();
            let mut dip_x = Vec::with_capacity(targets.len());
            for &j in &targets {
                // Strictly inside the envelope window (j - 1/2, j + 1/2).
                let offset = rng.gen_range(-denom / 4 + 1..denom / 4);
                if !used_offsets.insert((j, offset)) {
                    continue 'attempts;
                }
                dip_x.push((j, rat_int(j as i64) + rat(offset, denom)));
            }
            let mut vertices: Vec<Point> = Vec::new();
            let lift_at = |x: &Rat, j: i64, h: &Rat| -> Point {
                Point::new(x.clone(), tangent_line_at(j, x) + h)
            };
            // Start on the lifted leftmost tangent.
            vertices.push(lift_at(&rat_int(-1), 0, &h));
            let mut next_dip = 0usize;
            for window in 0..l {
                if next_dip < dip_x.len() && dip_x[next_dip].0 as i64 == window {
                    let (j, x) = &dip_x[next_dip];
                    let j = *j as i64;
                    vertices.push(lift_at(&(x - &h), j, &h));
                    vertices.push(Point::new(x.clone(), tangent_line_at(j, x)));
                    vertices.push(lift_at(&(x + &h), j, &h));
                    next_dip += 1;
                }
                if window < l - 1 {
                    // Envelope breakpoint between tangent j and j + 1.
                    let bx = rat_int(window) + rat(1, 2);
                    vertices.push(lift_at(&bx, window, &h));
                }
            }
            vertices.push(lift_at(&rat_int(l), l - 1, &h));
            let geometry =
                CurveGeometry::bi_infinite(vertices, rat_int(0), rat_int(2 * (l - 1)))
                    .expect("comb vertices are strictly x-sorted");
            for (j, x) in &dip_x {
                dips.push((i, n_combs + j, x.clone()));
            }
            curves.push(CurveRecord {
                id: CurveId(i),
                class: Some(CurveClass::S1),
                geometry,
            });
        }
        for j in 0..n_lines {
            let jj = j as i64;
            let x0 = rat_int(jj);
            let x1 = rat_int(jj) + rat_int(1);
            let geometry = CurveGeometry::bi_infinite(
                vec![
                    Point::new(x0.clone(), tangent_line_at(jj, &x0)),
                    Point::new(x1.clone(), tangent_line_at(jj, &x1)),
                ],
                rat_int(2 * jj),
                rat_int(2 * jj),
            )
            .expect("two vertices, increasing x");
            curves.push(CurveRecord {
                id: CurveId(n_combs + j),
                class: Some(CurveClass::S2),
                geometry,
            });
        }
        if validate_general_position(&curves)
            .map(|r| r.ok)
            .unwrap_or(false)
        {
            return Ok(CombFamily { curves, dips });
        }
    }
    Err(GeneratorError::RetriesExhausted(MAX_ATTEMPTS))
}

/// `n` pairwise-intersecting closed convex polygons: rational points on
/// circles of nearly equal radius with centers spread on a small ring, so
/// every two boundaries properly cross.
pub fn gen_convex_family(n: usize, seed: u64) -> Result<Vec<CurveRecord>, GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::TooFewCurves(2));
    }
    // Rational direction for parameter t: ((1-t^2)/(1+t^2), 2t/(1+t^2)) is an
    // exact point of the unit circle, swept counterclockwise as t grows.
    let circle_point = |t: &Rat| -> (Rat, Rat) {
        let t2 = t * t;
        let denom = rat_int(1) + &t2;
        ((rat_int(1) - &t2) / &denom, rat_int(2) * t / denom)
    };
    let base_ts: [(i64, i64); 19] = [
        (-15, 1),
        (-5, 1),
        (-5, 2),
        (-3, 2),
        (-1, 1),
        (-3, 4),
        (-1, 2),
        (-1, 4),
        (0, 1),
        (1, 4),
        (1, 2),
        (3, 4),
        (1, 1),
        (3, 2),
        (5, 2),
        (5, 1),
        (15, 1),
        (-40, 1),
        (40, 1),
    ];
    'attempts: for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(seed, attempt);
        let mut curves = Vec::new();
        for i in 0..n {
            // Center on a ring of radius 3.
            let u = rat(
                (2 * i as i64 + 1) * 64 + rng.gen_range(-16i64..16),
                n as i64 * 64,
            );
            let (cx, cy) = circle_point(&u);
            let center = (cx * rat_int(3), cy * rat_int(3));
            let radius = rat_int(8) + rat(i as i64 + 1, 16 * (n as i64 + 1));
            let mut ts: Vec<Rat> = base_ts
                .iter()
                .map(|&(p, q)| rat(p, q) + rat(rng.gen_range(-64i64..64), 4096))
                .collect();
            ts.sort();
            ts.dedup();
            if ts.len() != base_ts.len() {
                continue 'attempts;
            }
            let vertices: Vec<Point> = ts
                .iter()
                .map(|t| {
                    let (dx, dy) = circle_point(t);
                    Point::new(&center.0 + dx * &radius, &center.1 + dy * &radius)
                })
                .collect();
            match CurveGeometry::closed(vertices, None) {
                Ok(geometry) => curves.push(CurveRecord {
                    id: CurveId(i),
                    class: None,
                    geometry,
                }),
                Err(_) => continue 'attempts,
            }
        }
        if validate_general_position(&curves)
            .map(|r| r.ok)
            .unwrap_or(false)
        {
            return Ok(curves);
        }
    }
    Err(GeneratorError::RetriesExhausted(MAX_ATTEMPTS))
}

/// Hand-constructed closed families with a complete bipartite touching
/// pattern; supported for one or two curves per class.
///
/// For `n = 2`: two large squares crossing in two points bound a lens; two
/// small diamonds sit inside the lens, each touching both squares at a
/// diamond vertex on a square edge, and crossing each other twice.
pub fn gen_bipartite_closed_small(n: usize) -> Result<Vec<CurveRecord>, GeneratorError> {
    let pt = |x: i64, y: i64| Point::new(rat_int(x), rat_int(y));
    let closed = |pts: Vec<Point>| CurveGeometry::closed(pts, None).expect("simple polygon");
    let record = |id: usize, class: CurveClass, g: CurveGeometry| CurveRecord {
        id: CurveId(id),
        class: Some(class),
        geometry: g,
    };
    match n {
        1 => {
            let square = closed(vec![pt(-2, 0), pt(2, 0), pt(2, 4), pt(-2, 4)]);
            let spike = closed(vec![pt(0, 0), pt(-1, -2), pt(1, -2)]);
            Ok(vec![
                record(0, CurveClass::S1, square),
                record(1, CurveClass::S2, spike),
            ])
        }
        2 => {
            let a1 = closed(vec![pt(-10, -6), pt(4, -6), pt(4, 8), pt(-10, 8)]);
            let a2 = closed(vec![pt(-4, -8), pt(10, -8), pt(10, 6), pt(-4, 6)]);
            let b1 = closed(vec![pt(-4, 0), pt(0, -3), pt(4, 0), pt(0, 3)]);
            let b2 = closed(vec![pt(-4, 1), pt(0, -2), pt(4, 1), pt(0, 4)]);
            Ok(vec![
                record(0, CurveClass::S1, a1),
                record(1, CurveClass::S1, a2),
                record(2, CurveClass::S2, b1),
                record(3, CurveClass::S2, b2),
            ])
        }
        _ => Err(GeneratorError::UnsupportedSize),
    }
}

/// `n` random x-monotone polylines with `m` vertices each, rejection-sampled
/// to general position.
pub fn gen_random_polylines(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<Vec<CurveRecord>, GeneratorError> {
    let m = m.max(2);
    'attempts: for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(seed, attempt);
        let mut curves = Vec::new();
        for i in 0..n {
            let mut x = rat(rng.gen_range(0i64..64), 16);
            let mut vertices = Vec::with_capacity(m);
            for _ in 0..m {
                let y = rat(rng.gen_range(-160i64..160), 16);
                vertices.push(Point::new(x.clone(), y));
                x += rat(rng.gen_range(1i64..24), 16);
            }
            curves.push(CurveRecord {
                id: CurveId(i),
                class: None,
                geometry: CurveGeometry::open_monotone(vertices)
                    .expect("x strictly increases by construction"),
            });
        }
        match validate_general_position(&curves) {
            Ok(report) if report.ok => return Ok(curves),
            _ => continue 'attempts,
        }
    }
    Err(GeneratorError::RetriesExhausted(MAX_ATTEMPTS))
}

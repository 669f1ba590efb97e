//! Exact intersection of linear pieces (segments and terminal rays) and of
//! whole curves.

use super::{CurveGeometry, Dir, Point, Segment};
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One straight piece of a curve: `base + t * dir` with `t` in `[0, 1]` for a
/// bounded piece and `[0, inf)` for a terminal ray.
#[derive(Debug, Clone)]
pub struct LinearPiece {
    pub base: Point,
    pub dir: Dir,
    pub bounded: bool,
    pub tag: PieceTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceTag {
    Edge(usize),
    LeftRay,
    RightRay,
}

impl LinearPiece {
    fn point_at(&self, t: &Rat) -> Point {
        Point::new(
            &self.base.x + t * &self.dir.dx,
            &self.base.y + t * &self.dir.dy,
        )
    }

    fn contains_param(&self, t: &Rat) -> bool {
        !t.is_negative() && (!self.bounded || t <= &Rat::one())
    }

    /// Conservative coordinate bounds; `None` marks an unbounded side.
    fn x_range(&self) -> (Option<Rat>, Option<Rat>) {
        range_1d(&self.base.x, &self.dir.dx, self.bounded)
    }

    fn y_range(&self) -> (Option<Rat>, Option<Rat>) {
        range_1d(&self.base.y, &self.dir.dy, self.bounded)
    }
}

fn range_1d(base: &Rat, delta: &Rat, bounded: bool) -> (Option<Rat>, Option<Rat>) {
    if bounded {
        let end = base + delta;
        if &end < base {
            (Some(end), Some(base.clone()))
        } else {
            (Some(base.clone()), Some(end))
        }
    } else if delta.is_negative() {
        (None, Some(base.clone()))
    } else if delta.is_positive() {
        (Some(base.clone()), None)
    } else {
        (Some(base.clone()), Some(base.clone()))
    }
}

fn ranges_disjoint(a: (Option<Rat>, Option<Rat>), b: (Option<Rat>, Option<Rat>)) -> bool {
    if let (Some(hi), Some(lo)) = (&a.1, &b.0) {
        if hi < lo {
            return true;
        }
    }
    if let (Some(hi), Some(lo)) = (&b.1, &a.0) {
        if hi < lo {
            return true;
        }
    }
    false
}

/// Exact intersection of two pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceIntersection {
    None,
    /// A single common point together with both parameters.
    Point { point: Point, t1: Rat, t2: Rat },
    /// A shared collinear stretch of positive length; the second endpoint is
    /// absent when the overlap is unbounded.
    Overlap { start: Point, end: Option<Point> },
}

pub fn piece_intersection(p1: &LinearPiece, p2: &LinearPiece) -> PieceIntersection {
    if ranges_disjoint(p1.x_range(), p2.x_range()) || ranges_disjoint(p1.y_range(), p2.y_range()) {
        return PieceIntersection::None;
    }
    let offset = Dir::between(&p1.base, &p2.base);
    let cross = &p1.dir.dx * &p2.dir.dy - &p1.dir.dy * &p2.dir.dx;
    if !cross.is_zero() {
        let t1 = (&offset.dx * &p2.dir.dy - &offset.dy * &p2.dir.dx) / &cross;
        let t2 = (&offset.dx * &p1.dir.dy - &offset.dy * &p1.dir.dx) / &cross;
        if p1.contains_param(&t1) && p2.contains_param(&t2) {
            let point = p1.point_at(&t1);
            return PieceIntersection::Point { point, t1, t2 };
        }
        return PieceIntersection::None;
    }
    // Parallel pieces.
    let misaligned = &offset.dx * &p1.dir.dy - &offset.dy * &p1.dir.dx;
    if !misaligned.is_zero() {
        return PieceIntersection::None;
    }
    // Collinear: project piece 2 onto piece 1's parameter.
    let norm = &p1.dir.dx * &p1.dir.dx + &p1.dir.dy * &p1.dir.dy;
    let project = |p: &Point| -> Rat {
        let d = Dir::between(&p1.base, p);
        (&d.dx * &p1.dir.dx + &d.dy * &p1.dir.dy) / &norm
    };
    let start2 = project(&p2.base);
    let forward = p2.dir.dot_sign(&p1.dir) > 0;
    // Interval of piece 2 in piece 1's parameter, possibly unbounded.
    let (lo2, hi2): (Option<Rat>, Option<Rat>) = if p2.bounded {
        let end2 = project(&p2.point_at(&Rat::one()));
        if forward {
            (Some(start2), Some(end2))
        } else {
            (Some(end2), Some(start2))
        }
    } else if forward {
        (Some(start2), None)
    } else {
        (None, Some(start2))
    };
    let (lo1, hi1): (Option<Rat>, Option<Rat>) = if p1.bounded {
        (Some(Rat::zero()), Some(Rat::one()))
    } else {
        (Some(Rat::zero()), None)
    };
    let lo = match (lo1, lo2) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    };
    let hi = match (hi1, hi2) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    };
    match (lo, hi) {
        (Some(lo), Some(hi)) => {
            if lo > hi {
                PieceIntersection::None
            } else if lo == hi {
                let point = p1.point_at(&lo);
                let t2 = param_on(p2, &point);
                PieceIntersection::Point {
                    point,
                    t1: lo,
                    t2,
                }
            } else {
                PieceIntersection::Overlap {
                    start: p1.point_at(&lo),
                    end: Some(p1.point_at(&hi)),
                }
            }
        }
        (Some(lo), None) => PieceIntersection::Overlap {
            start: p1.point_at(&lo),
            end: None,
        },
        // lo is None only if both pieces extend to -infinity in parameter,
        // which rays never do (t >= 0).
        (None, _) => unreachable!("piece parameters are bounded below"),
    }
}

/// Parameter of a point known to lie on the line of a piece.
fn param_on(piece: &LinearPiece, point: &Point) -> Rat {
    let d = Dir::between(&piece.base, point);
    let norm = &piece.dir.dx * &piece.dir.dx + &piece.dir.dy * &piece.dir.dy;
    (&d.dx * &piece.dir.dx + &d.dy * &piece.dir.dy) / norm
}

/// Classification of two segments' intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentIntersection {
    None,
    Point(Point),
    Overlap(Segment),
}

/// Exact intersection of two segments: empty, one point, or a collinear
/// overlap of positive length.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let p1 = LinearPiece {
        base: s1.a.clone(),
        dir: Dir::between(&s1.a, &s1.b),
        bounded: true,
        tag: PieceTag::Edge(0),
    };
    let p2 = LinearPiece {
        base: s2.a.clone(),
        dir: Dir::between(&s2.a, &s2.b),
        bounded: true,
        tag: PieceTag::Edge(0),
    };
    match piece_intersection(&p1, &p2) {
        PieceIntersection::None => SegmentIntersection::None,
        PieceIntersection::Point { point, .. } => SegmentIntersection::Point(point),
        PieceIntersection::Overlap { start, end } => {
            let end = end.expect("two segments cannot overlap unboundedly");
            SegmentIntersection::Overlap(Segment { a: start, b: end })
        }
    }
}

/// Enumerates the straight pieces of a curve in stored order.
pub fn curve_pieces(curve: &CurveGeometry) -> Vec<LinearPiece> {
    let vertices = curve.vertices();
    let mut pieces = Vec::new();
    match curve {
        CurveGeometry::OpenMonotone { .. } => {
            for i in 0..vertices.len() - 1 {
                pieces.push(edge_piece(vertices, i, false));
            }
        }
        CurveGeometry::BiInfiniteMonotone {
            left_ray_slope,
            right_ray_slope,
            ..
        } => {
            let first = &vertices[0];
            pieces.push(LinearPiece {
                base: first.clone(),
                dir: Dir {
                    dx: -Rat::one(),
                    dy: -left_ray_slope.clone(),
                },
                bounded: false,
                tag: PieceTag::LeftRay,
            });
            for i in 0..vertices.len() - 1 {
                pieces.push(edge_piece(vertices, i, false));
            }
            let last = &vertices[vertices.len() - 1];
            pieces.push(LinearPiece {
                base: last.clone(),
                dir: Dir {
                    dx: Rat::one(),
                    dy: right_ray_slope.clone(),
                },
                bounded: false,
                tag: PieceTag::RightRay,
            });
        }
        CurveGeometry::Closed { .. } => {
            for i in 0..vertices.len() {
                pieces.push(edge_piece(vertices, i, true));
            }
        }
    }
    pieces
}

fn edge_piece(vertices: &[Point], i: usize, cyclic: bool) -> LinearPiece {
    let a = &vertices[i];
    let b = if cyclic {
        &vertices[(i + 1) % vertices.len()]
    } else {
        &vertices[i + 1]
    };
    LinearPiece {
        base: a.clone(),
        dir: Dir::between(a, b),
        bounded: true,
        tag: PieceTag::Edge(i),
    }
}

/// All intersection points of a pair of curves, each with its exact stored
/// position on both curves (abscissa for monotone curves, edge index plus
/// fraction for closed curves).
#[derive(Debug, Clone, Default)]
pub struct PairIntersections {
    pub points: Vec<PairPoint>,
    /// Present when the curves share infinitely many points.
    pub overlap: Option<Point>,
}

#[derive(Debug, Clone)]
pub struct PairPoint {
    pub point: Point,
    pub pos_a: Rat,
    pub pos_b: Rat,
}

pub fn curve_pair_intersections(a: &CurveGeometry, b: &CurveGeometry) -> PairIntersections {
    let pieces_a = curve_pieces(a);
    let pieces_b = curve_pieces(b);
    let mut found: BTreeMap<Point, (Rat, Rat)> = BTreeMap::new();
    let mut overlap = None;
    for pa in &pieces_a {
        for pb in &pieces_b {
            match piece_intersection(pa, pb) {
                PieceIntersection::None => {}
                PieceIntersection::Point { point, t1, t2 } => {
                    let pos_a = stored_position(a, pa, &point, &t1);
                    let pos_b = stored_position(b, pb, &point, &t2);
                    found.entry(point).or_insert((pos_a, pos_b));
                }
                PieceIntersection::Overlap { start, .. } => {
                    overlap.get_or_insert(start);
                }
            }
        }
    }
    PairIntersections {
        points: found
            .into_iter()
            .map(|(point, (pos_a, pos_b))| PairPoint {
                point,
                pos_a,
                pos_b,
            })
            .collect(),
        overlap,
    }
}

/// Canonical stored position of an intersection point on a curve.
fn stored_position(curve: &CurveGeometry, piece: &LinearPiece, point: &Point, t: &Rat) -> Rat {
    match curve {
        CurveGeometry::Closed { vertices, .. } => {
            let PieceTag::Edge(i) = piece.tag else {
                unreachable!("closed curves have no rays")
            };
            // A point at the far end of edge i is canonically the start of
            // edge i+1.
            if t.is_one() {
                Rat::from_integer(((i + 1) % vertices.len()).into())
            } else {
                Rat::from_integer(i.into()) + t
            }
        }
        _ => point.x.clone(),
    }
}

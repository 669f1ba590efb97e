//! Exact geometric primitives: points, segments, polygonal curves and the
//! local touching/crossing classification.

mod curve;
mod intersect;
mod local;

pub use curve::{CurveGeometry, CurveKind, Orientation};
pub use intersect::{
    curve_pair_intersections, curve_pieces, piece_intersection, segment_intersection, LinearPiece,
    PairIntersections, PairPoint, PieceIntersection, PieceTag, SegmentIntersection,
};
pub use local::{classify_local_closed, classify_local_monotone, corner_has_on_left};

use crate::rational::{sign, Rat};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A point of the rational plane, totally ordered by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

/// A direction in the plane; never the zero vector when produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dir {
    pub dx: Rat,
    pub dy: Rat,
}

impl Dir {
    pub fn between(from: &Point, to: &Point) -> Self {
        Dir {
            dx: &to.x - &from.x,
            dy: &to.y - &from.y,
        }
    }

    pub fn opposite(&self) -> Self {
        Dir {
            dx: -&self.dx,
            dy: -&self.dy,
        }
    }

    /// Sign of the cross product `self x other`.
    pub fn cross_sign(&self, other: &Dir) -> i8 {
        sign(&(&self.dx * &other.dy - &self.dy * &other.dx))
    }

    /// Sign of the dot product.
    pub fn dot_sign(&self, other: &Dir) -> i8 {
        sign(&(&self.dx * &other.dx + &self.dy * &other.dy))
    }

    /// True when the directions are positive multiples of each other.
    pub fn same_ray(&self, other: &Dir) -> bool {
        self.cross_sign(other) == 0 && self.dot_sign(other) > 0
    }
}

/// A closed segment with distinct endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("monotone curve needs at least 2 vertices, closed curve at least 3")]
    TooFewVertices,
    #[error("vertex x-coordinates must be strictly increasing for a monotone curve")]
    NotMonotone,
    #[error("closed curve has a repeated vertex")]
    RepeatedVertex,
    #[error("closed curve is not simple: edges {0} and {1} intersect")]
    SelfIntersection(usize, usize),
    #[error("abscissa outside the domain of an open monotone curve")]
    OutsideDomain,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn pt(x: i64, y: i64) -> Point {
        Point::new(rat_int(x), rat_int(y))
    }

    #[test]
    fn point_order_is_lexicographic() {
        assert!(pt(0, 5) < pt(1, -5));
        assert!(pt(1, 0) < pt(1, 1));
        assert_eq!(pt(2, 2).cmp(&pt(2, 2)), Ordering::Equal);
    }

    #[test]
    fn dir_predicates() {
        let e = Dir {
            dx: rat_int(1),
            dy: rat_int(0),
        };
        let n = Dir {
            dx: rat_int(0),
            dy: rat_int(1),
        };
        assert_eq!(e.cross_sign(&n), 1);
        assert_eq!(n.cross_sign(&e), -1);
        assert!(e.same_ray(&Dir {
            dx: rat(7, 2),
            dy: rat_int(0)
        }));
        assert!(!e.same_ray(&e.opposite()));
    }
}

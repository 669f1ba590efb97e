use super::{Dir, GeometryError, Point};
use crate::rational::{sign, Rat};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Winding sense of a closed curve's traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Open,
    BiInfinite,
    Closed,
}

/// The polyline geometry of a curve.
///
/// Monotone variants keep their vertices in strictly increasing `x` order, so
/// any vertical line meets the curve at most once. A closed curve stores one
/// cycle of vertices (the closing edge is implicit) and must be a simple
/// polygon. The optional orientation tag selects the traversal sense of a
/// closed curve: when it disagrees with the winding of the stored vertex
/// order, traversal runs through the stored vertices backwards. Vertices are
/// never reordered, which keeps serialized files bit-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveGeometry {
    OpenMonotone {
        vertices: Vec<Point>,
    },
    BiInfiniteMonotone {
        vertices: Vec<Point>,
        left_ray_slope: Rat,
        right_ray_slope: Rat,
    },
    Closed {
        vertices: Vec<Point>,
        orientation: Option<Orientation>,
    },
}

impl CurveGeometry {
    pub fn open_monotone(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        check_monotone(&vertices)?;
        Ok(CurveGeometry::OpenMonotone { vertices })
    }

    pub fn bi_infinite(
        vertices: Vec<Point>,
        left_ray_slope: Rat,
        right_ray_slope: Rat,
    ) -> Result<Self, GeometryError> {
        check_monotone(&vertices)?;
        Ok(CurveGeometry::BiInfiniteMonotone {
            vertices,
            left_ray_slope,
            right_ray_slope,
        })
    }

    pub fn closed(
        vertices: Vec<Point>,
        orientation: Option<Orientation>,
    ) -> Result<Self, GeometryError> {
        check_simple_polygon(&vertices)?;
        Ok(CurveGeometry::Closed {
            vertices,
            orientation,
        })
    }

    pub fn kind(&self) -> CurveKind {
        match self {
            CurveGeometry::OpenMonotone { .. } => CurveKind::Open,
            CurveGeometry::BiInfiniteMonotone { .. } => CurveKind::BiInfinite,
            CurveGeometry::Closed { .. } => CurveKind::Closed,
        }
    }

    pub fn is_monotone(&self) -> bool {
        !matches!(self, CurveGeometry::Closed { .. })
    }

    pub fn vertices(&self) -> &[Point] {
        match self {
            CurveGeometry::OpenMonotone { vertices }
            | CurveGeometry::BiInfiniteMonotone { vertices, .. }
            | CurveGeometry::Closed { vertices, .. } => vertices,
        }
    }

    /// Domain of a monotone curve; `None` when every abscissa is admissible.
    pub fn domain(&self) -> Option<(&Rat, &Rat)> {
        match self {
            CurveGeometry::OpenMonotone { vertices } => {
                Some((&vertices[0].x, &vertices[vertices.len() - 1].x))
            }
            _ => None,
        }
    }

    /// The unique `y` with `(x, y)` on a monotone curve.
    pub fn eval_at(&self, x: &Rat) -> Result<Rat, GeometryError> {
        let vertices = match self {
            CurveGeometry::OpenMonotone { vertices } => {
                if x < &vertices[0].x || x > &vertices[vertices.len() - 1].x {
                    return Err(GeometryError::OutsideDomain);
                }
                vertices
            }
            CurveGeometry::BiInfiniteMonotone {
                vertices,
                left_ray_slope,
                right_ray_slope,
            } => {
                let first = &vertices[0];
                let last = &vertices[vertices.len() - 1];
                if x < &first.x {
                    return Ok(&first.y + left_ray_slope * (x - &first.x));
                }
                if x > &last.x {
                    return Ok(&last.y + right_ray_slope * (x - &last.x));
                }
                vertices
            }
            CurveGeometry::Closed { .. } => {
                return Err(GeometryError::DegenerateInput(
                    "eval_at is defined for monotone curves only".into(),
                ))
            }
        };
        let hi = vertices.partition_point(|v| &v.x < x);
        if hi < vertices.len() && &vertices[hi].x == x {
            return Ok(vertices[hi].y.clone());
        }
        let (a, b) = (&vertices[hi - 1], &vertices[hi]);
        let t = (x - &a.x) / (&b.x - &a.x);
        Ok(&a.y + t * (&b.y - &a.y))
    }

    /// Largest absolute slope over the curve's segments (rays excluded).
    pub fn segment_max_abs_slope(&self) -> Rat {
        let vertices = self.vertices();
        let n = vertices.len();
        let count = match self {
            CurveGeometry::Closed { .. } => n,
            _ => n - 1,
        };
        let mut best = Rat::zero();
        for i in 0..count {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let dx = &b.x - &a.x;
            if dx.is_zero() {
                continue; // vertical closed-curve edge: no slope to report
            }
            let s = ((&b.y - &a.y) / dx).abs();
            if s > best {
                best = s;
            }
        }
        best
    }

    // ---- closed-curve traversal ----

    pub fn edge_count(&self) -> usize {
        match self {
            CurveGeometry::Closed { vertices, .. } => vertices.len(),
            _ => self.vertices().len() - 1,
        }
    }

    /// Winding of the stored vertex order.
    pub fn stored_winding(&self) -> Orientation {
        let vertices = self.vertices();
        let mut area2 = Rat::zero();
        for i in 0..vertices.len() {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % vertices.len()];
            area2 += &a.x * &b.y - &b.x * &a.y;
        }
        if sign(&area2) >= 0 {
            Orientation::Ccw
        } else {
            Orientation::Cw
        }
    }

    pub fn orientation_tag(&self) -> Option<Orientation> {
        match self {
            CurveGeometry::Closed { orientation, .. } => *orientation,
            _ => None,
        }
    }

    /// The traversal sense actually in force: the tag when set, otherwise the
    /// winding of the stored order.
    pub fn effective_orientation(&self) -> Option<Orientation> {
        match self {
            CurveGeometry::Closed { orientation, .. } => {
                Some(orientation.unwrap_or_else(|| self.stored_winding()))
            }
            _ => None,
        }
    }

    /// True when traversal runs through the stored vertices backwards.
    pub fn is_reversed(&self) -> bool {
        match self {
            CurveGeometry::Closed {
                orientation: Some(tag),
                ..
            } => *tag != self.stored_winding(),
            _ => false,
        }
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        match self {
            CurveGeometry::Closed { vertices, .. } => CurveGeometry::Closed {
                vertices: vertices.clone(),
                orientation: Some(orientation),
            },
            other => other.clone(),
        }
    }

    /// Maps a stored position `s in [0, m)` (edge index plus fraction) to the
    /// traversal position used for arc ordering.
    pub fn traversal_param(&self, s: &Rat) -> Rat {
        if !self.is_reversed() {
            return s.clone();
        }
        let m = Rat::from_integer(self.edge_count().into());
        if s.is_zero() {
            Rat::zero()
        } else {
            m - s
        }
    }

    /// Local incoming/outgoing directions of a closed curve at stored
    /// position `s`, with respect to the traversal sense.
    pub fn closed_local_dirs(&self, s: &Rat) -> (Dir, Dir) {
        let vertices = match self {
            CurveGeometry::Closed { vertices, .. } => vertices,
            _ => unreachable!("closed_local_dirs on a monotone curve"),
        };
        let m = vertices.len();
        let floor = s.floor();
        let edge = floor.to_integer().try_into().unwrap_or(0usize) % m;
        let at_vertex = s == &floor;
        let dir_of = |i: usize| Dir::between(&vertices[i % m], &vertices[(i + 1) % m]);
        let (d_in, d_out) = if at_vertex {
            let prev = (edge + m - 1) % m;
            (dir_of(prev), dir_of(edge))
        } else {
            let d = dir_of(edge);
            (d.clone(), d)
        };
        if self.is_reversed() {
            (d_out.opposite(), d_in.opposite())
        } else {
            (d_in, d_out)
        }
    }

    /// Point at stored position `s` on a closed curve.
    pub fn point_at_param(&self, s: &Rat) -> Point {
        let vertices = match self {
            CurveGeometry::Closed { vertices, .. } => vertices,
            _ => unreachable!("point_at_param on a monotone curve"),
        };
        let m = vertices.len();
        let floor = s.floor();
        let edge: usize = floor.to_integer().try_into().unwrap_or(0usize) % m;
        let t = s - &floor;
        let a = &vertices[edge];
        let b = &vertices[(edge + 1) % m];
        Point::new(&a.x + &t * (&b.x - &a.x), &a.y + &t * (&b.y - &a.y))
    }
}

fn check_monotone(vertices: &[Point]) -> Result<(), GeometryError> {
    if vertices.len() < 2 {
        return Err(GeometryError::TooFewVertices);
    }
    for pair in vertices.windows(2) {
        if pair[0].x >= pair[1].x {
            return Err(GeometryError::NotMonotone);
        }
    }
    Ok(())
}

fn check_simple_polygon(vertices: &[Point]) -> Result<(), GeometryError> {
    let m = vertices.len();
    if m < 3 {
        return Err(GeometryError::TooFewVertices);
    }
    for i in 0..m {
        for j in i + 1..m {
            if vertices[i] == vertices[j] {
                return Err(GeometryError::RepeatedVertex);
            }
        }
    }
    // Adjacent edges may only share their common vertex; they fold back onto
    // each other exactly when the outgoing edge retraces the incoming one.
    for i in 0..m {
        let prev = &vertices[(i + m - 1) % m];
        let here = &vertices[i];
        let next = &vertices[(i + 1) % m];
        let back = Dir::between(here, prev);
        let fwd = Dir::between(here, next);
        if back.same_ray(&fwd) {
            return Err(GeometryError::SelfIntersection((i + m - 1) % m, i));
        }
    }
    // Non-adjacent edges must be disjoint.
    for i in 0..m {
        for j in i + 1..m {
            if j == i + 1 || (i == 0 && j == m - 1) {
                continue;
            }
            let si = super::Segment::new(vertices[i].clone(), vertices[(i + 1) % m].clone())
                .map_err(|_| GeometryError::RepeatedVertex)?;
            let sj = super::Segment::new(vertices[j].clone(), vertices[(j + 1) % m].clone())
                .map_err(|_| GeometryError::RepeatedVertex)?;
            if !matches!(
                super::segment_intersection(&si, &sj),
                super::SegmentIntersection::None
            ) {
                return Err(GeometryError::SelfIntersection(i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn pt(x: i64, y: i64) -> Point {
        Point::new(rat_int(x), rat_int(y))
    }

    #[test]
    fn monotone_constructor_enforces_strict_x() {
        assert!(CurveGeometry::open_monotone(vec![pt(0, 0), pt(1, 1)]).is_ok());
        assert!(matches!(
            CurveGeometry::open_monotone(vec![pt(0, 0), pt(0, 1)]),
            Err(GeometryError::NotMonotone)
        ));
        assert!(matches!(
            CurveGeometry::open_monotone(vec![pt(0, 0)]),
            Err(GeometryError::TooFewVertices)
        ));
    }

    #[test]
    fn eval_at_examples() {
        // V-shaped curve with slopes +/-1.
        let v = CurveGeometry::open_monotone(vec![pt(-1, 1), pt(0, 0), pt(1, 1)]).unwrap();
        assert_eq!(v.eval_at(&rat(1, 2)).unwrap(), rat(1, 2));
        assert!(matches!(
            v.eval_at(&rat_int(2)),
            Err(GeometryError::OutsideDomain)
        ));

        let flat =
            CurveGeometry::bi_infinite(vec![pt(0, 0), pt(1, 0)], rat_int(0), rat_int(0)).unwrap();
        assert_eq!(flat.eval_at(&rat_int(1_000_000)).unwrap(), rat_int(0));

        let steep =
            CurveGeometry::bi_infinite(vec![pt(0, 0), pt(1, 3)], rat_int(3), rat_int(3)).unwrap();
        assert_eq!(steep.eval_at(&rat_int(-2)).unwrap(), rat_int(-6));
    }

    #[test]
    fn closed_constructor_rejects_self_intersection() {
        // Bowtie.
        assert!(matches!(
            CurveGeometry::closed(vec![pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)], None),
            Err(GeometryError::SelfIntersection(..))
        ));
        assert!(CurveGeometry::closed(vec![pt(0, 0), pt(2, 0), pt(1, 2)], None).is_ok());
    }

    #[test]
    fn winding_and_reversal() {
        let ccw = CurveGeometry::closed(vec![pt(0, 0), pt(2, 0), pt(1, 2)], None).unwrap();
        assert_eq!(ccw.stored_winding(), Orientation::Ccw);
        assert!(!ccw.is_reversed());
        let tagged = ccw.with_orientation(Orientation::Cw);
        assert!(tagged.is_reversed());
        assert_eq!(tagged.effective_orientation(), Some(Orientation::Cw));
        // Traversal position flips.
        assert_eq!(tagged.traversal_param(&rat(1, 2)), rat(5, 2));
        assert_eq!(tagged.traversal_param(&rat_int(0)), rat_int(0));
    }

    #[test]
    fn local_dirs_at_vertex_and_edge() {
        let tri = CurveGeometry::closed(vec![pt(0, 0), pt(2, 0), pt(1, 2)], None).unwrap();
        let (d_in, d_out) = tri.closed_local_dirs(&rat(1, 2));
        assert_eq!(d_in, d_out);
        let (d_in, d_out) = tri.closed_local_dirs(&rat_int(1));
        assert_eq!(d_in, Dir::between(&pt(0, 0), &pt(2, 0)));
        assert_eq!(d_out, Dir::between(&pt(2, 0), &pt(1, 2)));
    }
}

//! Independent all-pairs intersection oracle.
//!
//! This module re-derives every intersection point and its classification
//! from scratch: line-coefficient solving, interval containment and a
//! hand-rolled wedge test, sharing nothing with the construction path in
//! [`super::build_arrangement`] beyond the rational scalar type and read-only
//! access to curve vertices. It exists so the two implementations can be
//! compared on every generated family.

use crate::geometry::{CurveGeometry, Orientation, Point};
use crate::rational::{sign, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

use super::CurveRecord;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BruteKind {
    Crossing,
    Touching { upper_or_left: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BruteIntersection {
    pub point: Point,
    pub lo: usize,
    pub hi: usize,
    pub kind: BruteKind,
}

#[derive(Debug, thiserror::Error)]
pub enum BruteError {
    #[error("curves {0} and {1} share infinitely many points")]
    Overlap(usize, usize),
    #[error("three or more curves pass through one point")]
    TriplePoint,
    #[error("cannot classify intersection of curves {0} and {1}: {2}")]
    Classification(usize, usize, String),
}

// One straight element: a segment between two points, or a ray clipped only
// by its apex abscissa.
#[derive(Debug, Clone)]
enum Element {
    Segment(Point, Point),
    // apex, slope, and whether the ray extends to the left
    Ray(Point, Rat, bool),
}

impl Element {
    // Homogeneous line coefficients (a, b, c) with a*x + b*y + c = 0.
    fn line(&self) -> (Rat, Rat, Rat) {
        match self {
            Element::Segment(p, q) => {
                let a = &q.y - &p.y;
                let b = &p.x - &q.x;
                let c = -(&a * &p.x + &b * &p.y);
                (a, b, c)
            }
            Element::Ray(apex, slope, _) => {
                // y - apex.y = slope * (x - apex.x)
                let a = slope.clone();
                let b = -Rat::one();
                let c = &apex.y - slope * &apex.x;
                (a, b, c)
            }
        }
    }

    fn contains(&self, p: &Point) -> bool {
        match self {
            Element::Segment(u, v) => {
                let (lo_x, hi_x) = if u.x <= v.x {
                    (&u.x, &v.x)
                } else {
                    (&v.x, &u.x)
                };
                let (lo_y, hi_y) = if u.y <= v.y {
                    (&u.y, &v.y)
                } else {
                    (&v.y, &u.y)
                };
                &p.x >= lo_x && &p.x <= hi_x && &p.y >= lo_y && &p.y <= hi_y
            }
            Element::Ray(apex, _, left) => {
                if *left {
                    p.x <= apex.x
                } else {
                    p.x >= apex.x
                }
            }
        }
    }

    // 1D x-interval, None meaning unbounded on that side.
    fn x_interval(&self) -> (Option<Rat>, Option<Rat>) {
        match self {
            Element::Segment(u, v) => {
                if u.x <= v.x {
                    (Some(u.x.clone()), Some(v.x.clone()))
                } else {
                    (Some(v.x.clone()), Some(u.x.clone()))
                }
            }
            Element::Ray(apex, _, left) => {
                if *left {
                    (None, Some(apex.x.clone()))
                } else {
                    (Some(apex.x.clone()), None)
                }
            }
        }
    }

    fn point_at_x(&self, x: &Rat) -> Point {
        match self {
            Element::Segment(u, v) => {
                if u.x == v.x {
                    u.clone() // vertical: only used for overlap endpoints
                } else {
                    let t = (x - &u.x) / (&v.x - &u.x);
                    Point::new(x.clone(), &u.y + t * (&v.y - &u.y))
                }
            }
            Element::Ray(apex, slope, _) => Point::new(x.clone(), &apex.y + slope * (x - &apex.x)),
        }
    }
}

fn elements_of(curve: &CurveGeometry) -> Vec<Element> {
    let vs = curve.vertices();
    let mut out = Vec::new();
    match curve {
        CurveGeometry::OpenMonotone { .. } => {
            for w in vs.windows(2) {
                out.push(Element::Segment(w[0].clone(), w[1].clone()));
            }
        }
        CurveGeometry::BiInfiniteMonotone {
            left_ray_slope,
            right_ray_slope,
            ..
        } => {
            out.push(Element::Ray(vs[0].clone(), left_ray_slope.clone(), true));
            for w in vs.windows(2) {
                out.push(Element::Segment(w[0].clone(), w[1].clone()));
            }
            out.push(Element::Ray(
                vs[vs.len() - 1].clone(),
                right_ray_slope.clone(),
                false,
            ));
        }
        CurveGeometry::Closed { .. } => {
            for i in 0..vs.len() {
                out.push(Element::Segment(
                    vs[i].clone(),
                    vs[(i + 1) % vs.len()].clone(),
                ));
            }
        }
    }
    out
}

// All common points of two elements; Err(()) signals a positive-length
// collinear overlap.
fn element_common_points(e1: &Element, e2: &Element) -> Result<Vec<Point>, ()> {
    let (a1, b1, c1) = e1.line();
    let (a2, b2, c2) = e2.line();
    let det = &a1 * &b2 - &a2 * &b1;
    if !det.is_zero() {
        let x = (&b1 * &c2 - &b2 * &c1) / &det;
        let y = (&c1 * &a2 - &c2 * &a1) / &det;
        let p = Point::new(x, y);
        if e1.contains(&p) && e2.contains(&p) {
            return Ok(vec![p]);
        }
        return Ok(vec![]);
    }
    // Parallel. Same line iff the coefficient vectors are proportional.
    let same_line = (&a1 * &c2 - &a2 * &c1).is_zero() && (&b1 * &c2 - &b2 * &c1).is_zero();
    if !same_line {
        return Ok(vec![]);
    }
    // Collinear elements of monotone/closed curves are never vertical when
    // they come in pairs from distinct curves in general position; compare
    // x-intervals. Vertical collinear segments share x, compare y instead.
    let vertical = b1.is_zero();
    if vertical {
        // Both vertical on the same line: intervals in y.
        let ys = |e: &Element| -> (Rat, Rat) {
            match e {
                Element::Segment(u, v) => {
                    if u.y <= v.y {
                        (u.y.clone(), v.y.clone())
                    } else {
                        (v.y.clone(), u.y.clone())
                    }
                }
                Element::Ray(..) => unreachable!("rays are never vertical"),
            }
        };
        let (l1, h1) = ys(e1);
        let (l2, h2) = ys(e2);
        let lo = l1.max(l2);
        let hi = h1.min(h2);
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Ok(vec![]),
            std::cmp::Ordering::Equal => {
                let x = match e1 {
                    Element::Segment(u, _) => u.x.clone(),
                    Element::Ray(apex, ..) => apex.x.clone(),
                };
                Ok(vec![Point::new(x, lo)])
            }
            std::cmp::Ordering::Less => Err(()),
        };
    }
    let (l1, h1) = e1.x_interval();
    let (l2, h2) = e2.x_interval();
    let lo = match (l1, l2) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    };
    let hi = match (h1, h2) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    };
    match (lo, hi) {
        (Some(lo), Some(hi)) => match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Ok(vec![]),
            std::cmp::Ordering::Equal => Ok(vec![e1.point_at_x(&lo)]),
            std::cmp::Ordering::Less => Err(()),
        },
        _ => Err(()), // unbounded overlap
    }
}

// Independent piecewise evaluation of a monotone curve.
fn eval(curve: &CurveGeometry, x: &Rat) -> Option<Rat> {
    let vs = curve.vertices();
    match curve {
        CurveGeometry::OpenMonotone { .. } => {
            if x < &vs[0].x || x > &vs[vs.len() - 1].x {
                return None;
            }
        }
        CurveGeometry::BiInfiniteMonotone {
            left_ray_slope,
            right_ray_slope,
            ..
        } => {
            if x < &vs[0].x {
                return Some(&vs[0].y + left_ray_slope * (x - &vs[0].x));
            }
            if x > &vs[vs.len() - 1].x {
                let last = &vs[vs.len() - 1];
                return Some(&last.y + right_ray_slope * (x - &last.x));
            }
        }
        CurveGeometry::Closed { .. } => return None,
    }
    for w in vs.windows(2) {
        if x >= &w[0].x && x <= &w[1].x {
            let t = (x - &w[0].x) / (&w[1].x - &w[0].x);
            return Some(&w[0].y + t * (&w[1].y - &w[0].y));
        }
    }
    None
}

fn classify_monotone_pair(
    a: &CurveGeometry,
    b: &CurveGeometry,
    p: &Point,
    all_points: &BTreeSet<Point>,
) -> Result<MonotoneBruteLocal, String> {
    // Events bracketing p: vertices of both curves and the pair's other
    // intersection points.
    let mut left: Option<Rat> = None;
    let mut right: Option<Rat> = None;
    let mut feed = |x: &Rat| {
        if x < &p.x && left.as_ref().map_or(true, |l| x > l) {
            left = Some(x.clone());
        }
        if x > &p.x && right.as_ref().map_or(true, |r| x < r) {
            right = Some(x.clone());
        }
    };
    for c in [a, b] {
        for v in c.vertices() {
            feed(&v.x);
        }
    }
    for q in all_points {
        if q != p {
            feed(&q.x);
        }
    }
    let two = Rat::from_integer(2.into());
    let xl = match left {
        Some(l) => (l + &p.x) / &two,
        None => &p.x - Rat::one(),
    };
    let xr = match right {
        Some(r) => (r + &p.x) / &two,
        None => &p.x + Rat::one(),
    };
    let delta = |x: &Rat| -> Result<i8, String> {
        let ya = eval(a, x).ok_or("probe outside domain")?;
        let yb = eval(b, x).ok_or("probe outside domain")?;
        let s = sign(&(ya - yb));
        if s == 0 {
            return Err("curves meet at probe abscissa".into());
        }
        Ok(s)
    };
    let sl = delta(&xl)?;
    let sr = delta(&xr)?;
    if sl != sr {
        Ok(MonotoneBruteLocal::Crossing)
    } else {
        Ok(MonotoneBruteLocal::Touching { first_above: sl > 0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MonotoneBruteLocal {
    Crossing,
    Touching { first_above: bool },
}

// ---- closed-curve classification, wedge-based ----

struct ClosedBranches {
    d_in: (Rat, Rat),
    d_out: (Rat, Rat),
}

fn cross2(u: &(Rat, Rat), v: &(Rat, Rat)) -> i8 {
    sign(&(&u.0 * &v.1 - &u.1 * &v.0))
}

fn dot2(u: &(Rat, Rat), v: &(Rat, Rat)) -> i8 {
    sign(&(&u.0 * &v.0 + &u.1 * &v.1))
}

fn neg2(u: &(Rat, Rat)) -> (Rat, Rat) {
    (-&u.0, -&u.1)
}

// Walks the polygon to find p and the traversal-adjusted branch directions.
fn closed_branches(curve: &CurveGeometry, p: &Point) -> Option<ClosedBranches> {
    let vs = curve.vertices();
    let m = vs.len();
    let reversed = match curve.orientation_tag() {
        Some(tag) => {
            let mut area2 = Rat::zero();
            for i in 0..m {
                let a = &vs[i];
                let b = &vs[(i + 1) % m];
                area2 += &a.x * &b.y - &b.x * &a.y;
            }
            let winding = if sign(&area2) >= 0 {
                Orientation::Ccw
            } else {
                Orientation::Cw
            };
            tag != winding
        }
        None => false,
    };
    for i in 0..m {
        let u = &vs[i];
        let v = &vs[(i + 1) % m];
        if p == u {
            let prev = &vs[(i + m - 1) % m];
            let (d_in, d_out) = (
                (&u.x - &prev.x, &u.y - &prev.y),
                (&v.x - &u.x, &v.y - &u.y),
            );
            return Some(orient_branches(d_in, d_out, reversed));
        }
        // Interior of edge (u, v)?
        let du = (&v.x - &u.x, &v.y - &u.y);
        let dp = (&p.x - &u.x, &p.y - &u.y);
        if cross2(&du, &dp) == 0 && dot2(&du, &dp) > 0 {
            let dv = (&p.x - &v.x, &p.y - &v.y);
            if dot2(&du, &dv) < 0 {
                return Some(orient_branches(du.clone(), du, reversed));
            }
        }
    }
    None
}

fn orient_branches(d_in: (Rat, Rat), d_out: (Rat, Rat), reversed: bool) -> ClosedBranches {
    if reversed {
        ClosedBranches {
            d_in: neg2(&d_out),
            d_out: neg2(&d_in),
        }
    } else {
        ClosedBranches { d_in, d_out }
    }
}

// Is direction w strictly inside the ccw wedge from u to v?
fn in_ccw_wedge(u: &(Rat, Rat), v: &(Rat, Rat), w: &(Rat, Rat)) -> bool {
    let uv = cross2(u, v);
    if uv > 0 {
        cross2(u, w) > 0 && cross2(w, v) > 0
    } else if uv < 0 {
        !(cross2(v, w) >= 0 && cross2(w, u) >= 0)
    } else if dot2(u, v) < 0 {
        // Opposite directions: the "ccw wedge from u to v" is the open left
        // half-plane of u.
        cross2(u, w) > 0
    } else {
        false // u == v as rays: empty wedge
    }
}

fn left_of_corner(d_in: &(Rat, Rat), d_out: &(Rat, Rat), w: &(Rat, Rat)) -> bool {
    let turn = cross2(d_in, d_out);
    let li = cross2(d_in, w) > 0;
    let lo = cross2(d_out, w) > 0;
    if turn > 0 {
        li && lo
    } else if turn < 0 {
        li || lo
    } else {
        li
    }
}

fn classify_closed_pair(
    a: &CurveGeometry,
    b: &CurveGeometry,
    p: &Point,
) -> Result<ClosedBruteLocal, String> {
    let ba = closed_branches(a, p).ok_or("point not located on first curve")?;
    let bb = closed_branches(b, p).ok_or("point not located on second curve")?;
    let a1 = neg2(&ba.d_in);
    let a2 = ba.d_out.clone();
    let b1 = neg2(&bb.d_in);
    let b2 = bb.d_out.clone();
    // b's branches split a's iff exactly one of them lies in the ccw wedge
    // from a2 to a1.
    let w1 = in_ccw_wedge(&a2, &a1, &b1);
    let w2 = in_ccw_wedge(&a2, &a1, &b2);
    for v in [&b1, &b2] {
        for u in [&a1, &a2] {
            if cross2(u, v) == 0 && dot2(u, v) > 0 {
                return Err("coincident branch directions".into());
            }
        }
    }
    if w1 != w2 {
        return Ok(ClosedBruteLocal::Crossing);
    }
    Ok(ClosedBruteLocal::Touching {
        b_left_of_a: left_of_corner(&ba.d_in, &ba.d_out, &b1),
        a_left_of_b: left_of_corner(&bb.d_in, &bb.d_out, &a1),
    })
}

enum ClosedBruteLocal {
    Crossing,
    Touching { b_left_of_a: bool, a_left_of_b: bool },
}

/// Computes the classified intersection multiset of the family by naive
/// enumeration.
pub fn brute_force_intersections(
    curves: &[CurveRecord],
) -> Result<Vec<BruteIntersection>, BruteError> {
    let mut out: Vec<BruteIntersection> = Vec::new();
    let mut seen_at: BTreeMap<Point, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let a = &curves[i].geometry;
            let b = &curves[j].geometry;
            let mut pts: BTreeSet<Point> = BTreeSet::new();
            for ea in elements_of(a) {
                for eb in elements_of(b) {
                    match element_common_points(&ea, &eb) {
                        Ok(ps) => pts.extend(ps),
                        Err(()) => return Err(BruteError::Overlap(i, j)),
                    }
                }
            }
            for p in &pts {
                let entry = seen_at.entry(p.clone()).or_default();
                entry.insert(i);
                entry.insert(j);
                if entry.len() > 2 {
                    return Err(BruteError::TriplePoint);
                }
                let kind = if a.is_monotone() {
                    match classify_monotone_pair(a, b, p, &pts)
                        .map_err(|e| BruteError::Classification(i, j, e))?
                    {
                        MonotoneBruteLocal::Crossing => BruteKind::Crossing,
                        MonotoneBruteLocal::Touching { first_above } => BruteKind::Touching {
                            upper_or_left: if first_above { i } else { j },
                        },
                    }
                } else {
                    match classify_closed_pair(a, b, p)
                        .map_err(|e| BruteError::Classification(i, j, e))?
                    {
                        ClosedBruteLocal::Crossing => BruteKind::Crossing,
                        ClosedBruteLocal::Touching { b_left_of_a, .. } => BruteKind::Touching {
                            upper_or_left: if b_left_of_a { i } else { j },
                        },
                    }
                };
                out.push(BruteIntersection {
                    point: p.clone(),
                    lo: i,
                    hi: j,
                    kind,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(rat_int(x), rat_int(y))
    }

    fn record(id: usize, geometry: CurveGeometry) -> CurveRecord {
        CurveRecord {
            id: super::super::CurveId(id),
            class: None,
            geometry,
        }
    }

    #[test]
    fn empty_family_has_no_intersections() {
        assert!(brute_force_intersections(&[]).unwrap().is_empty());
    }

    #[test]
    fn crossing_lines() {
        let a = CurveGeometry::bi_infinite(vec![pt(-1, -1), pt(1, 1)], rat_int(1), rat_int(1))
            .unwrap();
        let b = CurveGeometry::bi_infinite(vec![pt(-1, 1), pt(1, -1)], rat_int(-1), rat_int(-1))
            .unwrap();
        let out = brute_force_intersections(&[record(0, a), record(1, b)]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].point, pt(0, 0));
        assert_eq!(out[0].kind, BruteKind::Crossing);
    }

    #[test]
    fn touching_vee_on_line() {
        let line = CurveGeometry::bi_infinite(vec![pt(-5, 0), pt(5, 0)], rat_int(0), rat_int(0))
            .unwrap();
        let vee = CurveGeometry::open_monotone(vec![pt(-1, 1), pt(0, 0), pt(1, 1)]).unwrap();
        let out = brute_force_intersections(&[record(0, line), record(1, vee)]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].kind, BruteKind::Touching { upper_or_left: 1 });
    }

    #[test]
    fn overlap_is_an_error() {
        let a = CurveGeometry::open_monotone(vec![pt(0, 0), pt(2, 0)]).unwrap();
        let b = CurveGeometry::open_monotone(vec![pt(1, 0), pt(3, 0)]).unwrap();
        assert!(matches!(
            brute_force_intersections(&[record(0, a), record(1, b)]),
            Err(BruteError::Overlap(0, 1))
        ));
    }
}

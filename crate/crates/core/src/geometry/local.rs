//! Local classification of an isolated common point of two curves: does the
//! pair properly cross there, or touch one-sidedly?

use super::{curve_pair_intersections, CurveGeometry, Dir, GeometryError, Point};
use crate::rational::{rat_int, sign, Rat};
use num_traits::Zero;

/// Outcome for a pair of x-monotone curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneLocal {
    Crossing,
    /// The indicated curve lies strictly above the other just left and just
    /// right of the common point.
    Touching { upper_is_first: bool },
}

/// Outcome for a pair of closed curves. Sides are relative to each curve's
/// traversal sense in force at classification time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedLocal {
    Crossing,
    Touching {
        second_left_of_first: bool,
        first_left_of_second: bool,
    },
}

/// Classifies an isolated common point `p` of two x-monotone curves by
/// comparing the curves at exact abscissas closer to `p` than any vertex or
/// other intersection of the pair.
pub fn classify_local_monotone(
    a: &CurveGeometry,
    b: &CurveGeometry,
    p: &Point,
) -> Result<MonotoneLocal, GeometryError> {
    let pair = curve_pair_intersections(a, b);
    if pair.overlap.is_some() {
        return Err(GeometryError::DegenerateInput(
            "curves share infinitely many points".into(),
        ));
    }
    let other_xs: Vec<Rat> = pair
        .points
        .iter()
        .filter(|q| q.point != *p)
        .map(|q| q.pos_a.clone())
        .collect();
    classify_local_monotone_at(a, b, &p.x, &other_xs)
}

/// Same as [`classify_local_monotone`] with the pair's other intersection
/// abscissas already known.
pub fn classify_local_monotone_at(
    a: &CurveGeometry,
    b: &CurveGeometry,
    px: &Rat,
    other_intersection_xs: &[Rat],
) -> Result<MonotoneLocal, GeometryError> {
    let probe_left = probe_abscissa(a, b, px, other_intersection_xs, true)?;
    let probe_right = probe_abscissa(a, b, px, other_intersection_xs, false)?;
    let sign_at = |x: &Rat| -> Result<i8, GeometryError> {
        let diff = a.eval_at(x)? - b.eval_at(x)?;
        let s = sign(&diff);
        if s == 0 {
            return Err(GeometryError::DegenerateInput(
                "curves coincide next to the classified point".into(),
            ));
        }
        Ok(s)
    };
    let left = sign_at(&probe_left)?;
    let right = sign_at(&probe_right)?;
    if left == right {
        Ok(MonotoneLocal::Touching {
            upper_is_first: left > 0,
        })
    } else {
        Ok(MonotoneLocal::Crossing)
    }
}

/// Exact abscissa strictly between `px` and the nearest event (vertex of
/// either curve, other pair intersection, or domain end) on the given side.
fn probe_abscissa(
    a: &CurveGeometry,
    b: &CurveGeometry,
    px: &Rat,
    other_xs: &[Rat],
    left: bool,
) -> Result<Rat, GeometryError> {
    let mut nearest: Option<Rat> = None;
    let mut consider = |x: &Rat| {
        let relevant = if left { x < px } else { x > px };
        if !relevant {
            return;
        }
        match &mut nearest {
            Some(best) => {
                if (left && x > best) || (!left && x < best) {
                    *best = x.clone();
                }
            }
            None => nearest = Some(x.clone()),
        }
    };
    for curve in [a, b] {
        for v in curve.vertices() {
            consider(&v.x);
        }
    }
    for x in other_xs {
        consider(x);
    }
    // The probe must stay inside both domains; an open curve's domain ends are
    // vertices, so a missing event means the point sits on a domain boundary.
    for curve in [a, b] {
        if let Some((lo, hi)) = curve.domain() {
            let boundary = if left { lo } else { hi };
            if boundary == px {
                return Err(GeometryError::DegenerateInput(
                    "cannot classify an intersection at a curve endpoint".into(),
                ));
            }
        }
    }
    Ok(match nearest {
        Some(event) => (event + px) / rat_int(2),
        None => {
            if left {
                px - rat_int(1)
            } else {
                px + rat_int(1)
            }
        }
    })
}

/// Classifies an isolated common point of two closed curves from the cyclic
/// order of the four local branches around it.
pub fn classify_local_closed(
    a: &CurveGeometry,
    b: &CurveGeometry,
    p: &Point,
) -> Result<ClosedLocal, GeometryError> {
    let pair = curve_pair_intersections(a, b);
    if pair.overlap.is_some() {
        return Err(GeometryError::DegenerateInput(
            "curves share infinitely many points".into(),
        ));
    }
    let hit = pair
        .points
        .iter()
        .find(|q| q.point == *p)
        .ok_or_else(|| GeometryError::DegenerateInput("point is not on both curves".into()))?;
    classify_local_closed_at(a, b, &hit.pos_a, &hit.pos_b)
}

/// Same as [`classify_local_closed`] with the stored positions of the point
/// on both curves already known.
pub fn classify_local_closed_at(
    a: &CurveGeometry,
    b: &CurveGeometry,
    pos_a: &Rat,
    pos_b: &Rat,
) -> Result<ClosedLocal, GeometryError> {
    let (a_in, a_out) = a.closed_local_dirs(pos_a);
    let (b_in, b_out) = b.closed_local_dirs(pos_b);
    // Branch directions as rays leaving the common point.
    let a1 = a_in.opposite();
    let a2 = a_out.clone();
    let b1 = b_in.opposite();
    let b2 = b_out.clone();
    for (u, v) in [(&a1, &b1), (&a1, &b2), (&a2, &b1), (&a2, &b2)] {
        if u.same_ray(v) {
            return Err(GeometryError::DegenerateInput(
                "coincident branch directions at an intersection".into(),
            ));
        }
    }
    let mut branches = [(&a1, false), (&a2, false), (&b1, true), (&b2, true)];
    branches.sort_by(|(u, _), (v, _)| angular_order(u, v));
    let alternating = branches[0].1 != branches[1].1
        && branches[1].1 != branches[2].1
        && branches[2].1 != branches[3].1;
    if alternating {
        return Ok(ClosedLocal::Crossing);
    }
    let b_left_1 = corner_has_on_left(&a_in, &a_out, &b1);
    let b_left_2 = corner_has_on_left(&a_in, &a_out, &b2);
    debug_assert_eq!(b_left_1, b_left_2, "touching branches straddle the curve");
    let a_left_1 = corner_has_on_left(&b_in, &b_out, &a1);
    let a_left_2 = corner_has_on_left(&b_in, &b_out, &a2);
    debug_assert_eq!(a_left_1, a_left_2, "touching branches straddle the curve");
    Ok(ClosedLocal::Touching {
        second_left_of_first: b_left_1,
        first_left_of_second: a_left_1,
    })
}

/// Whether direction `v` (leaving the corner point) lies strictly on the left
/// of a path that arrives along `d_in` and departs along `d_out`. `v` must not
/// be collinear with either path direction.
pub fn corner_has_on_left(d_in: &Dir, d_out: &Dir, v: &Dir) -> bool {
    let turn = d_in.cross_sign(d_out);
    let left_in = d_in.cross_sign(v) > 0;
    let left_out = d_out.cross_sign(v) > 0;
    if turn > 0 {
        left_in && left_out
    } else if turn < 0 {
        left_in || left_out
    } else {
        left_in
    }
}

/// Cyclic angular order of nonzero directions, anchored at the positive
/// x-axis.
fn angular_order(u: &Dir, v: &Dir) -> std::cmp::Ordering {
    let half = |d: &Dir| -> u8 {
        if sign(&d.dy) > 0 || (d.dy.is_zero() && sign(&d.dx) > 0) {
            0
        } else {
            1
        }
    };
    half(u)
        .cmp(&half(v))
        .then_with(|| 0.cmp(&u.cross_sign(v)))
}

use super::brute::{brute_force_intersections, BruteKind};
use super::*;
use crate::rational::{rat, rat_int};

fn pt(x: i64, y: i64) -> Point {
    Point::new(rat_int(x), rat_int(y))
}

fn record(id: usize, class: Option<CurveClass>, geometry: CurveGeometry) -> CurveRecord {
    CurveRecord {
        id: CurveId(id),
        class,
        geometry,
    }
}

/// Two V-shaped curves in S1 dipping onto one horizontal line in S2: two
/// touchings plus one crossing between the vees.
pub(crate) fn v_instance() -> Vec<CurveRecord> {
    let a = CurveGeometry::open_monotone(vec![pt(-1, 1), pt(0, 0), pt(3, 3)]).unwrap();
    let c = CurveGeometry::open_monotone(vec![pt(1, 3), pt(4, 0), pt(5, 1)]).unwrap();
    let b =
        CurveGeometry::bi_infinite(vec![pt(-3, 0), pt(6, 0)], rat_int(0), rat_int(0)).unwrap();
    vec![
        record(0, Some(CurveClass::S1), a),
        record(1, Some(CurveClass::S1), c),
        record(2, Some(CurveClass::S2), b),
    ]
}

fn multiset_of(arr: &Arrangement) -> Vec<(Point, usize, usize, BruteKind)> {
    let mut v: Vec<_> = arr
        .points
        .iter()
        .map(|p| {
            let kind = match p.kind {
                PointKind::Crossing => BruteKind::Crossing,
                PointKind::Touching { upper_or_left } => BruteKind::Touching {
                    upper_or_left: upper_or_left.0,
                },
            };
            (p.point.clone(), p.curve_lo.0, p.curve_hi.0, kind)
        })
        .collect();
    v.sort();
    v
}

pub(crate) fn assert_matches_brute(curves: &[CurveRecord]) -> Arrangement {
    let arr = build_arrangement(curves.to_vec()).expect("arrangement builds");
    let brute = brute_force_intersections(curves).expect("brute force succeeds");
    let brute: Vec<_> = brute
        .into_iter()
        .map(|b| (b.point, b.lo, b.hi, b.kind))
        .collect();
    assert_eq!(multiset_of(&arr), brute, "oracle disagreement");
    arr
}

#[test]
fn v_instance_structure() {
    let arr = assert_matches_brute(&v_instance());
    assert_eq!(arr.touchings.len(), 2);
    assert_eq!(arr.x1.len(), 1);
    assert_eq!(arr.x2.len(), 0);
    assert_eq!(arr.x_cross.len(), 0);
    let t_points: Vec<&Point> = arr.touchings.iter().map(|&t| &arr.point(t).point).collect();
    assert!(t_points.contains(&&pt(0, 0)));
    assert!(t_points.contains(&&pt(4, 0)));
    assert_eq!(arr.point(arr.x1[0]).point, pt(2, 2));
    // Touchings classified with the vee (S1) above.
    for &t in &arr.touchings {
        let p = arr.point(t);
        let PointKind::Touching { upper_or_left } = p.kind else {
            panic!("not a touching")
        };
        assert_eq!(arr.class_of(upper_or_left), Some(CurveClass::S1));
    }
    // Stats: the smaller class has one curve, so t_eff = 2.
    assert_eq!(arr.stats.n, 1);
    assert_eq!(arr.stats.t_eff, rat_int(2));
}

#[test]
fn single_curve_is_empty() {
    let curve = CurveGeometry::open_monotone(vec![pt(0, 0), pt(1, 1)]).unwrap();
    let arr = build_arrangement(vec![record(0, None, curve)]).unwrap();
    assert!(arr.points.is_empty());
    assert!(arr.touchings.is_empty());
}

#[test]
fn two_crossing_lines() {
    let a = CurveGeometry::bi_infinite(vec![pt(-1, -1), pt(1, 1)], rat_int(1), rat_int(1))
        .unwrap();
    let b = CurveGeometry::bi_infinite(vec![pt(-1, 1), pt(1, -1)], rat_int(-1), rat_int(-1))
        .unwrap();
    let arr = assert_matches_brute(&[record(0, None, a), record(1, None, b)]);
    assert!(arr.touchings.is_empty());
    assert_eq!(arr.points.len(), 1);
    assert_eq!(arr.points[0].point, pt(0, 0));
    assert!(!arr.points[0].kind.is_touching());
}

#[test]
fn count_between_and_next_crossing() {
    let arr = build_arrangement(v_instance()).unwrap();
    let a = CurveId(0);
    // No touchings strictly between the touching at x=0 and the crossing at x=2.
    assert_eq!(
        arr.count_between_monotone(a, &rat_int(0), &rat_int(2), CountKind::Touchings),
        0
    );
    // Empty interval.
    assert_eq!(
        arr.count_between_monotone(a, &rat_int(1), &rat_int(1), CountKind::Touchings),
        0
    );
    // Everything on a: touching at 0, crossing at 2.
    assert_eq!(
        arr.count_between_monotone(a, &rat(-1, 2), &rat_int(3), CountKind::Crossings),
        1
    );
    // Next crossing of the pair after the single crossing: none.
    assert_eq!(
        arr.next_crossing_of_pair(CurveId(0), CurveId(1), &pt(2, 2), NextCrossingMode::XOrder),
        None
    );
    // From left of the crossing, it is found.
    let q = arr
        .next_crossing_of_pair(CurveId(0), CurveId(1), &pt(0, 0), NextCrossingMode::XOrder)
        .unwrap();
    assert_eq!(arr.point(q).point, pt(2, 2));
}

#[test]
fn validator_finds_triple_point() {
    let mk = |s: i64| {
        CurveGeometry::bi_infinite(
            vec![Point::new(rat_int(-1), rat_int(-s)), Point::new(rat_int(1), rat_int(s))],
            rat_int(s),
            rat_int(s),
        )
        .unwrap()
    };
    let curves = vec![
        record(0, None, mk(0)),
        record(1, None, mk(1)),
        record(2, None, mk(-1)),
    ];
    let report = validate_general_position(&curves).unwrap();
    assert!(!report.ok);
    assert!(report
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::TriplePoint));
    assert!(build_arrangement(curves).is_err());
}

#[test]
fn validator_finds_overlap() {
    let a = CurveGeometry::open_monotone(vec![pt(0, 0), pt(2, 1), pt(4, 0)]).unwrap();
    let curves = vec![record(0, None, a.clone()), record(1, None, a)];
    let report = validate_general_position(&curves).unwrap();
    assert!(!report.ok);
    assert!(report
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::InfiniteOverlap));
}

#[test]
fn validator_accepts_v_instance() {
    let report = validate_general_position(&v_instance()).unwrap();
    assert!(report.ok, "{report}");
}

/// Square with a triangle poking it from below: one touching, no crossings.
pub(crate) fn touching_square_triangle() -> Vec<CurveRecord> {
    let square =
        CurveGeometry::closed(vec![pt(-2, 0), pt(2, 0), pt(2, 4), pt(-2, 4)], None).unwrap();
    let tri = CurveGeometry::closed(vec![pt(0, 0), pt(-1, -2), pt(1, -2)], None).unwrap();
    vec![
        record(0, Some(CurveClass::S1), square),
        record(1, Some(CurveClass::S2), tri),
    ]
}

#[test]
fn closed_touching_pair_orients() {
    let arr = assert_matches_brute(&touching_square_triangle());
    assert_eq!(arr.touchings.len(), 1);
    assert!(arr.x1.is_empty() && arr.x2.is_empty() && arr.x_cross.is_empty());
    let oriented = arr.oriented().unwrap();
    for &t in &oriented.touchings {
        let p = oriented.point(t);
        assert_eq!(p.closed_sides, Some((true, true)), "partner on the left");
    }
}

#[test]
fn zero_touch_closed_curve_defaults_ccw() {
    let tri = CurveGeometry::closed(vec![pt(0, 0), pt(2, 0), pt(1, 2)], None).unwrap();
    let arr = build_arrangement(vec![record(0, None, tri)]).unwrap();
    let assignment = arr.orient_closed_family().unwrap();
    assert_eq!(assignment, vec![(CurveId(0), Orientation::Ccw)]);
}

#[test]
fn two_sided_touching_is_inconsistent() {
    let mut curves = touching_square_triangle();
    // A second triangle inside the square touching the same bottom edge from
    // above; it does not intersect the outer triangle, violating the
    // pairwise-intersecting hypothesis, and forces touchings on both sides of
    // the square.
    let inner = CurveGeometry::closed(
        vec![
            Point::new(rat_int(1), rat_int(0)),
            Point::new(rat(3, 2), rat_int(1)),
            Point::new(rat(1, 2), rat_int(1)),
        ],
        None,
    )
    .unwrap();
    curves.push(record(2, Some(CurveClass::S2), inner));
    let arr = build_arrangement(curves).unwrap();
    assert!(matches!(
        arr.orient_closed_family(),
        Err(ArrangementError::TwoSidedTouching {
            curve: CurveId(0)
        })
    ));
}

#[test]
fn closed_arc_counts_and_partition_identity() {
    // A square crossed by two triangles, giving several points on the square.
    let square = CurveGeometry::closed(
        vec![pt(-4, 0), pt(4, 0), pt(4, 8), pt(-4, 8)],
        Some(Orientation::Ccw),
    )
    .unwrap();
    let t1 = CurveGeometry::closed(
        vec![pt(-3, -1), pt(-1, -1), pt(-2, 2)],
        Some(Orientation::Ccw),
    )
    .unwrap();
    let t2 = CurveGeometry::closed(
        vec![pt(1, -1), pt(3, -1), pt(2, 2)],
        Some(Orientation::Ccw),
    )
    .unwrap();
    let arr = assert_matches_brute(&[
        record(0, None, square),
        record(1, None, t1),
        record(2, None, t2),
    ]);
    let square_id = CurveId(0);
    let seq = arr.seq(square_id);
    assert_eq!(seq.len(), 4, "each triangle crosses the bottom edge twice");
    let total = seq.len();
    let p = seq.entries[0].point;
    let q = seq.entries[2].point;
    let fwd = arr
        .count_on_arc_closed(square_id, p, q, CountKind::Crossings)
        .unwrap();
    let back = arr
        .count_on_arc_closed(square_id, q, p, CountKind::Crossings)
        .unwrap();
    assert_eq!(fwd + back + 2, total);
    // Whole-circle arc: everything but the point itself.
    let full = arr
        .count_on_arc_closed(square_id, p, p, CountKind::Crossings)
        .unwrap();
    assert_eq!(full, total - 1);
}

#[test]
fn along_curve_next_crossing_wraps() {
    // Two long rectangles crossing in four points.
    let horiz = CurveGeometry::closed(
        vec![pt(-6, -1), pt(6, -1), pt(6, 1), pt(-6, 1)],
        Some(Orientation::Ccw),
    )
    .unwrap();
    let vert = CurveGeometry::closed(
        vec![pt(-1, -6), pt(1, -6), pt(1, 6), pt(-1, 6)],
        Some(Orientation::Ccw),
    )
    .unwrap();
    let arr = assert_matches_brute(&[record(0, None, horiz), record(1, None, vert)]);
    assert_eq!(arr.points.len(), 4);
    let d = CurveId(1);
    let start = arr.point(arr.seq(d).entries[0].point).point.clone();
    let mut seen = vec![start.clone()];
    let mut cursor = start.clone();
    for _ in 0..4 {
        let next = arr
            .next_crossing_of_pair(CurveId(0), CurveId(1), &cursor, NextCrossingMode::AlongCurve(d))
            .unwrap();
        cursor = arr.point(next).point.clone();
        seen.push(cursor.clone());
    }
    // After four steps we are back at the start (cyclic traversal).
    assert_eq!(seen[0], seen[4]);
    assert_eq!(
        seen[1..4].iter().collect::<std::collections::BTreeSet<_>>().len(),
        3
    );
}

#[test]
fn mixed_family_is_rejected() {
    let open = CurveGeometry::open_monotone(vec![pt(0, 0), pt(1, 1)]).unwrap();
    let tri = CurveGeometry::closed(vec![pt(0, 0), pt(2, 0), pt(1, 2)], None).unwrap();
    assert!(matches!(
        build_arrangement(vec![record(0, None, open), record(1, None, tri)]),
        Err(ArrangementError::MixedFamily)
    ));
}

#[test]
fn complete_bipartite_detection() {
    let arr = build_arrangement(touching_square_triangle()).unwrap();
    assert!(arr.is_complete_bipartite_touching());
    let arr = build_arrangement(v_instance()).unwrap();
    assert!(arr.is_complete_bipartite_touching());
}

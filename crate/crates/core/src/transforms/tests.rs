use super::*;
use crate::rational::rat;

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

fn rotations_equal(a: &[Point], b: &[Point]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    (0..a.len()).any(|shift| (0..a.len()).all(|i| a[(i + shift) % a.len()] == b[i]))
}

#[test]
fn triangle_decomposes_into_two_pieces() {
    let tri = CurveGeometry::closed(vec![pt(0, 0), pt(2, 1), pt(1, 3)], None).unwrap();
    let dec = decompose_closed(&tri, CurveId(0)).unwrap();
    assert_eq!(dec.pieces.len(), 2);
    assert_eq!(dec.cut_count, 2);
    assert!(rotations_equal(&reassemble(&dec), tri.vertices()));
}

#[test]
fn hexagon_decomposes_into_two_pieces() {
    let hex = CurveGeometry::closed(
        vec![pt(0, 0), pt(4, -1), pt(8, 0), pt(9, 3), pt(5, 5), pt(1, 4)],
        None,
    )
    .unwrap();
    let dec = decompose_closed(&hex, CurveId(0)).unwrap();
    assert_eq!(dec.pieces.len(), 2);
    assert!(rotations_equal(&reassemble(&dec), hex.vertices()));
    for piece in &dec.pieces {
        assert!(piece.curve.vertices().len() >= 2);
    }
}

#[test]
fn sawtooth_polygon_decomposes_at_every_extremum() {
    let saw = CurveGeometry::closed(
        vec![
            pt(0, 0),
            pt(10, 1),
            pt(6, 2),
            pt(9, 3),
            pt(5, 4),
            pt(8, 5),
            pt(-1, 6),
        ],
        None,
    )
    .unwrap();
    let dec = decompose_closed(&saw, CurveId(0)).unwrap();
    assert_eq!(dec.pieces.len(), 6);
    assert_eq!(dec.cut_count, 6);
    assert!(rotations_equal(&reassemble(&dec), saw.vertices()));
}

#[test]
fn vertical_edge_is_rejected() {
    let sq = CurveGeometry::closed(vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)], None).unwrap();
    assert!(matches!(
        decompose_closed(&sq, CurveId(0)),
        Err(TransformError::VerticalEdge)
    ));
    // A shear resolves it.
    let sheared = shear_family(&[record(0, None, sq)], None);
    let dec = decompose_closed(&sheared.curves[0].geometry, CurveId(0)).unwrap();
    assert_eq!(dec.pieces.len(), 2);
}

#[test]
fn extension_is_identity_on_biinfinite_families() {
    let line =
        CurveGeometry::bi_infinite(vec![pt(0, 0), pt(1, 0)], rat_int(0), rat_int(0)).unwrap();
    let fam = vec![record(0, Some(CurveClass::S2), line.clone())];
    let ext = extend_biinfinite(&fam).unwrap();
    assert_eq!(ext.curves[0].geometry, line);
}

fn crossing_points(arr: &crate::arrangement::Arrangement) -> Vec<Point> {
    let mut v: Vec<Point> = arr
        .points
        .iter()
        .filter(|p| !p.kind.is_touching())
        .map(|p| p.point.clone())
        .collect();
    v.sort();
    v
}

fn touching_points(arr: &crate::arrangement::Arrangement) -> Vec<Point> {
    let mut v: Vec<Point> = arr
        .touchings
        .iter()
        .map(|&t| arr.point(t).point.clone())
        .collect();
    v.sort();
    v
}

#[test]
fn extension_preserves_touchings_on_vee_instance() {
    let a = CurveGeometry::open_monotone(vec![pt(-1, 1), pt(0, 0), pt(3, 3)]).unwrap();
    let c = CurveGeometry::open_monotone(vec![pt(1, 3), pt(4, 0), pt(5, 1)]).unwrap();
    let b =
        CurveGeometry::bi_infinite(vec![pt(-3, 0), pt(6, 0)], rat_int(0), rat_int(0)).unwrap();
    let fam = vec![
        record(0, Some(CurveClass::S1), a),
        record(1, Some(CurveClass::S1), c),
        record(2, Some(CurveClass::S2), b),
    ];
    let before = build_arrangement(fam.clone()).unwrap();
    let ext = extend_biinfinite(&fam).unwrap();
    assert_eq!(ext.z, rat_int(2));
    let after = build_arrangement(ext.curves).unwrap();
    assert_eq!(touching_points(&before), touching_points(&after));
    let xb = crossing_points(&before);
    let xa = crossing_points(&after);
    // Old crossings survive; anything new involves a ray.
    for p in &xb {
        assert!(xa.contains(p));
    }
    let pairs = 3;
    assert!(xa.len() - xb.len() <= 2 * pairs);
}

#[test]
fn extension_adds_exactly_two_crossings_for_a_staggered_pair() {
    let short = CurveGeometry::open_monotone(vec![pt(0, 0), pt(2, 1), pt(4, 0)]).unwrap();
    let long = CurveGeometry::open_monotone(vec![pt(-15, 9), pt(3, 10), pt(20, 9)]).unwrap();
    let fam = vec![
        record(0, Some(CurveClass::S1), short),
        record(1, Some(CurveClass::S1), long),
    ];
    let before = build_arrangement(fam.clone()).unwrap();
    assert_eq!(before.points.len(), 0);
    let ext = extend_biinfinite(&fam).unwrap();
    let after = build_arrangement(ext.curves).unwrap();
    assert_eq!(after.points.len(), 2, "one new crossing per side");
    assert!(after.touchings.is_empty());
}

#[test]
fn normalization_is_identity_when_all_touchings_are_good() {
    let a = CurveGeometry::open_monotone(vec![pt(-1, 1), pt(0, 0), pt(3, 3)]).unwrap();
    let c = CurveGeometry::open_monotone(vec![pt(1, 3), pt(4, 0), pt(5, 1)]).unwrap();
    let b =
        CurveGeometry::bi_infinite(vec![pt(-3, 0), pt(6, 0)], rat_int(0), rat_int(0)).unwrap();
    let fam = vec![
        record(0, Some(CurveClass::S1), a),
        record(1, Some(CurveClass::S1), c),
        record(2, Some(CurveClass::S2), b),
    ];
    let result = normalize_one_sided(&fam).unwrap();
    assert!(!result.swapped);
    assert_eq!(result.removed_touchings, 0);
    assert_eq!(result.retained_touchings, 2);
    for (orig, out) in fam.iter().zip(&result.curves) {
        assert_eq!(orig.geometry, out.geometry);
    }
}

/// Eight horizontal lines with zigzags confined to disjoint bands: three
/// vees touching their line from above, five wedges touching theirs from
/// below.
fn banded_family() -> Vec<CurveRecord> {
    let mut curves = Vec::new();
    let line = |j: i64| {
        CurveGeometry::bi_infinite(
            vec![pt(-100, 10 * j), pt(100, 10 * j)],
            rat_int(0),
            rat_int(0),
        )
        .unwrap()
    };
    let over_v = |j: i64| {
        let c = 3 * j;
        CurveGeometry::bi_infinite(
            vec![
                pt(c - 1, 10 * j + 1),
                pt(c, 10 * j),
                pt(c + 1, 10 * j + 1),
            ],
            rat_int(-1),
            rat_int(1),
        )
        .unwrap()
    };
    let under_wedge = |j: i64| {
        let c = 3 * j;
        CurveGeometry::bi_infinite(
            vec![
                pt(c - 1, 10 * j - 1),
                pt(c, 10 * j),
                pt(c + 1, 10 * j - 1),
            ],
            rat_int(1),
            rat_int(-1),
        )
        .unwrap()
    };
    for j in 0..8 {
        curves.push(record(j as usize, Some(CurveClass::S2), line(j)));
    }
    for j in 0..3 {
        curves.push(record(8 + j as usize, Some(CurveClass::S1), over_v(j)));
    }
    for j in 3..8 {
        curves.push(record(8 + j as usize, Some(CurveClass::S1), under_wedge(j)));
    }
    curves
}

#[test]
fn normalization_swaps_and_lifts_the_minority_side() {
    let fam = banded_family();
    let before = build_arrangement(fam.clone()).unwrap();
    assert_eq!(before.touchings.len(), 8);
    let result = normalize_one_sided(&fam).unwrap();
    assert!(result.swapped, "five below beats three above");
    assert_eq!(result.retained_touchings, 5);
    assert_eq!(result.removed_touchings, 3);
    let after = build_arrangement(result.curves.clone()).unwrap();
    // Crossing multiset exactly preserved.
    assert_eq!(crossing_points(&before), crossing_points(&after));
    // Every survivor has its S1 curve above.
    for &t in &after.touchings {
        let p = after.point(t);
        let crate::arrangement::PointKind::Touching { upper_or_left } = p.kind else {
            unreachable!()
        };
        assert_eq!(after.class_of(upper_or_left), Some(CurveClass::S1));
    }
    assert!(after.touchings.len() >= before.touchings.len().div_ceil(2));
}

#[test]
fn bipartition_is_deterministic_and_separates_touching_pairs() {
    let v = CurveGeometry::open_monotone(vec![pt(-1, 1), pt(0, 0), pt(1, 1)]).unwrap();
    let line =
        CurveGeometry::bi_infinite(vec![pt(-3, 0), pt(3, 0)], rat_int(0), rat_int(0)).unwrap();
    let fam = vec![record(0, None, v), record(1, None, line)];
    let r1 = random_bipartition(&fam, 7).unwrap();
    let r2 = random_bipartition(&fam, 7).unwrap();
    assert_eq!(r1.cross_touchings, 1);
    let classes1: Vec<_> = r1.curves.iter().map(|c| c.class).collect();
    let classes2: Vec<_> = r2.curves.iter().map(|c| c.class).collect();
    assert_eq!(classes1, classes2, "same seed gives the same partition");
    let s1 = classes1
        .iter()
        .filter(|c| **c == Some(CurveClass::S1))
        .count();
    assert_eq!(s1, 1);
}

#[test]
fn bipartition_needs_two_curves() {
    let v = CurveGeometry::open_monotone(vec![pt(-1, 1), pt(0, 0), pt(1, 1)]).unwrap();
    assert!(matches!(
        random_bipartition(&[record(0, None, v)], 1),
        Err(TransformError::TooFewCurves)
    ));
}

#[test]
fn separate_pieces_yields_disjoint_valid_family() {
    let hex = CurveGeometry::closed(
        vec![pt(0, 0), pt(4, -1), pt(8, 0), pt(9, 3), pt(5, 5), pt(1, 4)],
        None,
    )
    .unwrap();
    let hex2 = CurveGeometry::closed(
        vec![pt(2, -3), pt(7, -4), pt(11, -2), pt(10, 2), pt(6, 3), pt(3, 1)],
        None,
    )
    .unwrap();
    let fam = vec![record(0, None, hex), record(1, None, hex2)];
    let arr = build_arrangement(fam.clone()).unwrap();
    assert!(!arr.points.is_empty(), "the hexagons overlap");
    let decs: Vec<_> = fam
        .iter()
        .map(|c| decompose_closed(&c.geometry, c.id).unwrap())
        .collect();
    let pieces = separate_pieces(&decs, &arr);
    assert_eq!(pieces.len(), 4);
    let piece_arr = build_arrangement(pieces).unwrap();
    // Same number of intersection points: nothing lost in the trim.
    assert_eq!(piece_arr.points.len(), arr.points.len());
}

#[test]
fn shear_epsilon_is_small_enough() {
    let sq = CurveGeometry::closed(vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)], None).unwrap();
    let tall = CurveGeometry::closed(
        vec![pt(10, 0), pt(11, 0), pt(11, 100), pt(10, 100)],
        None,
    )
    .unwrap();
    let sheared = shear_family(&[record(0, None, sq), record(1, None, tall)], None);
    assert!(sheared.epsilon > rat(0, 1));
    for c in &sheared.curves {
        assert!(decompose_closed(&c.geometry, c.id).is_ok());
    }
}

//! On-disk formats: version-1 curve files and audit report files.
//!
//! Every coordinate is serialized as an exact rational string (`"p"` or
//! `"p/q"`), so files round-trip bit-exactly and diff cleanly. Serialization
//! is canonical: loading a file this module wrote and writing it again
//! reproduces the bytes.

use crate::arrangement::{CurveClass, CurveId, CurveRecord};
use crate::geometry::{CurveGeometry, GeometryError, Orientation, Point};
use crate::rational::{format_rat, parse_rat, Rat};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub fn serialize_rat<S: Serializer>(value: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rat(value))
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported file version {0} (expected 1)")]
    Version(u32),
    #[error("curve {index}: {message}")]
    Curve { index: usize, message: String },
    #[error(transparent)]
    Rational(#[from] crate::rational::RatParseError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

// ---------------------------------------------------------------------------
// curve files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFileV1 {
    pub version: u32,
    pub curves: Vec<CurveEntryV1>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveEntryV1 {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<CurveClass>,
    pub kind: CurveKindV1,
    /// Vertex list; each coordinate an exact rational string.
    pub vertices: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_ray_slope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_ray_slope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKindV1 {
    Open,
    Biinfinite,
    Closed,
}

pub fn to_curve_file(curves: &[CurveRecord]) -> CurveFileV1 {
    let entries = curves
        .iter()
        .map(|record| {
            let vertices = record
                .geometry
                .vertices()
                .iter()
                .map(|p| [format_rat(&p.x), format_rat(&p.y)])
                .collect();
            let (kind, left, right, orientation) = match &record.geometry {
                CurveGeometry::OpenMonotone { .. } => (CurveKindV1::Open, None, None, None),
                CurveGeometry::BiInfiniteMonotone {
                    left_ray_slope,
                    right_ray_slope,
                    ..
                } => (
                    CurveKindV1::Biinfinite,
                    Some(format_rat(left_ray_slope)),
                    Some(format_rat(right_ray_slope)),
                    None,
                ),
                CurveGeometry::Closed { orientation, .. } => {
                    (CurveKindV1::Closed, None, None, *orientation)
                }
            };
            CurveEntryV1 {
                id: record.id.0,
                class: record.class,
                kind,
                vertices,
                left_ray_slope: left,
                right_ray_slope: right,
                orientation,
            }
        })
        .collect();
    CurveFileV1 {
        version: 1,
        curves: entries,
    }
}

pub fn from_curve_file(file: &CurveFileV1) -> Result<Vec<CurveRecord>, FileError> {
    if file.version != 1 {
        return Err(FileError::Version(file.version));
    }
    let mut out = Vec::with_capacity(file.curves.len());
    for (index, entry) in file.curves.iter().enumerate() {
        let fail = |message: &str| FileError::Curve {
            index,
            message: message.to_string(),
        };
        let mut vertices = Vec::with_capacity(entry.vertices.len());
        for [x, y] in &entry.vertices {
            vertices.push(Point::new(parse_rat(x)?, parse_rat(y)?));
        }
        let geometry = match entry.kind {
            CurveKindV1::Open => CurveGeometry::open_monotone(vertices)?,
            CurveKindV1::Biinfinite => {
                let left = entry
                    .left_ray_slope
                    .as_deref()
                    .ok_or_else(|| fail("missing left_ray_slope"))?;
                let right = entry
                    .right_ray_slope
                    .as_deref()
                    .ok_or_else(|| fail("missing right_ray_slope"))?;
                CurveGeometry::bi_infinite(vertices, parse_rat(left)?, parse_rat(right)?)?
            }
            CurveKindV1::Closed => CurveGeometry::closed(vertices, entry.orientation)?,
        };
        out.push(CurveRecord {
            id: CurveId(entry.id),
            class: entry.class,
            geometry,
        });
    }
    Ok(out)
}

/// Canonical JSON bytes: pretty-printed with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<Vec<u8>, FileError> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn save_curves(path: &std::path::Path, curves: &[CurveRecord]) -> Result<(), FileError> {
    let file = to_curve_file(curves);
    std::fs::write(path, to_canonical_json(&file)?)?;
    Ok(())
}

pub fn load_curves(path: &std::path::Path) -> Result<Vec<CurveRecord>, FileError> {
    let bytes = std::fs::read(path)?;
    let file: CurveFileV1 = serde_json::from_slice(&bytes)?;
    from_curve_file(&file)
}

// ---------------------------------------------------------------------------
// report files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportFileV1 {
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub stats: ReportStatsV1,
    pub audits: Vec<AuditRowV1>,
    pub summary: ReportSummaryV1,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportStatsV1 {
    pub curves: usize,
    pub n: usize,
    pub t_eff: String,
    pub touchings: usize,
    pub x1: usize,
    pub x2: usize,
    pub x_cross: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditRowV1 {
    pub audit: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub computed: String,
    pub bound: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportSummaryV1 {
    pub rows: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub vacuous: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_weight: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Flattens the audit rows to CSV.
pub fn report_to_csv(report: &ReportFileV1) -> String {
    let mut out = String::from("audit,vertex,level,family,computed,bound,status,detail\n");
    for row in &report.audits {
        let field = |v: &Option<String>| v.clone().unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.audit,
            row.vertex.map(|v| v.to_string()).unwrap_or_default(),
            row.level.map(|v| v.to_string()).unwrap_or_default(),
            field(&row.family),
            row.computed,
            row.bound,
            row.status,
            field(&row.detail),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn pt(x: i64, y: i64) -> Point {
        Point::new(rat_int(x), rat_int(y))
    }

    #[test]
    fn curve_file_round_trips_exactly() {
        let curves = vec![
            CurveRecord {
                id: CurveId(0),
                class: Some(CurveClass::S1),
                geometry: CurveGeometry::open_monotone(vec![
                    Point::new(rat(-1, 3), rat(2, 7)),
                    pt(1, 1),
                ])
                .unwrap(),
            },
            CurveRecord {
                id: CurveId(1),
                class: None,
                geometry: CurveGeometry::bi_infinite(
                    vec![pt(0, 0), pt(1, 0)],
                    rat(5, 2),
                    rat_int(-3),
                )
                .unwrap(),
            },
            CurveRecord {
                id: CurveId(2),
                class: Some(CurveClass::S2),
                geometry: CurveGeometry::closed(
                    vec![pt(0, 0), pt(2, 1), pt(1, 3)],
                    Some(Orientation::Cw),
                )
                .unwrap(),
            },
        ];
        let file = to_curve_file(&curves);
        let bytes = to_canonical_json(&file).unwrap();
        let parsed: CurveFileV1 = serde_json::from_slice(&bytes).unwrap();
        let restored = from_curve_file(&parsed).unwrap();
        for (a, b) in curves.iter().zip(&restored) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.class, b.class);
            assert_eq!(a.geometry, b.geometry);
        }
        // Canonical serialization is a fixed point.
        let bytes2 = to_canonical_json(&to_curve_file(&restored)).unwrap();
        assert_eq!(bytes, bytes2);
    }

    #[test]
    fn version_is_checked() {
        let file = CurveFileV1 {
            version: 2,
            curves: vec![],
        };
        assert!(matches!(
            from_curve_file(&file),
            Err(FileError::Version(2))
        ));
    }

    #[test]
    fn csv_has_one_line_per_row() {
        let report = ReportFileV1 {
            version: 1,
            scheme: Some("monotone".into()),
            alpha: Some("2".into()),
            stats: ReportStatsV1 {
                curves: 2,
                n: 1,
                t_eff: "1".into(),
                touchings: 1,
                x1: 0,
                x2: 0,
                x_cross: 0,
            },
            audits: vec![AuditRowV1 {
                audit: "upper_family_count".into(),
                vertex: Some(3),
                level: Some(2),
                family: Some("A".into()),
                computed: "1".into(),
                bound: "4".into(),
                status: "pass".into(),
                detail: None,
            }],
            summary: ReportSummaryV1 {
                rows: 1,
                pass: 1,
                fail: 0,
                skipped: 0,
                vacuous: 0,
                total_weight: None,
                notes: vec![],
            },
        };
        let csv = report_to_csv(&report);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.contains("upper_family_count,3,2,A,1,4,pass,"));
    }
}

//! Versioned JSON schemas for families and weighted point sets, with
//! exact rationals carried as "num/den" strings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{Family, FamilyError};
use crate::geometry::{rat_from_string, rat_to_string, ConvexPolygon, Point2, RatParseError};
use crate::instances::GenSpec;
use crate::pierce::{PierceError, WeightedPoints};

pub const FAMILY_VERSION: &str = "pqfam/1";
pub const POINTS_VERSION: &str = "pqpts/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("unsupported file version `{found}` (expected {expected})")]
    Version { found: String, expected: &'static str },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("body {body}, vertex {vertex}: {source}")]
    BadCoordinate {
        body: usize,
        vertex: usize,
        source: RatParseError,
    },
    #[error("point {index}: {source}")]
    BadPoint {
        index: usize,
        source: RatParseError,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Points(#[from] PierceError),
}

/// On-disk family: a version tag, bodies as vertex arrays of
/// ["x_num/x_den", "y_num/y_den"] pairs, and optional generator metadata.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyFile {
    pub version: String,
    pub bodies: Vec<Vec<[String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<FamilyMetadata>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GenSpec>,
}

impl FamilyFile {
    pub fn from_family(family: &Family, generator: Option<GenSpec>) -> Self {
        let bodies = family
            .bodies()
            .iter()
            .map(|b| {
                b.shape
                    .vertices()
                    .iter()
                    .map(|v| [rat_to_string(&v.x), rat_to_string(&v.y)])
                    .collect()
            })
            .collect();
        FamilyFile {
            version: FAMILY_VERSION.to_string(),
            bodies,
            metadata: generator.map(|g| FamilyMetadata { generator: Some(g) }),
        }
    }

    pub fn to_family(&self) -> Result<Family, FormatError> {
        if self.version != FAMILY_VERSION {
            return Err(FormatError::Version {
                found: self.version.clone(),
                expected: FAMILY_VERSION,
            });
        }
        let mut shapes = Vec::with_capacity(self.bodies.len());
        for (bi, verts) in self.bodies.iter().enumerate() {
            let mut pts = Vec::with_capacity(verts.len());
            for (vi, [xs, ys]) in verts.iter().enumerate() {
                let x = rat_from_string(xs).map_err(|source| FormatError::BadCoordinate {
                    body: bi,
                    vertex: vi,
                    source,
                })?;
                let y = rat_from_string(ys).map_err(|source| FormatError::BadCoordinate {
                    body: bi,
                    vertex: vi,
                    source,
                })?;
                pts.push(Point2::new(x, y));
            }
            shapes.push(ConvexPolygon::from_points(&pts).map_err(FamilyError::from)?);
        }
        Ok(Family::new(shapes)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema is serializable")
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// On-disk weighted point multiset: entries are
/// ["x_num/x_den", "y_num/y_den", "w_num/w_den"].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PointsFile {
    pub version: String,
    pub points: Vec<[String; 3]>,
}

impl PointsFile {
    pub fn from_points(points: &WeightedPoints) -> Self {
        PointsFile {
            version: POINTS_VERSION.to_string(),
            points: points
                .entries()
                .iter()
                .map(|(p, w)| [rat_to_string(&p.x), rat_to_string(&p.y), rat_to_string(w)])
                .collect(),
        }
    }

    pub fn to_points(&self) -> Result<WeightedPoints, FormatError> {
        if self.version != POINTS_VERSION {
            return Err(FormatError::Version {
                found: self.version.clone(),
                expected: POINTS_VERSION,
            });
        }
        let mut entries = Vec::with_capacity(self.points.len());
        for (i, [xs, ys, ws]) in self.points.iter().enumerate() {
            let parse = |s: &str| {
                rat_from_string(s).map_err(|source| FormatError::BadPoint { index: i, source })
            };
            entries.push((Point2::new(parse(xs)?, parse(ys)?), parse(ws)?));
        }
        Ok(WeightedPoints::new(entries)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema is serializable")
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;
    use crate::instances::{gen_family, gen_points};

    #[test]
    fn family_round_trip_is_identity() {
        let spec = GenSpec::CrossingSegments { n: 5, seed: 3 };
        let fam = gen_family(&spec).unwrap();
        let file = FamilyFile::from_family(&fam, Some(spec));
        let text = file.to_json();
        let reparsed = FamilyFile::parse(&text).unwrap();
        assert_eq!(reparsed, file);
        let fam2 = reparsed.to_family().unwrap();
        assert_eq!(fam.bodies(), fam2.bodies());
    }

    #[test]
    fn points_round_trip_is_identity() {
        let pts = gen_points(&GenSpec::GridPoints {
            side: 4,
            support: 7,
            max_weight: 3,
            seed: 2,
        })
        .unwrap();
        let file = PointsFile::from_points(&pts);
        let back = PointsFile::parse(&file.to_json()).unwrap().to_points().unwrap();
        assert_eq!(back, pts);
    }

    #[test]
    fn version_and_coordinate_errors() {
        let bad = FamilyFile {
            version: "pqfam/99".into(),
            bodies: vec![],
            metadata: None,
        };
        assert!(matches!(bad.to_family(), Err(FormatError::Version { .. })));

        let bad = FamilyFile {
            version: FAMILY_VERSION.into(),
            bodies: vec![vec![["1/0".into(), "0/1".into()]]],
            metadata: None,
        };
        assert!(matches!(
            bad.to_family(),
            Err(FormatError::BadCoordinate { body: 0, vertex: 0, .. })
        ));

        assert!(FamilyFile::parse("{not json").is_err());
        let _ = rat(0);
    }
}

//! Instance and result files: JSON documents with exact rational
//! coordinates serialized as strings.

use anchoredpack::geom::{AnchoredPacking, Point, PointSet, Rect, StaircasePolygon};
use anchoredpack::scalar::{approx, Scalar};
use anchoredpack::tiling::Tiling;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

use crate::Failure;

/// A point set on disk, with an optional processing order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceFile {
    pub points: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RectEntry {
    pub anchor: [String; 2],
    pub lo: [String; 2],
    pub hi: [String; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TileEntry {
    pub anchor: [String; 2],
    pub steps: Vec<[String; 2]>,
}

/// A packing on disk: one rectangle per instance point, in point order,
/// with the staircase tiles included for tile packings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultFile {
    pub algorithm: String,
    pub coverage: String,
    pub coverage_float: f64,
    pub rects: Vec<RectEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiles: Option<Vec<TileEntry>>,
}

/// Parses `"p/q"` or a plain decimal string into an exact rational.
pub fn parse_scalar(s: &str) -> Result<Scalar, Failure> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| Failure(format!("bad rational numerator in {s:?}")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| Failure(format!("bad rational denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Failure(format!("zero denominator in {s:?}")));
        }
        return Ok(Scalar::new(n, d));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(Failure(format!("empty number {s:?}")));
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(Failure(format!("not a decimal or p/q rational: {s:?}")));
    }
    let mantissa = BigInt::from_str(&format!("0{whole}{frac}"))
        .map_err(|_| Failure(format!("bad decimal {s:?}")))?;
    let den = BigInt::from(10u8).pow(frac.len() as u32);
    Ok(Scalar::new(mantissa * sign, den))
}

/// Writes a rational as `"p"` or `"p/q"`; inverse of [`parse_scalar`].
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn coord(p: &Point) -> [String; 2] {
    [format_scalar(&p.x), format_scalar(&p.y)]
}

fn point(raw: &[String; 2]) -> Result<Point, Failure> {
    Ok(Point::new(parse_scalar(&raw[0])?, parse_scalar(&raw[1])?))
}

impl InstanceFile {
    pub fn from_points(ps: &PointSet, order: Option<Vec<usize>>) -> Self {
        InstanceFile {
            points: ps.iter().map(coord).collect(),
            order,
        }
    }

    pub fn to_point_set(&self) -> Result<PointSet, Failure> {
        let pts = self
            .points
            .iter()
            .map(point)
            .collect::<Result<Vec<_>, _>>()?;
        PointSet::new(pts).map_err(Failure::from)
    }
}

fn rect_entry(r: &Rect) -> RectEntry {
    RectEntry {
        anchor: coord(&r.lo),
        lo: coord(&r.lo),
        hi: coord(&r.hi),
    }
}

impl RectEntry {
    pub fn to_rect(&self) -> Result<(Point, Rect), Failure> {
        let anchor = point(&self.anchor)?;
        let rect = Rect::new(point(&self.lo)?, point(&self.hi)?)?;
        Ok((anchor, rect))
    }
}

impl TileEntry {
    pub fn to_staircase(&self) -> Result<StaircasePolygon, Failure> {
        let steps = self
            .steps
            .iter()
            .map(point)
            .collect::<Result<Vec<_>, _>>()?;
        StaircasePolygon::new(point(&self.anchor)?, steps).map_err(Failure::from)
    }
}

impl ResultFile {
    /// Serializes a packing, rectangles listed in point order. Tiles are
    /// attached for tile packings so figures can outline them.
    pub fn from_packing(
        algorithm: &str,
        ps: &PointSet,
        packing: &AnchoredPacking,
        tiling: Option<&Tiling>,
    ) -> Self {
        let rects = (0..ps.len())
            .map(|i| rect_entry(packing.rect_for_point(i).expect("one rect per point")))
            .collect();
        let coverage = packing.coverage();
        let tiles = tiling.map(|t| {
            let mut by_point: Vec<Option<&StaircasePolygon>> = vec![None; ps.len()];
            for (k, &i) in t.anchor_of().iter().enumerate() {
                by_point[i] = Some(&t.tiles()[k]);
            }
            by_point
                .into_iter()
                .map(|tile| {
                    let tile = tile.expect("one tile per point");
                    TileEntry {
                        anchor: coord(tile.anchor()),
                        steps: tile.steps().iter().map(coord).collect(),
                    }
                })
                .collect()
        });
        ResultFile {
            algorithm: algorithm.to_string(),
            coverage: format_scalar(&coverage),
            coverage_float: approx(&coverage),
            rects,
            tiles,
        }
    }
}

pub fn read_json<T: for<'a> Deserialize<'a>>(path: &std::path::Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure(e.to_string()))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

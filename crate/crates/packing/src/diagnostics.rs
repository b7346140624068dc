//! Exact structural diagnostics for staircase tiles: tip cuts, sector
//! decompositions, charge regions near the anchor, and batch checks that
//! those regions contain no input points.

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet, Rect, StaircasePolygon};
use crate::report::VerificationReport;
use crate::scalar::{approx, int, Scalar};
use crate::tiling::Tiling;
use num_traits::{Signed, Zero};

/// Which trimmed extent of a tile dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TileShape {
    /// Trimmed height exceeds trimmed width.
    Tall,
    /// Trimmed width is at least the trimmed height.
    Wide,
}

/// A triangle given by its corners. Degenerate corners give an empty
/// interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

fn cross(o: &Point, u: &Point, v: &Point) -> Scalar {
    (&u.x - &o.x) * (&v.y - &o.y) - (&u.y - &o.y) * (&v.x - &o.x)
}

impl Triangle {
    pub fn area(&self) -> Scalar {
        let twice = cross(&self.a, &self.b, &self.c);
        if twice.is_negative() {
            -twice / int(2)
        } else {
            twice / int(2)
        }
    }

    /// Strict interior membership, exact.
    pub fn contains_interior(&self, p: &Point) -> bool {
        let s1 = cross(&self.a, &self.b, p);
        let s2 = cross(&self.b, &self.c, p);
        let s3 = cross(&self.c, &self.a, p);
        (s1.is_positive() && s2.is_positive() && s3.is_positive())
            || (s1.is_negative() && s2.is_negative() && s3.is_negative())
    }
}

/// A quadrilateral given by its corners in boundary order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrilateral {
    pub vertices: [Point; 4],
}

impl Quadrilateral {
    pub fn area(&self) -> Scalar {
        let mut twice = Scalar::zero();
        for i in 0..4 {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % 4];
            twice += &p.x * &q.y - &q.x * &p.y;
        }
        if twice.is_negative() {
            twice = -twice;
        }
        twice / int(2)
    }
}

/// Exact measurements of one tile against a ratio `β` and a charge
/// parameter `λ`.
#[derive(Debug, Clone)]
pub struct TileDiagnostics {
    /// Full width `|a|` of the bounding box.
    pub width: Scalar,
    /// Full height `|b|` of the bounding box.
    pub height: Scalar,
    /// Width `|a′|` left of the right tip cut.
    pub body_width: Scalar,
    /// Height `|b′|` below the upper tip cut.
    pub body_height: Scalar,
    /// Part of the tile right of the right-most vertex line whose right
    /// side still holds at least a `1/β` share of the tile's area.
    pub right_tip: StaircasePolygon,
    /// Part of the tile above the upper-most vertex line whose upper side
    /// still holds at least a `1/β` share of the tile's area.
    pub upper_tip: StaircasePolygon,
    /// Column rectangles between consecutive vertical vertex lines.
    pub vertical_sectors: Vec<Rect>,
    /// Row rectangles between consecutive horizontal vertex lines.
    pub horizontal_sectors: Vec<Rect>,
    /// Whether the tile's area strictly exceeds `β` times its largest
    /// anchored rectangle.
    pub is_beta_tile: bool,
    pub shape: TileShape,
    /// Trapezoid hanging below the body's bottom edge, reaching depth
    /// `λ|a′|`; its area is exactly `λ(2−λ)/2 · |a′|²`.
    pub below_trapezoid: Quadrilateral,
    /// Right isosceles triangle hanging below-right of the bottom edge.
    pub below_triangle: Triangle,
    /// Right isosceles triangle hanging upper-left of the left edge.
    pub left_triangle: Triangle,
}

/// Measures one positive-area tile. `beta` must be at least 1 and `lambda`
/// strictly between 0 and 1.
pub fn tile_diagnostics(
    tile: &StaircasePolygon,
    beta: &Scalar,
    lambda: &Scalar,
) -> Result<TileDiagnostics> {
    let one = int(1);
    if beta < &one {
        return Err(Error::InvalidParameter(format!(
            "tile ratio must be at least 1, got {beta}"
        )));
    }
    if !lambda.is_positive() || lambda >= &one {
        return Err(Error::InvalidParameter(format!(
            "charge parameter must lie strictly between 0 and 1, got {lambda}"
        )));
    }
    let area = tile.area();
    if area.is_zero() {
        return Err(Error::InvalidParameter(
            "zero-area tile has no diagnostics".into(),
        ));
    }
    let anchor = tile.anchor();
    let steps = tile.steps();
    let m = steps.len();
    let bounding = tile.bounding_rect();
    let width = bounding.width();
    let height = bounding.height();
    let share = &area / beta;

    let columns = tile.column_rects();
    let mut rows = Vec::with_capacity(m);
    for k in 0..m {
        let bottom = if k + 1 < m {
            steps[k + 1].y.clone()
        } else {
            anchor.y.clone()
        };
        rows.push(Rect {
            lo: Point::new(anchor.x.clone(), bottom),
            hi: steps[k].clone(),
        });
    }

    // Right-most vertical vertex line keeping at least `share` on its right.
    let mut suffix = Scalar::zero();
    let mut right_cut = 1;
    for j in (1..=m).rev() {
        suffix += columns[j - 1].area();
        if suffix >= share {
            right_cut = j;
            break;
        }
    }
    let right_tip = if right_cut == 1 {
        tile.clone()
    } else {
        StaircasePolygon::new(
            Point::new(steps[right_cut - 2].x.clone(), anchor.y.clone()),
            steps[right_cut - 1..].to_vec(),
        )?
    };
    let body_width = right_tip.anchor().x.clone() - &anchor.x;

    // Upper-most horizontal vertex line keeping at least `share` above it.
    let mut prefix = Scalar::zero();
    let mut upper_cut = m;
    for (k, row) in rows.iter().enumerate() {
        prefix += row.area();
        if prefix >= share {
            upper_cut = k + 1;
            break;
        }
    }
    let upper_tip = if upper_cut == m {
        tile.clone()
    } else {
        StaircasePolygon::new(
            Point::new(anchor.x.clone(), steps[upper_cut].y.clone()),
            steps[..upper_cut].to_vec(),
        )?
    };
    let body_height = upper_tip.anchor().y.clone() - &anchor.y;

    let is_beta_tile = tile.max_rect().area() * beta < area;
    let shape = if body_width >= body_height {
        TileShape::Wide
    } else {
        TileShape::Tall
    };

    let depth = lambda * &body_width;
    let below_trapezoid = Quadrilateral {
        vertices: [
            anchor.clone(),
            Point::new(&anchor.x + &body_width, anchor.y.clone()),
            Point::new(&anchor.x + &body_width, &anchor.y - &depth),
            Point::new(&anchor.x + &depth, &anchor.y - &depth),
        ],
    };
    let below_triangle = Triangle {
        a: anchor.clone(),
        b: Point::new(&anchor.x + &width, anchor.y.clone()),
        c: Point::new(&anchor.x + &width, &anchor.y - &width),
    };
    let left_triangle = Triangle {
        a: anchor.clone(),
        b: Point::new(anchor.x.clone(), &anchor.y + &height),
        c: Point::new(&anchor.x - &height, &anchor.y + &height),
    };

    Ok(TileDiagnostics {
        width,
        height,
        body_width,
        body_height,
        right_tip,
        upper_tip,
        vertical_sectors: columns,
        horizontal_sectors: rows,
        is_beta_tile,
        shape,
        below_trapezoid,
        below_triangle,
        left_triangle,
    })
}

/// Checks that no point of `ps` lies strictly inside any tile's below-right
/// or upper-left triangle. A float prefilter with a conservative margin
/// skips the exact test for points that are clearly outside.
pub fn verify_empty_triangles(ps: &PointSet, tiling: &Tiling) -> VerificationReport {
    const SLACK: f64 = 1e-9;
    let mut report = VerificationReport::new();
    let coords: Vec<(f64, f64, f64)> = ps
        .iter()
        .map(|p| (approx(&p.x), approx(&p.y), approx(&p.coord_sum())))
        .collect();
    let mut below_failures = Vec::new();
    let mut left_failures = Vec::new();
    for (ti, tile) in tiling.tiles().iter().enumerate() {
        let anchor = tile.anchor();
        let bounding = tile.bounding_rect();
        let x0 = approx(&anchor.x);
        let y0 = approx(&anchor.y);
        let w = approx(&bounding.width());
        let h = approx(&bounding.height());
        let diag = x0 + y0 - SLACK;
        let below = Triangle {
            a: anchor.clone(),
            b: Point::new(&anchor.x + bounding.width(), anchor.y.clone()),
            c: Point::new(&anchor.x + bounding.width(), &anchor.y - bounding.width()),
        };
        let left = Triangle {
            a: anchor.clone(),
            b: Point::new(anchor.x.clone(), &anchor.y + bounding.height()),
            c: Point::new(&anchor.x - bounding.height(), &anchor.y + bounding.height()),
        };
        for (pi, p) in ps.iter().enumerate() {
            let (px, py, psum) = coords[pi];
            if psum > diag && py < y0 + SLACK && px < x0 + w + SLACK && below.contains_interior(p) {
                below_failures.push(format!("tile {ti} holds point {pi} in its lower triangle"));
            }
            if psum > diag && px < x0 + SLACK && py < y0 + h + SLACK && left.contains_interior(p) {
                left_failures.push(format!("tile {ti} holds point {pi} in its left triangle"));
            }
        }
    }
    report.record(
        "below-right triangles contain no input point",
        below_failures.is_empty(),
        below_failures.join("; "),
    );
    report.record(
        "upper-left triangles contain no input point",
        left_failures.is_empty(),
        left_failures.join("; "),
    );
    report
}

//! Greedy anchored packing: each point in turn receives a maximum-area
//! rectangle anchored at it that avoids everything placed before it.

use crate::error::{Error, Result};
use crate::geom::{AnchoredPacking, Order, Point, PointSet, Rect};
use crate::scalar::{approx, Scalar};
use num_traits::{One, Zero};

/// Exact maximum-rectangle query against an explicit obstacle list.
///
/// Candidate right edges are the square's own right side plus the left edges
/// of obstacles starting right of the anchor; sweeping them left to right
/// while folding in each obstacle's height ceiling visits every maximal
/// width with its exact tallest admissible top. An obstacle whose bottom
/// edge is at or below the anchor's line caps the ceiling at the anchor
/// itself (no positive height fits past it).
fn max_rect_against(anchor: &Point, obstacles: &[&Rect]) -> Result<Rect> {
    let one = Scalar::one();
    let mut ceiling = one.clone();
    let mut constraints: Vec<(&Scalar, Scalar)> = Vec::new();
    for o in obstacles {
        if o.is_degenerate() || o.hi.x <= anchor.x || o.hi.y <= anchor.y {
            continue;
        }
        if o.contains_interior(anchor) {
            return Err(Error::AnchorInsideObstacle);
        }
        let eff = if o.lo.y > anchor.y {
            o.lo.y.clone()
        } else {
            anchor.y.clone()
        };
        if o.lo.x <= anchor.x {
            if eff < ceiling {
                ceiling = eff;
            }
        } else {
            constraints.push((&o.lo.x, eff));
        }
    }
    constraints.sort_by(|a, b| a.0.cmp(b.0));

    let mut best_area = Scalar::zero();
    let mut best: Option<Rect> = None;
    let consider = |x: &Scalar, ceil: &Scalar, best_area: &mut Scalar, best: &mut Option<Rect>| {
        let area = (x - &anchor.x) * (ceil - &anchor.y);
        if area > *best_area {
            *best_area = area;
            *best = Some(Rect {
                lo: anchor.clone(),
                hi: Point::new(x.clone(), ceil.clone()),
            });
        }
    };

    let mut k = 0;
    while k < constraints.len() {
        let x = constraints[k].0;
        consider(x, &ceiling, &mut best_area, &mut best);
        while k < constraints.len() && constraints[k].0 == x {
            if constraints[k].1 < ceiling {
                ceiling = constraints[k].1.clone();
            }
            k += 1;
        }
    }
    consider(&one, &ceiling, &mut best_area, &mut best);

    Ok(best.unwrap_or_else(|| Rect::point(anchor.clone())))
}

/// The exact maximum-area rectangle with lower-left corner `anchor`, inside
/// the unit square and interior-disjoint from every obstacle. Area ties are
/// broken toward smaller width; if no positive area fits, the degenerate
/// point rectangle at the anchor is returned.
///
/// Fails with [`Error::AnchorInsideObstacle`] if the anchor lies strictly
/// inside an obstacle.
pub fn max_anchored_empty_rect(anchor: &Point, obstacles: &[Rect]) -> Result<Rect> {
    let refs: Vec<&Rect> = obstacles.iter().collect();
    max_rect_against(anchor, &refs)
}

/// Conservative float interval for a rational, for pruning only.
fn widen(x: &Scalar) -> (f64, f64) {
    let a = approx(x);
    if !a.is_finite() {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let d = a.abs() * 1e-9 + 1e-300;
    (a - d, a + d)
}

struct FloatBox {
    lo_x: (f64, f64),
    lo_y: (f64, f64),
    hi_x: (f64, f64),
    hi_y: (f64, f64),
}

/// Placed obstacles with cached float bounds so each query can discard most
/// of them before any exact arithmetic runs. Only conservatively certain
/// exclusions are applied; every surviving rectangle is re-examined exactly.
#[derive(Default)]
struct ObstacleIndex {
    rects: Vec<Rect>,
    boxes: Vec<FloatBox>,
}

impl ObstacleIndex {
    fn push(&mut self, r: Rect) {
        self.boxes.push(FloatBox {
            lo_x: widen(&r.lo.x),
            lo_y: widen(&r.lo.y),
            hi_x: widen(&r.hi.x),
            hi_y: widen(&r.hi.y),
        });
        self.rects.push(r);
    }

    /// Obstacles that can possibly constrain a query at `anchor`.
    ///
    /// Two certain exclusions apply: rectangles certainly left of or below
    /// the anchor, and rectangles certainly starting right of the nearest
    /// certain "wall" (an obstacle straddling the anchor's horizontal line,
    /// past which no anchored rectangle has positive height).
    fn survivors(&self, anchor: &Point) -> Result<Vec<&Rect>> {
        let (ax_dn, ax_up) = widen(&anchor.x);
        let (ay_dn, ay_up) = widen(&anchor.y);

        let mut wall = f64::INFINITY;
        for b in &self.boxes {
            if b.lo_y.1 <= ay_dn && b.hi_y.0 > ay_up && b.hi_x.0 > ax_up {
                wall = wall.min(b.lo_x.1);
            }
        }

        let mut out = Vec::new();
        for (b, r) in self.boxes.iter().zip(&self.rects) {
            if b.lo_x.0 < ax_up
                && b.lo_y.0 < ay_up
                && b.hi_x.1 > ax_dn
                && b.hi_y.1 > ay_dn
                && r.contains_interior(anchor)
            {
                return Err(Error::AnchorInsideObstacle);
            }
            if b.hi_x.1 <= ax_dn || b.hi_y.1 <= ay_dn {
                continue;
            }
            if b.lo_x.0 > wall {
                continue;
            }
            out.push(r);
        }
        Ok(out)
    }
}

/// Places one maximum-area anchored rectangle per point, in the given
/// order, each avoiding all rectangles placed before it.
///
/// An anchor that ends up strictly inside an earlier rectangle cannot
/// receive positive area and gets its degenerate point rectangle.
pub fn greedy_packing(ps: &PointSet, order: &Order) -> Result<AnchoredPacking> {
    if order.len() != ps.len() {
        return Err(Error::InvalidOrder(format!(
            "order covers {} points, set has {}",
            order.len(),
            ps.len()
        )));
    }
    let mut index = ObstacleIndex::default();
    let mut rects = Vec::with_capacity(ps.len());
    for &i in order.indices() {
        let anchor = &ps[i];
        let rect = match index.survivors(anchor) {
            Ok(survivors) => max_rect_against(anchor, &survivors)?,
            Err(Error::AnchorInsideObstacle) => Rect::point(anchor.clone()),
            Err(e) => return Err(e),
        };
        if !rect.is_degenerate() {
            index.push(rect.clone());
        }
        rects.push(rect);
    }
    Ok(AnchoredPacking {
        anchors: order.indices().to_vec(),
        rects,
    })
}

/// Indices of rectangles that could be replaced by a strictly larger one
/// while all others stay fixed.
pub fn pareto_violations(ps: &PointSet, packing: &AnchoredPacking) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..packing.rects.len() {
        let anchor = &ps[packing.anchors[i]];
        let others: Vec<&Rect> = packing
            .rects
            .iter()
            .enumerate()
            .filter_map(|(j, r)| (j != i).then_some(r))
            .collect();
        let best = match max_rect_against(anchor, &others) {
            Ok(r) => r.area(),
            Err(_) => Scalar::zero(),
        };
        if best > packing.rects[i].area() {
            out.push(i);
        }
    }
    out
}

/// Whether no single rectangle can grow while the others stay fixed.
pub fn is_pareto_optimal(ps: &PointSet, packing: &AnchoredPacking) -> bool {
    pareto_violations(ps, packing).is_empty()
}

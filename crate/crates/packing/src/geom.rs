//! Core geometric types with exact rational coordinates: points, rectangles,
//! staircase polygons and anchored packings.

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::{fixed64_key, Scalar};
use num_traits::{One, Zero};
use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    /// The origin `(0, 0)`.
    pub fn origin() -> Self {
        Point::new(Scalar::zero(), Scalar::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Componentwise order: `self` lies weakly below and to the left of `q`.
    pub fn dominated_by(&self, q: &Point) -> bool {
        self.x <= q.x && self.y <= q.y
    }

    /// The coordinate sum `x + y`.
    pub fn coord_sum(&self) -> Scalar {
        &self.x + &self.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An axis-aligned closed rectangle `[lo.x, hi.x] × [lo.y, hi.y]`.
///
/// Degenerate rectangles (zero width or height) are allowed; they have empty
/// interior and zero area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rect {
    pub lo: Point,
    pub hi: Point,
}

impl Rect {
    /// Creates a rectangle from its lower-left and upper-right corners.
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        if lo.x > hi.x || lo.y > hi.y {
            return Err(Error::InvalidParameter(format!(
                "rectangle corners out of order: lo {lo}, hi {hi}"
            )));
        }
        Ok(Rect { lo, hi })
    }

    /// The unit square `[0, 1]²`.
    pub fn unit() -> Self {
        Rect {
            lo: Point::origin(),
            hi: Point::new(Scalar::one(), Scalar::one()),
        }
    }

    /// The degenerate rectangle consisting of the single point `p`.
    pub fn point(p: Point) -> Self {
        Rect {
            lo: p.clone(),
            hi: p,
        }
    }

    pub fn width(&self) -> Scalar {
        &self.hi.x - &self.lo.x
    }

    pub fn height(&self) -> Scalar {
        &self.hi.y - &self.lo.y
    }

    pub fn area(&self) -> Scalar {
        self.width() * self.height()
    }

    /// Whether the rectangle has zero width or height (empty interior).
    pub fn is_degenerate(&self) -> bool {
        self.lo.x == self.hi.x || self.lo.y == self.hi.y
    }

    /// Whether `p` lies in the closed rectangle.
    pub fn contains(&self, p: &Point) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    /// Whether `p` lies strictly inside the rectangle.
    pub fn contains_interior(&self, p: &Point) -> bool {
        self.lo.x < p.x && p.x < self.hi.x && self.lo.y < p.y && p.y < self.hi.y
    }

    /// Whether `self ⊆ other` as closed sets.
    pub fn contained_in(&self, other: &Rect) -> bool {
        other.lo.x <= self.lo.x
            && other.lo.y <= self.lo.y
            && self.hi.x <= other.hi.x
            && self.hi.y <= other.hi.y
    }

    /// Whether the open interiors of two rectangles intersect.
    pub fn interiors_intersect(&self, other: &Rect) -> bool {
        !self.is_degenerate()
            && !other.is_degenerate()
            && self.lo.x < other.hi.x
            && other.lo.x < self.hi.x
            && self.lo.y < other.hi.y
            && other.lo.y < self.hi.y
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] × [{}, {}]",
            self.lo.x, self.hi.x, self.lo.y, self.hi.y
        )
    }
}

/// A finite set of distinct points in the closed unit square containing the
/// origin. Input order is preserved and used to index derived structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Validates and wraps a list of points: pairwise distinct, inside
    /// `[0, 1]²`, and including the origin.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if !points.iter().any(Point::is_origin) {
            return Err(Error::MissingOrigin);
        }
        Self::without_origin(points)
    }

    /// Like [`PointSet::new`] but without requiring the origin. Tiling
    /// needs the origin; the optimization routines do not.
    pub fn without_origin(points: Vec<Point>) -> Result<Self> {
        let zero = Scalar::zero();
        let one = Scalar::one();
        for (i, p) in points.iter().enumerate() {
            if p.x < zero || p.x > one || p.y < zero || p.y > one {
                return Err(Error::OutOfBounds(i));
            }
        }
        let mut idx: Vec<usize> = (0..points.len()).collect();
        idx.sort_by(|&a, &b| (&points[a].x, &points[a].y).cmp(&(&points[b].x, &points[b].y)));
        for w in idx.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::DuplicatePoint(w[0].max(w[1])));
            }
        }
        Ok(PointSet { points })
    }

    /// Whether the origin is one of the points.
    pub fn has_origin(&self) -> bool {
        self.points.iter().any(Point::is_origin)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;

    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

/// A processing order over the points of a [`PointSet`]: a permutation of
/// the point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    indices: Vec<usize>,
}

impl Order {
    /// Wraps a permutation of `0..n`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if !is_permutation(&indices, n) {
            return Err(Error::InvalidOrder(format!(
                "expected a permutation of 0..{n}, got {} indices",
                indices.len()
            )));
        }
        Ok(Order { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// The canonical sweep order: decreasing coordinate sum `x + y`, ties broken
/// by larger `x` first. The origin, having the unique smallest sum, comes
/// last.
///
/// When every coordinate has a dyadic denominator up to `2^64` the sort runs
/// on integer keys; otherwise it compares exact rationals.
pub fn sweep_order(ps: &PointSet) -> Order {
    let mut indices: Vec<usize> = (0..ps.len()).collect();
    let keys: Option<Vec<(u128, u128)>> = ps
        .iter()
        .map(|p| fixed64_key(&p.x).zip(fixed64_key(&p.y)))
        .collect();
    match keys {
        Some(keys) => indices.sort_by_key(|&i| {
            let (kx, ky) = keys[i];
            (Reverse(kx + ky), Reverse(kx))
        }),
        None => {
            let sums: Vec<Scalar> = ps.iter().map(Point::coord_sum).collect();
            indices.sort_by(|&a, &b| (&sums[b], &ps[b].x).cmp(&(&sums[a], &ps[a].x)));
        }
    }
    Order { indices }
}

/// A staircase polygon: the union of the closed rectangles spanned by a
/// common lower-left `anchor` and each corner in `steps`, where step `x`
/// strictly increases and step `y` strictly decreases.
///
/// Steps may touch the anchor's own `x` or `y` line, so degenerate chains of
/// zero area are representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircasePolygon {
    anchor: Point,
    steps: Vec<Point>,
}

impl StaircasePolygon {
    pub fn new(anchor: Point, steps: Vec<Point>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidParameter(
                "staircase needs at least one step".into(),
            ));
        }
        for (k, s) in steps.iter().enumerate() {
            if s.x < anchor.x || s.y < anchor.y {
                return Err(Error::InvalidParameter(format!(
                    "step {k} at {s} is not above-right of anchor {anchor}"
                )));
            }
            if k > 0 && (s.x <= steps[k - 1].x || s.y >= steps[k - 1].y) {
                return Err(Error::InvalidParameter(format!(
                    "steps must strictly increase in x and decrease in y (step {k})"
                )));
            }
        }
        Ok(StaircasePolygon { anchor, steps })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn steps(&self) -> &[Point] {
        &self.steps
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Vertical slabs `[X_{k-1}, X_k] × [anchor.y, Y_k]` with `X_0 = anchor.x`.
    ///
    /// The slabs partition the polygon up to shared edges. Degenerate slabs
    /// are kept so indices line up with steps.
    pub fn column_rects(&self) -> Vec<Rect> {
        let mut left = self.anchor.x.clone();
        self.steps
            .iter()
            .map(|s| {
                let r = Rect {
                    lo: Point::new(left.clone(), self.anchor.y.clone()),
                    hi: s.clone(),
                };
                left = s.x.clone();
                r
            })
            .collect()
    }

    /// Exact area.
    pub fn area(&self) -> Scalar {
        self.column_rects().iter().map(Rect::area).sum()
    }

    /// All inclusion-maximal rectangles anchored at the polygon's anchor,
    /// one per step corner.
    pub fn maximal_rects(&self) -> Vec<Rect> {
        self.steps
            .iter()
            .map(|s| Rect {
                lo: self.anchor.clone(),
                hi: s.clone(),
            })
            .collect()
    }

    /// A largest rectangle anchored at the anchor and contained in the
    /// polygon, breaking area ties toward smaller width.
    pub fn max_rect(&self) -> Rect {
        let mut best: Option<(Scalar, Rect)> = None;
        for r in self.maximal_rects() {
            let a = r.area();
            match &best {
                Some((best_area, _)) if a <= *best_area => {}
                _ => best = Some((a, r)),
            }
        }
        best.expect("staircase has at least one step").1
    }

    /// Inner corners `(X_k, Y_{k+1})` between consecutive steps.
    pub fn reflex_corners(&self) -> Vec<Point> {
        self.steps
            .windows(2)
            .map(|w| Point::new(w[0].x.clone(), w[1].y.clone()))
            .collect()
    }

    /// Smallest rectangle containing the polygon.
    pub fn bounding_rect(&self) -> Rect {
        Rect {
            lo: self.anchor.clone(),
            hi: Point::new(
                self.steps.last().unwrap().x.clone(),
                self.steps[0].y.clone(),
            ),
        }
    }

    /// Whether `p` lies in the closed polygon.
    pub fn contains(&self, p: &Point) -> bool {
        self.column_rects().iter().any(|r| r.contains(p))
    }

    /// The polygon shifted by `(dx, dy)`.
    pub fn translate(&self, dx: &Scalar, dy: &Scalar) -> StaircasePolygon {
        let mv = |p: &Point| Point::new(&p.x + dx, &p.y + dy);
        StaircasePolygon {
            anchor: mv(&self.anchor),
            steps: self.steps.iter().map(mv).collect(),
        }
    }

    /// Perimeter vertices in clockwise order starting at the anchor.
    pub fn boundary_vertices(&self) -> Vec<Point> {
        let mut vs = vec![
            self.anchor.clone(),
            Point::new(self.anchor.x.clone(), self.steps[0].y.clone()),
        ];
        for k in 0..self.steps.len() {
            vs.push(self.steps[k].clone());
            if k + 1 < self.steps.len() {
                vs.push(Point::new(
                    self.steps[k].x.clone(),
                    self.steps[k + 1].y.clone(),
                ));
            }
        }
        vs.push(Point::new(
            self.steps.last().unwrap().x.clone(),
            self.anchor.y.clone(),
        ));
        vs
    }
}

/// One rectangle per point of a [`PointSet`], in some placement order.
///
/// `rects[i]` is meant to have its lower-left corner on point
/// `anchors[i]` of the set; `anchors` is a permutation of the point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredPacking {
    pub anchors: Vec<usize>,
    pub rects: Vec<Rect>,
}

impl AnchoredPacking {
    pub fn new(anchors: Vec<usize>, rects: Vec<Rect>) -> Self {
        AnchoredPacking { anchors, rects }
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Sum of rectangle areas; equals the covered area when interiors are
    /// pairwise disjoint.
    pub fn coverage(&self) -> Scalar {
        self.rects.iter().map(Rect::area).sum()
    }

    /// The rectangle anchored at point `point_idx`, if the packing has one.
    pub fn rect_for_point(&self, point_idx: usize) -> Option<&Rect> {
        self.anchors
            .iter()
            .position(|&a| a == point_idx)
            .map(|i| &self.rects[i])
    }
}

/// Whether `perm` is a permutation of `0..n`.
pub(crate) fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Finds a pair of rectangles with intersecting interiors, if any.
///
/// Sweeps over `x` keeping the active `y`-intervals ordered, so the exact
/// comparisons stay `O(n log n)` instead of `O(n²)`.
pub fn find_interior_overlap(rects: &[Rect]) -> Option<(usize, usize)> {
    let live: Vec<usize> = (0..rects.len())
        .filter(|&i| !rects[i].is_degenerate())
        .collect();

    let mut ys: Vec<&Scalar> = Vec::with_capacity(live.len() * 2);
    for &i in &live {
        ys.push(&rects[i].lo.y);
        ys.push(&rects[i].hi.y);
    }
    ys.sort();
    ys.dedup();
    let yrank = |v: &Scalar| ys.binary_search(&v).unwrap();

    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Kind {
        Remove,
        Insert,
    }

    let mut events: Vec<(&Scalar, Kind, usize)> = Vec::with_capacity(live.len() * 2);
    for &i in &live {
        events.push((&rects[i].lo.x, Kind::Insert, i));
        events.push((&rects[i].hi.x, Kind::Remove, i));
    }
    events.sort();

    // Active y-intervals, keyed by (lo rank, index) with hi rank as value.
    // They stay pairwise interior-disjoint or we have already returned, so
    // checking the neighbours of an insertion point is enough.
    let mut active: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (_, kind, i) in events {
        let a = yrank(&rects[i].lo.y);
        let b = yrank(&rects[i].hi.y);
        match kind {
            Kind::Remove => {
                active.remove(&(a, i));
            }
            Kind::Insert => {
                if let Some((&(_, j), &hi)) = active.range(..(a, i)).next_back() {
                    if a < hi {
                        return Some((j, i));
                    }
                }
                if let Some((&(lo, j), _)) = active.range((a, i)..).next() {
                    if lo < b {
                        return Some((j, i));
                    }
                }
                active.insert((a, i), b);
            }
        }
    }
    None
}

/// Checks that `packing` is a valid anchored rectangle packing for `ps`:
/// one rectangle per point, lower-left corner on the point, inside the unit
/// square, with pairwise disjoint interiors.
pub fn verify_packing(ps: &PointSet, packing: &AnchoredPacking) -> VerificationReport {
    let mut report = VerificationReport::new();

    let aligned =
        packing.anchors.len() == packing.rects.len() && is_permutation(&packing.anchors, ps.len());
    report.record(
        "one rectangle per point",
        aligned,
        if aligned {
            String::new()
        } else {
            format!(
                "{} rectangles, {} anchor indices, {} points",
                packing.rects.len(),
                packing.anchors.len(),
                ps.len()
            )
        },
    );

    let bad_corner = packing
        .rects
        .iter()
        .position(|r| r.lo.x > r.hi.x || r.lo.y > r.hi.y);
    report.record(
        "rectangle corners ordered",
        bad_corner.is_none(),
        bad_corner.map_or(String::new(), |i| format!("rectangle {i}")),
    );

    let unit = Rect::unit();
    let outside = packing.rects.iter().position(|r| !r.contained_in(&unit));
    report.record(
        "rectangles inside unit square",
        outside.is_none(),
        outside.map_or(String::new(), |i| format!("rectangle {i}")),
    );

    let unanchored = (0..packing.rects.len().min(packing.anchors.len()))
        .filter(|&i| packing.anchors[i] < ps.len())
        .find(|&i| packing.rects[i].lo != ps[packing.anchors[i]]);
    report.record(
        "rectangles anchored at their points",
        unanchored.is_none(),
        unanchored.map_or(String::new(), |i| {
            format!(
                "rectangle {i} has corner {}, its point is {}",
                packing.rects[i].lo, ps[packing.anchors[i]]
            )
        }),
    );

    if bad_corner.is_none() {
        match find_interior_overlap(&packing.rects) {
            None => report.record("pairwise disjoint interiors", true, ""),
            Some((i, j)) => report.record(
                "pairwise disjoint interiors",
                false,
                format!("rectangles {i} and {j} overlap"),
            ),
        }
    } else {
        report.record(
            "pairwise disjoint interiors",
            false,
            "skipped: malformed rectangle",
        );
    }

    report
}

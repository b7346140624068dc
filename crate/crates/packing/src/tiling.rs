//! Staircase tiling of the unit square.
//!
//! Points are processed in sweep order (decreasing `x + y`). Each point
//! receives as its tile the part of the still-uncovered region that
//! dominates it; the uncovered region stays a single staircase-shaped
//! frontier throughout, so every tile is a staircase polygon and the tiles
//! partition `[0, 1]²`. Keeping each tile's largest anchored rectangle turns
//! the tiling into an anchored rectangle packing.

use crate::geom::{
    find_interior_overlap, is_permutation, sweep_order, AnchoredPacking, Point, PointSet, Rect,
    StaircasePolygon,
};
use crate::report::VerificationReport;
use crate::scalar::{fixed64_key, Scalar};
use num_traits::One;
use std::collections::{BTreeMap, HashMap};

/// A staircase tiling of the unit square: one tile per point, stored in
/// construction (sweep) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    tiles: Vec<StaircasePolygon>,
    anchor_of: Vec<usize>,
}

impl Tiling {
    /// Tiles in construction order.
    pub fn tiles(&self) -> &[StaircasePolygon] {
        &self.tiles
    }

    /// Point index of each tile's anchor, aligned with [`Self::tiles`].
    pub fn anchor_of(&self) -> &[usize] {
        &self.anchor_of
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Exact sum of tile areas (1 for a valid tiling).
    pub fn total_area(&self) -> Scalar {
        self.tiles.iter().map(StaircasePolygon::area).sum()
    }

    /// The packing that keeps each tile's largest anchored rectangle.
    pub fn max_rect_packing(&self) -> AnchoredPacking {
        AnchoredPacking {
            anchors: self.anchor_of.clone(),
            rects: self.tiles.iter().map(StaircasePolygon::max_rect).collect(),
        }
    }
}

/// Coordinate values compressed to dense ranks.
struct Ranked {
    /// Distinct values, ascending.
    sorted: Vec<Scalar>,
    /// Rank of each input value.
    rank: Vec<usize>,
}

fn rank_scalars(values: &[&Scalar]) -> Ranked {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    let keys: Option<Vec<u128>> = values.iter().map(|v| fixed64_key(v)).collect();
    match &keys {
        Some(keys) => idx.sort_by_key(|&i| keys[i]),
        None => idx.sort_by(|&a, &b| values[a].cmp(values[b])),
    }
    let mut sorted: Vec<Scalar> = Vec::new();
    let mut rank = vec![0usize; values.len()];
    for &i in &idx {
        if sorted.last() != Some(values[i]) {
            sorted.push(values[i].clone());
        }
        rank[i] = sorted.len() - 1;
    }
    Ranked { sorted, rank }
}

/// Computes the staircase tiling of `ps`.
///
/// Runs in `O(n log n)`: the frontier staircase is kept as an ordered map
/// from x-rank to y-rank of its outer corners, each carve is a range
/// deletion plus at most two insertions, and every corner is inserted and
/// removed at most once.
///
/// Panics if the origin is missing: the final tile is anchored there and
/// the partition does not close without it.
pub fn compute_tiling(ps: &PointSet) -> Tiling {
    assert!(
        ps.has_origin(),
        "tiling requires the origin in the point set"
    );
    let n = ps.len();
    let one = Scalar::one();
    let xs: Vec<&Scalar> = ps.iter().map(|p| &p.x).chain(Some(&one)).collect();
    let ys: Vec<&Scalar> = ps.iter().map(|p| &p.y).chain(Some(&one)).collect();
    let rx = rank_scalars(&xs);
    let ry = rank_scalars(&ys);

    // Frontier outer corners: x-rank → y-rank, y strictly decreasing in x.
    // Initially the single corner (1, 1), i.e. the whole unit square.
    let mut frontier: BTreeMap<usize, usize> = BTreeMap::new();
    frontier.insert(rx.rank[n], ry.rank[n]);

    let order = sweep_order(ps);
    let mut tiles = Vec::with_capacity(n);
    let mut anchor_of = Vec::with_capacity(n);

    for &i in order.indices() {
        let (prx, pry) = (rx.rank[i], ry.rank[i]);

        // The tile consists of the frontier corners dominating the anchor.
        let carved: Vec<(usize, usize)> = frontier
            .range(prx..)
            .take_while(|&(_, &y)| y >= pry)
            .map(|(&x, &y)| (x, y))
            .collect();
        assert!(
            !carved.is_empty(),
            "sweep order keeps every unprocessed point inside the frontier"
        );
        for &(x, _) in &carved {
            frontier.remove(&x);
        }

        // Close the frontier again with corners at the anchor's lines,
        // merging with the carved range's ends when they share a line.
        let (x_first, y_first) = carved[0];
        let (x_last, y_last) = *carved.last().unwrap();
        if prx == x_last && y_first == pry {
            frontier.insert(prx, pry);
        } else if prx == x_last {
            frontier.insert(prx, y_first);
        } else if y_first == pry {
            frontier.insert(x_last, pry);
        } else {
            frontier.insert(prx, y_first);
            frontier.insert(x_last, pry);
        }

        // Zero-size edge steps only repeat the anchor's own lines; drop them
        // unless they are all the tile has.
        let mut steps: &[(usize, usize)] = &carved;
        if steps.len() > 1 && x_first == prx {
            steps = &steps[1..];
        }
        if steps.len() > 1 && y_last == pry {
            steps = &steps[..steps.len() - 1];
        }

        let step_points: Vec<Point> = steps
            .iter()
            .map(|&(x, y)| Point::new(rx.sorted[x].clone(), ry.sorted[y].clone()))
            .collect();
        let tile = StaircasePolygon::new(ps[i].clone(), step_points)
            .expect("carved frontier corners form a staircase");
        tiles.push(tile);
        anchor_of.push(i);
    }

    Tiling { tiles, anchor_of }
}

/// Computes the tiling together with its max-rectangle packing.
pub fn tile_packing(ps: &PointSet) -> (Tiling, AnchoredPacking) {
    let tiling = compute_tiling(ps);
    let packing = tiling.max_rect_packing();
    (tiling, packing)
}

/// Checks that `tiling` is a valid staircase tiling of the unit square for
/// `ps`: one tile per point, anchored on it, inside the square, exactly
/// covering area 1 with pairwise disjoint interiors, and with every reflex
/// corner on a distinct point of `ps`.
pub fn verify_tiling(ps: &PointSet, tiling: &Tiling) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = ps.len();

    let aligned =
        tiling.tiles.len() == tiling.anchor_of.len() && is_permutation(&tiling.anchor_of, n);
    report.record(
        "one tile per point",
        aligned,
        if aligned {
            String::new()
        } else {
            format!(
                "{} tiles, {} anchor indices, {} points",
                tiling.tiles.len(),
                tiling.anchor_of.len(),
                n
            )
        },
    );

    let tile_count = tiling.tiles.len().min(tiling.anchor_of.len());
    let bad_anchor = (0..tile_count)
        .filter(|&t| tiling.anchor_of[t] < n)
        .find(|&t| tiling.tiles[t].anchor() != &ps[tiling.anchor_of[t]]);
    report.record(
        "tile anchors on their points",
        bad_anchor.is_none(),
        bad_anchor.map_or(String::new(), |t| {
            format!(
                "tile {t} anchored at {}, its point is {}",
                tiling.tiles[t].anchor(),
                ps[tiling.anchor_of[t]]
            )
        }),
    );

    let unit = Rect::unit();
    let outside = tiling
        .tiles
        .iter()
        .position(|t| !t.bounding_rect().contained_in(&unit));
    report.record(
        "tiles inside unit square",
        outside.is_none(),
        outside.map_or(String::new(), |t| format!("tile {t}")),
    );

    let total = tiling.total_area();
    let covers = total == Scalar::one();
    report.record(
        "tile areas sum to 1",
        covers,
        if covers {
            String::new()
        } else {
            format!("total area {total}")
        },
    );

    let mut columns: Vec<Rect> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for (t, tile) in tiling.tiles.iter().enumerate() {
        for c in tile.column_rects() {
            columns.push(c);
            owner.push(t);
        }
    }
    match find_interior_overlap(&columns) {
        None => report.record("pairwise disjoint tile interiors", true, ""),
        Some((a, b)) => report.record(
            "pairwise disjoint tile interiors",
            false,
            format!("tiles {} and {} overlap", owner[a], owner[b]),
        ),
    }

    let point_index: HashMap<&Point, usize> = ps.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut reflex_owner: Vec<Option<usize>> = vec![None; n];
    let mut stray: Option<(usize, Point)> = None;
    let mut reused: Option<(usize, usize, usize)> = None;
    'tiles: for (t, tile) in tiling.tiles.iter().enumerate() {
        for corner in tile.reflex_corners() {
            match point_index.get(&corner) {
                None => {
                    stray = Some((t, corner));
                    break 'tiles;
                }
                Some(&pi) => match reflex_owner[pi] {
                    Some(prev) if prev != t => {
                        reused = Some((pi, prev, t));
                        break 'tiles;
                    }
                    _ => reflex_owner[pi] = Some(t),
                },
            }
        }
    }
    report.record(
        "reflex corners are points of the set",
        stray.is_none(),
        stray.map_or(String::new(), |(t, c)| format!("tile {t} has corner {c}")),
    );
    report.record(
        "each point is a reflex corner of at most one tile",
        reused.is_none(),
        reused.map_or(String::new(), |(pi, a, b)| {
            format!("point {pi} appears in tiles {a} and {b}")
        }),
    );

    report
}

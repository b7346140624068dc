//! Exact optimization for small instances: branch and bound over the
//! per-anchor candidate grid, and exhaustive search over greedy orders.
//!
//! A rectangle in a packing may not contain another point of the set in
//! its interior; together with maximality this pins every optimal
//! rectangle's upper-right corner to a grid of other points' coordinates,
//! so enumerating that grid per anchor is exhaustive.

use crate::error::{Error, Result};
use crate::geom::{sweep_order, AnchoredPacking, Order, Point, PointSet, Rect};
use crate::greedy::greedy_packing;
use crate::scalar::Scalar;
use num_traits::{One, Zero};
use std::cmp::Reverse;

/// Search limits and rules for [`optimal_packing_with`].
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Largest instance the solver accepts.
    pub max_n: usize,
    /// Whether anchors may receive zero-area rectangles. When false, every
    /// anchor must get positive area and instances that cannot (a point on
    /// the top or right edge, say) are infeasible.
    pub allow_degenerate: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_n: 7,
            allow_degenerate: true,
        }
    }
}

/// Outcome of the exact search.
#[derive(Debug, Clone)]
pub struct OptimalResult {
    /// A maximum-coverage packing, rectangles in sweep order.
    pub packing: AnchoredPacking,
    /// Its total covered area.
    pub value: Scalar,
    /// Search tree nodes visited.
    pub nodes_explored: u64,
}

/// All positive-area rectangles anchored at `anchor` whose upper-right
/// corner lies on the coordinate grid of the other points (plus the square
/// boundary) and whose interior avoids every point of `ps`, largest first.
fn candidates_for(ps: &PointSet, anchor: &Point) -> Vec<Rect> {
    let one = Scalar::one();
    let mut xs: Vec<&Scalar> = ps.iter().map(|q| &q.x).filter(|v| **v > anchor.x).collect();
    xs.push(&one);
    xs.sort();
    xs.dedup();
    let mut ys: Vec<&Scalar> = ps.iter().map(|q| &q.y).filter(|v| **v > anchor.y).collect();
    ys.push(&one);
    ys.sort();
    ys.dedup();

    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            let r = Rect {
                lo: anchor.clone(),
                hi: Point::new((*x).clone(), (*y).clone()),
            };
            if r.is_degenerate() || ps.iter().any(|q| r.contains_interior(q)) {
                continue;
            }
            out.push(r);
        }
    }
    out.sort_by_cached_key(|r| Reverse(r.area()));
    out
}

struct Search<'a> {
    slots: &'a [Vec<Rect>],
    suffix: &'a [Scalar],
    chosen: Vec<Rect>,
    best_value: Scalar,
    best_rects: Vec<Rect>,
    have_best: bool,
    nodes: u64,
}

impl Search<'_> {
    fn dfs(&mut self, i: usize, sum: &Scalar) {
        self.nodes += 1;
        if i == self.slots.len() {
            if !self.have_best || *sum > self.best_value {
                self.have_best = true;
                self.best_value = sum.clone();
                self.best_rects = self.chosen.clone();
            }
            return;
        }
        if self.have_best && sum + &self.suffix[i] <= self.best_value {
            return;
        }
        let slots = self.slots;
        for c in &slots[i] {
            if !c.is_degenerate() && self.chosen.iter().any(|r| r.interiors_intersect(c)) {
                continue;
            }
            self.chosen.push(c.clone());
            let next = sum + c.area();
            self.dfs(i + 1, &next);
            self.chosen.pop();
        }
    }
}

/// [`optimal_packing_with`] under the default configuration.
pub fn optimal_packing(ps: &PointSet) -> Result<OptimalResult> {
    optimal_packing_with(ps, &SolverConfig::default())
}

/// Finds a packing of maximum total area by branch and bound: anchors in
/// sweep order, candidates largest first, pruned by the sum of remaining
/// per-anchor maxima. Exact arithmetic throughout; ties keep the first
/// assignment found, so the result is deterministic.
pub fn optimal_packing_with(ps: &PointSet, config: &SolverConfig) -> Result<OptimalResult> {
    let n = ps.len();
    if n > config.max_n {
        return Err(Error::InstanceTooLarge {
            n,
            cap: config.max_n,
        });
    }
    let order = sweep_order(ps);
    let mut slots = Vec::with_capacity(n);
    for &pi in order.indices() {
        let mut cands = candidates_for(ps, &ps[pi]);
        if config.allow_degenerate {
            cands.push(Rect::point(ps[pi].clone()));
        } else if cands.is_empty() {
            return Err(Error::Infeasible(format!(
                "no positive-area rectangle fits at {}",
                ps[pi]
            )));
        }
        slots.push(cands);
    }
    let mut suffix = vec![Scalar::zero(); n + 1];
    for i in (0..n).rev() {
        let top = slots[i]
            .first()
            .map(|r| r.area())
            .unwrap_or_else(Scalar::zero);
        suffix[i] = &suffix[i + 1] + top;
    }

    let mut search = Search {
        slots: &slots,
        suffix: &suffix,
        chosen: Vec::new(),
        best_value: Scalar::zero(),
        best_rects: Vec::new(),
        have_best: false,
        nodes: 0,
    };
    search.dfs(0, &Scalar::zero());
    if !search.have_best {
        return Err(Error::Infeasible(
            "no complete assignment of disjoint rectangles".into(),
        ));
    }
    Ok(OptimalResult {
        packing: AnchoredPacking::new(order.indices().to_vec(), search.best_rects),
        value: search.best_value,
        nodes_explored: search.nodes,
    })
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Maximizes greedy coverage over all `n!` orders, keeping only orders
/// whose output is a legal packing (no rectangle may contain another point
/// of the set in its interior; an order that walls a point inside an
/// earlier rectangle is discarded). Returns the first best order in
/// lexicographic position order together with its packing.
///
/// The sweep order never produces an illegal packing, so a result always
/// exists. Instances above `n = 8` are rejected.
pub fn best_permutation(ps: &PointSet) -> Result<(Order, AnchoredPacking)> {
    const CAP: usize = 8;
    let n = ps.len();
    if n > CAP {
        return Err(Error::InstanceTooLarge { n, cap: CAP });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(Order, AnchoredPacking, Scalar)> = None;
    loop {
        let order = Order::new(perm.clone(), n).expect("permutation by construction");
        let packing = greedy_packing(ps, &order)?;
        let legal = !packing
            .rects
            .iter()
            .any(|r| ps.iter().any(|q| r.contains_interior(q)));
        if legal {
            let cov = packing.coverage();
            let better = match &best {
                None => true,
                Some((_, _, incumbent)) => cov > *incumbent,
            };
            if better {
                best = Some((order, packing, cov));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (order, packing, _) = best.expect("the sweep order always yields a legal packing");
    Ok((order, packing))
}

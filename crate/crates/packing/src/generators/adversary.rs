//! A point sequence that keeps any greedy packer below a chosen coverage.
//!
//! The square is packed with staircases whose inscribed rectangles are all
//! small relative to the staircase (total staircase area at least
//! `1 − ε/2`). Each staircase's points are revealed so that the packer is
//! forced to spend its turn on the staircase's one maximal rectangle plus
//! a few slivers that wall the rest of the staircase off, and regions are
//! visited so that everything up and to the right of a staircase is
//! already sealed when its anchor appears.

use crate::error::{Error, Result};
use crate::geom::{Point, Rect, StaircasePolygon};
use crate::scalar::{int, pow2, ratio, Scalar};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::hyperbola_staircase;

/// Resource cap for the construction; the number of staircases needed
/// grows explosively as `epsilon` shrinks.
#[derive(Debug, Clone, Copy)]
pub struct AdversaryLimits {
    pub max_staircases: usize,
}

impl Default for AdversaryLimits {
    fn default() -> Self {
        AdversaryLimits {
            max_staircases: 20_000,
        }
    }
}

/// The constructed reveal sequence plus the staircase packing behind it.
#[derive(Debug, Clone)]
pub struct AdversarySequence {
    /// Points in reveal order; the origin is last.
    pub points: Vec<Point>,
    /// The coverage bound the sequence enforces.
    pub epsilon: Scalar,
    /// The placed staircases, for auditing the construction.
    pub inventory: Vec<StaircasePolygon>,
}

/// Free rectangle waiting for a staircase, largest area first; ties go to
/// the earliest insertion so the construction is deterministic.
struct PoolEntry {
    area: Scalar,
    seq: usize,
    rect: Rect,
    parent: Option<usize>,
    slot: usize,
}

impl PartialEq for PoolEntry {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}

impl Eq for PoolEntry {}

impl PartialOrd for PoolEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PoolEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.area
            .cmp(&other.area)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Node {
    staircase: StaircasePolygon,
    container: Rect,
    children: Vec<(usize, usize)>,
}

/// [`adversarial_sequence_with`] under the default limits.
pub fn adversarial_sequence(epsilon: &Scalar) -> Result<AdversarySequence> {
    adversarial_sequence_with(epsilon, &AdversaryLimits::default())
}

/// Builds the adversary sequence for `epsilon` in (0, 1).
///
/// Staircases use `β = 2/ε` and `m = ⌈8/ε⌉` steps, are inset by a fixed
/// dyadic gap inside their rectangles (the root keeps its corner on the
/// origin), and have their step heights scaled by `1 − (m−k)·θ` for a
/// dyadic `θ` small enough to keep every audit invariant: the scaling
/// makes the full-width bottom slab the unique maximum rectangle while
/// the maximum stays under `area/β`. The residue of each placement is
/// split into vertical sectors that rejoin the pool, largest first, until
/// the placed area reaches `1 − ε/2`.
pub fn adversarial_sequence_with(
    epsilon: &Scalar,
    limits: &AdversaryLimits,
) -> Result<AdversarySequence> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    if *epsilon <= zero || *epsilon >= one {
        return Err(Error::InvalidParameter(
            "adversary epsilon must be strictly between 0 and 1".into(),
        ));
    }

    let beta = int(2) / epsilon;
    let m = (int(8) / epsilon)
        .ceil()
        .to_integer()
        .to_usize()
        .expect("step count fits a machine word");
    let mi = int(m as i64);
    let beta_eff = &beta + &one / &mi;
    let r = (&mi - &one) / (&mi - &beta_eff);

    // θ must keep the perturbed heights strictly decreasing and the
    // maximum rectangle strictly under area/β.
    let slack = one.clone() / (int(2) * &mi * &mi * &beta_eff);
    let monotone = (&r - &one) / (&r * int(2) * &mi);
    let bound = if slack < monotone { slack } else { monotone };
    let mut theta = ratio(1, 2);
    while theta > bound {
        theta /= int(2);
    }

    let g = pow2(-40);
    let quarter_g = &g / int(4);
    let target = &one - epsilon / int(2);

    let mut heap = BinaryHeap::new();
    heap.push(PoolEntry {
        area: one.clone(),
        seq: 0,
        rect: Rect::unit(),
        parent: None,
        slot: 0,
    });
    let mut seq = 1usize;
    let mut nodes: Vec<Node> = Vec::new();
    let mut covered = Scalar::zero();

    while covered < target {
        let entry = match heap.pop() {
            Some(e) => e,
            None => {
                return Err(Error::Infeasible(
                    "sector pool exhausted before reaching the target area".into(),
                ))
            }
        };
        if nodes.len() >= limits.max_staircases {
            return Err(Error::Infeasible(format!(
                "construction for ε = {epsilon} needs more than {} staircases",
                limits.max_staircases
            )));
        }
        let rect = entry.rect;
        // Every staircase is inset by g except that the root keeps its
        // lower-left corner: the origin must itself be a revealed point.
        let (ax, ay) = if entry.parent.is_none() {
            (rect.lo.x.clone(), rect.lo.y.clone())
        } else {
            (&rect.lo.x + &g, &rect.lo.y + &g)
        };
        let h = &rect.hi.y - &ay - &g;
        let w = &rect.hi.x - &ax - &g;
        if !h.is_positive() || !w.is_positive() {
            continue;
        }
        let local = hyperbola_staircase(&beta, &h, &w, m)?;
        let steps = local.steps();

        let node_idx = nodes.len();
        // Vertical sectors above columns 2..m, spanning to the container
        // top; the thin margins around the staircase stay uncovered.
        for k in 1..m {
            let sector = Rect::new(
                Point::new(&ax + &steps[k - 1].x, &ay + &steps[k].y),
                Point::new(&ax + &steps[k].x, rect.hi.y.clone()),
            )?;
            let area = sector.area();
            heap.push(PoolEntry {
                area,
                seq,
                rect: sector,
                parent: Some(node_idx),
                slot: k + 1,
            });
            seq += 1;
        }

        let mut psteps = Vec::with_capacity(m);
        for (k, s) in steps.iter().enumerate() {
            let scale = &one - &theta * int((m - 1 - k) as i64);
            psteps.push(Point::new(&ax + &s.x, &ay + &s.y * scale));
        }
        let staircase = StaircasePolygon::new(Point::new(ax, ay), psteps)?;
        covered += staircase.area();

        if let Some(parent) = entry.parent {
            nodes[parent].children.push((entry.slot, node_idx));
        }
        nodes.push(Node {
            staircase,
            container: rect,
            children: Vec::new(),
        });
    }

    let mut points = Vec::new();
    emit_group(&nodes, 0, &quarter_g, &mut points);

    let inventory: Vec<StaircasePolygon> = nodes.into_iter().map(|n| n.staircase).collect();
    Ok(AdversarySequence {
        points,
        epsilon: epsilon.clone(),
        inventory,
    })
}

/// Reveals a subtree: sectors right to left first, so everything up and
/// to the right is sealed, then the node's own group. Within a group the
/// boundary vertices run from the top-left corner along the chain to the
/// bottom-right corner, then the anchor, then the plug point just left of
/// the anchor (skipped on the square's left edge, where nothing can
/// approach from the left). The root's anchor is the origin and comes
/// last overall.
fn emit_group(nodes: &[Node], idx: usize, quarter_g: &Scalar, out: &mut Vec<Point>) {
    let node = &nodes[idx];
    let mut kids = node.children.clone();
    kids.sort_by_key(|child| std::cmp::Reverse(child.0));
    for (_, child) in kids {
        emit_group(nodes, child, quarter_g, out);
    }

    let anchor = node.staircase.anchor();
    let steps = node.staircase.steps();
    let last = steps.last().expect("staircases have at least one step");

    out.push(Point::new(anchor.x.clone(), steps[0].y.clone()));
    for k in 0..steps.len() {
        out.push(steps[k].clone());
        if k + 1 < steps.len() {
            out.push(Point::new(steps[k].x.clone(), steps[k + 1].y.clone()));
        }
    }
    out.push(Point::new(last.x.clone(), anchor.y.clone()));
    out.push(anchor.clone());
    if node.container.lo.x.is_positive() {
        out.push(Point::new(
            &node.container.lo.x + quarter_g,
            (&anchor.y + &last.y) / int(2),
        ));
    }
}

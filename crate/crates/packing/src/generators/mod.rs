//! Instance constructors: diagonal sets, permutation grids with their
//! half-plus covering packings, seeded random sets, staircases hugging a
//! hyperbola, densified sets, and the multi-round adversary sequence.

use crate::error::{Error, Result};
use crate::geom::{is_permutation, AnchoredPacking, Point, PointSet, Rect, StaircasePolygon};
use crate::scalar::{int, ratio, Scalar};
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod adversary;

pub use adversary::{
    adversarial_sequence, adversarial_sequence_with, AdversaryLimits, AdversarySequence,
};

/// `n` equally spaced points on the main diagonal, origin included.
pub fn diagonal(n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("diagonal needs n ≥ 1".into()));
    }
    let points = (0..n)
        .map(|i| {
            let v = ratio(i as i64, n as i64);
            Point::new(v.clone(), v)
        })
        .collect();
    PointSet::new(points)
}

/// The grid instance of a permutation with `perm[0] = 0`: points
/// `(i/n, perm[i]/n)` together with the explicit packing that assigns
/// point `i` the rectangle `[i/n, 1] × [perm[i]/n, (perm[i]+1)/n]`.
/// Its coverage is exactly `(n+1)/(2n)`.
pub fn permutation_grid(perm: &[usize]) -> Result<(PointSet, AnchoredPacking)> {
    let n = perm.len();
    if n == 0 || !is_permutation(perm, n) {
        return Err(Error::InvalidParameter(
            "permutation_grid needs a permutation of 0..n with n ≥ 1".into(),
        ));
    }
    if perm[0] != 0 {
        return Err(Error::InvalidParameter(
            "permutation_grid needs perm[0] = 0 so the origin is a point".into(),
        ));
    }
    let nn = n as i64;
    let one = Scalar::one();
    let mut points = Vec::with_capacity(n);
    let mut rects = Vec::with_capacity(n);
    for (i, &pi) in perm.iter().enumerate() {
        let x = ratio(i as i64, nn);
        let y = ratio(pi as i64, nn);
        let top = ratio(pi as i64 + 1, nn);
        points.push(Point::new(x.clone(), y.clone()));
        rects.push(Rect::new(Point::new(x, y), Point::new(one.clone(), top))?);
    }
    let ps = PointSet::new(points)?;
    Ok((ps, AnchoredPacking::new((0..n).collect(), rects)))
}

/// The origin plus `n − 1` further points with coordinates `k/2³²` drawn
/// from a seeded deterministic generator; collisions are redrawn.
pub fn uniform_random(n: usize, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("uniform_random needs n ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(n);
    seen.insert((0u32, 0u32));
    let mut points = vec![Point::origin()];
    while points.len() < n {
        let kx = rng.next_u32();
        let ky = rng.next_u32();
        if !seen.insert((kx, ky)) {
            continue;
        }
        let denom = 1i64 << 32;
        points.push(Point::new(ratio(kx as i64, denom), ratio(ky as i64, denom)));
    }
    PointSet::new(points)
}

/// A staircase of height `h`, width `w`, and `m` steps whose outer corners
/// all lie on a common hyperbola `x·y = c`, anchored at the origin.
///
/// The corner heights decrease geometrically with ratio
/// `r = (m−1)/(m−β−1/m)`, which makes the area exactly `(β + 1/m)·c`, so
/// every inscribed rectangle (area at most `c`) stays strictly below
/// `area/β`. As `m` grows the area increases toward `β·e^{1−β}·h·w`.
///
/// A single step forces `β = 1` and gives the plain `w × h` rectangle,
/// whose maximum rectangle equals its area.
pub fn hyperbola_staircase(
    beta: &Scalar,
    h: &Scalar,
    w: &Scalar,
    m: usize,
) -> Result<StaircasePolygon> {
    let one = Scalar::one();
    if *beta < one {
        return Err(Error::InvalidParameter("β must be at least 1".into()));
    }
    if !h.is_positive() || !w.is_positive() {
        return Err(Error::InvalidParameter(
            "staircase height and width must be positive".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidParameter(
            "a staircase needs at least one step".into(),
        ));
    }
    if m == 1 {
        if *beta != one {
            return Err(Error::Infeasible(
                "a one-step staircase is a rectangle and only realizes β = 1".into(),
            ));
        }
        return StaircasePolygon::new(Point::origin(), vec![Point::new(w.clone(), h.clone())]);
    }
    let mi = int(m as i64);
    let beta_eff = beta + &one / &mi;
    if beta_eff >= mi {
        return Err(Error::Infeasible(format!(
            "need m > β + 1/m to keep the step ratio above 1; got m = {m}"
        )));
    }
    let r = (&mi - &one) / (&mi - &beta_eff);
    let mut c = h * w;
    for _ in 1..m {
        c /= &r;
    }
    let mut steps = Vec::with_capacity(m);
    let mut y = h.clone();
    for _ in 0..m {
        steps.push(Point::new(&c / &y, y.clone()));
        y /= &r;
    }
    StaircasePolygon::new(Point::origin(), steps)
}

/// Adds, for every point interior to the unit square, the two companions
/// `(x−eps, y)` and `(x, y−eps)` that stay inside the square.
///
/// Requires pairwise distinct coordinate sums and `eps` strictly smaller
/// than their smallest gap, so each companion pair sits strictly between
/// its source's sweep line and the next one down. The result has at most
/// `3n − 2` points.
pub fn densify(ps: &PointSet, eps: &Scalar) -> Result<PointSet> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("densify needs eps > 0".into()));
    }
    let mut sums: Vec<Scalar> = ps.iter().map(Point::coord_sum).collect();
    sums.sort();
    for pair in sums.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::GeneralPosition(
                "two points share a coordinate sum".into(),
            ));
        }
        if &pair[1] - &pair[0] <= *eps {
            return Err(Error::InvalidParameter(
                "eps must be smaller than the smallest sweep-line gap".into(),
            ));
        }
    }
    let zero = Scalar::zero();
    let one = Scalar::one();
    let mut points = ps.points().to_vec();
    for p in ps.iter() {
        let interior = p.x > zero && p.x < one && p.y > zero && p.y < one;
        if !interior {
            continue;
        }
        let cx = &p.x - eps;
        if cx >= zero {
            points.push(Point::new(cx, p.y.clone()));
        }
        let cy = &p.y - eps;
        if cy >= zero {
            points.push(Point::new(p.x.clone(), cy));
        }
    }
    PointSet::new(points)
}

//! Command handlers behind the argument parser.

use crate::files::{self, InstanceFile, ResultFile};
use crate::render;
use crate::{BoundsMode, Command, Failure, GenerateKind, OrderChoice, PackAlgo};
use anchoredpack::bounds::{integrated_lower_bound, optimize_bounds, simple_lower_bound};
use anchoredpack::diagnostics::verify_empty_triangles;
use anchoredpack::error::Error;
use anchoredpack::generators::{
    adversarial_sequence_with, densify, diagonal, hyperbola_staircase, permutation_grid,
    uniform_random, AdversaryLimits,
};
use anchoredpack::geom::{
    sweep_order, verify_packing, AnchoredPacking, Order, Point, PointSet, Rect, StaircasePolygon,
};
use anchoredpack::greedy::greedy_packing;
use anchoredpack::report::VerificationReport;
use anchoredpack::scalar::{approx, int, Scalar};
use anchoredpack::solver::{optimal_packing_with, SolverConfig};
use anchoredpack::tiling::{tile_packing, verify_tiling};
use serde::Serialize;
use std::path::Path;

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate(kind) => generate(kind),
        Command::Pack {
            algo,
            input,
            out,
            order,
        } => pack(algo, &input, &out, order),
        Command::Verify { input, result } => verify(&input, &result),
        Command::Optimal { input, max_n, out } => optimal(&input, max_n, out.as_deref()),
        Command::Bounds {
            mode,
            beta,
            lambda,
            beta0,
        } => bounds(mode, beta, lambda, beta0),
        Command::Render { input, result, out } => render_figure(&input, &result, &out),
    }
}

fn write_instance(path: &Path, ps: &PointSet, order: Option<Vec<usize>>) -> Result<(), Failure> {
    let file = InstanceFile::from_points(ps, order);
    files::write_json(path, &file)?;
    println!("wrote {} ({} points)", path.display(), ps.len());
    Ok(())
}

fn parse_permutation(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Failure(format!("bad permutation entry {:?}", t.trim())))
        })
        .collect()
}

fn generate(kind: GenerateKind) -> Result<(), Failure> {
    match kind {
        GenerateKind::Diagonal { n, out } => {
            let ps = diagonal(n)?;
            write_instance(&out, &ps, None)
        }
        GenerateKind::Permutation { perm, out } => {
            let perm = parse_permutation(&perm)?;
            let (ps, _) = permutation_grid(&perm)?;
            write_instance(&out, &ps, None)
        }
        GenerateKind::Random { n, seed, out } => {
            let ps = uniform_random(n, seed)?;
            write_instance(&out, &ps, None)
        }
        GenerateKind::Adversary {
            epsilon,
            max_staircases,
            out,
        } => {
            let eps = files::parse_scalar(&epsilon)?;
            let limits = max_staircases
                .map(|m| AdversaryLimits { max_staircases: m })
                .unwrap_or_default();
            let seq = adversarial_sequence_with(&eps, &limits)?;
            let n = seq.points.len();
            let mut slots: Vec<usize> = (0..n).collect();
            slots.sort_by(|&a, &b| {
                (&seq.points[a].x, &seq.points[a].y).cmp(&(&seq.points[b].x, &seq.points[b].y))
            });
            let sorted: Vec<Point> = slots.iter().map(|&i| seq.points[i].clone()).collect();
            let mut order = vec![0usize; n];
            for (slot, &reveal) in slots.iter().enumerate() {
                order[reveal] = slot;
            }
            let ps = PointSet::new(sorted)?;
            write_instance(&out, &ps, Some(order))?;
            println!("reveal order spans {} staircases", seq.inventory.len());
            Ok(())
        }
        GenerateKind::Hyperbola { beta, m, out } => {
            let beta = files::parse_scalar(&beta)?;
            let one = int(1);
            let stair = hyperbola_staircase(&beta, &one, &one, m)?;
            let mut points = vec![Point::origin()];
            points.extend(stair.steps().iter().cloned());
            let ps = PointSet::new(points)?;
            write_instance(&out, &ps, None)
        }
        GenerateKind::Densify { input, eps, out } => {
            let inst: InstanceFile = files::read_json(&input)?;
            let ps = inst.to_point_set()?;
            let eps = files::parse_scalar(&eps)?;
            let dense = densify(&ps, &eps)?;
            write_instance(&out, &dense, None)
        }
    }
}

fn pack(algo: PackAlgo, input: &Path, out: &Path, choice: OrderChoice) -> Result<(), Failure> {
    let inst: InstanceFile = files::read_json(input)?;
    let ps = inst.to_point_set()?;
    let (label, packing, tiling) = match algo {
        PackAlgo::Tile => {
            if choice == OrderChoice::File {
                return Err(Failure(
                    "--order file only applies to the greedy packer".into(),
                ));
            }
            let (tiling, packing) = tile_packing(&ps);
            ("tile", packing, Some(tiling))
        }
        PackAlgo::Greedy => {
            let (label, order) = match choice {
                OrderChoice::Sweep => ("greedy", sweep_order(&ps)),
                OrderChoice::File => {
                    let indices = inst.order.clone().ok_or_else(|| {
                        Failure("instance has no embedded order; use --order sweep".into())
                    })?;
                    ("greedy-custom", Order::new(indices, ps.len())?)
                }
            };
            (label, greedy_packing(&ps, &order)?, None)
        }
    };
    let file = ResultFile::from_packing(label, &ps, &packing, tiling.as_ref());
    files::write_json(out, &file)?;
    println!("coverage: {} ≈ {:.6}", file.coverage, file.coverage_float);
    println!("wrote {}", out.display());
    Ok(())
}

#[derive(Serialize)]
struct CheckOutput {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyOutput {
    instance: String,
    result: String,
    algorithm: String,
    passed: bool,
    checks: Vec<CheckOutput>,
}

/// Finds a rectangle whose open interior holds an input point, if any.
fn rect_containing_point(ps: &PointSet, rects: &[Rect]) -> Option<(usize, usize)> {
    const SLACK: f64 = 1e-9;
    let pts: Vec<(f64, f64)> = ps.iter().map(|p| (approx(&p.x), approx(&p.y))).collect();
    for (ri, r) in rects.iter().enumerate() {
        if r.is_degenerate() {
            continue;
        }
        let x0 = approx(&r.lo.x) - SLACK;
        let x1 = approx(&r.hi.x) + SLACK;
        let y0 = approx(&r.lo.y) - SLACK;
        let y1 = approx(&r.hi.y) + SLACK;
        for (pi, &(px, py)) in pts.iter().enumerate() {
            if px > x0 && px < x1 && py > y0 && py < y1 && r.contains_interior(&ps[pi]) {
                return Some((ri, pi));
            }
        }
    }
    None
}

fn verify(input: &Path, result_path: &Path) -> Result<(), Failure> {
    let inst: InstanceFile = files::read_json(input)?;
    let ps = inst.to_point_set()?;
    let file: ResultFile = files::read_json(result_path)?;
    let n = ps.len();
    let mut report = VerificationReport::new();

    if let Some(order) = &inst.order {
        let ok = Order::new(order.clone(), n).is_ok();
        report.record(
            "embedded order is a permutation",
            ok,
            if ok {
                String::new()
            } else {
                format!("{} indices for {} points", order.len(), n)
            },
        );
    }

    let mut rects = Vec::with_capacity(file.rects.len());
    let mut corner_ok = true;
    let mut corner_detail = String::new();
    for (i, entry) in file.rects.iter().enumerate() {
        let (anchor, rect) = entry
            .to_rect()
            .map_err(|e| Failure(format!("rectangle {i}: {e}")))?;
        if corner_ok && anchor != rect.lo {
            corner_ok = false;
            corner_detail = format!("rectangle {i} lists anchor {anchor}, corner {}", rect.lo);
        }
        rects.push(rect);
    }
    report.record(
        "anchor fields are lower-left corners",
        corner_ok,
        corner_detail,
    );

    let packing = AnchoredPacking::new((0..rects.len()).collect(), rects);
    report.checks.extend(verify_packing(&ps, &packing).checks);

    match rect_containing_point(&ps, &packing.rects) {
        None => report.record(
            "no rectangle holds an input point in its interior",
            true,
            "",
        ),
        Some((ri, pi)) => report.record(
            "no rectangle holds an input point in its interior",
            false,
            format!("rectangle {ri} strictly contains point {pi}"),
        ),
    }

    let declared = files::parse_scalar(&file.coverage)?;
    let sum = packing.coverage();
    report.record(
        "declared coverage equals the rectangle area sum",
        declared == sum,
        if declared == sum {
            String::new()
        } else {
            format!(
                "declared {}, rectangles sum to {}",
                file.coverage,
                files::format_scalar(&sum)
            )
        },
    );
    let drift = (file.coverage_float - approx(&declared)).abs();
    report.record(
        "coverage float matches the exact coverage",
        drift <= 1e-9,
        if drift <= 1e-9 {
            String::new()
        } else {
            format!("off by {drift:e}")
        },
    );

    let (tiling, tile_pack) = tile_packing(&ps);
    report.checks.extend(verify_tiling(&ps, &tiling).checks);
    report
        .checks
        .extend(verify_empty_triangles(&ps, &tiling).checks);

    if let Some(tiles) = &file.tiles {
        let mut canonical: Vec<Option<&StaircasePolygon>> = vec![None; n];
        for (k, &i) in tiling.anchor_of().iter().enumerate() {
            canonical[i] = Some(&tiling.tiles()[k]);
        }
        let mut ok = tiles.len() == n;
        let mut detail = if ok {
            String::new()
        } else {
            format!("{} tiles for {} points", tiles.len(), n)
        };
        if ok {
            for (i, entry) in tiles.iter().enumerate() {
                let tile = entry
                    .to_staircase()
                    .map_err(|e| Failure(format!("tile {i}: {e}")))?;
                if Some(&tile) != canonical[i] {
                    ok = false;
                    detail = format!("tile {i} differs from the recomputed tiling");
                    break;
                }
            }
        }
        report.record("tiles match the recomputed tiling", ok, detail);
    }

    match file.algorithm.as_str() {
        "tile" => {
            let mut ok = true;
            let mut detail = String::new();
            for i in 0..n {
                if packing.rect_for_point(i) != tile_pack.rect_for_point(i) {
                    ok = false;
                    detail = format!("rectangle for point {i} is not its tile maximum");
                    break;
                }
            }
            report.record("rectangles are the tile maxima", ok, detail);
        }
        "greedy" => {
            let mut ok = true;
            let mut detail = String::new();
            for i in 0..n {
                let got = packing.rect_for_point(i).map(Rect::area);
                let tile = tile_pack.rect_for_point(i).map(Rect::area);
                if got < tile {
                    ok = false;
                    detail = format!("rectangle for point {i} is smaller than its tile maximum");
                    break;
                }
            }
            report.record("per-anchor area at least the tile rectangle's", ok, detail);
        }
        _ => {}
    }

    let output = VerifyOutput {
        instance: input.display().to_string(),
        result: result_path.display().to_string(),
        algorithm: file.algorithm.clone(),
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckOutput {
                name: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&output).map_err(|e| Failure(e.to_string()))?
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure(format!(
            "{} of {} checks failed",
            report.failures().count(),
            report.checks.len()
        )))
    }
}

fn optimal(input: &Path, max_n: Option<usize>, out: Option<&Path>) -> Result<(), Failure> {
    let inst: InstanceFile = files::read_json(input)?;
    let ps = inst.to_point_set()?;
    let cap = max_n
        .or_else(|| {
            std::env::var("ANCHOREDPACK_MAX_N")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| SolverConfig::default().max_n);
    let config = SolverConfig {
        max_n: cap,
        ..SolverConfig::default()
    };
    let result = optimal_packing_with(&ps, &config).map_err(|e| match e {
        Error::InstanceTooLarge { n, cap } => Failure(format!(
            "instance too large: {n} points, the exact solver caps at {cap}"
        )),
        other => Failure::from(other),
    })?;
    let greedy = greedy_packing(&ps, &sweep_order(&ps))?;
    let (_, tile) = tile_packing(&ps);
    let rows: [(&str, Scalar); 3] = [
        ("optimal", result.value.clone()),
        ("greedy", greedy.coverage()),
        ("tile", tile.coverage()),
    ];
    println!("algorithm  coverage");
    for (name, cov) in rows {
        println!(
            "{name:<10} {} ≈ {:.6}",
            files::format_scalar(&cov),
            approx(&cov)
        );
    }
    println!("nodes explored: {}", result.nodes_explored);
    if let Some(path) = out {
        let file = ResultFile::from_packing("optimal", &ps, &result.packing, None);
        files::write_json(path, &file)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure(format!("missing --{flag}")))
}

fn bounds(
    mode: BoundsMode,
    beta: Option<f64>,
    lambda: Option<f64>,
    beta0: Option<f64>,
) -> Result<(), Failure> {
    match mode {
        BoundsMode::Simple => {
            let beta = need(beta, "beta")?;
            let lambda = need(lambda, "lambda")?;
            let value = simple_lower_bound(beta, lambda)?;
            println!("simple coverage lower bound at beta = {beta}, lambda = {lambda}: {value:.9}");
        }
        BoundsMode::Integrated => {
            let beta0 = need(beta0, "beta0")?;
            let lambda = need(lambda, "lambda")?;
            let value = integrated_lower_bound(beta0, lambda)?;
            println!(
                "integrated coverage lower bound at beta0 = {beta0}, lambda = {lambda}: {value:.9}"
            );
        }
        BoundsMode::Optimize => {
            let opt = optimize_bounds();
            println!(
                "simple optimum: beta = {:.3} lambda = {:.3} value = {:.9}",
                opt.simple.beta, opt.simple.lambda, opt.simple.value
            );
            println!(
                "integrated optimum: beta0 = {:.3} lambda = {:.3} value = {:.9}",
                opt.integrated.beta, opt.integrated.lambda, opt.integrated.value
            );
        }
    }
    Ok(())
}

fn render_figure(input: &Path, result_path: &Path, out: &Path) -> Result<(), Failure> {
    let inst: InstanceFile = files::read_json(input)?;
    let ps = inst.to_point_set()?;
    let file: ResultFile = files::read_json(result_path)?;
    let mut rects = Vec::with_capacity(file.rects.len());
    for (i, entry) in file.rects.iter().enumerate() {
        let (_, rect) = entry
            .to_rect()
            .map_err(|e| Failure(format!("rectangle {i}: {e}")))?;
        rects.push(rect);
    }
    let tiles = match &file.tiles {
        None => None,
        Some(entries) => {
            let mut tiles = Vec::with_capacity(entries.len());
            for (i, entry) in entries.iter().enumerate() {
                tiles.push(
                    entry
                        .to_staircase()
                        .map_err(|e| Failure(format!("tile {i}: {e}")))?,
                );
            }
            Some(tiles)
        }
    };
    let svg = render::figure(&ps, &rects, tiles.as_deref());
    std::fs::write(out, svg)
        .map_err(|e| Failure(format!("cannot write {}: {e}", out.display())))?;
    println!("wrote {}", out.display());
    Ok(())
}

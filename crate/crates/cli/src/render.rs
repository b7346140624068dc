//! SVG figures: filled rectangles, outlined tiles, and input points as
//! dots, drawn in a 1000 × 1000 viewBox with the origin at the bottom left.

use anchoredpack::geom::{PointSet, Rect, StaircasePolygon};
use anchoredpack::scalar::{approx, Scalar};
use std::fmt::Write;

const SIZE: f64 = 1000.0;
const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc949", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

fn sx(v: &Scalar) -> String {
    format!("{:.2}", SIZE * approx(v))
}

fn sy(v: &Scalar) -> String {
    format!("{:.2}", SIZE - SIZE * approx(v))
}

fn span(lo: &Scalar, hi: &Scalar) -> String {
    format!("{:.2}", SIZE * approx(&(hi - lo)))
}

/// Renders the figure; output is byte-identical for identical input.
pub fn figure(ps: &PointSet, rects: &[Rect], tiles: Option<&[StaircasePolygon]>) -> String {
    let mut svg = String::new();
    let out = &mut svg;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">"
    )
    .unwrap();
    writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>"
    )
    .unwrap();

    for (i, r) in rects.iter().enumerate() {
        if r.is_degenerate() {
            continue;
        }
        writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"0.8\" stroke=\"#333333\" stroke-opacity=\"0.6\" stroke-width=\"1\"/>",
            sx(&r.lo.x),
            sy(&r.hi.y),
            span(&r.lo.x, &r.hi.x),
            span(&r.lo.y, &r.hi.y),
            PALETTE[i % PALETTE.len()],
        )
        .unwrap();
    }

    if let Some(tiles) = tiles {
        for tile in tiles {
            let mut path = String::new();
            for (k, v) in tile.boundary_vertices().iter().enumerate() {
                let op = if k == 0 { 'M' } else { 'L' };
                write!(path, "{op} {},{} ", sx(&v.x), sy(&v.y)).unwrap();
            }
            path.push('Z');
            writeln!(
                out,
                "<path d=\"{path}\" fill=\"none\" stroke=\"#1d1d1d\" stroke-width=\"1.5\"/>"
            )
            .unwrap();
        }
    }

    writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>"
    )
    .unwrap();

    for p in ps.iter() {
        writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#111111\"/>",
            sx(&p.x),
            sy(&p.y)
        )
        .unwrap();
    }

    writeln!(out, "</svg>").unwrap();
    svg
}

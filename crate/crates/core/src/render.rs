//! Orbits of rank-3 mirror simplices drawn in an affine chart, and SVG
//! output.
//!
//! The simplex is the cone `{x : alpha_s(x) <= 0}`, whose vertices are the
//! negated basis vectors, so the tile of a group element `g` has vertices
//! `-g e_t`. All tiles are projected to the chart `phi = 1`, where projective
//! segments are straight.

use std::fmt::Write as _;

use nalgebra::Vector3;
use serde::Serialize;
use thiserror::Error;

use crate::vinberg::group::{enumerate_group, DEFAULT_DEDUP_TOL};
use crate::vinberg::perron::{perron_type, PerronKind, PERRON_ZERO_TOL};
use crate::vinberg::simplex::MirrorSimplex;
use crate::vinberg::VinbergError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("tilings need a rank-3 simplex, got rank {0}")]
    WrongRank(usize),
    #[error("Cartan matrix is reducible")]
    Reducible,
    #[error("Cartan matrix is of {0:?} type, not negative type")]
    NotNegativeType(PerronKind),
    #[error("no affine chart: vertex {vertex} of tile {tile} pairs to {value} with the chart functional")]
    ChartFailure { tile: usize, vertex: usize, value: f64 },
    #[error(transparent)]
    Vinberg(#[from] VinbergError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tile {
    pub length: usize,
    pub word: Vec<usize>,
    /// Chart coordinates of the three vertices.
    pub vertices: [[f64; 2]; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tiling2D {
    /// Chart functional, a unit vector.
    pub phi: [f64; 3],
    /// Orthonormal basis of the kernel of `phi` used for chart coordinates.
    pub basis: [[f64; 3]; 2],
    pub tiles: Vec<Tile>,
    pub depth: usize,
}

impl Tiling2D {
    /// Chart coordinates of a direction with positive `phi`.
    pub fn project(&self, x: &[f64; 3]) -> [f64; 2] {
        let dot = |u: &[f64; 3]| u[0] * x[0] + u[1] * x[1] + u[2] * x[2];
        let h = dot(&self.phi);
        [dot(&self.basis[0]) / h, dot(&self.basis[1]) / h]
    }
}

/// Vertex directions `-g e_t` of every tile.
fn orbit_directions(matrices: &[nalgebra::DMatrix<f64>]) -> Vec<[Vector3<f64>; 3]> {
    matrices
        .iter()
        .map(|g| [0, 1, 2].map(|t| -Vector3::new(g[(0, t)], g[(1, t)], g[(2, t)])))
        .collect()
}

pub fn tile_orbit(s: &MirrorSimplex, depth: usize) -> Result<Tiling2D, RenderError> {
    if s.rank() != 3 {
        return Err(RenderError::WrongRank(s.rank()));
    }
    let perron = match perron_type(&s.cartan, PERRON_ZERO_TOL) {
        Err(VinbergError::Reducible) => return Err(RenderError::Reducible),
        other => other?,
    };
    if perron.kind != PerronKind::Negative {
        return Err(RenderError::NotNegativeType(perron.kind));
    }
    let group = enumerate_group(s, depth, DEFAULT_DEDUP_TOL)?;
    let matrices: Vec<_> = group.elements.iter().map(|e| e.matrix.clone()).collect();
    let dirs = orbit_directions(&matrices);

    let mut mean = Vector3::zeros();
    for tri in &dirs {
        for v in tri {
            mean += v.normalize();
        }
    }
    let phi = mean.normalize();
    for (tile, tri) in dirs.iter().enumerate() {
        for (vertex, v) in tri.iter().enumerate() {
            let value = phi.dot(v);
            if value.is_nan() || value <= 0.0 {
                return Err(RenderError::ChartFailure { tile, vertex, value });
            }
        }
    }
    // any vector not parallel to phi seeds the chart basis
    let seed = if phi.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = (seed - phi * phi.dot(&seed)).normalize();
    let e2 = phi.cross(&e1);

    let tiles = group
        .elements
        .iter()
        .zip(&dirs)
        .map(|(el, tri)| Tile {
            length: el.length,
            word: el.word.clone(),
            vertices: tri.map(|v| {
                let h = phi.dot(&v);
                [e1.dot(&v) / h, e2.dot(&v) / h]
            }),
        })
        .collect();
    Ok(Tiling2D {
        phi: [phi.x, phi.y, phi.z],
        basis: [[e1.x, e1.y, e1.z], [e2.x, e2.y, e2.z]],
        tiles,
        depth,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    /// Fill colors; depth `k` uses entry `k mod len`.
    pub palette: Vec<String>,
    pub stroke: String,
    pub stroke_width: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width: 800.0,
            height: 800.0,
            margin: 10.0,
            palette: ["#1f3b73", "#3567b0", "#5d93d6", "#8fbbe8", "#c3dcf3", "#eef5fb"]
                .map(String::from)
                .to_vec(),
            stroke: "#0b1020".to_string(),
            stroke_width: 0.5,
        }
    }
}

pub fn emit_svg(t: &Tiling2D, style: &SvgStyle) -> String {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for tile in &t.tiles {
        for p in &tile.vertices {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    if t.tiles.is_empty() {
        (lo, hi) = ([-1.0; 2], [1.0; 2]);
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let scale = ((style.width - 2.0 * style.margin).min(style.height - 2.0 * style.margin) / span).max(0.0);
    let map = |p: &[f64; 2]| {
        let x = style.margin + (p[0] - lo[0]) * scale;
        let y = style.height - style.margin - (p[1] - lo[1]) * scale;
        (x, y)
    };

    let max_depth = t.tiles.iter().map(|tile| tile.length).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.6}\" height=\"{h:.6}\" viewBox=\"0 0 {w:.6} {h:.6}\">",
        w = style.width,
        h = style.height
    );
    out.push_str("<style>\n");
    let _ = writeln!(
        out,
        "path {{ stroke: {}; stroke-width: {:.6}; stroke-linejoin: round; }}",
        style.stroke, style.stroke_width
    );
    if !style.palette.is_empty() {
        for k in 0..=max_depth {
            let _ = writeln!(out, ".depth-{k} {{ fill: {}; }}", style.palette[k % style.palette.len()]);
        }
    }
    out.push_str("</style>\n<g>\n");
    for tile in &t.tiles {
        let [a, b, c] = tile.vertices.each_ref().map(map);
        let _ = writeln!(
            out,
            "<path class=\"depth-{}\" d=\"M {:.6} {:.6} L {:.6} {:.6} L {:.6} {:.6} Z\"/>",
            tile.length, a.0, a.1, b.0, b.1, c.0, c.1
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

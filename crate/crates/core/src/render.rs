//! SVG pictures of the alcoves in a ball of `W_a`, for rank at most 2.
//!
//! Vertices are exact rationals in root coordinates; the planar embedding
//! is applied only when coordinates are written out.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::{h1_class, section_of};
use crate::error::{AlcoveError, Result};
use crate::linalg;
use crate::rootsys::RootSystem;
use crate::shi::{lambda_of, shi_vector};
use crate::weyl::{enumerate_ball, AffineElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coloring {
    Orientation,
    Component,
    H1class,
}

impl FromStr for Coloring {
    type Err = AlcoveError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "orientation" => Ok(Coloring::Orientation),
            "component" => Ok(Coloring::Component),
            "h1class" | "h1" => Ok(Coloring::H1class),
            _ => Err(AlcoveError::Parse(format!("unknown coloring `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub radius: usize,
    pub coloring: Coloring,
    pub width: u32,
    pub height: u32,
    pub labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            radius: 6,
            coloring: Coloring::Orientation,
            width: 800,
            height: 800,
            labels: false,
        }
    }
}

pub const PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
];

const PRECISION: usize = 4;

/// Vertices of the fundamental alcove: `0` and `v_i` with
/// `<v_i, alpha_j^vee> = delta_ij / c_i`, where `phi^vee = sum c_i alpha_i^vee`.
pub fn fundamental_vertices(rs: &RootSystem) -> Vec<Vec<BigRational>> {
    let n = rs.rank();
    let inv = linalg::rational_inverse(&linalg::transpose(rs.cartan()))
        .expect("Cartan matrices are invertible");
    let phi = rs.root(rs.highest_coroot());
    let mut out = vec![vec![BigRational::zero(); n]];
    for i in 0..n {
        let c = BigRational::from_integer(phi.coroot_coords[i].into());
        out.push((0..n).map(|r| &inv[r][i] / &c).collect());
    }
    out
}

/// Exact vertices of `A_w = w A_e` in root coordinates.
pub fn alcove_vertices(rs: &RootSystem, w: &AffineElement) -> Vec<Vec<BigRational>> {
    fundamental_vertices(rs)
        .iter()
        .map(|v| w.apply(v).expect("rank checked"))
        .collect()
}

/// Images of the simple roots in the plane, from the Gram matrix.
fn basis(rs: &RootSystem) -> Vec<(f64, f64)> {
    let g = rs.gram();
    let n1 = (g[0][0] as f64).sqrt();
    if rs.rank() == 1 {
        return vec![(n1, 0.0)];
    }
    let n2 = (g[1][1] as f64).sqrt();
    let cos = g[0][1] as f64 / (n1 * n2);
    let sin = (1.0 - cos * cos).sqrt();
    vec![(n1, 0.0), (n2 * cos, n2 * sin)]
}

fn embed(basis: &[(f64, f64)], p: &[BigRational]) -> (f64, f64) {
    p.iter().zip(basis).fold((0.0, 0.0), |(x, y), (c, b)| {
        let c = c.to_f64().expect("finite coordinate");
        (x + c * b.0, y + c * b.1)
    })
}

fn fmt_num(x: f64) -> String {
    let s = format!("{:.*}", PRECISION, x);
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

struct Cell {
    points: Vec<(f64, f64)>,
    key: Vec<i64>,
    word: String,
    k: Vec<i64>,
}

/// Renders the ball of the given radius as an SVG 1.1 document.
pub fn render(rs: &RootSystem, spec: &RenderSpec) -> Result<String> {
    if rs.rank() > 2 {
        return Err(AlcoveError::RankTooLarge(rs.rank()));
    }
    let basis = basis(rs);
    let ball = enumerate_ball(rs, spec.radius);
    let cells: Vec<Cell> = ball
        .iter()
        .map(|b| {
            let v = shi_vector(rs, &b.element);
            let key = match spec.coloring {
                Coloring::Orientation => b.element.finite().matrix().concat(),
                Coloring::Component => lambda_of(rs, &v).entries().to_vec(),
                Coloring::H1class => h1_class(rs, &section_of(rs, &v)).residues,
            };
            Cell {
                points: alcove_vertices(rs, &b.element)
                    .iter()
                    .map(|p| embed(&basis, p))
                    .collect(),
                key,
                word: b.word.to_string(),
                k: v.entries().to_vec(),
            }
        })
        .collect();

    let mut colors: BTreeMap<&[i64], &str> = BTreeMap::new();
    for c in &cells {
        colors.insert(&c.key, "");
    }
    for (i, color) in colors.values_mut().enumerate() {
        *color = PALETTE[i % PALETTE.len()];
    }

    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (x, y) in cells.iter().flat_map(|c| &c.points) {
        lo_x = lo_x.min(*x);
        hi_x = hi_x.max(*x);
        lo_y = lo_y.min(*y);
        hi_y = hi_y.max(*y);
    }
    let (w, h) = (spec.width.max(1) as f64, spec.height.max(1) as f64);
    let margin = 0.05 * w.min(h);
    let span_x = (hi_x - lo_x).max(1e-9);
    let span_y = (hi_y - lo_y).max(1e-9);
    let scale = ((w - 2.0 * margin) / span_x).min((h - 2.0 * margin) / span_y);
    let off_x = margin + ((w - 2.0 * margin) - span_x * scale) / 2.0;
    let off_y = margin + ((h - 2.0 * margin) - span_y * scale) / 2.0;
    let to_screen = |(x, y): (f64, f64)| (off_x + (x - lo_x) * scale, h - off_y - (y - lo_y) * scale);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(
        out,
        "<title>{} radius {} colored by {:?}</title>",
        rs.label(),
        spec.radius,
        spec.coloring
    );
    let stroke = fmt_num((0.002 * w.min(h)).max(0.5));
    for c in &cells {
        let color = colors[c.key.as_slice()];
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&p| {
                let (x, y) = to_screen(p);
                format!("{},{}", fmt_num(x), fmt_num(y))
            })
            .collect();
        if rs.rank() == 1 {
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" data-word=\"{}\"/>",
                pts.join(" "),
                color,
                fmt_num(0.02 * h),
                c.word
            );
        } else {
            let _ = writeln!(
                out,
                "<polygon points=\"{}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"{}\" data-word=\"{}\"/>",
                pts.join(" "),
                color,
                stroke,
                c.word
            );
        }
    }
    if spec.labels {
        let font = fmt_num((0.18 * scale).clamp(2.0, 24.0) / (rs.num_positive_roots() as f64).sqrt());
        for c in &cells {
            let m = c.points.len() as f64;
            let centroid = c
                .points
                .iter()
                .fold((0.0, 0.0), |a, p| (a.0 + p.0 / m, a.1 + p.1 / m));
            let reach = c
                .points
                .iter()
                .map(|p| ((p.0 - centroid.0).powi(2) + (p.1 - centroid.1).powi(2)).sqrt())
                .fold(f64::MAX, f64::min)
                * 0.45;
            for (r, k) in c.k.iter().enumerate() {
                let coords: Vec<BigRational> = rs
                    .root(r)
                    .root_coords
                    .iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect();
                let d = embed(&basis, &coords);
                let len = (d.0 * d.0 + d.1 * d.1).sqrt();
                let p = (centroid.0 + d.0 / len * reach, centroid.1 + d.1 / len * reach);
                let (x, y) = to_screen(p);
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\" text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>",
                    fmt_num(x),
                    fmt_num(y),
                    font,
                    k
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

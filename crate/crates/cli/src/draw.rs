//! DOT and SVG renderings of the compact part of a crosscut.

use edgecone::deformation::{rat_to_f64, Crosscut};
use edgecone::linalg::Rat;
use nalgebra::DMatrix;
use num_traits::Zero;
use std::fmt::Write;

pub fn dot(q: &Crosscut, labels: &[String]) -> String {
    let mut s = String::from("graph crosscut {\n  node [shape=circle];\n");
    for v in &q.vertices {
        let style = if v.lattice {
            "style=filled, fillcolor=black, fontcolor=white"
        } else {
            "style=solid, fillcolor=white"
        };
        writeln!(s, "  v{} [label=\"{}\", {style}];", v.ray, labels[v.ray]).unwrap();
    }
    for (k, c) in q.compact_two_faces.iter().enumerate() {
        writeln!(s, "  subgraph cluster_face{k} {{").unwrap();
        writeln!(s, "    label=\"face {k}\";").unwrap();
        for r in &c.face {
            writeln!(s, "    v{r};").unwrap();
        }
        s.push_str("  }\n");
    }
    for e in &q.compact_edges {
        writeln!(s, "  v{} -- v{};", e.rays[0], e.rays[1]).unwrap();
    }
    s.push_str("}\n");
    s
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Orthogonal basis of the span of `vs` by exact Gram-Schmidt.
fn orthogonal_basis(vs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for b in &basis {
            let c = dot_rat(&w, b) / dot_rat(b, b);
            w = w.iter().zip(b).map(|(x, y)| x - &c * y).collect();
        }
        if w.iter().any(|x| !x.is_zero()) {
            basis.push(w);
        }
    }
    basis
}

/// Planar coordinates of the crosscut vertices: exact in an orthogonal basis of
/// the affine hull when it has dimension at most 2, otherwise the top two
/// principal axes of the exact covariance matrix.
pub fn planar(points: &[Vec<Rat>]) -> Vec<(f64, f64)> {
    if points.is_empty() {
        return Vec::new();
    }
    let diffs: Vec<Vec<Rat>> = points.iter().map(|p| sub(p, &points[0])).collect();
    let basis = orthogonal_basis(&diffs);
    if basis.len() <= 2 {
        return diffs
            .iter()
            .map(|d| {
                let c: Vec<f64> = basis
                    .iter()
                    .map(|b| rat_to_f64(&(dot_rat(d, b))) / rat_to_f64(&dot_rat(b, b)).sqrt())
                    .collect();
                (c.first().copied().unwrap_or(0.0), c.get(1).copied().unwrap_or(0.0))
            })
            .collect();
    }
    let dim = points[0].len();
    let n = Rat::from_integer(points.len().into());
    let mean: Vec<Rat> = (0..dim).map(|k| points.iter().fold(Rat::zero(), |a, p| a + &p[k]) / &n).collect();
    let centered: Vec<Vec<Rat>> = points.iter().map(|p| sub(p, &mean)).collect();
    let cov = DMatrix::from_fn(dim, dim, |i, j| {
        rat_to_f64(&centered.iter().fold(Rat::zero(), |a, p| a + &p[i] * &p[j]))
    });
    let eig = cov.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let axis = |k: usize| {
        let col = eig.eigenvectors.column(order[k]);
        // sign fixed by the first nonzero entry
        let s = col.iter().find(|x| x.abs() > 1e-12).map_or(1.0, |x| x.signum());
        col.iter().map(|x| x * s).collect::<Vec<f64>>()
    };
    let (u, v) = (axis(0), axis(1));
    centered
        .iter()
        .map(|p| {
            let f: Vec<f64> = p.iter().map(rat_to_f64).collect();
            (f.iter().zip(&u).map(|(a, b)| a * b).sum(), f.iter().zip(&v).map(|(a, b)| a * b).sum())
        })
        .collect()
}

pub fn svg(q: &Crosscut, labels: &[String]) -> String {
    const SIZE: f64 = 400.0;
    const MARGIN: f64 = 40.0;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    if q.vertices.is_empty() {
        writeln!(s, "  <text x=\"{:.6}\" y=\"{:.6}\">empty compact part</text>", MARGIN, SIZE / 2.0).unwrap();
        s.push_str("</svg>\n");
        return s;
    }
    let pts = planar(&q.vertices.iter().map(|v| v.point.clone()).collect::<Vec<_>>());
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let at = |ray: usize| {
        let k = q.vertices.iter().position(|v| v.ray == ray).expect("vertex");
        let (x, y) = pts[k];
        (MARGIN + (x - lo_x) * scale, SIZE - MARGIN - (y - lo_y) * scale)
    };
    for c in &q.compact_two_faces {
        let poly: Vec<String> = c
            .face
            .iter()
            .map(|&r| {
                let (x, y) = at(r);
                format!("{x:.6},{y:.6}")
            })
            .collect();
        writeln!(s, "  <polygon class=\"face\" points=\"{}\" fill=\"#d0d0d0\" stroke=\"none\"/>", poly.join(" "))
            .unwrap();
    }
    for e in &q.compact_edges {
        let ((x1, y1), (x2, y2)) = (at(e.rays[0]), at(e.rays[1]));
        writeln!(s, "  <line class=\"edge\" x1=\"{x1:.6}\" y1=\"{y1:.6}\" x2=\"{x2:.6}\" y2=\"{y2:.6}\" stroke=\"black\"/>")
            .unwrap();
    }
    for v in &q.vertices {
        let (x, y) = at(v.ray);
        let fill = if v.lattice { "black" } else { "white" };
        writeln!(
            s,
            "  <circle class=\"vertex\" cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"6.000000\" fill=\"{fill}\" stroke=\"black\"/>"
        )
        .unwrap();
        writeln!(s, "  <text x=\"{:.6}\" y=\"{:.6}\">{}</text>", x + 8.0, y - 8.0, labels[v.ray]).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

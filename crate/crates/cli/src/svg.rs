//! Rank-2 pictures: arrangement lines, alcoves, and optional cell colouring.

use std::fmt::Write as _;

use affine_automata::alcove::geometry::Realization;
use affine_automata::arrangement::ArrangementSpec;
use affine_automata::{Ball, RootSystem};
use num_traits::ToPrimitive;

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 20.0;

const PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
    "#bcf60c", "#fabebe", "#008080", "#e6beff",
];

/// Orthonormal coordinates for points given by their simple-root pairings.
struct Projection {
    /// Cholesky factor `L` of the simple Gram matrix, `G = L L^T`.
    chol: [[f64; 2]; 2],
    gram_inv: [[f64; 2]; 2],
}

impl Projection {
    fn new(rs: &RootSystem) -> Self {
        let g = rs.simple_gram();
        let (a, b, c) = (g[0][0] as f64, g[0][1] as f64, g[1][1] as f64);
        let l00 = a.sqrt();
        let l10 = b / l00;
        let l11 = (c - l10 * l10).sqrt();
        let det = a * c - b * b;
        Projection {
            chol: [[l00, 0.0], [l10, l11]],
            gram_inv: [[c / det, -b / det], [-b / det, a / det]],
        }
    }

    /// Root-basis coefficients to the plane: `L^T c`.
    fn root_vector(&self, c: [f64; 2]) -> [f64; 2] {
        let l = &self.chol;
        [l[0][0] * c[0] + l[1][0] * c[1], l[1][1] * c[1]]
    }

    /// Pairings `<alpha_i, x>` to the plane.
    fn point(&self, pairings: [f64; 2]) -> [f64; 2] {
        let gi = &self.gram_inv;
        let c = [
            gi[0][0] * pairings[0] + gi[0][1] * pairings[1],
            gi[1][0] * pairings[0] + gi[1][1] * pairings[1],
        ];
        self.root_vector(c)
    }
}

/// Stable cell label per ball element, used for fill colours.
pub type Colouring = Vec<Option<usize>>;

pub fn render(ball: &Ball, spec: &ArrangementSpec, colouring: Option<&Colouring>) -> String {
    let rs = ball.group().root_system();
    assert_eq!(rs.rank(), 2, "pictures need rank 2");
    let proj = Projection::new(rs);
    let real = Realization::new(rs);
    let a0 = real.a0_vertices();

    let alcoves: Vec<Vec<[f64; 2]>> = (0..ball.len())
        .map(|i| {
            let map = real.word_map(ball.word(i));
            a0.iter()
                .map(|v| {
                    let p = map.apply(v);
                    proj.point([p[0].to_f64().unwrap(), p[1].to_f64().unwrap()])
                })
                .collect()
        })
        .collect();
    let centre = {
        let c = &alcoves[0];
        let n = c.len() as f64;
        [
            c.iter().map(|p| p[0]).sum::<f64>() / n,
            c.iter().map(|p| p[1]).sum::<f64>() / n,
        ]
    };
    let reach = alcoves
        .iter()
        .flatten()
        .map(|p| (p[0] - centre[0]).hypot(p[1] - centre[1]))
        .fold(0.0, f64::max)
        .max(1e-9);
    let scale = (SIZE / 2.0 - MARGIN) / reach;
    let to_svg = |p: [f64; 2]| {
        (
            SIZE / 2.0 + scale * (p[0] - centre[0]),
            SIZE / 2.0 - scale * (p[1] - centre[1]),
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>"
    );
    let _ = writeln!(out, "  <g stroke=\"#999999\" stroke-width=\"0.5\">");
    for (i, poly) in alcoves.iter().enumerate() {
        let fill = if i == 0 {
            "#000000"
        } else {
            match colouring.and_then(|c| c[i]) {
                Some(label) => PALETTE[label % PALETTE.len()],
                None => "none",
            }
        };
        let pts: Vec<String> = poly
            .iter()
            .map(|&p| {
                let (x, y) = to_svg(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "    <polygon points=\"{}\" fill=\"{fill}\"/>",
            pts.join(" ")
        );
    }
    out.push_str("  </g>\n");

    // hyperplanes <beta, x> = k, drawn long enough to cross the whole window
    let half = SIZE / scale;
    let _ = writeln!(out, "  <g stroke=\"#1f4e9c\" stroke-width=\"1.5\">");
    for beta in 0..rs.num_positive_roots() {
        let b = rs.positive_root(beta);
        let n = proj.root_vector([b[0] as f64, b[1] as f64]);
        let nn = n[0] * n[0] + n[1] * n[1];
        let dir = [-n[1] / nn.sqrt(), n[0] / nn.sqrt()];
        for k in spec.levels(beta) {
            let foot = [k as f64 * n[0] / nn, k as f64 * n[1] / nn];
            let (x1, y1) = to_svg([foot[0] - half * dir[0], foot[1] - half * dir[1]]);
            let (x2, y2) = to_svg([foot[0] + half * dir[0], foot[1] + half * dir[1]]);
            let _ = writeln!(
                out,
                "    <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>"
            );
        }
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

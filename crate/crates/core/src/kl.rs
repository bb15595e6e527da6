//! Kazhdan-Lusztig polynomials on a length-bounded ball, W-graphs, and cells.
//!
//! Polynomials are computed with the standard recursion on a left descent:
//! for `s w < w` and `v = s w`,
//!
//! ```text
//! P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v} - sum_{z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}
//! ```
//!
//! with `c = 1` if `s x < x` and `c = 0` otherwise. Every element that the
//! recursion touches lies in the Bruhat interval `[e, w]`, so the table on
//! a ball is exact.
//!
//! Cells computed on a ball are fragments of the true cells: edges through
//! elements outside the ball can merge classes. [`cells_stabilized`] only
//! reports the interior (length at most `L - 2`) of each class, and flags a
//! class as stable when a larger ball induces the same interior partition.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::alcove::{format_word, AffineWeylGroup, Ball, BruhatOrder, Element, GeneratorSet, Word};
use crate::error::{Error, Result};

/// Dense integer polynomial in `q`, lowest degree first; zero is empty.
pub type Poly = Vec<i64>;

fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn add_shifted(acc: &mut Poly, p: &[i64], shift: usize, scale: i64) {
    if p.is_empty() {
        return;
    }
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += scale * c;
    }
}

/// Polynomial degree; `None` for zero.
pub fn degree(p: &[i64]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

#[derive(Debug, Clone)]
pub struct KlTable {
    ball: Ball,
    bruhat: BruhatOrder,
    /// `polys[w]` maps each `x <= w` to `P_{x,w}`.
    polys: Vec<BTreeMap<usize, Poly>>,
    /// `mu[w]` lists `(z, mu(z, w))` for `z < w` with nonzero `mu`.
    mu: Vec<Vec<(usize, i64)>>,
}

impl KlTable {
    /// Table for every pair in the ball of radius `radius`.
    pub fn new(group: &AffineWeylGroup, radius: usize) -> Self {
        Self::from_ball(group.ball(radius))
    }

    pub fn from_ball(ball: Ball) -> Self {
        let bruhat = ball.bruhat_order();
        let n = ball.len();
        let mut polys: Vec<BTreeMap<usize, Poly>> = Vec::with_capacity(n);
        let mut mu: Vec<Vec<(usize, i64)>> = Vec::with_capacity(n);

        for w in 0..n {
            let mut col: BTreeMap<usize, Poly> = BTreeMap::new();
            if w == 0 {
                col.insert(0, vec![1]);
            } else {
                let s = ball
                    .left_descents(w)
                    .iter()
                    .next()
                    .expect("non-identity has a left descent");
                let v = ball.left_mul(w, s).expect("s w is shorter");
                let lw = ball.length(w);
                for x in bruhat.below(w) {
                    let sx = ball.left_mul(x, s).expect("s x stays in the ball");
                    let c = usize::from(ball.left_descents(x).contains(s));
                    let mut p = Poly::new();
                    if let Some(q) = polys[v].get(&sx) {
                        add_shifted(&mut p, q, 1 - c, 1);
                    }
                    if let Some(q) = polys[v].get(&x) {
                        add_shifted(&mut p, q, c, 1);
                    }
                    for &(z, m) in &mu[v] {
                        if !ball.left_descents(z).contains(s) {
                            continue;
                        }
                        if let Some(q) = polys[z].get(&x) {
                            add_shifted(&mut p, q, (lw - ball.length(z)) / 2, -m);
                        }
                    }
                    trim(&mut p);
                    if !p.is_empty() {
                        col.insert(x, p);
                    }
                }
            }
            let lw = ball.length(w);
            let mus = col
                .iter()
                .filter_map(|(&z, p)| {
                    let diff = lw - ball.length(z);
                    if diff % 2 == 1 {
                        p.get((diff - 1) / 2).filter(|&&c| c != 0).map(|&c| (z, c))
                    } else {
                        None
                    }
                })
                .collect();
            polys.push(col);
            mu.push(mus);
        }
        KlTable {
            ball,
            bruhat,
            polys,
            mu,
        }
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn bruhat(&self) -> &BruhatOrder {
        &self.bruhat
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    /// `P_{u,w}` by ball index; zero unless `u <= w`.
    pub fn poly(&self, u: usize, w: usize) -> &[i64] {
        self.polys[w].get(&u).map_or(&[], |p| p.as_slice())
    }

    /// `P_{u,w}` for group elements; errors when either leaves the ball.
    pub fn poly_of(&self, u: &Element, w: &Element) -> Result<Poly> {
        let outside = || Error::OutsideBall {
            radius: self.radius(),
        };
        let ui = self.ball.index_of(u).ok_or_else(outside)?;
        let wi = self.ball.index_of(w).ok_or_else(outside)?;
        Ok(self.poly(ui, wi).to_vec())
    }

    /// All nonzero entries `(u, w, P_{u,w})`, ordered by `w` then `u`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[i64])> + '_ {
        self.polys
            .iter()
            .enumerate()
            .flat_map(|(w, col)| col.iter().map(move |(&u, p)| (u, w, p.as_slice())))
    }

    /// `mu(z, w)` pairs with `z < w`.
    pub fn mu_pairs(&self, w: usize) -> &[(usize, i64)] {
        &self.mu[w]
    }

    /// `u -- w`: comparable, distinct, and the lower polynomial has degree
    /// exactly `(l(upper) - l(lower) - 1) / 2`.
    pub fn join(&self, u: usize, w: usize) -> bool {
        if u == w {
            return false;
        }
        let (lo, hi) = if self.ball.length(u) < self.ball.length(w) {
            (u, w)
        } else {
            (w, u)
        };
        self.mu[hi].iter().any(|&(z, _)| z == lo)
    }

    pub fn w_graph(&self, side: Side) -> WGraph {
        self.w_graph_upto(side, self.radius())
    }

    /// W-graph of the sub-ball of radius `radius`.
    pub fn w_graph_upto(&self, side: Side, radius: usize) -> WGraph {
        let n = self.ball.count_upto(radius);
        let desc = |x: usize| -> GeneratorSet {
            match side {
                Side::Left => self.ball.left_descents(x),
                Side::Right => self.ball.right_descents(x),
                Side::TwoSided => panic!("W-graphs are one-sided"),
            }
        };
        let mut edges = vec![Vec::new(); n];
        for w in 0..n {
            for &(z, _) in &self.mu[w] {
                if !desc(z).is_subset(desc(w)) {
                    edges[z].push(w);
                }
                if !desc(w).is_subset(desc(z)) {
                    edges[w].push(z);
                }
            }
        }
        for e in &mut edges {
            e.sort_unstable();
        }
        let lengths = (0..n).map(|i| self.ball.length(i)).collect();
        WGraph {
            side,
            radius,
            edges,
            lengths,
        }
    }

    /// JSON dump: `[{"u_word": [...], "w_word": [...], "coeffs": [...]}, ...]`.
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Entry<'a> {
            u_word: &'a [usize],
            w_word: &'a [usize],
            coeffs: &'a [i64],
        }
        let entries: Vec<Entry> = self
            .entries()
            .map(|(u, w, p)| Entry {
                u_word: self.ball.word(u),
                w_word: self.ball.word(w),
                coeffs: p,
            })
            .collect();
        Ok(serde_json::to_string_pretty(&entries)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

#[derive(Debug, Clone)]
pub struct WGraph {
    pub side: Side,
    pub radius: usize,
    /// Sorted out-neighbours by ball index.
    pub edges: Vec<Vec<usize>>,
    pub lengths: Vec<usize>,
}

impl WGraph {
    pub fn num_vertices(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.edges[u].binary_search(&w).is_ok()
    }

    /// Graphviz rendering; edges are labelled by the length difference.
    pub fn to_dot(&self, ball: &Ball) -> String {
        let mut out = String::from("digraph wgraph {\n    node [shape=box];\n");
        for v in 0..self.num_vertices() {
            let name = match ball.word(v) {
                [] => "e".to_string(),
                w => format_word(w),
            };
            let _ = writeln!(out, "    v{v} [label=\"{name}\"];");
        }
        for (u, targets) in self.edges.iter().enumerate() {
            for &w in targets {
                let d = self.lengths[u].abs_diff(self.lengths[w]);
                let _ = writeln!(out, "    v{u} -> v{w} [label=\"{d}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Partition of a ball into cell fragments.
#[derive(Debug, Clone)]
pub struct CellDecomposition {
    pub side: Side,
    pub radius: usize,
    /// Classes ordered by their first member; members are sorted ball indices.
    pub classes: Vec<Vec<usize>>,
    /// `class_of[x]` is the label of the class containing `x`.
    pub class_of: Vec<usize>,
    /// Per element: its length is `radius` or `radius - 1`.
    pub frontier: Vec<bool>,
    /// Per class: it contains a frontier element.
    pub touches_boundary: Vec<bool>,
}

impl CellDecomposition {
    fn from_classes(
        side: Side,
        radius: usize,
        frontier: Vec<bool>,
        mut classes: Vec<Vec<usize>>,
    ) -> Self {
        for c in &mut classes {
            c.sort_unstable();
        }
        // ball order is (length, lexicographic word), so this labels each
        // class by its shortest element
        classes.sort_by_key(|c| c[0]);
        let mut class_of = vec![0; frontier.len()];
        for (k, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = k;
            }
        }
        let touches_boundary = classes
            .iter()
            .map(|c| c.iter().any(|&x| frontier[x]))
            .collect();
        CellDecomposition {
            side,
            radius,
            classes,
            class_of,
            frontier,
            touches_boundary,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn same_class(&self, u: usize, w: usize) -> bool {
        self.class_of[u] == self.class_of[w]
    }
}

/// Strongly connected components of a W-graph.
pub fn cells(graph: &WGraph) -> CellDecomposition {
    let n = graph.num_vertices();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (u, targets) in graph.edges.iter().enumerate() {
        for &w in targets {
            g.add_edge(nodes[u], nodes[w], ());
        }
    }
    let classes = tarjan_scc(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|ix| ix.index()).collect())
        .collect();
    let frontier = graph
        .lengths
        .iter()
        .map(|&l| l + 1 >= graph.radius)
        .collect();
    CellDecomposition::from_classes(graph.side, graph.radius, frontier, classes)
}

/// Two-sided fragments: the joint closure of the left and right classes.
pub fn two_sided(left: &CellDecomposition, right: &CellDecomposition) -> CellDecomposition {
    let n = left.class_of.len();
    assert_eq!(n, right.class_of.len());
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for c in left.classes.iter().chain(&right.classes) {
        for &x in &c[1..] {
            let (a, b) = (find(&mut parent, c[0]), find(&mut parent, x));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    CellDecomposition::from_classes(
        Side::TwoSided,
        left.radius,
        left.frontier.clone(),
        groups.into_values().collect(),
    )
}

/// Cell decomposition of the sub-ball of radius `radius`.
pub fn decomposition(table: &KlTable, radius: usize, side: Side) -> CellDecomposition {
    match side {
        Side::Left | Side::Right => cells(&table.w_graph_upto(side, radius)),
        Side::TwoSided => two_sided(
            &cells(&table.w_graph_upto(Side::Left, radius)),
            &cells(&table.w_graph_upto(Side::Right, radius)),
        ),
    }
}

/// The interior part of one cell class at radius `L`.
#[derive(Debug, Clone, Serialize)]
pub struct CellFragment {
    pub label: usize,
    /// Ball indices of the members of length at most `L - 2`.
    pub members: Vec<usize>,
    /// The larger ball induces the same interior class.
    pub stable: bool,
    /// The full radius-`L` class reaches the frontier layers.
    pub touches_boundary: bool,
    /// Reduced word of the shortest member.
    pub name: Word,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizedCells {
    pub side: Side,
    pub radius: usize,
    pub stability_radius: usize,
    pub interior_len: usize,
    pub fragments: Vec<CellFragment>,
}

impl StabilizedCells {
    pub fn stable_fragments(&self) -> impl Iterator<Item = &CellFragment> {
        self.fragments.iter().filter(|f| f.stable)
    }

    pub fn all_stable(&self) -> bool {
        self.fragments.iter().all(|f| f.stable)
    }

    /// Fragment label of an interior element.
    pub fn fragment_of(&self, x: usize) -> Option<usize> {
        self.fragments
            .iter()
            .position(|f| f.members.binary_search(&x).is_ok())
    }
}

/// Compares the interior partition at radius `radius` with the one induced
/// by the full table (radius `L'`). The table must be strictly larger.
pub fn cells_stabilized(table: &KlTable, radius: usize, side: Side) -> Result<StabilizedCells> {
    if table.radius() <= radius {
        return Err(Error::BadRadii {
            radius,
            stable: table.radius(),
        });
    }
    let interior_len = radius.saturating_sub(2);
    let interior = table.ball().count_upto(interior_len);
    let small = decomposition(table, radius, side);
    let large = decomposition(table, table.radius(), side);

    let restrict = |d: &CellDecomposition| -> Vec<Vec<usize>> {
        d.classes
            .iter()
            .map(|c| {
                c.iter()
                    .copied()
                    .filter(|&x| x < interior)
                    .collect::<Vec<_>>()
            })
            .filter(|c| !c.is_empty())
            .collect()
    };
    let small_frag = restrict(&small);
    let large_frag = restrict(&large);
    let mut large_of = vec![usize::MAX; interior];
    for (k, c) in large_frag.iter().enumerate() {
        for &x in c {
            large_of[x] = k;
        }
    }
    let fragments = small_frag
        .into_iter()
        .enumerate()
        .map(|(label, members)| {
            let stable = large_frag[large_of[members[0]]] == members;
            let touches_boundary = small.touches_boundary[small.class_of[members[0]]];
            let name = table.ball().word(members[0]).to_vec();
            CellFragment {
                label,
                members,
                stable,
                touches_boundary,
                name,
            }
        })
        .collect();
    Ok(StabilizedCells {
        side,
        radius,
        stability_radius: table.radius(),
        interior_len,
        fragments,
    })
}

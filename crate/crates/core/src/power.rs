//! Powers of paths and powers of cycles: generators, structural recognition,
//! and closed-form enumeration of their bicliques and stars.
//!
//! Both classes are claw-free, so every biclique is a `P2`, a `P3` or a `C4`
//! and every star is a `P2` or a `P3`. Which shapes occur depends only on
//! where `n` falls relative to multiples of `k`:
//!
//! | graph     | range of `n`        | biclique shapes |
//! |-----------|---------------------|-----------------|
//! | `P_n^k`   | `n <= k+1`          | P2              |
//! | `P_n^k`   | `k+2 ..= 2k`        | P2, P3          |
//! | `P_n^k`   | `>= 2k+1`           | P3              |
//! | `C_n^k`   | `n <= 2k+1`         | P2              |
//! | `C_n^k`   | `2k+2 ..= 3k+1`     | C4              |
//! | `C_n^k`   | `3k+2 ..= 4k`       | P3, C4          |
//! | `C_n^k`   | `>= 4k+1`           | P3              |
//!
//! Candidates of the admissible shapes are generated from index arithmetic
//! and then filtered through an explicit maximality check on the host graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bipartition_unchecked, is_maximal_biclique, is_maximal_star, Graph, VertexSet};

/// Which hypergraph of a graph is being coloured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Biclique,
    Star,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Biclique => "biclique",
            Mode::Star => "star",
        })
    }
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("power graph needs n >= 1"));
    }
    if k == 0 {
        return Err(Error::input("power graph needs k >= 1"));
    }
    Ok(())
}

/// `P_n^k`: vertices `0..n`, `i ~ j` iff `|i - j| <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerPathParams {
    n: usize,
    k: usize,
}

impl PowerPathParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Ok(PowerPathParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// `C_n^k`: vertices `0..n` in cyclic order, `i ~ j` iff the cyclic distance
/// is at most `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerCycleParams {
    n: usize,
    k: usize,
}

impl PowerCycleParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Ok(PowerCycleParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Either kind of power graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerGraph {
    Path(PowerPathParams),
    Cycle(PowerCycleParams),
}

impl PowerGraph {
    pub fn n(&self) -> usize {
        match self {
            PowerGraph::Path(p) => p.n,
            PowerGraph::Cycle(p) => p.n,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            PowerGraph::Path(p) => p.k,
            PowerGraph::Cycle(p) => p.k,
        }
    }

    pub fn graph(&self) -> Graph {
        match self {
            PowerGraph::Path(p) => gen_power_path(*p),
            PowerGraph::Cycle(p) => gen_power_cycle(*p),
        }
    }

    /// Index distance of `a` and `b` (cyclic for powers of cycles).
    pub fn reach(&self, a: usize, b: usize) -> usize {
        match self {
            PowerGraph::Path(_) => a.abs_diff(b),
            PowerGraph::Cycle(p) => cyclic_distance(p.n, a, b),
        }
    }

    pub fn bicliques(&self) -> Vec<Biclique> {
        match self {
            PowerGraph::Path(p) => path_bicliques(*p),
            PowerGraph::Cycle(p) => cycle_bicliques(*p),
        }
    }

    pub fn stars(&self) -> Vec<VertexSet> {
        match self {
            PowerGraph::Path(p) => path_stars(*p),
            PowerGraph::Cycle(p) => cycle_stars(*p),
        }
    }

    /// Closed-form hyperedges of the requested hypergraph, sorted.
    pub fn hyperedges(&self, mode: Mode) -> Vec<VertexSet> {
        match mode {
            Mode::Biclique => self.bicliques().into_iter().map(|b| b.vertices).collect(),
            Mode::Star => self.stars(),
        }
    }

    /// Short human-readable name, e.g. `C_11^3`.
    pub fn name(&self) -> String {
        match self {
            PowerGraph::Path(p) => format!("P_{}^{}", p.n, p.k),
            PowerGraph::Cycle(p) => format!("C_{}^{}", p.n, p.k),
        }
    }
}

pub fn cyclic_distance(n: usize, a: usize, b: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(n - d)
}

pub fn gen_power_path(p: PowerPathParams) -> Graph {
    let mut g = Graph::empty(p.n);
    for i in 0..p.n {
        for j in i + 1..p.n.min(i + p.k + 1) {
            g.insert_edge(i, j);
        }
    }
    g.with_label(PowerGraph::Path(p).name())
}

pub fn gen_power_cycle(p: PowerCycleParams) -> Graph {
    let mut g = Graph::empty(p.n);
    for i in 0..p.n {
        for j in i + 1..p.n {
            if cyclic_distance(p.n, i, j) <= p.k {
                g.insert_edge(i, j);
            }
        }
    }
    g.with_label(PowerGraph::Cycle(p).name())
}

/// Circulant graph `C_n(d_1, ..., d_m)`: `i ~ j` iff their cyclic distance is
/// one of the given distances. Each distance must lie in `1..=n/2`.
pub fn gen_circulant(n: usize, distances: &[usize]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("circulant graph needs n >= 1"));
    }
    if let Some(&d) = distances.iter().find(|&&d| d == 0 || d > n / 2) {
        return Err(Error::input(format!(
            "circulant distance {d} outside 1..={}",
            n / 2
        )));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if distances.contains(&cyclic_distance(n, i, j)) {
                g.insert_edge(i, j);
            }
        }
    }
    let list: Vec<String> = distances.iter().map(|d| d.to_string()).collect();
    Ok(g.with_label(format!("C_{n}({})", list.join(","))))
}

/// Identifies `g` as a power of a path or cycle in its given vertex order.
/// Complete graphs are reported as powers of paths.
pub fn recognize_power_graph(g: &Graph) -> Option<PowerGraph> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(PowerGraph::Path(PowerPathParams { n: 1, k: 1 }));
    }
    let d0 = g.degree(0);
    if d0 >= 1 {
        let p = PowerPathParams { n, k: d0 };
        if gen_power_path(p).same_edges(g) {
            return Some(PowerGraph::Path(p));
        }
    }
    if d0 >= 2 && d0.is_multiple_of(2) {
        let p = PowerCycleParams { n, k: d0 / 2 };
        if gen_power_cycle(p).same_edges(g) {
            return Some(PowerGraph::Cycle(p));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    P2,
    P3,
    C4,
    #[serde(rename = "OTHER")]
    Other,
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Shape::P2 => "P2",
            Shape::P3 => "P3",
            Shape::C4 => "C4",
            Shape::Other => "OTHER",
        })
    }
}

/// A maximal complete-bipartite vertex set with its shape; `reach` is set for
/// `P3`s of a power graph (sum of the reaches of its two edges).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Biclique {
    pub vertices: VertexSet,
    pub shape: Shape,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reach: Option<usize>,
}

impl Biclique {
    /// Tags a complete-bipartite set with its shape. `geometry` supplies reach
    /// for power graphs. Returns `None` if `s` is not complete bipartite.
    pub fn classify(g: &Graph, s: &VertexSet, geometry: Option<&PowerGraph>) -> Option<Biclique> {
        if s.len() < 2 {
            return None;
        }
        let part = bipartition_unchecked(g, s)?;
        let (l, r) = (part.left.len(), part.right.len());
        let shape = match (s.len(), l.min(r), l.max(r)) {
            (2, ..) => Shape::P2,
            (3, ..) => Shape::P3,
            (4, 2, 2) => Shape::C4,
            _ => Shape::Other,
        };
        let reach = match (shape, geometry) {
            (Shape::P3, Some(pg)) => {
                let (centre, ends) = if l == 1 {
                    (part.left.members()[0], part.right)
                } else {
                    (part.right.members()[0], part.left)
                };
                Some(ends.iter().map(|e| pg.reach(centre, e)).sum())
            }
            _ => None,
        };
        Some(Biclique {
            vertices: s.clone(),
            shape,
            reach,
        })
    }
}

fn edge_candidates(g: &Graph, out: &mut BTreeSet<VertexSet>) {
    for (i, j) in g.edges() {
        out.insert(VertexSet::from_sorted(vec![i, j]));
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> VertexSet {
    let mut v = vec![a, b, c];
    v.sort_unstable();
    VertexSet::from_sorted(v)
}

/// Neighbours of `s` by index arithmetic: `s ± 1..=k`, clipped for paths and
/// taken modulo `n` for cycles.
fn arithmetic_neighbors(pg: &PowerGraph, s: usize) -> Vec<usize> {
    let (n, k) = (pg.n(), pg.k());
    let mut out = Vec::with_capacity(2 * k);
    match pg {
        PowerGraph::Path(_) => {
            out.extend(s.saturating_sub(k)..s);
            out.extend(s + 1..n.min(s + k + 1));
        }
        PowerGraph::Cycle(_) => {
            for off in 1..=k.min(n - 1) {
                out.push((s + off) % n);
                out.push((s + n - off) % n);
            }
            out.sort_unstable();
            out.dedup();
            out.retain(|&v| v != s);
        }
    }
    out
}

/// Induced `P3`s `(end, centre, end)` found from index arithmetic.
fn induced_p3s(pg: &PowerGraph) -> Vec<(usize, usize, usize)> {
    let k = pg.k();
    let mut out = Vec::new();
    for s in 0..pg.n() {
        let nb = arithmetic_neighbors(pg, s);
        for (x, &h) in nb.iter().enumerate() {
            for &r in &nb[x + 1..] {
                if pg.reach(h, r) > k {
                    out.push((h, s, r));
                }
            }
        }
    }
    out
}

fn p3_candidates(pg: &PowerGraph, out: &mut BTreeSet<VertexSet>) {
    for (h, s, r) in induced_p3s(pg) {
        out.insert(sorted3(h, s, r));
    }
}

/// Induced `C4`s: an induced `P3` `h - s - r` closed by a common neighbour
/// `w` of `h` and `r` that misses `s`.
fn c4_candidates(pg: &PowerGraph, out: &mut BTreeSet<VertexSet>) {
    let k = pg.k();
    for (h, s, r) in induced_p3s(pg) {
        for w in arithmetic_neighbors(pg, h) {
            if w != s && pg.reach(w, r) <= k && pg.reach(w, s) > k {
                let mut v = vec![h, s, r, w];
                v.sort_unstable();
                out.insert(VertexSet::from_sorted(v));
            }
        }
    }
}

fn finish(g: &Graph, pg: &PowerGraph, cands: BTreeSet<VertexSet>) -> Vec<Biclique> {
    cands
        .into_iter()
        .filter(|s| is_maximal_biclique(g, s))
        .map(|s| Biclique::classify(g, &s, Some(pg)).expect("maximal biclique classifies"))
        .collect()
}

/// All bicliques of `P_n^k`, in lexicographic order.
pub fn path_bicliques(p: PowerPathParams) -> Vec<Biclique> {
    let (n, k) = (p.n, p.k);
    let pg = PowerGraph::Path(p);
    let g = gen_power_path(p);
    let mut cands = BTreeSet::new();
    if n <= k + 1 {
        edge_candidates(&g, &mut cands);
    } else if n <= 2 * k {
        edge_candidates(&g, &mut cands);
        p3_candidates(&pg, &mut cands);
    } else {
        p3_candidates(&pg, &mut cands);
    }
    finish(&g, &pg, cands)
}

/// All bicliques of `C_n^k`, in lexicographic order.
pub fn cycle_bicliques(p: PowerCycleParams) -> Vec<Biclique> {
    let (n, k) = (p.n, p.k);
    let pg = PowerGraph::Cycle(p);
    let g = gen_power_cycle(p);
    let mut cands = BTreeSet::new();
    if n <= 2 * k + 1 {
        edge_candidates(&g, &mut cands);
    } else if n <= 3 * k + 1 {
        c4_candidates(&pg, &mut cands);
    } else if n <= 4 * k {
        p3_candidates(&pg, &mut cands);
        c4_candidates(&pg, &mut cands);
    } else {
        p3_candidates(&pg, &mut cands);
    }
    finish(&g, &pg, cands)
}

fn stars_of(pg: PowerGraph) -> Vec<VertexSet> {
    let g = pg.graph();
    let mut cands = BTreeSet::new();
    edge_candidates(&g, &mut cands);
    p3_candidates(&pg, &mut cands);
    cands
        .into_iter()
        .filter(|s| is_maximal_star(&g, s))
        .collect()
}

/// All stars of `P_n^k`, in lexicographic order.
pub fn path_stars(p: PowerPathParams) -> Vec<VertexSet> {
    stars_of(PowerGraph::Path(p))
}

/// All stars of `C_n^k`, in lexicographic order.
pub fn cycle_stars(p: PowerCycleParams) -> Vec<VertexSet> {
    stars_of(PowerGraph::Cycle(p))
}

//! Simple undirected graphs over dense vertex indices `0..n`, stored as
//! per-vertex neighbour bitsets, plus the subset predicates the rest of the
//! crate is built on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

/// An undirected simple graph. Adjacency is symmetric and irreflexive.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    label: Option<String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            label: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.insert_edge(i, j);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range ends.
    /// Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::input(format!(
                    "edge ({i},{j}) has an endpoint outside 0..{n}"
                )));
            }
            if i == j {
                return Err(Error::input(format!("self-loop at vertex {i}")));
            }
            g.insert_edge(i, j);
        }
        Ok(g)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    /// Callers guarantee `i != j` and both in range.
    pub(crate) fn insert_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && i < self.n && j < self.n);
        self.adj[i * self.words + j / WORD] |= 1 << (j % WORD);
        self.adj[j * self.words + i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.adj[i * self.words + j / WORD] >> (j % WORD)) & 1 == 1
    }

    /// Neighbour bitset of `v`, one bit per vertex.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Neighbour mask of `v` as a single word. Only meaningful when `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        self.adj[v * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + b)
            })
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in self.neighbors(i) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Same vertex count and edge set; labels are ignored.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.same_edges(other)
    }
}

impl Eq for Graph {}

/// A strictly increasing list of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Sorts the members; duplicates are rejected.
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate vertex {} in set", w[0])));
        }
        Ok(VertexSet(members))
    }

    /// Members must already be strictly increasing.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            v.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        VertexSet(v)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::input(format!(
                "vertex {v} out of range for a graph on {n} vertices"
            ))),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("vertex list must be strictly increasing"));
        }
        Ok(VertexSet(v))
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl std::fmt::Display for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The two sides of a connected complete bipartite graph. `left` holds the
/// smallest vertex of the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Subgraph induced by `s`; vertex `i` of the result is the `i`-th member of `s`.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph> {
    s.check_within(g.n())?;
    let m = s.members();
    let mut h = Graph::empty(m.len());
    for (i, &a) in m.iter().enumerate() {
        for (j, &b) in m.iter().enumerate().skip(i + 1) {
            if g.has_edge(a, b) {
                h.insert_edge(i, j);
            }
        }
    }
    Ok(h)
}

/// Whether `s` induces a complete bipartite graph with at least one edge.
///
/// A complete bipartite graph with an edge is connected, so the bipartition is
/// determined by the neighbourhood of the smallest member.
pub fn is_complete_bipartite(g: &Graph, s: &VertexSet) -> Result<Option<Bipartition>> {
    if s.len() < 2 {
        return Err(Error::input(
            "complete-bipartite test needs at least 2 vertices",
        ));
    }
    s.check_within(g.n())?;
    Ok(bipartition_unchecked(g, s))
}

pub(crate) fn bipartition_unchecked(g: &Graph, s: &VertexSet) -> Option<Bipartition> {
    let m = s.members();
    let pivot = m[0];
    let (right, left): (Vec<usize>, Vec<usize>) = m.iter().partition(|&&v| g.has_edge(pivot, v));
    if right.is_empty() {
        return None;
    }
    let across = |side: &[usize], other: &[usize]| {
        side.iter().all(|&x| {
            other.iter().all(|&y| g.has_edge(x, y)) && side.iter().all(|&y| !g.has_edge(x, y))
        })
    };
    if across(&left, &right) && across(&right, &left) {
        Some(Bipartition {
            left: VertexSet::from_sorted(left),
            right: VertexSet::from_sorted(right),
        })
    } else {
        None
    }
}

/// Vertices `w` outside `s` for which `s + w` still induces a complete
/// bipartite graph, together with the side sizes after adding `w`.
fn extensions<'a>(
    g: &'a Graph,
    s: &'a VertexSet,
    part: &'a Bipartition,
) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
    let (l, r) = (part.left.members(), part.right.members());
    (0..g.n()).filter(|&w| !s.contains(w)).filter_map(move |w| {
        let sees_all = |side: &[usize]| side.iter().all(|&x| g.has_edge(w, x));
        let sees_none = |side: &[usize]| side.iter().all(|&x| !g.has_edge(w, x));
        if sees_all(r) && sees_none(l) {
            Some((w, l.len() + 1, r.len()))
        } else if sees_all(l) && sees_none(r) {
            Some((w, l.len(), r.len() + 1))
        } else {
            None
        }
    })
}

/// `s` induces a complete bipartite graph with an edge and no vertex of `g`
/// extends it. One-vertex extensions suffice: any induced subgraph of a
/// complete bipartite graph that contains an edge is again complete bipartite.
pub fn is_maximal_biclique(g: &Graph, s: &VertexSet) -> bool {
    if s.len() < 2 || s.check_within(g.n()).is_err() {
        return false;
    }
    match bipartition_unchecked(g, s) {
        Some(part) => extensions(g, s, &part).next().is_none(),
        None => false,
    }
}

/// `s` induces a `K_{1,q}` (q >= 1).
pub fn is_star(g: &Graph, s: &VertexSet) -> bool {
    if s.len() < 2 || s.check_within(g.n()).is_err() {
        return false;
    }
    bipartition_unchecked(g, s)
        .map(|p| p.left.len() == 1 || p.right.len() == 1)
        .unwrap_or(false)
}

/// `s` is a star and no strictly larger star contains it.
pub fn is_maximal_star(g: &Graph, s: &VertexSet) -> bool {
    if !is_star(g, s) {
        return false;
    }
    let part = bipartition_unchecked(g, s).expect("star is complete bipartite");
    let grows = extensions(g, s, &part).any(|(_, l, r)| l == 1 || r == 1);
    !grows
}

fn first_four_subset(g: &Graph, pred: impl Fn([usize; 4]) -> bool) -> Option<VertexSet> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if pred([a, b, c, d]) {
                        return Some(VertexSet::from_sorted(vec![a, b, c, d]));
                    }
                }
            }
        }
    }
    None
}

/// Lexicographically first 4-set inducing a `K_4`.
pub fn contains_k4(g: &Graph) -> Option<VertexSet> {
    first_four_subset(g, |q| {
        (0..4).all(|i| (i + 1..4).all(|j| g.has_edge(q[i], q[j])))
    })
}

/// Lexicographically first 4-set inducing a chordless 4-cycle.
pub fn contains_induced_c4(g: &Graph) -> Option<VertexSet> {
    first_four_subset(g, |q| {
        let deg = |i: usize| (0..4).filter(|&j| j != i && g.has_edge(q[i], q[j])).count();
        let edges: usize = (0..4).map(deg).sum::<usize>() / 2;
        // 2-regular on 4 vertices with 4 edges is exactly C4
        edges == 4 && (0..4).all(|i| deg(i) == 2)
    })
}

//! Brute-force ground truth: maximal biclique and star enumeration by subset
//! scan, exact chromatic numbers by backtracking, colouring verification, and
//! the block/P3 analyzers used to study 2-colourings of powers of cycles.
//!
//! Nothing here uses the closed forms of [`crate::power`] except
//! [`verify_colouring`], which switches to them for recognised power graphs.

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::power::{cyclic_distance, recognize_power_graph, Biclique, Mode};

/// Largest graph accepted by the subset-scan enumerators.
pub const ENUMERATION_CAP: usize = 22;
/// Largest graph accepted by the exact chromatic search.
pub const SEARCH_CAP: usize = 14;

fn check_cap(what: &'static str, cap: usize, got: usize) -> Result<()> {
    if got > cap {
        Err(Error::Capacity { what, cap, got })
    } else {
        Ok(())
    }
}

/// Sides `(a, b)` of `mask` if it induces a complete bipartite graph with an
/// edge; `a` contains the lowest vertex.
#[inline]
fn split_mask(g: &Graph, mask: u64) -> Option<(u64, u64)> {
    let pivot = mask.trailing_zeros() as usize;
    let b = mask & g.mask(pivot);
    if b == 0 {
        return None;
    }
    let a = mask & !b;
    let mut m = a;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if g.mask(v) & mask != b {
            return None;
        }
        m &= m - 1;
    }
    let mut m = b;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if g.mask(v) & mask != a {
            return None;
        }
        m &= m - 1;
    }
    Some((a, b))
}

fn scan(g: &Graph, mode: Mode) -> Result<Vec<VertexSet>> {
    let n = g.n();
    check_cap("subset-scan enumeration (vertices)", ENUMERATION_CAP, n)?;
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut found = Vec::new();
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let Some((a, b)) = split_mask(g, mask) else {
            continue;
        };
        let (na, nb) = (a.count_ones(), b.count_ones());
        if mode == Mode::Star && na != 1 && nb != 1 {
            continue;
        }
        let mut outside = full & !mask;
        let mut maximal = true;
        while outside != 0 {
            let w = outside.trailing_zeros() as usize;
            outside &= outside - 1;
            let seen = g.mask(w) & mask;
            // joining side a needs N(w) ∩ S = b; joining side b needs N(w) ∩ S = a
            let extends = match mode {
                Mode::Biclique => seen == b || seen == a,
                Mode::Star => (seen == b && nb == 1) || (seen == a && na == 1),
            };
            if extends {
                maximal = false;
                break;
            }
        }
        if maximal {
            found.push(VertexSet::from_mask(mask));
        }
    }
    found.sort();
    Ok(found)
}

/// Every biclique of `g`, sorted lexicographically. Exhaustive over subsets.
pub fn enumerate_maximal_bicliques(g: &Graph) -> Result<Vec<Biclique>> {
    Ok(scan(g, Mode::Biclique)?
        .into_iter()
        .map(|s| Biclique::classify(g, &s, None).expect("scan yields complete bipartite sets"))
        .collect())
}

/// Every star of `g` (maximal `K_{1,q}`, `q >= 1`), sorted lexicographically.
pub fn enumerate_maximal_stars(g: &Graph) -> Result<Vec<VertexSet>> {
    scan(g, Mode::Star)
}

/// Hyperedges of `g` under `mode`, from the subset scan.
pub fn enumerate_hyperedges(g: &Graph, mode: Mode) -> Result<Vec<VertexSet>> {
    scan(g, mode)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Lexicographically smallest monochromatic hyperedge.
    Monochromatic(VertexSet),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks `c` against an explicit, lexicographically sorted hyperedge list.
pub fn verify_against(edges: &[VertexSet], c: &Colouring) -> Verdict {
    edges
        .iter()
        .find(|e| {
            let mut it = e.iter().map(|v| c.colour(v));
            let first = it.next();
            it.all(|x| Some(x) == first)
        })
        .map_or(Verdict::Valid, |e| Verdict::Monochromatic(e.clone()))
}

/// Is `c` a biclique- (or star-) colouring of `g`? Recognised powers of paths
/// and cycles are checked against their closed-form hyperedges; any other
/// graph goes through the subset scan and is subject to [`ENUMERATION_CAP`].
pub fn verify_colouring(g: &Graph, c: &Colouring, mode: Mode) -> Result<Verdict> {
    if c.len() != g.n() {
        return Err(Error::input(format!(
            "colouring covers {} vertices, graph has {}",
            c.len(),
            g.n()
        )));
    }
    let edges = match recognize_power_graph(g) {
        Some(pg) => pg.hyperedges(mode),
        None => scan(g, mode)?,
    };
    Ok(verify_against(&edges, c))
}

/// Least number of colours admitting a `mode`-colouring of `g`, with an
/// optimal colouring. Backtracking with vertex 0 fixed to colour 0 and each
/// vertex allowed at most one colour beyond those already used.
pub fn exact_chromatic(g: &Graph, mode: Mode) -> Result<(usize, Colouring)> {
    let n = g.n();
    check_cap("exact chromatic search (vertices)", SEARCH_CAP, n)?;
    if n == 0 {
        return Ok((0, Colouring::new(Vec::new())?));
    }
    let edges = scan(g, mode)?;
    // hyperedges are checked once their largest vertex is coloured
    let mut closing: Vec<Vec<&[usize]>> = vec![Vec::new(); n];
    for e in &edges {
        let m = e.members();
        closing[*m.last().unwrap()].push(m);
    }

    struct Search<'a> {
        n: usize,
        limit: usize,
        closing: &'a [Vec<&'a [usize]>],
        colours: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, v: usize, used: usize) -> bool {
            if v == self.n {
                return true;
            }
            let top = used.min(self.limit - 1);
            for col in 0..=top {
                self.colours[v] = col;
                let ok = self.closing[v]
                    .iter()
                    .all(|e| e.iter().any(|&x| self.colours[x] != col));
                if ok && self.go(v + 1, used.max(col + 1)) {
                    return true;
                }
            }
            false
        }
    }

    for limit in 1..=n {
        let mut s = Search {
            n,
            limit,
            closing: &closing,
            colours: vec![0; n],
        };
        if s.go(1, 1) {
            let c = Colouring::new(s.colours)?;
            debug_assert_eq!(c.num_colours(), limit);
            debug_assert!(verify_against(&edges, &c).is_valid());
            return Ok((limit, c));
        }
    }
    unreachable!("a proper colouring with n colours always exists")
}

/// A monochromatic induced `P3` of a power of a cycle, with its reach.
/// Returns the one of least reach, ties broken lexicographically.
pub fn find_mono_p3(g: &Graph, c: &Colouring) -> Result<Option<(VertexSet, usize)>> {
    let n = g.n();
    if c.len() != n {
        return Err(Error::input(format!(
            "colouring covers {} vertices, graph has {}",
            c.len(),
            n
        )));
    }
    let mut best: Option<(usize, VertexSet)> = None;
    for s in 0..n {
        let nb: Vec<usize> = g
            .neighbors(s)
            .filter(|&v| c.colour(v) == c.colour(s))
            .collect();
        for (i, &h) in nb.iter().enumerate() {
            for &r in &nb[i + 1..] {
                if g.has_edge(h, r) {
                    continue;
                }
                let reach = cyclic_distance(n, h, s) + cyclic_distance(n, s, r);
                let mut v = vec![h, s, r];
                v.sort_unstable();
                let cand = (reach, VertexSet::from_sorted(v));
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
    }
    Ok(best.map(|(r, s)| (s, r)))
}

/// Maximal monochromatic runs `(colour, size)` in index order. In cyclic mode
/// a run wrapping from the last vertex to the first is merged and listed last.
pub fn block_profile(c: &Colouring, cyclic: bool) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &col in c.colours() {
        match runs.last_mut() {
            Some((last, size)) if *last == col => *size += 1,
            _ => runs.push((col, 1)),
        }
    }
    if cyclic && runs.len() > 1 && runs[0].0 == runs[runs.len() - 1].0 {
        let (_, head) = runs.remove(0);
        runs.last_mut().unwrap().1 += head;
    }
    runs
}

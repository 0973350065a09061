//! Optimal biclique- and star-colourings of powers of paths and cycles.
//!
//! Every construction lays out monochromatic blocks starting at vertex 0 and
//! checks its output against the closed-form hyperedges before returning it.
//! Colour ids: 0 = blue, 1 = red, 2 = green; further ids are only used for
//! the dense cases where many vertices are pairwise forced apart.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::oracle::{find_mono_p3, verify_against, Verdict};
use crate::power::{gen_power_cycle, Mode, PowerCycleParams, PowerGraph, PowerPathParams};

pub const BLUE: usize = 0;
pub const RED: usize = 1;
pub const GREEN: usize = 2;

/// A total map from vertex index to colour id. Ids are dense: every id in
/// `0..num_colours` is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<usize>,
    num_colours: usize,
}

impl Colouring {
    pub fn new(colours: Vec<usize>) -> Result<Self> {
        let num_colours = colours.iter().max().map_or(0, |m| m + 1);
        let mut used = vec![false; num_colours];
        for &c in &colours {
            used[c] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::input(format!(
                "colour {missing} is unused; colour ids must be dense in 0..{num_colours}"
            )));
        }
        Ok(Colouring {
            colours,
            num_colours,
        })
    }

    /// Alternating red/blue blocks of the given sizes, starting with red.
    pub fn alternating_blocks(sizes: &[usize]) -> Result<Self> {
        Colouring::new(alternating(sizes))
    }

    #[inline]
    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn num_colours(&self) -> usize {
        self.num_colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }
}

fn alternating(sizes: &[usize]) -> Vec<usize> {
    let mut colours = Vec::with_capacity(sizes.iter().sum());
    for (i, &s) in sizes.iter().enumerate() {
        let c = if i % 2 == 0 { RED } else { BLUE };
        colours.extend(std::iter::repeat_n(c, s));
    }
    colours
}

/// `n = a*k + t` with `a >= 2` even and `0 <= t < 2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvenDivision {
    pub a: usize,
    pub t: usize,
}

pub fn even_division(n: usize, k: usize) -> Result<EvenDivision> {
    if k == 0 {
        return Err(Error::domain("even division needs k >= 1"));
    }
    if n < 2 * k {
        return Err(Error::domain(format!(
            "even division needs n >= 2k, got n={n}, k={k}"
        )));
    }
    Ok(EvenDivision {
        a: 2 * (n / (2 * k)),
        t: n % (2 * k),
    })
}

/// Numbers of size-`k` blocks (`a`) and size-`k+1` blocks (`b`) in a cyclic
/// red/blue layout: `n = a*k + b*(k+1)` with `a + b >= 2` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbCertificate {
    pub a: usize,
    pub b: usize,
}

impl AbCertificate {
    pub fn is_valid_for(&self, n: usize, k: usize) -> bool {
        let sum = self.a + self.b;
        self.a * k + self.b * (k + 1) == n && sum >= 2 && sum.is_multiple_of(2)
    }

    /// Block sizes: `a` blocks of `k` followed by `b` blocks of `k + 1`.
    pub fn block_sizes(&self, k: usize) -> Vec<usize> {
        let mut v = vec![k; self.a];
        v.extend(std::iter::repeat_n(k + 1, self.b));
        v
    }
}

/// Evidence attached to a chromatic value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Block counts of an optimal 2-colouring.
    Blocks(AbCertificate),
    /// Pairwise adjacent universal vertices; every pair is a `P2` biclique,
    /// so they need distinct colours.
    UniversalClique(VertexSet),
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::Blocks(ab) => write!(f, "a={};b={}", ab.a, ab.b),
            Certificate::UniversalClique(s) => write!(f, "universal={}", s.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub value: usize,
    pub colouring: Colouring,
    pub certificate: Option<Certificate>,
}

fn finish(
    pg: &PowerGraph,
    mode: Mode,
    value: usize,
    colouring: Colouring,
    certificate: Option<Certificate>,
) -> Result<ChromaticResult> {
    if colouring.num_colours() != value || colouring.len() != pg.n() {
        return Err(Error::Internal(format!(
            "{} colouring uses {} colours on {} vertices, expected {value} on {}",
            pg.name(),
            colouring.num_colours(),
            colouring.len(),
            pg.n()
        )));
    }
    if let Verdict::Monochromatic(w) = verify_against(&pg.hyperedges(mode), &colouring) {
        return Err(Error::Internal(format!(
            "{} {mode}-colouring leaves {w} monochromatic",
            pg.name()
        )));
    }
    Ok(ChromaticResult {
        value,
        colouring,
        certificate,
    })
}

fn complete(pg: &PowerGraph, mode: Mode) -> Result<ChromaticResult> {
    let n = pg.n();
    let colouring = Colouring::new((0..n).collect())?;
    let witness = Certificate::UniversalClique(VertexSet::from_sorted((0..n).collect()));
    finish(pg, mode, n, colouring, Some(witness))
}

/// The c0/c1 test: is there `n = c*k + b` with `c` even and `b <= c`? If so
/// `(a, b) = (c - b, b)`. Meaningful for `n >= 2k + 2`; `c0` is tried first.
fn ab_certificate(n: usize, k: usize) -> Option<AbCertificate> {
    let c0 = n / k;
    [Some(c0), c0.checked_sub(1)]
        .into_iter()
        .flatten()
        .filter(|&c| c >= 2 && c % 2 == 0)
        .map(|c| (c, n - c * k))
        .find(|&(c, b)| b <= c)
        .map(|(c, b)| AbCertificate { a: c - b, b })
}

/// Decides whether `C_n^k` (with `n >= 3k + 2`) has biclique-chromatic number
/// 2 or 3; a 2 comes with block counts.
pub fn decide_two_vs_three(n: usize, k: usize) -> Result<(usize, Option<AbCertificate>)> {
    if k == 0 || n < 3 * k + 2 {
        return Err(Error::domain(format!(
            "two-vs-three decision needs k >= 1 and n >= 3k + 2, got n={n}, k={k}"
        )));
    }
    Ok(match ab_certificate(n, k) {
        Some(ab) => (2, Some(ab)),
        None => (3, None),
    })
}

/// Block counts for `n >= 2k^2` read straight off the even division
/// `n = a'k + t`: `(a, b) = (a' - t, t)`.
pub fn large_n_shortcut(n: usize, k: usize) -> Result<AbCertificate> {
    if k == 0 || n < 2 * k * k {
        return Err(Error::domain(format!(
            "large-n shortcut needs n >= 2k^2, got n={n}, k={k}"
        )));
    }
    let d = even_division(n, k)?;
    let ab = AbCertificate {
        a: d.a - d.t,
        b: d.t,
    };
    debug_assert!(ab.is_valid_for(n, k));
    Ok(ab)
}

/// Optimal biclique-colouring of `P_n^k`.
pub fn colour_power_path(p: PowerPathParams) -> Result<ChromaticResult> {
    let (n, k) = (p.n(), p.k());
    let pg = PowerGraph::Path(p);
    if n <= k + 1 {
        return complete(&pg, Mode::Biclique);
    }
    if n <= 2 * k {
        // v_{n-k} ..= v_{k-1} get private colours, the rest split 0 | 1
        let colours = (0..n)
            .map(|v| {
                if v < n - k {
                    BLUE
                } else if v < k {
                    GREEN + (v - (n - k))
                } else {
                    RED
                }
            })
            .collect();
        let witness = VertexSet::from_sorted((n - 1 - k..=k).collect());
        return finish(
            &pg,
            Mode::Biclique,
            2 * k + 2 - n,
            Colouring::new(colours)?,
            Some(Certificate::UniversalClique(witness)),
        );
    }
    // n = a*k + t: a alternating blocks of k, then t more in the next colour
    let (a, t) = (n / k, n % k);
    let mut sizes = vec![k; a];
    if t > 0 {
        sizes.push(t);
    }
    finish(
        &pg,
        Mode::Biclique,
        2,
        Colouring::alternating_blocks(&sizes)?,
        None,
    )
}

/// Optimal biclique-colouring of `C_n^k`.
pub fn colour_power_cycle(p: PowerCycleParams) -> Result<ChromaticResult> {
    let (n, k) = (p.n(), p.k());
    let pg = PowerGraph::Cycle(p);
    if n <= 2 * k + 1 {
        return complete(&pg, Mode::Biclique);
    }
    if n <= 3 * k + 1 {
        return finish(
            &pg,
            Mode::Biclique,
            2,
            Colouring::alternating_blocks(&[k, n - k])?,
            None,
        );
    }
    match decide_two_vs_three(n, k)? {
        (2, Some(ab)) => finish(
            &pg,
            Mode::Biclique,
            2,
            Colouring::alternating_blocks(&ab.block_sizes(k))?,
            Some(Certificate::Blocks(ab)),
        ),
        _ => finish(&pg, Mode::Biclique, 3, three_colour_no_mono_p3(p)?, None),
    }
}

/// A colouring of `C_n^k` (`n >= 2k + 2`) with at most three colours and no
/// monochromatic induced `P3`. With `n = a*k + t` from [`even_division`]:
///
/// * `t <= k`: `a` alternating red/blue blocks of `k`, then green `t`;
/// * `k < t < 2k`: `a - 1` alternating red/blue blocks of `k`, then
///   green `k`, blue `k`, green `t - k`.
///
/// When `t = 0` only two colours are used.
pub fn three_colour_no_mono_p3(p: PowerCycleParams) -> Result<Colouring> {
    let (n, k) = (p.n(), p.k());
    if n < 2 * k + 2 {
        return Err(Error::domain(format!(
            "3-colouring without monochromatic P3 needs n >= 2k + 2, got n={n}, k={k}"
        )));
    }
    let EvenDivision { a, t } = even_division(n, k)?;
    let mut colours = alternating(&vec![k; if t <= k { a } else { a - 1 }]);
    if t <= k {
        colours.extend(std::iter::repeat_n(GREEN, t));
    } else {
        colours.extend(std::iter::repeat_n(GREEN, k));
        colours.extend(std::iter::repeat_n(BLUE, k));
        colours.extend(std::iter::repeat_n(GREEN, t - k));
    }
    let colouring = Colouring::new(colours)?;
    if let Some((p3, reach)) = find_mono_p3(&gen_power_cycle(p), &colouring)? {
        return Err(Error::Internal(format!(
            "C_{n}^{k} 3-colouring has monochromatic P3 {p3} of reach {reach}"
        )));
    }
    Ok(colouring)
}

/// Optimal star-colouring of a power of a path or cycle.
pub fn star_chromatic(pg: PowerGraph) -> Result<ChromaticResult> {
    let p = match pg {
        PowerGraph::Path(p) => {
            // stars and bicliques of a power of a path coincide
            let r = colour_power_path(p)?;
            return finish(&pg, Mode::Star, r.value, r.colouring, r.certificate);
        }
        PowerGraph::Cycle(p) => p,
    };
    let (n, k) = (p.n(), p.k());
    if n <= 2 * k + 1 {
        return complete(&pg, Mode::Star);
    }
    if n >= 3 * k + 2 {
        let r = colour_power_cycle(p)?;
        return finish(&pg, Mode::Star, r.value, r.colouring, r.certificate);
    }
    match ab_certificate(n, k) {
        Some(ab) => finish(
            &pg,
            Mode::Star,
            2,
            Colouring::alternating_blocks(&ab.block_sizes(k))?,
            Some(Certificate::Blocks(ab)),
        ),
        None => finish(&pg, Mode::Star, 3, three_colour_no_mono_p3(p)?, None),
    }
}

/// Optimal `mode`-colouring of a power graph.
pub fn chromatic(pg: PowerGraph, mode: Mode) -> Result<ChromaticResult> {
    match (mode, pg) {
        (Mode::Biclique, PowerGraph::Path(p)) => colour_power_path(p),
        (Mode::Biclique, PowerGraph::Cycle(p)) => colour_power_cycle(p),
        (Mode::Star, _) => star_chromatic(pg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize, k: usize) -> PowerPathParams {
        PowerPathParams::new(n, k).unwrap()
    }

    fn cycle(n: usize, k: usize) -> PowerCycleParams {
        PowerCycleParams::new(n, k).unwrap()
    }

    #[test]
    fn colouring_ids_must_be_dense() {
        assert!(Colouring::new(vec![0, 2]).is_err());
        assert_eq!(Colouring::new(vec![1, 0, 1]).unwrap().num_colours(), 2);
    }

    #[test]
    fn even_division_examples() {
        assert_eq!(even_division(11, 3).unwrap(), EvenDivision { a: 2, t: 5 });
        assert_eq!(even_division(6, 3).unwrap(), EvenDivision { a: 2, t: 0 });
        assert_eq!(even_division(14, 3).unwrap(), EvenDivision { a: 4, t: 2 });
        assert!(matches!(even_division(5, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn path_values() {
        assert_eq!(colour_power_path(path(4, 3)).unwrap().value, 4);
        let r = colour_power_path(path(5, 3)).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(
            r.certificate,
            Some(Certificate::UniversalClique(VertexSet::from_sorted(vec![
                1, 2, 3
            ])))
        );
        let r = colour_power_path(path(7, 3)).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(
            r.colouring.colours(),
            &[RED, RED, RED, BLUE, BLUE, BLUE, RED]
        );
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(colour_power_path(path(1, 1)).unwrap().value, 1);
        assert_eq!(colour_power_path(path(2, 1)).unwrap().value, 2);
        assert_eq!(colour_power_cycle(cycle(1, 1)).unwrap().value, 1);
        assert_eq!(colour_power_cycle(cycle(2, 3)).unwrap().value, 2);
    }

    #[test]
    fn cycle_values() {
        assert_eq!(colour_power_cycle(cycle(11, 3)).unwrap().value, 3);
        let r = colour_power_cycle(cycle(11, 4)).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.colouring.colours()[..5], [RED, RED, RED, RED, BLUE]);
        let r = colour_power_cycle(cycle(14, 3)).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(
            r.certificate,
            Some(Certificate::Blocks(AbCertificate { a: 2, b: 2 }))
        );
    }

    #[test]
    fn decisions() {
        assert_eq!(decide_two_vs_three(11, 3).unwrap(), (3, None));
        assert_eq!(
            decide_two_vs_three(14, 3).unwrap(),
            (2, Some(AbCertificate { a: 2, b: 2 }))
        );
        assert_eq!(decide_two_vs_three(17, 3).unwrap(), (3, None));
        assert!(matches!(decide_two_vs_three(10, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn three_colour_layouts() {
        let c = three_colour_no_mono_p3(cycle(8, 3)).unwrap();
        assert_eq!(
            c.colours(),
            &[RED, RED, RED, BLUE, BLUE, BLUE, GREEN, GREEN]
        );
        let c = three_colour_no_mono_p3(cycle(11, 3)).unwrap();
        assert_eq!(
            c.colours(),
            &[RED, RED, RED, GREEN, GREEN, GREEN, BLUE, BLUE, BLUE, GREEN, GREEN]
        );
        let c = three_colour_no_mono_p3(cycle(4, 1)).unwrap();
        assert_eq!(c.colours(), &[RED, BLUE, RED, BLUE]);
        assert!(matches!(
            three_colour_no_mono_p3(cycle(7, 3)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn star_values() {
        let s = star_chromatic(PowerGraph::Cycle(cycle(11, 4))).unwrap();
        assert_eq!(s.value, 3);
        assert_eq!(colour_power_cycle(cycle(11, 4)).unwrap().value, 2);
        assert_eq!(
            star_chromatic(PowerGraph::Path(path(7, 3))).unwrap().value,
            2
        );
        let s = star_chromatic(PowerGraph::Cycle(cycle(18, 3))).unwrap();
        assert_eq!(s.value, 2);
        assert_eq!(
            s.certificate,
            Some(Certificate::Blocks(AbCertificate { a: 6, b: 0 }))
        );
    }

    #[test]
    fn shortcut() {
        assert_eq!(
            large_n_shortcut(18, 3).unwrap(),
            AbCertificate { a: 6, b: 0 }
        );
        assert_eq!(
            large_n_shortcut(8, 2).unwrap(),
            AbCertificate { a: 4, b: 0 }
        );
        let ab = large_n_shortcut(50, 4).unwrap();
        assert_eq!(ab, AbCertificate { a: 10, b: 2 });
        assert!(ab.is_valid_for(50, 4));
        assert!(large_n_shortcut(17, 3).is_err());
    }
}

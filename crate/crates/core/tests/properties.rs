use std::collections::{BTreeSet, VecDeque};

use biclique_colour::colouring::{
    colour_power_cycle, colour_power_path, decide_two_vs_three, star_chromatic, Certificate,
    Colouring,
};
use biclique_colour::graph::{
    contains_induced_c4, contains_k4, induced_subgraph, is_complete_bipartite, Graph, VertexSet,
};
use biclique_colour::io::{graph_from_json, graph_to_json};
use biclique_colour::oracle::{
    block_profile, enumerate_maximal_bicliques, enumerate_maximal_stars, exact_chromatic,
    find_mono_p3, verify_colouring, Verdict,
};
use biclique_colour::power::{
    cycle_bicliques, gen_power_cycle, Mode, PowerCycleParams, PowerGraph, PowerPathParams, Shape,
};
use biclique_colour::reduction::{build_instance, normalize, CnfFormula};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), prop::collection::vec(any::<bool>(), pairs), 0..3u8)
        })
        .prop_map(|(n, bits, labelled)| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            if labelled == 0 {
                g
            } else {
                g.with_label(format!("random \"{n}\""))
            }
        })
}

fn colouring_strategy(n: usize, max_colours: usize) -> impl Strategy<Value = Colouring> {
    prop::collection::vec(0..max_colours, n).prop_map(|raw| {
        // relabel in order of first appearance so ids are dense
        let mut map = Vec::new();
        let dense = raw
            .into_iter()
            .map(|c| match map.iter().position(|&x| x == c) {
                Some(i) => i,
                None => {
                    map.push(c);
                    map.len() - 1
                }
            })
            .collect();
        Colouring::new(dense).unwrap()
    })
}

fn graph_and_colouring(
    max_n: usize,
    max_colours: usize,
) -> impl Strategy<Value = (Graph, Colouring)> {
    graph_strategy(max_n).prop_flat_map(move |g| {
        let n = g.n();
        (Just(g), colouring_strategy(n, max_colours))
    })
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Complete-bipartite test by BFS 2-colouring of the induced subgraph, then
/// completeness across the two sides. Returns the two sides as a set pair.
fn bfs_complete_bipartite(g: &Graph, s: &[usize]) -> Option<BTreeSet<Vec<usize>>> {
    let mut side = vec![None; s.len()];
    for start in 0..s.len() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..s.len() {
                if i != j && g.has_edge(s[i], s[j]) {
                    match side[j] {
                        None => {
                            side[j] = Some(!side[i].unwrap());
                            queue.push_back(j);
                        }
                        Some(x) if x == side[i].unwrap() => return None,
                        _ => {}
                    }
                }
            }
        }
    }
    let a: Vec<usize> = (0..s.len())
        .filter(|&i| side[i] == Some(false))
        .map(|i| s[i])
        .collect();
    let b: Vec<usize> = (0..s.len())
        .filter(|&i| side[i] == Some(true))
        .map(|i| s[i])
        .collect();
    if a.is_empty() || b.is_empty() {
        return None;
    }
    if a.iter().all(|&x| b.iter().all(|&y| g.has_edge(x, y))) {
        Some([a, b].into())
    } else {
        None
    }
}

/// Maximal complete-bipartite sets (all of them, or only the star-shaped ones)
/// by scanning every subset and discarding those strictly inside another.
fn maximal_by_subset_scan(g: &Graph, stars_only: bool) -> Vec<VertexSet> {
    let n = g.n();
    let good: Vec<u32> = (1u32..1 << n)
        .filter(|m| m.count_ones() >= 2)
        .filter(|&m| match bfs_complete_bipartite(g, &members(m, n)) {
            Some(sides) => !stars_only || sides.iter().any(|s| s.len() == 1),
            None => false,
        })
        .collect();
    let mut out: Vec<VertexSet> = good
        .iter()
        .filter(|&&m| !good.iter().any(|&o| o != m && o & m == m))
        .map(|&m| VertexSet::new(members(m, n)).unwrap())
        .collect();
    out.sort();
    out
}

fn sat(f: &CnfFormula) -> bool {
    f.truth_table_sat().unwrap().is_some()
}

fn formula_strategy() -> impl Strategy<Value = CnfFormula> {
    (1..=6usize)
        .prop_flat_map(|vars| {
            let clause = prop::collection::vec((1..=vars as i64, any::<bool>()), 1..=3);
            (Just(vars), prop::collection::vec(clause, 1..=8))
        })
        .prop_map(|(vars, clauses)| {
            let ints: Vec<Vec<i64>> = clauses
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|(v, neg)| if neg { -v } else { v })
                        .collect()
                })
                .collect();
            let refs: Vec<&[i64]> = ints.iter().map(|c| c.as_slice()).collect();
            CnfFormula::from_ints(vars, &refs).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph_json_round_trip(g in graph_strategy(16)) {
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.label(), g.label());
        prop_assert_eq!(graph_to_json(&back), graph_to_json(&g));
    }

    #[test]
    fn complete_bipartite_matches_bfs(g in graph_strategy(10)) {
        let n = g.n();
        for m in (1u32..1 << n).filter(|m| m.count_ones() >= 2) {
            let s = members(m, n);
            let ours = is_complete_bipartite(&g, &VertexSet::new(s.clone()).unwrap()).unwrap();
            let theirs = bfs_complete_bipartite(&g, &s);
            match (ours, theirs) {
                (None, None) => {}
                (Some(p), Some(sides)) => {
                    let got: BTreeSet<Vec<usize>> =
                        [p.left.members().to_vec(), p.right.members().to_vec()].into();
                    prop_assert_eq!(got, sides);
                    prop_assert!(p.left.contains(s[0]));
                }
                (a, b) => prop_assert!(false, "{s:?}: ours {a:?}, bfs {b:?}"),
            }
        }
    }

    #[test]
    fn k4_and_c4_match_subset_scan(g in graph_strategy(12)) {
        let n = g.n();
        let quads: Vec<(Vec<usize>, Vec<usize>)> = (0u32..1 << n)
            .filter(|m| m.count_ones() == 4)
            .map(|m| {
                let s = members(m, n);
                let degs = s.iter().map(|&x| s.iter().filter(|&&y| g.has_edge(x, y)).count()).collect();
                (s, degs)
            })
            .collect();
        let k4 = quads.iter().filter(|(_, d)| d.iter().all(|&x| x == 3)).map(|(s, _)| s.clone()).min();
        let c4 = quads
            .iter()
            .filter(|(s, d)| d.iter().all(|&x| x == 2) && bfs_complete_bipartite(&g, s).is_some())
            .map(|(s, _)| s.clone())
            .min();
        prop_assert_eq!(contains_k4(&g).map(|s| s.members().to_vec()), k4);
        prop_assert_eq!(contains_induced_c4(&g).map(|s| s.members().to_vec()), c4);
    }

    #[test]
    fn biclique_enumeration_is_complete(g in graph_strategy(10)) {
        let ours: Vec<VertexSet> =
            enumerate_maximal_bicliques(&g).unwrap().into_iter().map(|b| b.vertices).collect();
        prop_assert_eq!(ours, maximal_by_subset_scan(&g, false));
        prop_assert_eq!(enumerate_maximal_stars(&g).unwrap(), maximal_by_subset_scan(&g, true));
    }

    #[test]
    fn verify_matches_exhaustive_scan((g, c) in graph_and_colouring(10, 3)) {
        for (mode, stars_only) in [(Mode::Biclique, false), (Mode::Star, true)] {
            let scan = maximal_by_subset_scan(&g, stars_only);
            let mono = scan.iter().find(|s| {
                let first = c.colour(s.members()[0]);
                s.iter().all(|v| c.colour(v) == first)
            });
            match verify_colouring(&g, &c, mode).unwrap() {
                Verdict::Valid => prop_assert!(mono.is_none()),
                Verdict::Monochromatic(w) => prop_assert_eq!(Some(&w), mono),
            }
        }
    }

    #[test]
    fn exact_chromatic_bounded_by_any_valid_colouring((g, c) in graph_and_colouring(8, 4)) {
        for mode in [Mode::Biclique, Mode::Star] {
            let (best, witness) = exact_chromatic(&g, mode).unwrap();
            prop_assert_eq!(witness.num_colours(), best);
            prop_assert!(verify_colouring(&g, &witness, mode).unwrap().is_valid());
            if verify_colouring(&g, &c, mode).unwrap().is_valid() {
                prop_assert!(best <= c.num_colours());
            }
        }
    }

    #[test]
    fn normalize_is_equisatisfiable(f in formula_strategy()) {
        match normalize(&f) {
            Ok(g) => {
                prop_assert!(g.is_normalized(), "{}", g);
                prop_assert_eq!(sat(&f), sat(&g), "{} vs {}", f, g);
                prop_assert!(g.clauses().len() <= 7 * f.clauses().len());
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn universal_bicliques_pick_one_literal_per_variable(f in formula_strategy()) {
        let g = normalize(&f).unwrap();
        prop_assume!(2 * g.num_vars() < 16);
        let inst = build_instance(&g).unwrap();
        let sub = induced_subgraph(&inst.graph, &inst.v_prime).unwrap();
        for b in enumerate_maximal_bicliques(&sub).unwrap() {
            if !b.vertices.contains(0) {
                // the only other bicliques are the literal-pair edges
                prop_assert_eq!(b.vertices.len(), 2);
                continue;
            }
            for v in 0..g.num_vars() {
                let picked = [1 + 2 * v, 2 + 2 * v].iter().filter(|&&x| b.vertices.contains(x)).count();
                prop_assert_eq!(picked, 1);
            }
        }
    }

    #[test]
    fn two_vs_three_matches_brute_force(k in 1..=20usize, extra in 0..=400usize) {
        let n = 3 * k + 2 + extra;
        let scan = (0..=n / (k + 1)).any(|b| {
            let rest = n - b * (k + 1);
            rest % k == 0 && (rest / k + b) % 2 == 0 && rest / k + b >= 2
        });
        let (value, cert) = decide_two_vs_three(n, k).unwrap();
        prop_assert_eq!(value, if scan { 2 } else { 3 });
        prop_assert_eq!(cert.is_some(), scan);
    }
}

#[test]
fn emitted_colourings_verify_and_use_value_colours() {
    for k in 1..=8 {
        for n in 1..=80 {
            let pp = PowerPathParams::new(n, k).unwrap();
            let pc = PowerCycleParams::new(n, k).unwrap();
            let results = [
                (
                    PowerGraph::Path(pp),
                    Mode::Biclique,
                    colour_power_path(pp).unwrap(),
                ),
                (
                    PowerGraph::Cycle(pc),
                    Mode::Biclique,
                    colour_power_cycle(pc).unwrap(),
                ),
                (
                    PowerGraph::Cycle(pc),
                    Mode::Star,
                    star_chromatic(PowerGraph::Cycle(pc)).unwrap(),
                ),
            ];
            for (pg, mode, r) in results {
                assert_eq!(r.colouring.num_colours(), r.value, "{} {mode}", pg.name());
                assert!(
                    verify_colouring(&pg.graph(), &r.colouring, mode)
                        .unwrap()
                        .is_valid(),
                    "{} {mode}",
                    pg.name()
                );
            }
        }
    }
}

#[test]
fn dense_path_witness_is_a_universal_clique() {
    for k in 1..=8 {
        for n in 1..=2 * k {
            let p = PowerPathParams::new(n, k).unwrap();
            let g = PowerGraph::Path(p).graph();
            let r = colour_power_path(p).unwrap();
            let Some(Certificate::UniversalClique(w)) = r.certificate else {
                panic!("P_{n}^{k}: no witness");
            };
            assert_eq!(w.len(), r.value, "P_{n}^{k}");
            for v in w.iter() {
                assert_eq!(g.degree(v), n - 1, "P_{n}^{k}: v{v} not universal");
            }
        }
    }
}

#[test]
fn star_and_biclique_values_agree_outside_the_c4_range() {
    for k in 1..=8 {
        for n in 1..=60 {
            let pp = PowerPathParams::new(n, k).unwrap();
            assert_eq!(
                star_chromatic(PowerGraph::Path(pp)).unwrap().value,
                colour_power_path(pp).unwrap().value
            );
            if (2 * k + 2..=3 * k + 1).contains(&n) {
                continue;
            }
            let pc = PowerCycleParams::new(n, k).unwrap();
            assert_eq!(
                star_chromatic(PowerGraph::Cycle(pc)).unwrap().value,
                colour_power_cycle(pc).unwrap().value,
                "C_{n}^{k}"
            );
        }
    }
}

#[test]
fn cycle_stars_differ_from_bicliques_only_where_c4s_exist() {
    for k in 1..=6 {
        for n in 1..=40 {
            let pg = PowerGraph::Cycle(PowerCycleParams::new(n, k).unwrap());
            let bicliques = pg.bicliques();
            let b: BTreeSet<VertexSet> = bicliques.iter().map(|x| x.vertices.clone()).collect();
            let s: BTreeSet<VertexSet> = pg.stars().into_iter().collect();
            // C4 bicliques exist exactly for 2k+2 <= n <= 4k
            if !(2 * k + 2..=4 * k).contains(&n) {
                assert_eq!(s, b, "C_{n}^{k}");
                continue;
            }
            assert_ne!(s, b, "C_{n}^{k}");
            let c4s: Vec<&VertexSet> = bicliques
                .iter()
                .filter(|x| x.shape == Shape::C4)
                .map(|x| &x.vertices)
                .collect();
            for w in s.symmetric_difference(&b) {
                if s.contains(w) {
                    assert_eq!(w.len(), 3, "C_{n}^{k}: extra star {w}");
                    assert!(
                        c4s.iter().any(|c| w.is_subset(c)),
                        "C_{n}^{k}: {w} not in a C4"
                    );
                } else {
                    assert_eq!(w.len(), 4, "C_{n}^{k}: missing biclique {w}");
                }
            }
        }
    }
}

fn two_colourings(n: usize) -> impl Iterator<Item = Colouring> {
    (0u32..1 << (n - 1)).map(move |m| {
        // vertex 0 fixed to colour 0; the other half is the swapped mirror
        Colouring::new((0..n).map(|i| (m << 1 >> i & 1) as usize).collect()).unwrap()
    })
}

/// Away from `n = 2k + 2` the block/P3 dichotomy holds exhaustively.
#[test]
fn block_dichotomy_for_n_at_least_2k_plus_3() {
    for k in 1..=4 {
        for n in 2 * k + 3..=13 {
            let g = gen_power_cycle(PowerCycleParams::new(n, k).unwrap());
            for c in two_colourings(n) {
                let ok = c.num_colours() == 2
                    && block_profile(&c, true)
                        .iter()
                        .all(|&(_, s)| s == k || s == k + 1);
                let mono = find_mono_p3(&g, &c).unwrap();
                assert_eq!(ok, mono.is_none(), "C_{n}^{k} {:?}", c.colours());
                if let Some((_, reach)) = mono {
                    assert!(
                        reach == k + 1 || reach == k + 2,
                        "C_{n}^{k} {:?}",
                        c.colours()
                    );
                }
            }
        }
    }
}

/// At `n = 2k + 2` every vertex misses only its antipode, so a colour class
/// with no antipodal pair is a clique: short blocks without a monochromatic P3.
#[test]
fn block_dichotomy_breaks_at_n_equal_2k_plus_2() {
    let g = gen_power_cycle(PowerCycleParams::new(6, 2).unwrap());
    let c = Colouring::new(vec![0, 1, 0, 1, 0, 1]).unwrap();
    assert_eq!(
        block_profile(&c, true),
        vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]
    );
    assert_eq!(find_mono_p3(&g, &c).unwrap(), None);
    assert!(verify_colouring(&g, &c, Mode::Biclique).unwrap().is_valid());

    let counts: Vec<usize> = (1..=4)
        .map(|k| {
            let n = 2 * k + 2;
            let g = gen_power_cycle(PowerCycleParams::new(n, k).unwrap());
            two_colourings(n)
                .filter(|c| {
                    c.num_colours() == 2
                        && !block_profile(c, true)
                            .iter()
                            .all(|&(_, s)| s == k || s == k + 1)
                        && find_mono_p3(&g, c).unwrap().is_none()
                })
                .count()
        })
        .collect();
    // up to the colour swap
    assert_eq!(counts, vec![0, 1, 4, 11]);
}

#[test]
fn n_3k_plus_2_violations_have_reach_k_plus_1_p3_or_mono_c4() {
    for k in 1..=3 {
        let n = 3 * k + 2;
        let p = PowerCycleParams::new(n, k).unwrap();
        let g = gen_power_cycle(p);
        let c4s: Vec<VertexSet> = cycle_bicliques(p)
            .into_iter()
            .filter(|b| b.shape == Shape::C4)
            .map(|b| b.vertices)
            .collect();
        for c in two_colourings(n) {
            let ok = c.num_colours() == 2
                && block_profile(&c, true)
                    .iter()
                    .all(|&(_, s)| s == k || s == k + 1);
            if ok {
                continue;
            }
            let reach = find_mono_p3(&g, &c).unwrap().map(|m| m.1);
            let mono_c4 = c4s
                .iter()
                .any(|s| s.iter().all(|v| c.colour(v) == c.colour(s.members()[0])));
            assert!(
                reach == Some(k + 1) || mono_c4,
                "C_{n}^{k} {:?}",
                c.colours()
            );
        }
    }
}

//! The biclique-containment gadget built from a normalized 3SAT formula, a
//! subset-scan containment solver, and an end-to-end certification report.
//!
//! Vertex layout: `0` is the universal vertex `u`; variable `i` owns the
//! adjacent pair `x_i = 1 + 2i`, `-x_i = 2 + 2i`; clause `j` is vertex
//! `1 + 2n + j`. The distinguished subset is `V' = {0, ..., 2n}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use super::cnf::{CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::graph::{contains_induced_c4, contains_k4, Graph, VertexSet};

/// Largest `V'` accepted by the containment subset scan.
pub const CONTAINMENT_CAP: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Universal,
    Literal(Literal),
    Clause(usize),
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Role::Universal => write!(f, "u"),
            Role::Literal(l) => write!(f, "{l}"),
            Role::Clause(j) => write!(f, "c{}", j + 1),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub v_prime: VertexSet,
    pub roles: Vec<Role>,
}

impl ReductionInstance {
    pub fn universal(&self) -> usize {
        0
    }

    pub fn literal_vertex(l: Literal) -> usize {
        1 + 2 * l.var + usize::from(l.negated)
    }

    pub fn roles_map(&self) -> BTreeMap<String, String> {
        self.roles
            .iter()
            .enumerate()
            .map(|(v, r)| (v.to_string(), r.to_string()))
            .collect()
    }

    /// Graph JSON fields plus `v_prime` and `roles`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct InstanceFile<'a> {
            n: usize,
            edges: Vec<[usize; 2]>,
            label: &'a str,
            v_prime: &'a VertexSet,
            roles: BTreeMap<String, String>,
        }
        serde_json::to_string(&InstanceFile {
            n: self.graph.n(),
            edges: self
                .graph
                .edges()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
            label: self.graph.label().unwrap_or_default(),
            v_prime: &self.v_prime,
            roles: self.roles_map(),
        })
        .expect("instance serializes")
    }
}

/// Builds the gadget graph: adjacent literal pairs, one clause vertex per
/// clause joined to its literals, and a universal vertex.
pub fn build_instance(f: &CnfFormula) -> Result<ReductionInstance> {
    f.check_normalized()
        .map_err(|why| Error::contract(format!("formula is not normalized: {why}")))?;
    let nv = f.num_vars();
    let m = f.clauses().len();
    let total = 2 * nv + m + 1;
    let mut g = Graph::empty(total);
    let mut roles = Vec::with_capacity(total);
    roles.push(Role::Universal);
    for v in 0..nv {
        roles.push(Role::Literal(Literal::pos(v)));
        roles.push(Role::Literal(Literal::neg(v)));
        g.insert_edge(1 + 2 * v, 2 + 2 * v);
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        let cv = 1 + 2 * nv + j;
        roles.push(Role::Clause(j));
        for &l in clause {
            g.insert_edge(cv, ReductionInstance::literal_vertex(l));
        }
    }
    for v in 1..total {
        g.insert_edge(0, v);
    }
    let g = g.with_label(format!("containment gadget ({nv} vars, {m} clauses)"));
    Ok(ReductionInstance {
        graph: g,
        v_prime: VertexSet::from_sorted((0..=2 * nv).collect()),
        roles,
    })
}

/// Scans every subset of `v_prime` and calls `visit` with each one that is a
/// biclique of the whole graph `g`. Stops early when `visit` returns `false`.
fn scan_within(
    g: &Graph,
    v_prime: &VertexSet,
    mut visit: impl FnMut(VertexSet) -> bool,
) -> Result<()> {
    v_prime.check_within(g.n())?;
    let size = v_prime.len();
    if size > CONTAINMENT_CAP {
        return Err(Error::Capacity {
            what: "biclique containment subset scan (|V'|)",
            cap: CONTAINMENT_CAP,
            got: size,
        });
    }
    let members = v_prime.members();
    // local[w]: which members of V' are adjacent to vertex w of g
    let local: Vec<u32> = (0..g.n())
        .map(|w| {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &x)| g.has_edge(w, x))
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let mut slot = vec![None; g.n()];
    for (i, &x) in members.iter().enumerate() {
        slot[x] = Some(i);
    }
    let full: u32 = (1u32 << size) - 1;
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let pivot = members[mask.trailing_zeros() as usize];
        let b = local[pivot] & mask;
        if b == 0 {
            continue;
        }
        let a = mask & !b;
        let side_ok = |side: u32, other: u32| {
            let mut m = side;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                if local[members[i]] & mask != other {
                    return false;
                }
            }
            true
        };
        if !side_ok(a, b) || !side_ok(b, a) {
            continue;
        }
        let extendable = (0..g.n())
            .filter(|&w| slot[w].is_none_or(|i| mask >> i & 1 == 0))
            .any(|w| {
                let seen = local[w] & mask;
                seen == a || seen == b
            });
        if extendable {
            continue;
        }
        let inside = (0..size)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| members[i])
            .collect();
        if !visit(VertexSet::from_sorted(inside)) {
            break;
        }
    }
    Ok(())
}

/// A biclique of `g` lying entirely inside `v_prime`, if one exists.
pub fn biclique_containment(g: &Graph, v_prime: &VertexSet) -> Result<Option<VertexSet>> {
    let mut found = None;
    scan_within(g, v_prime, |s| {
        found = Some(s);
        false
    })?;
    Ok(found)
}

/// Every biclique of `g` lying inside `v_prime`, sorted.
pub fn bicliques_within(g: &Graph, v_prime: &VertexSet) -> Result<Vec<VertexSet>> {
    let mut all = Vec::new();
    scan_within(g, v_prime, |s| {
        all.push(s);
        true
    })?;
    all.sort();
    Ok(all)
}

/// Truth assignment `v_B` read off a biclique through `u`: `x_i` is true iff
/// its positive vertex is in `B`. `None` unless `B` holds `u` and exactly one
/// vertex of every literal pair.
pub fn assignment_of(num_vars: usize, b: &VertexSet) -> Option<Vec<bool>> {
    if !b.contains(0) || b.len() != num_vars + 1 {
        return None;
    }
    (0..num_vars)
        .map(|v| {
            let pos = b.contains(1 + 2 * v);
            let neg = b.contains(2 + 2 * v);
            (pos != neg).then_some(pos)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificationReport {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub num_vertices: usize,
    pub v_prime_size: usize,
    /// Truth-table answer.
    pub satisfiable: bool,
    pub satisfying_assignment: Option<Vec<bool>>,
    /// Subset-scan answer.
    pub containment: bool,
    pub containment_witness: Option<VertexSet>,
    pub equivalent: bool,
    pub k4_witness: Option<VertexSet>,
    pub c4_witness: Option<VertexSet>,
    pub k4_free: bool,
    pub c4_free: bool,
    /// Bicliques inside `V'` correspond one-to-one to satisfying assignments.
    pub correspondence_holds: bool,
    pub correspondence: Vec<(Vec<bool>, VertexSet)>,
}

impl CertificationReport {
    /// Everything the reduction promises holds for this formula.
    pub fn all_hold(&self) -> bool {
        self.equivalent && self.k4_free && self.c4_free && self.correspondence_holds
    }
}

/// Runs the reduction on a normalized formula and cross-checks it: truth
/// table against containment, `{K4, C4}`-freeness, and the biclique to
/// assignment correspondence.
pub fn certify_reduction(f: &CnfFormula) -> Result<CertificationReport> {
    let inst = build_instance(f)?;
    let sat = f.satisfying_assignments()?;
    let within = bicliques_within(&inst.graph, &inst.v_prime)?;
    let witness = biclique_containment(&inst.graph, &inst.v_prime)?;

    let mut correspondence = Vec::with_capacity(within.len());
    let mut all_through_u = true;
    for b in &within {
        match assignment_of(f.num_vars(), b) {
            Some(a) => correspondence.push((a, b.clone())),
            None => all_through_u = false,
        }
    }
    let from_bicliques: BTreeSet<Vec<bool>> =
        correspondence.iter().map(|(a, _)| a.clone()).collect();
    let from_table: BTreeSet<Vec<bool>> = sat.iter().cloned().collect();
    let correspondence_holds = all_through_u
        && from_bicliques.len() == correspondence.len()
        && from_bicliques == from_table;

    let k4 = contains_k4(&inst.graph);
    let c4 = contains_induced_c4(&inst.graph);
    let satisfiable = !sat.is_empty();
    Ok(CertificationReport {
        num_vars: f.num_vars(),
        num_clauses: f.clauses().len(),
        num_vertices: inst.graph.n(),
        v_prime_size: inst.v_prime.len(),
        satisfiable,
        satisfying_assignment: sat.into_iter().next(),
        containment: witness.is_some(),
        equivalent: satisfiable == witness.is_some(),
        containment_witness: witness,
        k4_free: k4.is_none(),
        c4_free: c4.is_none(),
        k4_witness: k4,
        c4_witness: c4,
        correspondence_holds,
        correspondence,
    })
}

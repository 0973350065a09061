//! CNF formulas with at most three literals per clause, DIMACS I/O, brute-force
//! satisfiability, and normalization into the shape the gadget requires.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest variable count accepted by the truth-table solver.
pub const TRUTH_TABLE_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn negate(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// DIMACS literal: `+v` / `-v`, 1-based.
    pub fn from_dimacs(x: i64) -> Option<Self> {
        let var = usize::try_from(x.unsigned_abs()).ok()?.checked_sub(1)?;
        Some(Literal {
            var,
            negated: x < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

impl std::fmt::Display for Literal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.negated {
            write!(f, "-x{}", self.var + 1)
        } else {
            write!(f, "x{}", self.var + 1)
        }
    }
}

pub type Clause = Vec<Literal>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Clauses may hold at most three literals over variables `< num_vars`.
    /// Empty clauses are accepted here and rejected by [`normalize`].
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if c.len() > 3 {
                return Err(Error::input(format!(
                    "clause {} has {} literals; at most 3 are supported",
                    j + 1,
                    c.len()
                )));
            }
            if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                return Err(Error::input(format!(
                    "clause {} mentions {l} but the formula has {num_vars} variables",
                    j + 1
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds from DIMACS-style integer clauses.
    pub fn from_ints(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for c in clauses {
            let mut clause = Vec::with_capacity(c.len());
            for &x in *c {
                clause.push(
                    Literal::from_dimacs(x)
                        .ok_or_else(|| Error::input(format!("invalid literal {x}")))?,
                );
            }
            out.push(clause);
        }
        CnfFormula::new(num_vars, out)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// All satisfying assignments, in increasing binary order (variable 0 is
    /// the least significant bit).
    pub fn satisfying_assignments(&self) -> Result<Vec<Vec<bool>>> {
        if self.num_vars > TRUTH_TABLE_CAP {
            return Err(Error::Capacity {
                what: "truth-table satisfiability (variables)",
                cap: TRUTH_TABLE_CAP,
                got: self.num_vars,
            });
        }
        let mut out = Vec::new();
        let mut assignment = vec![false; self.num_vars];
        for bits in 0u64..(1u64 << self.num_vars) {
            for (i, a) in assignment.iter_mut().enumerate() {
                *a = (bits >> i) & 1 == 1;
            }
            if self.eval(&assignment) {
                out.push(assignment.clone());
            }
        }
        Ok(out)
    }

    /// First satisfying assignment by truth table.
    pub fn truth_table_sat(&self) -> Result<Option<Vec<bool>>> {
        Ok(self.satisfying_assignments()?.into_iter().next())
    }

    /// Checks the three gadget preconditions (no clause holds a variable and
    /// its negation, every variable occurs, distinct clauses share at most
    /// one literal) plus non-empty clauses and at least one clause.
    pub fn check_normalized(&self) -> std::result::Result<(), String> {
        if self.clauses.is_empty() {
            return Err("formula has no clauses".into());
        }
        let mut seen = vec![false; self.num_vars];
        for (j, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(format!("clause {} is empty", j + 1));
            }
            for l in c {
                seen[l.var] = true;
                if c.contains(&l.negate()) {
                    return Err(format!("clause {} contains {l} and its negation", j + 1));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(format!("variable x{} occurs in no clause", v + 1));
        }
        if let Some((p, q)) = first_conflict(&self.clauses) {
            return Err(format!(
                "clauses {} and {} share more than one literal",
                p + 1,
                q + 1
            ));
        }
        Ok(())
    }

    pub fn is_normalized(&self) -> bool {
        self.check_normalized().is_ok()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(out, "{} ", l.to_dimacs()).unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

impl std::fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                write!(f, " & ")?;
            }
            write!(f, "(")?;
            for (i, l) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: message.into(),
    }
}

/// Parses DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header,
/// then zero-terminated clauses that may span lines. A `%` line ends input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate problem line"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(parse_err(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = parts[2]
                .parse()
                .map_err(|_| parse_err(line_no, "bad variable count"))?;
            let count = parts[3]
                .parse()
                .map_err(|_| parse_err(line_no, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(parse_err(line_no, "clause before `p cnf` header"));
        };
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad literal `{tok}`")))?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let lit = Literal::from_dimacs(x).expect("nonzero literal");
            if lit.var >= vars {
                return Err(parse_err(
                    line_no,
                    format!("literal {x} exceeds declared {vars} variables"),
                ));
            }
            current.push(lit);
        }
    }
    let Some((vars, count)) = header else {
        return Err(parse_err(last_line.max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(parse_err(
            last_line.max(1),
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

fn shared(a: &[Literal], b: &[Literal]) -> usize {
    a.iter().filter(|l| b.contains(l)).count()
}

fn first_conflict(clauses: &[Clause]) -> Option<(usize, usize)> {
    for q in 1..clauses.len() {
        for p in 0..q {
            if shared(&clauses[p], &clauses[q]) >= 2 {
                return Some((p, q));
            }
        }
    }
    None
}

/// Replaces `(l_i, l_j, l_k)` by `(l_i, y1, y2)`, `(l_j, y1, -y2)`,
/// `(l_j, -y1, y3)`, `(l_k, -y1, -y3)` over fresh `y1 = first`, `y2`, `y3`.
/// A two-literal clause is treated as having `l_k` false.
fn split_clause(c: &[Literal], first: usize) -> [Clause; 4] {
    let (y1, y2, y3) = (first, first + 1, first + 2);
    let mut out = [
        vec![c[0], Literal::pos(y1), Literal::pos(y2)],
        vec![c[1], Literal::pos(y1), Literal::neg(y2)],
        vec![c[1], Literal::neg(y1), Literal::pos(y3)],
        vec![Literal::neg(y1), Literal::neg(y3)],
    ];
    if let Some(&lk) = c.get(2) {
        out[3].insert(0, lk);
    }
    out
}

/// Rewrites `f` into an equisatisfiable formula meeting the gadget
/// preconditions:
///
/// 1. repeated literals inside a clause are merged and clauses holding a
///    variable together with its negation are dropped;
/// 2. while two clauses share two or more literals, the later one is replaced
///    by four clauses over three fresh variables (see `split_clause`); the new
///    clauses carry one original literal each, so every rewrite removes a
///    conflict for good;
/// 3. variables occurring nowhere are removed and the rest renumbered in order.
///
/// If nothing is left after step 1 the formula is trivially satisfiable and is
/// replaced by the single clause `(x1)`.
pub fn normalize(f: &CnfFormula) -> Result<CnfFormula> {
    if let Some(j) = f.clauses.iter().position(|c| c.is_empty()) {
        return Err(Error::domain(format!(
            "clause {} is empty; the formula is trivially unsatisfiable",
            j + 1
        )));
    }
    let mut clauses: Vec<Clause> = Vec::with_capacity(f.clauses.len());
    for c in &f.clauses {
        let mut d: Clause = Vec::with_capacity(c.len());
        for &l in c {
            if !d.contains(&l) {
                d.push(l);
            }
        }
        if !d.iter().any(|l| d.contains(&l.negate())) {
            clauses.push(d);
        }
    }

    let mut num_vars = f.num_vars;
    while let Some((_, q)) = first_conflict(&clauses) {
        let replacement = split_clause(&clauses[q], num_vars);
        num_vars += 3;
        clauses.splice(q..=q, replacement);
    }

    let mut used = vec![false; num_vars];
    for l in clauses.iter().flatten() {
        used[l.var] = true;
    }
    let mut remap = vec![usize::MAX; num_vars];
    let mut next = 0;
    for (v, u) in used.iter().enumerate() {
        if *u {
            remap[v] = next;
            next += 1;
        }
    }
    for l in clauses.iter_mut().flatten() {
        l.var = remap[l.var];
    }

    let out = if clauses.is_empty() {
        CnfFormula::new(1, vec![vec![Literal::pos(0)]])?
    } else {
        CnfFormula::new(next, clauses)?
    };
    debug_assert_eq!(out.check_normalized(), Ok(()));
    Ok(out)
}

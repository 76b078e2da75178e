//! Bounded proof search by line count.
//!
//! Axiom lines are drawn from a finite pool of schema instances built from
//! the target's subformulas and subterms (plus S1..S8 in PA mode). Proofs are
//! enumerated in a canonical shape: all axiom lines first, in pool order,
//! then lines derived by MP or Gen. Only formulas that can feed the target
//! through some implication chain of the pool are admitted, and every
//! non-final line must be used later. With iterative deepening this finds a
//! shortest proof over the pool, and `Exhausted` means none exists over it.

use std::collections::{HashMap, HashSet};

use crate::axioms::{is_axiom, proper_axiom, Mode};
use crate::proof::{Justification, Proof, ProofLine};
use crate::syntax::{Formula, Term, VarIndex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Proof),
    Exhausted { bound: usize },
}

/// Formulas per schema slot before the pool is truncated.
const MAX_SLOT_FORMULAS: usize = 12;
const MAX_TERMS: usize = 6;

fn subformulas(f: &Formula, out: &mut Vec<Formula>) {
    if !out.contains(f) {
        out.push(f.clone());
    }
    match f {
        Formula::Not(a) | Formula::ForAll(_, a) => subformulas(a, out),
        Formula::Implies(a, b) => {
            subformulas(a, out);
            subformulas(b, out);
        }
        Formula::Equals(..) | Formula::Atom => {}
    }
}

fn subterms_t(t: &Term, out: &mut Vec<Term>) {
    if !out.contains(t) {
        out.push(t.clone());
    }
    match t {
        Term::Succ(a) => subterms_t(a, out),
        Term::Plus(a, b) | Term::Times(a, b) | Term::Sb(a, b) => {
            subterms_t(a, out);
            subterms_t(b, out);
        }
        Term::Var(_) | Term::Zero | Term::Numeral(_) => {}
    }
}

fn subterms(f: &Formula, out: &mut Vec<Term>) {
    match f {
        Formula::Equals(a, b) => {
            subterms_t(a, out);
            subterms_t(b, out);
        }
        Formula::Not(a) | Formula::ForAll(_, a) => subterms(a, out),
        Formula::Implies(a, b) => {
            subterms(a, out);
            subterms(b, out);
        }
        Formula::Atom => {}
    }
}

fn push_unique(out: &mut Vec<Formula>, seen: &mut HashSet<String>, f: Formula) {
    if seen.insert(f.to_string()) {
        out.push(f);
    }
}

/// The finite set of axiom instances the search draws from, in a fixed order.
pub fn axiom_pool(target: &Formula, mode: Mode) -> Vec<Formula> {
    let mut slots = Vec::new();
    subformulas(target, &mut slots);
    let proper: Vec<Formula> = if mode == Mode::Pa {
        (1..=8).filter_map(proper_axiom).collect()
    } else {
        Vec::new()
    };
    for s in &proper {
        if !slots.contains(s) {
            slots.push(s.clone());
        }
    }
    slots.truncate(MAX_SLOT_FORMULAS);

    let mut terms = Vec::new();
    subterms(target, &mut terms);
    for t in [Term::Zero, Term::var(1)] {
        if !terms.contains(&t) {
            terms.push(t);
        }
    }
    terms.truncate(MAX_TERMS);

    let mut pool = Vec::new();
    let mut seen = HashSet::new();
    let mut add = |f: Formula, pool: &mut Vec<Formula>| {
        if is_axiom(&f, mode) {
            push_unique(pool, &mut seen, f);
        }
    };
    for s in &proper {
        add(s.clone(), &mut pool);
    }
    if mode == Mode::Toy {
        add(Formula::Atom, &mut pool);
        return pool;
    }
    add(target.clone(), &mut pool);
    for b in &slots {
        for c in &slots {
            add(
                Formula::implies(b.clone(), Formula::implies(c.clone(), b.clone())),
                &mut pool,
            );
            // A3: ((~C) -> (~B)) -> (((~C) -> B) -> C)
            let nc = Formula::not(c.clone());
            add(
                Formula::implies(
                    Formula::implies(nc.clone(), Formula::not(b.clone())),
                    Formula::implies(Formula::implies(nc, b.clone()), c.clone()),
                ),
                &mut pool,
            );
            for d in &slots {
                add(
                    Formula::implies(
                        Formula::implies(b.clone(), Formula::implies(c.clone(), d.clone())),
                        Formula::implies(
                            Formula::implies(b.clone(), c.clone()),
                            Formula::implies(b.clone(), d.clone()),
                        ),
                    ),
                    &mut pool,
                );
            }
            for k in c.free_vars() {
                if !b.has_free(k) {
                    add(
                        Formula::implies(
                            Formula::forall(k, Formula::implies(b.clone(), c.clone())),
                            Formula::implies(b.clone(), Formula::forall(k, c.clone())),
                        ),
                        &mut pool,
                    );
                }
            }
        }
    }
    for b in &slots {
        let mut vars: Vec<VarIndex> = b.free_vars().into_iter().collect();
        if let Formula::ForAll(k, inner) = b {
            vars.push(*k);
            for t in &terms {
                if let Ok(inst) = inner.substitute(*k, t) {
                    add(Formula::implies(b.clone(), inst), &mut pool);
                }
            }
        }
        for &k in &vars {
            for t in &terms {
                if let Ok(inst) = b.substitute(k, t) {
                    add(
                        Formula::implies(Formula::forall(k, b.clone()), inst),
                        &mut pool,
                    );
                }
            }
            if mode == Mode::Pa && b.has_free(k) {
                if let (Ok(b0), Ok(bs)) = (
                    b.substitute(k, &Term::Zero),
                    b.substitute(k, &Term::succ(Term::var(k))),
                ) {
                    add(
                        Formula::implies(
                            b0,
                            Formula::implies(
                                Formula::forall(k, Formula::implies(b.clone(), bs)),
                                Formula::forall(k, b.clone()),
                            ),
                        ),
                        &mut pool,
                    );
                }
            }
        }
    }
    pool
}

/// Formulas that can reach `target` through implication chains of the pool
/// and through Gen.
///
/// Formulas are keyed by their printed form, which is unique.
fn relevant(target: &Formula, pool: &[Formula]) -> HashMap<String, Formula> {
    let mut rel: HashMap<String, Formula> = HashMap::new();
    let mut work = vec![target.clone()];
    // For each formula G, the pool members with a chain ending in G.
    let mut chains: HashMap<String, Vec<&Formula>> = HashMap::new();
    for p in pool {
        let mut cur = p;
        chains.entry(cur.to_string()).or_default().push(p);
        while let Formula::Implies(_, b) = cur {
            cur = b;
            chains.entry(cur.to_string()).or_default().push(p);
        }
    }
    while let Some(g) = work.pop() {
        let key = g.to_string();
        if rel.contains_key(&key) {
            continue;
        }
        rel.insert(key.clone(), g.clone());
        if let Formula::ForAll(_, b) = &g {
            work.push((**b).clone());
        }
        if let Some(ps) = chains.get(&key) {
            for p in ps {
                let mut cur: &Formula = p;
                while cur != &g {
                    let Formula::Implies(a, b) = cur else { break };
                    work.push(cur.clone());
                    work.push((**a).clone());
                    cur = b;
                }
            }
        }
    }
    rel
}

struct Search<'a> {
    target: &'a Formula,
    axioms: Vec<Formula>,
    rel: HashMap<String, Formula>,
    /// `∀xk B` in `rel`, by the printed form of `B`.
    gens: HashMap<String, Vec<(VarIndex, Formula)>>,
    lines: Vec<ProofLine>,
    uses: Vec<usize>,
    explored: u64,
}

impl Search<'_> {
    fn contains(&self, f: &Formula) -> bool {
        self.lines.iter().any(|l| &l.formula == f)
    }

    /// Lines derivable by one MP or Gen step from the current lines.
    fn derivable(&self) -> Vec<ProofLine> {
        let mut out: Vec<ProofLine> = Vec::new();
        for (j, major) in self.lines.iter().enumerate() {
            if let Formula::Implies(a, b) = &major.formula {
                if let Some(i) = self.lines.iter().position(|l| l.formula == **a) {
                    out.push(ProofLine {
                        formula: (**b).clone(),
                        justification: Justification::ModusPonens { minor: i, major: j },
                    });
                }
            }
        }
        for (i, l) in self.lines.iter().enumerate() {
            for (k, g) in self.gens.get(&l.formula.to_string()).into_iter().flatten() {
                out.push(ProofLine {
                    formula: g.clone(),
                    justification: Justification::Gen {
                        premise: i,
                        var: *k,
                    },
                });
            }
        }
        out.retain(|l| self.rel.contains_key(&l.formula.to_string()) && !self.contains(&l.formula));
        out.sort_by_key(|l| l.formula.to_string());
        out.dedup_by(|a, b| a.formula == b.formula);
        out
    }

    fn premises(j: &Justification) -> Vec<usize> {
        match *j {
            Justification::Axiom => vec![],
            Justification::ModusPonens { minor, major } => vec![minor, major],
            Justification::Gen { premise, .. } => vec![premise],
        }
    }

    fn push(&mut self, l: ProofLine) {
        for p in Self::premises(&l.justification) {
            self.uses[p] += 1;
        }
        self.lines.push(l);
        self.uses.push(0);
    }

    fn pop(&mut self) {
        let l = self.lines.pop().expect("nonempty");
        self.uses.pop();
        for p in Self::premises(&l.justification) {
            self.uses[p] -= 1;
        }
    }

    fn unused(&self) -> usize {
        self.uses.iter().filter(|&&u| u == 0).count()
    }

    /// Axiom phase: choose axioms with index at least `from`, or move on to
    /// derived lines.
    fn axioms_phase(&mut self, from: usize, len: usize) -> bool {
        let remaining = len - self.lines.len();
        if remaining == 0 {
            return false;
        }
        if remaining == 1 && self.lines.is_empty() {
            return self.axioms.contains(self.target) && {
                self.push(ProofLine {
                    formula: self.target.clone(),
                    justification: Justification::Axiom,
                });
                true
            };
        }
        if !self.lines.is_empty() && self.derived_phase(len) {
            return true;
        }
        // Each further axiom must be consumed by a derived line; a derived
        // line consumes at most two lines, so axioms can't outnumber the
        // derived lines by more than one.
        let k = self.lines.len() + 1;
        let d = len - k;
        if d == 0 || k > d + 1 {
            return false;
        }
        for idx in from..self.axioms.len() {
            let f = self.axioms[idx].clone();
            self.push(ProofLine {
                formula: f,
                justification: Justification::Axiom,
            });
            self.explored += 1;
            if self.axioms_phase(idx + 1, len) {
                return true;
            }
            self.pop();
        }
        false
    }

    fn derived_phase(&mut self, len: usize) -> bool {
        let remaining = len - self.lines.len();
        if remaining == 0 {
            return false;
        }
        // Every unused line must still be consumed; one new line can consume
        // at most two of them.
        if self.unused() > 2 * remaining {
            return false;
        }
        for l in self.derivable() {
            let last = remaining == 1;
            if last && l.formula != *self.target {
                continue;
            }
            if !last && l.formula == *self.target {
                continue;
            }
            self.push(l);
            self.explored += 1;
            let done = if last {
                self.uses[..self.lines.len() - 1].iter().all(|&u| u > 0)
            } else {
                self.derived_phase(len)
            };
            if done {
                return true;
            }
            self.pop();
        }
        false
    }
}

/// Iterative deepening over proof length `1..=bound`.
pub fn bounded_proof_search(target: &Formula, bound: usize, mode: Mode) -> SearchOutcome {
    let axioms = axiom_pool(target, mode);
    let rel = relevant(target, &axioms);
    let axioms: Vec<Formula> = axioms
        .into_iter()
        .filter(|a| rel.contains_key(&a.to_string()))
        .collect();
    let mut gens: HashMap<String, Vec<(VarIndex, Formula)>> = HashMap::new();
    let mut keys: Vec<&String> = rel.keys().collect();
    keys.sort();
    for key in keys {
        if let f @ Formula::ForAll(k, b) = &rel[key] {
            gens.entry(b.to_string()).or_default().push((*k, f.clone()));
        }
    }
    let mut s = Search {
        target,
        axioms,
        rel,
        gens,
        lines: Vec::new(),
        uses: Vec::new(),
        explored: 0,
    };
    for len in 1..=bound {
        if s.axioms_phase(0, len) {
            log::debug!("proof of length {len} found after {} steps", s.explored);
            let proof = Proof::new(std::mem::take(&mut s.lines)).expect("nonempty");
            return SearchOutcome::Found(proof);
        }
    }
    log::debug!(
        "search exhausted at bound {bound} after {} steps",
        s.explored
    );
    SearchOutcome::Exhausted { bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check_proof;
    use crate::syntax::parse_formula;

    #[test]
    fn spec_targets() {
        let s5 = parse_formula("((x1 + 0) = x1)").unwrap();
        let SearchOutcome::Found(p) = bounded_proof_search(&s5, 1, Mode::Pa) else {
            panic!("S5 not found");
        };
        assert_eq!(p.len(), 1);
        let g = parse_formula("((all x1) ((x1 + 0) = x1))").unwrap();
        let SearchOutcome::Found(p) = bounded_proof_search(&g, 2, Mode::Pa) else {
            panic!("Gen S5 not found");
        };
        assert_eq!(p.len(), 2);
        assert!(check_proof(&p, Mode::Pa).is_accept());
        let f = parse_formula("(0 = 0')").unwrap();
        assert_eq!(
            bounded_proof_search(&f, 3, Mode::Pa),
            SearchOutcome::Exhausted { bound: 3 }
        );
    }

    #[test]
    fn finds_three_line_proofs() {
        // S5 instance at 0 via A4 after Gen
        let f = parse_formula("((0 + 0) = 0)").unwrap();
        let SearchOutcome::Found(p) = bounded_proof_search(&f, 4, Mode::Pa) else {
            panic!("not found");
        };
        assert!(check_proof(&p, Mode::Pa).is_accept());
        assert_eq!(p.last_formula(), &f);
        // PF has no S5, so the same target is not found there
        assert!(matches!(
            bounded_proof_search(&parse_formula("((x1 + 0) = x1)").unwrap(), 2, Mode::Pf),
            SearchOutcome::Exhausted { .. }
        ));
    }
}

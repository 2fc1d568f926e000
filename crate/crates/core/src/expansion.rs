//! Remainder automaton for radix expansions over finite digit alphabets.
//!
//! A number `z` has an expansion `sum d_j b^(-j)` with `d_j ∈ A_j` exactly
//! when the remainder walk `r_0 = z`, `r_j = b r_(j-1) - d_j` can go on
//! forever inside the disc `|r| <= max|d| / (|b| - 1)`. States are exact
//! Gaussian rationals whose denominators divide the one of `z`, so the
//! reachable graph is finite. Pruning states without a surviving successor
//! until nothing changes leaves exactly the states that admit an infinite
//! walk.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Roots;

use crate::digits::DigitSet;
use crate::radix::Base;
use crate::sequence::{DigitSeq, IntSet, SetSeq};
use crate::QI;

/// Exact test `|r| <= max_abs / (|b| - 1)`, relaxed to the rational bound
/// `|r| (floor(sqrt(n^2 + 1)) - 1) <= max_abs`. The relaxation only admits
/// a few extra states, which pruning then discards.
pub(crate) fn within_attractor_bound(r: &QI, base: Base, max_abs: i64) -> bool {
    let s = (base.norm() as u64).sqrt() as i64 - 1;
    let lhs = r.numer().norm() * BigInt::from(s * s);
    let rhs = BigInt::from(max_abs) * BigInt::from(max_abs) * r.denom() * r.denom();
    lhs <= rhs
}

/// How many digit sequences realize a value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    None,
    Unique(DigitSeq),
    Multiple,
}

/// The finite remainder graph reachable from a start value.
pub struct ExpansionGraph {
    states: Vec<(QI, usize)>,
    edges: Vec<Vec<(i64, usize)>>,
    live: Vec<bool>,
}

impl ExpansionGraph {
    /// Explores every state reachable from `start` whose digits at position
    /// `j` come from `alphabets[j]`.
    pub fn build(start: &QI, base: Base, alphabets: &SetSeq) -> Self {
        let terms = [alphabets.prefix(), alphabets.cycle()];
        let max_abs = terms
            .iter()
            .flat_map(|part| part.iter())
            .flat_map(|s| s.iter())
            .map(|d| d.abs())
            .max()
            .unwrap_or(0);
        let q = alphabets.prefix().len();
        let period = alphabets.period();
        let next_phase = |ph: usize| if ph + 1 < q + period { ph + 1 } else { q };
        let b = base.b();

        let mut graph = ExpansionGraph {
            states: Vec::new(),
            edges: Vec::new(),
            live: Vec::new(),
        };
        if !within_attractor_bound(start, base, max_abs) {
            return graph;
        }
        let mut index: HashMap<(QI, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        index.insert((start.clone(), 0), 0);
        graph.states.push((start.clone(), 0));
        graph.edges.push(Vec::new());
        queue.push_back(0usize);
        while let Some(id) = queue.pop_front() {
            let (r, phase) = graph.states[id].clone();
            let scaled = r.mul_gaussian(&b);
            let np = next_phase(phase);
            for &d in alphabets.get(phase) {
                let next = &scaled - &QI::from_int(BigInt::from(d));
                if !within_attractor_bound(&next, base, max_abs) {
                    continue;
                }
                let key = (next, np);
                let target = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = graph.states.len();
                        graph.states.push(key.clone());
                        graph.edges.push(Vec::new());
                        index.insert(key, t);
                        queue.push_back(t);
                        t
                    }
                };
                graph.edges[id].push((d, target));
            }
        }
        graph.prune();
        graph
    }

    /// Greatest set of states in which every state keeps a successor.
    fn prune(&mut self) {
        let n = self.states.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut out_count = vec![0usize; n];
        for (u, es) in self.edges.iter().enumerate() {
            out_count[u] = es.len();
            for &(_, v) in es {
                preds[v].push(u);
            }
        }
        self.live = vec![true; n];
        let mut dead: Vec<usize> = (0..n).filter(|&u| out_count[u] == 0).collect();
        for &u in &dead {
            self.live[u] = false;
        }
        while let Some(v) = dead.pop() {
            for &u in &preds[v] {
                if self.live[u] {
                    out_count[u] -= 1;
                    if out_count[u] == 0 {
                        self.live[u] = false;
                        dead.push(u);
                    }
                }
            }
        }
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn has_expansion(&self) -> bool {
        self.live.first().copied().unwrap_or(false)
    }

    fn live_edges(&self, u: usize) -> impl Iterator<Item = &(i64, usize)> + '_ {
        self.edges[u].iter().filter(move |(_, v)| self.live[*v])
    }

    /// The expansion obtained by always taking the smallest surviving digit.
    pub fn witness(&self) -> Option<DigitSeq> {
        if !self.has_expansion() {
            return None;
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut u = 0;
        loop {
            if let Some(&at) = seen.get(&u) {
                let cycle = digits.split_off(at);
                return Some(DigitSeq::new(digits, cycle).expect("cycle is nonempty"));
            }
            seen.insert(u, digits.len());
            let &(d, v) = self.live_edges(u).next().expect("live state keeps a successor");
            digits.push(d);
            u = v;
        }
    }

    pub fn multiplicity(&self) -> Multiplicity {
        let Some(witness) = self.witness() else {
            return Multiplicity::None;
        };
        let mut visited = vec![false; self.states.len()];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(u) = stack.pop() {
            let mut count = 0;
            for &(_, v) in self.live_edges(u) {
                count += 1;
                if !visited[v] {
                    visited[v] = true;
                    stack.push(v);
                }
            }
            if count > 1 {
                return Multiplicity::Multiple;
            }
        }
        Multiplicity::Unique(witness)
    }
}

fn constant_alphabet(alphabet: &DigitSet) -> SetSeq {
    SetSeq::constant(alphabet.iter().collect::<IntSet>())
}

/// Some expansion of `z` over a fixed alphabet, if one exists.
pub fn find_expansion(z: &QI, base: Base, alphabet: &DigitSet) -> Option<DigitSeq> {
    ExpansionGraph::build(z, base, &constant_alphabet(alphabet)).witness()
}

/// Some expansion of `z` whose `j`-th digit lies in `alphabets[j]`.
pub fn find_expansion_in(z: &QI, base: Base, alphabets: &SetSeq) -> Option<DigitSeq> {
    ExpansionGraph::build(z, base, alphabets).witness()
}

pub fn expansion_multiplicity(z: &QI, base: Base, alphabet: &DigitSet) -> Multiplicity {
    ExpansionGraph::build(z, base, &constant_alphabet(alphabet)).multiplicity()
}

/// True when `z` lies in `{ sum d_j b^(-j) : d_j ∈ alphabets[j] }`.
pub fn in_attractor(z: &QI, base: Base, alphabets: &SetSeq) -> bool {
    ExpansionGraph::build(z, base, alphabets).has_expansion()
}

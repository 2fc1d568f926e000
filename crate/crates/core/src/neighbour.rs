//! Neighbour sets `{ s ∈ Z[i] : A ∩ (A + s) ≠ ∅ }` of the fundamental tile,
//! the extended tile, and restricted digit sets.
//!
//! `s` is a neighbour exactly when `s = sum e_j b^(-j)` with `e_j` in the
//! difference alphabet, which happens exactly when the walk
//! `s -> b s + δ` can continue forever among bounded Gaussian integers.
//! The engine starts from every Gaussian integer inside the a priori disc
//! and discards, until nothing changes, those with no successor left.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};

use crate::digits::DigitSet;
use crate::error::Result;
use crate::radix::Base;
use crate::sequence::DigitSeq;
use crate::GaussianInt;

/// Which attractor a neighbour set is computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TileKind {
    /// `T_n`, digits `{0, ..., n^2}`.
    Fundamental,
    /// The extended tile, digits `{0, ±1, ..., ±n^2}`.
    Extended,
    /// `C_{n,D}` for a restricted digit set `D`.
    Custom(DigitSet),
}

impl TileKind {
    /// The difference alphabet `D' - D'` of the attractor's digit set.
    pub fn difference_alphabet(&self, base: Base) -> DigitSet {
        let m = base.max_digit();
        match self {
            TileKind::Fundamental => DigitSet::alphabet(base.n(), -m..=m).expect("nonempty"),
            TileKind::Extended => {
                DigitSet::alphabet(base.n(), -2 * m..=2 * m).expect("nonempty")
            }
            TileKind::Custom(d) => d.differences(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourSet {
    base: Base,
    alphabet: DigitSet,
    members: BTreeSet<GaussianInt>,
    witnesses: BTreeMap<GaussianInt, DigitSeq>,
}

impl NeighbourSet {
    pub fn base(&self) -> Base {
        self.base
    }

    pub fn alphabet(&self) -> &DigitSet {
        &self.alphabet
    }

    pub fn members(&self) -> &BTreeSet<GaussianInt> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Expansion of `s` over the difference alphabet, i.e. `π(e) = s`.
    pub fn witness(&self, s: &GaussianInt) -> Option<&DigitSeq> {
        self.witnesses.get(s)
    }

    pub fn is_neighbour(&self, s: &GaussianInt) -> bool {
        self.members.contains(s)
    }

    /// Real members as integers.
    pub fn real_neighbours(&self) -> BTreeSet<i64> {
        self.members
            .iter()
            .filter(|s| s.is_real())
            .map(|s| s.re.to_i64().expect("neighbours are small"))
            .collect()
    }

    /// Every member satisfies `|Re(s) - n Im(s)| <= 1`.
    pub fn reim_bound_holds(&self) -> bool {
        reim_bound_holds(&self.members, self.base.n())
    }
}

/// `|re - n im| <= 1` for every element, the integer form of the strict
/// bound `< 2` (and of `< 3/2` once `n >= 5`).
pub fn reim_bound_holds<'a>(members: impl IntoIterator<Item = &'a GaussianInt>, n: i64) -> bool {
    let n = BigInt::from(n);
    members
        .into_iter()
        .all(|s| (&s.re - &(&n * &s.im)).abs() <= BigInt::from(1))
}

/// Every Gaussian integer `s` with `|s| <= max|δ| (|b| + 1) / n^2`, the
/// closed form of `max|δ| / (|b| - 1)`, using `ceil(sqrt(n^2 + 1))` for `|b|`.
fn candidates(base: Base, max_abs: i64) -> Vec<(i64, i64)> {
    let n2 = base.max_digit();
    let norm = base.norm() as u64;
    let mut c = norm.sqrt() as i64;
    if (c as u64) * (c as u64) < norm {
        c += 1;
    }
    let num = max_abs as i128 * (c as i128 + 1);
    let radius = (num + n2 as i128 - 1) / n2 as i128;
    let limit = num * num;
    let r = radius as i64;
    let mut out = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            let sq = (re as i128 * re as i128 + im as i128 * im as i128) * (n2 as i128 * n2 as i128);
            if sq <= limit {
                out.push((re, im));
            }
        }
    }
    out
}

/// Neighbours of the attractor whose difference alphabet is `alphabet`.
pub fn neighbour_set(base: Base, alphabet: &DigitSet) -> NeighbourSet {
    let n = base.n();
    let cands = candidates(base, alphabet.max_abs());
    let index: HashMap<(i64, i64), usize> =
        cands.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // digits tried by increasing |δ| so that 0 -> 0 is preferred
    let mut deltas: Vec<i64> = alphabet.iter().collect();
    deltas.sort_by_key(|d| (d.abs(), *d));

    // b s + δ = (-n re - im + δ) + (re - n im) i
    let successors: Vec<Vec<(i64, usize)>> = cands
        .iter()
        .map(|&(re, im)| {
            deltas
                .iter()
                .filter_map(|&d| {
                    index
                        .get(&(-n * re - im + d, re - n * im))
                        .map(|&t| (d, t))
                })
                .collect()
        })
        .collect();

    let mut alive = vec![true; cands.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for u in 0..cands.len() {
            if alive[u] && !successors[u].iter().any(|&(_, v)| alive[v]) {
                alive[u] = false;
                changed = true;
            }
        }
    }

    let mut members = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for u in (0..cands.len()).filter(|&u| alive[u]) {
        let s = GaussianInt::new(cands[u].0, cands[u].1);
        witnesses.insert(s.clone(), walk_witness(u, &successors, &alive));
        members.insert(s);
    }
    NeighbourSet {
        base,
        alphabet: alphabet.clone(),
        members,
        witnesses,
    }
}

/// Follows surviving successors from `start` until a state repeats; the
/// negated step digits form an expansion of the start value.
fn walk_witness(start: usize, successors: &[Vec<(i64, usize)>], alive: &[bool]) -> DigitSeq {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut u = start;
    loop {
        if let Some(&at) = seen.get(&u) {
            let cycle = digits.split_off(at);
            return DigitSeq::new(digits, cycle).expect("nonempty cycle");
        }
        seen.insert(u, digits.len());
        let &(d, v) = successors[u]
            .iter()
            .find(|&&(_, v)| alive[v])
            .expect("surviving state keeps a successor");
        digits.push(-d);
        u = v;
    }
}

pub fn tile_neighbours(base: Base, kind: &TileKind) -> NeighbourSet {
    neighbour_set(base, &kind.difference_alphabet(base))
}

/// Convenience for `n` given as an integer.
pub fn tile_neighbours_for(n: i64, kind: &TileKind) -> Result<NeighbourSet> {
    Ok(tile_neighbours(Base::new(n)?, kind))
}

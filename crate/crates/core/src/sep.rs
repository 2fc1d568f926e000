//! Strongly eventually periodic (SEP) sequences.
//!
//! A sequence is SEP when it reads `(b_l) (b_l + c_l)*` for a head `b` of
//! some length `p` and nonnegative increments `c`. For set sequences the
//! increment is a sumset: `(B_l) (B_l + C_l)*`.
//!
//! Such a decomposition forces the terms from index `p` on to repeat with
//! period `p`, so `p` is a multiple of the primitive cycle length and at
//! least the prefix length. The increment condition then only involves the
//! pairs `(a_l, a_(l+p))`, and if it holds for `p` it also holds for `p`
//! plus one cycle. The search therefore only needs candidates up to
//! prefix length plus cycle length.

use crate::sequence::{DigitSeq, EventuallyPeriodic, IntSet, SetSeq};

/// Terms that admit an increment operation.
pub trait Increment: Clone + Eq {
    fn plus(&self, inc: &Self) -> Self;
    /// Some nonnegative increment `u` with `self + u = target`.
    fn solve(&self, target: &Self) -> Option<Self>;
}

impl Increment for i64 {
    fn plus(&self, inc: &Self) -> Self {
        self + inc
    }

    fn solve(&self, target: &Self) -> Option<Self> {
        (self <= target).then(|| target - self)
    }
}

/// `A + B = {a + b}`.
pub fn sumset(a: &IntSet, b: &IntSet) -> IntSet {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

/// Subsets of `U*` tried exhaustively when looking for the smallest solution.
const MAX_EXHAUSTIVE: usize = 16;

impl Increment for IntSet {
    fn plus(&self, inc: &Self) -> Self {
        sumset(self, inc)
    }

    /// Smallest nonempty `U` with `A + U = B`, ties broken by sorted order.
    /// `U* = {u : A + u ⊆ B}` contains every solution, so a solution exists
    /// exactly when `A + U* = B`.
    fn solve(&self, target: &Self) -> Option<Self> {
        let lo = *self.iter().next()?;
        let widest: IntSet = target
            .iter()
            .map(|b| b - lo)
            .filter(|u| self.iter().all(|a| target.contains(&(a + u))))
            .collect();
        if widest.is_empty() || sumset(self, &widest) != *target {
            return None;
        }
        if widest.len() > MAX_EXHAUSTIVE {
            return Some(widest);
        }
        let elems: Vec<i64> = widest.iter().copied().collect();
        for size in 1..=elems.len() {
            let mut best: Option<IntSet> = None;
            for_each_subset(&elems, size, &mut |u: &IntSet| {
                if best.is_none() && sumset(self, u) == *target {
                    best = Some(u.clone());
                }
            });
            if best.is_some() {
                return best;
            }
        }
        Some(widest)
    }
}

/// Calls `f` on every `size`-subset of `elems`, in lexicographic order.
fn for_each_subset(elems: &[i64], size: usize, f: &mut impl FnMut(&IntSet)) {
    fn rec(
        elems: &[i64],
        start: usize,
        size: usize,
        cur: &mut Vec<i64>,
        f: &mut impl FnMut(&IntSet),
    ) {
        if cur.len() == size {
            f(&cur.iter().copied().collect());
            return;
        }
        for i in start..elems.len() {
            if elems.len() - i < size - cur.len() {
                break;
            }
            cur.push(elems[i]);
            rec(elems, i + 1, size, cur, f);
            cur.pop();
        }
    }
    rec(elems, 0, size, &mut Vec::new(), f);
}

/// A witness `(head)(head + increments)*` of the SEP property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepDecomposition<T> {
    pub period: usize,
    pub head: Vec<T>,
    pub increments: Vec<T>,
}

impl<T: Increment> SepDecomposition<T> {
    /// The sequence `(head)(head + increments)*`.
    pub fn expand(&self) -> EventuallyPeriodic<T> {
        let cycle = self
            .head
            .iter()
            .zip(&self.increments)
            .map(|(h, c)| h.plus(c))
            .collect();
        EventuallyPeriodic::new(self.head.clone(), cycle).expect("period is positive")
    }
}

/// Candidate periods: multiples of the cycle length, at least the prefix
/// length, at most prefix length plus cycle length.
fn candidate_periods<T: Clone + Eq>(seq: &EventuallyPeriodic<T>) -> impl Iterator<Item = usize> {
    let q = seq.prefix().len();
    let c = seq.period();
    (1..)
        .map(move |k| k * c)
        .skip_while(move |&p| p < q)
        .take_while(move |&p| p <= q + c)
}

fn decide<T: Increment>(seq: &EventuallyPeriodic<T>) -> Option<SepDecomposition<T>> {
    candidate_periods(seq).find_map(|p| {
        let head: Vec<T> = (0..p).map(|l| seq.get(l).clone()).collect();
        let increments = head
            .iter()
            .enumerate()
            .map(|(l, a)| a.solve(seq.get(l + p)))
            .collect::<Option<Vec<T>>>()?;
        Some(SepDecomposition {
            period: p,
            head,
            increments,
        })
    })
}

/// SEP decision for an integer sequence; the witness has the smallest period.
pub fn sep_decide_int(seq: &DigitSeq) -> Option<SepDecomposition<i64>> {
    decide(seq)
}

/// SEP decision for a sequence of nonempty integer sets.
pub fn sep_decide_sets(seq: &SetSeq) -> Option<SepDecomposition<IntSet>> {
    decide(seq)
}

/// `a_j <= a_(j+q)` for every `j`.
pub fn mono_sep_check(seq: &DigitSeq, q: usize) -> bool {
    let horizon = seq.prefix().len() + 2 * seq.period();
    (0..horizon).all(|j| seq.get(j) <= seq.get(j + q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    fn ss(s: &str) -> SetSeq {
        s.parse().unwrap()
    }

    fn set(xs: &[i64]) -> IntSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn integer_examples() {
        let z = sep_decide_int(&DigitSeq::zeros()).unwrap();
        assert_eq!((z.period, z.head, z.increments), (1, vec![0], vec![0]));
        let e = sep_decide_int(&ds("0.[](0,4,0)*")).unwrap();
        assert_eq!(e.period, 3);
        assert_eq!(e.head, vec![0, 4, 0]);
        assert_eq!(e.increments, vec![0, 0, 0]);
        assert_eq!(sep_decide_int(&ds("0.[4](0)*")), None);
        let g = sep_decide_int(&ds("0.[1,2](3)*")).unwrap();
        assert_eq!(g.period, 2);
        assert_eq!(g.expand(), ds("0.[1,2](3)*"));
    }

    #[test]
    fn set_examples() {
        let c = sep_decide_sets(&ss("0.[]({0,4})*")).unwrap();
        assert_eq!(c.increments, vec![set(&[0])]);
        let g = sep_decide_sets(&ss("0.[{0}]({0,4})*")).unwrap();
        assert_eq!(g.period, 1);
        assert_eq!(g.head, vec![set(&[0])]);
        assert_eq!(g.increments, vec![set(&[0, 4])]);
        // purely periodic, so the cycle itself is a head with zero increments
        let p = sep_decide_sets(&ss("0.[]({0,4},{0})*")).unwrap();
        assert_eq!(p.period, 2);
        assert_eq!(p.increments, vec![set(&[0]), set(&[0])]);
        assert_eq!(sep_decide_sets(&ss("0.[{0,4}]({0})*")), None);
    }

    #[test]
    fn sumset_solver() {
        assert_eq!(set(&[0, 1]).solve(&set(&[0, 1, 2, 3])), Some(set(&[0, 2])));
        assert_eq!(set(&[0, 2]).solve(&set(&[0, 1, 2])), None);
        assert_eq!(set(&[5]).solve(&set(&[1, 9])), Some(set(&[-4, 4])));
    }

    #[test]
    fn monotone_condition() {
        assert!(mono_sep_check(&ds("0.[](0,4,0)*"), 3));
        assert!(!mono_sep_check(&ds("0.[4](0)*"), 1));
        assert!(!mono_sep_check(&ds("0.[4](0)*"), 5));
        assert!(mono_sep_check(&ds("0.[](7)*"), 1));
    }
}

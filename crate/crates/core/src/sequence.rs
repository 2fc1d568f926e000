//! Eventually periodic sequences `prefix (cycle)*` in canonical form.
//!
//! The same container carries digit sequences (radix expansions, translation
//! codes) and sequences of finite integer sets. Canonical form makes
//! structural equality coincide with equality of the infinite sequences:
//! the cycle is primitive and the prefix is as short as possible.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{parse_err, Error, Result};
use crate::gaussian::normalize_text;

/// Finite set of integers with sorted iteration.
pub type IntSet = BTreeSet<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodic<T> {
    prefix: Vec<T>,
    cycle: Vec<T>,
}

/// Eventually periodic integer digit sequence.
pub type DigitSeq = EventuallyPeriodic<i64>;
/// Eventually periodic sequence of finite integer sets.
pub type SetSeq = EventuallyPeriodic<IntSet>;

impl<T: Clone + Eq> EventuallyPeriodic<T> {
    pub fn new(prefix: Vec<T>, cycle: Vec<T>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        let mut seq = EventuallyPeriodic { prefix, cycle };
        seq.canonicalize();
        Ok(seq)
    }

    pub fn periodic(cycle: Vec<T>) -> Result<Self> {
        Self::new(Vec::new(), cycle)
    }

    pub fn constant(value: T) -> Self {
        EventuallyPeriodic {
            prefix: Vec::new(),
            cycle: vec![value],
        }
    }

    fn canonicalize(&mut self) {
        let len = self.cycle.len();
        if let Some(d) = (1..len).find(|&d| {
            len.is_multiple_of(d) && (d..len).all(|i| self.cycle[i] == self.cycle[i - d])
        }) {
            self.cycle.truncate(d);
        }
        while let Some(last) = self.prefix.last() {
            if last != self.cycle.last().expect("cycle is nonempty") {
                break;
            }
            self.prefix.pop();
            self.cycle.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[T] {
        &self.cycle
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// Term at zero-based index `j`.
    pub fn get(&self, j: usize) -> &T {
        if j < self.prefix.len() {
            &self.prefix[j]
        } else {
            &self.cycle[(j - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.prefix.iter().chain(self.cycle.iter().cycle())
    }

    pub fn take(&self, n: usize) -> Vec<T> {
        self.iter().take(n).cloned().collect()
    }

    pub fn map<U: Clone + Eq>(&self, mut f: impl FnMut(&T) -> U) -> EventuallyPeriodic<U> {
        let prefix = self.prefix.iter().map(&mut f).collect();
        let cycle = self.cycle.iter().map(&mut f).collect();
        EventuallyPeriodic::new(prefix, cycle).expect("cycle stays nonempty")
    }

    /// Fallible variant of [`map`](Self::map); `f` receives the zero-based
    /// position of the first occurrence of each stored term.
    pub fn try_map<U: Clone + Eq, E>(
        &self,
        mut f: impl FnMut(usize, &T) -> std::result::Result<U, E>,
    ) -> std::result::Result<EventuallyPeriodic<U>, E> {
        let q = self.prefix.len();
        let prefix = self
            .prefix
            .iter()
            .enumerate()
            .map(|(j, t)| f(j, t))
            .collect::<std::result::Result<_, _>>()?;
        let cycle = self
            .cycle
            .iter()
            .enumerate()
            .map(|(j, t)| f(q + j, t))
            .collect::<std::result::Result<_, _>>()?;
        Ok(EventuallyPeriodic::new(prefix, cycle).expect("cycle stays nonempty"))
    }

    /// Prefix length and cycle length of a common layout for `self` and `other`.
    pub fn joint_layout<U>(&self, other: &EventuallyPeriodic<U>) -> (usize, usize) {
        (
            self.prefix.len().max(other.prefix.len()),
            self.cycle.len().lcm(&other.cycle.len()),
        )
    }

    /// Termwise combination of two sequences.
    pub fn zip_with<U: Clone + Eq, V: Clone + Eq>(
        &self,
        other: &EventuallyPeriodic<U>,
        mut f: impl FnMut(&T, &U) -> V,
    ) -> EventuallyPeriodic<V> {
        let (q, p) = self.joint_layout(other);
        let terms: Vec<V> = (0..q + p).map(|j| f(self.get(j), other.get(j))).collect();
        let (prefix, cycle) = terms.split_at(q);
        EventuallyPeriodic::new(prefix.to_vec(), cycle.to_vec()).expect("lcm is positive")
    }

    /// The sequence with its first `head.len()` terms replaced by `head`.
    pub fn with_head(&self, head: &[T]) -> Self {
        let k = head.len();
        let q = self.prefix.len().max(k);
        let p = self.cycle.len();
        let mut prefix = head.to_vec();
        prefix.extend((k..q).map(|j| self.get(j).clone()));
        let cycle = (q..q + p).map(|j| self.get(j).clone()).collect();
        Self::new(prefix, cycle).expect("cycle stays nonempty")
    }

    /// The sequence shifted left by `k` terms.
    pub fn shift(&self, k: usize) -> Self {
        let q = self.prefix.len().max(k);
        let p = self.cycle.len();
        let prefix = (k..q).map(|j| self.get(j).clone()).collect();
        let cycle = (q..q + p).map(|j| self.get(j).clone()).collect();
        Self::new(prefix, cycle).expect("cycle stays nonempty")
    }
}

impl DigitSeq {
    pub fn zeros() -> Self {
        Self::constant(0)
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.cycle == [0]
    }

    /// Finite digit word followed by zeros.
    pub fn terminating(digits: &[i64]) -> Self {
        Self::new(digits.to_vec(), vec![0]).expect("nonempty cycle")
    }
}

/// Textual element of a sequence: a signed integer or a `{a,b,...}` set.
pub trait SeqItem: Sized {
    fn write_item(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    fn parse_item(s: &str) -> std::result::Result<Self, String>;
}

impl SeqItem for i64 {
    fn write_item(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }

    fn parse_item(s: &str) -> std::result::Result<Self, String> {
        s.parse().map_err(|_| format!("bad digit {s:?}"))
    }
}

impl SeqItem for IntSet {
    fn write_item(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }

    fn parse_item(s: &str) -> std::result::Result<Self, String> {
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| format!("bad set {s:?}"))?;
        if inner.is_empty() {
            return Err("sets must be nonempty".into());
        }
        inner.split(',').map(i64::parse_item).collect()
    }
}

fn split_items(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in list.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&list[start..]);
    out
}

impl<T: SeqItem + Clone + Eq> FromStr for EventuallyPeriodic<T> {
    type Err = Error;

    /// Grammar: `0.[p1,p2,...](c1,c2,...)*`; whitespace is ignored.
    fn from_str(input: &str) -> Result<Self> {
        let s = normalize_text(input);
        let rest = s
            .strip_prefix("0.[")
            .ok_or_else(|| parse_err(input, "expected leading \"0.[\""))?;
        let (prefix_txt, rest) = rest
            .split_once("](")
            .ok_or_else(|| parse_err(input, "expected \"](\" between prefix and cycle"))?;
        let cycle_txt = rest
            .strip_suffix(")*")
            .ok_or_else(|| parse_err(input, "expected trailing \")*\""))?;
        let items = |txt: &str| -> Result<Vec<T>> {
            if txt.is_empty() {
                return Ok(Vec::new());
            }
            split_items(txt)
                .into_iter()
                .map(|t| T::parse_item(t).map_err(|e| parse_err(input, e)))
                .collect()
        };
        let prefix = items(prefix_txt)?;
        let cycle = items(cycle_txt)?;
        if cycle.is_empty() {
            return Err(parse_err(input, "cycle must be nonempty"));
        }
        EventuallyPeriodic::new(prefix, cycle)
    }
}

impl<T: SeqItem> fmt::Display for EventuallyPeriodic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &[T]| -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                x.write_item(f)?;
            }
            Ok(())
        };
        write!(f, "0.[")?;
        list(f, &self.prefix)?;
        write!(f, "](")?;
        list(f, &self.cycle)?;
        write!(f, ")*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_grammar_examples() {
        let s: DigitSeq = "0.[](5,0)*".parse().unwrap();
        assert!(s.prefix().is_empty());
        assert_eq!(s.cycle(), &[5, 0]);

        let s: DigitSeq = "0.[5](5,0)*".parse().unwrap();
        assert_eq!(s.prefix(), &[5]);
        assert_eq!(s.cycle(), &[5, 0]);

        let s: DigitSeq = "0.[](\u{2212}4,0,4)*".parse().unwrap();
        assert_eq!(s.cycle(), &[-4, 0, 4]);
        assert_eq!(s.to_string(), "0.[](-4,0,4)*");
    }

    #[test]
    fn canonicalizes() {
        let s = DigitSeq::new(vec![1, 0], vec![4, 0, 4, 0]).unwrap();
        // 1,0,4,0,4,0,... = 1,(0,4)*
        assert_eq!(s.prefix(), &[1]);
        assert_eq!(s.cycle(), &[0, 4]);
        assert_eq!(DigitSeq::new(vec![0, 0], vec![0]).unwrap(), DigitSeq::zeros());
        assert!(DigitSeq::new(vec![1], vec![]).is_err());
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "0.(1)*", "0.[1](1)", "0.[](", "0.[]()*", "1.[](1)*", "0.[a](1)*"] {
            assert!(bad.parse::<DigitSeq>().is_err(), "{bad}");
        }
        assert!("0.[{}]({1})*".parse::<SetSeq>().is_err());
    }

    #[test]
    fn set_sequences() {
        let s: SetSeq = "0.[{0}]({0,4})*".parse().unwrap();
        assert_eq!(s.prefix().len(), 1);
        assert_eq!(s.to_string(), "0.[{0}]({0,4})*");
        let t: SetSeq = "0.[{0,4}]({4,0})*".parse().unwrap();
        assert_eq!(t.to_string(), "0.[]({0,4})*");
    }

    #[test]
    fn zip_aligns_layouts() {
        let a: DigitSeq = "0.[1](2,3)*".parse().unwrap();
        let b: DigitSeq = "0.[](1,1,0)*".parse().unwrap();
        let c = a.zip_with(&b, |x, y| x + y);
        for j in 0..40 {
            assert_eq!(*c.get(j), a.get(j) + b.get(j));
        }
    }

    #[test]
    fn head_and_shift() {
        let a: DigitSeq = "0.[](-4,0,4)*".parse().unwrap();
        let h = a.with_head(&[7, 7]);
        assert_eq!(h.take(5), vec![7, 7, 4, -4, 0]);
        assert_eq!(a.shift(1).take(3), vec![0, 4, -4]);
    }

    fn arb_seq() -> impl Strategy<Value = DigitSeq> {
        (
            proptest::collection::vec(-9i64..10, 0..5),
            proptest::collection::vec(-9i64..10, 1..5),
        )
            .prop_map(|(p, c)| DigitSeq::new(p, c).unwrap())
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(s in arb_seq()) {
            let text = s.to_string();
            let back: DigitSeq = text.parse().unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, s);
        }

        #[test]
        fn canonical_form_preserves_terms(
            p in proptest::collection::vec(0i64..3, 0..5),
            c in proptest::collection::vec(0i64..3, 1..5),
        ) {
            let s = DigitSeq::new(p.clone(), c.clone()).unwrap();
            let raw: Vec<i64> = p.iter().chain(c.iter().cycle()).take(30).cloned().collect();
            prop_assert_eq!(s.take(30), raw);
            prop_assert!(s.prefix().len() <= p.len());
        }
    }
}

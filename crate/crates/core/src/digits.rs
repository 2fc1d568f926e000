use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::IntSet;

/// A finite set of integer digits attached to the base parameter `n`.
///
/// Restricted digit sets live in `{0, ..., n^2}`; difference alphabets such
/// as `D - D` or the extended tile alphabet may be signed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitSet {
    n: i64,
    digits: Vec<i64>,
}

impl DigitSet {
    /// Any nonempty set of integers.
    pub fn alphabet(n: i64, digits: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut digits: Vec<i64> = digits.into_iter().collect();
        digits.sort_unstable();
        digits.dedup();
        if digits.is_empty() {
            return Err(Error::EmptyDigitSet);
        }
        Ok(DigitSet { n, digits })
    }

    /// A subset of `{0, ..., n^2}`.
    pub fn restricted(n: i64, digits: impl IntoIterator<Item = i64>) -> Result<Self> {
        let set = Self::alphabet(n, digits)?;
        set.check_range(0, n * n)?;
        Ok(set)
    }

    /// A subset of `{-n^2, ..., n^2}`.
    pub fn extended(n: i64, digits: impl IntoIterator<Item = i64>) -> Result<Self> {
        let set = Self::alphabet(n, digits)?;
        set.check_range(-n * n, n * n)?;
        Ok(set)
    }

    /// `{0, 1, ..., n^2}`, the digits of the fundamental tile.
    pub fn fundamental(n: i64) -> Self {
        DigitSet {
            n,
            digits: (0..=n * n).collect(),
        }
    }

    fn check_range(&self, lo: i64, hi: i64) -> Result<()> {
        match self.digits.iter().find(|d| **d < lo || **d > hi) {
            Some(&digit) => Err(Error::DigitOutOfRange {
                digit,
                alphabet: format!("{{{lo}, ..., {hi}}}"),
            }),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.digits.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn contains(&self, d: i64) -> bool {
        self.digits.binary_search(&d).is_ok()
    }

    pub fn min(&self) -> i64 {
        self.digits[0]
    }

    pub fn max(&self) -> i64 {
        *self.digits.last().expect("nonempty")
    }

    pub fn max_abs(&self) -> i64 {
        self.min().abs().max(self.max().abs())
    }

    /// `D - D`.
    pub fn differences(&self) -> DigitSet {
        let diffs = self
            .digits
            .iter()
            .flat_map(|a| self.digits.iter().map(move |b| a - b));
        DigitSet::alphabet(self.n, diffs).expect("nonempty")
    }

    /// `D ∩ (D + shift)`.
    pub fn meet_shifted(&self, shift: i64) -> IntSet {
        self.digits
            .iter()
            .copied()
            .filter(|d| self.contains(d - shift))
            .collect()
    }

    pub fn to_set(&self) -> IntSet {
        self.digits.iter().copied().collect()
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DigitSet::restricted(3, [0, 4, 9]).is_ok());
        assert!(matches!(
            DigitSet::restricted(3, [0, 10]),
            Err(Error::DigitOutOfRange { digit: 10, .. })
        ));
        assert!(DigitSet::restricted(3, []).is_err());
        assert!(DigitSet::extended(3, [-9, 9]).is_ok());
        assert!(DigitSet::extended(3, [-10]).is_err());
    }

    #[test]
    fn differences_and_meets() {
        let d = DigitSet::restricted(3, [0, 4, 8]).unwrap();
        assert_eq!(d.differences().digits(), &[-8, -4, 0, 4, 8]);
        assert_eq!(d.meet_shifted(4), IntSet::from([4, 8]));
        assert_eq!(d.meet_shifted(0), d.to_set());
        assert_eq!(d.to_string(), "{0,4,8}");
    }
}

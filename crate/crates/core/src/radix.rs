//! Radix expansions in base `b = -n + i`.

use num_bigint::BigInt;

use crate::digits::DigitSet;
use crate::error::{Error, Result};
use crate::expansion;
use crate::sequence::DigitSeq;
use crate::{GaussianInt, QI};

/// The complex base `b = -n + i`, `n >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base {
    n: i64,
}

impl Base {
    pub fn new(n: i64) -> Result<Self> {
        // n^2 must stay comfortably inside i64 for digit arithmetic
        if !(2..=1_000_000).contains(&n) {
            return Err(Error::InvalidBase(n));
        }
        Ok(Base { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn b(&self) -> GaussianInt {
        GaussianInt::new(-self.n, 1)
    }

    /// `|b|^2 = n^2 + 1`.
    pub fn norm(&self) -> i64 {
        self.n * self.n + 1
    }

    /// Largest Katai-Szabo digit, `n^2`.
    pub fn max_digit(&self) -> i64 {
        self.n * self.n
    }
}

/// `sum_j d_j b^(len - j)`: the Gaussian integer with the digit word read
/// most significant first.
pub(crate) fn horner(digits: &[i64], b: &GaussianInt) -> GaussianInt {
    digits.iter().fold(GaussianInt::zero(), |acc, &d| {
        &(&acc * b) + &GaussianInt::from_int(BigInt::from(d))
    })
}

/// Value of the finite word `0.d_1 d_2 ... d_k`.
pub fn eval_word(digits: &[i64], base: Base) -> QI {
    let b = base.b();
    let scaled = QI::from(horner(digits, &b));
    let bk = QI::from(b.pow(digits.len() as u32));
    &scaled / &bk
}

/// Exact value of `sum_j d_j b^(-j)` for an eventually periodic digit sequence.
pub fn eval(seq: &DigitSeq, base: Base) -> QI {
    let b = base.b();
    let q = seq.prefix().len() as u32;
    let p = seq.period() as u32;
    // tail T = sum c_l b^(p-l) / (b^p - 1) sits right after the prefix
    let cycle_poly = QI::from(horner(seq.cycle(), &b));
    let tail = &cycle_poly / &QI::from(&b.pow(p) - &GaussianInt::one());
    let head = QI::from(horner(seq.prefix(), &b));
    &(&head + &tail) / &QI::from(b.pow(q))
}

/// Katai-Szabo digits `λ_0, λ_1, ...` (least significant first) with
/// `g = sum λ_j b^j` and every `λ_j ∈ {0, ..., n^2}`.
pub fn encode_integer(g: &GaussianInt, base: Base) -> Vec<i64> {
    let b = base.b();
    let modulus = BigInt::from(base.norm());
    let n = BigInt::from(base.n);
    let mut rest = g.clone();
    let mut digits = Vec::new();
    // i ≡ n (mod b), so x + yi ≡ x + ny
    while !rest.is_zero() {
        let r = num_integer::Integer::mod_floor(&(&rest.re + &(&rest.im * &n)), &modulus);
        let shifted = &rest - &GaussianInt::from_int(r.clone());
        rest = shifted
            .div_exact(&b)
            .expect("x + ny residue makes the remainder divisible by b");
        digits.push(i64::try_from(r).expect("digit below n^2 + 1"));
    }
    if digits.is_empty() {
        digits.push(0);
    }
    digits
}

/// Inverse of [`encode_integer`].
pub fn decode_integer(digits: &[i64], base: Base) -> GaussianInt {
    let rev: Vec<i64> = digits.iter().rev().copied().collect();
    horner(&rev, &base.b())
}

/// Decides `z ∈ C_{n,D}`; on success returns a digit sequence over `D`
/// evaluating to `z`.
pub fn member(z: &QI, base: Base, digits: &DigitSet) -> Option<DigitSeq> {
    expansion::find_expansion(z, base, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QI {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn evaluates_closed_forms() {
        let b3 = Base::new(3).unwrap();
        assert_eq!(eval(&seq("0.[](5,0)*"), b3), q("(-27-11i)/17"));
        let alpha = q("-28+24i").checked_div(&q("-19+26i")).unwrap();
        assert_eq!(eval(&seq("0.[](-4,0,4)*"), b3), alpha);
        for n in 2..6 {
            assert_eq!(eval(&DigitSeq::zeros(), Base::new(n).unwrap()), QI::zero());
        }
    }

    #[test]
    fn terminating_sequences_match_words() {
        let b = Base::new(4).unwrap();
        let word = [3, 0, 16, 7];
        assert_eq!(eval(&DigitSeq::terminating(&word), b), eval_word(&word, b));
    }

    #[test]
    fn encodes_integers() {
        let b3 = Base::new(3).unwrap();
        assert_eq!(encode_integer(&GaussianInt::zero(), b3), vec![0]);
        assert_eq!(encode_integer(&GaussianInt::new(-1, 0), b3), vec![9, 6, 1]);
        assert_eq!(encode_integer(&GaussianInt::new(-3, 1), b3), vec![0, 1]);
        // oracle: evaluate 9 + 6b + b^2 directly
        let b = b3.b();
        let direct = &(&GaussianInt::new(9, 0) + &b.scale(&BigInt::from(6))) + &(&b * &b);
        assert_eq!(direct, GaussianInt::new(-1, 0));
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(Base::new(1), Err(Error::InvalidBase(1)));
    }

    #[test]
    fn membership_examples() {
        let b3 = Base::new(3).unwrap();
        let d05 = DigitSet::restricted(3, [0, 5]).unwrap();
        let w = member(&q("(-27-11i)/17"), b3, &d05).unwrap();
        assert_eq!(w, seq("0.[](5,0)*"));
        let d04 = DigitSet::restricted(3, [0, 4]).unwrap();
        assert_eq!(member(&QI::zero(), b3, &d04), Some(DigitSeq::zeros()));
        assert_eq!(member(&QI::one(), b3, &d04), None);
    }
}

//! Gaussian integers `a + bi` over any exact signed integer type.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};

/// Exact signed integer usable as the coefficient ring of [`Gaussian`].
///
/// Implemented for `i64`, `i128` and `BigInt`; the engines themselves run on
/// `BigInt` because powers of the base outgrow machine words quickly.
pub trait Scalar:
    num_integer::Integer
    + Signed
    + Clone
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + From<i64>
    + ToPrimitive
{
}

impl<T> Scalar for T where
    T: num_integer::Integer
        + Signed
        + Clone
        + Ord
        + Hash
        + fmt::Debug
        + fmt::Display
        + From<i64>
        + ToPrimitive
{
}

/// An element of Z[i].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Gaussian<T> {
    pub fn new(re: impl Into<T>, im: impl Into<T>) -> Self {
        Gaussian {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Gaussian {
            re: T::zero(),
            im: T::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(T::one())
    }

    pub fn i() -> Self {
        Gaussian {
            re: T::zero(),
            im: T::one(),
        }
    }

    pub fn from_int(re: T) -> Self {
        Gaussian { re, im: T::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Gaussian {
            re: self.re.clone() * k.clone(),
            im: self.im.clone() * k.clone(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `self / divisor` when the quotient lies in Z[i].
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let n = divisor.norm();
        let t = self * &divisor.conj();
        if t.re.is_multiple_of(&n) && t.im.is_multiple_of(&n) {
            Some(Gaussian {
                re: t.re / n.clone(),
                im: t.im / n,
            })
        } else {
            None
        }
    }

    /// Display-only floating point approximation.
    pub fn approx<F: num_traits::Float>(&self) -> (F, F) {
        let cvt = |x: &T| F::from(x.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan);
        (cvt(&self.re), cvt(&self.im))
    }
}

impl<T: Scalar> Zero for Gaussian<T> {
    fn zero() -> Self {
        Gaussian::zero()
    }
    fn is_zero(&self) -> bool {
        Gaussian::is_zero(self)
    }
}

impl<'a, T: Scalar> Add<&'a Gaussian<T>> for &'a Gaussian<T> {
    type Output = Gaussian<T>;
    fn add(self, rhs: &'a Gaussian<T>) -> Gaussian<T> {
        Gaussian {
            re: self.re.clone() + rhs.re.clone(),
            im: self.im.clone() + rhs.im.clone(),
        }
    }
}

impl<'a, T: Scalar> Sub<&'a Gaussian<T>> for &'a Gaussian<T> {
    type Output = Gaussian<T>;
    fn sub(self, rhs: &'a Gaussian<T>) -> Gaussian<T> {
        Gaussian {
            re: self.re.clone() - rhs.re.clone(),
            im: self.im.clone() - rhs.im.clone(),
        }
    }
}

impl<'a, T: Scalar> Mul<&'a Gaussian<T>> for &'a Gaussian<T> {
    type Output = Gaussian<T>;
    fn mul(self, rhs: &'a Gaussian<T>) -> Gaussian<T> {
        let (a, b) = (&self.re, &self.im);
        let (c, d) = (&rhs.re, &rhs.im);
        Gaussian {
            re: a.clone() * c.clone() - b.clone() * d.clone(),
            im: a.clone() * d.clone() + b.clone() * c.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for Gaussian<T> {
            type Output = Gaussian<T>;
            fn $m(self, rhs: Gaussian<T>) -> Gaussian<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Gaussian<T> {
    type Output = Gaussian<T>;
    fn neg(self) -> Gaussian<T> {
        Gaussian {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<T: Scalar> Neg for &Gaussian<T> {
    type Output = Gaussian<T>;
    fn neg(self) -> Gaussian<T> {
        -self.clone()
    }
}

impl<T: Scalar> fmt::Display for Gaussian<T> {
    /// `3`, `-2i`, `i`, `2+i`, `-27-11i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &T| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else {
                write!(f, "{im}i")
            }
        };
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            return imag(f, &self.im.abs());
        }
        if self.im.is_negative() {
            write!(f, "-")?;
        }
        imag(f, &self.im.abs())
    }
}

/// Normalizes unicode minus signs and strips whitespace.
pub(crate) fn normalize_text(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect()
}

pub(crate) fn parse_int<T: Scalar>(s: &str, whole: &str) -> Result<T> {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(whole, format!("bad integer {s:?}")));
    }
    let v = T::from_str_radix(digits, 10).map_err(|_| parse_err(whole, "integer overflow"))?;
    Ok(if neg { -v } else { v })
}

impl<T: Scalar> FromStr for Gaussian<T> {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i` alone meaning `1i`.
    fn from_str(input: &str) -> Result<Self> {
        let s = normalize_text(input);
        if s.is_empty() {
            return Err(parse_err(input, "empty"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Gaussian::from_int(parse_int(&s, input)?));
        };
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => T::one(),
            "-" => -T::one(),
            other => parse_int(other, input)?,
        };
        let re = if re_part.is_empty() {
            T::zero()
        } else {
            parse_int(re_part, input)?
        };
        Ok(Gaussian { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type G = Gaussian<BigInt>;

    fn g(re: i64, im: i64) -> G {
        Gaussian::new(re, im)
    }

    #[test]
    fn base_powers_for_n3() {
        let b = g(-3, 1);
        assert_eq!(&b * &b, g(8, -6));
        assert_eq!(&b * &g(8, -6), g(-18, 26));
        assert_eq!(b.pow(3), g(-18, 26));
        assert_eq!(&b * &G::zero(), G::zero());
    }

    #[test]
    fn norm_values() {
        assert_eq!(g(-3, 1).norm(), BigInt::from(10));
        assert_eq!(G::zero().norm(), BigInt::from(0));
        for n in 2..=8i64 {
            assert_eq!(g(-n, 1).norm(), BigInt::from(n * n + 1));
        }
    }

    #[test]
    fn exact_division() {
        let b = g(-3, 1);
        assert_eq!(g(-10, 0).div_exact(&b), Some(g(3, 1)));
        assert_eq!(g(1, 0).div_exact(&b), None);
        assert_eq!(g(1, 0).div_exact(&G::zero()), None);
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        let r = -3..=3i64;
        let pts: Vec<Gaussian<i64>> = r
            .clone()
            .flat_map(|a| r.clone().map(move |b| Gaussian::new(a, b)))
            .collect();
        for x in &pts {
            for y in pts.iter().step_by(3) {
                assert_eq!((x * y).norm(), x.norm() * y.norm());
                for z in pts.iter().step_by(5) {
                    assert_eq!(&(x * y) * z, x * &(y * z));
                    assert_eq!(x * &(y + z), &(x * y) + &(x * z));
                }
            }
        }
    }

    #[test]
    fn display_and_parse() {
        for (s, v) in [
            ("3", g(3, 0)),
            ("-2i", g(0, -2)),
            ("i", g(0, 1)),
            ("-i", g(0, -1)),
            ("2+i", g(2, 1)),
            ("-27-11i", g(-27, -11)),
            ("0", g(0, 0)),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<G>().unwrap(), v);
        }
        assert_eq!(" 4 + 1i ".parse::<G>().unwrap(), g(4, 1));
        assert_eq!("\u{2212}3+i".parse::<G>().unwrap(), g(-3, 1));
        assert!("3+".parse::<G>().is_err());
        assert!("x".parse::<G>().is_err());
        assert!("".parse::<G>().is_err());
    }
}

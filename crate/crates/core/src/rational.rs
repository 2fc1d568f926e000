//! Gaussian rationals: elements of Q(i) kept as a Gaussian numerator over a
//! positive integer denominator, always fully reduced.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{parse_err, Error, Result};
use crate::gaussian::{normalize_text, parse_int, Gaussian, Scalar};

/// `num / den` with `den > 0` and `gcd(re, im, den) = 1`.
///
/// Because the representation is canonical, structural equality is value
/// equality. The derived ordering is structural and only meant for
/// deterministic containers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational<T> {
    num: Gaussian<T>,
    den: T,
}

impl<T: Scalar> GaussianRational<T> {
    pub fn new(num: Gaussian<T>, den: T) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Gaussian<T>, den: T) -> Self {
        let g = num.re.gcd(&num.im).gcd(&den);
        let g = if den.is_negative() { -g } else { g };
        GaussianRational {
            num: Gaussian {
                re: num.re / g.clone(),
                im: num.im / g.clone(),
            },
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Self::from(Gaussian::zero())
    }

    pub fn one() -> Self {
        Self::from(Gaussian::one())
    }

    pub fn from_int(v: T) -> Self {
        Self::from(Gaussian::from_int(v))
    }

    pub fn numer(&self) -> &Gaussian<T> {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Gaussian integer, if it is one.
    pub fn to_gaussian(&self) -> Option<Gaussian<T>> {
        self.den.is_one().then(|| self.num.clone())
    }

    /// `|z|^2` as an exact rational.
    pub fn norm(&self) -> Ratio<T> {
        Ratio::new(self.num.norm(), self.den.clone() * self.den.clone())
    }

    pub fn mul_gaussian(&self, g: &Gaussian<T>) -> Self {
        Self::reduce(&self.num * g, self.den.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (a/d) / (c/e) = a e conj(c) / (d |c|^2)
        let num = &self.num.scale(&rhs.den) * &rhs.num.conj();
        let den = self.den.clone() * rhs.num.norm();
        Ok(Self::reduce(num, den))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Display-only floating point approximation.
    pub fn approx<F: num_traits::Float>(&self) -> (F, F) {
        let (re, im) = self.num.approx::<f64>();
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let cvt = |x: f64| F::from(x / d).unwrap_or_else(F::nan);
        (cvt(re), cvt(im))
    }
}

impl<T: Scalar> From<Gaussian<T>> for GaussianRational<T> {
    fn from(num: Gaussian<T>) -> Self {
        GaussianRational { num, den: T::one() }
    }
}

impl<'a, T: Scalar> Add<&'a GaussianRational<T>> for &'a GaussianRational<T> {
    type Output = GaussianRational<T>;
    fn add(self, rhs: &'a GaussianRational<T>) -> GaussianRational<T> {
        let num = &self.num.scale(&rhs.den) + &rhs.num.scale(&self.den);
        GaussianRational::reduce(num, self.den.clone() * rhs.den.clone())
    }
}

impl<'a, T: Scalar> Sub<&'a GaussianRational<T>> for &'a GaussianRational<T> {
    type Output = GaussianRational<T>;
    fn sub(self, rhs: &'a GaussianRational<T>) -> GaussianRational<T> {
        let num = &self.num.scale(&rhs.den) - &rhs.num.scale(&self.den);
        GaussianRational::reduce(num, self.den.clone() * rhs.den.clone())
    }
}

impl<'a, T: Scalar> Mul<&'a GaussianRational<T>> for &'a GaussianRational<T> {
    type Output = GaussianRational<T>;
    fn mul(self, rhs: &'a GaussianRational<T>) -> GaussianRational<T> {
        GaussianRational::reduce(&self.num * &rhs.num, self.den.clone() * rhs.den.clone())
    }
}

/// Panics on a zero divisor, like integer division; see
/// [`GaussianRational::checked_div`].
impl<'a, T: Scalar> Div<&'a GaussianRational<T>> for &'a GaussianRational<T> {
    type Output = GaussianRational<T>;
    fn div(self, rhs: &'a GaussianRational<T>) -> GaussianRational<T> {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for GaussianRational<T> {
            type Output = GaussianRational<T>;
            fn $m(self, rhs: GaussianRational<T>) -> GaussianRational<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl<T: Scalar> Neg for GaussianRational<T> {
    type Output = GaussianRational<T>;
    fn neg(self) -> GaussianRational<T> {
        GaussianRational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<T: Scalar> Neg for &GaussianRational<T> {
    type Output = GaussianRational<T>;
    fn neg(self) -> GaussianRational<T> {
        -self.clone()
    }
}

impl<T: Scalar> fmt::Display for GaussianRational<T> {
    /// `a+bi` when integral, otherwise `(a+bi)/d`; single-component
    /// numerators drop the parentheses (`-1/3`, `2i/5`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.re.is_zero() || self.num.im.is_zero() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl<T: Scalar> FromStr for GaussianRational<T> {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s = normalize_text(input);
        let (num_txt, den) = match s.rsplit_once('/') {
            Some((n, d)) => (n, parse_int::<T>(d, input)?),
            None => (s.as_str(), T::one()),
        };
        let num_txt = match num_txt.strip_prefix('(') {
            Some(inner) => inner
                .strip_suffix(')')
                .ok_or_else(|| parse_err(input, "unbalanced parenthesis"))?,
            None => num_txt,
        };
        let num: Gaussian<T> = num_txt.parse().map_err(|_| parse_err(input, "bad numerator"))?;
        GaussianRational::new(num, den).map_err(|_| parse_err(input, "zero denominator"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type Q = GaussianRational<BigInt>;

    fn q(re: i64, im: i64, den: i64) -> Q {
        Q::new(Gaussian::new(re, im), BigInt::from(den)).unwrap()
    }

    #[test]
    fn halves_sum_to_one() {
        assert_eq!(&q(1, 0, 2) + &q(1, 0, 2), Q::one());
    }

    #[test]
    fn closed_form_z1_for_n3() {
        // 5(-3+i) / (7-6i)
        let lhs = q(-15, 5, 1).checked_div(&q(7, -6, 1)).unwrap();
        assert_eq!(lhs, q(-27, -11, 17));
    }

    #[test]
    fn zero_division_is_an_error() {
        assert_eq!(Q::one().checked_div(&Q::zero()), Err(Error::DivisionByZero));
        assert!(Q::new(Gaussian::one(), BigInt::from(0)).is_err());
    }

    #[test]
    fn canonical_form() {
        let a = q(4, -6, -8);
        assert_eq!(a.numer(), &Gaussian::new(-2, 3));
        assert_eq!(a.denom(), &BigInt::from(4));
        assert_eq!(q(0, 0, -7), Q::zero());
    }

    #[test]
    fn display_and_parse() {
        for (s, v) in [
            ("(-27-11i)/17", q(-27, -11, 17)),
            ("-1/3", q(-1, 0, 3)),
            ("2i/5", q(0, 2, 5)),
            ("8-6i", q(8, -6, 1)),
            ("0", Q::zero()),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<Q>().unwrap(), v);
        }
        assert_eq!(" ( 2 + 4i ) / 6 ".parse::<Q>().unwrap(), q(1, 2, 3));
        assert!("(1+i/2".parse::<Q>().is_err());
        assert!("1/0".parse::<Q>().is_err());
    }

    #[test]
    fn generic_over_machine_integers() {
        let a: GaussianRational<i64> = "(1+i)/2".parse().unwrap();
        let b: GaussianRational<i64> = "(1-i)/2".parse().unwrap();
        assert_eq!((&a * &b).to_string(), "1/2");
        assert_eq!(a.approx::<f32>(), (0.5, 0.5));
    }

    fn arb_q() -> impl Strategy<Value = Q> {
        (-50i64..50, -50i64..50, 1i64..40).prop_map(|(a, b, d)| q(a, b, d))
    }

    proptest! {
        #[test]
        fn difference_zero_iff_identical(a in arb_q(), b in arb_q()) {
            prop_assert_eq!((&a - &b).is_zero(), a == b);
        }

        #[test]
        fn self_division_is_one(a in arb_q()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a.checked_div(&a).unwrap(), Q::one());
        }

        #[test]
        fn field_laws(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }
    }
}

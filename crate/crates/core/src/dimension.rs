//! Digit-set hypotheses and exact symbolic dimensions.
//!
//! Every dimension produced by the engines has the form
//! `r · log(m) / log|b|` with `r` rational and `m` a positive integer that is
//! not a perfect power. With that normalization two values are equal exactly
//! when their `(r, m)` pairs agree, so comparisons never touch floating point.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::digits::DigitSet;
use crate::error::{Error, Result};
use crate::radix::Base;

/// Which set of hypotheses a digit set is used under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `D ⊆ {0, ..., floor(n^2/2)}` and no two elements of `D - D` differ by 1.
    Bounded,
    /// `D ⊆ {0, ..., n^2}` and `D - D` is sparse: distinct elements differ by
    /// more than 2 (n >= 5) or more than 3 (n <= 4).
    Sparse,
    /// `D = {0, m}` with `2 <= m <= n^2`.
    TwoDigit,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Bounded => "bounded",
            Regime::Sparse => "sparse",
            Regime::TwoDigit => "two-digit",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bounded" => Ok(Regime::Bounded),
            "sparse" => Ok(Regime::Sparse),
            "two-digit" | "two_digit" => Ok(Regime::TwoDigit),
            other => Err(crate::error::parse_err(other, "expected bounded, sparse or two-digit")),
        }
    }
}

/// Smallest gap allowed between distinct elements of a sparse `D - D`.
pub fn sparse_gap(n: i64) -> i64 {
    if n >= 5 {
        3
    } else {
        4
    }
}

/// Pairs `(a, c)` of `D - D` with `c >= 0`, `a > c` and `a - c < min_gap`.
/// `D - D` is symmetric, so every close pair has a mirror of this shape.
fn close_pairs(diffs: &DigitSet, min_gap: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for c in diffs.iter().filter(|&c| c >= 0) {
        for a in diffs.iter().filter(|&a| a > c && a - c < min_gap) {
            out.push((a, c));
        }
    }
    out
}

/// Violated hypotheses of `regime` for the pair `(n, digits)`, each naming the
/// failed inequality. Empty means the regime applies.
pub fn validate(n: i64, digits: &DigitSet, regime: Regime) -> Vec<String> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(format!("n >= 2 fails (n = {n})"));
        return out;
    }
    let n2 = n * n;
    let diffs = digits.differences();
    match regime {
        Regime::Bounded => {
            let cap = n2 / 2;
            for d in digits.iter().filter(|&d| d < 0 || d > cap) {
                out.push(format!("D ⊆ {{0, ..., floor(n^2/2)}} = {{0, ..., {cap}}} fails ({d})"));
            }
            for (a, c) in close_pairs(&diffs, 2) {
                out.push(format!("|δ−δ′| ≠ 1 fails ({a}−{c})"));
            }
        }
        Regime::Sparse => {
            for d in digits.iter().filter(|&d| d < 0 || d > n2) {
                out.push(format!("D ⊆ {{0, ..., n^2}} = {{0, ..., {n2}}} fails ({d})"));
            }
            let gap = sparse_gap(n);
            for (a, c) in close_pairs(&diffs, gap) {
                out.push(format!("D−D sparse: |δ−δ′| > {} fails ({a}−{c})", gap - 1));
            }
        }
        Regime::TwoDigit => {
            let ds = digits.digits();
            if ds.len() != 2 || ds[0] != 0 {
                out.push(format!("D = {{0, m}} fails ({digits})"));
            } else if ds[1] < 2 || ds[1] > n2 {
                out.push(format!("2 <= m <= n^2 = {n2} fails (m = {})", ds[1]));
            }
        }
    }
    out
}

/// A digit set together with the hypotheses it is used under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    base: Base,
    digits: DigitSet,
    regime: Regime,
}

impl Config {
    /// Fails with [`Error::Hypothesis`] when `regime` does not apply.
    pub fn new(n: i64, digits: DigitSet, regime: Regime) -> Result<Self> {
        let base = Base::new(n)?;
        let violations = validate(n, &digits, regime);
        if !violations.is_empty() {
            return Err(Error::Hypothesis(violations));
        }
        Ok(Config {
            base,
            digits,
            regime,
        })
    }

    /// The first of sparse, bounded, two-digit that applies.
    pub fn detect(n: i64, digits: DigitSet) -> Result<Self> {
        let mut all = Vec::new();
        for regime in [Regime::Sparse, Regime::Bounded, Regime::TwoDigit] {
            match Self::new(n, digits.clone(), regime) {
                Ok(cfg) => return Ok(cfg),
                Err(Error::Hypothesis(v)) => {
                    all.extend(v.into_iter().map(|m| format!("{}: {m}", regime.name())))
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::Hypothesis(all))
    }

    pub fn n(&self) -> i64 {
        self.base.n()
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digits(&self) -> &DigitSet {
        &self.digits
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// True when the bounded or the sparse hypotheses hold, whatever the
    /// declared regime.
    pub fn has_dimension_formula(&self) -> bool {
        validate(self.n(), &self.digits, Regime::Bounded).is_empty()
            || validate(self.n(), &self.digits, Regime::Sparse).is_empty()
    }

    /// Hypotheses needed by the product formula, as an error.
    pub(crate) fn require_dimension_formula(&self) -> Result<()> {
        if self.has_dimension_formula() {
            return Ok(());
        }
        let mut v: Vec<String> = validate(self.n(), &self.digits, Regime::Bounded)
            .into_iter()
            .map(|m| format!("bounded: {m}"))
            .collect();
        v.extend(
            validate(self.n(), &self.digits, Regime::Sparse)
                .into_iter()
                .map(|m| format!("sparse: {m}")),
        );
        Err(Error::Hypothesis(v))
    }
}

/// `coefficient · log(log_arg) / log|b|` with `log_arg` not a perfect power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dimension {
    n: i64,
    coefficient: BigRational,
    log_arg: BigUint,
}

/// Writes `x = m^e` with the largest possible `e`.
fn perfect_power(x: &BigUint) -> (BigUint, u32) {
    if x <= &BigUint::one() {
        return (x.clone(), 1);
    }
    let bits = x.bits() as u32;
    for e in (2..=bits).rev() {
        let r = x.nth_root(e);
        if r.pow(e) == *x {
            return (r, e);
        }
    }
    (x.clone(), 1)
}

impl Dimension {
    pub fn zero(n: i64) -> Self {
        Dimension {
            n,
            coefficient: BigRational::zero(),
            log_arg: BigUint::one(),
        }
    }

    /// `log(product) / (period · log|b|)`.
    pub fn from_log_product(n: i64, product: &BigUint, period: usize) -> Self {
        assert!(period > 0, "period must be positive");
        if product <= &BigUint::one() {
            return Self::zero(n);
        }
        let (m, e) = perfect_power(product);
        Dimension {
            n,
            coefficient: BigRational::new(e.into(), period.into()),
            log_arg: m,
        }
    }

    /// `log|D| / log|b|`, the dimension of the whole attractor.
    pub fn of_digit_set(digits: &DigitSet) -> Self {
        Self::from_log_product(digits.n(), &BigUint::from(digits.len()), 1)
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn log_arg(&self) -> &BigUint {
        &self.log_arg
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Coefficient with respect to `log(m) / log(n^2 + 1)`, i.e. twice the
    /// coefficient over `log|b|`.
    pub fn over_log_norm(&self) -> BigRational {
        &self.coefficient * BigRational::from_integer(2.into())
    }

    pub fn scaled(&self, lambda: &BigRational) -> Self {
        if lambda.is_zero() || self.is_zero() {
            return Self::zero(self.n);
        }
        Dimension {
            n: self.n,
            coefficient: &self.coefficient * lambda,
            log_arg: self.log_arg.clone(),
        }
    }

    /// `log(m)/log(sqrt(n^2+1))`, or `0` for the zero dimension.
    pub fn base_log_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        format!("log({})/log(sqrt({}))", self.log_arg, self.n * self.n + 1)
    }

    /// Display-only approximation.
    pub fn to_float<F: num_traits::Float>(&self) -> F {
        if self.is_zero() {
            return F::zero();
        }
        let c = self.coefficient.to_f64().expect("finite coefficient");
        let m = self.log_arg.to_f64().expect("finite argument");
        let b = ((self.n * self.n + 1) as f64).sqrt();
        F::from(c * m.ln() / b.ln()).expect("representable")
    }

    /// Fixed-point decimal with `places` digits, for display.
    pub fn decimal(&self, places: usize) -> String {
        format!("{:.*}", places, self.to_float::<f64>())
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{} * {}", self.coefficient, self.base_log_text())
        }
    }
}

/// Box, Hausdorff and packing dimensions of an intersection, together with
/// the per-position factors `|D ∩ (D + c_l)|` over one cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub lower_box: Dimension,
    pub upper_box: Dimension,
    pub hausdorff: Dimension,
    pub packing: Dimension,
    pub m_cycle: Vec<usize>,
}

impl DimensionReport {
    /// Report in which all four dimensions coincide.
    pub fn uniform(value: Dimension, m_cycle: Vec<usize>) -> Self {
        DimensionReport {
            lower_box: value.clone(),
            upper_box: value.clone(),
            hausdorff: value.clone(),
            packing: value,
            m_cycle,
        }
    }

    pub fn value(&self) -> &Dimension {
        &self.hausdorff
    }
}

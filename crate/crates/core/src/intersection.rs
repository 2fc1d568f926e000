//! Intersections `C(α) = C_{n,D} ∩ (C_{n,D} + α)` for translations `α` coded
//! by digit sequences over `D - D`.
//!
//! A point of `C(α)` has digits `d_j ∈ D ∩ (D + α_j)`, so the number of
//! admissible `k`-tiles is `M_k(α) = prod_j |D ∩ (D + α_j)|` and the
//! dimension is the limit of `log M_k / (k log|b|)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::DigitSet;
use crate::dimension::{Config, Dimension, DimensionReport};
use crate::error::{Error, Result};
use crate::expansion::find_expansion;
use crate::sequence::{DigitSeq, IntSet};
use crate::QI;

/// `D ∩ (D + α_j)`.
pub fn admissible_digits(digits: &DigitSet, alpha_j: i64) -> Result<IntSet> {
    let set = digits.meet_shifted(alpha_j);
    if set.is_empty() {
        return Err(Error::InvalidTranslationDigit { digit: alpha_j });
    }
    Ok(set)
}

/// Checks that every digit of `alpha` lies in `D - D`.
pub(crate) fn check_translation(digits: &DigitSet, alpha: &DigitSeq) -> Result<()> {
    for &a in alpha.prefix().iter().chain(alpha.cycle()) {
        admissible_digits(digits, a)?;
    }
    Ok(())
}

/// `prod_{j=1}^{k} |D ∩ (D + α_j)|`.
pub fn m_k(cfg: &Config, alpha: &DigitSeq, k: usize) -> Result<BigUint> {
    let mut prod = BigUint::one();
    for &a in alpha.iter().take(k) {
        prod *= admissible_digits(cfg.digits(), a)?.len();
    }
    Ok(prod)
}

/// Dimensions of `C(α)` for an eventually periodic `α`. Under the bounded or
/// sparse hypotheses all four dimensions equal
/// `sum_l log|D ∩ (D + c_l)| / (p log|b|)` over the cycle `c` of `α`.
pub fn dimension(cfg: &Config, alpha: &DigitSeq) -> Result<DimensionReport> {
    cfg.require_dimension_formula()?;
    check_translation(cfg.digits(), alpha)?;
    let m_cycle = alpha
        .cycle()
        .iter()
        .map(|&c| admissible_digits(cfg.digits(), c).map(|s| s.len()))
        .collect::<Result<Vec<_>>>()?;
    let product = m_cycle
        .iter()
        .fold(BigUint::one(), |acc, &m| acc * BigUint::from(m));
    let value = Dimension::from_log_product(cfg.n(), &product, alpha.period());
    Ok(DimensionReport::uniform(value, m_cycle))
}

/// A translation code with the given prefix whose intersection has dimension
/// `λ · log|D| / log|b|`.
///
/// With `h_j = floor(jλ)`, the tail digit is `d_max - d_min` (one admissible
/// digit) when `h_j = h_(j-1)` and `0` (all of `D`) otherwise. For `λ = r/s`
/// the tail repeats with period `s` and contains exactly `r` zeros per period.
pub fn build_translation(cfg: &Config, prefix: &[i64], lambda: &BigRational) -> Result<DigitSeq> {
    if lambda.is_negative() || lambda > &BigRational::one() {
        return Err(Error::LambdaOutOfRange(lambda.to_string()));
    }
    let diffs = cfg.digits().differences();
    if let Some(&bad) = prefix.iter().find(|&&d| !diffs.contains(d)) {
        return Err(Error::InvalidTranslationDigit { digit: bad });
    }
    let spread = cfg.digits().max() - cfg.digits().min();
    let r = lambda.numer();
    let s = lambda.denom();
    let period = s.to_usize().expect("denominator fits in usize");
    let floor_at = |j: usize| (r * num_bigint::BigInt::from(j)).div_floor(s);
    let tail: Vec<i64> = (1..=period)
        .map(|j| if floor_at(j) == floor_at(j - 1) { spread } else { 0 })
        .collect();
    DigitSeq::new(prefix.to_vec(), tail)
}

/// A code `(α_j)` over `D - D` with `π(α_j) = α`, when `α` is a translation
/// for which `C(α)` is nonempty.
pub fn in_fundamental_translations(cfg: &Config, alpha: &QI) -> Option<DigitSeq> {
    find_expansion(alpha, cfg.base(), &cfg.digits().differences())
}

/// `log|D| / log|b|` scaled by `λ`.
pub fn target_dimension(cfg: &Config, lambda: &BigRational) -> Dimension {
    if lambda.is_zero() {
        return Dimension::zero(cfg.n());
    }
    Dimension::of_digit_set(cfg.digits()).scaled(lambda)
}

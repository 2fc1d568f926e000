//! Self-similarity of intersections `C(α)` through SEP decompositions.
//!
//! Subtracting a shift `β ∈ C(α)` turns `C(α)` into `π(prod_j D_j)` with
//! `D_j = (D ∩ (D + α_j)) - β_j`. When `(D_j)` reads `(A_l)(A_l + U_l)*`,
//! the maps `x -> b^(-p)(x + sum_l (a_l b^(p-l) + u_l b^(-l)))` generate that
//! set, and conjugating by `β` gives an IFS for `C(α)` itself.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::dimension::{Config, Dimension, DimensionReport, Regime};
use crate::digits::DigitSet;
use crate::error::{Error, Result};
use crate::expansion::{expansion_multiplicity, find_expansion_in, in_attractor, Multiplicity};
use crate::intersection::{admissible_digits, check_translation};
use crate::radix::{eval, eval_word, horner, Base};
use crate::sep::{sep_decide_int, sep_decide_sets, sumset, SepDecomposition};
use crate::sequence::{DigitSeq, IntSet, SetSeq};
use crate::QI;

/// `x -> b^(-p) x + translation`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimilarityMap {
    pub p: u32,
    pub translation: QI,
}

fn inv_b_pow(base: Base, p: u32) -> QI {
    QI::from(base.b().pow(p)).recip().expect("b is nonzero")
}

impl SimilarityMap {
    pub fn apply(&self, base: Base, x: &QI) -> QI {
        &(&inv_b_pow(base, self.p) * x) + &self.translation
    }
}

/// A finite family of maps sharing the ratio `b^(-p)`, kept in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ifs {
    base: Base,
    maps: Vec<SimilarityMap>,
}

impl Ifs {
    pub fn new(base: Base, mut maps: Vec<SimilarityMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Consistency("an IFS needs at least one map".into()));
        }
        if maps.iter().any(|m| m.p == 0 || m.p != maps[0].p) {
            return Err(Error::Consistency("maps must share one ratio b^(-p), p >= 1".into()));
        }
        maps.sort();
        Ok(Ifs { base, maps })
    }

    /// `{ x -> b^(-1)(x + d) : d ∈ D }`, whose attractor is `C_{n,D}`.
    pub fn from_digits(base: Base, digits: &DigitSet) -> Self {
        let maps = digits
            .iter()
            .map(|d| SimilarityMap {
                p: 1,
                translation: eval_word(&[d], base),
            })
            .collect();
        Ifs::new(base, maps).expect("digit sets are nonempty")
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn p(&self) -> u32 {
        self.maps[0].p
    }

    pub fn maps(&self) -> &[SimilarityMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn has_duplicates(&self) -> bool {
        self.maps.windows(2).any(|w| w[0] == w[1])
    }
}

/// The IFS whose attractor is the old attractor plus `a`:
/// `g(x) = f(x) + (1 - b^(-p)) a`.
pub fn translate_ifs(ifs: &Ifs, a: &QI) -> Ifs {
    let factor = &QI::one() - &inv_b_pow(ifs.base, ifs.p());
    let shift = &factor * a;
    let maps = ifs
        .maps
        .iter()
        .map(|m| SimilarityMap {
            p: m.p,
            translation: &m.translation + &shift,
        })
        .collect();
    Ifs::new(ifs.base, maps).expect("same shape")
}

/// Maps `x -> b^(-p)(x + S - shift) + shift` with
/// `S = sum_l (a_l b^(p-l) + u_l b^(-l))`, `a_l ∈ heads[l]`, `u_l ∈ incs[l]`.
fn emit_maps(base: Base, heads: &[Vec<i64>], incs: &[Vec<i64>], shift: &QI) -> Result<Ifs> {
    let p = heads.len();
    let slots: Vec<&Vec<i64>> = heads.iter().chain(incs).collect();
    let b = base.b();
    let inv = inv_b_pow(base, p as u32);
    let mut maps = BTreeSet::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let a: Vec<i64> = (0..p).map(|l| slots[l][idx[l]]).collect();
        let u: Vec<i64> = (p..2 * p).map(|l| slots[l][idx[l]]).collect();
        let s = &QI::from(horner(&a, &b)) + &eval_word(&u, base);
        let translation = &(&inv * &(&s - shift)) + shift;
        maps.insert(SimilarityMap {
            p: p as u32,
            translation,
        });
        // odometer over the slot choices
        let mut k = slots.len();
        loop {
            if k == 0 {
                return Ifs::new(base, maps.into_iter().collect());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < slots[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `γ = π(γ_j)` with `γ_j = min(D ∩ (D + α_j))`, for `D = {0, m}` and an
/// `α` whose expansion over `{0, ±m}` is unique.
pub fn minimal_element(cfg: &Config, alpha: &DigitSeq) -> Result<QI> {
    let violations = crate::dimension::validate(cfg.n(), cfg.digits(), Regime::TwoDigit);
    if !violations.is_empty() {
        return Err(Error::Hypothesis(violations));
    }
    check_translation(cfg.digits(), alpha)?;
    require_unique(cfg, alpha)?;
    let gamma = alpha.map(|&a| min_admissible(cfg.digits(), a));
    Ok(eval(&gamma, cfg.base()))
}

fn min_admissible(digits: &DigitSet, a: i64) -> i64 {
    *admissible_digits(digits, a)
        .expect("checked translation")
        .iter()
        .next()
        .expect("nonempty")
}

fn require_unique(cfg: &Config, alpha: &DigitSeq) -> Result<()> {
    let diffs = cfg.digits().differences();
    match expansion_multiplicity(&eval(alpha, cfg.base()), cfg.base(), &diffs) {
        Multiplicity::Unique(_) => Ok(()),
        _ => Err(Error::NonUniqueExpansion {
            alphabet: diffs.to_string(),
        }),
    }
}

/// `(D ∩ (D + α_j)) - β_j`.
pub fn intersection_cylinder_sets(cfg: &Config, alpha: &DigitSeq, beta: &DigitSeq) -> Result<SetSeq> {
    check_translation(cfg.digits(), alpha)?;
    let (q, p) = alpha.joint_layout(beta);
    let terms = (0..q + p)
        .map(|j| {
            let set = admissible_digits(cfg.digits(), *alpha.get(j))?;
            let bj = *beta.get(j);
            if !set.contains(&bj) {
                return Err(Error::InadmissibleShift {
                    position: j + 1,
                    digit: bj,
                });
            }
            Ok(set.iter().map(|d| d - bj).collect::<IntSet>())
        })
        .collect::<Result<Vec<_>>>()?;
    let (prefix, cycle) = terms.split_at(q);
    SetSeq::new(prefix.to_vec(), cycle.to_vec())
}

/// Outcome for `D = {0, m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDigitClassification {
    pub m: i64,
    /// `(m - |α_j|)`.
    pub sep_seq: DigitSeq,
    pub gamma: QI,
    /// Digit sets of `C(α) - γ`.
    pub shifted_digits: SetSeq,
    pub decomposition: Option<SepDecomposition<i64>>,
    pub ifs: Option<Ifs>,
}

/// SEP test of `(m - |α_j|)`; on success emits the generating IFS.
pub fn classify_two_digit(cfg: &Config, alpha: &DigitSeq) -> Result<TwoDigitClassification> {
    let gamma = minimal_element(cfg, alpha)?;
    let m = cfg.digits().max();
    let sep_seq = alpha.map(|&a| m - a.abs());
    let gamma_digits = alpha.map(|&a| min_admissible(cfg.digits(), a));
    let shifted_digits = intersection_cylinder_sets(cfg, alpha, &gamma_digits)?;
    let decomposition = sep_decide_int(&sep_seq);
    let ifs = match &decomposition {
        Some(dec) => {
            let upto = |cap: &i64| -> Vec<i64> { [0, m].into_iter().filter(|v| v <= cap).collect() };
            let heads: Vec<Vec<i64>> = dec.head.iter().map(upto).collect();
            let incs: Vec<Vec<i64>> = dec.increments.iter().map(upto).collect();
            Some(emit_maps(cfg.base(), &heads, &incs, &gamma)?)
        }
        None => None,
    };
    Ok(TwoDigitClassification {
        m,
        sep_seq,
        gamma,
        shifted_digits,
        decomposition,
        ifs,
    })
}

/// How the shift `β` is chosen in [`classify_general`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaChoice {
    /// `β_j = min(D ∩ (D + α_j))`.
    Minimal,
    Given(DigitSeq),
    /// Every `β` laid out like `α` (same prefix and cycle lengths), in
    /// lexicographic order, stopping at the first SEP witness.
    Exhaustive,
}

/// Shifts tried at most in exhaustive mode.
pub const MAX_BETA_CANDIDATES: usize = 1 << 16;

/// Outcome for a sparse `D - D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralClassification {
    pub beta: DigitSeq,
    pub shift: QI,
    pub set_seq: SetSeq,
    pub decomposition: Option<SepDecomposition<IntSet>>,
    pub ifs: Option<Ifs>,
}

fn classify_with_beta(cfg: &Config, alpha: &DigitSeq, beta: DigitSeq) -> Result<GeneralClassification> {
    let set_seq = intersection_cylinder_sets(cfg, alpha, &beta)?;
    let shift = eval(&beta, cfg.base());
    let decomposition = sep_decide_sets(&set_seq);
    let ifs = match &decomposition {
        Some(dec) => {
            let as_vec = |s: &IntSet| s.iter().copied().collect::<Vec<i64>>();
            let heads: Vec<Vec<i64>> = dec.head.iter().map(as_vec).collect();
            let incs: Vec<Vec<i64>> = dec.increments.iter().map(as_vec).collect();
            Some(emit_maps(cfg.base(), &heads, &incs, &shift)?)
        }
        None => None,
    };
    Ok(GeneralClassification {
        beta,
        shift,
        set_seq,
        decomposition,
        ifs,
    })
}

/// SEP test of `((D ∩ (D + α_j)) - β_j)` for sparse `D - D`.
pub fn classify_general(cfg: &Config, alpha: &DigitSeq, beta: &BetaChoice) -> Result<GeneralClassification> {
    let violations = crate::dimension::validate(cfg.n(), cfg.digits(), Regime::Sparse);
    if !violations.is_empty() {
        return Err(Error::Hypothesis(violations));
    }
    check_translation(cfg.digits(), alpha)?;
    let minimal = || alpha.map(|&a| min_admissible(cfg.digits(), a));
    match beta {
        BetaChoice::Minimal => classify_with_beta(cfg, alpha, minimal()),
        BetaChoice::Given(b) => classify_with_beta(cfg, alpha, b.clone()),
        BetaChoice::Exhaustive => {
            let q = alpha.prefix().len();
            let p = alpha.period();
            let choices: Vec<Vec<i64>> = (0..q + p)
                .map(|j| {
                    admissible_digits(cfg.digits(), *alpha.get(j))
                        .map(|s| s.into_iter().collect())
                })
                .collect::<Result<_>>()?;
            let total = choices
                .iter()
                .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
                .filter(|&t| t <= MAX_BETA_CANDIDATES);
            if total.is_none() {
                return Err(Error::Consistency(format!(
                    "more than {MAX_BETA_CANDIDATES} shifts to try"
                )));
            }
            let mut idx = vec![0usize; choices.len()];
            let mut first = None;
            loop {
                let terms: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
                let beta = DigitSeq::new(terms[..q].to_vec(), terms[q..].to_vec())?;
                let result = classify_with_beta(cfg, alpha, beta)?;
                if result.decomposition.is_some() {
                    return Ok(result);
                }
                first.get_or_insert(result);
                let mut k = idx.len();
                loop {
                    if k == 0 {
                        return Ok(first.expect("at least one shift"));
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
    }
}

/// A SEP witness together with the data its closed-form dimension needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SepWitness {
    TwoDigit { m: i64, decomposition: SepDecomposition<i64> },
    General(SepDecomposition<IntSet>),
}

/// Closed-form dimension of the attractor, checked against
/// `log(#maps) / (p log|b|)`, the similarity dimension of the emitted IFS.
pub fn ifs_dimension(ifs: &Ifs, witness: &SepWitness) -> Result<DimensionReport> {
    let n = ifs.base().n();
    let (product, period, m_cycle) = match witness {
        SepWitness::TwoDigit { m, decomposition } => {
            let mut exp = 0u32;
            let mut m_cycle = Vec::new();
            for (a, u) in decomposition.head.iter().zip(&decomposition.increments) {
                if (a + u) % m != 0 {
                    return Err(Error::Consistency(format!("a + u = {} is not a multiple of m", a + u)));
                }
                let k = ((a + u) / m) as u32;
                exp += k;
                m_cycle.push(1usize << k);
            }
            (BigUint::from(2u32).pow(exp), decomposition.period, m_cycle)
        }
        SepWitness::General(dec) => {
            let mut product = BigUint::from(1u32);
            let mut m_cycle = Vec::new();
            for (slot, (a, u)) in dec.head.iter().zip(&dec.increments).enumerate() {
                let sum = sumset(a, u).len();
                if sum != a.len() * u.len() {
                    return Err(Error::NonUniqueDecomposition { slot: slot + 1 });
                }
                product *= sum;
                m_cycle.push(sum);
            }
            (product, dec.period, m_cycle)
        }
    };
    let closed = Dimension::from_log_product(n, &product, period);
    let similarity =
        Dimension::from_log_product(n, &BigUint::from(ifs.len()), ifs.p() as usize);
    if closed != similarity || period != ifs.p() as usize {
        return Err(Error::Consistency(format!(
            "closed form {closed} differs from similarity dimension {similarity}"
        )));
    }
    Ok(DimensionReport::uniform(closed, m_cycle))
}

/// Exact strong separation test. The images of the attractor `A` under two
/// maps with translations `u`, `u'` meet exactly when `b^p (u' - u)` lies in
/// `A - A = π(prod_j (D_j - D_j))`, where `attractor_digits` lists the
/// digit sets `D_j` of a translate of `A`.
pub fn ssc_check(ifs: &Ifs, attractor_digits: &SetSeq) -> bool {
    if ifs.has_duplicates() {
        return false;
    }
    let base = ifs.base();
    let diffs = attractor_digits.map(|s| sumset(s, &s.iter().map(|d| -d).collect()));
    let bp = QI::from(base.b().pow(ifs.p()));
    let mut gaps = BTreeSet::new();
    for (i, f) in ifs.maps.iter().enumerate() {
        for g in &ifs.maps[i + 1..] {
            gaps.insert(&bp * &(&g.translation - &f.translation));
        }
    }
    gaps.iter().all(|gap| !in_attractor(gap, base, &diffs))
}

/// Every digit word `w` of length `depth` with `w_j ∈ digits_j`.
pub fn admissible_words(digits: &SetSeq, depth: usize) -> BTreeSet<Vec<i64>> {
    let mut words = BTreeSet::from([Vec::new()]);
    for j in 0..depth {
        words = words
            .into_iter()
            .flat_map(|w| {
                digits.get(j).iter().map(move |&d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    words
}

/// Leading `depth` digits of the points `f_(i_1) ∘ ... ∘ f_(i_r)(shift) - shift`
/// over all words of maps with `r p >= depth`. The IFS attractor is assumed
/// to be `shift + π(prod_j digits_j)` with unique expansions, so these are the
/// labels of the depth-`depth` cylinders of the IFS.
pub fn attractor_words(ifs: &Ifs, shift: &QI, digits: &SetSeq, depth: usize) -> Result<BTreeSet<Vec<i64>>> {
    let base = ifs.base();
    let p = ifs.p() as usize;
    let rounds = depth.div_ceil(p).max(1);
    let mut points = vec![shift.clone()];
    for _ in 0..rounds {
        points = points
            .iter()
            .flat_map(|x| ifs.maps.iter().map(move |f| f.apply(base, x)))
            .collect();
    }
    points
        .into_iter()
        .map(|z| {
            let rel = &z - shift;
            let seq = find_expansion_in(&rel, base, digits).ok_or_else(|| {
                Error::Consistency(format!("{rel} has no expansion over the attractor digits"))
            })?;
            Ok(seq.take(depth))
        })
        .collect()
}

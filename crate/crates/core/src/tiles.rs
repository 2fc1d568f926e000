//! Depth-`k` tiles and the brute-force checks built on them.
//!
//! The `k`-tile with digit word `w` is `π(w) + b^(-k) A` for the ambient
//! attractor `A`. Two tiles of the same depth meet exactly when
//! `b^k (π(w) - π(w'))`, a Gaussian integer, is a neighbour of `A`.

use std::collections::BTreeSet;

use crate::dimension::Config;
use crate::error::{Error, Result};
use crate::intersection::{admissible_digits, check_translation};
use crate::neighbour::NeighbourSet;
use crate::radix::{encode_integer, eval, horner, member, Base};
use crate::sequence::DigitSeq;
use crate::{GaussianInt, QI};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KTile {
    base: Base,
    digits: Vec<i64>,
}

impl KTile {
    pub fn new(base: Base, digits: Vec<i64>) -> Self {
        KTile { base, digits }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    /// `b^k π(w)`, the tile's position scaled to an integer.
    pub fn scaled_offset(&self) -> GaussianInt {
        horner(&self.digits, &self.base.b())
    }
}

pub fn tiles_intersect(t1: &KTile, t2: &KTile, ns: &NeighbourSet) -> Result<bool> {
    if t1.base != t2.base || t1.depth() != t2.depth() || t1.base != ns.base() {
        return Err(Error::TileMismatch);
    }
    Ok(ns.is_neighbour(&(&t1.scaled_offset() - &t2.scaled_offset())))
}

/// All tiles `T_(d_1 ... d_k)` with `d_j ∈ D ∩ (D + α_j)`. Depth 0 gives
/// the single empty tile, the whole attractor.
pub fn admissible_tiles(cfg: &Config, alpha: &DigitSeq, k: usize) -> Result<Vec<KTile>> {
    check_translation(cfg.digits(), alpha)?;
    let mut words: Vec<Vec<i64>> = vec![Vec::new()];
    for j in 0..k {
        let choices = admissible_digits(cfg.digits(), *alpha.get(j))?;
        words = words
            .into_iter()
            .flat_map(|w| {
                choices.iter().map(move |&d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    Ok(words.into_iter().map(|w| KTile::new(cfg.base(), w)).collect())
}

/// A point `z` of `C(α)` inside the tile, returned with `z - α`.
///
/// The digits after the tile are `d''_j` from the lexicographically least
/// pair `(d'', d''') ∈ D × D` with `α_j = d'' - d'''`, so `z - α` has digits
/// `d_j - α_j ∈ D` in the tile part and `d'''_j ∈ D` after it. Both
/// memberships are re-checked with the exact membership test.
pub fn witness_point(cfg: &Config, alpha: &DigitSeq, tile: &KTile) -> Result<(QI, QI)> {
    check_translation(cfg.digits(), alpha)?;
    for (j, &d) in tile.digits().iter().enumerate() {
        if !admissible_digits(cfg.digits(), *alpha.get(j))?.contains(&d) {
            return Err(Error::InadmissibleShift {
                position: j + 1,
                digit: d,
            });
        }
    }
    let tail = alpha.map(|&a| {
        *admissible_digits(cfg.digits(), a)
            .expect("checked translation")
            .iter()
            .next()
            .expect("nonempty")
    });
    let seq = tail.with_head(tile.digits());
    let z = eval(&seq, cfg.base());
    let shifted = &z - &eval(alpha, cfg.base());
    if member(&z, cfg.base(), cfg.digits()).is_none()
        || member(&shifted, cfg.base(), cfg.digits()).is_none()
    {
        return Err(Error::Consistency(format!("witness {z} failed membership")));
    }
    Ok((z, shifted))
}

/// No two distinct tiles in the list intersect.
pub fn pairwise_disjoint(tiles: &[KTile], ns: &NeighbourSet) -> Result<bool> {
    for (i, t) in tiles.iter().enumerate() {
        for u in &tiles[i + 1..] {
            if t != u && tiles_intersect(t, u, ns)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lower and upper brackets for the number of depth-`k` tiles of `T_n`
/// needed to cover `C(α)`: the admissible tiles with a verified witness
/// point, and the tiles of `T_n` meeting some admissible tile. `ns` must be
/// the neighbour set of `T_n`.
pub fn cylinder_cover_bound(
    cfg: &Config,
    alpha: &DigitSeq,
    k: usize,
    ns: &NeighbourSet,
) -> Result<(usize, usize)> {
    let tiles = admissible_tiles(cfg, alpha, k)?;
    let mut lower = 0;
    for t in &tiles {
        witness_point(cfg, alpha, t)?;
        lower += 1;
    }
    // k-tiles of T_n correspond to Gaussian integers with at most k digits
    let mut meeting = BTreeSet::new();
    for t in &tiles {
        let v = t.scaled_offset();
        for s in ns.members() {
            let w = &v + s;
            let fits = if k == 0 {
                w.is_zero()
            } else {
                encode_integer(&w, cfg.base()).len() <= k
            };
            if fits {
                meeting.insert(w);
            }
        }
    }
    Ok((lower, meeting.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::DigitSet;
    use crate::dimension::Regime;
    use crate::neighbour::{tile_neighbours, TileKind};

    fn cfg(d: &[i64]) -> Config {
        Config::detect(3, DigitSet::restricted(3, d.iter().copied()).unwrap()).unwrap()
    }

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn intersection_by_neighbours() {
        let base = Base::new(3).unwrap();
        let ns = tile_neighbours(base, &TileKind::Fundamental);
        let t0 = KTile::new(base, vec![0]);
        assert!(tiles_intersect(&t0, &t0, &ns).unwrap());
        assert!(!tiles_intersect(&t0, &KTile::new(base, vec![4]), &ns).unwrap());
        assert!(tiles_intersect(&t0, &KTile::new(base, vec![1]), &ns).unwrap());
        assert_eq!(
            tiles_intersect(&t0, &KTile::new(base, vec![0, 0]), &ns),
            Err(Error::TileMismatch)
        );
    }

    #[test]
    fn admissible_enumeration() {
        let c = cfg(&[0, 4]);
        let alpha = seq("0.[](-4,0,4)*");
        let tiles = admissible_tiles(&c, &alpha, 3).unwrap();
        let words: Vec<&[i64]> = tiles.iter().map(|t| t.digits()).collect();
        assert_eq!(words, vec![&[0, 0, 4][..], &[0, 4, 4][..]]);
        assert_eq!(admissible_tiles(&c, &DigitSeq::zeros(), 2).unwrap().len(), 4);
        let empty = admissible_tiles(&c, &alpha, 0).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].depth(), 0);
    }

    #[test]
    fn witnesses() {
        let c = cfg(&[0, 4]);
        let alpha = seq("0.[](-4,0,4)*");
        for k in 0..5 {
            for t in admissible_tiles(&c, &alpha, k).unwrap() {
                let (z, w) = witness_point(&c, &alpha, &t).unwrap();
                assert_eq!(&z - &w, eval(&alpha, c.base()));
            }
        }
        let t = KTile::new(c.base(), vec![4, 0]);
        let (z, w) = witness_point(&c, &DigitSeq::zeros(), &t).unwrap();
        assert_eq!(z, w);
        assert_eq!(z, crate::radix::eval_word(&[4, 0], c.base()));
    }

    #[test]
    fn disjointness() {
        let base = Base::new(3).unwrap();
        let ns = tile_neighbours(base, &TileKind::Fundamental);
        let c = Config::new(3, DigitSet::restricted(3, [0, 2, 4]).unwrap(), Regime::Bounded).unwrap();
        let tiles = admissible_tiles(&c, &DigitSeq::zeros(), 2).unwrap();
        assert!(pairwise_disjoint(&tiles, &ns).unwrap());
        let full = [KTile::new(base, vec![0]), KTile::new(base, vec![1])];
        assert!(!pairwise_disjoint(&full, &ns).unwrap());
        assert!(pairwise_disjoint(&full[..1], &ns).unwrap());
    }

    #[test]
    fn cover_bounds() {
        let c = cfg(&[0, 4]);
        let ns = tile_neighbours(c.base(), &TileKind::Fundamental);
        let (lo, hi) = cylinder_cover_bound(&c, &seq("0.[](-4,0,4)*"), 3, &ns).unwrap();
        assert_eq!(lo, 2);
        assert!(hi >= lo && hi <= 18, "{hi}");
        let (lo, hi) = cylinder_cover_bound(&c, &DigitSeq::zeros(), 1, &ns).unwrap();
        assert_eq!(lo, 2);
        assert!(hi <= 18);
        let lam0 = crate::intersection::build_translation(&c, &[], &num_rational::BigRational::from_integer(0.into())).unwrap();
        assert_eq!(cylinder_cover_bound(&c, &lam0, 6, &ns).unwrap().0, 1);
    }
}

//! Level reduction: dimensions at `Lambda = Lambda^1 + .. + Lambda^l` written
//! as shuffle-indexed sums of products of dimensions at each `Lambda^i`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::{IndexTuple, RootElement, Weight};
use crate::dims::DimContext;
use crate::error::{Error, Result};
use crate::perms::matched_shuffles;
use crate::qpoly::LaurentPoly;

/// An ordered decomposition of a dominant weight into dominant parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelSplit {
    parts: Vec<Weight>,
}

impl LevelSplit {
    pub fn new(parts: Vec<Weight>, target: &Weight) -> Result<Self> {
        let mut sum = Weight::zero(target.rank());
        for part in &parts {
            if part.rank() != target.rank() {
                return Err(Error::WrongLength { expected: target.rank(), got: part.rank() });
            }
            if !part.is_dominant() {
                return Err(Error::NotDominant);
            }
            sum = &sum + part;
        }
        if &sum != target {
            return Err(Error::BadSplit);
        }
        Ok(LevelSplit { parts })
    }

    /// The split into fundamental weights, in node order.
    pub fn fundamental(target: &Weight) -> Result<Self> {
        let rank = target.rank();
        let parts =
            crate::idempotents::fundamentals_of(target).into_iter().map(|t| Weight::fundamental(t, rank)).collect();
        Self::new(parts, target)
    }

    /// Every ordered split of `target` into `l` dominant parts.
    pub fn all(target: &Weight, l: usize) -> Vec<LevelSplit> {
        let rank = target.rank();
        // per node, all compositions of k_i into l parts
        let per_node: Vec<Vec<Vec<i64>>> = target.coeffs().iter().map(|&k| compositions(k.max(0), l)).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; rank];
        loop {
            let parts = (0..l).map(|i| Weight::new((0..rank).map(|j| per_node[j][choice[j]][i]).collect())).collect();
            out.push(LevelSplit { parts });
            let mut j = rank;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                choice[j] += 1;
                if choice[j] < per_node[j].len() {
                    break;
                }
                choice[j] = 0;
            }
        }
    }

    pub fn parts(&self) -> &[Weight] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Compositions of `total` into `parts` non-negative integers.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Evaluates reductions for one split, caching the per-part dimensions that
/// recur across shuffles.
pub struct LevelReducer {
    contexts: Vec<DimContext>,
    pair_memo: HashMap<(usize, IndexTuple, IndexTuple), BigInt>,
    graded_memo: HashMap<(usize, IndexTuple, IndexTuple), LaurentPoly>,
    block_memo: HashMap<(usize, RootElement), BigInt>,
}

impl LevelReducer {
    pub fn new(ctx: &DimContext, split: &LevelSplit) -> Result<Self> {
        let total = split.parts().iter().fold(Weight::zero(ctx.weight().rank()), |acc, p| &acc + p);
        if &total != ctx.weight() {
            return Err(Error::BadSplit);
        }
        let contexts = split.parts().iter().map(|w| ctx.with_weight(w.clone())).collect::<Result<_>>()?;
        Ok(LevelReducer {
            contexts,
            pair_memo: HashMap::new(),
            graded_memo: HashMap::new(),
            block_memo: HashMap::new(),
        })
    }

    fn part_dim(&mut self, i: usize, nu: IndexTuple, mu: IndexTuple) -> Result<BigInt> {
        let key = (i, nu, mu);
        if let Some(hit) = self.pair_memo.get(&key) {
            return Ok(hit.clone());
        }
        let value = self.contexts[i].dim(&key.1, &key.2)?;
        self.pair_memo.insert(key, value.clone());
        Ok(value)
    }

    fn part_graded(&mut self, i: usize, nu: IndexTuple, mu: IndexTuple) -> Result<LaurentPoly> {
        let key = (i, nu, mu);
        if let Some(hit) = self.graded_memo.get(&key) {
            return Ok(hit.clone());
        }
        let value = self.contexts[i].graded_dim(&key.1, &key.2)?;
        self.graded_memo.insert(key, value.clone());
        Ok(value)
    }

    fn part_block(&mut self, i: usize, beta: RootElement) -> Result<BigInt> {
        let key = (i, beta);
        if let Some(hit) = self.block_memo.get(&key) {
            return Ok(hit.clone());
        }
        let value = self.contexts[i].block_dim(&key.1)?;
        self.block_memo.insert(key, value.clone());
        Ok(value)
    }

    /// `sum_{(s, t) in D^l(nu, mu)} prod_i dim^{Lambda^i}(nu_{s^i}, mu_{t^i})`.
    pub fn pair_dim(&mut self, nu: &IndexTuple, mu: &IndexTuple) -> Result<BigInt> {
        if nu.len() != mu.len() {
            return Err(Error::LengthMismatch(nu.len(), mu.len()));
        }
        let l = self.contexts.len();
        let mut total = BigInt::zero();
        for (s, t) in matched_shuffles(nu, mu, l) {
            let mut prod = BigInt::one();
            for (i, (a, b)) in s.restrict(nu).into_iter().zip(t.restrict(mu)).enumerate() {
                prod *= self.part_dim(i, a, b)?;
                if prod.is_zero() {
                    break;
                }
            }
            total += prod;
        }
        Ok(total)
    }

    /// The same shuffle sum with graded dimensions. This is not an identity;
    /// it exists to exhibit the failure.
    pub fn pair_graded(&mut self, nu: &IndexTuple, mu: &IndexTuple) -> Result<LaurentPoly> {
        if nu.len() != mu.len() {
            return Err(Error::LengthMismatch(nu.len(), mu.len()));
        }
        let l = self.contexts.len();
        let mut total = LaurentPoly::zero();
        for (s, t) in matched_shuffles(nu, mu, l) {
            let mut prod = LaurentPoly::one();
            for (i, (a, b)) in s.restrict(nu).into_iter().zip(t.restrict(mu)).enumerate() {
                prod = &prod * &self.part_graded(i, a, b)?;
            }
            total += &prod;
        }
        Ok(total)
    }

    /// `sum_{beta = beta_1 + .. + beta_l} (|beta|! / prod |beta_i|!)^2 prod_i dim R^{Lambda^i}(beta_i)`.
    pub fn block_dim(&mut self, beta: &RootElement) -> Result<BigInt> {
        let l = self.contexts.len();
        let rank = beta.rank();
        let per_node: Vec<Vec<Vec<i64>>> = beta.coeffs().iter().map(|&k| compositions(k, l)).collect();
        if l == 0 {
            return Ok(if beta.height() == 0 { BigInt::one() } else { BigInt::zero() });
        }
        let mut total = BigInt::zero();
        let mut choice = vec![0usize; rank];
        loop {
            let pieces: Vec<RootElement> = (0..l)
                .map(|i| RootElement::new((0..rank).map(|j| per_node[j][choice[j]][i]).collect()))
                .collect::<Result<_>>()?;
            let mut prod = multinomial(&pieces.iter().map(RootElement::height).collect::<Vec<_>>());
            prod = &prod * &prod;
            for (i, piece) in pieces.into_iter().enumerate() {
                if prod.is_zero() {
                    break;
                }
                prod *= self.part_block(i, piece)?;
            }
            total += prod;
            let mut j = rank;
            loop {
                if j == 0 {
                    return Ok(total);
                }
                j -= 1;
                choice[j] += 1;
                if choice[j] < per_node[j].len() {
                    break;
                }
                choice[j] = 0;
            }
        }
    }

    /// Sum of [`block_dim`](Self::block_dim) over `Q_n^+`.
    pub fn algebra_dim(&mut self, n: usize) -> Result<BigInt> {
        let rank = self.contexts.first().map_or(0, |c| c.cartan().rank());
        let mut total = BigInt::zero();
        for beta in RootElement::of_height(n, rank) {
            total += self.block_dim(&beta)?;
        }
        Ok(total)
    }
}

fn multinomial(sizes: &[usize]) -> BigInt {
    let mut out = BigInt::one();
    let mut running = 0usize;
    for &k in sizes {
        for j in 1..=k {
            running += 1;
            out = out * running / j;
        }
    }
    out
}

/// Two-part reduction of `dim e(nu) R^Lambda e(mu)`.
pub fn reduce_pair_dim(ctx: &DimContext, nu: &IndexTuple, mu: &IndexTuple, split: &LevelSplit) -> Result<BigInt> {
    if split.len() != 2 {
        return Err(Error::PreconditionFail(format!("expected a 2-part split, got {} parts", split.len())));
    }
    reduce_pair_dim_multi(ctx, nu, mu, split)
}

/// `l`-part reduction of `dim e(nu) R^Lambda e(mu)` over `D^l(nu, mu)`.
pub fn reduce_pair_dim_multi(ctx: &DimContext, nu: &IndexTuple, mu: &IndexTuple, split: &LevelSplit) -> Result<BigInt> {
    LevelReducer::new(ctx, split)?.pair_dim(nu, mu)
}

/// Multinomial-squared reduction of `dim R^Lambda(beta)`.
pub fn reduce_block_dim(ctx: &DimContext, beta: &RootElement, split: &LevelSplit) -> Result<BigInt> {
    LevelReducer::new(ctx, split)?.block_dim(beta)
}

/// Multinomial-squared reduction of `dim R^Lambda(n)`.
pub fn reduce_algebra_dim(ctx: &DimContext, n: usize, split: &LevelSplit) -> Result<BigInt> {
    LevelReducer::new(ctx, split)?.algebra_dim(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_cartan, validate_cartan};
    use crate::qpoly::LaurentPoly;

    fn tup(v: &[usize]) -> IndexTuple {
        IndexTuple::new(v.to_vec())
    }

    fn nilhecke(l: i64) -> DimContext {
        DimContext::new(validate_cartan(vec![vec![2]]).unwrap(), Weight::new(vec![l])).unwrap()
    }

    fn halves() -> LevelSplit {
        LevelSplit::new(vec![Weight::new(vec![1]), Weight::new(vec![1])], &Weight::new(vec![2])).unwrap()
    }

    #[test]
    fn nilhecke_pair_examples() {
        let c = nilhecke(2);
        assert_eq!(reduce_pair_dim(&c, &tup(&[0]), &tup(&[0]), &halves()).unwrap(), BigInt::from(2));
        assert_eq!(reduce_pair_dim(&c, &tup(&[0, 0]), &tup(&[0, 0]), &halves()).unwrap(), BigInt::from(4));
        assert_eq!(reduce_pair_dim(&c, &tup(&[]), &tup(&[]), &halves()).unwrap(), BigInt::one());
    }

    #[test]
    fn nilhecke_block_example() {
        let c = nilhecke(2);
        let beta = RootElement::new(vec![2]).unwrap();
        assert_eq!(reduce_block_dim(&c, &beta, &halves()).unwrap(), BigInt::from(4));
        let single = LevelSplit::new(vec![Weight::new(vec![2])], &Weight::new(vec![2])).unwrap();
        assert_eq!(reduce_block_dim(&c, &beta, &single).unwrap(), c.block_dim(&beta).unwrap());
    }

    #[test]
    fn graded_reduction_fails() {
        let c = nilhecke(2);
        let mut r = LevelReducer::new(&c, &halves()).unwrap();
        let reduced = r.pair_graded(&tup(&[0]), &tup(&[0])).unwrap();
        assert_eq!(reduced, LaurentPoly::from(2));
        let direct = c.graded_dim(&tup(&[0]), &tup(&[0])).unwrap();
        assert_eq!(direct, LaurentPoly::from_terms([(0, 1), (2, 1)]));
        assert_ne!(reduced, direct);
    }

    #[test]
    fn affine_three_part_split_totals_eighteen() {
        let c = DimContext::new(builtin_cartan("A1~").unwrap(), Weight::new(vec![1, 2])).unwrap();
        let split = LevelSplit::new(
            vec![Weight::new(vec![1, 0]), Weight::new(vec![0, 1]), Weight::new(vec![0, 1])],
            c.weight(),
        )
        .unwrap();
        assert_eq!(reduce_algebra_dim(&c, 2, &split).unwrap(), BigInt::from(18));
    }

    #[test]
    fn split_validation() {
        let target = Weight::new(vec![1, 1]);
        assert_eq!(LevelSplit::new(vec![Weight::new(vec![1, 0])], &target), Err(Error::BadSplit));
        assert_eq!(
            LevelSplit::new(vec![Weight::new(vec![2, 0]), Weight::new(vec![-1, 1])], &target),
            Err(Error::NotDominant)
        );
        assert_eq!(LevelSplit::all(&Weight::new(vec![2, 1]), 2).len(), 6);
        assert_eq!(LevelSplit::fundamental(&Weight::new(vec![2, 1])).unwrap().len(), 3);
        let c = nilhecke(2);
        let two = LevelSplit::new(vec![Weight::new(vec![1]); 2], &Weight::new(vec![2])).unwrap();
        assert!(reduce_pair_dim(&c, &tup(&[0]), &tup(&[0]), &two).is_ok());
        let one = LevelSplit::new(vec![Weight::new(vec![2])], &Weight::new(vec![2])).unwrap();
        assert!(reduce_pair_dim(&c, &tup(&[0]), &tup(&[0]), &one).is_err());
    }

    #[test]
    fn identities_on_small_types() {
        for name in ["A2", "A1~", "C2"] {
            let cartan = builtin_cartan(name).unwrap();
            for weight in Weight::dominant_up_to_level(cartan.rank(), 3) {
                let ctx = DimContext::new(cartan.clone(), weight.clone()).unwrap();
                for l in 2..=3 {
                    for split in LevelSplit::all(&weight, l) {
                        let mut r = LevelReducer::new(&ctx, &split).unwrap();
                        for n in 0..=3 {
                            for beta in RootElement::of_height(n, cartan.rank()) {
                                assert_eq!(r.block_dim(&beta).unwrap(), ctx.block_dim(&beta).unwrap());
                                let tuples = beta.tuples();
                                for nu in &tuples {
                                    for mu in &tuples {
                                        assert_eq!(r.pair_dim(nu, mu).unwrap(), ctx.dim(nu, mu).unwrap());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[2, 2, 1]), BigInt::from(30));
        assert_eq!(multinomial(&[]), BigInt::one());
    }
}

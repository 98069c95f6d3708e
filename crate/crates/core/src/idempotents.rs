//! Deciding whether the idempotent `e(nu)` vanishes in `R^Lambda(beta)`.
//!
//! Four independent tests are available; where more than one applies they
//! must agree. Each verdict carries the data it was decided on.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::{IndexTuple, Weight};
use crate::dims::DimContext;
use crate::error::{Error, Result};
use crate::perms::{min_coset_reps, BlockStructure, Permutation, ShuffleSplit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Divided,
    Tilde,
    Shuffle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Divided => "divided",
            Method::Tilde => "tilde",
            Method::Shuffle => "shuffle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The sum whose vanishing decides the verdict.
    Sum(BigInt),
    /// `(N_i, b_i)` per block of a tilde-form tuple.
    Blocks(Vec<(i64, usize)>),
    /// The fundamental weights used and, if nonzero, a split of the positions
    /// whose parts are nonzero at level one.
    Shuffle { fundamentals: Vec<usize>, split: Option<ShuffleSplit> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroVerdict {
    pub nonzero: bool,
    pub method: Method,
    pub witness: Witness,
}

/// `e(nu) != 0` iff `sum_{w in S(nu, nu)} prod_t N(w, nu, t) != 0`.
pub fn nonzero_direct(ctx: &DimContext, nu: &IndexTuple) -> Result<NonzeroVerdict> {
    ctx.cartan().check_tuple(nu)?;
    let sum = ctx.dim(nu, nu)?;
    Ok(NonzeroVerdict { nonzero: !sum.is_zero(), method: Method::Direct, witness: Witness::Sum(sum) })
}

/// `e(nu) != 0` iff `sum_{d in D(nu)} prod_k Ntilde(d, nu, k) != 0`.
pub fn nonzero_divided(ctx: &DimContext, nu: &IndexTuple) -> Result<NonzeroVerdict> {
    ctx.cartan().check_tuple(nu)?;
    let blocks = BlockStructure::of_tuple(nu);
    let mut sum = BigInt::zero();
    for d in min_coset_reps(nu) {
        let mut prod = BigInt::one();
        for k in 0..nu.len() {
            let c = blocks.cumulative()[blocks.block_of(k)];
            prod *= ctx.n_value(&d, nu, k) + (k - c) as i64;
        }
        sum += prod;
    }
    Ok(NonzeroVerdict { nonzero: !sum.is_zero(), method: Method::Divided, witness: Witness::Sum(sum) })
}

/// For `nu` in tilde form (block letters pairwise distinct):
/// `e(nu) != 0` iff `N_i >= b_i` for every block, where `N_i` is `N(1, nu, k)`
/// at the first position `k` of block `i`.
pub fn nonzero_tilde(ctx: &DimContext, nu: &IndexTuple) -> Result<NonzeroVerdict> {
    ctx.cartan().check_tuple(nu)?;
    let blocks = BlockStructure::of_tuple(nu);
    if !blocks.letters_distinct() {
        return Err(Error::NotTildeForm);
    }
    let id = Permutation::identity(nu.len());
    let data: Vec<(i64, usize)> =
        (0..blocks.count()).map(|i| (ctx.n_value(&id, nu, blocks.cumulative()[i]), blocks.sizes()[i])).collect();
    let nonzero = data.iter().all(|&(n, b)| n >= b as i64);
    Ok(NonzeroVerdict { nonzero, method: Method::Tilde, witness: Witness::Blocks(data) })
}

/// The multiset `{t : Lambda_t appears in Lambda}`, each `t` repeated `k_t` times.
pub fn fundamentals_of(weight: &Weight) -> Vec<usize> {
    weight.coeffs().iter().enumerate().flat_map(|(t, &k)| std::iter::repeat_n(t, k.max(0) as usize)).collect()
}

/// With `Lambda = Lambda_{t_1} + .. + Lambda_{t_l}`: `e(nu) != 0` iff `nu` is a
/// shuffle of tuples `nu^1, .., nu^l` with `e(nu^i) != 0` at weight
/// `Lambda_{t_i}`. The search assigns positions left to right and abandons a
/// branch as soon as some part becomes zero, since a tuple whose prefix
/// vanishes vanishes itself.
pub fn nonzero_by_shuffle(ctx: &DimContext, nu: &IndexTuple, fundamentals: &[usize]) -> Result<NonzeroVerdict> {
    ctx.cartan().check_tuple(nu)?;
    for &t in fundamentals {
        ctx.cartan().check_index(t)?;
    }
    let levels: Vec<DimContext> = fundamentals
        .iter()
        .map(|&t| ctx.with_weight(Weight::fundamental(t, ctx.cartan().rank())))
        .collect::<Result<_>>()?;
    let mut search = ShuffleSearch {
        nu: nu.entries(),
        fundamentals,
        levels,
        parts: vec![Vec::new(); fundamentals.len()],
        memo: HashMap::new(),
    };
    let split = if search.run(0)? { Some(ShuffleSplit::new(search.parts.clone())?) } else { None };
    Ok(NonzeroVerdict {
        nonzero: split.is_some(),
        method: Method::Shuffle,
        witness: Witness::Shuffle { fundamentals: fundamentals.to_vec(), split },
    })
}

struct ShuffleSearch<'a> {
    nu: &'a [usize],
    fundamentals: &'a [usize],
    levels: Vec<DimContext>,
    parts: Vec<Vec<usize>>,
    memo: HashMap<(usize, Vec<usize>), bool>,
}

impl ShuffleSearch<'_> {
    fn part_nonzero(&mut self, i: usize) -> Result<bool> {
        let letters: Vec<usize> = self.parts[i].iter().map(|&p| self.nu[p]).collect();
        let key = (self.fundamentals[i], letters);
        if let Some(&hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        let tuple = IndexTuple::new(key.1.clone());
        let value = nonzero_direct(&self.levels[i], &tuple)?.nonzero;
        self.memo.insert(key, value);
        Ok(value)
    }

    fn run(&mut self, k: usize) -> Result<bool> {
        if k == self.nu.len() {
            return Ok(true);
        }
        for i in 0..self.parts.len() {
            // an empty part only accepts the letter of its own fundamental weight
            if self.parts[i].is_empty() && self.fundamentals[i] != self.nu[k] {
                continue;
            }
            // parts with equal weight and equal (empty) content are interchangeable
            if self.parts[i].is_empty()
                && (0..i).any(|j| self.parts[j].is_empty() && self.fundamentals[j] == self.fundamentals[i])
            {
                continue;
            }
            self.parts[i].push(k);
            if self.part_nonzero(i)? && self.run(k + 1)? {
                return Ok(true);
            }
            self.parts[i].pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_cartan, validate_cartan, RootElement};

    fn tup(v: &[usize]) -> IndexTuple {
        IndexTuple::new(v.to_vec())
    }

    fn nilhecke(l: i64) -> DimContext {
        DimContext::new(validate_cartan(vec![vec![2]]).unwrap(), Weight::new(vec![l])).unwrap()
    }

    #[test]
    fn direct_examples() {
        let v = nonzero_direct(&nilhecke(2), &tup(&[0, 0])).unwrap();
        assert!(v.nonzero);
        assert_eq!(v.witness, Witness::Sum(BigInt::from(4)));
        let c = DimContext::new(builtin_cartan("A2").unwrap(), Weight::new(vec![0, 1])).unwrap();
        assert!(!nonzero_direct(&c, &tup(&[0, 1])).unwrap().nonzero);
        let c = DimContext::new(builtin_cartan("A2").unwrap(), Weight::new(vec![1, 1])).unwrap();
        let v = nonzero_direct(&c, &tup(&[0, 1])).unwrap();
        assert_eq!(v.witness, Witness::Sum(BigInt::from(2)));
        assert!(nonzero_divided(&c, &tup(&[0, 1])).unwrap().nonzero);
    }

    #[test]
    fn tilde_examples() {
        assert!(!nonzero_tilde(&nilhecke(1), &tup(&[0, 0])).unwrap().nonzero);
        let v = nonzero_tilde(&nilhecke(2), &tup(&[0, 0])).unwrap();
        assert!(v.nonzero);
        assert_eq!(v.witness, Witness::Blocks(vec![(2, 2)]));
        assert!(nonzero_tilde(&nilhecke(3), &tup(&[0, 0, 0])).unwrap().nonzero);
        let c = DimContext::new(builtin_cartan("A2").unwrap(), Weight::new(vec![1, 1])).unwrap();
        assert_eq!(nonzero_tilde(&c, &tup(&[0, 1, 0])), Err(Error::NotTildeForm));
    }

    #[test]
    fn shuffle_examples() {
        let v = nonzero_by_shuffle(&nilhecke(2), &tup(&[0, 0]), &[0, 0]).unwrap();
        assert!(v.nonzero);
        match v.witness {
            Witness::Shuffle { split: Some(s), .. } => assert_eq!(s.parts(), &[vec![0], vec![1]]),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(!nonzero_by_shuffle(&nilhecke(1), &tup(&[0, 0]), &[0]).unwrap().nonzero);
        assert!(nonzero_by_shuffle(&nilhecke(0), &tup(&[]), &[]).unwrap().nonzero);
        assert!(!nonzero_by_shuffle(&nilhecke(0), &tup(&[0]), &[]).unwrap().nonzero);
        assert_eq!(fundamentals_of(&Weight::new(vec![2, 0, 1])), vec![0, 0, 2]);
    }

    #[test]
    fn all_methods_agree() {
        for (name, max_level) in [("A2", 3), ("A1~", 3), ("C2", 2)] {
            let cartan = builtin_cartan(name).unwrap();
            for weight in Weight::dominant_up_to_level(cartan.rank(), max_level) {
                let ctx = DimContext::new(cartan.clone(), weight.clone()).unwrap();
                let fundamentals = fundamentals_of(&weight);
                for n in 0..=4 {
                    for beta in RootElement::of_height(n, cartan.rank()) {
                        for nu in beta.tuples() {
                            let direct = nonzero_direct(&ctx, &nu).unwrap().nonzero;
                            assert_eq!(nonzero_divided(&ctx, &nu).unwrap().nonzero, direct);
                            let shuffle = nonzero_by_shuffle(&ctx, &nu, &fundamentals).unwrap();
                            assert_eq!(shuffle.nonzero, direct, "{name} {weight:?} {nu}");
                            if let Ok(v) = nonzero_tilde(&ctx, &nu) {
                                assert_eq!(v.nonzero, direct);
                            }
                            if n > 0 && weight.coeff(nu.entries()[0]) == 0 {
                                assert!(!direct);
                            }
                        }
                    }
                }
            }
        }
    }
}

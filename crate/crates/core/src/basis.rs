//! Monomial basis index sets for `e(nu~) R^Lambda(beta) e(mu)`, where `nu~`
//! groups each letter into one contiguous block.
//!
//! A basis element is indexed by a pair `(w, r)` with `w` in `S(mu, nu~)` and
//! `0 <= r_k < N(mu, k)`. Only this index data is produced.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::IndexTuple;
use crate::dims::{nilhecke_graded_dim, DimContext};
use crate::error::{Error, Result};
use crate::perms::{d_mu, BlockStructure, Permutation, TransportSet};
use crate::qpoly::LaurentPoly;

/// A tuple whose equal letters form contiguous blocks, with block letters
/// pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TildeData {
    tuple: IndexTuple,
    blocks: BlockStructure,
}

impl TildeData {
    pub fn new(tuple: IndexTuple) -> Result<Self> {
        let blocks = BlockStructure::of_tuple(&tuple);
        if !blocks.letters_distinct() {
            return Err(Error::NotTildeForm);
        }
        Ok(TildeData { tuple, blocks })
    }

    /// The letters of `mu` in order of first occurrence, each repeated by its
    /// multiplicity.
    pub fn of(mu: &IndexTuple) -> Self {
        let mut letters = Vec::new();
        for x in mu.iter() {
            if !letters.contains(&x) {
                letters.push(x);
            }
        }
        Self::with_order(mu, &letters).expect("first-occurrence order covers every letter")
    }

    /// The tilde form of `mu` with blocks in the given letter order.
    pub fn with_order(mu: &IndexTuple, letters: &[usize]) -> Result<Self> {
        let mut tuple = Vec::with_capacity(mu.len());
        for (i, &x) in letters.iter().enumerate() {
            if letters[..i].contains(&x) {
                return Err(Error::NotTildeForm);
            }
            let count = mu.iter().filter(|&y| y == x).count();
            if count == 0 {
                return Err(Error::IncompatibleContent);
            }
            tuple.extend(std::iter::repeat_n(x, count));
        }
        if tuple.len() != mu.len() {
            return Err(Error::IncompatibleContent);
        }
        Self::new(IndexTuple::new(tuple))
    }

    pub fn tuple(&self) -> &IndexTuple {
        &self.tuple
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn letters(&self) -> &[usize] {
        self.blocks.letters()
    }

    /// `N_i(nu~) = N(1, nu~, c_{i-1} + 1)` for every block `i`.
    pub fn block_n_values(&self, ctx: &DimContext) -> Vec<i64> {
        let id = Permutation::identity(self.tuple.len());
        (0..self.blocks.count()).map(|i| ctx.n_value(&id, &self.tuple, self.blocks.cumulative()[i])).collect()
    }
}

/// `N(mu, k) = N(d_mu, mu, k) + #{j < k : mu_j = mu_k}`, `k` 0-based.
pub fn n_weight(ctx: &DimContext, mu: &IndexTuple, tilde: &TildeData, k: usize) -> Result<i64> {
    let d = d_mu(mu, tilde.tuple())?;
    Ok(n_weight_at(ctx, mu, &d, k))
}

fn n_weight_at(ctx: &DimContext, mu: &IndexTuple, d: &Permutation, k: usize) -> i64 {
    let e = mu.entries();
    ctx.n_value(d, mu, k) + e[..k].iter().filter(|&&x| x == e[k]).count() as i64
}

/// `(N(mu, 1), .., N(mu, n))`.
pub fn n_weights(ctx: &DimContext, mu: &IndexTuple, tilde: &TildeData) -> Result<Vec<i64>> {
    let d = d_mu(mu, tilde.tuple())?;
    Ok((0..mu.len()).map(|k| n_weight_at(ctx, mu, &d, k)).collect())
}

/// Index data `{(w, r) : w in S_b d_mu, 0 <= r_k < N(mu, k)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisIndexSet {
    tilde: TildeData,
    mu: IndexTuple,
    d_mu: Permutation,
    bounds: Vec<i64>,
}

impl BasisIndexSet {
    pub fn tilde(&self) -> &TildeData {
        &self.tilde
    }

    pub fn mu(&self) -> &IndexTuple {
        &self.mu
    }

    pub fn d_mu(&self) -> &Permutation {
        &self.d_mu
    }

    /// `(N(mu, 1), .., N(mu, n))`.
    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    /// True when some bound is not positive; then `e(nu~) R e(mu) = 0`.
    pub fn is_empty(&self) -> bool {
        self.bounds.iter().any(|&b| b <= 0)
    }

    /// `(prod_i b_i!) prod_k N(mu, k)` when nonempty, else 0.
    pub fn cardinality(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::zero();
        }
        self.bounds.iter().fold(BigInt::from(self.tilde.blocks.young_order()), |acc, &b| acc * b)
    }

    /// `S(mu, nu~) = S_b d_mu`, ordered by the Young subgroup factor.
    pub fn permutations(&self) -> impl Iterator<Item = Permutation> + '_ {
        let young: TransportSet = self.tilde.blocks.young_subgroup();
        young.map(move |u| u.compose(&self.d_mu))
    }

    /// All exponent vectors `r`, last coordinate fastest.
    pub fn exponent_vectors(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let n = self.bounds.len();
        let mut current = vec![0i64; n];
        let mut done = self.is_empty();
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = current.clone();
            let mut k = n;
            loop {
                if k == 0 {
                    done = true;
                    break;
                }
                k -= 1;
                current[k] += 1;
                if current[k] < self.bounds[k] {
                    break;
                }
                current[k] = 0;
            }
            Some(out)
        })
    }

    /// Every `(w, r)` pair; empty when [`is_empty`](Self::is_empty).
    pub fn elements(&self) -> impl Iterator<Item = (Permutation, Vec<i64>)> + '_ {
        let perms: Vec<Permutation> = if self.is_empty() { Vec::new() } else { self.permutations().collect() };
        perms.into_iter().flat_map(move |w| self.exponent_vectors().map(move |r| (w.clone(), r)))
    }
}

/// The basis index set of `e(nu~) R^Lambda(beta) e(mu)`.
pub fn basis_index_set(ctx: &DimContext, mu: &IndexTuple, tilde: &TildeData) -> Result<BasisIndexSet> {
    ctx.cartan().check_tuple(mu)?;
    let d = d_mu(mu, tilde.tuple())?;
    let bounds = (0..mu.len()).map(|k| n_weight_at(ctx, mu, &d, k)).collect();
    Ok(BasisIndexSet { tilde: tilde.clone(), mu: mu.clone(), d_mu: d, bounds })
}

/// The case `mu = nu~`: `w` ranges over `S_b` and
/// `0 <= r_k <= N_i(nu~) - (k - c_{i-1})` on block `i`.
pub fn basis_tilde_tilde(ctx: &DimContext, tilde: &TildeData) -> Result<BasisIndexSet> {
    basis_index_set(ctx, tilde.tuple(), tilde)
}

/// `dim_q e(nu~) R^Lambda e(nu~)` as the product over blocks of nilHecke
/// graded dimensions at level `N_i(nu~)`, size `b_i` and symmetrizer
/// `d_{nu^i}`.
pub fn graded_dim_tilde(ctx: &DimContext, tilde: &TildeData) -> LaurentPoly {
    let n_values = tilde.block_n_values(ctx);
    (0..tilde.blocks.count())
        .map(|i| {
            let d = ctx.cartan().d(tilde.letters()[i]);
            nilhecke_graded_dim(n_values[i], tilde.blocks.sizes()[i] as i64, d)
        })
        .product()
}

/// Checks the three-case relation between `N(mu, .)` and `N(mu s_a, .)` for
/// `a` (0-based) with `d_mu(a) > d_mu(a + 1)`:
/// unchanged off `{a, a+1}`, `N(mu, a) = N(mu s_a, a+1) + a_{mu_a, mu_{a+1}}`
/// and `N(mu, a+1) = N(mu s_a, a)`.
pub fn n_weight_transform_check(ctx: &DimContext, mu: &IndexTuple, tilde: &TildeData, a: usize) -> Result<bool> {
    if a + 1 >= mu.len() {
        return Err(Error::PreconditionFail(format!("position {} has no right neighbour", a + 1)));
    }
    let d = d_mu(mu, tilde.tuple())?;
    if d.apply(a) < d.apply(a + 1) {
        return Err(Error::PreconditionFail(format!("d_mu s_{} is longer than d_mu", a + 1)));
    }
    let swapped = mu.swapped(a);
    let before = n_weights(ctx, mu, tilde)?;
    let after = n_weights(ctx, &swapped, tilde)?;
    let e = mu.entries();
    let ok = (0..mu.len()).all(|k| {
        if k == a {
            before[k] == after[a + 1] + ctx.cartan().entry(e[a], e[a + 1])
        } else if k == a + 1 {
            before[k] == after[a]
        } else {
            before[k] == after[k]
        }
    });
    Ok(ok)
}

/// Basis counts for `e(1,2,1) R^Lambda(2 alpha_1 + alpha_2) e(1,2,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis121Counts {
    /// `l1 * l2 * l1`, the elements carrying `psi_1 psi_2 psi_1`.
    pub psi_part: BigInt,
    /// `l1 * (l2 - a21) * (l1 - a12 - 2)`, the pure polynomial elements.
    pub poly_part: BigInt,
    pub total: BigInt,
}

pub fn basis_121_counts(l1: i64, l2: i64, a12: i64, a21: i64) -> Result<Basis121Counts> {
    if a12 == 0 {
        return Err(Error::ZeroA12);
    }
    if a12 > 0 || a21 >= 0 {
        return Err(Error::PreconditionFail("a12 and a21 must be negative".into()));
    }
    if l1 < 0 || l2 < 0 {
        return Err(Error::NotDominant);
    }
    let psi_part = BigInt::from(l1) * l2 * l1;
    let poly_part = BigInt::from(l1) * (l2 - a21) * (l1 - a12 - 2);
    let total = &psi_part + &poly_part;
    Ok(Basis121Counts { psi_part, poly_part, total })
}

/// `prod_i b_i! prod_j (N_i - j)`, the ungraded dimension of `e(nu~) R e(nu~)`.
pub fn dim_tilde(ctx: &DimContext, tilde: &TildeData) -> BigInt {
    let n_values = tilde.block_n_values(ctx);
    let mut out = BigInt::one();
    for (i, &b) in tilde.blocks.sizes().iter().enumerate() {
        out *= crate::dims::nilhecke_dim(n_values[i], b as i64);
    }
    out
}

//! Symmetric group combinatorics on one-line notation: transport sets,
//! inversion data, the Lehmer-style code `theta`, Young subgroup coset
//! representatives, `d_mu` and shuffle splits.
//!
//! Positions are 0-based in the API; [`Permutation::one_line`] gives the
//! 1-based form used for display and serialization.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::IndexTuple;
use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as `w[i] = w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(images.iter().map(|&v| v + 1).collect()));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds from 1-based one-line notation `(w(1), .., w(n))`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::NotAPermutation(one_line.to_vec()));
        }
        Self::from_images(one_line.iter().map(|&x| x - 1).collect())
            .map_err(|_| Error::NotAPermutation(one_line.to_vec()))
    }

    /// The simple transposition swapping positions `a` and `a + 1` (0-based).
    pub fn simple(a: usize, n: usize) -> Self {
        let mut w = Self::identity(n);
        w.0.swap(a, a + 1);
        w
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x + 1).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.size();
        (0..n).map(|t| (0..t).filter(|&j| self.0[j] > self.0[t]).count()).sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// Left place-permutation action: `(w nu)_{w(j)} = nu_j`.
    pub fn act(&self, nu: &IndexTuple) -> IndexTuple {
        let mut out = vec![0; nu.len()];
        for (j, x) in nu.iter().enumerate() {
            out[self.0[j]] = x;
        }
        IndexTuple::new(out)
    }

    /// Right action: `(nu w)_k = nu_{w(k)}`.
    pub fn act_right(&self, nu: &IndexTuple) -> IndexTuple {
        IndexTuple::new(self.0.iter().map(|&i| nu.entries()[i]).collect())
    }

    /// `J_w^{<t} = { j < t : w(j) < w(t) }`.
    pub fn j_less(&self, t: usize) -> Vec<usize> {
        (0..t).filter(|&j| self.0[j] < self.0[t]).collect()
    }

    /// `(|J_w^{<1}|, .., |J_w^{<n}|)`; entry `t` lies in `0..=t`.
    pub fn theta(&self) -> Vec<usize> {
        (0..self.size()).map(|t| (0..t).filter(|&j| self.0[j] < self.0[t]).count()).collect()
    }

    /// Inverse of [`theta`](Self::theta), decoding right to left: `w(t)` is the
    /// `k_t`-th smallest value not taken by positions after `t`.
    pub fn theta_inverse(code: &[usize]) -> Result<Self> {
        for (position, &value) in code.iter().enumerate() {
            if value > position {
                return Err(Error::OutOfRange { position, value, max: position });
            }
        }
        let n = code.len();
        let mut free: Vec<usize> = (0..n).collect();
        let mut images = vec![0; n];
        for t in (0..n).rev() {
            images[t] = free.remove(code[t]);
        }
        Ok(Permutation(images))
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> TransportSet {
        let zeros = IndexTuple::new(vec![0; n]);
        TransportSet::new(&zeros, &zeros, None)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// Lazily enumerates `S(nu, nu') = { w : w nu = nu' }` in lexicographic
/// one-line order, by depth-first matching of each position of `nu` to an
/// unused position of `nu'` carrying the same letter.
#[derive(Debug, Clone)]
pub struct TransportSet {
    candidates: Vec<Vec<usize>>,
    /// Block id per position; consecutive positions in one block must map
    /// increasingly.
    blocks: Option<Vec<usize>>,
    choice: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    started: bool,
    done: bool,
}

impl TransportSet {
    fn new(nu: &IndexTuple, nu_prime: &IndexTuple, blocks: Option<Vec<usize>>) -> Self {
        let n = nu.len();
        let done = nu.len() != nu_prime.len() || !nu.same_content(nu_prime);
        let candidates = nu.iter().map(|x| (0..n).filter(|&k| nu_prime.entries()[k] == x).collect()).collect();
        TransportSet {
            candidates,
            blocks,
            choice: vec![0; n],
            used: vec![false; n],
            assigned: vec![0; n],
            started: false,
            done,
        }
    }

    fn admissible(&self, depth: usize, k: usize) -> bool {
        if self.used[k] {
            return false;
        }
        match &self.blocks {
            Some(b) if depth > 0 && b[depth] == b[depth - 1] => k > self.assigned[depth - 1],
            _ => true,
        }
    }
}

impl Iterator for TransportSet {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let n = self.candidates.len();
        let mut depth;
        if !self.started {
            self.started = true;
            depth = 0;
        } else {
            if n == 0 {
                self.done = true;
                return None;
            }
            depth = n - 1;
            self.used[self.assigned[depth]] = false;
            self.choice[depth] += 1;
        }
        loop {
            if depth == n {
                return Some(Permutation(self.assigned.clone()));
            }
            let mut found = false;
            while self.choice[depth] < self.candidates[depth].len() {
                let k = self.candidates[depth][self.choice[depth]];
                if self.admissible(depth, k) {
                    self.used[k] = true;
                    self.assigned[depth] = k;
                    found = true;
                    break;
                }
                self.choice[depth] += 1;
            }
            if found {
                depth += 1;
                if depth < n {
                    self.choice[depth] = 0;
                }
            } else {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                depth -= 1;
                self.used[self.assigned[depth]] = false;
                self.choice[depth] += 1;
            }
        }
    }
}

/// `S(nu, nu')`; empty when the contents differ.
pub fn transport_set(nu: &IndexTuple, nu_prime: &IndexTuple) -> Result<TransportSet> {
    if nu.len() != nu_prime.len() {
        return Err(Error::LengthMismatch(nu.len(), nu_prime.len()));
    }
    Ok(TransportSet::new(nu, nu_prime, None))
}

/// `|S(nu, nu')| = prod_i m_i!` when the contents agree, otherwise 0.
pub fn transport_count(nu: &IndexTuple, nu_prime: &IndexTuple) -> u128 {
    if nu.len() != nu_prime.len() || !nu.same_content(nu_prime) {
        return 0;
    }
    let mut sorted = nu.entries().to_vec();
    sorted.sort_unstable();
    let mut total = 1u128;
    let mut run = 0u128;
    for (k, x) in sorted.iter().enumerate() {
        run = if k > 0 && sorted[k - 1] == *x { run + 1 } else { 1 };
        total *= run;
    }
    total
}

/// The decomposition of a tuple into maximal runs of equal adjacent letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    sizes: Vec<usize>,
    cumulative: Vec<usize>,
    letters: Vec<usize>,
}

impl BlockStructure {
    pub fn of_tuple(nu: &IndexTuple) -> Self {
        let mut sizes = Vec::new();
        let mut letters = Vec::new();
        for (k, x) in nu.iter().enumerate() {
            if k > 0 && nu.entries()[k - 1] == x {
                *sizes.last_mut().unwrap() += 1;
            } else {
                sizes.push(1);
                letters.push(x);
            }
        }
        let mut cumulative = vec![0];
        for &b in &sizes {
            cumulative.push(cumulative.last().unwrap() + b);
        }
        BlockStructure { sizes, cumulative, letters }
    }

    /// `(b_1, .., b_p)`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `(c_0 = 0, c_1, .., c_p = n)`.
    pub fn cumulative(&self) -> &[usize] {
        &self.cumulative
    }

    /// `(nu^1, .., nu^p)`.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        *self.cumulative.last().unwrap()
    }

    /// The block containing 0-based position `k`.
    pub fn block_of(&self, k: usize) -> usize {
        self.cumulative.partition_point(|&c| c <= k) - 1
    }

    pub fn block_ids(&self) -> Vec<usize> {
        (0..self.total()).map(|k| self.block_of(k)).collect()
    }

    /// Whether the block letters are pairwise distinct (tilde form).
    pub fn letters_distinct(&self) -> bool {
        let mut l = self.letters.clone();
        l.sort_unstable();
        l.windows(2).all(|w| w[0] != w[1])
    }

    /// `prod_i b_i!`.
    pub fn young_order(&self) -> u128 {
        self.sizes.iter().map(|&b| (1..=b as u128).product::<u128>()).product()
    }

    /// The Young subgroup `S_b`, lexicographically.
    pub fn young_subgroup(&self) -> TransportSet {
        let ids = IndexTuple::new(self.block_ids());
        TransportSet::new(&ids, &ids, None)
    }
}

/// `D(nu)`: the elements of `S(nu, nu)` increasing on every block of `nu`,
/// i.e. the minimal length left `S_b`-coset representatives that fix `nu`.
pub fn min_coset_reps(nu: &IndexTuple) -> TransportSet {
    let blocks = BlockStructure::of_tuple(nu);
    TransportSet::new(nu, nu, Some(blocks.block_ids()))
}

/// The minimal length `w` with `w mu = nu_tilde`: the `m`-th occurrence of
/// each letter in `mu` goes to the `m`-th position of that letter's block.
pub fn d_mu(mu: &IndexTuple, nu_tilde: &IndexTuple) -> Result<Permutation> {
    if mu.len() != nu_tilde.len() {
        return Err(Error::LengthMismatch(mu.len(), nu_tilde.len()));
    }
    if !BlockStructure::of_tuple(nu_tilde).letters_distinct() {
        return Err(Error::NotTildeForm);
    }
    if !mu.same_content(nu_tilde) {
        return Err(Error::IncompatibleContent);
    }
    let n = mu.len();
    let mut images = vec![0; n];
    let mut used = vec![false; n];
    for (j, x) in mu.iter().enumerate() {
        let k = (0..n).find(|&k| !used[k] && nu_tilde.entries()[k] == x).unwrap();
        used[k] = true;
        images[j] = k;
    }
    Ok(Permutation(images))
}

/// An ordered split of positions `0..n` into `l` increasing parts; parts may
/// be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShuffleSplit {
    parts: Vec<Vec<usize>>,
}

impl ShuffleSplit {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = parts.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for part in &parts {
            if part.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::BadSplit);
            }
            for &p in part {
                if p >= n || seen[p] {
                    return Err(Error::BadSplit);
                }
                seen[p] = true;
            }
        }
        Ok(ShuffleSplit { parts })
    }

    /// The split that sends position `k` to part `assignment[k]`.
    pub fn from_assignment(assignment: &[usize], l: usize) -> Self {
        let mut parts = vec![Vec::new(); l];
        for (k, &i) in assignment.iter().enumerate() {
            parts[i].push(k);
        }
        ShuffleSplit { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The part index of every position.
    pub fn assignment(&self) -> Vec<usize> {
        let n: usize = self.parts.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &p in part {
                out[p] = i;
            }
        }
        out
    }

    /// `(nu_{s^1}, .., nu_{s^l})`.
    pub fn restrict(&self, nu: &IndexTuple) -> Vec<IndexTuple> {
        self.parts.iter().map(|p| nu.select(p)).collect()
    }

    /// 1-based positions per part.
    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|p| p.iter().map(|x| x + 1).collect()).collect()
    }
}

/// All `l^n` splits of `0..n` into `l` ordered parts, ordered by the
/// assignment vector read lexicographically.
pub fn shuffles(n: usize, l: usize) -> impl Iterator<Item = ShuffleSplit> {
    let mut assignment = vec![0usize; n];
    let mut done = l == 0 && n > 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let split = ShuffleSplit::from_assignment(&assignment, l);
        // odometer increment, last position fastest
        let mut k = n;
        loop {
            if k == 0 {
                done = true;
                break;
            }
            k -= 1;
            assignment[k] += 1;
            if assignment[k] < l {
                break;
            }
            assignment[k] = 0;
        }
        Some(split)
    })
}

/// Splits of the positions of `mu` whose part `i` has the letter content
/// `targets[i]` (given as counts per letter), lexicographic in the assignment.
pub fn shuffles_with_content(mu: &IndexTuple, targets: &[Vec<usize>]) -> Vec<ShuffleSplit> {
    fn rec(
        mu: &[usize],
        k: usize,
        remaining: &mut [Vec<usize>],
        assignment: &mut Vec<usize>,
        out: &mut Vec<ShuffleSplit>,
    ) {
        if k == mu.len() {
            out.push(ShuffleSplit::from_assignment(assignment, remaining.len()));
            return;
        }
        let x = mu[k];
        for i in 0..remaining.len() {
            if remaining[i].get(x).copied().unwrap_or(0) > 0 {
                remaining[i][x] -= 1;
                assignment.push(i);
                rec(mu, k + 1, remaining, assignment, out);
                assignment.pop();
                remaining[i][x] += 1;
            }
        }
    }
    let mut remaining = targets.to_vec();
    let mut out = Vec::new();
    rec(mu.entries(), 0, &mut remaining, &mut Vec::new(), &mut out);
    out
}

fn letter_counts(nu: &IndexTuple, width: usize) -> Vec<usize> {
    let mut c = vec![0; width];
    for x in nu.iter() {
        c[x] += 1;
    }
    c
}

/// `D^l(nu, mu)`: pairs `(s, t)` of `l`-part splits with
/// `beta_{nu_{s^i}} = beta_{mu_{t^i}}` for every part.
pub fn matched_shuffles(
    nu: &IndexTuple,
    mu: &IndexTuple,
    l: usize,
) -> impl Iterator<Item = (ShuffleSplit, ShuffleSplit)> {
    let nu = nu.clone();
    let mu = mu.clone();
    let compatible = nu.len() == mu.len() && nu.same_content(&mu);
    let width = nu.iter().chain(mu.iter()).max().map_or(0, |m| m + 1);
    shuffles(nu.len(), l).take_while(move |_| compatible).flat_map(move |s| {
        let targets: Vec<Vec<usize>> = s.restrict(&nu).iter().map(|p| letter_counts(p, width)).collect();
        shuffles_with_content(&mu, &targets).into_iter().map(move |t| (s.clone(), t))
    })
}

/// For `w` and a split `s`, returns the parts `w_{s,i}` and the split `t` with
/// `t^i` the increasing rearrangement of `w(s^i)`, so that
/// `w(s^i_m) = t^i_{w_{s,i}(m)}`.
pub fn split_under_shuffle(w: &Permutation, s: &ShuffleSplit) -> Result<(Vec<Permutation>, ShuffleSplit)> {
    let n: usize = s.parts().iter().map(Vec::len).sum();
    if n != w.size() {
        return Err(Error::LengthMismatch(w.size(), n));
    }
    let mut pieces = Vec::with_capacity(s.len());
    let mut t_parts = Vec::with_capacity(s.len());
    for part in s.parts() {
        let image: Vec<usize> = part.iter().map(|&p| w.apply(p)).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        let ranks = image.iter().map(|x| sorted.binary_search(x).unwrap()).collect();
        pieces.push(Permutation(ranks));
        t_parts.push(sorted);
    }
    Ok((pieces, ShuffleSplit { parts: t_parts }))
}

/// The map `tau`: rebuilds `w` from `(s, t, w_1, .., w_l)`.
pub fn recompose(pieces: &[Permutation], s: &ShuffleSplit, t: &ShuffleSplit) -> Result<Permutation> {
    if pieces.len() != s.len() || s.len() != t.len() {
        return Err(Error::BadSplit);
    }
    let n: usize = s.parts().iter().map(Vec::len).sum();
    let mut images = vec![0; n];
    for ((w_i, s_i), t_i) in pieces.iter().zip(s.parts()).zip(t.parts()) {
        if w_i.size() != s_i.len() || t_i.len() != s_i.len() {
            return Err(Error::BadSplit);
        }
        for (m, &p) in s_i.iter().enumerate() {
            images[p] = t_i[w_i.apply(m)];
        }
    }
    Permutation::from_images(images)
}

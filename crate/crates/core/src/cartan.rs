//! Symmetrizable generalized Cartan matrices, weight and root lattice
//! elements, and the bilinear pairings the dimension formulas are built on.
//!
//! Conventions: nodes are `0..rank` internally, `a[i][j] = <alpha_j, h_i>`,
//! `(alpha_j | alpha_i) = d_i * a[i][j]` and `(Lambda | alpha_i) = d_i * <Lambda, h_i>`.
//! Every node also carries an integer label used for input and output.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated symmetrizable generalized Cartan matrix with its minimal
/// symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanData {
    matrix: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    labels: Vec<i64>,
}

/// Validates `matrix` and computes its minimal symmetrizer. Nodes are
/// labelled `1..=rank`.
pub fn validate_cartan(matrix: Vec<Vec<i64>>) -> Result<CartanData> {
    let labels = (1..=matrix.len() as i64).collect();
    CartanData::with_labels(matrix, labels)
}

/// Looks up a matrix from the builtin registry, e.g. `"A2"`, `"A1~"`,
/// `"C3~"`, `"A4^2"`, `"D5^2"`, `"G2"`.
pub fn builtin_cartan(name: &str) -> Result<CartanData> {
    let ty: CartanType = name.parse()?;
    validate_cartan(ty.matrix())
}

impl CartanData {
    pub fn with_labels(matrix: Vec<Vec<i64>>, labels: Vec<i64>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare { row, len: entries.len(), expected: n });
            }
        }
        if labels.len() != n {
            return Err(Error::WrongLength { expected: n, got: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Parse(format!("duplicate node label {l}")));
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::BadDiagonal(i, row[i]));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a > 0 || (a == 0) != (matrix[j][i] == 0) {
                    return Err(Error::BadSign(i, j, a));
                }
            }
        }
        let symmetrizer = minimal_symmetrizer(&matrix)?;
        Ok(Self { matrix, symmetrizer, labels })
    }

    /// Parses the JSON document `{"matrix": [[...]], "labels": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CartanFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match file.labels {
            Some(labels) => Self::with_labels(file.matrix, labels),
            None => validate_cartan(file.matrix),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({ "matrix": self.matrix, "labels": self.labels })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `a[i][j] = <alpha_j, h_i>`.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    #[inline]
    pub fn d(&self, i: usize) -> i64 {
        self.symmetrizer[i]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> i64 {
        self.labels[i]
    }

    pub fn index_of_label(&self, label: i64) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or(Error::UnknownLabel(label))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, count: self.rank() })
        }
    }

    /// `(alpha_i | alpha_j) = d_i a_ij`, symmetric in `i, j`.
    pub fn pairing_roots(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[i] * self.matrix[i][j]
    }

    /// `<Lambda - beta, h_i> = k_i - sum_j b_j a_ij`.
    pub fn pair_coroot(&self, weight: &Weight, beta: Option<&RootElement>, i: usize) -> i64 {
        let mut value = weight.coeff(i);
        if let Some(beta) = beta {
            for (j, &b) in beta.coeffs().iter().enumerate() {
                value -= b * self.matrix[i][j];
            }
        }
        value
    }

    /// `(Lambda | beta)`.
    pub fn pair_weight_root(&self, weight: &Weight, beta: &RootElement) -> i64 {
        beta.coeffs().iter().enumerate().map(|(i, &b)| b * self.symmetrizer[i] * weight.coeff(i)).sum()
    }

    /// `(beta | gamma)`.
    pub fn pair_root_root(&self, beta: &RootElement, gamma: &RootElement) -> i64 {
        let mut total = 0;
        for (i, &b) in beta.coeffs().iter().enumerate() {
            for (j, &c) in gamma.coeffs().iter().enumerate() {
                total += b * c * self.pairing_roots(i, j);
            }
        }
        total
    }

    /// `df(Lambda, beta) = (Lambda|beta) - (beta|beta)/2`, kept in half units.
    pub fn defect(&self, weight: &Weight, beta: &RootElement) -> HalfInt {
        HalfInt(2 * self.pair_weight_root(weight, beta) - self.pair_root_root(beta, beta))
    }

    /// Exact determinant via fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.rank();
        let mut m: Vec<Vec<i128>> = self.matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    /// Parses a comma separated weight aligned with node order.
    pub fn parse_weight(&self, text: &str) -> Result<Weight> {
        let coeffs = parse_int_list(text)?;
        Weight::for_rank(coeffs, self.rank())
    }

    /// Parses a comma separated list of node labels into an index tuple.
    pub fn parse_tuple(&self, text: &str) -> Result<IndexTuple> {
        let labels = parse_int_list(text)?;
        self.tuple_from_labels(&labels)
    }

    pub fn tuple_from_labels(&self, labels: &[i64]) -> Result<IndexTuple> {
        labels.iter().map(|&l| self.index_of_label(l)).collect::<Result<Vec<_>>>().map(IndexTuple::new)
    }

    pub fn tuple_labels(&self, tuple: &IndexTuple) -> Vec<i64> {
        tuple.iter().map(|i| self.labels[i]).collect()
    }

    /// Parses a comma separated list of simple root multiplicities.
    pub fn parse_root(&self, text: &str) -> Result<RootElement> {
        let coeffs = parse_int_list(text)?;
        if coeffs.len() != self.rank() {
            return Err(Error::WrongLength { expected: self.rank(), got: coeffs.len() });
        }
        RootElement::new(coeffs)
    }

    pub fn check_tuple(&self, tuple: &IndexTuple) -> Result<()> {
        tuple.iter().try_for_each(|i| self.check_index(i))
    }

    pub fn check_weight(&self, weight: &Weight) -> Result<()> {
        if weight.rank() != self.rank() {
            return Err(Error::WrongLength { expected: self.rank(), got: weight.rank() });
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct CartanFile {
    matrix: Vec<Vec<i64>>,
    labels: Option<Vec<i64>>,
}

fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{t}`")))).collect()
}

/// Spanning-tree propagation of ratios per connected component, then scaling
/// each component to coprime positive integers.
fn minimal_symmetrizer(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = matrix.len();
    let mut ratio: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut d = vec![0i64; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(Ratio::from_integer(1));
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = ratio[i].unwrap();
            for j in 0..n {
                if j == i || matrix[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = di * Ratio::new(matrix[i][j], matrix[j][i]);
                match ratio[j] {
                    None => {
                        ratio[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => return Err(Error::NotSymmetrizable(i, j)),
                    Some(_) => {}
                }
            }
        }
        let denom_lcm = component.iter().fold(1i64, |acc, &i| acc.lcm(ratio[i].unwrap().denom()));
        let scaled: Vec<i64> = component.iter().map(|&i| (ratio[i].unwrap() * denom_lcm).to_integer()).collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &v) in component.iter().zip(&scaled) {
            d[i] = v / g;
        }
    }
    Ok(d)
}

/// An integer stored in half units, exact for `x/2` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn half_units(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

/// `Lambda = sum_i k_i Lambda_i`; may be non-dominant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Weight(coeffs)
    }

    pub fn for_rank(coeffs: Vec<i64>, rank: usize) -> Result<Self> {
        if coeffs.len() != rank {
            return Err(Error::WrongLength { expected: rank, got: coeffs.len() });
        }
        Ok(Weight(coeffs))
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(i: usize, rank: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Weight(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All dominant weights of the given rank with level at most `max_level`.
    pub fn dominant_up_to_level(rank: usize, max_level: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        for level in 0..=max_level {
            for c in compositions(level, rank) {
                out.push(Weight(c));
            }
        }
        out
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// `beta = sum_i k_i alpha_i` with `k_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootElement(Vec<i64>);

impl RootElement {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|&c| c < 0) {
            return Err(Error::NegativeRoot(i));
        }
        Ok(RootElement(coeffs))
    }

    pub fn zero(rank: usize) -> Self {
        RootElement(vec![0; rank])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|beta|`.
    pub fn height(&self) -> usize {
        self.0.iter().sum::<i64>() as usize
    }

    pub fn add_simple(&mut self, i: usize) {
        self.0[i] += 1;
    }

    /// All elements of `Q_n^+` for the given rank, in lexicographically
    /// decreasing coefficient order.
    pub fn of_height(n: usize, rank: usize) -> Vec<RootElement> {
        compositions(n as i64, rank).into_iter().map(RootElement).collect()
    }

    /// All tuples `nu` with content `beta` (the set `I^beta`), in
    /// lexicographic order.
    pub fn tuples(&self) -> Vec<IndexTuple> {
        let mut counts: Vec<usize> = self.0.iter().map(|&c| c as usize).collect();
        let n = self.height();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(counts: &mut [usize], current: &mut Vec<usize>, n: usize, out: &mut Vec<IndexTuple>) {
            if current.len() == n {
                out.push(IndexTuple(current.clone()));
                return;
            }
            for i in 0..counts.len() {
                if counts[i] > 0 {
                    counts[i] -= 1;
                    current.push(i);
                    rec(counts, current, n, out);
                    current.pop();
                    counts[i] += 1;
                }
            }
        }
        rec(&mut counts, &mut current, n, &mut out);
        out
    }
}

/// Compositions of `total` into `parts` non-negative integers, lexicographically
/// decreasing.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A sequence of node indices `(nu_1, ..., nu_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(entries: Vec<usize>) -> Self {
        IndexTuple(entries)
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// `beta_nu = sum_k alpha_{nu_k}`.
    pub fn content(&self, rank: usize) -> RootElement {
        let mut coeffs = vec![0; rank];
        for &i in &self.0 {
            coeffs[i] += 1;
        }
        RootElement(coeffs)
    }

    /// Whether both tuples have the same letter multiset.
    pub fn same_content(&self, other: &IndexTuple) -> bool {
        let mut a = self.0.clone();
        let mut b = other.0.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// The subsequence at the given 0-based positions.
    pub fn select(&self, positions: &[usize]) -> IndexTuple {
        IndexTuple(positions.iter().map(|&p| self.0[p]).collect())
    }

    /// Right action by the adjacent transposition swapping positions `a`, `a+1`.
    pub fn swapped(&self, a: usize) -> IndexTuple {
        let mut v = self.0.clone();
        v.swap(a, a + 1);
        IndexTuple(v)
    }
}

impl From<Vec<usize>> for IndexTuple {
    fn from(v: Vec<usize>) -> Self {
        IndexTuple(v)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Families in the builtin registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    /// `A_n^(1)`, `n + 1` nodes.
    AffineA(usize),
    /// `C_n^(1)`, `n + 1` nodes.
    AffineC(usize),
    /// `D_n^(1)`, `n + 1` nodes.
    AffineD(usize),
    /// `A_{2l}^(2)`, stores `2l`; `l + 1` nodes.
    TwistedA(usize),
    /// `D_{l+1}^(2)`, stores `l + 1`; `l + 1` nodes.
    TwistedD(usize),
}

impl CartanType {
    pub const REGISTRY_HELP: &'static str = "A<n>, B<n>, C<n>, D<n>, E6, E7, E8, F4, G2 (finite); \
A<n>~, C<n>~, D<n>~ (untwisted affine, also A<n>_affine); A<2l>^2, D<l+1>^2 (twisted affine)";

    pub fn size(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
            CartanType::AffineA(n) | CartanType::AffineC(n) | CartanType::AffineD(n) => n + 1,
            CartanType::TwistedA(m) => m / 2 + 1,
            CartanType::TwistedD(m) => m,
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            CartanType::AffineA(_)
                | CartanType::AffineC(_)
                | CartanType::AffineD(_)
                | CartanType::TwistedA(_)
                | CartanType::TwistedD(_)
        )
    }

    fn check(self) -> Result<Self> {
        let ok = match self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) => n >= 2,
            CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 | CartanType::G2 => true,
            CartanType::AffineA(n) => n >= 1,
            CartanType::AffineC(n) => n >= 2,
            CartanType::AffineD(n) => n >= 4,
            CartanType::TwistedA(m) => m >= 2 && m % 2 == 0,
            CartanType::TwistedD(m) => m >= 3,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::BadRank { family: format!("{self:?}"), rank: self.size() })
        }
    }

    /// The standard generalized Cartan matrix, `a[i][j] = <alpha_j, h_i>`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            m[i][j] = aij;
            m[j][i] = aji;
        };
        match *self {
            CartanType::A(n) => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            CartanType::B(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            CartanType::C(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            CartanType::D(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            CartanType::E(n) => {
                // Bourbaki numbering: 1-3-4-5-..., 2 attached to 4.
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            CartanType::F4 => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            CartanType::G2 => link(0, 1, -3, -1),
            CartanType::AffineA(1) => link(0, 1, -2, -2),
            CartanType::AffineA(n) => (0..=n).for_each(|i| link(i, (i + 1) % (n + 1), -1, -1)),
            CartanType::AffineC(n) => {
                link(0, 1, -1, -2);
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 1, n, -2, -1);
            }
            CartanType::AffineD(n) => {
                link(0, 2, -1, -1);
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n, -1, -1);
            }
            CartanType::TwistedA(2) => link(0, 1, -4, -1),
            CartanType::TwistedA(m) => {
                let l = m / 2;
                link(0, 1, -2, -1);
                (1..l - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(l - 1, l, -2, -1);
            }
            CartanType::TwistedD(m) => {
                let l = m - 1;
                link(0, 1, -2, -1);
                (1..l - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(l - 1, l, -1, -2);
            }
        }
        m
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownType(s.to_string());
        let name = s.trim();
        let (body, kind) = if let Some(b) = name.strip_suffix('~') {
            (b, 1)
        } else if let Some(b) = name.strip_suffix("_affine") {
            (b, 1)
        } else if let Some(b) = name.strip_suffix("^1") {
            (b, 1)
        } else if let Some(b) = name.strip_suffix("^2") {
            (b, 2)
        } else {
            (name, 0)
        };
        let mut chars = body.chars();
        let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| unknown())?;
        let ty = match (family, kind) {
            ('A', 0) => CartanType::A(rank),
            ('B', 0) => CartanType::B(rank),
            ('C', 0) => CartanType::C(rank),
            ('D', 0) => CartanType::D(rank),
            ('E', 0) => CartanType::E(rank),
            ('F', 0) if rank == 4 => CartanType::F4,
            ('G', 0) if rank == 2 => CartanType::G2,
            ('F', 0) | ('G', 0) => return Err(Error::BadRank { family: family.to_string(), rank }),
            ('A', 1) => CartanType::AffineA(rank),
            ('C', 1) => CartanType::AffineC(rank),
            ('D', 1) => CartanType::AffineD(rank),
            ('A', 2) => CartanType::TwistedA(rank),
            ('D', 2) => CartanType::TwistedD(rank),
            _ => return Err(unknown()),
        };
        ty.check()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizer_examples() {
        let a2 = validate_cartan(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.symmetrizer(), &[1, 1]);
        let c2 = validate_cartan(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(c2.symmetrizer(), &[1, 2]);
        assert_eq!(validate_cartan(vec![vec![2, -1], vec![3, 2]]), Err(Error::BadSign(1, 0, 3)));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(validate_cartan(vec![vec![1]]), Err(Error::BadDiagonal(0, 1)));
        assert!(matches!(validate_cartan(vec![vec![2, 0], vec![-1, 2]]), Err(Error::BadSign(..))));
        assert!(matches!(validate_cartan(vec![vec![2, -1]]), Err(Error::NotSquare { .. })));
        // 3-cycle with ratios 1 -> 2 -> 4 -> back to 1 inconsistently
        let cyc = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -2, 2]];
        assert!(matches!(validate_cartan(cyc), Err(Error::NotSymmetrizable(..))));
    }

    #[test]
    fn disconnected_components_are_scaled_separately() {
        let m = vec![vec![2, -2, 0, 0], vec![-1, 2, 0, 0], vec![0, 0, 2, -3], vec![0, 0, -1, 2]];
        assert_eq!(validate_cartan(m).unwrap().symmetrizer(), &[1, 2, 1, 3]);
    }

    #[test]
    fn registry_matrices() {
        assert_eq!(builtin_cartan("A2").unwrap().matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(builtin_cartan("A1~").unwrap().matrix(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(builtin_cartan("A3").unwrap().matrix(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(builtin_cartan("C2").unwrap().symmetrizer(), &[1, 2]);
        assert_eq!(builtin_cartan("G2").unwrap().symmetrizer(), &[1, 3]);
        assert_eq!(builtin_cartan("A1_affine").unwrap(), builtin_cartan("A1~").unwrap());
        assert!(matches!(builtin_cartan("X3"), Err(Error::UnknownType(_))));
        assert!(matches!(builtin_cartan("D3"), Err(Error::BadRank { .. })));
        assert!(matches!(builtin_cartan("A3^2"), Err(Error::BadRank { .. })));
    }

    #[test]
    fn registry_determinants_classify_finite_and_affine() {
        let finite = ["A1", "A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"];
        let affine = ["A1~", "A3~", "C2~", "C4~", "D4~", "D6~", "A2^2", "A4^2", "A6^2", "D3^2", "D5^2"];
        for name in finite {
            assert!(builtin_cartan(name).unwrap().determinant() > 0, "{name}");
        }
        for name in affine {
            let c = builtin_cartan(name).unwrap();
            assert_eq!(c.determinant(), 0, "{name}");
            assert!(name.parse::<CartanType>().unwrap().is_affine());
        }
    }

    #[test]
    fn registry_roundtrips_through_validation() {
        for name in ["A5", "B4", "C3", "D4", "E8", "F4", "G2", "A2~", "C3~", "D5~", "A4^2", "D5^2"] {
            let c = builtin_cartan(name).unwrap();
            let again = validate_cartan(c.matrix().to_vec()).unwrap();
            assert_eq!(again.symmetrizer(), c.symmetrizer(), "{name}");
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    assert_eq!(c.pairing_roots(i, j), c.pairing_roots(j, i));
                }
            }
        }
    }

    #[test]
    fn pairings() {
        let a2 = builtin_cartan("A2").unwrap();
        assert_eq!(a2.pairing_roots(0, 0), 2);
        assert_eq!(a2.pairing_roots(0, 1), -1);
        let c2 = builtin_cartan("C2").unwrap();
        assert_eq!(c2.pairing_roots(0, 1), -2);

        let a1 = validate_cartan(vec![vec![2]]).unwrap();
        assert_eq!(a1.pair_coroot(&Weight::new(vec![5]), None, 0), 5);
        let w = Weight::new(vec![1, 1]);
        let beta = RootElement::new(vec![1, 0]).unwrap();
        assert_eq!(a2.pair_coroot(&w, Some(&beta), 0), -1);
        assert_eq!(a2.pair_coroot(&w, Some(&beta), 1), 2);
    }

    #[test]
    fn defect_values() {
        let a1 = validate_cartan(vec![vec![2]]).unwrap();
        let w = Weight::new(vec![5]);
        assert_eq!(a1.defect(&w, &RootElement::zero(1)), HalfInt(0));
        let two = RootElement::new(vec![2]).unwrap();
        let one = RootElement::new(vec![1]).unwrap();
        assert_eq!(a1.defect(&w, &two).to_integer(), Some(6));
        assert_eq!(a1.defect(&w, &two).half_units(), 12);
        let diff = a1.defect(&w, &two) - a1.defect(&w, &one);
        assert_eq!(diff.to_integer(), Some(1 + a1.pair_coroot(&w, Some(&two), 0)));
        assert_eq!(diff.to_integer(), Some(2));
    }

    #[test]
    fn content_of_tuples() {
        assert_eq!(IndexTuple::new(vec![0, 1, 0]).content(2).coeffs(), &[2, 1]);
        assert_eq!(IndexTuple::empty().content(2).coeffs(), &[0, 0]);
        assert_eq!(IndexTuple::new(vec![0, 0]).content(1).coeffs(), &[2]);
    }

    #[test]
    fn enumerations() {
        assert_eq!(RootElement::of_height(2, 3).len(), 6);
        let beta = RootElement::new(vec![2, 1]).unwrap();
        let tuples: Vec<Vec<usize>> = beta.tuples().iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(tuples, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(Weight::dominant_up_to_level(3, 3).len(), 20);
    }

    #[test]
    fn json_loading_and_labels() {
        let c = CartanData::from_json(r#"{"matrix": [[2,-1],[-1,2]], "labels": [7, 3]}"#).unwrap();
        assert_eq!(c.index_of_label(3), Ok(1));
        assert_eq!(c.parse_tuple("3,7,3").unwrap().entries(), &[1, 0, 1]);
        assert_eq!(c.parse_tuple("4"), Err(Error::UnknownLabel(4)));
        let again = CartanData::from_json(&c.to_json_value().to_string()).unwrap();
        assert_eq!(again, c);
        assert!(CartanData::from_json(r#"{"matrix": [[2,1],[-1,2]]}"#).is_err());
    }
}

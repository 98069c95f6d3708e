//! Laurent polynomials in `q` with unbounded integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial kept in canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `sum_{a=0}^{len-1} q^{start + a*step}`; empty when `len <= 0`.
    pub fn geometric(start: i64, step: i64, len: i64) -> Self {
        Self::from_terms((0..len.max(0)).map(|a| (start + a * step, 1)))
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// `q -> q^d` for `d >= 1`.
    pub fn substitute_power(&self, d: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e * d, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact division; fails unless `divisor` divides `self` with zero remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<Self> {
        let (dlo, dhi) = match (divisor.min_degree(), divisor.max_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::DivisionInexact),
        };
        let lead = divisor.terms[&dhi].clone();
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(hi) = rem.max_degree() {
            if hi - dhi < rem.min_degree().unwrap() - dlo {
                return Err(Error::DivisionInexact);
            }
            let (q, r) = rem.terms[&hi].div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::DivisionInexact);
            }
            let e = hi - dhi;
            rem = &rem - &divisor.shift(e).scale(&q);
            quotient.add_term(e, q);
        }
        Ok(quotient)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(0, c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

/// Descending exponents, e.g. `2q^6+5q^4+6q^2+4+q^-2`.
impl LaurentPoly {
    /// The human form with exponents increasing, e.g. `1+2q^2+q^6`.
    pub fn to_string_ascending(&self) -> String {
        let mut out = String::new();
        self.write_terms(&mut out, self.terms.iter().collect()).expect("writing to a String");
        out
    }

    fn write_terms(&self, f: &mut impl fmt::Write, terms: Vec<(&i64, &BigInt)>) -> fmt::Result {
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let abs = c.abs();
            write!(f, "{sign}")?;
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match e {
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Exponents decreasing, e.g. `2q^6+5q^4+6q^2+4+q^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, self.terms.iter().rev().collect())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad polynomial `{s}`"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = LaurentPoly::zero();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let (coeff, exp) = match body.find('q') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 { BigInt::one() } else { body[..pos].parse().map_err(|_| bad())? };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            out.add_term(exp, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

/// JSON form: ascending list of `[exponent, coefficient]` pairs.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, serde_json::Number)> =
            self.terms.iter().map(|(&e, c)| (e, c.to_string().parse().expect("integer literal"))).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, serde_json::Number)> = Vec::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        for (e, c) in pairs {
            let c: BigInt = c.to_string().parse().map_err(D::Error::custom)?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// `[m]_d = q^{d(m-1)} + q^{d(m-3)} + ... + q^{d(1-m)}`, with `[0] = 0` and
/// `[-m] = -[m]`.
pub fn quantum_int(m: i64, d: i64) -> LaurentPoly {
    if m < 0 {
        return -&quantum_int(-m, d);
    }
    LaurentPoly::geometric(d * (m - 1), -2 * d, m)
}

/// `[m]_d! = [1]_d [2]_d ... [m]_d`.
pub fn quantum_factorial(m: u32, d: i64) -> LaurentPoly {
    (1..=m as i64).map(|t| quantum_int(t, d)).product()
}

/// `[m choose n]_d = [m]! / ([n]! [m-n]!)` by exact division.
pub fn quantum_binomial(m: u32, n: u32, d: i64) -> Result<LaurentPoly> {
    if n > m {
        return Err(Error::PreconditionFail(format!("binomial needs n <= m, got {m} choose {n}")));
    }
    let denom = &quantum_factorial(n, d) * &quantum_factorial(m - n, d);
    quantum_factorial(m, d).div_exact(&denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_int(2, 1), p("q+q^-1"));
        assert!(quantum_int(0, 3).is_zero());
        assert_eq!(quantum_int(-3, 2), p("-q^4-1-q^-4"));
        assert_eq!(quantum_int(5, 1).eval_one(), BigInt::from(5));
        for m in -6..=6 {
            for d in 1..=6 {
                assert_eq!(quantum_int(m, d).bar(), quantum_int(m, d));
            }
        }
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(quantum_factorial(2, 1), p("q+q^-1"));
        assert_eq!(quantum_factorial(0, 1), LaurentPoly::one());
        assert_eq!(quantum_binomial(3, 1, 1).unwrap(), p("q^2+1+q^-2"));
        assert_eq!(quantum_binomial(4, 2, 1).unwrap(), p("q^4+q^2+2+q^-2+q^-4"));
        for m in 1..=8u32 {
            assert_eq!(quantum_factorial(m, 1), &quantum_int(m as i64, 1) * &quantum_factorial(m - 1, 1));
        }
        assert!(quantum_binomial(2, 3, 1).is_err());
    }

    #[test]
    fn inexact_division_is_reported() {
        assert_eq!(p("q^2+1").div_exact(&p("q+1")), Err(Error::DivisionInexact));
        assert_eq!(p("2q").div_exact(&p("3")), Err(Error::DivisionInexact));
        assert_eq!(p("q^2-1").div_exact(&p("q+1")).unwrap(), p("q-1"));
    }

    #[test]
    fn display_and_parse() {
        let poly = LaurentPoly::from_terms([(6, 2), (4, 5), (2, 6), (0, 4), (-2, 1)]);
        assert_eq!(poly.to_string(), "2q^6+5q^4+6q^2+4+q^-2");
        assert_eq!(p("2q^6+5q^4+6q^2+4+q^-2"), poly);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-q").to_string(), "-q");
        assert_eq!(p("1-q^-3").to_string(), "1-q^-3");
        assert_eq!(p("q^6+2q^4+2q^2+1").to_string_ascending(), "1+2q^2+2q^4+q^6");
        assert_eq!(p("-q+q^-1").to_string_ascending(), "q^-1-q");
    }

    #[test]
    fn json_roundtrip_with_large_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let poly = LaurentPoly::monomial(-3, big.clone()) + LaurentPoly::monomial(2, 7);
        let text = serde_json::to_string(&poly).unwrap();
        assert_eq!(text, "[[-3,123456789012345678901234567890],[2,7]]");
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn sum_of_shifted_quantum_ints() {
        // sum_{k<t} [l-2k] q^{l-t} = [t] (1 + q^2 + ... + q^{2(l-t)})
        for l in 1..=7 {
            for t in 1..=l {
                let lhs: LaurentPoly = (0..t).map(|k| quantum_int(l - 2 * k, 1).shift(l - t)).sum();
                let rhs = &quantum_int(t, 1) * &LaurentPoly::geometric(0, 2, l - t + 1);
                assert_eq!(lhs, rhs, "l={l} t={t}");
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..=6, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_one_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a + &b).eval_one(), a.eval_one() + b.eval_one());
            prop_assert_eq!((&a * &b).eval_one(), a.eval_one() * b.eval_one());
        }

        #[test]
        fn display_parse_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a.clone());
            prop_assert_eq!(a.to_string_ascending().parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }
    }
}

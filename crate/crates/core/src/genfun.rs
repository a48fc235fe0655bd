//! Multivariate power series in `x_1..x_l` with polynomial-in-`t`
//! coefficients, truncated by total degree, and the generating function
//! of Poincare polynomials of disjoint unions of chains.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bijections::Permutation;
use crate::error::{Error, Result};
use crate::foata::{enumerate_multiset_perms, fcyc};
use crate::poly::IntPolynomial;
use crate::poset::Poset;
use crate::whitney::{poincare_via_lrmax, poincare_via_transverse};

/// Exponent vectors of length `ell` mapped to their coefficients. Terms of
/// total degree above `max_degree` are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ell: usize,
    max_degree: usize,
    terms: BTreeMap<Vec<usize>, IntPolynomial>,
}

impl TruncatedSeries {
    pub fn zero(ell: usize, max_degree: usize) -> Self {
        TruncatedSeries {
            ell,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ell: usize, max_degree: usize) -> Self {
        Self::monomial(ell, max_degree, vec![0; ell], IntPolynomial::one())
    }

    /// `coeff * x^exps`, dropped if above the truncation degree.
    pub fn monomial(ell: usize, max_degree: usize, exps: Vec<usize>, coeff: IntPolynomial) -> Self {
        assert_eq!(exps.len(), ell, "exponent vector length");
        let mut s = Self::zero(ell, max_degree);
        s.add_term(exps, &coeff);
        s
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Nonzero terms in lexicographic order of exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &IntPolynomial)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Vec<usize>, coeff: &IntPolynomial) {
        if coeff.is_zero() || exps.iter().sum::<usize>() > self.max_degree {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(
            (self.ell, self.max_degree),
            (other.ell, other.max_degree),
            "series shapes differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&IntPolynomial::from_i64s(&[-1])))
    }

    pub fn scale(&self, p: &IntPolynomial) -> Self {
        let mut out = Self::zero(self.ell, self.max_degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * p));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.ell, self.max_degree);
        for (ea, ca) in &self.terms {
            let da: usize = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<usize>() > self.max_degree {
                    continue;
                }
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    /// `1 / (1 - self)` as the geometric sum up to the truncation degree;
    /// `self` must have no constant term.
    pub fn inverse_of_one_minus(&self) -> Result<Self> {
        if self.terms.contains_key(&vec![0; self.ell]) {
            return Err(Error::Invalid("series has a constant term".into()));
        }
        let mut acc = Self::one(self.ell, self.max_degree);
        let mut power = acc.clone();
        for _ in 0..self.max_degree {
            power = power.mul(self);
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// Coefficient of `x^a`.
    pub fn coefficient(&self, a: &[usize]) -> Result<IntPolynomial> {
        if a.len() != self.ell {
            return Err(Error::Invalid(format!(
                "exponent {a:?} has {} entries, expected {}",
                a.len(),
                self.ell
            )));
        }
        let total: usize = a.iter().sum();
        if total > self.max_degree {
            return Err(Error::DegreeExceeded {
                total,
                max: self.max_degree,
            });
        }
        Ok(self.terms.get(a).cloned().unwrap_or_default())
    }

    /// Replace `t` by `1/t`, then `x_i` by `t x_i`: the coefficient of
    /// `x^a` becomes `t^|a| p(1/t)`. Fails when some `deg p > |a|`.
    pub fn reciprocal_substitution(&self) -> Result<Self> {
        let mut out = Self::zero(self.ell, self.max_degree);
        for (e, c) in &self.terms {
            let total: usize = e.iter().sum();
            let r = c.reversed(total).ok_or_else(|| {
                Error::Invalid(format!("coefficient of {e:?} has degree above {total}"))
            })?;
            out.add_term(e.clone(), &r);
        }
        Ok(out)
    }
}

/// One term per line: `a1,...,al : <poly>`.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            writeln!(f, "{} : {}", join(e), c)?;
        }
        Ok(())
    }
}

fn join(a: &[usize]) -> String {
    a.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// All exponent vectors of length `ell` with total at most `max_degree`,
/// lexicographic.
pub fn exponents_up_to(ell: usize, max_degree: usize) -> Vec<Vec<usize>> {
    fn go(ell: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == ell {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(ell, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(ell, max_degree, &mut Vec::new(), &mut out);
    out
}

/// `e_j(x_1..x_l)` with unit coefficients.
pub fn elementary_symmetric(ell: usize, j: usize, max_degree: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(ell, max_degree);
    for mask in 0u64..1 << ell {
        if mask.count_ones() as usize == j {
            let e = (0..ell).map(|i| ((mask >> i) & 1) as usize).collect();
            s.add_term(e, &IntPolynomial::one());
        }
    }
    s
}

/// `(t - 1)(2t - 1)...((j - 1)t - 1)`.
pub fn falling_bracket(j: usize) -> IntPolynomial {
    (1..j as i64)
        .map(|i| IntPolynomial::linear(i, -1))
        .product()
}

/// `(-t)(1 - t)...(j - 1 - t)`.
pub fn rising_bracket(j: usize) -> IntPolynomial {
    (0..j as i64)
        .map(|i| IntPolynomial::linear(-1, i))
        .product()
}

fn weighted_elementary(
    ell: usize,
    max_degree: usize,
    weight: impl Fn(usize) -> IntPolynomial,
) -> TruncatedSeries {
    (1..=ell).fold(TruncatedSeries::zero(ell, max_degree), |acc, j| {
        acc.add(&elementary_symmetric(ell, j, max_degree).scale(&weight(j)))
    })
}

/// `1 / (1 - sum_j e_j (t - 1)(2t - 1)...((j - 1)t - 1))`.
pub fn chains_gf_rhs(ell: usize, max_degree: usize) -> TruncatedSeries {
    weighted_elementary(ell, max_degree, falling_bracket)
        .inverse_of_one_minus()
        .expect("no constant term")
}

/// `1 / (1 + sum_j (-t)(1 - t)...(j - 1 - t) e_j)`.
pub fn specialized_rhs(ell: usize, max_degree: usize) -> TruncatedSeries {
    let neg = IntPolynomial::from_i64s(&[-1]);
    weighted_elementary(ell, max_degree, |j| &rising_bracket(j) * &neg)
        .inverse_of_one_minus()
        .expect("no constant term")
}

/// `sum over multiset permutations sigma of t^fcyc(sigma) x^supp(sigma)`.
pub fn specialized_lhs(ell: usize, max_degree: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(ell, max_degree);
    for a in exponents_up_to(ell, max_degree) {
        let n: usize = a.iter().sum();
        let mut counts = vec![0i64; n + 1];
        for sigma in enumerate_multiset_perms(&a) {
            counts[fcyc(&sigma)] += 1;
        }
        s.add_term(a, &IntPolynomial::from_i64s(&counts));
    }
    s
}

/// One comparison of the series coefficient against a directly computed
/// Poincare polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub exponent: Vec<usize>,
    pub series: IntPolynomial,
    pub direct: IntPolynomial,
}

impl VerifyRow {
    pub fn matches(&self) -> bool {
        self.series == self.direct
    }
}

/// `a1,...,al : <poly> : MATCH|MISMATCH`.
impl fmt::Display for VerifyRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} : {} : {}",
            join(&self.exponent),
            self.series,
            if self.matches() { "MATCH" } else { "MISMATCH" }
        )
    }
}

/// Compares every coefficient with total degree at most `max_degree`
/// against the Poincare polynomial of the disjoint union of chains with
/// the nonzero exponents as lengths. Rows are in lexicographic order.
pub fn verify_chains_gf(ell: usize, max_degree: usize) -> Vec<VerifyRow> {
    let rhs = chains_gf_rhs(ell, max_degree);
    exponents_up_to(ell, max_degree)
        .into_par_iter()
        .map(|a| {
            let parts: Vec<usize> = a.iter().copied().filter(|&k| k > 0).collect();
            VerifyRow {
                series: rhs.coefficient(&a).expect("within degree"),
                direct: poincare_via_transverse(&Poset::union_of_chains(&parts)),
                exponent: a,
            }
        })
        .collect()
}

/// Unsigned Stirling numbers of the first kind `c(n, 0..=n)` by recurrence.
pub fn stirling_first(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for m in 1..=n {
        let mut next = vec![BigInt::from(0); m + 1];
        for k in 1..=m {
            let keep = row.get(k).cloned().unwrap_or_default() * BigInt::from(m - 1);
            next[k] = &row[k - 1] + keep;
        }
        row = next;
    }
    row
}

/// Number of permutations of `1..=n` with `k` cycles, by listing them all.
pub fn cycle_counts_brute_force(n: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::from(0); n + 1];
    let mut word: Vec<usize> = (1..=n).collect();
    loop {
        let p = Permutation::new(word.clone()).expect("arrangement of 1..=n");
        counts[p.num_cycles()] += 1;
        let Some(i) = (1..n).rev().find(|&i| word[i - 1] < word[i]) else {
            break;
        };
        let j = (i..n)
            .rev()
            .find(|&j| word[j] > word[i - 1])
            .expect("exists");
        word.swap(i - 1, j);
        word[i..].reverse();
    }
    counts
}

/// The antichain on `n` elements has Poincare polynomial
/// `(1 + t)(1 + 2t)...(1 + (n - 1)t)`, whose coefficient of `t^(n-k)`
/// counts permutations with `k` cycles.
pub fn stirling_row_check(n: usize) -> bool {
    let poin = poincare_via_lrmax(&Poset::antichain(n));
    let product: IntPolynomial = (0..n as i64).map(|k| IntPolynomial::linear(k, 1)).product();
    let cycles = if n <= 7 {
        cycle_counts_brute_force(n)
    } else {
        stirling_first(n)
    };
    poin == product && (0..=n).all(|k| poin.coeff(n - k) == cycles[k])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn elementary_symmetric_functions() {
        let e = elementary_symmetric(2, 1, 3);
        let terms: Vec<_> = e.terms().map(|(k, _)| k.clone()).collect();
        assert_eq!(terms, vec![vec![0, 1], vec![1, 0]]);
        let e3 = elementary_symmetric(3, 3, 3);
        assert_eq!(e3.coefficient(&[1, 1, 1]).unwrap(), poly(&[1]));
        assert_eq!(e3.terms().count(), 1);
        assert_eq!(elementary_symmetric(2, 2, 1).terms().count(), 0);
    }

    #[test]
    fn brackets() {
        assert_eq!(falling_bracket(1), poly(&[1]));
        assert_eq!(falling_bracket(2), poly(&[-1, 1]));
        assert_eq!(falling_bracket(3), poly(&[1, -3, 2]));
        assert_eq!(rising_bracket(2), poly(&[0, -1, 1]));
    }

    #[test]
    fn chains_series_coefficients() {
        let one = chains_gf_rhs(1, 5);
        for a in 0..=5 {
            assert_eq!(one.coefficient(&[a]).unwrap(), poly(&[1]));
        }
        let two = chains_gf_rhs(2, 4);
        assert_eq!(two.coefficient(&[1, 1]).unwrap(), poly(&[1, 1]));
        assert_eq!(two.coefficient(&[2, 2]).unwrap(), poly(&[1, 4, 1]));
        assert_eq!(two.coefficient(&[0, 0]).unwrap(), poly(&[1]));
        let three = chains_gf_rhs(3, 6);
        assert_eq!(three.coefficient(&[1, 1, 1]).unwrap(), poly(&[1, 3, 2]));
        assert_eq!(
            three.coefficient(&[2, 2, 2]).unwrap(),
            poly(&[1, 12, 43, 30, 4])
        );
        assert_eq!(
            three.coefficient(&[3, 3, 1]),
            Err(Error::DegreeExceeded { total: 7, max: 6 })
        );
    }

    #[test]
    fn inverse_is_exact() {
        let s = weighted_elementary(3, 5, falling_bracket);
        let inv = s.inverse_of_one_minus().unwrap();
        let one = TruncatedSeries::one(3, 5);
        assert_eq!(one.sub(&s).mul(&inv), one);
        assert!(one.inverse_of_one_minus().is_err());
    }

    #[test]
    fn verification_rows() {
        let rows = verify_chains_gf(2, 6);
        assert_eq!(rows.len(), 28);
        assert!(rows.iter().all(VerifyRow::matches));
        assert_eq!(rows[0].to_string(), "0,0 : 1 : MATCH");
        let row = rows.iter().find(|r| r.exponent == [2, 2]).unwrap();
        assert_eq!(row.to_string(), "2,2 : 1 + 4*t + t^2 : MATCH");
    }

    #[test]
    fn specialized_identity_and_substitution() {
        let lhs = specialized_lhs(2, 5);
        assert_eq!(lhs, specialized_rhs(2, 5));
        assert_eq!(lhs.reciprocal_substitution().unwrap(), chains_gf_rhs(2, 5));
    }

    #[test]
    fn stirling_rows() {
        for n in 0..=7 {
            assert!(stirling_row_check(n), "n = {n}");
        }
        assert_eq!(stirling_first(3), [0, 2, 3, 1].map(BigInt::from).to_vec());
        assert_eq!(cycle_counts_brute_force(4), stirling_first(4));
    }
}

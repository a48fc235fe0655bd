//! Exact counting of distinct real roots with Sturm sequences over the
//! rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn to_rational(p: &IntPolynomial) -> RatPoly {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn derivative(p: &RatPoly) -> RatPoly {
    let mut d: RatPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect();
    trim(&mut d);
    d
}

/// Quotient and remainder of `num / den`; `den` must be nonzero.
fn div_rem(num: &RatPoly, den: &RatPoly) -> (RatPoly, RatPoly) {
    let mut rem = num.clone();
    let dl = den.len();
    let lead = den[dl - 1].clone();
    let mut quot = vec![BigRational::zero(); num.len().saturating_sub(dl) + 1];
    while rem.len() >= dl {
        let shift = rem.len() - dl;
        let factor = &rem[rem.len() - 1] / &lead;
        for (k, c) in den.iter().enumerate() {
            rem[shift + k] -= &factor * c;
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots of `p` on the whole real line.
pub fn count_real_roots(p: &IntPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = to_rational(p);
    let g = gcd(&p, &derivative(&p));
    let (square_free, _) = div_rem(&p, &g);

    let mut seq = vec![square_free.clone(), derivative(&square_free)];
    while seq.last().is_some_and(|q| !q.is_empty()) {
        let n = seq.len();
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq.retain(|q| !q.is_empty());

    let at_pos_inf = sign_changes(seq.iter().map(|q| sign(q.last().unwrap())));
    let at_neg_inf = sign_changes(seq.iter().map(|q| {
        let s = sign(q.last().unwrap());
        if (q.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    Ok(at_neg_inf - at_pos_inf)
}

/// `p(r)` for a rational `r`; used to spot-check root locations.
pub fn eval_rational(p: &IntPolynomial, r: &BigRational) -> BigRational {
    p.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * r + BigRational::from_integer(c.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            count_real_roots(&IntPolynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn constants_and_linear() {
        assert_eq!(count_real_roots(&poly(&[5])).unwrap(), 0);
        assert_eq!(count_real_roots(&poly(&[1, 2])).unwrap(), 1);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (t - 1)^2 (t + 2)
        let p = &(&poly(&[-1, 1]) * &poly(&[-1, 1])) * &poly(&[2, 1]);
        assert_eq!(count_real_roots(&p).unwrap(), 2);
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(count_real_roots(&poly(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_real_roots(&poly(&[1, 0, 0, 0, 1])).unwrap(), 0);
    }

    #[test]
    fn stirling_products_are_real_rooted() {
        for n in 1..=8i64 {
            let p: IntPolynomial = (0..n).map(|k| IntPolynomial::linear(k, 1)).product();
            assert_eq!(count_real_roots(&p).unwrap(), (n - 1) as usize);
        }
    }

    #[test]
    fn non_real_rooted_examples() {
        assert_eq!(count_real_roots(&poly(&[1, 12, 43, 30, 4])).unwrap(), 2);
        assert_eq!(count_real_roots(&poly(&[1, 9, 19, 11, 2])).unwrap(), 2);
    }

    #[test]
    fn rational_evaluation() {
        let p = poly(&[1, 2]);
        let r = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert!(eval_rational(&p, &r).is_zero());
    }
}

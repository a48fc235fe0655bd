//! Poincare polynomials of poset cones by four independent routes, and the
//! statistics over linear extensions that drive them.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::foata;
use crate::partition::{factorial, for_each_transverse};
use crate::poly::IntPolynomial;
use crate::poset::{bit, bits, ChainDecomposition, Poset};

/// A statistic on linear extensions computed one letter at a time.
///
/// `push` receives 1-based labels in word order. The final state yields the
/// exponent of `t` contributed by the extension.
pub trait ExtensionStatistic: Sync {
    type State: Copy + Send + Sync;

    fn initial(&self) -> Self::State;
    fn push(&self, state: Self::State, x: usize) -> Self::State;
    fn exponent(&self, state: &Self::State) -> usize;
}

#[derive(Clone, Copy)]
struct Node<S> {
    placed: u64,
    avail: u64,
    state: S,
}

fn advance<S: ExtensionStatistic>(
    p: &Poset,
    stat: &S,
    node: &Node<S::State>,
    x: usize,
) -> Node<S::State> {
    let placed = node.placed | bit(x);
    let mut avail = node.avail & !bit(x);
    for y in bits(p.above_mask(x)) {
        if p.below_mask(y) & !placed == 0 {
            avail |= bit(y);
        }
    }
    Node {
        placed,
        avail,
        state: stat.push(node.state, x + 1),
    }
}

fn dfs<S: ExtensionStatistic>(p: &Poset, stat: &S, node: Node<S::State>, hist: &mut [u64]) {
    if node.avail == 0 {
        hist[stat.exponent(&node.state)] += 1;
        return;
    }
    for x in bits(node.avail) {
        dfs(p, stat, advance(p, stat, &node, x), hist);
    }
}

/// Number of linear extensions with each exponent value, indexed by the
/// exponent. Work is split across the current rayon pool by word prefix;
/// counts are merged by addition so the result does not depend on the
/// number of workers.
pub fn extension_histogram<S: ExtensionStatistic>(p: &Poset, stat: &S) -> Vec<u64> {
    let len = p.len() + 1;
    let root = Node {
        placed: 0,
        avail: p.minimal_in(p.all_mask()),
        state: stat.initial(),
    };
    let target = 64 * rayon::current_num_threads().max(1);
    let mut frontier = vec![root];
    while frontier.len() < target && frontier.iter().any(|n| n.avail != 0) {
        frontier = frontier
            .iter()
            .flat_map(|node| {
                if node.avail == 0 {
                    vec![*node]
                } else {
                    bits(node.avail)
                        .map(|x| advance(p, stat, node, x))
                        .collect()
                }
            })
            .collect();
    }
    frontier
        .into_par_iter()
        .map(|node| {
            let mut hist = vec![0u64; len];
            dfs(p, stat, node, &mut hist);
            hist
        })
        .reduce(
            || vec![0u64; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn histogram_polynomial(hist: &[u64]) -> IntPolynomial {
    IntPolynomial::new(hist.iter().map(|&c| BigInt::from(c)).collect())
}

/// `n - LRmax_P(sigma)`, tracked incrementally.
pub struct LrMaxStatistic<'a> {
    poset: &'a Poset,
}

#[derive(Clone, Copy)]
pub struct LrMaxState {
    current: u64,
    previous: u64,
    level: usize,
    running_max: usize,
    count: usize,
}

impl<'a> LrMaxStatistic<'a> {
    pub fn new(poset: &'a Poset) -> Self {
        LrMaxStatistic { poset }
    }
}

impl ExtensionStatistic for LrMaxStatistic<'_> {
    type State = LrMaxState;

    fn initial(&self) -> LrMaxState {
        LrMaxState {
            current: 0,
            previous: 0,
            level: 0,
            running_max: 0,
            count: 0,
        }
    }

    fn push(&self, mut s: LrMaxState, x: usize) -> LrMaxState {
        let below = self.poset.below_mask(x - 1);
        if s.level == 0 || below & s.current != 0 {
            s.level += 1;
            s.previous = s.current;
            s.current = 0;
            s.running_max = 0;
        }
        s.current |= bit(x - 1);
        let essential = s.level == 1 || below & s.previous != 0;
        if essential && x > s.running_max {
            s.running_max = x;
            s.count += 1;
        }
        s
    }

    fn exponent(&self, s: &LrMaxState) -> usize {
        self.poset.len() - s.count
    }
}

/// Descents of the pattern (second chain, first chain) between
/// incomparable neighbours.
pub struct Width2Descents<'a> {
    poset: &'a Poset,
    first: u64,
}

impl<'a> Width2Descents<'a> {
    pub fn new(poset: &'a Poset, d: &ChainDecomposition) -> Result<Self> {
        d.validate(poset)?;
        Ok(Width2Descents {
            poset,
            first: d.first_mask(),
        })
    }
}

impl ExtensionStatistic for Width2Descents<'_> {
    type State = (usize, usize);

    fn initial(&self) -> (usize, usize) {
        (0, 0)
    }

    fn push(&self, (last, count): (usize, usize), x: usize) -> (usize, usize) {
        let hit = last != 0
            && self.first & bit(last - 1) == 0
            && self.first & bit(x - 1) != 0
            && !self.poset.comparable(last, x);
        (x, count + usize::from(hit))
    }

    fn exponent(&self, s: &(usize, usize)) -> usize {
        s.1
    }
}

/// Plain descents `sigma_i > sigma_{i+1}`.
pub struct Descents;

impl ExtensionStatistic for Descents {
    type State = (usize, usize);

    fn initial(&self) -> (usize, usize) {
        (0, 0)
    }

    fn push(&self, (last, count): (usize, usize), x: usize) -> (usize, usize) {
        (x, count + usize::from(last > x))
    }

    fn exponent(&self, s: &(usize, usize)) -> usize {
        s.1
    }
}

/// Sum over transverse partitions of `prod (|B| - 1)! * t^(n - #blocks)`.
pub fn poincare_via_transverse(p: &Poset) -> IntPolynomial {
    let n = p.len();
    let facts: Vec<BigUint> = (0..=n).map(factorial).collect();
    let mut coeffs = vec![BigUint::zero(); n + 1];
    for_each_transverse(p, |blocks| {
        let weight = blocks.iter().fold(BigUint::one(), |acc, b| {
            acc * &facts[b.count_ones() as usize - 1]
        });
        coeffs[n - blocks.len()] += weight;
    });
    IntPolynomial::new(coeffs.into_iter().map(BigInt::from).collect())
}

/// Sum over linear extensions of `t^(n - LRmax_P(sigma))`.
pub fn poincare_via_lrmax(p: &Poset) -> IntPolynomial {
    histogram_polynomial(&extension_histogram(p, &LrMaxStatistic::new(p)))
}

/// Sum over rearrangements of the multiset `1^a1 ... l^al` of
/// `t^(|a| - fcyc)`.
pub fn poincare_via_foata(a: &[usize]) -> IntPolynomial {
    let n: usize = a.iter().sum();
    let mut hist = vec![0u64; n + 1];
    for sigma in foata::enumerate_multiset_perms(a) {
        hist[n - foata::fcyc(&sigma)] += 1;
    }
    histogram_polynomial(&hist)
}

/// Sum over linear extensions of `t^des_{P1,P2}(sigma)`.
pub fn poincare_via_width2(p: &Poset, d: &ChainDecomposition) -> Result<IntPolynomial> {
    let stat = Width2Descents::new(p, d)?;
    Ok(histogram_polynomial(&extension_histogram(p, &stat)))
}

/// Descent generating polynomial over linear extensions of a naturally
/// labeled poset.
pub fn p_eulerian(p: &Poset) -> Result<IntPolynomial> {
    if !p.is_naturally_labeled() {
        return Err(Error::NotNaturallyLabeled);
    }
    Ok(histogram_polynomial(&extension_histogram(p, &Descents)))
}

/// Whitney numbers `c_0..c_n`, zero padded to length `n + 1`.
pub fn whitney_numbers(p: &Poset) -> Vec<BigInt> {
    poincare_via_transverse(p).padded(p.len() + 1)
}

/// Algorithm choice for [`poincare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    Transverse,
    LrMax,
    Foata,
    Width2,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Auto,
        Method::Transverse,
        Method::LrMax,
        Method::Foata,
        Method::Width2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Transverse => "transverse",
            Method::LrMax => "lrmax",
            Method::Foata => "foata",
            Method::Width2 => "width2",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown method {s:?}")))
    }
}

/// Width-two descents for large width-two posets, transverse enumeration
/// for small posets, P-left-to-right maxima otherwise.
pub fn auto_method(p: &Poset) -> Method {
    let n = p.len();
    if n > 12 && p.width() <= 2 {
        Method::Width2
    } else if n <= 10 {
        Method::Transverse
    } else {
        Method::LrMax
    }
}

pub fn poincare(p: &Poset, method: Method) -> Result<IntPolynomial> {
    match method {
        Method::Auto => poincare(p, auto_method(p)),
        Method::Transverse => Ok(poincare_via_transverse(p)),
        Method::LrMax => Ok(poincare_via_lrmax(p)),
        Method::Foata => Ok(poincare_via_foata(&p.chain_lengths()?)),
        Method::Width2 => poincare_via_width2(p, &p.chain_cover_width2()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijections::lrmax_count;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn stirling_product(n: i64) -> IntPolynomial {
        (0..n).map(|k| IntPolynomial::linear(k, 1)).product()
    }

    #[test]
    fn transverse_route_on_small_examples() {
        let one = Poset::from_relations(4, &[(3, 4)]).unwrap();
        assert_eq!(poincare_via_transverse(&one), poly(&[1, 5, 6]));
        let two = Poset::from_relations(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(poincare_via_transverse(&two), poly(&[1, 4, 1]));
        assert_eq!(
            poincare_via_transverse(&Poset::antichain(3)),
            poly(&[1, 3, 2])
        );
        assert_eq!(poincare_via_transverse(&Poset::chain(5)), poly(&[1]));
        assert_eq!(
            poincare_via_transverse(&Poset::grid(3, 3)),
            poly(&[1, 9, 19, 11, 2])
        );
        assert_eq!(poincare_via_transverse(&Poset::antichain(0)), poly(&[1]));
    }

    #[test]
    fn lrmax_route_matches_transverse() {
        for p in [
            Poset::from_relations(4, &[(3, 4)]).unwrap(),
            Poset::grid(3, 3),
            Poset::grid(2, 4),
            Poset::union_of_chains(&[2, 1, 2]),
            Poset::chain(4),
            Poset::antichain(0),
        ] {
            assert_eq!(poincare_via_lrmax(&p), poincare_via_transverse(&p));
        }
        for n in 1..=6 {
            assert_eq!(
                poincare_via_lrmax(&Poset::antichain(n)),
                stirling_product(n as i64)
            );
        }
    }

    #[test]
    fn incremental_lrmax_matches_level_decomposition() {
        let p = Poset::grid(2, 3).ordinal_sum(&Poset::antichain(2));
        let stat = LrMaxStatistic::new(&p);
        for sigma in p.linear_extensions() {
            let s = sigma.iter().fold(stat.initial(), |s, &x| stat.push(s, x));
            assert_eq!(
                p.len() - stat.exponent(&s),
                lrmax_count(&p, &sigma).unwrap()
            );
        }
    }

    #[test]
    fn histogram_counts_every_extension() {
        let p = Poset::grid(3, 4);
        let hist = extension_histogram(&p, &Descents);
        let total: u64 = hist.iter().sum();
        assert_eq!(BigUint::from(total), p.count_linear_extensions());
    }

    #[test]
    fn width_two_route() {
        let p = Poset::grid(2, 3);
        let rows = ChainDecomposition::from_sets(&p, &[1, 2, 3], &[4, 5, 6]).unwrap();
        assert_eq!(poincare_via_width2(&p, &rows).unwrap(), poly(&[1, 3, 1]));
        let c = Poset::union_of_chains(&[2, 2]);
        let d = c.chain_cover_width2().unwrap();
        assert_eq!(poincare_via_width2(&c, &d).unwrap(), poly(&[1, 4, 1]));
        let bad = ChainDecomposition {
            first: vec![1, 2],
            second: vec![3],
        };
        assert!(poincare_via_width2(&Poset::antichain(3), &bad).is_err());
    }

    #[test]
    fn foata_route() {
        assert_eq!(poincare_via_foata(&[2, 2]), poly(&[1, 4, 1]));
        assert_eq!(poincare_via_foata(&[2, 2, 2]), poly(&[1, 12, 43, 30, 4]));
        assert_eq!(poincare_via_foata(&[1, 1, 1]), poly(&[1, 3, 2]));
        assert_eq!(poincare_via_foata(&[]), poly(&[1]));
    }

    #[test]
    fn eulerian_polynomials() {
        assert_eq!(p_eulerian(&Poset::antichain(3)).unwrap(), poly(&[1, 4, 1]));
        assert_eq!(p_eulerian(&Poset::chain(4)).unwrap(), poly(&[1]));
        let p = Poset::grid(2, 4);
        let d = ChainDecomposition::from_sets(&p, &[1, 2, 3, 4], &[5, 6, 7, 8]).unwrap();
        assert_eq!(
            p_eulerian(&p).unwrap(),
            poincare_via_width2(&p, &d).unwrap()
        );
        let unnatural = Poset::from_relations(2, &[(2, 1)]).unwrap();
        assert_eq!(p_eulerian(&unnatural), Err(Error::NotNaturallyLabeled));
    }

    #[test]
    fn whitney_number_padding() {
        let p = Poset::from_relations(4, &[(3, 4)]).unwrap();
        let w: Vec<BigInt> = whitney_numbers(&p);
        assert_eq!(w, [1, 5, 6, 0, 0].map(BigInt::from).to_vec());
        assert_eq!(whitney_numbers(&Poset::antichain(0)), vec![BigInt::from(1)]);
    }

    #[test]
    fn method_dispatch() {
        assert_eq!("lrmax".parse::<Method>().unwrap(), Method::LrMax);
        assert!("nope".parse::<Method>().is_err());
        assert_eq!(auto_method(&Poset::grid(2, 7)), Method::Width2);
        assert_eq!(auto_method(&Poset::grid(3, 3)), Method::Transverse);
        assert_eq!(auto_method(&Poset::grid(3, 4)), Method::LrMax);
        let g = Poset::grid(3, 3);
        for m in [Method::Auto, Method::Transverse, Method::LrMax] {
            assert_eq!(poincare(&g, m).unwrap(), poly(&[1, 9, 19, 11, 2]));
        }
        assert_eq!(poincare(&g, Method::Foata), Err(Error::NotDisjointChains));
        assert!(matches!(
            poincare(&g, Method::Width2),
            Err(Error::WidthExceeded(3))
        ));
        let c = Poset::union_of_chains(&[2, 2]);
        assert_eq!(poincare(&c, Method::Foata).unwrap(), poly(&[1, 4, 1]));
    }
}

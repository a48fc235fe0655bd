//! Multiset permutations under the intercalation product: prime cycle
//! factorizations, the dependence poset of a factorization, and the map from
//! linear extensions of a disjoint union of chains to transverse
//! permutations.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;

use crate::bijections::Permutation;
use crate::error::{Error, Result};
use crate::partition::is_transverse;
use crate::poset::Poset;

/// A two-line array whose columns are `(top, bottom)` pairs over the
/// alphabet `1..=l`. Tops are weakly increasing; columns with equal tops
/// keep their order. The bottom row rearranges the top row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetPermutation {
    columns: Vec<(usize, usize)>,
}

fn letter_counts(letters: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut counts = Vec::new();
    for x in letters {
        if counts.len() < x {
            counts.resize(x, 0);
        }
        counts[x - 1] += 1;
    }
    counts
}

impl MultisetPermutation {
    /// The empty permutation, identity for the product.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(columns: Vec<(usize, usize)>) -> Result<Self> {
        if columns.iter().any(|&(t, b)| t == 0 || b == 0) {
            return Err(Error::SupportMismatch("letters start at 1".into()));
        }
        if columns.windows(2).any(|w| w[0].0 > w[1].0) {
            return Err(Error::SupportMismatch(
                "top row must be weakly increasing".into(),
            ));
        }
        let tops = letter_counts(columns.iter().map(|c| c.0));
        let bottoms = letter_counts(columns.iter().map(|c| c.1));
        if tops != bottoms {
            return Err(Error::SupportMismatch(
                "bottom row is not a rearrangement of the top row".into(),
            ));
        }
        Ok(MultisetPermutation { columns })
    }

    pub fn from_rows(top: &[usize], bottom: &[usize]) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::SupportMismatch("rows differ in length".into()));
        }
        Self::new(top.iter().copied().zip(bottom.iter().copied()).collect())
    }

    /// The element with support `a` and the given bottom row.
    pub fn from_word(a: &[usize], bottom: &[usize]) -> Result<Self> {
        let top = sorted_top(a);
        if letter_counts(bottom.iter().copied()) != trimmed(a) || bottom.len() != top.len() {
            return Err(Error::SupportMismatch(format!(
                "word {bottom:?} does not have support {a:?}"
            )));
        }
        Self::from_rows(&top, bottom)
    }

    pub fn columns(&self) -> &[(usize, usize)] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn top(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.0).collect()
    }

    pub fn bottom(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.1).collect()
    }

    /// Multiplicity of each letter `1..=l`, where `l` is the largest letter.
    pub fn support(&self) -> Vec<usize> {
        letter_counts(self.columns.iter().map(|c| c.0))
    }

    /// Letters occurring, as a bit mask over 0-based letters.
    fn letter_mask(&self) -> u128 {
        self.columns
            .iter()
            .fold(0, |acc, c| acc | 1u128 << (c.0 - 1))
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.letter_mask() & other.letter_mask() == 0
    }

    /// Parses `top;bottom` with comma-separated rows.
    pub fn parse(text: &str) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (top, bottom) = text
            .split_once(';')
            .ok_or_else(|| Error::parse(1, "expected 'top;bottom'"))?;
        let top = parse_row(top)?;
        let bottom = parse_row(bottom)?;
        Self::from_rows(&top, &bottom).map_err(|e| Error::parse(1, e.to_string()))
    }

    /// Bottom row only, in the form `b1,b2,...`, with a separate support.
    pub fn parse_word(text: &str, a: &[usize]) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bottom = parse_row(&text)?;
        Self::from_word(a, &bottom).map_err(|e| Error::parse(1, e.to_string()))
    }

    /// Two-line display `(1 2 3 / 2 3 1)`.
    pub fn to_two_line(&self) -> String {
        let row = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        format!("({} / {})", row(self.top()), row(self.bottom()))
    }
}

/// `top;bottom`.
impl fmt::Display for MultisetPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", row(self.top()), row(self.bottom()))
    }
}

fn parse_row(text: &str) -> Result<Vec<usize>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| Error::parse(1, format!("bad letter {f:?}")))
        })
        .collect()
}

fn trimmed(a: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `1^a1 2^a2 ...` in weakly increasing order.
fn sorted_top(a: &[usize]) -> Vec<usize> {
    a.iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i + 1, k))
        .collect()
}

/// Juxtapose the columns and stably sort them by top entry.
pub fn intercalation(rho: &MultisetPermutation, tau: &MultisetPermutation) -> MultisetPermutation {
    let mut columns = rho.columns.clone();
    columns.extend_from_slice(&tau.columns);
    columns.sort_by_key(|c| c.0);
    MultisetPermutation { columns }
}

/// Intercalation of a sequence of factors, left to right.
pub fn intercalate_all<'a>(
    factors: impl IntoIterator<Item = &'a MultisetPermutation>,
) -> MultisetPermutation {
    factors
        .into_iter()
        .fold(MultisetPermutation::empty(), |acc, f| {
            intercalation(&acc, f)
        })
}

/// Multiplicity-free support forming a single cycle.
pub fn is_prime(sigma: &MultisetPermutation) -> bool {
    if sigma.is_empty() || sigma.support().iter().any(|&k| k > 1) {
        return false;
    }
    let image = |x: usize| {
        sigma
            .columns
            .iter()
            .find(|c| c.0 == x)
            .map(|c| c.1)
            .expect("bottom letters occur on top")
    };
    let start = sigma.columns[0].0;
    let mut x = image(start);
    let mut length = 1;
    while x != start {
        x = image(x);
        length += 1;
    }
    length == sigma.len()
}

/// Column indices of each prime factor in left-greedy order, each sorted by
/// top entry.
pub fn prime_factor_columns(sigma: &MultisetPermutation) -> Vec<Vec<usize>> {
    let letters = sigma.support().len();
    let mut queues: Vec<VecDeque<usize>> = vec![VecDeque::new(); letters];
    for (k, &(top, _)) in sigma.columns.iter().enumerate() {
        queues[top - 1].push_back(k);
    }
    let mut factors = Vec::new();
    let mut position = vec![usize::MAX; letters];
    while let Some(start) = queues.iter().position(|q| !q.is_empty()) {
        let mut path: Vec<usize> = Vec::new();
        let mut v = start;
        let circuit_from = loop {
            position[v] = path.len();
            let col = *queues[v].front().expect("in-degree equals out-degree");
            path.push(col);
            let next = sigma.columns[col].1 - 1;
            if position[next] != usize::MAX {
                break position[next];
            }
            v = next;
        };
        for &col in &path {
            position[sigma.columns[col].0 - 1] = usize::MAX;
        }
        let mut circuit = path[circuit_from..].to_vec();
        for &col in &circuit {
            queues[sigma.columns[col].0 - 1].pop_front();
        }
        circuit.sort_by_key(|&col| sigma.columns[col].0);
        factors.push(circuit);
    }
    factors
}

/// An ordered sequence of prime cycles whose intercalation is the element
/// it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub factors: Vec<MultisetPermutation>,
}

impl PrimeFactorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> MultisetPermutation {
        intercalate_all(&self.factors)
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            f.write_str(&factor.to_two_line())?;
        }
        Ok(())
    }
}

/// Left-greedy factorization: walk from the smallest letter with columns
/// left, always following the first remaining column of each letter, until
/// a letter repeats; the closed circuit is the next factor.
pub fn prime_decompose(sigma: &MultisetPermutation) -> PrimeFactorization {
    let factors = prime_factor_columns(sigma)
        .into_iter()
        .map(|cols| MultisetPermutation {
            columns: cols.iter().map(|&c| sigma.columns[c]).collect(),
        })
        .collect();
    PrimeFactorization { factors }
}

/// Number of prime cycles in any factorization.
pub fn fcyc(sigma: &MultisetPermutation) -> usize {
    prime_factor_columns(sigma).len()
}

/// Order on factor positions `1..=k`: `i < j` when `i < j` as integers and
/// the two factors share a letter, closed transitively.
pub fn dependence_poset(factors: &PrimeFactorization) -> Result<Poset> {
    let f = &factors.factors;
    let mut relations = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if !f[i].is_disjoint_from(&f[j]) {
                relations.push((i + 1, j + 1));
            }
        }
    }
    Poset::from_relations(f.len(), &relations)
}

/// Number of distinct ordered prime factorizations of `sigma`.
pub fn factorization_count(sigma: &MultisetPermutation) -> Result<BigUint> {
    Ok(dependence_poset(&prime_decompose(sigma))?.count_linear_extensions())
}

/// Chain index of each standardized label of `union_of_chains(a)`.
fn chain_of_labels(a: &[usize]) -> Vec<usize> {
    sorted_top(a)
}

/// Replace each letter of a linear extension of `union_of_chains(a)` by the
/// index of its chain.
pub fn multiset_encode(a: &[usize], lambda: &[usize]) -> Result<MultisetPermutation> {
    Poset::union_of_chains(a).check_linear_extension(lambda)?;
    let chain = chain_of_labels(a);
    let bottom: Vec<usize> = lambda.iter().map(|&x| chain[x - 1]).collect();
    MultisetPermutation::from_rows(&chain, &bottom)
}

/// Label the occurrences of each letter `i` left to right by the labels of
/// chain `i`, bottom to top.
pub fn multiset_decode(a: &[usize], sigma: &MultisetPermutation) -> Result<Vec<usize>> {
    if sigma.support() != trimmed(a) {
        return Err(Error::SupportMismatch(format!(
            "support {:?} differs from {a:?}",
            sigma.support()
        )));
    }
    let mut next: Vec<usize> = a
        .iter()
        .scan(0, |acc, &k| {
            let start = *acc + 1;
            *acc += k;
            Some(start)
        })
        .collect();
    Ok(sigma
        .bottom()
        .iter()
        .map(|&i| {
            let label = next[i - 1];
            next[i - 1] += 1;
            label
        })
        .collect())
}

/// Subscript the top line by position, factor into prime cycles, and read
/// each factor as a cycle on its subscripts.
pub fn foata_phi(a: &[usize], lambda: &[usize]) -> Result<Permutation> {
    let sigma = multiset_encode(a, lambda)?;
    let cycles: Vec<Vec<usize>> = prime_factor_columns(&sigma)
        .into_iter()
        .map(|cols| foata_cycle(&sigma, &cols))
        .collect();
    Permutation::from_cycles(lambda.len(), &cycles)
}

/// The cycle `c -> column of the factor whose top is bottom(c)`, on 1-based
/// column positions, starting at the factor's first column.
fn foata_cycle(sigma: &MultisetPermutation, cols: &[usize]) -> Vec<usize> {
    let by_top = |letter: usize| {
        *cols
            .iter()
            .find(|&&c| sigma.columns[c].0 == letter)
            .expect("prime factor is closed")
    };
    let mut cycle = Vec::with_capacity(cols.len());
    let mut c = cols[0];
    loop {
        cycle.push(c + 1);
        c = by_top(sigma.columns[c].1);
        if c == cols[0] {
            break cycle;
        }
    }
}

/// The prime cycles of a transverse permutation, placed in an order where
/// any two cycles on a common chain appear with the smaller label first,
/// intercalated and decoded. Among unconstrained cycles the one with the
/// smallest least label goes first.
pub fn foata_phi_inv(a: &[usize], tau: &Permutation) -> Result<Vec<usize>> {
    let poset = Poset::union_of_chains(a);
    if tau.len() != poset.len() {
        return Err(Error::NotTransverse(format!(
            "permutation has size {}, expected {}",
            tau.len(),
            poset.len()
        )));
    }
    if !is_transverse(&poset, &tau.cycle_partition())? {
        return Err(Error::NotTransverse(format!(
            "{} is not transverse for chains {a:?}",
            tau.to_cycle_string()
        )));
    }
    let chain = chain_of_labels(a);
    let cycles = tau.cycles();
    let letters = a.len();
    // Label of each cycle on each chain it meets.
    let on_chain: Vec<Vec<Option<usize>>> = cycles
        .iter()
        .map(|c| {
            let mut v = vec![None; letters];
            for &x in c {
                v[chain[x - 1] - 1] = Some(x);
            }
            v
        })
        .collect();
    let k = cycles.len();
    let mut indegree = vec![0usize; k];
    let mut after: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..k {
            let before = (0..letters).any(|l| match (on_chain[i][l], on_chain[j][l]) {
                (Some(x), Some(y)) => x < y,
                _ => false,
            });
            if before {
                after[i].push(j);
                indegree[j] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut done = vec![false; k];
    for _ in 0..k {
        let next = (0..k)
            .filter(|&i| !done[i] && indegree[i] == 0)
            .min_by_key(|&i| cycles[i][0])
            .ok_or_else(|| Error::NotTransverse("cycle order is contradictory".into()))?;
        done[next] = true;
        for &j in &after[next] {
            indegree[j] -= 1;
        }
        order.push(next);
    }
    let factors: Vec<MultisetPermutation> = order
        .iter()
        .map(|&i| {
            let mut columns: Vec<(usize, usize)> = cycles[i]
                .iter()
                .map(|&x| (chain[x - 1], chain[tau.apply(x) - 1]))
                .collect();
            columns.sort();
            MultisetPermutation { columns }
        })
        .collect();
    multiset_decode(a, &intercalate_all(&factors))
}

/// All elements with support `a`, bottom rows in lexicographic order.
pub fn enumerate_multiset_perms(a: &[usize]) -> MultisetPerms {
    let top = sorted_top(a);
    MultisetPerms {
        bottom: Some(top.clone()),
        top,
    }
}

pub struct MultisetPerms {
    top: Vec<usize>,
    bottom: Option<Vec<usize>>,
}

impl Iterator for MultisetPerms {
    type Item = MultisetPermutation;

    fn next(&mut self) -> Option<MultisetPermutation> {
        let current = self.bottom.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.bottom = Some(succ);
        }
        Some(MultisetPermutation {
            columns: self.top.iter().copied().zip(current).collect(),
        })
    }
}

/// Advance to the lexicographically next arrangement; false at the last.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("v[i] qualifies");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(top: &[usize], bottom: &[usize]) -> MultisetPermutation {
        MultisetPermutation::from_rows(top, bottom).unwrap()
    }

    fn example() -> MultisetPermutation {
        ms(
            &[1, 1, 2, 2, 2, 3, 3, 4, 4, 4],
            &[2, 4, 4, 3, 1, 2, 1, 3, 4, 2],
        )
    }

    #[test]
    fn validation_and_text() {
        assert!(MultisetPermutation::from_rows(&[2, 1], &[1, 2]).is_err());
        assert!(MultisetPermutation::from_rows(&[1, 2], &[1, 1]).is_err());
        let s = example();
        assert_eq!(s.to_string(), "1,1,2,2,2,3,3,4,4,4;2,4,4,3,1,2,1,3,4,2");
        assert_eq!(MultisetPermutation::parse(&s.to_string()).unwrap(), s);
        assert_eq!(
            MultisetPermutation::parse_word("2,4,4,3,1,2,1,3,4,2", &[2, 3, 2, 3]).unwrap(),
            s
        );
        assert!(MultisetPermutation::parse_word("2,4", &[2, 3, 2, 3]).is_err());
        assert_eq!(s.support(), vec![2, 3, 2, 3]);
    }

    #[test]
    fn intercalation_examples() {
        let left = ms(&[2, 3, 4], &[4, 2, 3]);
        let right = ms(&[1, 1, 2, 2, 3, 4, 4], &[2, 4, 3, 1, 1, 4, 2]);
        assert_eq!(intercalation(&left, &right), example());
        let e = MultisetPermutation::empty();
        assert_eq!(intercalation(&e, &left), left);
        assert_eq!(intercalation(&left, &e), left);
        let a = ms(&[1, 2], &[2, 1]);
        let b = ms(&[1, 3], &[3, 1]);
        assert_eq!(intercalation(&a, &b), ms(&[1, 1, 2, 3], &[2, 3, 1, 1]));
        assert_eq!(intercalation(&b, &a), ms(&[1, 1, 2, 3], &[3, 2, 1, 1]));
    }

    #[test]
    fn prime_recognition() {
        assert!(is_prime(&ms(&[2, 4, 5, 7], &[5, 7, 4, 2])));
        assert!(!is_prime(&ms(&[1, 1, 2, 3], &[2, 3, 1, 1])));
        assert!(!is_prime(&ms(&[2, 4, 5, 7], &[5, 7, 2, 4])));
        assert!(is_prime(&ms(&[3], &[3])));
        assert!(!is_prime(&MultisetPermutation::empty()));
    }

    #[test]
    fn decomposition_of_example() {
        let f = prime_decompose(&example());
        let expected = [
            ms(&[2, 3, 4], &[4, 2, 3]),
            ms(&[1, 2, 3], &[2, 3, 1]),
            ms(&[4], &[4]),
            ms(&[1, 2, 4], &[4, 1, 2]),
        ];
        assert_eq!(f.factors, expected);
        assert_eq!(f.product(), example());
        assert_eq!(fcyc(&example()), 4);
        assert!(f.factors.iter().all(is_prime));
    }

    #[test]
    fn dependence_poset_of_example() {
        let f = prime_decompose(&example());
        let p = dependence_poset(&f).unwrap();
        assert_eq!(p.count_linear_extensions(), BigUint::from(2u32));
        assert_eq!(
            factorization_count(&example()).unwrap(),
            BigUint::from(2u32)
        );
        let disjoint = ms(&[1, 2, 3], &[1, 3, 2]);
        assert_eq!(factorization_count(&disjoint).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn encoding_running_example() {
        let a = [2, 3, 2, 3];
        let lambda = [3, 8, 9, 6, 1, 4, 2, 7, 10, 5];
        let s = multiset_encode(&a, &lambda).unwrap();
        assert_eq!(s, example());
        assert_eq!(multiset_decode(&a, &s).unwrap(), lambda.to_vec());
        assert!(multiset_decode(&[2, 3, 2, 2], &s).is_err());
        assert!(multiset_encode(&a, &[4, 3, 1, 2, 5, 6, 7, 8, 9, 10]).is_err());
    }

    #[test]
    fn phi_on_running_example() {
        let a = [2, 3, 2, 3];
        let lambda = [3, 8, 9, 6, 1, 4, 2, 7, 10, 5];
        let tau = foata_phi(&a, &lambda).unwrap();
        let expected = Permutation::parse("(3,8,6)(1,4,7)(9)(2,10,5)", None).unwrap();
        assert_eq!(tau, expected);
        assert_eq!(foata_phi_inv(&a, &tau).unwrap(), lambda.to_vec());
    }

    #[test]
    fn phi_inv_on_single_chain() {
        let tau = Permutation::identity(4);
        assert_eq!(foata_phi_inv(&[4], &tau).unwrap(), vec![1, 2, 3, 4]);
        let swap = Permutation::parse("(1,2)", Some(4)).unwrap();
        assert!(matches!(
            foata_phi_inv(&[4], &swap),
            Err(Error::NotTransverse(_))
        ));
    }

    #[test]
    fn multiset_enumeration_sizes() {
        assert_eq!(enumerate_multiset_perms(&[1, 1]).count(), 2);
        assert_eq!(enumerate_multiset_perms(&[2, 2]).count(), 6);
        assert_eq!(enumerate_multiset_perms(&[2, 3]).count(), 10);
        assert_eq!(enumerate_multiset_perms(&[]).count(), 1);
        let words: Vec<Vec<usize>> = enumerate_multiset_perms(&[1, 2])
            .map(|s| s.bottom())
            .collect();
        assert_eq!(words, vec![vec![1, 2, 2], vec![2, 1, 2], vec![2, 2, 1]]);
    }

    #[test]
    fn fixed_rearrangement_has_all_singleton_cycles() {
        let s = ms(&[1, 1, 2, 3, 3], &[1, 1, 2, 3, 3]);
        assert_eq!(fcyc(&s), 5);
    }
}

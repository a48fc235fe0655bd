//! Finite posets on `{1..n}` stored as bit-packed strict relation rows.
//!
//! All public functions speak 1-based labels. Internally element `i` is bit
//! `i - 1` of a `u64`, which caps posets at [`MAX_ELEMENTS`] elements.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the set bits of `mask` in increasing order (0-based).
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A strict partial order on `{1..n}`.
///
/// `below[j]` holds the elements strictly below `j`, `above[i]` the elements
/// strictly above `i` (both 0-based bit masks). The relation is always
/// transitively closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    below: Vec<u64>,
    above: Vec<u64>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.cover_relations())
            .finish()
    }
}

impl Poset {
    /// The transitive closure of the given strict relations `i < j`.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut above = vec![0u64; n];
        for &(i, j) in pairs {
            for index in [i, j] {
                if index == 0 || index > n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if i == j {
                return Err(Error::CycleDetected(i, j));
            }
            above[i - 1] |= bit(j - 1);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = above[k];
            for row in above.iter_mut() {
                if *row & bit(k) != 0 {
                    *row |= row_k;
                }
            }
        }
        for (i, row) in above.iter().enumerate() {
            if row & bit(i) != 0 {
                let j = bits(*row)
                    .find(|&j| j != i && above[j] & bit(i) != 0)
                    .unwrap_or(i);
                return Err(Error::CycleDetected(i + 1, j + 1));
            }
        }
        Ok(Self::from_above(above))
    }

    /// Build from an already transitively closed, acyclic `above` table.
    pub(crate) fn from_above(above: Vec<u64>) -> Poset {
        let n = above.len();
        let mut below = vec![0u64; n];
        for (i, row) in above.iter().enumerate() {
            for j in bits(*row) {
                below[j] |= bit(i);
            }
        }
        Poset { n, below, above }
    }

    pub fn antichain(n: usize) -> Poset {
        assert!(n <= MAX_ELEMENTS);
        Self::from_above(vec![0; n])
    }

    /// The total order `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Poset {
        Self::union_of_chains(&[n])
    }

    /// Disjoint union of chains of sizes `a[0], a[1], ...` in the
    /// standardized labeling: chain `i` occupies the consecutive labels
    /// after those of chains `0..i`, numbered bottom to top.
    pub fn union_of_chains(a: &[usize]) -> Poset {
        let n: usize = a.iter().sum();
        assert!(
            n <= MAX_ELEMENTS,
            "composition total exceeds {MAX_ELEMENTS}"
        );
        let mut above = vec![0u64; n];
        let mut start = 0;
        for &len in a {
            for (i, slot) in above.iter_mut().enumerate().skip(start).take(len) {
                *slot = full_mask(start + len) & !full_mask(i + 1);
            }
            start += len;
        }
        Self::from_above(above)
    }

    /// The product order `Chain(rows) x Chain(cols)`; cell `(r, c)` (0-based)
    /// gets label `r * cols + c + 1`, so each row is a chain and row 1 is an
    /// order ideal.
    pub fn grid(rows: usize, cols: usize) -> Poset {
        let n = rows * cols;
        assert!(n <= MAX_ELEMENTS);
        let mut above = vec![0u64; n];
        for r in 0..rows {
            for c in 0..cols {
                let i = r * cols + c;
                for r2 in r..rows {
                    for c2 in c..cols {
                        let j = r2 * cols + c2;
                        if j != i {
                            above[i] |= bit(j);
                        }
                    }
                }
            }
        }
        Self::from_above(above)
    }

    /// The same ground set with every relation reversed.
    pub fn opposite(&self) -> Poset {
        Poset {
            n: self.n,
            below: self.above.clone(),
            above: self.below.clone(),
        }
    }

    /// `self` followed by `other` relabeled by `+n`, with every element of
    /// `self` below every element of `other`.
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        self.combine(other, true)
    }

    /// `self` and `other` side by side, `other` relabeled by `+n`.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        self.combine(other, false)
    }

    fn combine(&self, other: &Poset, stacked: bool) -> Poset {
        let n = self.n + other.n;
        assert!(n <= MAX_ELEMENTS);
        let shift = self.n;
        let upper = full_mask(n) & !full_mask(shift);
        let mut above = Vec::with_capacity(n);
        for &row in &self.above {
            above.push(if stacked { row | upper } else { row });
        }
        for &row in &other.above {
            above.push(row << shift);
        }
        Self::from_above(above)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `i <_P j` for 1-based labels.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i - 1] & bit(j - 1) != 0
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    pub(crate) fn below_mask(&self, i0: usize) -> u64 {
        self.below[i0]
    }

    pub(crate) fn above_mask(&self, i0: usize) -> u64 {
        self.above[i0]
    }

    pub(crate) fn all_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Elements of `within` that have nothing below them inside `within`.
    pub(crate) fn minimal_in(&self, within: u64) -> u64 {
        bits(within)
            .filter(|&i| self.below[i] & within == 0)
            .fold(0, |acc, i| acc | bit(i))
    }

    /// 0-based mask of elements that are pairwise incomparable.
    pub(crate) fn is_antichain_mask(&self, mask: u64) -> bool {
        bits(mask).all(|i| self.above[i] & mask == 0)
    }

    /// Minimal elements as 1-based labels, increasing.
    pub fn minimal_elements(&self) -> Vec<usize> {
        bits(self.minimal_in(self.all_mask()))
            .map(|i| i + 1)
            .collect()
    }

    /// True iff no two distinct labels of `subset` are comparable.
    pub fn is_antichain(&self, subset: &[usize]) -> Result<bool> {
        Ok(self.is_antichain_mask(self.mask_of(subset)?))
    }

    pub(crate) fn mask_of(&self, labels: &[usize]) -> Result<u64> {
        labels.iter().try_fold(0u64, |acc, &x| {
            if x == 0 || x > self.n {
                Err(Error::IndexOutOfRange {
                    index: x,
                    n: self.n,
                })
            } else {
                Ok(acc | bit(x - 1))
            }
        })
    }

    /// All strict relations `(i, j)` with `i < j` in `P`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| bits(self.above[i]).map(move |j| (i + 1, j + 1)))
            .collect()
    }

    /// Cover relations `i <. j`, sorted by `(i, j)`.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| {
                bits(self.above[i])
                    .filter(move |&j| self.above[i] & self.below[j] == 0)
                    .map(move |j| (i + 1, j + 1))
            })
            .collect()
    }

    /// True iff the identity word `1 2 ... n` is a linear extension.
    pub fn is_naturally_labeled(&self) -> bool {
        (0..self.n).all(|j| self.below[j] & !full_mask(j) == 0)
    }

    /// The isomorphic poset in which element `i` is renamed `map[i - 1]`.
    pub fn relabeled(&self, map: &[usize]) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = self
            .relations()
            .into_iter()
            .map(|(i, j)| (map[i - 1], map[j - 1]))
            .collect();
        let mut seen = vec![false; self.n + 1];
        for &x in map {
            if x == 0 || x > self.n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Invalid(format!("{map:?} is not a relabeling")));
            }
        }
        if map.len() != self.n {
            return Err(Error::Invalid(format!("{map:?} is not a relabeling")));
        }
        Poset::from_relations(self.n, &pairs)
    }

    /// Every strict partial order on `1..=n`, labeled (so isomorphic copies
    /// all appear). Intended for `n <= 5`.
    pub fn all_labeled(n: usize) -> Vec<Poset> {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        let mut out = Vec::new();
        // Each unordered pair is unrelated, i < j, or j < i.
        let total = 3usize.pow(pairs.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut rel = Vec::new();
            for &(i, j) in &pairs {
                match c % 3 {
                    1 => rel.push((i, j)),
                    2 => rel.push((j, i)),
                    _ => {}
                }
                c /= 3;
            }
            if let Ok(p) = Poset::from_relations(n, &rel) {
                if p.relations().len() == rel.len() {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Chain lengths `a` when `self` is exactly `union_of_chains(a)` in its
    /// standardized labeling.
    pub fn chain_lengths(&self) -> Result<Vec<usize>> {
        let mut a = Vec::new();
        let mut start = 1;
        while start <= self.n {
            let mut end = start;
            while end < self.n && self.lt(end, end + 1) {
                end += 1;
            }
            a.push(end - start + 1);
            start = end + 1;
        }
        if Poset::union_of_chains(&a) == *self {
            Ok(a)
        } else {
            Err(Error::NotDisjointChains)
        }
    }

    /// Checks that `word` is a linear extension of `self`.
    pub fn check_linear_extension(&self, word: &[usize]) -> Result<()> {
        if word.len() != self.n {
            return Err(Error::NotLinearExtension(format!(
                "word has length {}, expected {}",
                word.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &x in word {
            if x == 0 || x > self.n || seen & bit(x - 1) != 0 {
                return Err(Error::NotLinearExtension(format!(
                    "{word:?} is not a permutation of 1..={}",
                    self.n
                )));
            }
            if self.below[x - 1] & !seen != 0 {
                return Err(Error::NotLinearExtension(format!(
                    "{x} appears before an element below it"
                )));
            }
            seen |= bit(x - 1);
        }
        Ok(())
    }

    /// Every linear extension, lexicographically smallest first.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions::new(self)
    }

    /// Number of linear extensions, by memoized recursion over the set of
    /// already placed elements.
    pub fn count_linear_extensions(&self) -> BigUint {
        fn go(p: &Poset, placed: u64, memo: &mut HashMap<u64, BigUint>) -> BigUint {
            let rest = p.all_mask() & !placed;
            if rest == 0 {
                return BigUint::one();
            }
            if let Some(v) = memo.get(&placed) {
                return v.clone();
            }
            let mut total = BigUint::zero();
            for x in bits(p.minimal_in(rest)) {
                total += go(p, placed | bit(x), memo);
            }
            memo.insert(placed, total.clone());
            total
        }
        go(self, 0, &mut HashMap::new())
    }

    /// Maximum bipartite matching of the comparability relation, scanning
    /// left vertices in increasing order. Returns `succ[i] = Some(j)` when
    /// `i` is matched to `j` (meaning `i < j` are consecutive on a chain).
    fn chain_matching(&self) -> Vec<Option<usize>> {
        fn augment(
            p: &Poset,
            u: usize,
            seen: &mut u64,
            pred: &mut [Option<usize>],
            succ: &mut [Option<usize>],
        ) -> bool {
            for v in bits(p.above[u]) {
                if *seen & bit(v) != 0 {
                    continue;
                }
                *seen |= bit(v);
                let free = match pred[v] {
                    None => true,
                    Some(w) => augment(p, w, seen, pred, succ),
                };
                if free {
                    pred[v] = Some(u);
                    succ[u] = Some(v);
                    return true;
                }
            }
            false
        }
        let mut pred = vec![None; self.n];
        let mut succ = vec![None; self.n];
        for u in 0..self.n {
            let mut seen = 0u64;
            augment(self, u, &mut seen, &mut pred, &mut succ);
        }
        succ
    }

    /// Minimum chain cover read off the matching; chains are listed bottom
    /// to top and sorted by their least label.
    pub fn minimum_chain_cover(&self) -> Vec<Vec<usize>> {
        let succ = self.chain_matching();
        let mut has_pred = vec![false; self.n];
        for v in succ.iter().flatten() {
            has_pred[*v] = true;
        }
        let mut chains: Vec<Vec<usize>> = (0..self.n)
            .filter(|&u| !has_pred[u])
            .map(|start| {
                let mut chain = vec![start + 1];
                let mut cur = start;
                while let Some(next) = succ[cur] {
                    chain.push(next + 1);
                    cur = next;
                }
                chain
            })
            .collect();
        chains.sort_by_key(|c| *c.iter().min().unwrap());
        chains
    }

    /// Size of a largest antichain (Dilworth: equals the minimum number of
    /// chains covering the poset).
    pub fn width(&self) -> usize {
        let matched = self.chain_matching().iter().flatten().count();
        self.n - matched
    }

    /// A deterministic partition into at most two chains.
    pub fn chain_cover_width2(&self) -> Result<ChainDecomposition> {
        let mut chains = self.minimum_chain_cover();
        if chains.len() > 2 {
            return Err(Error::WidthExceeded(chains.len()));
        }
        chains.resize(2, Vec::new());
        let second = chains.pop().unwrap();
        let first = chains.pop().unwrap();
        Ok(ChainDecomposition { first, second })
    }

    /// Parse the canonical text form:
    ///
    /// ```text
    /// # comment
    /// n 4
    /// rel 1 2
    /// rel 3 4
    /// ```
    pub fn parse(text: &str) -> Result<Poset> {
        let mut n: Option<usize> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let keyword = fields.next().unwrap();
            let nums = fields
                .map(|f| {
                    f.parse::<usize>().map_err(|_| {
                        Error::parse(line_no, format!("expected an integer, got {f:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match (keyword, n, nums.as_slice()) {
                ("n", None, [count]) => n = Some(*count),
                ("n", Some(_), _) => return Err(Error::parse(line_no, "duplicate `n` line")),
                ("rel", Some(size), [i, j]) => {
                    for &x in &[*i, *j] {
                        if x == 0 || x > size {
                            return Err(Error::parse(
                                line_no,
                                format!("label {x} outside 1..={size}"),
                            ));
                        }
                    }
                    pairs.push((*i, *j));
                }
                ("rel", None, _) => return Err(Error::parse(line_no, "`rel` before the `n` line")),
                _ => return Err(Error::parse(line_no, format!("unrecognized line {line:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing `n <count>` line"))?;
        Poset::from_relations(n, &pairs)
    }

    /// Canonical text form: the size line followed by cover relations.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (i, j) in self.cover_relations() {
            writeln!(out, "rel {i} {j}").unwrap();
        }
        out
    }
}

/// Lexicographic stream of linear extensions (1-based words).
pub struct LinearExtensions<'a> {
    poset: &'a Poset,
    word: Vec<usize>,
    placed: u64,
    pending: Vec<u64>,
    empty_pending: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(poset: &'a Poset) -> Self {
        let pending = if poset.n == 0 {
            Vec::new()
        } else {
            vec![poset.minimal_in(poset.all_mask())]
        };
        LinearExtensions {
            poset,
            word: Vec::with_capacity(poset.n),
            placed: 0,
            pending,
            empty_pending: poset.n == 0,
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Vec::new());
        }
        let p = self.poset;
        loop {
            let top = self.pending.last_mut()?;
            if *top == 0 {
                self.pending.pop();
                if let Some(x) = self.word.pop() {
                    self.placed &= !bit(x);
                }
                continue;
            }
            let x = top.trailing_zeros() as usize;
            *top &= *top - 1;
            self.word.push(x);
            self.placed |= bit(x);
            if self.word.len() == p.n {
                let out = self.word.iter().map(|&i| i + 1).collect();
                self.word.pop();
                self.placed &= !bit(x);
                return Some(out);
            }
            let rest = p.all_mask() & !self.placed;
            let avail = bits(rest)
                .filter(|&i| p.below[i] & !self.placed == 0)
                .fold(0, |acc, i| acc | bit(i));
            self.pending.push(avail);
        }
    }
}

/// A split of the ground set into two chains `first` and `second`, each
/// listed bottom to top. Either may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl ChainDecomposition {
    /// Checks disjointness, coverage and that each part is totally ordered.
    pub fn validate(&self, poset: &Poset) -> Result<()> {
        let a = poset.mask_of(&self.first)?;
        let b = poset.mask_of(&self.second)?;
        if a & b != 0
            || a | b != poset.all_mask()
            || a.count_ones() as usize != self.first.len()
            || b.count_ones() as usize != self.second.len()
        {
            return Err(Error::InvalidDecomposition(
                "parts must be disjoint and cover every element".into(),
            ));
        }
        for part in [&self.first, &self.second] {
            if part.windows(2).any(|w| !poset.lt(w[0], w[1])) {
                return Err(Error::InvalidDecomposition(format!(
                    "{part:?} is not a chain listed bottom to top"
                )));
            }
        }
        Ok(())
    }

    /// Build from two label sets, sorting each along the poset order.
    pub fn from_sets(poset: &Poset, first: &[usize], second: &[usize]) -> Result<Self> {
        let sort = |part: &[usize]| {
            let mut v = part.to_vec();
            v.sort_by(|&x, &y| {
                if poset.lt(x, y) {
                    std::cmp::Ordering::Less
                } else if poset.lt(y, x) {
                    std::cmp::Ordering::Greater
                } else {
                    x.cmp(&y)
                }
            });
            v
        };
        let d = ChainDecomposition {
            first: sort(first),
            second: sort(second),
        };
        d.validate(poset)?;
        Ok(d)
    }

    pub(crate) fn first_mask(&self) -> u64 {
        self.first.iter().fold(0, |acc, &x| acc | bit(x - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_count(p: &Poset) -> usize {
        fn perms(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut (1..=p.len()).collect(), 0, &mut all);
        all.iter()
            .filter(|w| {
                p.relations()
                    .iter()
                    .all(|&(i, j)| w.iter().position(|&x| x == i) < w.iter().position(|&x| x == j))
            })
            .count()
    }

    #[test]
    fn closure_and_cycles() {
        let p = Poset::from_relations(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(p.lt(1, 3));
        assert_eq!(p.relations(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(p.cover_relations(), vec![(1, 2), (2, 3)]);
        assert!(matches!(
            Poset::from_relations(2, &[(1, 2), (2, 1)]),
            Err(Error::CycleDetected(_, _))
        ));
        assert!(matches!(
            Poset::from_relations(2, &[(1, 3)]),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
        let single = Poset::from_relations(4, &[(3, 4)]).unwrap();
        assert_eq!(single.relations(), vec![(3, 4)]);
        assert!(Poset::from_relations(3, &[])
            .unwrap()
            .relations()
            .is_empty());
    }

    #[test]
    fn extensions_of_two_chains() {
        let p = Poset::from_relations(4, &[(1, 2), (3, 4)]).unwrap();
        let words: Vec<Vec<usize>> = p.linear_extensions().collect();
        let expected = [
            [1, 2, 3, 4],
            [1, 3, 2, 4],
            [1, 3, 4, 2],
            [3, 1, 2, 4],
            [3, 1, 4, 2],
            [3, 4, 1, 2],
        ];
        assert_eq!(words, expected.map(|w| w.to_vec()));
        assert_eq!(p.count_linear_extensions(), BigUint::from(6u32));
    }

    #[test]
    fn small_extension_counts() {
        assert_eq!(Poset::antichain(3).linear_extensions().count(), 6);
        assert_eq!(
            Poset::chain(3).linear_extensions().collect::<Vec<_>>(),
            vec![vec![1, 2, 3]]
        );
        assert_eq!(
            Poset::antichain(0).linear_extensions().collect::<Vec<_>>(),
            vec![Vec::<usize>::new()]
        );
        assert_eq!(
            Poset::antichain(0).count_linear_extensions(),
            BigUint::one()
        );
        assert_eq!(
            Poset::grid(2, 4).count_linear_extensions(),
            BigUint::from(14u32)
        );
        assert_eq!(
            Poset::union_of_chains(&[2, 3]).count_linear_extensions(),
            BigUint::from(10u32)
        );
        let p = Poset::from_relations(6, &[(1, 4), (2, 4), (4, 6), (3, 5)]).unwrap();
        assert_eq!(p.linear_extensions().count(), brute_force_count(&p));
    }

    #[test]
    fn opposite_and_ordinal_sum() {
        let c = Poset::chain(3);
        let o = c.opposite();
        assert!(o.lt(3, 2) && o.lt(2, 1) && o.lt(3, 1));
        assert_eq!(o.opposite(), c);
        assert_eq!(Poset::antichain(4).opposite(), Poset::antichain(4));
        assert_eq!(
            Poset::chain(1).ordinal_sum(&Poset::chain(1)),
            Poset::chain(2)
        );
        let s = Poset::antichain(2).ordinal_sum(&Poset::antichain(2));
        assert_eq!(s.relations(), vec![(1, 3), (1, 4), (2, 3), (2, 4)]);
    }

    #[test]
    fn standardized_union_of_chains() {
        let p = Poset::union_of_chains(&[2, 3, 2, 3]);
        assert_eq!(
            p.cover_relations(),
            vec![(1, 2), (3, 4), (4, 5), (6, 7), (8, 9), (9, 10)]
        );
        assert_eq!(Poset::union_of_chains(&[1, 1, 1]), Poset::antichain(3));
        assert_eq!(Poset::union_of_chains(&[4]), Poset::chain(4));
        assert_eq!(Poset::union_of_chains(&[0, 2, 0]), Poset::chain(2));
    }

    #[test]
    fn widths_and_covers() {
        assert_eq!(Poset::antichain(5).width(), 5);
        assert_eq!(Poset::antichain(0).width(), 0);
        let g = Poset::grid(2, 4);
        assert_eq!(g.width(), 2);
        let d = g.chain_cover_width2().unwrap();
        d.validate(&g).unwrap();
        let rows = ChainDecomposition::from_sets(&g, &[1, 2, 3, 4], &[5, 6, 7, 8]).unwrap();
        assert_eq!(rows.second, vec![5, 6, 7, 8]);
        assert!(matches!(
            Poset::antichain(3).chain_cover_width2(),
            Err(Error::WidthExceeded(3))
        ));
        let c = Poset::chain(3).chain_cover_width2().unwrap();
        assert_eq!((c.first, c.second), (vec![1, 2, 3], vec![]));
    }

    #[test]
    fn antichain_checks() {
        let p = Poset::from_relations(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(p.is_antichain(&[1, 3]).unwrap());
        assert!(!p.is_antichain(&[1, 2]).unwrap());
        assert!(p.is_antichain(&[4]).unwrap());
        assert!(p.is_antichain(&[9]).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let text = "# two chains\nn 4\nrel 3 4\nrel 1 2 # comment\n";
        let p = Poset::parse(text).unwrap();
        assert_eq!(p.to_text(), "n 4\nrel 1 2\nrel 3 4\n");
        assert_eq!(Poset::parse(&p.to_text()).unwrap(), p);
        assert_eq!(Poset::parse("n 0\n").unwrap().len(), 0);
        match Poset::parse("n 3\nrel 1 2\nrel 1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Poset::parse("n 2\nrel 1 2\nrel 2 1\n"),
            Err(Error::CycleDetected(_, _))
        ));
        assert!(Poset::parse("rel 1 2\n").is_err());
    }

    #[test]
    fn labeled_poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| Poset::all_labeled(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    }

    #[test]
    fn relabeling() {
        let p = Poset::chain(3).relabeled(&[3, 1, 2]).unwrap();
        assert!(p.lt(3, 1) && p.lt(1, 2));
        assert!(Poset::chain(3).relabeled(&[1, 1, 2]).is_err());
    }

    #[test]
    fn chain_lengths_recognition() {
        assert_eq!(
            Poset::union_of_chains(&[2, 3, 1]).chain_lengths().unwrap(),
            vec![2, 3, 1]
        );
        assert_eq!(Poset::antichain(3).chain_lengths().unwrap(), vec![1, 1, 1]);
        assert_eq!(
            Poset::antichain(0).chain_lengths().unwrap(),
            Vec::<usize>::new()
        );
        let p = Poset::from_relations(3, &[(1, 3)]).unwrap();
        assert_eq!(p.chain_lengths(), Err(Error::NotDisjointChains));
        assert_eq!(
            Poset::grid(2, 2).chain_lengths(),
            Err(Error::NotDisjointChains)
        );
    }

    #[test]
    fn natural_labeling() {
        assert!(Poset::grid(2, 3).is_naturally_labeled());
        assert!(!Poset::chain(3).opposite().is_naturally_labeled());
    }
}

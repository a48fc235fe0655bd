//! Set partitions of `{1..n}`, quotient preposets and `P`-transverse
//! partitions.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poset::{bit, bits, full_mask, Poset};

/// A set partition in canonical form: each block sorted, blocks ordered by
/// their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Canonicalizes `blocks` after checking they partition `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<SetPartition> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
                if seen[x] {
                    return Err(Error::Invalid(format!("{x} appears in two blocks")));
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::Invalid(format!("{missing} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    pub(crate) fn from_masks(n: usize, masks: &[u64]) -> SetPartition {
        let mut blocks: Vec<Vec<usize>> = masks
            .iter()
            .map(|&m| bits(m).map(|i| i + 1).collect())
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    pub fn singletons(n: usize) -> SetPartition {
        SetPartition {
            n,
            blocks: (1..=n).map(|x| vec![x]).collect(),
        }
    }

    /// Partition from a restricted growth string (`rgs[i]` is the 0-based
    /// block index of element `i + 1`).
    pub fn from_rgs(rgs: &[usize]) -> SetPartition {
        let k = rgs.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition {
            n: rgs.len(),
            blocks,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Number of two-element blocks.
    pub fn pairs(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 2).count()
    }

    /// `block_index[x - 1]` is the index of the block containing `x`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                idx[x - 1] = b;
            }
        }
        idx
    }

    pub(crate) fn block_masks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0, |acc, &x| acc | bit(x - 1)))
            .collect()
    }

    /// `|mu(V, X_pi)|`, the product of `(|B| - 1)!` over blocks.
    pub fn mobius_abs(&self) -> BigUint {
        self.blocks.iter().map(|b| factorial(b.len() - 1)).product()
    }

    /// Parse `1,3|2,4`; whitespace is ignored and `n` is the largest label.
    pub fn parse(text: &str) -> Result<SetPartition> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(SetPartition::singletons(0));
        }
        let blocks = compact
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|f| {
                        f.parse::<usize>()
                            .map_err(|_| Error::parse(1, format!("bad element {f:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::new(n, blocks).map_err(|e| Error::parse(1, e.to_string()))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// All set partitions of `{1..n}` in lexicographic order of their
/// restricted growth strings.
pub fn all_partitions(n: usize) -> AllPartitions {
    AllPartitions {
        rgs: vec![0; n],
        maxes: (0..n).map(|i| usize::from(i > 0)).collect(),
        done: false,
    }
}

pub struct AllPartitions {
    rgs: Vec<usize>,
    // maxes[i] = max(rgs[0..i]) + 1, the largest value rgs[i] may take
    maxes: Vec<usize>,
    done: bool,
}

impl Iterator for AllPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition::from_rgs(&self.rgs);
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] < self.maxes[i] {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[j - 1].max(self.rgs[j - 1] + 1);
                }
                break;
            }
        }
        Some(out)
    }
}

/// A reflexive, transitive relation on `{0..k}` (0-based block indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preposet {
    /// `leq[i]` has bit `j` set iff `i <= j`.
    leq: Vec<u64>,
}

impl Preposet {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    /// `i <= j` for 0-based indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i] & bit(j) != 0
    }

    /// Antisymmetry, ignoring the reflexive loops.
    pub fn is_poset(&self) -> bool {
        (0..self.len()).all(|i| bits(self.leq[i] & !bit(i)).all(|j| !self.leq(j, i)))
    }
}

/// The preposet `P / pi` on the blocks of `pi` (indexed as in
/// [`SetPartition::blocks`]).
pub fn quotient_preposet(poset: &Poset, pi: &SetPartition) -> Result<Preposet> {
    check_ground(poset, pi)?;
    let idx = pi.block_index();
    let k = pi.num_blocks();
    let mut leq: Vec<u64> = (0..k).map(bit).collect();
    for (i, j) in poset.relations() {
        leq[idx[i - 1]] |= bit(idx[j - 1]);
    }
    for m in 0..k {
        let row_m = leq[m];
        for row in leq.iter_mut() {
            if *row & bit(m) != 0 {
                *row |= row_m;
            }
        }
    }
    Ok(Preposet { leq })
}

fn check_ground(poset: &Poset, pi: &SetPartition) -> Result<()> {
    if poset.len() != pi.ground_size() {
        return Err(Error::Invalid(format!(
            "partition of {} elements used with a poset on {}",
            pi.ground_size(),
            poset.len()
        )));
    }
    Ok(())
}

/// Every block is an antichain and `P / pi` is a poset.
pub fn is_transverse(poset: &Poset, pi: &SetPartition) -> Result<bool> {
    check_ground(poset, pi)?;
    if !pi.block_masks().iter().all(|&m| poset.is_antichain_mask(m)) {
        return Ok(false);
    }
    Ok(quotient_preposet(poset, pi)?.is_poset())
}

/// Every `P`-transverse partition exactly once, in canonical sorted order.
///
/// A transverse partition always has a block made of minimal elements whose
/// removal leaves a transverse partition of the rest. The recursion peels
/// such blocks, always the one with the smallest least element among the
/// blocks that lie inside the current minimal set. An element `x` that is
/// minimal when a block with larger least element is peeled must later land
/// in a block reaching outside that minimal set; those obligations are
/// carried down the recursion as `(x, minimal set)` pairs.
pub fn enumerate_transverse(poset: &Poset) -> Vec<SetPartition> {
    let mut out = Vec::new();
    for_each_transverse(poset, |blocks| {
        out.push(SetPartition::from_masks(poset.len(), blocks))
    });
    out.sort();
    out
}

/// Visit the block masks (0-based bits) of every transverse partition.
pub(crate) fn for_each_transverse(poset: &Poset, mut visit: impl FnMut(&[u64])) {
    struct Walk<'a, F> {
        poset: &'a Poset,
        blocks: Vec<u64>,
        obligations: Vec<(usize, u64)>,
        visit: F,
    }

    impl<F: FnMut(&[u64])> Walk<'_, F> {
        fn go(&mut self, rest: u64) {
            if rest == 0 {
                (self.visit)(&self.blocks);
                return;
            }
            let minimal = self.poset.minimal_in(rest);
            // Enumerate nonempty submasks of `minimal`.
            let mut block = minimal;
            while block != 0 {
                self.try_block(rest, minimal, block);
                block = (block - 1) & minimal;
            }
        }

        fn try_block(&mut self, rest: u64, minimal: u64, block: u64) {
            let ok = self
                .obligations
                .iter()
                .all(|&(x, set)| block & bit(x) == 0 || block & !set != 0);
            if !ok {
                return;
            }
            let least = block.trailing_zeros() as usize;
            let saved = self.obligations.clone();
            self.obligations.retain(|&(x, _)| block & bit(x) == 0);
            for x in bits(minimal & !block & full_mask(least)) {
                self.obligations.push((x, minimal));
            }
            self.blocks.push(block);
            self.go(rest & !block);
            self.blocks.pop();
            self.obligations = saved;
        }
    }

    let mut walk = Walk {
        poset,
        blocks: Vec::new(),
        obligations: Vec::new(),
        visit: &mut visit,
    };
    walk.go(poset.all_mask());
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn two_chains() -> Poset {
        Poset::from_relations(4, &[(1, 2), (3, 4)]).unwrap()
    }

    fn part(s: &str) -> SetPartition {
        SetPartition::parse(s).unwrap()
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(all_partitions(0).count(), 1);
        assert_eq!(all_partitions(1).count(), 1);
        assert_eq!(all_partitions(3).count(), 5);
        assert_eq!(all_partitions(4).count(), 15);
        assert_eq!(all_partitions(6).count(), 203);
        let all: Vec<_> = all_partitions(5).collect();
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(SetPartition::singletons(5).mobius_abs(), BigUint::one());
        assert_eq!(part("1,2,3,4,5").mobius_abs(), BigUint::from(24u32));
        assert_eq!(part("1|2,3|4,5,6").mobius_abs(), BigUint::from(2u32));
    }

    #[test]
    fn text_form() {
        let p = part(" 3 , 1 | 4,2 ");
        assert_eq!(p.to_string(), "1,3|2,4");
        assert!(SetPartition::parse("1,2|2,3").is_err());
        assert!(SetPartition::parse("1|3").is_err());
        assert!(SetPartition::parse("1|a").is_err());
    }

    #[test]
    fn quotients_of_two_chains() {
        let p = two_chains();
        let q = quotient_preposet(&p, &part("1,3|2,4")).unwrap();
        assert!(q.is_poset());
        assert!(q.leq(0, 1) && !q.leq(1, 0));
        let bad = quotient_preposet(&p, &part("1,4|2,3")).unwrap();
        assert!(!bad.is_poset());
        assert!(bad.leq(0, 1) && bad.leq(1, 0));
        let id = quotient_preposet(&p, &SetPartition::singletons(4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(id.leq(i, j), i == j || p.lt(i + 1, j + 1));
            }
        }
    }

    #[test]
    fn transverse_recognition() {
        let p = two_chains();
        assert!(is_transverse(&p, &part("1,3|2,4")).unwrap());
        assert!(!is_transverse(&p, &part("1,2|3|4")).unwrap());
        assert!(!is_transverse(&p, &part("1,4|2,3")).unwrap());
        assert!(is_transverse(&p, &SetPartition::singletons(4)).unwrap());
        let chains = Poset::union_of_chains(&[2, 3, 2, 3]);
        assert!(is_transverse(&chains, &part("1,4,7|2,5,10|3,6,8|9")).unwrap());
    }

    #[test]
    fn transverse_enumeration_examples() {
        let got: Vec<String> = enumerate_transverse(&two_chains())
            .iter()
            .map(|p| p.to_string())
            .collect();
        let mut want = vec![
            "1|2|3|4", "1|2,3|4", "1,3|2|4", "1|2,4|3", "1,4|2|3", "1,3|2,4",
        ];
        want.sort_by_key(|s| part(s));
        assert_eq!(got, want);
        assert_eq!(enumerate_transverse(&Poset::antichain(5)).len(), 52);
        assert_eq!(
            enumerate_transverse(&Poset::chain(5)),
            vec![SetPartition::singletons(5)]
        );
        assert_eq!(enumerate_transverse(&Poset::antichain(0)).len(), 1);
    }

    #[test]
    fn non_minimal_block_holding_least_element() {
        // 1 is minimal and sits in a block with the non-minimal 3.
        let p = Poset::from_relations(3, &[(2, 3)]).unwrap();
        let got: Vec<String> = enumerate_transverse(&p)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(got, vec!["1|2|3", "1,2|3", "1,3|2"]);
    }

    #[test]
    fn transverse_count_matches_extensions_on_examples() {
        let sum = |p: &Poset| -> BigUint {
            enumerate_transverse(p)
                .iter()
                .map(|pi| pi.mobius_abs())
                .sum()
        };
        let p1 = Poset::from_relations(4, &[(3, 4)]).unwrap();
        assert_eq!(sum(&p1), BigUint::from(12u32));
        assert_eq!(sum(&two_chains()), BigUint::from(6u32));
    }
}

//! Transverse permutations and the bijections between them, linear
//! extensions and transverse partitions: the standard-form map and its
//! inverse built from P-left-to-right maxima, and the width-two map
//! carrying descents to paired blocks.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{enumerate_transverse, is_transverse, quotient_preposet, SetPartition};
use crate::poset::{bit, bits, ChainDecomposition, Poset};

/// A permutation of `1..=n` in one-line form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Permutation> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &x in &one_line {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Invalid(format!(
                    "{one_line:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    /// Each cycle `[a, b, c]` maps `a -> b -> c -> a`. Unlisted elements of
    /// `1..=n` are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut one_line: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n + 1];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
                if seen[x] {
                    return Err(Error::Invalid(format!("{x} appears in two cycles")));
                }
                seen[x] = true;
                one_line[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { one_line })
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// Image of `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.one_line[x - 1]
    }

    /// Cycles, each starting at its least element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    pub fn cycle_partition(&self) -> SetPartition {
        SetPartition::new(self.len(), self.cycles()).expect("cycles partition the ground set")
    }

    /// Cycle form `(1,3)(2)`, fixed points included.
    pub fn to_cycle_string(&self) -> String {
        cycles_to_string(&self.cycles())
    }

    /// Accepts one-line `[a1,...,an]` or cycle form `(a,b)(c)`. In cycle
    /// form every element must appear unless `implicit_fixed_n` gives the
    /// size, in which case omitted elements are fixed points.
    pub fn parse(text: &str, implicit_fixed_n: Option<usize>) -> Result<Permutation> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = text.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::parse(1, "missing closing ']'"))?;
            let one_line = parse_list(inner)?;
            return Permutation::new(one_line).map_err(|e| Error::parse(1, e.to_string()));
        }
        if text.is_empty() {
            return Ok(Permutation::identity(implicit_fixed_n.unwrap_or(0)));
        }
        let mut cycles = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(1, format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::parse(1, "missing closing ')'"))?;
            cycles.push(parse_list(&body[..close])?);
            rest = &body[close + 1..];
        }
        let listed: usize = cycles.iter().map(Vec::len).sum();
        let n = match implicit_fixed_n {
            Some(n) => n,
            None => {
                let max = cycles.iter().flatten().copied().max().unwrap_or(0);
                if max != listed {
                    return Err(Error::parse(
                        1,
                        "cycle form must list every element (fixed points included)",
                    ));
                }
                listed
            }
        };
        Permutation::from_cycles(n, &cycles).map_err(|e| Error::parse(1, e.to_string()))
    }
}

/// One-line form `[a1,...,an]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_to_string(&self.one_line))
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| Error::parse(1, format!("bad element {f:?}")))
        })
        .collect()
}

/// `[a1,...,an]`.
pub fn word_to_string(word: &[usize]) -> String {
    let items: Vec<String> = word.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

/// `(a,b)(c)...` for the given cycles in the given order.
pub fn cycles_to_string(cycles: &[Vec<usize>]) -> String {
    cycles
        .iter()
        .map(|c| {
            let items: Vec<String> = c.iter().map(usize::to_string).collect();
            format!("({})", items.join(","))
        })
        .collect()
}

/// Lexicographic permutations of `items`.
fn arrangements(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in arrangements(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Every permutation whose cycle partition is transverse, grouped by
/// partition in sorted order.
pub fn transverse_permutations(poset: &Poset) -> Vec<Permutation> {
    let n = poset.len();
    let mut out = Vec::new();
    for pi in enumerate_transverse(poset) {
        // Cyclic orders of each block: fix the least element first.
        let options: Vec<Vec<Vec<usize>>> = pi
            .blocks()
            .iter()
            .map(|b| {
                arrangements(&b[1..])
                    .into_iter()
                    .map(|mut tail| {
                        tail.insert(0, b[0]);
                        tail
                    })
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; options.len()];
        loop {
            let cycles: Vec<Vec<usize>> = choice
                .iter()
                .zip(&options)
                .map(|(&c, o)| o[c].clone())
                .collect();
            out.push(Permutation::from_cycles(n, &cycles).expect("blocks are disjoint"));
            let mut k = 0;
            while k < choice.len() && choice[k] + 1 == options[k].len() {
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
            choice[k] += 1;
        }
    }
    out
}

fn check_size(poset: &Poset, tau: &Permutation) -> Result<()> {
    if tau.len() != poset.len() {
        return Err(Error::NotTransverse(format!(
            "permutation has size {}, poset has {} elements",
            tau.len(),
            poset.len()
        )));
    }
    Ok(())
}

/// Level of each element (index `x - 1`) under a transverse permutation.
/// The Level of a cycle is its height in the quotient poset: Level 1 cycles
/// are minimal, Level k cycles are minimal once Levels below k are removed.
pub fn levels_of_permutation(poset: &Poset, tau: &Permutation) -> Result<Vec<usize>> {
    check_size(poset, tau)?;
    let pi = tau.cycle_partition();
    if !is_transverse(poset, &pi)? {
        return Err(Error::NotTransverse(format!(
            "cycle partition {pi} is not transverse"
        )));
    }
    let quotient = quotient_preposet(poset, &pi)?;
    let k = pi.num_blocks();
    let mut block_level = vec![0usize; k];
    let mut assigned = 0;
    let mut level = 0;
    while assigned < k {
        level += 1;
        let fresh: Vec<usize> = (0..k)
            .filter(|&b| block_level[b] == 0)
            .filter(|&b| (0..k).all(|c| c == b || block_level[c] != 0 || !quotient.leq(c, b)))
            .collect();
        for &b in &fresh {
            block_level[b] = level;
        }
        assigned += fresh.len();
    }
    let index = pi.block_index();
    Ok(index.iter().map(|&b| block_level[b]).collect())
}

/// Essential flags from an element Level map: Level 1 elements, and
/// elements lying above some element of the preceding Level.
fn essential_from_levels(poset: &Poset, levels: &[usize]) -> Vec<bool> {
    let n = poset.len();
    (0..n)
        .map(|x| {
            levels[x] == 1 || (0..n).any(|y| levels[y] + 1 == levels[x] && poset.lt(y + 1, x + 1))
        })
        .collect()
}

/// The cycles of `tau` in standard form: each begun at its largest
/// essential element, ordered by (Level, leading element).
pub fn standard_form(poset: &Poset, tau: &Permutation) -> Result<Vec<Vec<usize>>> {
    let levels = levels_of_permutation(poset, tau)?;
    let essential = essential_from_levels(poset, &levels);
    let mut keyed = Vec::new();
    for cycle in tau.cycles() {
        let (at, &lead) = cycle
            .iter()
            .enumerate()
            .filter(|(_, &x)| essential[x - 1])
            .max_by_key(|(_, &x)| x)
            .ok_or_else(|| Error::NotTransverse("cycle without an essential element".into()))?;
        let mut rotated = cycle[at..].to_vec();
        rotated.extend_from_slice(&cycle[..at]);
        keyed.push(((levels[lead - 1], lead), rotated));
    }
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, c)| c).collect())
}

/// Write `tau` in standard form and erase the parentheses.
pub fn phi(poset: &Poset, tau: &Permutation) -> Result<Vec<usize>> {
    Ok(standard_form(poset, tau)?.concat())
}

/// A linear extension split into Levels, with essential elements and
/// P-left-to-right maxima marked. All vectors are indexed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledExtension {
    pub word: Vec<usize>,
    pub level: Vec<usize>,
    pub essential: Vec<bool>,
    pub plr_max: Vec<bool>,
}

impl LeveledExtension {
    pub fn num_levels(&self) -> usize {
        self.level.last().copied().unwrap_or(0)
    }

    /// The words of each Level in order.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.num_levels()];
        for (pos, &x) in self.word.iter().enumerate() {
            out[self.level[pos] - 1].push(x);
        }
        out
    }

    /// Level of each element, indexed by `x - 1`.
    pub fn level_of_elements(&self) -> Vec<usize> {
        let mut out = vec![0; self.word.len()];
        for (pos, &x) in self.word.iter().enumerate() {
            out[x - 1] = self.level[pos];
        }
        out
    }

    pub fn essential_elements(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .word
            .iter()
            .zip(&self.essential)
            .filter(|(_, &e)| e)
            .map(|(&x, _)| x)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn lrmax_count(&self) -> usize {
        self.plr_max.iter().filter(|&&m| m).count()
    }
}

/// Greedy split of `sigma` into maximal antichain prefixes.
pub fn level_decompose(poset: &Poset, sigma: &[usize]) -> Result<LeveledExtension> {
    poset.check_linear_extension(sigma)?;
    let n = sigma.len();
    let mut level = Vec::with_capacity(n);
    let mut essential = Vec::with_capacity(n);
    let mut plr_max = Vec::with_capacity(n);
    let (mut cur, mut prev) = (0u64, 0u64);
    let mut current_level = 0;
    let mut running_max = 0;
    for &x in sigma {
        let below = poset.below_mask(x - 1);
        if current_level == 0 || below & cur != 0 {
            current_level += 1;
            prev = cur;
            cur = 0;
            running_max = 0;
        }
        cur |= bit(x - 1);
        let is_essential = current_level == 1 || below & prev != 0;
        let is_max = is_essential && x > running_max;
        if is_max {
            running_max = x;
        }
        level.push(current_level);
        essential.push(is_essential);
        plr_max.push(is_max);
    }
    Ok(LeveledExtension {
        word: sigma.to_vec(),
        level,
        essential,
        plr_max,
    })
}

/// Open a cycle at every P-left-to-right maximum of `sigma`.
pub fn psi_cycles(poset: &Poset, sigma: &[usize]) -> Result<Vec<Vec<usize>>> {
    let leveled = level_decompose(poset, sigma)?;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for (pos, &x) in sigma.iter().enumerate() {
        match cycles.last_mut() {
            Some(cycle) if !leveled.plr_max[pos] => cycle.push(x),
            _ => cycles.push(vec![x]),
        }
    }
    Ok(cycles)
}

pub fn psi(poset: &Poset, sigma: &[usize]) -> Result<Permutation> {
    let cycles = psi_cycles(poset, sigma)?;
    Permutation::from_cycles(poset.len(), &cycles)
}

pub fn lrmax_count(poset: &Poset, sigma: &[usize]) -> Result<usize> {
    Ok(level_decompose(poset, sigma)?.lrmax_count())
}

fn check_width2(poset: &Poset, d: &ChainDecomposition, sigma: &[usize]) -> Result<()> {
    d.validate(poset)?;
    poset.check_linear_extension(sigma)
}

/// Positions where an element of the second chain is immediately followed
/// by an incomparable element of the first.
pub fn des_p1p2(poset: &Poset, d: &ChainDecomposition, sigma: &[usize]) -> Result<usize> {
    check_width2(poset, d, sigma)?;
    let first = d.first_mask();
    Ok(sigma
        .windows(2)
        .filter(|w| {
            first & bit(w[0] - 1) == 0
                && first & bit(w[1] - 1) != 0
                && !poset.comparable(w[0], w[1])
        })
        .count())
}

/// Plain descents `sigma_i > sigma_{i+1}`.
pub fn descents(sigma: &[usize]) -> usize {
    sigma.windows(2).filter(|w| w[0] > w[1]).count()
}

/// The width-two bijection from linear extensions to transverse partitions.
pub fn omega(poset: &Poset, d: &ChainDecomposition, sigma: &[usize]) -> Result<SetPartition> {
    check_width2(poset, d, sigma)?;
    let first = d.first_mask();
    let mut rest = poset.all_mask();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut pos = 0;
    while pos < sigma.len() {
        let minimal = poset.minimal_in(rest);
        let x = sigma[pos];
        if minimal.count_ones() == 1 || first & bit(x - 1) != 0 {
            blocks.push(vec![x]);
            rest &= !bit(x - 1);
            pos += 1;
            continue;
        }
        let p1 = (minimal & first).trailing_zeros() as usize + 1;
        let j = pos
            + sigma[pos..]
                .iter()
                .position(|&y| y == p1)
                .expect("p1 remains");
        for &y in &sigma[pos..j - 1] {
            blocks.push(vec![y]);
        }
        blocks.push(vec![sigma[j - 1], p1]);
        for &y in &sigma[pos..=j] {
            rest &= !bit(y - 1);
        }
        pos = j + 1;
    }
    SetPartition::new(poset.len(), blocks)
}

/// Inverse of [`omega`].
pub fn omega_inv(poset: &Poset, d: &ChainDecomposition, pi: &SetPartition) -> Result<Vec<usize>> {
    d.validate(poset)?;
    if !is_transverse(poset, pi)? {
        return Err(Error::NotTransverse(format!("{pi} is not transverse")));
    }
    let first = d.first_mask();
    let index = pi.block_index();
    let blocks = pi.blocks();
    let mut rest = poset.all_mask();
    let mut word = Vec::with_capacity(poset.len());
    fn emit(x: usize, rest: &mut u64, word: &mut Vec<usize>) {
        *rest &= !bit(x - 1);
        word.push(x);
    }
    while rest != 0 {
        let minimal = poset.minimal_in(rest);
        if minimal.count_ones() == 1 {
            let x = minimal.trailing_zeros() as usize + 1;
            if blocks[index[x - 1]].len() != 1 {
                return Err(Error::NotTransverse(format!(
                    "unique minimal element {x} is not a singleton block"
                )));
            }
            emit(x, &mut rest, &mut word);
            continue;
        }
        let p1 = (minimal & first).trailing_zeros() as usize + 1;
        let block = &blocks[index[p1 - 1]];
        match block.len() {
            1 => emit(p1, &mut rest, &mut word),
            2 => {
                let q = if block[0] == p1 { block[1] } else { block[0] };
                let mut lower: Vec<usize> = bits(rest & poset.below_mask(q - 1))
                    .map(|i| i + 1)
                    .collect();
                lower.sort_by_key(|&y| poset.below_mask(y - 1).count_ones());
                for y in lower {
                    if blocks[index[y - 1]].len() != 1 || first & bit(y - 1) != 0 {
                        return Err(Error::NotTransverse(format!(
                            "{y} below {q} must be a singleton of the second chain"
                        )));
                    }
                    emit(y, &mut rest, &mut word);
                }
                emit(q, &mut rest, &mut word);
                emit(p1, &mut rest, &mut word);
            }
            _ => {
                return Err(Error::NotTransverse(format!(
                    "block {block:?} is too large for a width-two poset"
                )))
            }
        }
    }
    Ok(word)
}

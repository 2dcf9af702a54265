//! Exact counts and exhaustive enumerations over finite carriers.
//!
//! The two counting functions are the arrangement numbers `a(n)` (injective
//! sequences of every length over an `n`-element set) and the Bell numbers
//! `B(n)` (set partitions of an `n`-element set). Both are computed with
//! arbitrary precision from their recurrences; the enumerators exist so that
//! every count can be cross-checked by brute force.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// A carrier label. Labels of a carrier of size `n` are `0..n`.
pub type Label = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("label {label} is outside a carrier of size {size}")]
    LabelOutOfRange { label: Label, size: usize },
    #[error("carrier names must be pairwise distinct, `{0}` repeats")]
    DuplicateName(String),
    #[error("invalid restricted growth string at position {position}: {reason}")]
    InvalidRgs { position: usize, reason: &'static str },
    #[error("blocks do not partition a carrier of size {size}: {reason}")]
    InvalidBlocks { size: usize, reason: String },
    #[error("the inequality table needs at least one row")]
    EmptyTable,
}

/// A finite labelled set `{0, .., size - 1}` with optional display names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    size: usize,
    names: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Self {
        Carrier { size, names: None }
    }

    pub fn named<I, S>(names: I) -> Result<Self, CountingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(CountingError::DuplicateName(name.clone()));
            }
        }
        Ok(Carrier {
            size: names.len(),
            names: Some(names),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of a label; falls back to the decimal label.
    pub fn name(&self, label: Label) -> String {
        match &self.names {
            Some(names) if label < names.len() => names[label].clone(),
            _ => label.to_string(),
        }
    }

    pub fn label_of(&self, name: &str) -> Option<Label> {
        match &self.names {
            Some(names) => names.iter().position(|n| n == name),
            None => name.parse::<Label>().ok().filter(|&l| l < self.size),
        }
    }

    pub fn check(&self, label: Label) -> Result<Label, CountingError> {
        if label < self.size {
            Ok(label)
        } else {
            Err(CountingError::LabelOutOfRange {
                label,
                size: self.size,
            })
        }
    }
}

/// A finite sequence of carrier labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct FinSeq(pub Vec<Label>);

impl FinSeq {
    pub fn new(entries: Vec<Label>) -> Self {
        FinSeq(entries)
    }

    pub fn empty() -> Self {
        FinSeq(Vec::new())
    }

    pub fn entries(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The set of entries occurring in the sequence.
    pub fn entry_set(&self) -> BTreeSet<Label> {
        self.0.iter().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.entry_set().len() == self.0.len()
    }

    pub fn check_within(&self, carrier_size: usize) -> Result<(), CountingError> {
        match self.0.iter().find(|&&l| l >= carrier_size) {
            Some(&label) => Err(CountingError::LabelOutOfRange {
                label,
                size: carrier_size,
            }),
            None => Ok(()),
        }
    }
}

impl From<Vec<Label>> for FinSeq {
    fn from(v: Vec<Label>) -> Self {
        FinSeq(v)
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ">")
    }
}

/// A partition of `{0, .., n - 1}` in restricted growth string form.
///
/// `rgs[x]` is the index of the block containing `x`. Blocks are numbered in
/// order of their least element, so every partition has exactly one
/// representation and structural equality is partition equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    rgs: Vec<usize>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self, CountingError> {
        let mut next_block = 0usize;
        for (position, &b) in rgs.iter().enumerate() {
            if b > next_block {
                return Err(CountingError::InvalidRgs {
                    position,
                    reason: "block index skips ahead of 1 + running maximum",
                });
            }
            if b == next_block {
                next_block += 1;
            }
        }
        Ok(SetPartition { rgs })
    }

    /// Canonicalizes an arbitrary block labelling: `x` and `y` share a block
    /// iff `keys[x] == keys[y]`.
    pub fn from_keys<K: PartialEq>(keys: &[K]) -> Self {
        let mut firsts: Vec<&K> = Vec::new();
        let rgs = keys
            .iter()
            .map(|k| match firsts.iter().position(|f| *f == k) {
                Some(i) => i,
                None => {
                    firsts.push(k);
                    firsts.len() - 1
                }
            })
            .collect();
        SetPartition { rgs }
    }

    /// Builds a partition from explicit blocks, which must be nonempty,
    /// pairwise disjoint and cover `0..size`.
    pub fn from_blocks<B>(size: usize, blocks: &[B]) -> Result<Self, CountingError>
    where
        B: AsRef<[Label]>,
    {
        let mut owner: Vec<Option<usize>> = vec![None; size];
        for (bi, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(CountingError::InvalidBlocks {
                    size,
                    reason: format!("block {bi} is empty"),
                });
            }
            for &x in block {
                if x >= size {
                    return Err(CountingError::LabelOutOfRange { label: x, size });
                }
                if owner[x].is_some() {
                    return Err(CountingError::InvalidBlocks {
                        size,
                        reason: format!("label {x} occurs twice"),
                    });
                }
                owner[x] = Some(bi);
            }
        }
        let keys = owner
            .into_iter()
            .enumerate()
            .map(|(x, o)| {
                o.ok_or_else(|| CountingError::InvalidBlocks {
                    size,
                    reason: format!("label {x} is not covered"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_keys(&keys))
    }

    pub fn singletons(size: usize) -> Self {
        SetPartition {
            rgs: (0..size).collect(),
        }
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    /// Size of the underlying carrier.
    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks ordered by least element, each in ascending order.
    pub fn blocks(&self) -> Vec<Vec<Label>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The block containing `x`.
    pub fn block_of(&self, x: Label) -> Result<Vec<Label>, CountingError> {
        let b = *self.rgs.get(x).ok_or(CountingError::LabelOutOfRange {
            label: x,
            size: self.rgs.len(),
        })?;
        Ok(self
            .rgs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == b)
            .map(|(y, _)| y)
            .collect())
    }

    pub fn same_block(&self, x: Label, y: Label) -> bool {
        self.rgs[x] == self.rgs[y]
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// `a(0), .., a(n)` with `a(0) = 1` and `a(k + 1) = (k + 1) a(k) + 1`.
pub fn arrangement_table(n: usize) -> Vec<BigUint> {
    let mut table = Vec::with_capacity(n + 1);
    let mut current = BigUint::one();
    table.push(current.clone());
    for k in 0..n {
        current = current * BigUint::from(k + 1) + 1u32;
        table.push(current.clone());
    }
    table
}

/// Number of injective sequences, of every length, over an `n`-element set.
pub fn arrangement_count(n: usize) -> BigUint {
    arrangement_table(n).pop().unwrap()
}

/// `B(0), .., B(n)` via `B(k + 1) = sum_{i <= k} C(k, i) B(i)`.
pub fn bell_table(n: usize) -> Vec<BigUint> {
    let mut table: Vec<BigUint> = Vec::with_capacity(n + 1);
    table.push(BigUint::one());
    // binomial row C(k, 0..=k), advanced in place
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for k in 0..n {
        let next = row
            .iter()
            .zip(&table)
            .fold(BigUint::zero(), |acc, (c, b)| acc + c * b);
        table.push(next);
        let mut new_row = Vec::with_capacity(row.len() + 1);
        new_row.push(BigUint::one());
        for i in 1..=k {
            new_row.push(&row[i - 1] + &row[i]);
        }
        new_row.push(BigUint::one());
        row = new_row;
    }
    table
}

/// Number of partitions of an `n`-element set.
pub fn bell_count(n: usize) -> BigUint {
    bell_table(n).pop().unwrap()
}

/// Injective sequences over `0..size` in length-then-lexicographic order.
pub fn enumerate_injective_sequences(carrier: &Carrier) -> InjectiveSequences {
    InjectiveSequences {
        size: carrier.size(),
        next: Some(Vec::new()),
    }
}

#[derive(Debug, Clone)]
pub struct InjectiveSequences {
    size: usize,
    next: Option<Vec<Label>>,
}

impl InjectiveSequences {
    fn successor(&self, cur: &[Label]) -> Option<Vec<Label>> {
        let n = self.size;
        let k = cur.len();
        let mut used = vec![false; n];
        for &x in cur {
            used[x] = true;
        }
        // Rightmost position that can be bumped to a larger unused value.
        for i in (0..k).rev() {
            used[cur[i]] = false;
            if let Some(v) = (cur[i] + 1..n).find(|&v| !used[v]) {
                let mut out = cur[..i].to_vec();
                out.push(v);
                used[v] = true;
                out.extend((0..n).filter(|&x| !used[x]).take(k - i - 1));
                return Some(out);
            }
        }
        (k < n).then(|| (0..=k).collect())
    }
}

impl Iterator for InjectiveSequences {
    type Item = FinSeq;

    fn next(&mut self) -> Option<FinSeq> {
        let cur = self.next.take()?;
        self.next = self.successor(&cur);
        Some(FinSeq(cur))
    }
}

/// All sequences of length at most `max_len` over `0..size`,
/// length-then-lexicographic.
pub fn enumerate_sequences(carrier: &Carrier, max_len: usize) -> Sequences {
    Sequences {
        size: carrier.size(),
        max_len,
        next: Some(Vec::new()),
    }
}

#[derive(Debug, Clone)]
pub struct Sequences {
    size: usize,
    max_len: usize,
    next: Option<Vec<Label>>,
}

impl Iterator for Sequences {
    type Item = FinSeq;

    fn next(&mut self) -> Option<FinSeq> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                let k = cur.len() + 1;
                if k <= self.max_len && self.size > 0 {
                    self.next = Some(vec![0; k]);
                }
                break;
            }
            i -= 1;
            if succ[i] + 1 < self.size {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(FinSeq(cur))
    }
}

/// Partitions of `0..size` in restricted-growth-string lexicographic order,
/// optionally restricted to blocks of at most `max_block` elements.
pub fn enumerate_partitions(carrier: &Carrier, max_block: Option<usize>) -> Partitions {
    let size = carrier.size();
    let bound = max_block.unwrap_or(size).max(1);
    let mut first = Vec::with_capacity(size);
    let mut counts = Vec::new();
    greedy_fill(&mut first, &mut counts, size, bound);
    Partitions {
        bound,
        next: Some(first),
    }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    bound: usize,
    next: Option<Vec<usize>>,
}

/// Extends `rgs` to length `size` with the lexicographically least
/// completion respecting the block bound.
fn greedy_fill(rgs: &mut Vec<usize>, counts: &mut Vec<usize>, size: usize, bound: usize) {
    while rgs.len() < size {
        let b = counts
            .iter()
            .position(|&c| c < bound)
            .unwrap_or(counts.len());
        if b == counts.len() {
            counts.push(0);
        }
        counts[b] += 1;
        rgs.push(b);
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        let cur = self.next.take()?;
        let size = cur.len();
        let mut rgs = cur.clone();
        let mut counts = vec![0usize; size];
        for &b in &rgs {
            counts[b] += 1;
        }
        while let Some(b) = rgs.pop() {
            counts[b] -= 1;
            let i = rgs.len();
            if i == 0 {
                break;
            }
            let ceiling = rgs.iter().max().map_or(0, |m| m + 1);
            if let Some(v) = (b + 1..=ceiling).find(|&v| counts[v] < self.bound) {
                counts[v] += 1;
                rgs.push(v);
                let used = rgs.iter().max().map_or(0, |m| m + 1);
                counts.truncate(used);
                greedy_fill(&mut rgs, &mut counts, size, self.bound);
                self.next = Some(rgs);
                break;
            }
        }
        Some(SetPartition { rgs: cur })
    }
}

/// One row of the finite inequality table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub n: usize,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub arrangements: BigUint,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub partitions: BigUint,
    /// Brute-force recounts `(injective sequences, partitions)` when `n` is
    /// within the enumeration cutoff.
    pub enumerated: Option<(u64, u64)>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub rows: Vec<InequalityRow>,
    pub pass: bool,
}

pub const DEFAULT_ENUMERATION_CUTOFF: usize = 8;

/// Tabulates `a(n)` against `B(n)` for `1 <= n <= max_n`. Rows with
/// `n <= enumeration_cutoff` are recounted by enumeration, and a mismatch
/// fails the row just like a violated inequality.
pub fn verify_finite_inequality(
    max_n: usize,
    enumeration_cutoff: usize,
) -> Result<InequalityReport, CountingError> {
    if max_n == 0 {
        return Err(CountingError::EmptyTable);
    }
    let arrangements = arrangement_table(max_n);
    let bells = bell_table(max_n);
    let rows: Vec<InequalityRow> = (1..=max_n)
        .map(|n| {
            let a = arrangements[n].clone();
            let b = bells[n].clone();
            let enumerated = (n <= enumeration_cutoff).then(|| {
                let carrier = Carrier::new(n);
                (
                    enumerate_injective_sequences(&carrier).count() as u64,
                    enumerate_partitions(&carrier, None).count() as u64,
                )
            });
            let recount_ok = enumerated.is_none_or(|(ea, eb)| {
                BigUint::from(ea) == a && BigUint::from(eb) == b
            });
            InequalityRow {
                n,
                holds: a > b && recount_ok,
                arrangements: a,
                partitions: b,
                enumerated,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.holds);
    Ok(InequalityReport { rows, pass })
}

//! Explicit injections from finite sequences into partitions, their
//! decoders, and the small procedures used to chain injections together.
//!
//! Two encodings are provided:
//!
//! * the *marker* encoding, for a base set extended by a run of marker
//!   elements `m0, m1, ..`: entry `a_j` of a sequence is glued to marker `m_j`,
//!   so the block of each used marker names the entry at that position;
//! * the *grid* encoding, for sequences of bounded length `n` over any set
//!   containing `(n + 2)^2` distinguished cells `a^j_i`: a row of the grid
//!   disjoint from the sequence plays the role of the markers, and the unused
//!   tail of that row is kept as a single block recording the length.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::counting::{FinSeq, Label, SetPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("sequence of length {len} exceeds the bound {bound}")]
    TooLong { len: usize, bound: usize },
    #[error("entry {label} is not a label of the base set (size {size})")]
    NotInBase { label: Label, size: usize },
    #[error("partition has carrier size {got}, expected {expected}")]
    CarrierMismatch { got: usize, expected: usize },
    #[error("a grid for sequences of length <= {n} needs {needed} cells, carrier has {size}")]
    GridTooLarge { n: usize, needed: usize, size: usize },
    #[error("grid cells must be distinct carrier labels: {0}")]
    BadGrid(String),
    #[error("not in the range of the encoding: {0}")]
    NotInRange(String),
}

/// A base set `0..base` extended by `markers` marker labels
/// `base..base + markers`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkerUniverse {
    pub base: usize,
    pub markers: usize,
}

impl MarkerUniverse {
    pub fn new(base: usize, markers: usize) -> Self {
        MarkerUniverse { base, markers }
    }

    pub fn combined_size(&self) -> usize {
        self.base + self.markers
    }

    pub fn marker(&self, j: usize) -> Label {
        self.base + j
    }

    pub fn is_marker(&self, x: Label) -> bool {
        x >= self.base && x < self.combined_size()
    }
}

/// Glues each entry `a_j` to marker `j`; unused base labels and markers
/// `len..` stay singletons.
pub fn seq_to_partition_dedekind(
    a: &FinSeq,
    universe: &MarkerUniverse,
) -> Result<SetPartition, EncodingError> {
    if a.len() > universe.markers {
        return Err(EncodingError::TooLong {
            len: a.len(),
            bound: universe.markers,
        });
    }
    for &x in a.entries() {
        if x >= universe.base {
            return Err(EncodingError::NotInBase {
                label: x,
                size: universe.base,
            });
        }
    }
    // key of every label: the base label it is glued to, or itself
    let mut keys: Vec<Label> = (0..universe.combined_size()).collect();
    for (j, &x) in a.entries().iter().enumerate() {
        keys[universe.marker(j)] = x;
    }
    Ok(SetPartition::from_keys(&keys))
}

/// Inverse of [`seq_to_partition_dedekind`].
pub fn partition_to_seq_dedekind(
    p: &SetPartition,
    universe: &MarkerUniverse,
) -> Result<FinSeq, EncodingError> {
    if p.len() != universe.combined_size() {
        return Err(EncodingError::CarrierMismatch {
            got: p.len(),
            expected: universe.combined_size(),
        });
    }
    let mut entries = Vec::new();
    let mut ended = false;
    for j in 0..universe.markers {
        let m = universe.marker(j);
        let block = p.block_of(m).expect("marker within carrier");
        if block.len() == 1 {
            ended = true;
            continue;
        }
        let bases: Vec<Label> = block.iter().copied().filter(|&x| x < universe.base).collect();
        match bases.as_slice() {
            [x] if !ended => entries.push(*x),
            [_] => {
                return Err(EncodingError::NotInRange(format!(
                    "marker m{j} is used after an unused marker; used markers must form a prefix"
                )))
            }
            [] => {
                return Err(EncodingError::NotInRange(format!(
                    "block of marker m{j} contains no base label"
                )))
            }
            _ => {
                return Err(EncodingError::NotInRange(format!(
                    "block of marker m{j} contains {} base labels",
                    bases.len()
                )))
            }
        }
    }
    let decoded = FinSeq(entries);
    // Remaining shape violations (base labels glued without a marker) show up
    // as a failed re-encoding.
    if seq_to_partition_dedekind(&decoded, universe)? != *p {
        return Err(EncodingError::NotInRange(
            "a block joins base labels without a marker".into(),
        ));
    }
    Ok(decoded)
}

/// The `(n + 2) x (n + 2)` grid of distinguished cells; `cell(j, i)` is
/// `a^j_i` and row `j` is `A_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerGrid {
    n: usize,
    carrier: usize,
    cells: Vec<Label>,
    row_of: HashMap<Label, usize>,
}

impl MarkerGrid {
    /// Row-major grid over the first `(n + 2)^2` labels of the carrier.
    pub fn new(n: usize, carrier: usize) -> Result<Self, EncodingError> {
        let side = n + 2;
        Self::with_cells(n, carrier, (0..side * side).collect())
    }

    pub fn with_cells(n: usize, carrier: usize, cells: Vec<Label>) -> Result<Self, EncodingError> {
        let side = n + 2;
        let needed = side * side;
        if cells.len() != needed {
            return Err(EncodingError::BadGrid(format!(
                "expected {needed} cells, got {}",
                cells.len()
            )));
        }
        if carrier < needed {
            return Err(EncodingError::GridTooLarge {
                n,
                needed,
                size: carrier,
            });
        }
        let mut row_of = HashMap::with_capacity(needed);
        for (idx, &c) in cells.iter().enumerate() {
            if c >= carrier {
                return Err(EncodingError::BadGrid(format!("cell {c} outside carrier")));
            }
            if row_of.insert(c, idx / side).is_some() {
                return Err(EncodingError::BadGrid(format!("cell {c} repeats")));
            }
        }
        Ok(MarkerGrid {
            n,
            carrier,
            cells,
            row_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.n + 2
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn cell(&self, row: usize, col: usize) -> Label {
        self.cells[row * self.side() + col]
    }

    pub fn row(&self, row: usize) -> &[Label] {
        let side = self.side();
        &self.cells[row * side..(row + 1) * side]
    }

    /// Row containing `x`, if `x` is a grid cell.
    pub fn row_of(&self, x: Label) -> Option<usize> {
        self.row_of.get(&x).copied()
    }
}

/// Least row of the grid disjoint from the entries of `c`.
pub fn least_avoiding_row(c: &FinSeq, grid: &MarkerGrid) -> Result<usize, EncodingError> {
    if c.len() > grid.n() {
        return Err(EncodingError::TooLong {
            len: c.len(),
            bound: grid.n(),
        });
    }
    let hit: BTreeSet<usize> = c.entries().iter().filter_map(|&x| grid.row_of(x)).collect();
    // at most n rows are hit, so one of the n + 2 is free
    Ok((0..grid.side())
        .find(|j| !hit.contains(j))
        .expect("pigeonhole: n entries cannot meet n + 2 rows"))
}

/// The grid encoding `pi_c` of a bounded-length sequence.
pub fn bounded_seq_to_partition(
    c: &FinSeq,
    grid: &MarkerGrid,
) -> Result<SetPartition, EncodingError> {
    if let Some(&label) = c.entries().iter().find(|&&x| x >= grid.carrier()) {
        return Err(EncodingError::NotInBase {
            label,
            size: grid.carrier(),
        });
    }
    let j = least_avoiding_row(c, grid)?;
    let k = c.len();
    let mut keys: Vec<Label> = (0..grid.carrier()).collect();
    for (m, &x) in c.entries().iter().enumerate() {
        keys[grid.cell(j, m)] = x;
    }
    let tail_key = grid.cell(j, grid.n() + 1);
    for i in k..grid.side() {
        keys[grid.cell(j, i)] = tail_key;
    }
    Ok(SetPartition::from_keys(&keys))
}

/// Inverse of [`bounded_seq_to_partition`].
pub fn bounded_partition_to_seq(p: &SetPartition, grid: &MarkerGrid) -> Result<FinSeq, EncodingError> {
    if p.len() != grid.carrier() {
        return Err(EncodingError::CarrierMismatch {
            got: p.len(),
            expected: grid.carrier(),
        });
    }
    let last = grid.n() + 1;
    let tails: Vec<(usize, Vec<Label>)> = (0..grid.side())
        .filter_map(|j| {
            let block = p.block_of(grid.cell(j, last)).expect("grid cell in carrier");
            let in_row = block.iter().all(|&x| grid.row_of(x) == Some(j));
            (block.len() >= 2 && in_row).then_some((j, block))
        })
        .collect();
    let (j, tail) = match tails.as_slice() {
        [one] => one.clone(),
        [] => {
            return Err(EncodingError::NotInRange(
                "no grid row carries a tail block".into(),
            ))
        }
        _ => {
            return Err(EncodingError::NotInRange(format!(
                "{} grid rows carry a tail block",
                tails.len()
            )))
        }
    };
    let k = grid.side() - tail.len();
    let expected_tail: BTreeSet<Label> = (k..grid.side()).map(|i| grid.cell(j, i)).collect();
    if tail.iter().copied().collect::<BTreeSet<_>>() != expected_tail {
        return Err(EncodingError::NotInRange(format!(
            "tail block of row {j} is not the suffix a^{j}_{k}..a^{j}_{last}"
        )));
    }
    let mut entries = Vec::with_capacity(k);
    for m in 0..k {
        let block = p.block_of(grid.cell(j, m)).expect("grid cell in carrier");
        let outside: Vec<Label> = block
            .into_iter()
            .filter(|&x| grid.row_of(x) != Some(j))
            .collect();
        match outside.as_slice() {
            [x] => entries.push(*x),
            _ => {
                return Err(EncodingError::NotInRange(format!(
                    "block of a^{j}_{m} has {} labels outside row {j}",
                    outside.len()
                )))
            }
        }
    }
    let decoded = FinSeq(entries);
    let reencoded = bounded_seq_to_partition(&decoded, grid)?;
    if reencoded != *p {
        return Err(EncodingError::NotInRange(
            "partition differs from the encoding of its decoded sequence".into(),
        ));
    }
    Ok(decoded)
}

/// Index into the ordinal sum `omega + omega`: `Lower(m)` is `m`,
/// `Upper(m)` is `omega + m`. The derived order is the ordinal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoCopyOrdinal {
    Lower(u64),
    Upper(u64),
}

impl fmt::Display for TwoCopyOrdinal {
    /// `(copy,index)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.copy(), self.index())
    }
}

impl TwoCopyOrdinal {
    pub fn copy(&self) -> u8 {
        match self {
            TwoCopyOrdinal::Lower(_) => 0,
            TwoCopyOrdinal::Upper(_) => 1,
        }
    }

    pub fn index(&self) -> u64 {
        match *self {
            TwoCopyOrdinal::Lower(m) | TwoCopyOrdinal::Upper(m) => m,
        }
    }
}

/// The bijection `omega -> omega + omega`: evens to the lower copy, odds to
/// the upper copy.
pub fn two_copy_pairing(xi: u64) -> TwoCopyOrdinal {
    if xi.is_multiple_of(2) {
        TwoCopyOrdinal::Lower(xi / 2)
    } else {
        TwoCopyOrdinal::Upper(xi / 2)
    }
}

/// Inverse of [`two_copy_pairing`].
pub fn two_copy_unpairing(t: TwoCopyOrdinal) -> u64 {
    match t {
        TwoCopyOrdinal::Lower(m) => 2 * m,
        TwoCopyOrdinal::Upper(m) => 2 * m + 1,
    }
}

/// Largest sequence length [`decode_nat_as_seq`] will materialize.
pub const MAX_DECODED_LEN: usize = 1 << 20;

/// Cantor pairing `(a + b)(a + b + 1) / 2 + b`.
pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

/// Bijection from finite sequences of naturals to naturals: the empty
/// sequence maps to 0 and a nonempty sequence of length `k` to
/// `1 + cantor(k - 1, code)`, where `code` left-folds the entries with
/// Cantor pairing.
pub fn encode_seq_as_nat(s: &[BigUint]) -> BigUint {
    let Some((first, rest)) = s.split_first() else {
        return BigUint::zero();
    };
    let code = rest
        .iter()
        .fold(first.clone(), |acc, x| cantor_pair(&acc, x));
    BigUint::one() + cantor_pair(&BigUint::from(s.len() - 1), &code)
}

pub fn encode_u64_seq_as_nat(s: &[u64]) -> BigUint {
    let big: Vec<BigUint> = s.iter().map(|&x| BigUint::from(x)).collect();
    encode_seq_as_nat(&big)
}

/// Inverse of [`encode_seq_as_nat`]. Fails only when the decoded length
/// would exceed [`MAX_DECODED_LEN`].
pub fn decode_nat_as_seq(z: &BigUint) -> Result<Vec<BigUint>, EncodingError> {
    if z.is_zero() {
        return Ok(Vec::new());
    }
    let (len_minus_one, mut code) = cantor_unpair(&(z - 1u32));
    let len = len_minus_one
        .to_usize()
        .and_then(|l| l.checked_add(1))
        .filter(|&l| l <= MAX_DECODED_LEN)
        .ok_or(EncodingError::TooLong {
            len: usize::MAX,
            bound: MAX_DECODED_LEN,
        })?;
    let mut out = Vec::with_capacity(len);
    for _ in 1..len {
        let (rest, last) = cantor_unpair(&code);
        out.push(last);
        code = rest;
    }
    out.push(code);
    out.reverse();
    Ok(out)
}

/// Which hypothesis of the escape iteration a collision refutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeCulprit {
    /// The seed equals `f(s)` for an earlier term `s`.
    SeedInRangeOfF,
    FNotInjective,
    GNotInjective,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("escape iteration repeated term {first} at step {second}: {culprit:?}")]
pub struct EscapeCollision {
    pub first: usize,
    pub second: usize,
    pub culprit: EscapeCulprit,
}

/// Iterates `s_0 = g(seed)`, `s_{i+1} = g(f(s_i))` for `count` terms.
///
/// When `f` and `g` are injective and `seed` is not in the range of `f`, the
/// terms are pairwise distinct. A repeated term is reported together with
/// the hypothesis it refutes.
pub fn escape_iteration<X, Y, F, G>(
    f: F,
    g: G,
    seed: Y,
    count: usize,
) -> Result<Vec<X>, EscapeCollision>
where
    X: Clone + Eq + Hash,
    Y: Clone + Eq,
    F: Fn(&X) -> Y,
    G: Fn(&Y) -> X,
{
    let mut terms: Vec<X> = Vec::with_capacity(count);
    // preimages[i] is the Y value that g mapped to terms[i]
    let mut preimages: Vec<Y> = Vec::with_capacity(count);
    let mut seen: HashMap<X, usize> = HashMap::with_capacity(count);
    let mut y = seed;
    for step in 0..count {
        let x = g(&y);
        if let Some(&first) = seen.get(&x) {
            let culprit = if preimages[first] != y {
                EscapeCulprit::GNotInjective
            } else if first == 0 {
                EscapeCulprit::SeedInRangeOfF
            } else {
                // s_{first-1} != s_{step-1} by minimality of the collision
                EscapeCulprit::FNotInjective
            };
            return Err(EscapeCollision {
                first,
                second: step,
                culprit,
            });
        }
        seen.insert(x.clone(), step);
        terms.push(x.clone());
        preimages.push(y);
        y = f(&x);
    }
    Ok(terms)
}

/// Union of the entry sets of `seqs`, ordered by the first sequence
/// containing a label and then by its first position there.
pub fn first_occurrence_order<T, S>(seqs: &[S]) -> Vec<T>
where
    T: Clone + Eq + Hash,
    S: AsRef<[T]>,
{
    let mut seen = HashSet::new();
    seqs.iter()
        .flat_map(|s| s.as_ref().iter())
        .filter(|x| seen.insert((*x).clone()))
        .cloned()
        .collect()
}

/// Turns a stream of sequences into a stream of pairwise-distinct entries:
/// each output is the first not-yet-emitted entry of the earliest sequence
/// that still has one.
///
/// The iterator ends (and [`InjectiveFlatten::exhausted`] becomes true) when
/// the source ends, or when `lookahead_limit` consecutive sequences bring no
/// fresh entry.
pub fn flatten_to_injective_stream<T, I>(seqs: I) -> InjectiveFlatten<T, I::IntoIter>
where
    T: Clone + Eq + Hash,
    I: IntoIterator<Item = Vec<T>>,
{
    InjectiveFlatten {
        source: seqs.into_iter(),
        current: None,
        emitted: HashSet::new(),
        lookahead_limit: None,
        exhausted: false,
    }
}

pub struct InjectiveFlatten<T, I> {
    source: I,
    current: Option<Vec<T>>,
    emitted: HashSet<T>,
    lookahead_limit: Option<usize>,
    exhausted: bool,
}

impl<T, I> InjectiveFlatten<T, I> {
    pub fn with_lookahead_limit(mut self, limit: usize) -> Self {
        self.lookahead_limit = Some(limit);
        self
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}

impl<T, I> Iterator for InjectiveFlatten<T, I>
where
    T: Clone + Eq + Hash,
    I: Iterator<Item = Vec<T>>,
{
    type Item = T;

    fn next(&mut self) -> Option<T> {
        if self.exhausted {
            return None;
        }
        let mut barren = 0usize;
        loop {
            // A sequence without fresh entries never regains one, so the
            // earliest candidate is always the current sequence or later.
            if let Some(cur) = &self.current {
                if let Some(x) = cur.iter().find(|x| !self.emitted.contains(*x)) {
                    let x = x.clone();
                    self.emitted.insert(x.clone());
                    return Some(x);
                }
                barren += 1;
                if self.lookahead_limit.is_some_and(|l| barren > l) {
                    self.exhausted = true;
                    return None;
                }
            }
            match self.source.next() {
                Some(s) => self.current = Some(s),
                None => {
                    self.exhausted = true;
                    self.current = None;
                    return None;
                }
            }
        }
    }
}

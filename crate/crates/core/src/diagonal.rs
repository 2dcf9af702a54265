//! Diagonalization over decidable subsets of the naturals.
//!
//! A base family `base(0), base(1), ..` of subsets indexes the lower copy of
//! `omega + omega`. The derived family `G(0), G(1), ..` indexes the upper copy
//! and is defined by
//!
//! ```text
//! xi in G(k)  iff  F(xi) = Lower(m)           -> xi not in base(m)
//!                  F(xi) = Upper(m), m < k    -> xi not in G(m)
//!                  F(xi) = Upper(m), m >= k   -> true
//! ```
//!
//! where `F` is [`two_copy_pairing`]. Every `G(k)` differs from every set
//! indexed below `Upper(k)`, and the point where they differ is exactly the
//! preimage of that index under `F`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::encodings::{two_copy_pairing, two_copy_unpairing, TwoCopyOrdinal};

/// A subset of the naturals given by a total membership oracle.
pub trait LazySubset {
    fn contains(&self, xi: u64) -> bool;

    /// Members among `0..bound`.
    fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&x| self.contains(x)).collect()
    }
}

impl<F: Fn(u64) -> bool> LazySubset for F {
    fn contains(&self, xi: u64) -> bool {
        self(xi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyParseError {
    #[error("unknown family `{0}`; expected singleton:ARG, upto:ARG, evens or periodic:PATTERN")]
    UnknownKind(String),
    #[error("argument `{0}` must be `m` or a natural number")]
    BadArgument(String),
    #[error("periodic pattern `{0}` must be [PREFIX.]CYCLE over 0/1 with a nonempty cycle")]
    BadPattern(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    /// The family index itself.
    Index,
    Const(u64),
}

impl FamilyArg {
    fn resolve(self, m: u64) -> u64 {
        match self {
            FamilyArg::Index => m,
            FamilyArg::Const(c) => c,
        }
    }
}

impl fmt::Display for FamilyArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyArg::Index => write!(f, "m"),
            FamilyArg::Const(c) => write!(f, "{c}"),
        }
    }
}

/// Indexed families `m -> base(m)` with a finite textual description.
#[derive(Clone)]
pub enum BaseFamily {
    /// `singleton:m` is `base(m) = {m}`; `singleton:c` is constantly `{c}`.
    Singleton(FamilyArg),
    /// `upto:m` is `base(m) = {0, .., m - 1}`.
    UpTo(FamilyArg),
    /// `evens`: every base set is the even numbers.
    Evens,
    /// `periodic:PREFIX.CYCLE`: `base(m)` is the `m`-th shift of the
    /// eventually periodic 0/1 word `PREFIX CYCLE CYCLE ..`.
    Periodic { prefix: Vec<bool>, cycle: Vec<bool> },
    /// Arbitrary total oracle `(m, xi) -> bool`.
    Custom(Arc<dyn Fn(u64, u64) -> bool + Send + Sync>),
}

impl fmt::Debug for BaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseFamily({self})")
    }
}

impl fmt::Display for BaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        match self {
            BaseFamily::Singleton(a) => write!(f, "singleton:{a}"),
            BaseFamily::UpTo(a) => write!(f, "upto:{a}"),
            BaseFamily::Evens => write!(f, "evens"),
            BaseFamily::Periodic { prefix, cycle } if prefix.is_empty() => {
                write!(f, "periodic:{}", bits(cycle))
            }
            BaseFamily::Periodic { prefix, cycle } => {
                write!(f, "periodic:{}.{}", bits(prefix), bits(cycle))
            }
            BaseFamily::Custom(_) => write!(f, "custom"),
        }
    }
}

fn parse_arg(s: &str) -> Result<FamilyArg, FamilyParseError> {
    if s == "m" {
        Ok(FamilyArg::Index)
    } else {
        s.parse()
            .map(FamilyArg::Const)
            .map_err(|_| FamilyParseError::BadArgument(s.to_string()))
    }
}

fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

impl FromStr for BaseFamily {
    type Err = FamilyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match (kind, arg) {
            ("singleton", Some(a)) => Ok(BaseFamily::Singleton(parse_arg(a)?)),
            ("upto", Some(a)) => Ok(BaseFamily::UpTo(parse_arg(a)?)),
            ("evens", None) => Ok(BaseFamily::Evens),
            ("periodic", Some(p)) => {
                let bad = || FamilyParseError::BadPattern(p.to_string());
                let (prefix, cycle) = p.split_once('.').unwrap_or(("", p));
                let prefix = parse_bits(prefix).ok_or_else(bad)?;
                let cycle = parse_bits(cycle).ok_or_else(bad)?;
                if cycle.is_empty() {
                    return Err(bad());
                }
                Ok(BaseFamily::Periodic { prefix, cycle })
            }
            _ => Err(FamilyParseError::UnknownKind(s.to_string())),
        }
    }
}

impl BaseFamily {
    pub fn custom<F>(oracle: F) -> Self
    where
        F: Fn(u64, u64) -> bool + Send + Sync + 'static,
    {
        BaseFamily::Custom(Arc::new(oracle))
    }

    /// Membership of `xi` in `base(m)`.
    pub fn contains(&self, m: u64, xi: u64) -> bool {
        match self {
            BaseFamily::Singleton(a) => xi == a.resolve(m),
            BaseFamily::UpTo(a) => xi < a.resolve(m),
            BaseFamily::Evens => xi.is_multiple_of(2),
            BaseFamily::Periodic { prefix, cycle } => {
                // position m + xi of the word, without overflowing
                let pos = m as u128 + xi as u128;
                let plen = prefix.len() as u128;
                if pos < plen {
                    prefix[pos as usize]
                } else {
                    cycle[((pos - plen) % cycle.len() as u128) as usize]
                }
            }
            BaseFamily::Custom(f) => f(m, xi),
        }
    }

    pub fn member(&self, m: u64) -> BaseSet<'_> {
        BaseSet { family: self, index: m }
    }
}

#[derive(Clone, Copy)]
pub struct BaseSet<'a> {
    family: &'a BaseFamily,
    index: u64,
}

impl LazySubset for BaseSet<'_> {
    fn contains(&self, xi: u64) -> bool {
        self.family.contains(self.index, xi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("{earlier:?} is not below Upper({k}) in the two-copy order")]
    NotEarlier { k: u64, earlier: TwoCopyOrdinal },
}

/// The family `G` diagonalizing against a base family.
#[derive(Debug, Clone)]
pub struct DiagonalFamily {
    base: BaseFamily,
}

impl DiagonalFamily {
    pub fn new(base: BaseFamily) -> Self {
        DiagonalFamily { base }
    }

    pub fn base(&self) -> &BaseFamily {
        &self.base
    }

    /// Membership of `xi` in `G(k)`. Recursion only descends to `G(m)` with
    /// `m < k`, so evaluation terminates.
    pub fn contains(&self, k: u64, xi: u64) -> bool {
        match two_copy_pairing(xi) {
            TwoCopyOrdinal::Lower(m) => !self.base.contains(m, xi),
            TwoCopyOrdinal::Upper(m) if m < k => !self.contains(m, xi),
            TwoCopyOrdinal::Upper(_) => true,
        }
    }

    pub fn member(&self, k: u64) -> DiagonalSet<'_> {
        DiagonalSet { family: self, index: k }
    }

    /// Membership of `xi` in the set indexed by `t` in the whole two-copy
    /// family.
    pub fn contains_at(&self, t: TwoCopyOrdinal, xi: u64) -> bool {
        match t {
            TwoCopyOrdinal::Lower(m) => self.base.contains(m, xi),
            TwoCopyOrdinal::Upper(m) => self.contains(m, xi),
        }
    }

    /// The point where `G(k)` and the set indexed by `earlier` disagree.
    pub fn distinguishing_witness(
        &self,
        k: u64,
        earlier: TwoCopyOrdinal,
    ) -> Result<Witness, DiagonalError> {
        if earlier >= TwoCopyOrdinal::Upper(k) {
            return Err(DiagonalError::NotEarlier { k, earlier });
        }
        let xi = two_copy_unpairing(earlier);
        Ok(Witness {
            k,
            earlier,
            xi,
            in_derived: self.contains(k, xi),
            in_earlier: self.contains_at(earlier, xi),
        })
    }
}

/// A distinguishing point with both oracle evaluations recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub k: u64,
    pub earlier: TwoCopyOrdinal,
    pub xi: u64,
    pub in_derived: bool,
    pub in_earlier: bool,
}

impl Witness {
    pub fn differs(&self) -> bool {
        self.in_derived != self.in_earlier
    }
}

#[derive(Clone, Copy)]
pub struct DiagonalSet<'a> {
    family: &'a DiagonalFamily,
    index: u64,
}

impl LazySubset for DiagonalSet<'_> {
    fn contains(&self, xi: u64) -> bool {
        self.family.contains(self.index, xi)
    }
}

/// Every index strictly below `Upper(k)` whose pairing preimage is below
/// `xi_bound`: `Lower(m)` for `2m < xi_bound` and `Upper(m)` for `m < k`.
pub fn earlier_indices(k: u64, xi_bound: u64) -> impl Iterator<Item = TwoCopyOrdinal> {
    (0..xi_bound.div_ceil(2))
        .map(TwoCopyOrdinal::Lower)
        .chain((0..k).map(TwoCopyOrdinal::Upper))
}

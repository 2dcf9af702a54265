//! A finite shadow of the basic Fraenkel permutation model.
//!
//! Atoms are the labels `0..size` of an [`AtomSet`]. A set `E` of atoms
//! *supports* an object when every permutation fixing `E` pointwise fixes
//! the object. The group of such permutations, `fix(E)`, is the full
//! symmetric group on the atoms outside `E`, and is generated by adjacent
//! transpositions of those atoms; support checks only look at generators.
//!
//! "Partitions with finite blocks" only make sense against an infinite atom
//! pool. Here they are shadowed relative to a support `E`: a block that
//! reaches outside `E` may hold at most `b` atoms, with `b < |A \ E|`. Under
//! that bound the only `fix(E)`-invariant way to partition the outside atoms
//! is into singletons, which is the behaviour of finite-block partitions of
//! an infinite atom set.
//!
//! [`equivariant_injection_exists`] decides whether a `G`-equivariant
//! injection between two finite `G`-sets exists by matching orbits with
//! equal stabilizers, and otherwise returns a certificate that can be
//! re-checked from scratch.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::counting::{
    arrangement_count, bell_count, enumerate_injective_sequences, enumerate_partitions, Carrier,
    FinSeq, Label, SetPartition,
};

/// Largest atom count for which `fix(E)` is enumerated element by element.
pub const DEFAULT_GROUP_ATOM_LIMIT: usize = 7;
/// Largest atom count accepted by [`fraenkel_report`].
pub const DEFAULT_REPORT_ATOM_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FraenkelError {
    #[error("an atom set needs at least two atoms, got {0}")]
    TooFewAtoms(usize),
    #[error("support contains atom {atom} outside an atom set of size {size}")]
    SupportOutOfRange { atom: Label, size: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("group of order > {limit} is too large to enumerate")]
    GroupTooLarge { limit: usize },
    #[error("{limit} atoms is the configured limit, got {atoms}")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("element set is not closed under the group: {0}")]
    NotInvariant(String),
    #[error("permutations act on {expected} points, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("characterization check failed: {0}")]
    CharacterizationMismatch(String),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomSet {
    size: usize,
}

impl AtomSet {
    pub fn new(size: usize) -> Result<Self, FraenkelError> {
        if size < 2 {
            return Err(FraenkelError::TooFewAtoms(size));
        }
        Ok(AtomSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn carrier(&self) -> Carrier {
        Carrier::new(self.size)
    }
}

/// A permutation of `0..degree`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<Label>,
}

impl Permutation {
    pub fn from_image(image: Vec<Label>) -> Result<Self, FraenkelError> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || std::mem::replace(&mut seen[x], true) {
                return Err(FraenkelError::BadPermutation(format!(
                    "{image:?} is not a bijection"
                )));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree).collect(),
        }
    }

    /// The swap `(a;b)`.
    pub fn transposition(degree: usize, a: Label, b: Label) -> Self {
        let mut image: Vec<Label> = (0..degree).collect();
        image.swap(a, b);
        Permutation { image }
    }

    /// Builds a permutation from disjoint cycles, each `c0 -> c1 -> .. -> c0`.
    pub fn from_cycles(degree: usize, cycles: &[&[Label]]) -> Result<Self, FraenkelError> {
        let mut image: Vec<Label> = (0..degree).collect();
        let mut touched = HashSet::new();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || !touched.insert(x) {
                    return Err(FraenkelError::BadPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on {degree} points"
                    )));
                }
                image[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: Label) -> Label {
        self.image[x]
    }

    pub fn image(&self) -> &[Label] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.degree()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn fixes(&self, x: Label) -> bool {
        self.image[x] == x
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with `;` separators, e.g. `(0;1)(2;4;3)`; the identity
    /// prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            any = true;
            write!(f, "({start}")?;
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                write!(f, ";{x}")?;
                seen[x] = true;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Objects the permutation group acts on.
pub trait Act: Sized {
    fn act(&self, pi: &Permutation) -> Self;
}

impl Act for Label {
    fn act(&self, pi: &Permutation) -> Self {
        pi.apply(*self)
    }
}

impl Act for FinSeq {
    fn act(&self, pi: &Permutation) -> Self {
        FinSeq(self.entries().iter().map(|&x| pi.apply(x)).collect())
    }
}

impl Act for SetPartition {
    fn act(&self, pi: &Permutation) -> Self {
        // x lands in the block of pi^{-1}(x)
        let inv = pi.inverse();
        let keys: Vec<usize> = (0..self.len()).map(|x| self.rgs()[inv.apply(x)]).collect();
        SetPartition::from_keys(&keys)
    }
}

pub fn apply_to_seq(pi: &Permutation, s: &FinSeq) -> FinSeq {
    s.act(pi)
}

pub fn apply_to_partition(pi: &Permutation, p: &SetPartition) -> SetPartition {
    p.act(pi)
}

/// A finite set `E` of atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Support(BTreeSet<Label>);

impl Support {
    pub fn new<I: IntoIterator<Item = Label>>(atoms: I) -> Self {
        Support(atoms.into_iter().collect())
    }

    /// `{0, .., size - 1}`.
    pub fn initial(size: usize) -> Self {
        Support((0..size).collect())
    }

    pub fn contains(&self, x: Label) -> bool {
        self.0.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.0.iter().copied()
    }

    pub fn check(&self, atoms: &AtomSet) -> Result<(), FraenkelError> {
        match self.0.iter().find(|&&x| x >= atoms.size()) {
            Some(&atom) => Err(FraenkelError::SupportOutOfRange {
                atom,
                size: atoms.size(),
            }),
            None => Ok(()),
        }
    }

    /// Atoms of `atoms` outside `E`, ascending.
    pub fn complement(&self, atoms: &AtomSet) -> Vec<Label> {
        (0..atoms.size()).filter(|x| !self.contains(*x)).collect()
    }
}

/// Adjacent transpositions of the atoms outside `E`; they generate `fix(E)`.
pub fn fix_generators(atoms: &AtomSet, e: &Support) -> Vec<Permutation> {
    e.complement(atoms)
        .windows(2)
        .map(|w| Permutation::transposition(atoms.size(), w[0], w[1]))
        .collect()
}

/// Whether `E` supports `x`, i.e. every generator of `fix(E)` fixes `x`.
pub fn is_supported<T: Act + PartialEq>(x: &T, atoms: &AtomSet, e: &Support) -> bool {
    fix_generators(atoms, e).iter().all(|g| x.act(g) == *x)
}

/// Injective sequences over the atoms supported by `E`.
///
/// These are exactly the injective sequences with entries in `E`; the
/// equality is re-checked on every call.
pub fn supported_sequences(atoms: &AtomSet, e: &Support) -> Result<Vec<FinSeq>, FraenkelError> {
    e.check(atoms)?;
    let outside = atoms.size() - e.len();
    if outside < 2 {
        return Err(FraenkelError::Precondition(format!(
            "need at least two atoms outside the support, have {outside}"
        )));
    }
    let (supported, characterized): (Vec<FinSeq>, Vec<FinSeq>) = {
        let all: Vec<FinSeq> = enumerate_injective_sequences(&atoms.carrier()).collect();
        let supported = all.iter().filter(|s| is_supported(*s, atoms, e)).cloned().collect();
        let inside = all
            .into_iter()
            .filter(|s| s.entries().iter().all(|&x| e.contains(x)))
            .collect();
        (supported, inside)
    };
    if supported != characterized {
        return Err(FraenkelError::CharacterizationMismatch(format!(
            "{} supported injective sequences, {} with entries in E",
            supported.len(),
            characterized.len()
        )));
    }
    Ok(supported)
}

/// Partitions of the atoms in which every block meeting `A \ E` has at most
/// `bound` atoms. Blocks inside `E` are unrestricted.
pub fn finite_shadow_partitions(atoms: &AtomSet, e: &Support, bound: usize) -> Vec<SetPartition> {
    enumerate_partitions(&atoms.carrier(), None)
        .filter(|p| {
            p.blocks()
                .iter()
                .all(|blk| blk.len() <= bound || blk.iter().all(|&x| e.contains(x)))
        })
        .collect()
}

/// Members of [`finite_shadow_partitions`] supported by `E`, with no
/// precondition on the bound.
pub fn filter_supported_partitions(atoms: &AtomSet, e: &Support, bound: usize) -> Vec<SetPartition> {
    finite_shadow_partitions(atoms, e, bound)
        .into_iter()
        .filter(|p| is_supported(p, atoms, e))
        .collect()
}

/// `{Y ∪ singletons of A \ E : Y a partition of E}`, sorted.
pub fn characterized_partitions(atoms: &AtomSet, e: &Support) -> Vec<SetPartition> {
    let inside: Vec<Label> = e.iter().collect();
    let outside = e.complement(atoms);
    let mut out: Vec<SetPartition> = enumerate_partitions(&Carrier::new(inside.len()), None)
        .map(|y| {
            let mut blocks: Vec<Vec<Label>> = y
                .blocks()
                .into_iter()
                .map(|b| b.into_iter().map(|i| inside[i]).collect())
                .collect();
            blocks.extend(outside.iter().map(|&x| vec![x]));
            SetPartition::from_blocks(atoms.size(), &blocks).expect("blocks cover the atoms")
        })
        .collect();
    out.sort();
    out
}

/// Finite-shadow partitions supported by `E`, requiring `1 <= bound < |A \ E|`.
/// The result is checked against [`characterized_partitions`].
pub fn supported_partitions(
    atoms: &AtomSet,
    e: &Support,
    bound: usize,
) -> Result<Vec<SetPartition>, FraenkelError> {
    e.check(atoms)?;
    let outside = atoms.size() - e.len();
    if bound == 0 || bound >= outside {
        return Err(FraenkelError::Precondition(format!(
            "block bound must satisfy 1 <= b < |A \\ E| = {outside}, got {bound}"
        )));
    }
    let mut supported = filter_supported_partitions(atoms, e, bound);
    supported.sort();
    let characterized = characterized_partitions(atoms, e);
    if supported != characterized {
        return Err(FraenkelError::CharacterizationMismatch(format!(
            "{} supported partitions, {} of the form Y ∪ singletons",
            supported.len(),
            characterized.len()
        )));
    }
    Ok(supported)
}

/// A permutation group given by generators, with every element listed.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    /// Closes `generators` under composition, giving up once more than
    /// `max_order` elements are found.
    pub fn generated(
        degree: usize,
        generators: Vec<Permutation>,
        max_order: usize,
    ) -> Result<Self, FraenkelError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(FraenkelError::DegreeMismatch {
                expected: degree,
                got: g.degree(),
            });
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    if elements.len() >= max_order {
                        return Err(FraenkelError::GroupTooLarge { limit: max_order });
                    }
                    elements.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            elements,
        })
    }

    /// `fix(E)` for an atom set of at most `atom_limit` atoms.
    pub fn fix(atoms: &AtomSet, e: &Support, atom_limit: usize) -> Result<Self, FraenkelError> {
        e.check(atoms)?;
        if atoms.size() > atom_limit {
            return Err(FraenkelError::TooManyAtoms {
                atoms: atoms.size(),
                limit: atom_limit,
            });
        }
        let max_order = (1..=atoms.size()).product();
        Self::generated(atoms.size(), fix_generators(atoms, e), max_order)
    }

    /// The full symmetric group on `degree` points.
    pub fn symmetric(degree: usize, atom_limit: usize) -> Result<Self, FraenkelError> {
        let atoms = AtomSet::new(degree)?;
        Self::fix(&atoms, &Support::default(), atom_limit)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Indices of the elements fixing `x`.
    pub fn stabilizer<T: Act + PartialEq>(&self, x: &T) -> Vec<usize> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, g)| x.act(g) == *x)
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether every generator fixes `x` (so the whole group does).
    pub fn fixes<T: Act + PartialEq>(&self, x: &T) -> bool {
        self.generators.iter().all(|g| x.act(g) == *x)
    }
}

/// One orbit of a group acting on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord<T> {
    /// Least member of the orbit.
    pub representative: T,
    pub members: Vec<T>,
    /// Indices into [`PermutationGroup::elements`] of the representative's
    /// stabilizer.
    pub stabilizer: Vec<usize>,
}

impl<T> OrbitRecord<T> {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn satisfies_orbit_stabilizer(&self, group_order: usize) -> bool {
        self.members.len() * self.stabilizer.len() == group_order
    }
}

/// Splits a group-invariant finite set into orbits, ordered by least member.
pub fn orbit_decomposition<T>(
    elements: &[T],
    group: &PermutationGroup,
) -> Result<Vec<OrbitRecord<T>>, FraenkelError>
where
    T: Act + Ord + Clone + fmt::Debug,
{
    let universe: BTreeSet<&T> = elements.iter().collect();
    let mut visited: BTreeSet<T> = BTreeSet::new();
    let mut records = Vec::new();
    for x in &universe {
        if visited.contains(*x) {
            continue;
        }
        let orbit: BTreeSet<T> = group.elements().iter().map(|g| x.act(g)).collect();
        if let Some(stray) = orbit.iter().find(|y| !universe.contains(y)) {
            return Err(FraenkelError::NotInvariant(format!(
                "{stray:?} lies in the orbit of {x:?} but not in the set"
            )));
        }
        visited.extend(orbit.iter().cloned());
        let record = OrbitRecord {
            representative: (*x).clone(),
            stabilizer: group.stabilizer(*x),
            members: orbit.into_iter().collect(),
        };
        debug_assert!(record.satisfies_orbit_stabilizer(group.order()));
        records.push(record);
    }
    Ok(records)
}

/// An explicit equivariant injection, stored as its graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantMap<T, U> {
    pub pairs: BTreeMap<T, U>,
}

impl<T, U> EquivariantMap<T, U>
where
    T: Act + Ord + Clone,
    U: Act + Ord + Clone,
{
    pub fn get(&self, x: &T) -> Option<&U> {
        self.pairs.get(x)
    }

    /// Re-checks totality on `domain`, injectivity and commutation with every
    /// generator.
    pub fn verify(&self, domain: &[T], group: &PermutationGroup) -> bool {
        let total = domain.iter().all(|x| self.pairs.contains_key(x))
            && self.pairs.len() == domain.iter().collect::<BTreeSet<_>>().len();
        let injective = self.pairs.values().collect::<BTreeSet<_>>().len() == self.pairs.len();
        let equivariant = group.generators().iter().all(|g| {
            self.pairs
                .iter()
                .all(|(x, y)| self.pairs.get(&x.act(g)) == Some(&y.act(g)))
        });
        total && injective && equivariant
    }
}

/// Orbit data recorded in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub representative: String,
    pub size: usize,
    pub stabilizer_order: usize,
}

/// Why no equivariant injection `X -> Y` exists.
///
/// `hall_violators` are representatives of X-orbits whose admissible
/// targets (Y-orbits containing a point with the same stabilizer) number
/// fewer than the violators themselves, so no orbit matching exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonexistenceCertificate<T, U> {
    pub group_order: usize,
    /// Elements of X fixed by the whole group.
    pub supported_domain: usize,
    /// Elements of Y fixed by the whole group.
    pub supported_codomain: usize,
    pub domain_orbits: Vec<OrbitSummary>,
    pub codomain_orbits: Vec<OrbitSummary>,
    pub hall_violators: Vec<T>,
    pub hall_targets: Vec<U>,
}

impl<T, U> NonexistenceCertificate<T, U>
where
    T: Act + Ord + Clone,
    U: Act + Ord + Clone,
{
    /// A fixed point must map to a fixed point, so more fixed points in X
    /// than in Y already rules out any equivariant injection.
    pub fn pigeonhole_suffices(&self) -> bool {
        self.supported_domain > self.supported_codomain
    }

    /// Re-derives every claim of the certificate by direct computation over
    /// the group elements.
    pub fn recheck(&self, domain: &[T], codomain: &[U], group: &PermutationGroup) -> Result<(), String> {
        if group.order() != self.group_order {
            return Err("group order differs".into());
        }
        let fixed_x = domain.iter().filter(|x| group.fixes(*x)).count();
        let fixed_y = codomain.iter().filter(|y| group.fixes(*y)).count();
        if (fixed_x, fixed_y) != (self.supported_domain, self.supported_codomain) {
            return Err(format!(
                "fixed-point counts recomputed as ({fixed_x}, {fixed_y}), certificate says ({}, {})",
                self.supported_domain, self.supported_codomain
            ));
        }
        let orbit_key = |y: &U| group.elements().iter().map(|g| y.act(g)).min().unwrap();
        let mut violator_orbits = BTreeSet::new();
        let mut targets = BTreeSet::new();
        for x in &self.hall_violators {
            if !domain.contains(x) {
                return Err("violator outside the domain".into());
            }
            let x_orbit_key = group.elements().iter().map(|g| x.act(g)).min().unwrap();
            violator_orbits.insert(x_orbit_key);
            let stab = group.stabilizer(x);
            for y in codomain {
                if group.stabilizer(y) == stab {
                    targets.insert(orbit_key(y));
                }
            }
        }
        if violator_orbits.len() != self.hall_violators.len() {
            return Err("violators do not lie in distinct orbits".into());
        }
        let claimed: BTreeSet<U> = self.hall_targets.iter().map(orbit_key).collect();
        if targets != claimed {
            return Err("admissible targets differ from the certificate".into());
        }
        if targets.len() >= violator_orbits.len() {
            return Err(format!(
                "{} violators have {} admissible target orbits; Hall's condition holds",
                violator_orbits.len(),
                targets.len()
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T, U> {
    Exists(EquivariantMap<T, U>),
    Impossible(NonexistenceCertificate<T, U>),
}

impl<T, U> Verdict<T, U> {
    pub fn exists(&self) -> bool {
        matches!(self, Verdict::Exists(_))
    }
}

/// Decides whether a `group`-equivariant injection `X -> Y` exists.
///
/// An equivariant injection maps the orbit of `x` bijectively onto an orbit
/// containing a point with the same stabilizer as `x`, and conversely any
/// injective assignment of X-orbits to such Y-orbits extends to one. The
/// question is therefore a bipartite matching between orbits.
pub fn equivariant_injection_exists<T, U>(
    domain: &[T],
    codomain: &[U],
    group: &PermutationGroup,
) -> Result<Verdict<T, U>, FraenkelError>
where
    T: Act + Ord + Clone + fmt::Debug + fmt::Display,
    U: Act + Ord + Clone + fmt::Debug + fmt::Display,
{
    let x_orbits = orbit_decomposition(domain, group)?;
    let y_orbits = orbit_decomposition(codomain, group)?;

    // stabilizer -> Y-orbits containing a point with that stabilizer
    let mut by_stabilizer: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (oi, orbit) in y_orbits.iter().enumerate() {
        let mut stabs: Vec<Vec<usize>> = orbit.members.iter().map(|y| group.stabilizer(y)).collect();
        stabs.sort();
        stabs.dedup();
        for s in stabs {
            by_stabilizer.entry(s).or_default().push(oi);
        }
    }
    let adjacency: Vec<Vec<usize>> = x_orbits
        .iter()
        .map(|o| by_stabilizer.get(&o.stabilizer).cloned().unwrap_or_default())
        .collect();

    let mut match_y: Vec<Option<usize>> = vec![None; y_orbits.len()];
    let mut match_x: Vec<Option<usize>> = vec![None; x_orbits.len()];
    // greedy pass first, so that equal orbit lists match in order
    for (xi, adj) in adjacency.iter().enumerate() {
        if let Some(&yi) = adj.iter().find(|&&yi| match_y[yi].is_none()) {
            match_y[yi] = Some(xi);
            match_x[xi] = Some(yi);
        }
    }
    for xi in 0..x_orbits.len() {
        if match_x[xi].is_none() {
            let mut visited = vec![false; y_orbits.len()];
            augment(xi, &adjacency, &mut visited, &mut match_y, &mut match_x);
        }
    }

    if let Some(unmatched) = match_x.iter().position(Option::is_none) {
        // alternating search from an unmatched X-orbit: everything reached
        // on the X side is a Hall violator, its targets are all matched
        let mut seen_x = BTreeSet::from([unmatched]);
        let mut seen_y = BTreeSet::new();
        let mut queue = VecDeque::from([unmatched]);
        while let Some(xi) = queue.pop_front() {
            for &yi in &adjacency[xi] {
                if seen_y.insert(yi) {
                    let partner = match_y[yi].expect("maximum matching saturates reachable targets");
                    if seen_x.insert(partner) {
                        queue.push_back(partner);
                    }
                }
            }
        }
        let certificate = NonexistenceCertificate {
            group_order: group.order(),
            supported_domain: domain.iter().filter(|x| group.fixes(*x)).count(),
            supported_codomain: codomain.iter().filter(|y| group.fixes(*y)).count(),
            domain_orbits: x_orbits.iter().map(summary).collect(),
            codomain_orbits: y_orbits.iter().map(summary).collect(),
            hall_violators: seen_x
                .iter()
                .map(|&i| x_orbits[i].representative.clone())
                .collect(),
            hall_targets: seen_y
                .iter()
                .map(|&i| y_orbits[i].representative.clone())
                .collect(),
        };
        return Ok(Verdict::Impossible(certificate));
    }

    let mut pairs = BTreeMap::new();
    for (xi, orbit) in x_orbits.iter().enumerate() {
        let target = &y_orbits[match_x[xi].unwrap()];
        let y = target
            .members
            .iter()
            .find(|y| group.stabilizer(*y) == orbit.stabilizer)
            .expect("matched orbits share a stabilizer");
        for g in group.elements() {
            pairs.insert(orbit.representative.act(g), y.act(g));
        }
    }
    let map = EquivariantMap { pairs };
    debug_assert!(map.verify(domain, group));
    Ok(Verdict::Exists(map))
}

fn summary<T: fmt::Display>(o: &OrbitRecord<T>) -> OrbitSummary {
    OrbitSummary {
        representative: o.representative.to_string(),
        size: o.size(),
        stabilizer_order: o.stabilizer.len(),
    }
}

fn augment(
    xi: usize,
    adjacency: &[Vec<usize>],
    visited: &mut [bool],
    match_y: &mut [Option<usize>],
    match_x: &mut [Option<usize>],
) -> bool {
    for &yi in &adjacency[xi] {
        if visited[yi] {
            continue;
        }
        visited[yi] = true;
        let free = match match_y[yi] {
            None => true,
            Some(other) => augment(other, adjacency, visited, match_y, match_x),
        };
        if free {
            match_y[yi] = Some(xi);
            match_x[xi] = Some(yi);
            return true;
        }
    }
    false
}

/// One line of a certificate bundle: the outcome for one support size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FraenkelRecord {
    pub kind: &'static str,
    pub atoms: usize,
    pub support_size: usize,
    pub block_bound: usize,
    pub supported_sequences: usize,
    pub supported_partitions: usize,
    /// `a(|E|) > B(|E|)`, not claimed for an empty support.
    pub strict_inequality: Option<bool>,
    pub injection_exists: bool,
    pub pigeonhole_suffices: bool,
    pub group_order: usize,
    pub domain_orbits: usize,
    pub codomain_orbits: usize,
    pub hall_violators: usize,
    pub hall_targets: usize,
    pub certificate_rechecked: bool,
}

/// For each support size `e`, takes `E = {0, .., e - 1}` inside `atoms`
/// atoms and compares E-supported injective sequences with E-supported
/// finite-shadow partitions, then runs the certifier on
/// `seq^{1-1}(A) -> shadow partitions` under `fix(E)`.
pub fn fraenkel_report(
    atoms: usize,
    support_sizes: &[usize],
    bound: usize,
    atom_limit: usize,
) -> Result<Vec<FraenkelRecord>, FraenkelError> {
    if atoms > atom_limit {
        return Err(FraenkelError::TooManyAtoms {
            atoms,
            limit: atom_limit,
        });
    }
    let atom_set = AtomSet::new(atoms)?;
    let mut sizes = support_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let domain: Vec<FinSeq> = enumerate_injective_sequences(&atom_set.carrier()).collect();
    sizes
        .into_iter()
        .map(|e_size| {
            if e_size > atoms || bound == 0 || bound >= atoms - e_size {
                return Err(FraenkelError::Precondition(format!(
                    "support size {e_size} with bound {bound} needs 1 <= b < {atoms} - {e_size}"
                )));
            }
            let e = Support::initial(e_size);
            let seqs = supported_sequences(&atom_set, &e)?;
            let parts = supported_partitions(&atom_set, &e, bound)?;
            let to_usize = |n: num_bigint::BigUint| n.to_usize().expect("small count");
            if seqs.len() != to_usize(arrangement_count(e_size))
                || parts.len() != to_usize(bell_count(e_size))
            {
                return Err(FraenkelError::CharacterizationMismatch(format!(
                    "support size {e_size}: counts ({}, {}) disagree with the recurrences",
                    seqs.len(),
                    parts.len()
                )));
            }
            let group = PermutationGroup::fix(&atom_set, &e, atom_limit)?;
            let codomain = finite_shadow_partitions(&atom_set, &e, bound);
            let verdict = equivariant_injection_exists(&domain, &codomain, &group)?;
            let mut record = FraenkelRecord {
                kind: "fraenkel",
                atoms,
                support_size: e_size,
                block_bound: bound,
                supported_sequences: seqs.len(),
                supported_partitions: parts.len(),
                strict_inequality: (e_size > 0).then_some(seqs.len() > parts.len()),
                injection_exists: verdict.exists(),
                pigeonhole_suffices: false,
                group_order: group.order(),
                domain_orbits: 0,
                codomain_orbits: 0,
                hall_violators: 0,
                hall_targets: 0,
                certificate_rechecked: false,
            };
            if let Verdict::Impossible(cert) = &verdict {
                record.pigeonhole_suffices = cert.pigeonhole_suffices();
                record.domain_orbits = cert.domain_orbits.len();
                record.codomain_orbits = cert.codomain_orbits.len();
                record.hall_violators = cert.hall_violators.len();
                record.hall_targets = cert.hall_targets.len();
                record.certificate_rechecked = cert.recheck(&domain, &codomain, &group).is_ok();
            }
            Ok(record)
        })
        .collect()
}

//! Exhaustive property suites behind `seqpart verify`.
//!
//! Each suite returns a list of named checks. A failing check carries the
//! first counterexample found. Everything is deterministic, so two runs
//! print the same bytes.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::counting::{
    arrangement_table, bell_table, enumerate_injective_sequences, enumerate_partitions,
    enumerate_sequences, Carrier, FinSeq, SetPartition,
};
use crate::diagonal::{earlier_indices, BaseFamily, DiagonalFamily};
use crate::encodings::{
    bounded_partition_to_seq, bounded_seq_to_partition, decode_nat_as_seq, encode_u64_seq_as_nat,
    escape_iteration, first_occurrence_order, flatten_to_injective_stream, least_avoiding_row,
    partition_to_seq_dedekind, seq_to_partition_dedekind, MarkerGrid, MarkerUniverse,
};
use crate::fraenkel::{
    characterized_partitions, equivariant_injection_exists, filter_supported_partitions,
    finite_shadow_partitions, is_supported, AtomSet, PermutationGroup, Support, Verdict,
    DEFAULT_GROUP_ATOM_LIMIT,
};
use crate::text::{
    format_partition, format_sequence, grid_carrier, marker_carrier, parse_partition,
    parse_sequence,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Counting,
    Dedekind,
    Bounded,
    Diagonal,
    Fraenkel,
    Skeleton,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Counting,
        Suite::Dedekind,
        Suite::Bounded,
        Suite::Diagonal,
        Suite::Fraenkel,
        Suite::Skeleton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counting => "counting",
            Suite::Dedekind => "dedekind",
            Suite::Bounded => "bounded",
            Suite::Diagonal => "diagonal",
            Suite::Fraenkel => "fraenkel",
            Suite::Skeleton => "skeleton",
        }
    }

    pub fn run(self) -> Vec<Check> {
        match self {
            Suite::Counting => counting_suite(),
            Suite::Dedekind => dedekind_suite(),
            Suite::Bounded => bounded_suite(),
            Suite::Diagonal => diagonal_suite(),
            Suite::Fraenkel => fraenkel_suite(),
            Suite::Skeleton => skeleton_suite(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub kind: &'static str,
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Checks {
    suite: &'static str,
    out: Vec<Check>,
}

impl Checks {
    fn new(suite: Suite) -> Self {
        Checks {
            suite: suite.name(),
            out: Vec::new(),
        }
    }

    /// `result` is `Ok(summary)` or `Err(first counterexample)`.
    fn record(&mut self, name: impl Into<String>, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.out.push(Check {
            kind: "check",
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn first_failure<T, F>(items: impl IntoIterator<Item = T>, mut ok: F) -> Result<usize, String>
where
    F: FnMut(&T) -> Result<(), String>,
{
    let mut n = 0;
    for item in items {
        ok(&item)?;
        n += 1;
    }
    Ok(n)
}

fn counting_suite() -> Vec<Check> {
    let mut c = Checks::new(Suite::Counting);
    let a = arrangement_table(1000);
    let b = bell_table(1000);

    c.record(
        "recurrences match enumeration for n <= 8",
        first_failure(0..=8usize, |&n| {
            let carrier = Carrier::new(n);
            let ea = enumerate_injective_sequences(&carrier).count();
            let eb = enumerate_partitions(&carrier, None).count();
            if BigUint::from(ea) == a[n] && BigUint::from(eb) == b[n] {
                Ok(())
            } else {
                Err(format!("n={n}: enumerated ({ea}, {eb}), recurrences ({}, {})", a[n], b[n]))
            }
        })
        .map(|k| format!("{k} sizes")),
    );

    c.record(
        "a(n) > B(n) for 1 <= n <= 1000",
        first_failure(1..=1000usize, |&n| {
            if a[n] > b[n] {
                Ok(())
            } else {
                Err(format!("n={n}: a(n)={} B(n)={}", a[n], b[n]))
            }
        })
        .map(|k| format!("{k} rows, a(1000) has {} digits", a[1000].to_string().len())),
    );

    c.record(
        "enumerations are duplicate-free and canonical for n <= 6",
        first_failure(0..=6usize, |&n| {
            let carrier = Carrier::new(n);
            let parts: Vec<SetPartition> = enumerate_partitions(&carrier, None).collect();
            if let Some(p) = parts
                .iter()
                .find(|p| SetPartition::from_rgs(p.rgs().to_vec()).is_err())
            {
                return Err(format!("n={n}: non-canonical {:?}", p.rgs()));
            }
            if parts.iter().collect::<HashSet<_>>().len() != parts.len() {
                return Err(format!("n={n}: duplicate partition"));
            }
            let seqs: Vec<FinSeq> = enumerate_injective_sequences(&carrier).collect();
            if seqs.iter().collect::<HashSet<_>>().len() != seqs.len() {
                return Err(format!("n={n}: duplicate injective sequence"));
            }
            if let Some(s) = seqs.iter().find(|s| !s.is_injective()) {
                return Err(format!("n={n}: {s} is not injective"));
            }
            let all: Vec<FinSeq> = enumerate_sequences(&carrier, 3).collect();
            if all.iter().collect::<HashSet<_>>().len() != all.len() {
                return Err(format!("n={n}: duplicate sequence"));
            }
            Ok(())
        })
        .map(|k| format!("{k} sizes")),
    );

    c.record(
        "bound equal to carrier size changes nothing",
        first_failure(0..=8usize, |&n| {
            let carrier = Carrier::new(n);
            let unbounded: Vec<SetPartition> = enumerate_partitions(&carrier, None).collect();
            let bounded: Vec<SetPartition> =
                enumerate_partitions(&carrier, Some(n.max(1))).collect();
            (unbounded == bounded)
                .then_some(())
                .ok_or_else(|| format!("n={n}"))
        })
        .map(|k| format!("{k} sizes")),
    );
    c.out
}

/// Sequences, images and decodings of the marker encoding on base 3, M = 4.
fn dedekind_suite() -> Vec<Check> {
    let mut c = Checks::new(Suite::Dedekind);
    let universe = MarkerUniverse::new(3, 4);
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let carrier = marker_carrier(&names, 4).expect("distinct names");
    let seqs: Vec<FinSeq> = enumerate_sequences(&Carrier::new(3), 4).collect();
    let images: Vec<SetPartition> = seqs
        .iter()
        .map(|s| seq_to_partition_dedekind(s, &universe).expect("within budget"))
        .collect();

    c.record(
        "images are pairwise distinct",
        distinct_images(&seqs, &images).map(|k| format!("{k} sequences")),
    );
    c.record(
        "decoder inverts encoder",
        first_failure(seqs.iter().zip(&images), |(s, p)| {
            match partition_to_seq_dedekind(p, &universe) {
                Ok(d) if d == **s => Ok(()),
                other => Err(format!("{s} -> {p} -> {other:?}")),
            }
        })
        .map(|k| format!("{k} round trips")),
    );
    c.record(
        "every block holds at most one base label",
        first_failure(&images, |p| {
            match p.blocks().iter().find(|b| b.iter().filter(|&&x| x < 3).count() > 1) {
                Some(b) => Err(format!("{p}: block {b:?}")),
                None => Ok(()),
            }
        })
        .map(|k| format!("{k} images")),
    );
    c.record(
        "textual formats round trip",
        first_failure(seqs.iter().zip(&images), |(s, p)| {
            let seq_text = format_sequence(&carrier, s);
            let part_text = format_partition(&carrier, p);
            let s2 = parse_sequence(&carrier, &seq_text).map_err(|e| e.to_string())?;
            let p2 = parse_partition(&carrier, &part_text).map_err(|e| e.to_string())?;
            if s2 == **s && p2 == **p {
                Ok(())
            } else {
                Err(format!("`{seq_text}` / `{part_text}`"))
            }
        })
        .map(|k| format!("{k} pairs")),
    );
    c.record(
        "non-images are rejected",
        first_failure(enumerate_partitions(&Carrier::new(7), None), |p| {
            let in_image = images.contains(p);
            match (partition_to_seq_dedekind(p, &universe), in_image) {
                (Ok(_), true) | (Err(_), false) => Ok(()),
                (r, _) => Err(format!("{p}: decoder returned {r:?}")),
            }
        })
        .map(|k| format!("{k} partitions of 7 labels")),
    );
    c.out
}

fn distinct_images(seqs: &[FinSeq], images: &[SetPartition]) -> Result<usize, String> {
    let mut seen: HashMap<&SetPartition, &FinSeq> = HashMap::new();
    for (s, p) in seqs.iter().zip(images) {
        if let Some(prev) = seen.insert(p, s) {
            return Err(format!("{prev} and {s} both encode to {p}"));
        }
    }
    Ok(seqs.len())
}

/// The grid encoding on n = 2: 16 cells plus 4 plain labels.
fn bounded_suite() -> Vec<Check> {
    let mut c = Checks::new(Suite::Bounded);
    let n = 2;
    let grid = MarkerGrid::new(n, 20).expect("carrier holds the grid");
    let seqs: Vec<FinSeq> = enumerate_sequences(&Carrier::new(20), n).collect();
    let images: Vec<SetPartition> = seqs
        .iter()
        .map(|s| bounded_seq_to_partition(s, &grid).expect("length within bound"))
        .collect();

    c.record(
        "images are pairwise distinct",
        distinct_images(&seqs, &images).map(|k| format!("{k} sequences")),
    );
    c.record(
        "decoder inverts encoder",
        first_failure(seqs.iter().zip(&images), |(s, p)| {
            match bounded_partition_to_seq(p, &grid) {
                Ok(d) if d == **s => Ok(()),
                other => Err(format!("{s} -> {p} -> {other:?}")),
            }
        })
        .map(|k| format!("{k} round trips")),
    );
    c.record(
        "exactly one tail block inside one grid row",
        first_failure(seqs.iter().zip(&images), |(s, p)| {
            let tails: Vec<Vec<usize>> = p
                .blocks()
                .into_iter()
                .filter(|b| {
                    b.len() >= 2 && {
                        let row = grid.row_of(b[0]);
                        row.is_some()
                            && b.iter().all(|&x| grid.row_of(x) == row)
                            && b.contains(&grid.cell(row.unwrap(), n + 1))
                    }
                })
                .collect();
            let j = least_avoiding_row(s, &grid).map_err(|e| e.to_string())?;
            match tails.as_slice() {
                [t] if t.len() == n + 2 - s.len() && grid.row_of(t[0]) == Some(j) => Ok(()),
                _ => Err(format!("{s} -> {p}: tails {tails:?}")),
            }
        })
        .map(|k| format!("{k} images")),
    );
    let plain: Vec<String> = ["w", "x", "y", "z"].map(String::from).to_vec();
    let carrier = grid_carrier(n, &plain).expect("distinct names");
    c.record(
        "textual formats round trip",
        first_failure(seqs.iter().zip(&images), |(s, p)| {
            let part_text = format_partition(&carrier, p);
            let seq_text = format_sequence(&carrier, s);
            let p2 = parse_partition(&carrier, &part_text).map_err(|e| e.to_string())?;
            let s2 = parse_sequence(&carrier, &seq_text).map_err(|e| e.to_string())?;
            if s2 == **s && p2 == **p {
                Ok(())
            } else {
                Err(format!("`{seq_text}` / `{part_text}`"))
            }
        })
        .map(|k| format!("{k} pairs")),
    );
    let rows: Vec<usize> = seqs
        .iter()
        .map(|s| least_avoiding_row(s, &grid).expect("within bound"))
        .collect();
    // Case 1: same avoided row, Case 2: different rows
    let mut same = None;
    let mut different = None;
    'outer: for i in 0..seqs.len() {
        for j in i + 1..seqs.len() {
            if rows[i] == rows[j] && same.is_none() {
                same = Some((i, j));
            }
            if rows[i] != rows[j] && different.is_none() {
                different = Some((i, j));
            }
            if same.is_some() && different.is_some() {
                break 'outer;
            }
        }
    }
    let case = |pair: Option<(usize, usize)>, label: &str| match pair {
        Some((i, j)) if images[i] != images[j] => Ok(format!(
            "{} vs {} (rows {} and {})",
            seqs[i], seqs[j], rows[i], rows[j]
        )),
        Some((i, j)) => Err(format!("{} and {} collide", seqs[i], seqs[j])),
        None => Err(format!("no pair exercises {label}")),
    };
    c.record("injectivity case: same avoided row", case(same, "equal rows"));
    c.record(
        "injectivity case: different avoided rows",
        case(different, "different rows"),
    );
    c.out
}

pub const DIAGONAL_FAMILIES: [&str; 3] = ["singleton:m", "evens", "periodic:1.011"];
pub const DIAGONAL_K: u64 = 64;
/// Lower-copy indices checked against each `G(k)`: `Lower(m)` for `2m < ..`.
pub const DIAGONAL_LOWER_SPAN: u64 = 256;

fn diagonal_suite() -> Vec<Check> {
    let mut c = Checks::new(Suite::Diagonal);
    for desc in DIAGONAL_FAMILIES {
        let family = DiagonalFamily::new(desc.parse::<BaseFamily>().expect("valid description"));
        let result = first_failure(0..DIAGONAL_K, |&k| {
            for earlier in earlier_indices(k, DIAGONAL_LOWER_SPAN) {
                let w = family
                    .distinguishing_witness(k, earlier)
                    .map_err(|e| e.to_string())?;
                // re-evaluate both oracles independently of the witness record
                let derived = family.member(k);
                let differs = crate::diagonal::LazySubset::contains(&derived, w.xi)
                    != family.contains_at(earlier, w.xi);
                if !differs {
                    return Err(format!("G({k}) agrees with {earlier:?} at {}", w.xi));
                }
            }
            Ok(())
        });
        c.record(
            format!("witnesses separate G(k) from earlier sets, base {desc}"),
            result.map(|k| format!("k < {k}")),
        );
    }
    let singletons = DiagonalFamily::new("singleton:m".parse().expect("valid"));
    c.record(
        "G(0) = N \\ {0} and G(1) = N \\ {0,1} on 0..=200 for singleton:m",
        first_failure(0..=200u64, |&x| {
            let g0 = singletons.contains(0, x);
            let g1 = singletons.contains(1, x);
            if g0 == (x != 0) && g1 == (x > 1) {
                Ok(())
            } else {
                Err(format!("at {x}: G(0) {g0}, G(1) {g1}"))
            }
        })
        .map(|k| format!("{k} points")),
    );
    c.out
}

pub const FRAENKEL_ATOMS: usize = 6;
pub const FRAENKEL_SUPPORT_SIZES: [usize; 3] = [1, 2, 3];
pub const FRAENKEL_BOUND: usize = 2;

fn fraenkel_suite() -> Vec<Check> {
    let mut c = Checks::new(Suite::Fraenkel);
    let atoms = AtomSet::new(FRAENKEL_ATOMS).expect("enough atoms");
    let all_seqs: Vec<FinSeq> = enumerate_injective_sequences(&atoms.carrier()).collect();
    let arrangements = arrangement_table(FRAENKEL_ATOMS);
    let bells = bell_table(FRAENKEL_ATOMS);

    for e_size in FRAENKEL_SUPPORT_SIZES {
        let e = Support::initial(e_size);
        let label = format!("|E| = {e_size}, b = {FRAENKEL_BOUND}");

        let supported: Vec<&FinSeq> = all_seqs.iter().filter(|s| is_supported(*s, &atoms, &e)).collect();
        let over_e: Vec<&FinSeq> = all_seqs
            .iter()
            .filter(|s| s.entries().iter().all(|&x| e.contains(x)))
            .collect();
        c.record(
            format!("supported sequences are the sequences over E, {label}"),
            if supported == over_e && BigUint::from(supported.len()) == arrangements[e_size] {
                Ok(format!("{} sequences", supported.len()))
            } else {
                Err(format!("{} supported vs {} over E", supported.len(), over_e.len()))
            },
        );

        let mut parts = filter_supported_partitions(&atoms, &e, FRAENKEL_BOUND);
        parts.sort();
        let characterized = characterized_partitions(&atoms, &e);
        c.record(
            format!("supported partitions are Y plus singletons, {label}"),
            if parts == characterized && BigUint::from(parts.len()) == bells[e_size] {
                Ok(format!("{} partitions", parts.len()))
            } else {
                Err(format!("{} supported vs {} characterized", parts.len(), characterized.len()))
            },
        );

        c.record(
            format!("strict inequality, {label}"),
            if supported.len() > parts.len() {
                Ok(format!("{} > {}", supported.len(), parts.len()))
            } else {
                Err(format!("{} <= {}", supported.len(), parts.len()))
            },
        );

        let group = PermutationGroup::fix(&atoms, &e, DEFAULT_GROUP_ATOM_LIMIT).expect("small group");
        let codomain = finite_shadow_partitions(&atoms, &e, FRAENKEL_BOUND);
        let verdict = equivariant_injection_exists(&all_seqs, &codomain, &group);
        c.record(
            format!("no equivariant injection, re-checked certificate, {label}"),
            match verdict {
                Ok(Verdict::Impossible(cert)) => cert
                    .recheck(&all_seqs, &codomain, &group)
                    .map(|()| {
                        format!(
                            "{} fixed sequences vs {} fixed partitions; {} violator orbits, {} targets",
                            cert.supported_domain,
                            cert.supported_codomain,
                            cert.hall_violators.len(),
                            cert.hall_targets.len()
                        )
                    }),
                Ok(Verdict::Exists(_)) => Err("an equivariant injection was found".into()),
                Err(e) => Err(e.to_string()),
            },
        );

        let outside = FRAENKEL_ATOMS - e_size;
        let mut at_boundary = filter_supported_partitions(&atoms, &e, outside);
        at_boundary.sort();
        let lump: Vec<Vec<usize>> = (0..e_size)
            .map(|x| vec![x])
            .chain(std::iter::once((e_size..FRAENKEL_ATOMS).collect()))
            .collect();
        let lump = SetPartition::from_blocks(FRAENKEL_ATOMS, &lump).expect("valid blocks");
        c.record(
            format!("bound b = |A \\ E| = {outside} breaks the characterization, |E| = {e_size}"),
            if at_boundary.len() == 2 * characterized.len() && at_boundary.contains(&lump) {
                Ok(format!("{} supported, {} characterized", at_boundary.len(), characterized.len()))
            } else {
                Err(format!("{} supported at the boundary", at_boundary.len()))
            },
        );
    }
    c.out
}

fn skeleton_suite() -> Vec<Check> {
    let mut c = Checks::new(Suite::Skeleton);
    c.record(
        "escape iteration yields 10^4 distinct terms",
        match escape_iteration(|n: &u64| n + 1, |n: &u64| *n, 0u64, 10_000) {
            Ok(terms) if terms.iter().collect::<HashSet<_>>().len() == 10_000 => {
                Ok("10000 terms".into())
            }
            Ok(_) => Err("repeated term".into()),
            Err(e) => Err(e.to_string()),
        },
    );
    c.record(
        "escape iteration reports a non-injective f",
        match escape_iteration(|_: &u64| 0u64, |n: &u64| *n, 1u64, 3) {
            Err(e) => Ok(e.to_string()),
            Ok(t) => Err(format!("no collision in {t:?}")),
        },
    );
    let order = first_occurrence_order(&[vec!["b", "a"], vec!["c", "a"]]);
    c.record(
        "first-occurrence order",
        if order == ["b", "a", "c"] && first_occurrence_order(&[vec!["x"], vec!["x"]]) == ["x"] {
            Ok("b a c".into())
        } else {
            Err(format!("{order:?}"))
        },
    );
    let flat: Vec<&str> =
        flatten_to_injective_stream(vec![vec!["x"], vec!["x"], vec!["x", "y"], vec!["z"]]).collect();
    let skip: Vec<&str> = flatten_to_injective_stream(vec![vec![], vec!["a"]]).collect();
    c.record(
        "flatten to injective stream",
        if flat == ["x", "y", "z"] && skip == ["a"] {
            Ok("x y z".into())
        } else {
            Err(format!("{flat:?} / {skip:?}"))
        },
    );
    c.record(
        "seq <-> N: decode(encode(s)) = s, length <= 3 over 0..=10",
        first_failure(enumerate_sequences(&Carrier::new(11), 3), |s| {
            let v: Vec<u64> = s.entries().iter().map(|&x| x as u64).collect();
            let z = encode_u64_seq_as_nat(&v);
            let back: Vec<BigUint> = decode_nat_as_seq(&z).map_err(|e| e.to_string())?;
            let want: Vec<BigUint> = v.iter().map(|&x| BigUint::from(x)).collect();
            (back == want).then_some(()).ok_or_else(|| format!("{s} -> {z}"))
        })
        .map(|k| format!("{k} sequences")),
    );
    c.record(
        "seq <-> N: encode(decode(z)) = z on 0..=10^4",
        first_failure(0..=10_000u32, |&z| {
            let z = BigUint::from(z);
            let s = decode_nat_as_seq(&z).map_err(|e| e.to_string())?;
            (crate::encodings::encode_seq_as_nat(&s) == z)
                .then_some(())
                .ok_or_else(|| format!("{z}"))
        })
        .map(|k| format!("{k} naturals")),
    );
    c.out
}

/// Runs the requested suites in the fixed order of [`Suite::ALL`].
pub fn run_suites(suites: &[Suite]) -> Vec<Check> {
    let mut chosen = suites.to_vec();
    chosen.sort();
    chosen.dedup();
    chosen.into_iter().flat_map(Suite::run).collect()
}

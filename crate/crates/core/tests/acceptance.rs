//! Acceptance suite: seven criteria, one PASS/FAIL line each.
//!
//! Expected values below were computed outside this crate (closed forms,
//! Stirling-number sums, hand derivations) and frozen here.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use seqpart::counting::{
    arrangement_table, bell_table, enumerate_injective_sequences, enumerate_partitions,
    enumerate_sequences,
};
use seqpart::diagonal::{earlier_indices, BaseFamily, DiagonalFamily, LazySubset};
use seqpart::encodings::{
    bounded_partition_to_seq, bounded_seq_to_partition, decode_nat_as_seq, encode_u64_seq_as_nat,
    escape_iteration, first_occurrence_order, flatten_to_injective_stream, least_avoiding_row,
    partition_to_seq_dedekind, seq_to_partition_dedekind, MarkerGrid, MarkerUniverse,
    TwoCopyOrdinal,
};
use seqpart::fraenkel::{
    characterized_partitions, equivariant_injection_exists, filter_supported_partitions,
    finite_shadow_partitions, is_supported, supported_partitions, supported_sequences, AtomSet,
    PermutationGroup, Support, Verdict, DEFAULT_GROUP_ATOM_LIMIT,
};
use seqpart::{Carrier, FinSeq, SetPartition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const ARRANGEMENTS: [u64; 10] = [1, 2, 5, 16, 65, 326, 1957, 13700, 109601, 986410];
const BELLS: [u64; 10] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];
const A30: &str = "721032028774273509017636384693701";
const B30: &str = "846749014511809332450147";
// digit counts and residues mod 1e9+7 of a(1000), B(1000)
const A1000_DIGITS: usize = 2569;
const B1000_DIGITS: usize = 1928;
const A1000_MOD: u64 = 616547549;
const B1000_MOD: u64 = 465231251;

fn criterion_counting() -> Outcome {
    let a = arrangement_table(1000);
    let b = bell_table(1000);
    for n in 1..=1000 {
        ensure(a[n] > b[n], || format!("a({n}) <= B({n})"))?;
    }
    for n in 0..=9 {
        ensure(a[n] == BigUint::from(ARRANGEMENTS[n]), || format!("a({n}) = {}", a[n]))?;
        ensure(b[n] == BigUint::from(BELLS[n]), || format!("B({n}) = {}", b[n]))?;
    }
    ensure(a[30].to_string() == A30 && b[30].to_string() == B30, || "n = 30".into())?;
    let p = BigUint::from(1_000_000_007u64);
    ensure(
        a[1000].to_string().len() == A1000_DIGITS && &a[1000] % &p == BigUint::from(A1000_MOD),
        || "a(1000) fingerprint".into(),
    )?;
    ensure(
        b[1000].to_string().len() == B1000_DIGITS && &b[1000] % &p == BigUint::from(B1000_MOD),
        || "B(1000) fingerprint".into(),
    )?;
    for n in 0..=8 {
        let c = Carrier::new(n);
        let inj = enumerate_injective_sequences(&c).count() as u64;
        let parts = enumerate_partitions(&c, None).count() as u64;
        ensure(inj == ARRANGEMENTS[n] && parts == BELLS[n], || {
            format!("n = {n}: enumerated {inj} / {parts}")
        })?;
    }
    Ok("a(n) > B(n) for n <= 1000; enumeration agrees for n <= 8".into())
}

fn criterion_dedekind() -> Outcome {
    let universe = MarkerUniverse::new(3, 4);
    let seqs: Vec<FinSeq> = enumerate_sequences(&Carrier::new(3), 4).collect();
    ensure(seqs.len() == 121, || format!("{} sequences", seqs.len()))?;
    let mut images = HashSet::new();
    for s in &seqs {
        let p = seq_to_partition_dedekind(s, &universe).map_err(|e| e.to_string())?;
        for block in p.blocks() {
            let base = block.iter().filter(|&&x| x < 3).count();
            ensure(base <= 1, || format!("{s} -> {p}: {base} base labels in a block"))?;
        }
        let back = partition_to_seq_dedekind(&p, &universe).map_err(|e| e.to_string())?;
        ensure(back == *s, || format!("{s} decodes to {back}"))?;
        ensure(images.insert(p.clone()), || format!("{s} collides at {p}"))?;
    }
    // <x, y, x> over {x y z | m0..m3}
    let xyx = seq_to_partition_dedekind(&FinSeq(vec![0, 1, 0]), &universe).unwrap();
    ensure(xyx.to_string() == "{0 3 5} {1 4} {2} {6}", || format!("<x,y,x> -> {xyx}"))?;
    Ok("121 distinct images, all round trip".into())
}

fn criterion_bounded() -> Outcome {
    let grid = MarkerGrid::new(2, 20).map_err(|e| e.to_string())?;
    let seqs: Vec<FinSeq> = enumerate_sequences(&Carrier::new(20), 2).collect();
    ensure(seqs.len() == 421, || format!("{} sequences", seqs.len()))?;
    let mut images = HashSet::new();
    let mut rows = Vec::new();
    for s in &seqs {
        // least row of the 4x4 grid (labels 4j..4j+3) that s avoids
        let j = (0..4)
            .find(|&j| s.entries().iter().all(|&x| x / 4 != j || x >= 16))
            .expect("two entries cannot meet three rows");
        let got = least_avoiding_row(s, &grid).map_err(|e| e.to_string())?;
        ensure(got == j, || format!("{s}: row {got}, expected {j}"))?;
        rows.push(j);
        let p = bounded_seq_to_partition(s, &grid).map_err(|e| e.to_string())?;
        let back = bounded_partition_to_seq(&p, &grid).map_err(|e| e.to_string())?;
        ensure(back == *s, || format!("{s} decodes to {back}"))?;
        ensure(images.insert(p), || format!("{s} collides"))?;
    }
    // Case 1: <> and <4> both avoid row 0; Case 2: <> avoids 0, <0> avoids 1
    let pick = |entries: &[usize]| seqs.iter().position(|s| s.entries() == entries).unwrap();
    let (e, four, zero) = (pick(&[]), pick(&[4]), pick(&[0]));
    ensure(rows[e] == rows[four] && rows[e] != rows[zero], || "case pairs".into())?;
    let img = |i: usize| bounded_seq_to_partition(&seqs[i], &grid).unwrap();
    ensure(img(e) != img(four), || "case 1 pair collides".into())?;
    ensure(img(e) != img(zero), || "case 2 pair collides".into())?;
    Ok("421 distinct images, all round trip, both cases exercised".into())
}

fn criterion_diagonal() -> Outcome {
    for desc in ["singleton:m", "evens", "periodic:1.011"] {
        let base: BaseFamily = desc.parse().map_err(|e| format!("{desc}: {e}"))?;
        let family = DiagonalFamily::new(base.clone());
        for k in 0..=64u64 {
            for earlier in earlier_indices(k, 256) {
                let w = family.distinguishing_witness(k, earlier).map_err(|e| e.to_string())?;
                let in_g = family.member(k).contains(w.xi);
                let in_earlier = match earlier {
                    TwoCopyOrdinal::Lower(m) => base.member(m).contains(w.xi),
                    TwoCopyOrdinal::Upper(m) => family.member(m).contains(w.xi),
                };
                ensure(in_g != in_earlier, || {
                    format!("{desc}: G({k}) agrees with {earlier} at {}", w.xi)
                })?;
            }
        }
    }
    let singletons = DiagonalFamily::new("singleton:m".parse().unwrap());
    for x in 0..=200u64 {
        ensure(singletons.contains(0, x) == (x != 0), || format!("G(0) at {x}"))?;
        ensure(singletons.contains(1, x) == (x >= 2), || format!("G(1) at {x}"))?;
    }
    let w = singletons.distinguishing_witness(2, TwoCopyOrdinal::Lower(3)).unwrap();
    ensure(w.xi == 6 && w.differs(), || format!("{w:?}"))?;
    Ok("witnesses separate for 3 bases, k <= 64; G(0), G(1) match on 0..=200".into())
}

fn criterion_fraenkel() -> Outcome {
    let atoms = AtomSet::new(6).map_err(|e| e.to_string())?;
    let all_seqs: Vec<FinSeq> = enumerate_injective_sequences(&atoms.carrier()).collect();
    let expected = [(1, 2, 1), (2, 5, 2), (3, 16, 5)];
    for (e_size, want_seqs, want_parts) in expected {
        let e = Support::initial(e_size);
        let group = PermutationGroup::fix(&atoms, &e, DEFAULT_GROUP_ATOM_LIMIT).map_err(|e| e.to_string())?;
        ensure(group.order() == (1..=6 - e_size).product::<usize>(), || "group order".into())?;

        // generator-based support test against the whole group
        let seqs = supported_sequences(&atoms, &e).map_err(|e| e.to_string())?;
        let by_group: Vec<FinSeq> = all_seqs.iter().filter(|s| group.fixes(*s)).cloned().collect();
        let over_e: Vec<FinSeq> = all_seqs
            .iter()
            .filter(|s| s.entries().iter().all(|&x| x < e_size))
            .cloned()
            .collect();
        ensure(seqs == by_group && seqs == over_e, || format!("|E| = {e_size}: sequences"))?;

        let shadow = finite_shadow_partitions(&atoms, &e, 2);
        let mut parts: Vec<SetPartition> = shadow.iter().filter(|p| group.fixes(*p)).cloned().collect();
        parts.sort();
        ensure(
            shadow.iter().all(|p| is_supported(p, &atoms, &e) == group.fixes(p)),
            || format!("|E| = {e_size}: generator test disagrees with the group"),
        )?;
        // Y plus singletons, built by hand from partitions of E
        let mut by_hand: Vec<SetPartition> = enumerate_partitions(&Carrier::new(e_size), None)
            .map(|y| {
                let mut keys = y.rgs().to_vec();
                keys.extend((e_size..6).map(|x| 100 + x));
                SetPartition::from_keys(&keys)
            })
            .collect();
        by_hand.sort();
        let lib = supported_partitions(&atoms, &e, 2).map_err(|e| e.to_string())?;
        ensure(parts == by_hand && lib == by_hand && characterized_partitions(&atoms, &e) == by_hand, || {
            format!("|E| = {e_size}: partitions")
        })?;
        ensure((seqs.len(), parts.len()) == (want_seqs, want_parts), || {
            format!("|E| = {e_size}: counts ({}, {})", seqs.len(), parts.len())
        })?;
        ensure(seqs.len() > parts.len(), || "inequality".into())?;

        match equivariant_injection_exists(&all_seqs, &shadow, &group).map_err(|e| e.to_string())? {
            Verdict::Impossible(cert) => {
                cert.recheck(&all_seqs, &shadow, &group)?;
                ensure(
                    (cert.supported_domain, cert.supported_codomain) == (want_seqs, want_parts),
                    || "certificate counts".into(),
                )?;
            }
            Verdict::Exists(_) => return Err(format!("|E| = {e_size}: certifier said YES")),
        }

        // at b = |A \ E| the lump A \ E becomes supported as well
        let outside = 6 - e_size;
        ensure(supported_partitions(&atoms, &e, outside).is_err(), || "precondition".into())?;
        let boundary = filter_supported_partitions(&atoms, &e, outside);
        ensure(boundary.len() == 2 * want_parts, || {
            format!("|E| = {e_size}: {} supported at the boundary", boundary.len())
        })?;
    }
    Ok("(2,1) (5,2) (16,5), certificates recheck, boundary flips".into())
}

fn criterion_skeleton() -> Outcome {
    let terms = escape_iteration(|n: &u64| n + 1, |n: &u64| *n, 0u64, 10_000).map_err(|e| e.to_string())?;
    ensure(terms.iter().copied().eq(0..10_000), || "escape terms".into())?;
    for k in [0, 1, 4, 100, 9_999] {
        let t = escape_iteration(|n: &u64| n + 1, |n: &u64| *n, 0u64, k).map_err(|e| e.to_string())?;
        ensure(t[..] == terms[..k], || format!("k = {k} is not a prefix"))?;
    }
    ensure(escape_iteration(|_: &u64| 0u64, |n: &u64| *n, 1u64, 3).is_err(), || "no collision".into())?;

    ensure(first_occurrence_order(&[vec!['b', 'a'], vec!['c', 'a']]) == ['b', 'a', 'c'], || "order".into())?;
    ensure(first_occurrence_order::<char, Vec<char>>(&[]).is_empty(), || "empty order".into())?;
    ensure(first_occurrence_order(&[vec!['x'], vec!['x']]) == ['x'], || "repeats".into())?;

    let flat: Vec<char> = flatten_to_injective_stream(vec![vec!['x'], vec!['x'], vec!['x', 'y'], vec!['z']]).collect();
    ensure(flat == ['x', 'y', 'z'], || format!("{flat:?}"))?;
    let skip: Vec<char> = flatten_to_injective_stream(vec![vec![], vec!['a']]).collect();
    ensure(skip == ['a'], || format!("{skip:?}"))?;
    let mut none = flatten_to_injective_stream(Vec::<Vec<char>>::new());
    ensure(none.next().is_none() && none.exhausted(), || "no exhaustion".into())?;

    for (s, z) in [(vec![], 0u64), (vec![0], 1), (vec![1], 3), (vec![0, 0], 2), (vec![3, 1, 4], 8126)] {
        ensure(encode_u64_seq_as_nat(&s) == BigUint::from(z), || format!("{s:?}"))?;
    }
    ensure(
        encode_u64_seq_as_nat(&[2, 7, 1, 8]) == BigUint::from(538_236_844_275u64),
        || "<2,7,1,8>".into(),
    )?;
    let mut count = 0;
    for s in enumerate_sequences(&Carrier::new(11), 3) {
        let v: Vec<u64> = s.entries().iter().map(|&x| x as u64).collect();
        let back = decode_nat_as_seq(&encode_u64_seq_as_nat(&v)).map_err(|e| e.to_string())?;
        ensure(back.iter().map(|b| b.to_string()).eq(v.iter().map(|x| x.to_string())), || format!("{s}"))?;
        count += 1;
    }
    ensure(count == 1 + 11 + 121 + 1331, || "sequence count".into())?;
    for z in 0..=10_000u32 {
        let z = BigUint::from(z);
        let s = decode_nat_as_seq(&z).map_err(|e| e.to_string())?;
        ensure(seqpart::encodings::encode_seq_as_nat(&s) == z, || format!("{z}"))?;
    }
    Ok("escape, ordering, flattening and seq <-> N all match".into())
}

fn criterion_determinism() -> Outcome {
    let args: Vec<String> = ["seqpart", "verify", "--suite", "all"].map(String::from).to_vec();
    let first = seqpart::cli::run(&args, std::io::empty());
    let second = seqpart::cli::run(&args, std::io::empty());
    ensure(first.code == 0, || format!("exit {}: {}", first.code, first.stderr))?;
    ensure(first.stdout.as_bytes() == second.stdout.as_bytes(), || "outputs differ".into())?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("counting inequality", criterion_counting, Some(Duration::from_secs(5))),
        ("marker encoding", criterion_dedekind, Some(Duration::from_secs(1))),
        ("bounded grid encoding", criterion_bounded, Some(Duration::from_secs(1))),
        ("diagonal witnesses", criterion_diagonal, Some(Duration::from_secs(2))),
        ("Fraenkel mechanism", criterion_fraenkel, Some(Duration::from_secs(30))),
        ("skeleton utilities", criterion_skeleton, Some(Duration::from_secs(2))),
        ("determinism", criterion_determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (result, budget) {
            (Err(e), _) => Err(e),
            (Ok(_), Some(b)) if elapsed >= b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (Ok(detail), _) => Ok(detail),
        };
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {name} ({elapsed:.2?}) {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}) {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

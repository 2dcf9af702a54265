use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use proptest::prelude::*;
use seqpart::diagonal::{BaseFamily, DiagonalFamily};
use seqpart::encodings::{
    bounded_partition_to_seq, bounded_seq_to_partition, cantor_pair, cantor_unpair,
    decode_nat_as_seq, encode_u64_seq_as_nat, escape_iteration, first_occurrence_order,
    partition_to_seq_dedekind, seq_to_partition_dedekind, two_copy_pairing, two_copy_unpairing,
    MarkerGrid, MarkerUniverse,
};
use seqpart::fraenkel::{is_supported, Act, AtomSet, Permutation, PermutationGroup, Support};
use seqpart::text::{format_partition, marker_carrier, parse_partition};
use seqpart::{FinSeq, SetPartition};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|image| Permutation::from_image(image).unwrap())
}

fn partition(n: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(0..n.max(1), n).prop_map(|keys| SetPartition::from_keys(&keys))
}

fn seq(alphabet: usize, max_len: usize) -> impl Strategy<Value = FinSeq> {
    prop::collection::vec(0..alphabet, 0..=max_len).prop_map(FinSeq)
}

fn is_rgs(rgs: &[usize]) -> bool {
    let mut max = None::<usize>;
    rgs.iter().all(|&r| {
        let ok = match max {
            None => r == 0,
            Some(m) => r <= m + 1,
        };
        max = max.max(Some(r));
        ok
    })
}

proptest! {
    #[test]
    fn action_on_sequences_is_a_left_action(
        (s, p, q) in (seq(6, 6), permutation(6), permutation(6))
    ) {
        prop_assert_eq!(s.act(&p.compose(&q)), s.act(&q).act(&p));
        prop_assert_eq!(s.act(&Permutation::identity(6)), s.clone());
        prop_assert_eq!(s.act(&p).act(&p.inverse()), s);
    }

    #[test]
    fn action_on_partitions_is_a_left_action(
        (x, p, q) in (partition(6), permutation(6), permutation(6))
    ) {
        let moved = x.act(&p.compose(&q));
        prop_assert!(is_rgs(moved.rgs()));
        prop_assert_eq!(moved.block_count(), x.block_count());
        prop_assert_eq!(&moved, &x.act(&q).act(&p));
        // blocks move elementwise
        for b in x.blocks() {
            let image: Vec<usize> = b.iter().map(|&a| p.apply(a)).collect();
            let target = x.act(&p).block_of(image[0]).unwrap();
            prop_assert_eq!(image.into_iter().collect::<BTreeSet<_>>(), target.into_iter().collect());
        }
    }

    #[test]
    fn supports_move_with_the_object(
        (s, p, e) in (seq(5, 4), permutation(5), prop::collection::btree_set(0..5usize, 0..4))
    ) {
        let atoms = AtomSet::new(5).unwrap();
        let e = Support::new(e);
        let moved_e = Support::new(e.iter().map(|a| p.apply(a)));
        prop_assert_eq!(
            is_supported(&s, &atoms, &e),
            is_supported(&s.act(&p), &atoms, &moved_e)
        );
    }

    #[test]
    fn generator_test_agrees_with_group(
        (x, e) in (partition(5), prop::collection::btree_set(0..5usize, 0..4))
    ) {
        let atoms = AtomSet::new(5).unwrap();
        let e = Support::new(e);
        let group = PermutationGroup::fix(&atoms, &e, 7).unwrap();
        prop_assert_eq!(is_supported(&x, &atoms, &e), group.fixes(&x));
    }

    #[test]
    fn from_keys_yields_restricted_growth(x in partition(9)) {
        prop_assert!(is_rgs(x.rgs()));
        prop_assert_eq!(SetPartition::from_rgs(x.rgs().to_vec()).unwrap(), x.clone());
        let blocks = x.blocks();
        prop_assert_eq!(SetPartition::from_blocks(9, &blocks).unwrap(), x);
    }

    #[test]
    fn dedekind_round_trip((base, markers, entries) in (1..6usize, 0..7usize, prop::collection::vec(0..6usize, 0..7))) {
        let s = FinSeq(entries.into_iter().map(|x| x % base).collect());
        let u = MarkerUniverse::new(base, markers);
        match seq_to_partition_dedekind(&s, &u) {
            Ok(p) => {
                prop_assert!(s.len() <= markers);
                prop_assert_eq!(partition_to_seq_dedekind(&p, &u).unwrap(), s);
            }
            Err(_) => prop_assert!(s.len() > markers),
        }
    }

    #[test]
    fn bounded_round_trip((n, plain, entries) in (0..4usize, 0..4usize, prop::collection::vec(0..64usize, 0..4))) {
        let size = (n + 2) * (n + 2) + plain;
        let s = FinSeq(entries.into_iter().map(|x| x % size).collect());
        let grid = MarkerGrid::new(n, size).unwrap();
        match bounded_seq_to_partition(&s, &grid) {
            Ok(p) => prop_assert_eq!(bounded_partition_to_seq(&p, &grid).unwrap(), s),
            Err(_) => prop_assert!(s.len() > n),
        }
    }

    #[test]
    fn partition_text_round_trip(x in partition(7)) {
        let c = marker_carrier(&["x".to_string(), "y".to_string(), "z".to_string()], 4).unwrap();
        let text = format_partition(&c, &x);
        prop_assert_eq!(parse_partition(&c, &text).unwrap(), x);
    }

    #[test]
    fn parse_partition_never_panics(text in "[{} xyzm0-3]{0,40}") {
        let c = marker_carrier(&["x".to_string(), "y".to_string(), "z".to_string()], 4).unwrap();
        let _ = parse_partition(&c, &text);
    }

    #[test]
    fn seq_nat_round_trip(v in prop::collection::vec(any::<u64>(), 0..6)) {
        let z = encode_u64_seq_as_nat(&v);
        let back = decode_nat_as_seq(&z).unwrap();
        prop_assert_eq!(back, v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn cantor_round_trip(a in any::<u128>(), b in any::<u128>()) {
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        prop_assert_eq!(cantor_unpair(&cantor_pair(&a, &b)), (a, b));
    }

    #[test]
    fn two_copy_round_trip(xi in 0..u64::MAX) {
        prop_assert_eq!(two_copy_unpairing(two_copy_pairing(xi)), xi);
    }

    #[test]
    fn diagonal_witnesses_differ(k in 0..200u64, m in 0..200u64, upper in any::<bool>()) {
        let family = DiagonalFamily::new("periodic:10.110".parse::<BaseFamily>().unwrap());
        let earlier = if upper && k > 0 {
            seqpart::encodings::TwoCopyOrdinal::Upper(m % k)
        } else {
            seqpart::encodings::TwoCopyOrdinal::Lower(m)
        };
        prop_assert!(family.distinguishing_witness(k, earlier).unwrap().differs());
    }

    #[test]
    fn first_occurrence_is_the_union(seqs in prop::collection::vec(prop::collection::vec(0..10u8, 0..5), 0..5)) {
        let order = first_occurrence_order(&seqs);
        let distinct: HashSet<u8> = order.iter().copied().collect();
        prop_assert_eq!(distinct.len(), order.len());
        let union: HashSet<u8> = seqs.iter().flatten().copied().collect();
        prop_assert_eq!(distinct, union);
    }

    #[test]
    fn escape_with_injections_never_repeats(shift in 1..1000u64, mask in 0..4096u64, count in 0..500usize) {
        // f(n) = n + shift misses 0, so seed 0 lies outside its range
        let terms = escape_iteration(|n: &u64| n + shift, |n: &u64| n ^ mask, 0u64, count).unwrap();
        prop_assert_eq!(terms.iter().collect::<HashSet<_>>().len(), count);
    }
}

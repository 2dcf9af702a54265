#![no_main]

use libfuzzer_sys::fuzz_target;
use seqpart::encodings::{bounded_partition_to_seq, bounded_seq_to_partition, MarkerGrid};
use seqpart::SetPartition;

// First byte picks n in 0..=3, the next bytes are block keys for the grid
// cells followed by two plain labels.
fuzz_target!(|data: &[u8]| {
    let Some((&n, keys)) = data.split_first() else {
        return;
    };
    let n = usize::from(n % 4);
    let size = (n + 2) * (n + 2) + 2;
    if keys.len() < size {
        return;
    }
    let grid = MarkerGrid::new(n, size).unwrap();
    let p = SetPartition::from_keys(&keys[..size]);
    if let Ok(s) = bounded_partition_to_seq(&p, &grid) {
        assert_eq!(bounded_seq_to_partition(&s, &grid).unwrap(), p);
    }
});

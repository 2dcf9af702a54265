#![no_main]

use libfuzzer_sys::fuzz_target;
use seqpart::encodings::{partition_to_seq_dedekind, seq_to_partition_dedekind, MarkerUniverse};
use seqpart::SetPartition;

// Input bytes are block keys, one per label of a 3 + 4 label universe.
fuzz_target!(|data: &[u8]| {
    let universe = MarkerUniverse::new(3, 4);
    if data.len() < universe.combined_size() {
        return;
    }
    let p = SetPartition::from_keys(&data[..universe.combined_size()]);
    if let Ok(s) = partition_to_seq_dedekind(&p, &universe) {
        assert_eq!(seq_to_partition_dedekind(&s, &universe).unwrap(), p);
    }
});

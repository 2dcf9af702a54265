#![no_main]

use libfuzzer_sys::fuzz_target;
use seqpart::encodings::{decode_nat_as_seq, encode_seq_as_nat};
use seqpart::text::parse_nat;

fuzz_target!(|data: &str| {
    // cap the input so a single decode stays cheap
    if data.len() > 200 {
        return;
    }
    let Ok(z) = parse_nat(data) else {
        return;
    };
    if let Ok(s) = decode_nat_as_seq(&z) {
        assert_eq!(encode_seq_as_nat(&s), z);
    }
});

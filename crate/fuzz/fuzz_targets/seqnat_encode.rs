#![no_main]

use libfuzzer_sys::fuzz_target;
use seqpart::encodings::{decode_nat_as_seq, encode_seq_as_nat};
use seqpart::text::parse_nat_list;

fuzz_target!(|data: &str| {
    if data.len() > 200 {
        return;
    }
    // every pairing roughly doubles the bit length, so keep sequences short
    let Ok(s) = parse_nat_list(data) else {
        return;
    };
    if s.len() > 12 {
        return;
    }
    let z = encode_seq_as_nat(&s);
    assert_eq!(decode_nat_as_seq(&z).unwrap(), s);
});

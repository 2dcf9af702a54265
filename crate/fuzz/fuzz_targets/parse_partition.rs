#![no_main]

use libfuzzer_sys::fuzz_target;
use seqpart::text::{format_partition, marker_carrier, parse_partition};

fuzz_target!(|data: &str| {
    let names: Vec<String> = ["x", "y", "z"].map(String::from).to_vec();
    let carrier = marker_carrier(&names, 4).unwrap();
    if let Ok(p) = parse_partition(&carrier, data) {
        let text = format_partition(&carrier, &p);
        assert_eq!(parse_partition(&carrier, &text).unwrap(), p);
    }
});

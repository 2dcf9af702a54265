#![no_main]

use libfuzzer_sys::fuzz_target;
use seqpart::text::{format_sequence, marker_carrier, parse_sequence};

fuzz_target!(|data: &str| {
    let names: Vec<String> = ["x", "y", "z"].map(String::from).to_vec();
    let carrier = marker_carrier(&names, 4).unwrap();
    if let Ok(s) = parse_sequence(&carrier, data) {
        let text = format_sequence(&carrier, &s);
        assert_eq!(parse_sequence(&carrier, &text).unwrap(), s);
    }
});

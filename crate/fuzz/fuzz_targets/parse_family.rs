#![no_main]

use libfuzzer_sys::fuzz_target;
use seqpart::diagonal::{BaseFamily, DiagonalFamily};
use seqpart::encodings::TwoCopyOrdinal;

fuzz_target!(|data: &str| {
    let Ok(base) = data.parse::<BaseFamily>() else {
        return;
    };
    let reparsed: BaseFamily = base.to_string().parse().unwrap();
    assert_eq!(reparsed.to_string(), base.to_string());
    let family = DiagonalFamily::new(base);
    for m in 0..8 {
        let w = family.distinguishing_witness(8, TwoCopyOrdinal::Lower(m)).unwrap();
        assert!(w.differs());
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use stbc_hrqf::io::{ordering_to_json, parse_ordering};
use stbc_hrqf::Ordering;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(ord) = parse_ordering(text) else {
        return;
    };
    assert_eq!(parse_ordering(&ordering_to_json(&ord)).expect("round trip"), ord);
    assert_eq!(ord.compose(&ord.inverse()), Ordering::identity(ord.len()));
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use stbc_hrqf::io::{code_to_json, parse_code};
use stbc_hrqf::{fsd_exponent, HrqfMatrix, DEFAULT_ZERO_TOL};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(code) = parse_code(text) else {
        return;
    };
    let again = parse_code(&code_to_json(&code)).expect("serialized code parses");
    assert_eq!(again, code);
    let pattern = HrqfMatrix::from_code(&code).zero_pattern(DEFAULT_ZERO_TOL);
    let (e, _) = fsd_exponent(&pattern).expect("K >= 1");
    assert!(e.0 >= 1 && e.0 <= code.k());
});

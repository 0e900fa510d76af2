#![no_main]

use libfuzzer_sys::fuzz_target;
use stbc_hrqf::{exact_exponent, exponent_of, fsd_exponent, ZeroPattern};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let rows: Vec<&str> = text.lines().collect();
    if rows.len() > 32 {
        return;
    }
    let Ok(p) = ZeroPattern::from_upper_rows(&rows) else {
        return;
    };
    let grid = p.to_grid();
    let back: Vec<&str> = grid.lines().collect();
    assert_eq!(ZeroPattern::from_upper_rows(&back).expect("grid parses"), p);
    if p.k() == 0 {
        return;
    }
    let (e, tree) = fsd_exponent(&p).expect("non-empty");
    assert_eq!(exponent_of(&p), e.0);
    assert_eq!(tree.path_costs().into_iter().max(), Some(e.0));
    for (i, j) in tree.cross_group_pairs() {
        assert!(!p.get(i, j), "cross-group pair ({i}, {j}) is adjacent");
    }
    if p.k() <= 12 {
        assert!(exact_exponent(&p).expect("small").0 <= e.0);
    }
});

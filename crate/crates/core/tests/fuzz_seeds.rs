//! Replays the checked-in fuzz corpus seeds through the fuzz-target invariants.

use std::fs;
use std::path::PathBuf;

use stbc_hrqf::io::{code_to_json, ordering_to_json, parse_code, parse_ordering};
use stbc_hrqf::{exact_exponent, exponent_of, fsd_exponent, ZeroPattern};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus", target]
        .iter()
        .collect();
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn code_seeds() {
    let mut ok = 0;
    for (name, text) in seeds("parse_code") {
        if let Ok(code) = parse_code(&text) {
            assert_eq!(parse_code(&code_to_json(&code)).unwrap(), code, "{name}");
            ok += 1;
        }
    }
    assert!(ok >= 3);
}

#[test]
fn ordering_seeds() {
    let mut ok = 0;
    for (name, text) in seeds("parse_ordering") {
        if let Ok(ord) = parse_ordering(&text) {
            assert_eq!(parse_ordering(&ordering_to_json(&ord)).unwrap(), ord, "{name}");
            ok += 1;
        }
    }
    assert!(ok >= 3);
}

#[test]
fn pattern_seeds() {
    for (name, text) in seeds("pattern_rows") {
        let rows: Vec<&str> = text.lines().collect();
        let p = ZeroPattern::from_upper_rows(&rows).unwrap_or_else(|e| panic!("{name}: {e}"));
        let (e, tree) = fsd_exponent(&p).unwrap();
        assert_eq!(exponent_of(&p), e.0, "{name}");
        for (i, j) in tree.cross_group_pairs() {
            assert!(!p.get(i, j), "{name}: ({i}, {j})");
        }
        assert!(exact_exponent(&p).unwrap() <= e, "{name}");
    }
}

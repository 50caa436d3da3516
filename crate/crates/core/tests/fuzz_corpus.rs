//! Replays the checked-in fuzz seeds through the parsers and the round-trip
//! properties the fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use qperfect::codes::word_to_string;
use qperfect::concat::Permutation;
use qperfect::format::{parse_code, parse_manifest, parse_word, write_code};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn code_file_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("code_file") {
        let text = String::from_utf8(data).unwrap();
        if let Ok(code) = parse_code(&text) {
            accepted += 1;
            let canonical = write_code(&code);
            assert_eq!(parse_code(&canonical).unwrap(), code, "{name}");
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn manifest_seeds() {
    for (name, data) in seeds("partition_manifest") {
        let text = String::from_utf8(data).unwrap();
        let expect_ok = !matches!(name.as_str(), "double_space" | "zero_parts");
        match parse_manifest(&text) {
            Ok(m) => {
                assert!(expect_ok, "{name} accepted");
                assert_eq!(parse_manifest(&m.render()).unwrap(), m);
            }
            Err(_) => assert!(!expect_ok, "{name} rejected"),
        }
    }
}

#[test]
fn alpha_seeds() {
    for (name, data) in seeds("alpha_list") {
        let text = String::from_utf8(data).unwrap();
        match text.parse::<Permutation>() {
            Ok(p) => assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p),
            Err(_) => assert_eq!(name, "repeated"),
        }
    }
}

#[test]
fn word_seeds() {
    for (name, data) in seeds("word") {
        let (&q, rest) = data.split_first().unwrap();
        let q = q as usize + 1;
        let text = std::str::from_utf8(rest).unwrap();
        match parse_word(q, text) {
            Ok(w) => assert_eq!(parse_word(q, &word_to_string(q, &w)).unwrap(), w),
            Err(_) => assert_eq!(name, "out_of_range"),
        }
    }
}

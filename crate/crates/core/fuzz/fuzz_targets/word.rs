#![no_main]

use libfuzzer_sys::fuzz_target;
use qperfect::codes::word_to_string;
use qperfect::format::parse_word;

// first byte picks the field size, the rest is the word text
fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let q = q as usize + 1;
    if let Ok(w) = parse_word(q, text) {
        assert!(w.iter().all(|&x| (x as usize) < q));
        assert_eq!(parse_word(q, &word_to_string(q, &w)).expect("round trip"), w);
    }
});

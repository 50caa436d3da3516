#![no_main]

use libfuzzer_sys::fuzz_target;
use qperfect::format::{parse_code, write_code};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(code) = parse_code(text) {
        let canonical = write_code(&code);
        let again = parse_code(&canonical).expect("canonical text parses");
        assert_eq!(again, code);
        assert_eq!(write_code(&again), canonical);
    }
});

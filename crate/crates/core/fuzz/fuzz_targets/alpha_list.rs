#![no_main]

use libfuzzer_sys::fuzz_target;
use qperfect::concat::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = text.parse::<Permutation>() {
        let shown = p.to_string();
        assert_eq!(shown.parse::<Permutation>().expect("display form parses"), p);
    }
});

//! The per-line block parser of CSV screening reports must never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

use jointprice_core::screen::parse_per_line_block;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_per_line_block(text);
    }
});

//! The flat key-value config parser must never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

use jointprice_cli::config::parse_key_values;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_key_values(text);
    }
});

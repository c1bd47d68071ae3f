//! Loss-series ingestion must never panic on arbitrary input, and any
//! series it accepts must survive the screening pipeline.

#![no_main]

use libfuzzer_sys::fuzz_target;

use jointprice_core::screen::{ingest_losses, pairwise_screen};

fuzz_target!(|data: &[u8]| {
    let Ok(report) = ingest_losses(data) else {
        return;
    };
    // accepted series satisfy the ingestion contract; screening may still
    // reject them (degenerate variance) but must not panic
    if report.series.len() >= 2 && report.series.len() <= 16 {
        let _ = pairwise_screen(&report.series, Some(2));
    }
});

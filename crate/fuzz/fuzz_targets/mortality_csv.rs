//! Mortality CSV parsing must never panic, and small parsed datasets
//! must survive a round-trip and a degenerate two-population fit.

#![no_main]

use libfuzzer_sys::fuzz_target;

use jointprice_core::mortality::{fit_li_lee, MortalityDataset};

fuzz_target!(|data: &[u8]| {
    let Ok(ds) = MortalityDataset::from_csv("fuzz", data) else {
        return;
    };
    let mut buf = Vec::new();
    ds.write_csv(&mut buf).expect("vec write");
    let back = MortalityDataset::from_csv("fuzz", buf.as_slice())
        .expect("rendered csv must re-parse");
    assert_eq!(back.n_ages(), ds.n_ages());
    assert_eq!(back.n_years(), ds.n_years());
    // keep the SVD small enough for fuzz throughput
    if ds.n_ages() <= 48 && ds.n_years() <= 48 {
        let _ = fit_li_lee(&ds, &back);
    }
});

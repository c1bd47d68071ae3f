//! Renders a synthetic two-population mortality dataset pair to CSV, for
//! exercising the simulation pipeline without real population data.
//!
//! Usage: synthetic_mortality <out_a.csv> <out_b.csv> [seed] [noise_sd]

use std::fs::File;
use std::io::BufWriter;

use jointprice_core::mortality::synthetic::{datasets_from_params, synthetic_params, SyntheticSpec};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() < 3 {
        eprintln!("usage: synthetic_mortality <out_a.csv> <out_b.csv> [seed] [noise_sd]");
        std::process::exit(1);
    }
    let seed: u64 = args.get(3).map(|s| s.parse().expect("seed")).unwrap_or(7);
    let noise: f64 = args.get(4).map(|s| s.parse().expect("noise")).unwrap_or(0.01);
    let params = synthetic_params(&SyntheticSpec::common_dominant(), seed);
    let (ds_a, ds_b) = datasets_from_params(&params, noise, seed.wrapping_add(1));
    ds_a.write_csv(BufWriter::new(File::create(&args[1]).expect("create out_a")))
        .expect("write out_a");
    ds_b.write_csv(BufWriter::new(File::create(&args[2]).expect("create out_b")))
        .expect("write out_b");
    println!("wrote {} and {}", args[1], args[2]);
}

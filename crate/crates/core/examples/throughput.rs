//! A short benchmark run. Pass a duration in seconds per workload and an
//! optional CPU frequency in GHz for cycles per byte.
//!
//! `cargo run --release --example throughput -- 0.5 3.0`

use std::time::Duration;

use sosemanuk::bench::{run_bench, BenchConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let cfg = BenchConfig {
        duration: Duration::from_secs_f64(args.next().unwrap_or(0.25)),
        cpu_hz: args.next().map(|ghz| ghz * 1e9),
        ..BenchConfig::default()
    };
    println!("{}", run_bench(&cfg));
}

//! Round-scaling measurement: median rounds against instance size and the
//! fitted log-log slope, for a sampled sublinear algorithm and a
//! near-linear one. Large sizes take a while in debug builds; run with
//! --release.
//!
//! Run with: cargo run --release --example bench_scaling

use congest_graphs::harness::{cmd_bench, AlgoId};

fn main() {
    let sample = cmd_bench(AlgoId::RpDirunwSample, &[128, 256, 512], 8, 3, None).unwrap();
    print!("{}", sample.text());

    let exact = cmd_bench(AlgoId::MwcUndir, &[64, 128, 256], 8, 3, None).unwrap();
    print!("{}", exact.text());

    if let (Some(a), Some(b)) = (sample.slope, exact.slope) {
        println!("sampled replacement paths scale at n^{a:.2}; exact undirected MWC at n^{b:.2}");
    }
}

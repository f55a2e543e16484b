//! Writes a point cloud sampled from a bundled arrangement.
//!
//! Usage: `cargo run --example gen_points -- <fixture stem> <points per subspace> <seed>`

use subspace_hilbert::formats::{fixture, point_cloud_to_json};
use subspace_hilbert::gpca::sample_points;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [stem, per, seed] = args.as_slice() else {
        eprintln!("usage: gen_points <fixture stem> <points per subspace> <seed>");
        std::process::exit(1);
    };
    let a = fixture(stem).unwrap_or_else(|| panic!("unknown fixture {stem}"));
    let pc = sample_points(&a, per.parse().expect("count"), seed.parse().expect("seed")).expect("sampling");
    println!("{}", point_cloud_to_json(&pc).expect("exact cloud"));
}

// SPDX-License-Identifier: Apache-2.0

//! Dictionary size for random 16-bit databases of growing length.
//!
//!     cargo run --release --example gate_counts

use gdict::dictionary::{build_dictionary, Database};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> gdict::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    println!("|R|  mean cubes/column  max  MCX  MCX/|R|");
    for count in [4usize, 8, 16, 32, 64, 128] {
        let records: Vec<u64> = (0..count).map(|_| rng.gen_range(0..1 << 16)).collect();
        let dict = build_dictionary(&Database::from_values(16, records)?)?;
        let cubes = dict.cubes_per_column();
        let mean = cubes.iter().sum::<usize>() as f64 / cubes.len() as f64;
        let max = cubes.iter().max().copied().unwrap_or(0);
        let mcx = dict.mcx_count();
        println!(
            "{count:4}  {mean:17.2}  {max:3}  {mcx:3}  {:.2}",
            mcx as f64 / count as f64
        );
    }
    Ok(())
}

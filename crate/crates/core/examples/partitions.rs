//! Enumerating and sampling qubit partitions.

use rotbell::separability::{count_partitions, enumerate_partitions, sample_partition, stirling2};
use rotbell::states::rng_from_seed;

fn main() -> rotbell::Result<()> {
    println!("partitions of 4 qubits into at least 2 blocks:");
    for p in enumerate_partitions(4, 2)? {
        println!("  {p}  (k = {})", p.k());
    }
    println!("count: {}", count_partitions(4, 2));

    println!("S(n, k) for n = 1..8:");
    for n in 1..=8 {
        let row: Vec<String> = (1..=n).map(|k| stirling2(n, k).to_string()).collect();
        println!("  {n}: {}", row.join(" "));
    }

    let mut rng = rng_from_seed(7);
    println!("uniform samples with 3 blocks out of 6 qubits:");
    for _ in 0..5 {
        println!("  {}", sample_partition(6, 3, &mut rng)?);
    }
    Ok(())
}

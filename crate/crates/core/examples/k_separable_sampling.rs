//! Random k-separable mixtures never pass their own threshold.

use rotbell::correlation::profile_of_density;
use rotbell::separability::max_antidiagonal_bound;
use rotbell::states::sample_k_separable;
use rotbell::witness::{classify_profile, k_sep_threshold};

fn main() -> rotbell::Result<()> {
    let samples = 200;
    for n in 2..=5 {
        for k in 1..=n {
            let mut max_r: f64 = 0.0;
            let mut max_ad: f64 = 0.0;
            for s in 0..samples {
                let rho = sample_k_separable(n, k, 3, (n * 1000 + k * 100 + s) as u64)?;
                let p = profile_of_density(&rho);
                max_r = max_r.max(classify_profile(&p).r);
                max_ad = max_ad.max(p.max_modulus());
            }
            println!(
                "N={n} k={k}: max r {:.4} <= {:.4}, max |rho_ad| {:.4} <= {:.4}",
                max_r,
                k_sep_threshold(n, k)?,
                max_ad,
                max_antidiagonal_bound(k)
            );
        }
    }
    Ok(())
}

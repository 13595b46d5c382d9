//! GHZ states saturate the largest possible violation factor ½(π/2)^N.

use rotbell::states::make_ghz;
use rotbell::witness::{classify, max_possible_r};

fn main() -> rotbell::Result<()> {
    println!("{:>3} {:>16} {:>16} {:>10}", "N", "r", "½(π/2)^N", "V_crit");
    for n in 2..=10 {
        let rep = classify(&make_ghz(n)?.into());
        println!(
            "{:>3} {:>16.12} {:>16.12} {:>10.6}",
            n,
            rep.r,
            max_possible_r(n),
            rep.critical_visibility.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

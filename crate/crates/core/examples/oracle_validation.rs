//! Cross-checks the closed forms against brute force for a few states.

use rotbell::oracle::{cross_validate, verify_battery, ValidationConfig};
use rotbell::states::{make_ghz, rng_from_seed, DensityMatrix, State};

fn main() -> rotbell::Result<()> {
    let mut rng = rng_from_seed(3);
    let states: Vec<(&str, State)> = vec![
        ("ghz3", make_ghz(3)?.into()),
        ("random mixed, 2 qubits", DensityMatrix::random_mixed(2, 2, &mut rng)?.into()),
        ("random mixed, 3 qubits", DensityMatrix::random_mixed(3, 4, &mut rng)?.into()),
    ];
    for (name, state) in &states {
        let rep = cross_validate(state, &ValidationConfig::default())?;
        println!(
            "{name}: E_max {:.9}, grid max {:.9}, attainable {}",
            rep.e_max, rep.grid_max, rep.closed_form_attainable
        );
        for c in &rep.checks {
            println!("  {:<18} {:<4} {:.3e} (tol {:.0e})", c.name, c.status, c.deviation, c.tolerance);
        }
    }

    let battery = verify_battery(0)?;
    println!(
        "battery: {} fixtures, passed = {}",
        battery.results.len(),
        battery.passed
    );
    Ok(())
}

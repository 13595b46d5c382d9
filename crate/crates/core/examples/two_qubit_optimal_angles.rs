//! Closed-form maximizing settings for two qubits, checked against a grid.

use rotbell::correlation::{antidiagonal_profile, correlation_value, e_max, optimal_angles_two_qubit};
use rotbell::oracle::{maximize_grid, GridSearchConfig};
use rotbell::states::{make_ghz, rng_from_seed, DensityMatrix, PureState, State};

fn main() -> rotbell::Result<()> {
    let mut rng = rng_from_seed(11);
    let states: Vec<(&str, State)> = vec![
        ("bell", make_ghz(2)?.into()),
        ("haar pure", PureState::random_haar(2, &mut rng)?.into()),
        ("ginibre rank 2", DensityMatrix::random_mixed(2, 2, &mut rng)?.into()),
    ];
    for (name, state) in &states {
        let p = antidiagonal_profile(state);
        let angles = optimal_angles_two_qubit(&p)?;
        let at = correlation_value(&p, &angles)?;
        let grid = maximize_grid(&p, &GridSearchConfig::for_qubits(2))?;
        println!(
            "{name}: angles ({:.6}, {:.6})  E = {:.12}  E_max = {:.12}  grid = {:.12}",
            angles.angles()[0],
            angles.angles()[1],
            at,
            e_max(&p),
            grid.value
        );
    }
    Ok(())
}

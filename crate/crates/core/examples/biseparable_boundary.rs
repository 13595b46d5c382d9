//! |+x⟩ ⊗ Bell sits exactly on the biseparable threshold π³/32, so the
//! strict test does not certify genuine 3-partite correlations.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rotbell::states::{make_ghz, tensor_product_pure, PartitionSpec, PureState};
use rotbell::witness::classify;

fn main() -> rotbell::Result<()> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let plus = PureState::new(1, vec![h, h])?;
    let bell = make_ghz(2)?;
    for blocks in [vec![vec![1], vec![2, 3]], vec![vec![2], vec![1, 3]]] {
        let partition = PartitionSpec::new(blocks)?;
        let state = tensor_product_pure(&[plus.clone(), bell.clone()], &partition)?;
        let rep = classify(&state.into());
        let k2 = rep.threshold(2).expect("N = 3 has a k = 2 threshold");
        println!("partition {partition}");
        println!("  r          = {:.12}", rep.r);
        println!("  pi^3/32    = {:.12}", PI.powi(3) / 32.0);
        println!("  margin     = {:e}", k2.margin);
        println!("  verdict    : {}", rep.verdict());
    }
    Ok(())
}

//! Parsing kets, rendering them back, and the JSON state format.

use rotbell::states::{parse_ket, read_state_json, render_ket, state_to_json, State};
use rotbell::witness::classify;

fn main() -> rotbell::Result<()> {
    let parsed = parse_ket("|000> + (0+1i)*|111>")?;
    println!("renormalized: {} (input norm {:.6})", parsed.renormalized, parsed.input_norm);
    println!("ket:  {}", render_ket(&parsed.state));
    let state: State = parsed.state.into();
    let json = state_to_json(&state);
    println!("json: {json}");

    let back = read_state_json(json.as_bytes())?;
    println!("r after round trip: {:.12}", classify(&back).r);

    let mixed = r#"{"kind": "density", "n": 1,
                    "matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]}"#;
    let rho = read_state_json(mixed.as_bytes())?;
    println!("|+x><+x|: r = {:.6}", classify(&rho).r);

    for bad in ["|01> + |1>", "|0", "2|0> + |2>"] {
        match parse_ket(bad) {
            Ok(_) => println!("{bad:?} parsed"),
            Err(e) => println!("{bad:?}: {e}"),
        }
    }
    Ok(())
}

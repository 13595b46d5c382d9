//! Drives the command-line front end in-process and prints its reports.

use std::io;

fn main() {
    let runs: [&[&str]; 4] = [
        &["rotbell", "analyze", "--ket", "|000> + |111>"],
        &["rotbell", "ghz", "--n", "4", "--visibility", "0.5", "--format", "csv"],
        &["rotbell", "sweep", "--ket", "|00> + |11>", "--steps", "11"],
        &["rotbell", "zoo", "--nmax", "4", "--samples", "20", "--format", "csv"],
    ];
    for args in runs {
        println!("$ {}", args.join(" "));
        let code = rotbell::cli::run(
            args.iter().copied(),
            &mut io::empty(),
            &mut io::stdout(),
            &mut io::stderr(),
        );
        println!("(exit {code})\n");
    }
}

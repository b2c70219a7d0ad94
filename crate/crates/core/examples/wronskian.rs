//! The Wronskian check on the batch reactor's input-output polynomial.

use relident::algebra::GbLimits;
use relident::cli::load_model;
use relident::diffalg::{io_polynomials, wronskian_check};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_reactor.json");
    let (model, _) = load_model(path).expect("fixture loads");
    for p in io_polynomials(&model, None, &GbLimits::default()).expect("elimination succeeds") {
        let monomials: Vec<String> = p.monomials().iter().map(|m| m.to_string()).collect();
        println!("{}: monomials [{}]", p.output, monomials.join(", "));
        println!("  verdict with 5 trials, seed 0: {:?}", wronskian_check(&p, 5, 0));
    }
}

//! Input-output polynomial of the batch reactor model.

use relident::algebra::GbLimits;
use relident::cli::load_model;
use relident::diffalg::io_polynomials;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_reactor.json");
    let (model, _) = load_model(path).expect("fixture loads");
    for p in io_polynomials(&model, None, &GbLimits::default()).expect("elimination succeeds") {
        println!("{}: {p}", p.output);
        println!("  order {}, {} parameter coefficients", p.order(), p.terms.len());
    }
}

//! Two parameter vectors with the same outputs: K_S is not identifiable
//! once mu is known.

use relident::algebra::{GbLimits, Var};
use relident::cli::load_model;
use relident::diffalg::{exhaustive_summary, io_polynomials};
use relident::identtree::{explain_witness, IdentContext};
use relident::semialg::SolveConfig;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_reactor.json");
    let (model, _) = load_model(path).expect("fixture loads");
    let io = io_polynomials(&model, None, &GbLimits::default()).expect("elimination succeeds");
    let ctx = IdentContext::from_model(&model, exhaustive_summary(&io), SolveConfig::default());
    match explain_witness(&ctx, &[Var::new("mu")], Var::new("K_S")) {
        Ok(w) => print!("{w}"),
        Err(e) => println!("{e}"),
    }
    match explain_witness(&ctx, &[Var::new("mu"), Var::new("K_S")], Var::new("Y")) {
        Ok(w) => print!("{w}"),
        Err(e) => println!("Y given mu, K_S: {e}"),
    }
}

//! Identifiability trees of the batch reactor with and without parameter
//! constraints.

use relident::algebra::GbLimits;
use relident::cli::load_model;
use relident::diffalg::{exhaustive_summary, io_polynomials};
use relident::identtree::{identifiability_tree, verify_complexity_bound, IdentContext};
use relident::semialg::SolveConfig;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_reactor.json");
    let (model, _) = load_model(path).expect("fixture loads");
    for (label, m) in [
        ("positive parameters", model.clone()),
        ("no constraints", model.without_constraints()),
    ] {
        let io = io_polynomials(&m, None, &GbLimits::default()).expect("elimination succeeds");
        let ctx = IdentContext::from_model(&m, exhaustive_summary(&io), SolveConfig::default());
        let tree = identifiability_tree(&ctx);
        println!("{label}:");
        print!("{tree}");
        println!("  {}", verify_complexity_bound(&tree, m.params.len()).expect("tree is complete"));
    }
}

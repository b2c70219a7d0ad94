//! Initial conditions as extra parameters. Pass `--tree` to also compute
//! the identifiability tree, which takes a while.

use relident::algebra::GbLimits;
use relident::cli::load_model;
use relident::diffalg::{augment_initial_conditions, exhaustive_summary, io_polynomials};
use relident::identtree::{identifiability_tree, IdentContext};
use relident::semialg::SolveConfig;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_reactor.json");
    let (model, _) = load_model(path).expect("fixture loads");
    let m = augment_initial_conditions(&model);
    let names: Vec<&str> = m.params.iter().map(|p| p.name()).collect();
    println!("parameters: {}", names.join(", "));
    for c in &m.constraints.relations {
        println!("  {c}");
    }
    let io = io_polynomials(&m, None, &GbLimits::default()).expect("elimination succeeds");
    let s = exhaustive_summary(&io);
    println!("summary: {} coefficients, {} up to scalars", s.raw_count(), s.len());
    if std::env::args().any(|a| a == "--tree") {
        let ctx = IdentContext::from_model(&m, s, SolveConfig::default());
        let tree = identifiability_tree(&ctx);
        print!("{tree}");
        println!("{} lists, {} emptiness tests", tree.lists.len(), tree.stats.emptiness_tests);
    }
}

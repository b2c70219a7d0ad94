//! Exhaustive summary of the two-output batch reactor: every coefficient of
//! the input-output polynomials, deduplicated up to constant factors.

use relident::algebra::GbLimits;
use relident::cli::load_model;
use relident::diffalg::{exhaustive_summary, io_polynomials};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_reactor_two_outputs.json");
    let (model, _) = load_model(path).expect("fixture loads");
    let io = io_polynomials(&model, None, &GbLimits::default()).expect("elimination succeeds");
    let s = exhaustive_summary(&io);
    println!("{} coefficients, {} up to scalars", s.raw_count(), s.len());
    for (rep, class) in s.representatives.iter().zip(&s.classes) {
        println!("  {rep}  (entries {class:?})");
    }
    for d in &s.side_conditions {
        println!("  requires {d} != 0");
    }
}

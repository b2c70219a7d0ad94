//! Real emptiness of a few semialgebraic sets, with their certificates.

use relident::algebra::Var;
use relident::parse_poly;
use relident::semialg::{is_empty, Relation, SemiAlgebraicSystem, SolveConfig};

fn system(rels: &[(&str, Relation)]) -> SemiAlgebraicSystem {
    let mut sys = SemiAlgebraicSystem::new(vec![Var::new("x"), Var::new("y")]);
    for (p, r) in rels {
        sys.add(parse_poly(p).unwrap(), *r);
    }
    sys
}

fn main() {
    let cases = [
        (
            "disc far from a line",
            system(&[("x^2 + y^2 - 1", Relation::Lt), ("x + y - 2", Relation::Gt)]),
        ),
        (
            "circle meets a line",
            system(&[("x^2 + y^2 - 2", Relation::Eq), ("x - y", Relation::Eq)]),
        ),
        ("sum of squares below zero", system(&[("x^2 + y^2 + 1", Relation::Le)])),
        (
            "hyperbola in a quadrant",
            system(&[("x*y - 1", Relation::Eq), ("x", Relation::Lt), ("y", Relation::Gt)]),
        ),
    ];
    let cfg = SolveConfig::default();
    for (name, sys) in cases {
        let v = is_empty(&sys, &cfg);
        println!("{name}: {:?}", v.status);
        println!("  {}", serde_json::to_string(&v.certificate).unwrap());
    }
}

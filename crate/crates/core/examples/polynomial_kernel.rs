//! Exact polynomial algebra: a Gröbner basis, an elimination and real root
//! isolation.

use relident::algebra::{eliminate, groebner_basis, isolate_real_roots, GbLimits, MonomialOrder, Rational, UPoly, Var};
use relident::parse_poly;

fn main() {
    let gens = [parse_poly("x^2 + y^2 - 1").unwrap(), parse_poly("x - y").unwrap()];
    let order = MonomialOrder::lex(&["x", "y"]);
    println!("Groebner basis of <x^2 + y^2 - 1, x - y> (lex x > y):");
    for g in groebner_basis(&gens, &order).unwrap() {
        println!("  {g}");
    }

    let curve = [parse_poly("x - t^2").unwrap(), parse_poly("y - t^3").unwrap()];
    let implicit = eliminate(&curve, &[Var::new("t")], None, &GbLimits::default()).unwrap();
    println!("implicit equation of (t^2, t^3): {}", implicit[0]);

    let f = UPoly::from_ints(&[2, -6, 0, 1]);
    let width = Rational::new(1.into(), 1000.into());
    println!("real roots of x^3 - 6x + 2 ({} by Sturm's theorem):", f.count_real_roots());
    for iv in isolate_real_roots(&f) {
        let r = f.refine(&iv, &width);
        println!("  in [{}, {}]", r.lo, r.hi);
    }
}

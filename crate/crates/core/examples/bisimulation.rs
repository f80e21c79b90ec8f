//! Compares denotations up to delays.
//!
//! cargo run --example bisimulation

use fpc::denot::denote_term;
use fpc::meta::Harness;
use fpc::prelude::{delayed_n, diverge, ff, tt};
use fpc::surface::parse_term;
use fpc::syntax::{Term, Type};

fn show(h: &Harness, a: &Term, b: &Term) {
    let (ty, da) = denote_term(a).unwrap();
    let (_, db) = denote_term(b).unwrap();
    println!("{a}\n  vs {b}\n  {}", h.bisim(&ty, &da, &db, 30));
}

fn main() {
    let h = Harness::default();
    show(&h, &tt(), &delayed_n(5, tt(), &Type::bool()));
    show(&h, &tt(), &ff());
    show(&h, &diverge(&Type::Unit), &diverge(&Type::Unit));
    show(&h, &Term::Unit, &diverge(&Type::Unit));
    show(
        &h,
        &parse_term("fn x : 1 => x").unwrap(),
        &parse_term("fn x : 1 => unfold (fold x : mu d. 1)").unwrap(),
    );
}

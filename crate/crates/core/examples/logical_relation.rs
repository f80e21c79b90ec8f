//! Checks the step-indexed relation between denotations and terms, and
//! shows a failing instance with its counterexample path.
//!
//! cargo run --example logical_relation

use fpc::denot::denote_term;
use fpc::meta::Harness;
use fpc::prelude::numeral;
use fpc::surface::parse_term;

fn main() {
    let h = Harness::default();

    for src in ["fn x : 1 => x", "fn f : 1 -> 1 => f (unfold (fold () : mu a. 1))"] {
        let m = parse_term(src).unwrap();
        let (ty, d) = denote_term(&m).unwrap();
        println!("[[{m}]] ~ {m} : {ty}\n  {}", h.logrel(&ty, &d, &m, 20).unwrap());
    }

    let f = parse_term("fn x : 1 => x").unwrap();
    let slow = parse_term("fn x : 1 => unfold (fold x : mu d. 1)").unwrap();
    let (ty, d) = denote_term(&f).unwrap();
    println!("[[{f}]] ~ {slow}\n  {}", h.logrel(&ty, &d, &slow, 20).unwrap());

    let (ty, two) = denote_term(&numeral(2)).unwrap();
    println!("[[2]] ~ 3\n  {}", h.logrel(&ty, &two, &numeral(3), 20).unwrap());
}

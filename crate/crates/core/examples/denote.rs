//! Interprets programs in the delay monad and counts the delays.
//!
//! cargo run --example denote

use fpc::denot::{denote_term, observe_bool, observe_unit};
use fpc::prelude::{delayed_n, diverge, tt};
use fpc::surface::parse_term;
use fpc::syntax::Type;

fn main() {
    let m = parse_term("unfold (fold (unfold (fold () : mu a. 1)) : mu a. 1)").unwrap();
    let (_, d) = denote_term(&m).unwrap();
    println!("{m}\n  => {:?}", observe_unit(&d, 100));

    let b = delayed_n(4, tt(), &Type::bool());
    let (_, d) = denote_term(&b).unwrap();
    println!("{b}\n  => {:?}", observe_bool(&d, 100));

    let (_, d) = denote_term(&diverge(&Type::Unit)).unwrap();
    println!("diverge\n  => {:?}", observe_unit(&d, 10_000));
}

//! Evaluates a program step by step, showing which reductions are counted.
//!
//! cargo run --example evaluate

use std::rc::Rc;

use fpc::opsem::{eval_big, eval_small, EvalError};
use fpc::prelude::{diverge, ifz, numeral, tt, ff};
use fpc::syntax::Type;

fn main() {
    // is-zero 2, written with a case on unfold
    let m = Rc::new(ifz(numeral(2), tt(), "p", ff()));
    let r = eval_small(&m, 1_000).expect("terminates");
    print!("{}", r.trace.to_text());
    println!("{} reductions, {} of them unfold-fold", r.steps, r.k);

    let (v, k) = eval_big(&m, 1_000).expect("terminates");
    println!("big-step agrees: {v} with k = {k}");

    match eval_small(&Rc::new(diverge(&Type::Unit)), 5_000) {
        Err(EvalError::Timeout { fuel }) => println!("diverge: no value within {fuel} steps"),
        other => panic!("{other:?}"),
    }
}

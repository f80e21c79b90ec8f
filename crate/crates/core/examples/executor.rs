//! Decides a boolean denotation one delay at a time.
//!
//! cargo run --example executor

use fpc::denot::denote_term;
use fpc::meta::{exec, Exec};
use fpc::prelude::{delayed_n, tt};
use fpc::syntax::Type;

fn main() {
    let m = delayed_n(3, tt(), &Type::bool());
    let (_, d) = denote_term(&m).unwrap();
    let d = d.into_sum();
    for fuel in 0..5 {
        match exec(fuel, &d) {
            Exec::Done(side) => println!("fuel {fuel}: decided {side:?}"),
            Exec::More(_) => println!("fuel {fuel}: not yet decided"),
        }
    }
}

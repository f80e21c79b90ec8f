//! Checks, program by program, that the operational unfold count equals the
//! number of delays in the denotation.
//!
//! cargo run --example adequacy

use std::rc::Rc;

use fpc::denot::{denote_term, observe_bool};
use fpc::gen::Gen;
use fpc::opsem::eval_small;
use fpc::syntax::Type;

fn main() {
    let mut agree = 0;
    for seed in 0..200 {
        let m = Gen::new(seed).term(&Type::bool(), 4);
        let k = eval_small(&Rc::new(m.clone()), 100_000).expect("generated terms terminate").k;
        let (_, d) = denote_term(&m).unwrap();
        let steps = observe_bool(&d, 100_000).steps();
        assert_eq!(steps, Some(k), "seed {seed}: {m}");
        agree += 1;
        if seed < 3 {
            println!("k = {k}, steps = {}: {m}", steps.unwrap());
        }
    }
    println!("{agree} generated boolean programs: operational and denotational counts match");
}

//! Runs two programs in a directory of closing contexts and compares
//! termination.
//!
//! cargo run --example contextual_equivalence

use std::path::Path;

use fpc::meta::{ctx_equiv_suite, load_contexts, Context};
use fpc::prelude::{delayed, diverge};
use fpc::syntax::{Term, Type};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/contexts/unit");
    let contexts = load_contexts(&dir).expect("context files");

    let slow = delayed(Term::Unit, &Type::Unit);
    let report = ctx_equiv_suite(&Term::Unit, &slow, &Type::Unit, &contexts, 10_000).unwrap();
    for r in report.results.iter().take(5) {
        println!("{:<20} {}  ->  {:?}", r.name, r.context, r.outcome);
    }
    println!("() vs {slow}: {} of {} agree", report.agreed(), report.results.len());

    let report = ctx_equiv_suite(&Term::Unit, &diverge(&Type::Unit), &Type::Unit, &contexts, 2_000).unwrap();
    println!("() vs diverge: {} flagged", report.flagged());

    let c = Context::parse("(fn x : 1 => [-]) ()").unwrap();
    println!("a context: {c}");
}

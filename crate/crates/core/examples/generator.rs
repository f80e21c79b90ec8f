//! Draws random well-typed programs from a seed.
//!
//! cargo run --example generator -- 42

use fpc::gen::Gen;
use fpc::syntax::Type;
use fpc::types::{infer, TermCtx};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let mut g = Gen::new(seed);
    for ty in [Type::Unit, Type::bool(), Type::nat(), Type::arrow(Type::nat(), Type::bool())] {
        let m = g.term(&ty, 3);
        let inferred = infer(&TermCtx::new(), &m).unwrap();
        println!("{inferred}\n  {m}");
    }
}

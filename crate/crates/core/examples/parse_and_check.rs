//! Parses a program with definitions, prints it back and infers its type.
//!
//! cargo run --example parse_and_check

use fpc::surface::SourceFile;
use fpc::types::{elaborate_closed, infer, TermCtx};

const SOURCE: &str = "
let nat = mu a. 1 + a;;
let zero = (fold (inl ()) : nat);;
let succ = fn n : nat => (fold (inr n) : nat);;
let pred = fn n : nat => case unfold n of { inl u => zero | inr m => m };;
pred (succ (succ zero))
";

fn main() {
    let file = SourceFile::parse(SOURCE).expect("parses");
    println!("program: {}", file.main);
    let ty = infer(&TermCtx::new(), &file.main).expect("well typed");
    println!("type:    {ty}");

    let core = elaborate_closed(&file.main).expect("well typed");
    println!("fully annotated: {}", core.ascribed());

    match infer(&TermCtx::new(), &fpc::surface::parse_term("unfold ()").unwrap()) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}

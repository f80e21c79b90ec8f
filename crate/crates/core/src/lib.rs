//! A simply typed call-by-name lambda calculus with sums, products and
//! iso-recursive types, together with an operational semantics that counts
//! `unfold (fold M)` steps, a denotational semantics in the guarded delay
//! monad, and executable checks relating the two.
//!
//! Modules, from the bottom up:
//!
//! - [`syntax`]: types, terms, substitution and alpha-equivalence
//! - [`surface`]: the concrete syntax, parser and printer
//! - [`types`]: bidirectional type checking and elaboration
//! - [`opsem`]: small- and big-step evaluation
//! - [`kernel`]: the delay monad
//! - [`denot`]: the denotational interpretation
//! - [`meta`]: logical relation, bisimulation, contexts, executor
//! - [`prelude`] and [`gen`]: common programs and random generation
//! - [`cli`]: the `fpc` command line
//!
//! ```
//! use fpc::denot::{denote_term, observe_unit};
//! use fpc::opsem::eval_small;
//! use fpc::surface::parse_term;
//! use std::rc::Rc;
//!
//! let m = parse_term("unfold (fold (unfold (fold () : mu a. 1)) : mu a. 1)").unwrap();
//! let k = eval_small(&Rc::new(m.clone()), 100).unwrap().k;
//! let (_, d) = denote_term(&m).unwrap();
//! assert_eq!(observe_unit(&d, 100).steps(), Some(k));
//! ```

pub mod syntax;
pub mod surface;
pub mod types;
pub mod opsem;
pub mod kernel;
pub mod denot;
pub mod meta;
pub mod prelude;
pub mod gen;
pub mod cli;

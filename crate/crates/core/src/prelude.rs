//! Standard encodings: naturals, `ifz`, the Turing fixpoint combinator and
//! delayed or divergent terms of any type.
//!
//! ```
//! use fpc::prelude::{fix, numeral};
//! use fpc::syntax::{Term, Type};
//!
//! assert_eq!(numeral(1).to_string(), "(fold (inr (fold (inl ()) : mu a. 1 + a)) : mu a. 1 + a)");
//! let looping = fix(&Type::Unit, Term::lam("x", Type::Unit, Term::var("x")));
//! assert!(looping.is_closed());
//! ```

use crate::syntax::{fresh_name, Term, Type};

pub fn nat() -> Type {
    Type::nat()
}

pub fn zero() -> Term {
    Term::ann(Term::fold(Term::inl(Term::Unit)), nat())
}

pub fn succ(m: Term) -> Term {
    Term::ann(Term::fold(Term::inr(m)), nat())
}

pub fn numeral(n: usize) -> Term {
    (0..n).fold(zero(), |m, _| succ(m))
}

pub fn tt() -> Term {
    Term::ann(Term::inl(Term::Unit), Type::bool())
}

pub fn ff() -> Term {
    Term::ann(Term::inr(Term::Unit), Type::bool())
}

/// `ifz L M N = case (unfold L) of { inl _ => M | inr x => N }`; `x` may
/// occur in `N` and names the predecessor.
pub fn ifz(l: Term, m: Term, x: &str, n: Term) -> Term {
    let mut avoid = m.free_vars();
    avoid.extend(n.free_vars());
    let u = fresh_name("u", &avoid);
    Term::case(Term::unfold(l), &u, m, x, n)
}

/// `mu b. b -> (A -> A) -> A` for the Turing combinator at `A`.
pub fn turing_type(a: &Type) -> Type {
    let b = fresh_name("b", &a.free_vars());
    Type::mu(
        &b,
        Type::arrow(
            Type::Var(b.clone()),
            Type::arrow(Type::arrow(a.clone(), a.clone()), a.clone()),
        ),
    )
}

/// `θ = fn x : B => fn y : A -> A => y (unfold x x y)`.
pub fn turing_theta(a: &Type) -> Term {
    let b = turing_type(a);
    Term::lam(
        "x",
        b,
        Term::lam(
            "y",
            Type::arrow(a.clone(), a.clone()),
            Term::app(
                Term::var("y"),
                Term::app(
                    Term::app(Term::unfold(Term::var("x")), Term::var("x")),
                    Term::var("y"),
                ),
            ),
        ),
    )
}

/// `fix_A = θ (fold θ) : (A -> A) -> A`.
pub fn fix_combinator(a: &Type) -> Term {
    let theta = turing_theta(a);
    Term::app(theta.clone(), Term::fold(theta))
}

/// `fix_A f`.
pub fn fix(a: &Type, f: Term) -> Term {
    Term::app(fix_combinator(a), f)
}

/// `fix_A (fn x : A => x)`, which never reaches a value.
pub fn diverge(a: &Type) -> Term {
    fix(a, Term::lam("x", a.clone(), Term::var("x")))
}

/// `unfold (fold M : mu d. A)`: behaves as `M` after one counted step.
pub fn delayed(m: Term, a: &Type) -> Term {
    let d = fresh_name("d", &a.free_vars());
    Term::unfold(Term::ann(Term::fold(m), Type::Mu(d, std::rc::Rc::new(a.clone()))))
}

/// `delayed` applied `n` times.
pub fn delayed_n(n: usize, m: Term, a: &Type) -> Term {
    (0..n).fold(m, |m, _| delayed(m, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opsem::eval_big;
    use crate::types::{infer, TermCtx};
    use std::rc::Rc;

    #[test]
    fn encodings_typecheck() {
        let g = TermCtx::new();
        assert_eq!(infer(&g, &numeral(3)).unwrap(), nat());
        let a = Type::bool();
        let fixt = infer(&g, &fix_combinator(&a)).unwrap();
        assert_eq!(fixt, Type::arrow(Type::arrow(a.clone(), a.clone()), a.clone()));
        assert_eq!(infer(&g, &diverge(&Type::Unit)).unwrap(), Type::Unit);
        assert_eq!(infer(&g, &delayed(tt(), &a)).unwrap(), a);
        let z = ifz(numeral(0), tt(), "p", ff());
        assert_eq!(infer(&g, &z).unwrap(), Type::bool());
    }

    #[test]
    fn ifz_zero_takes_one_step() {
        let z = Rc::new(ifz(numeral(0), tt(), "p", ff()));
        let (v, k) = eval_big(&z, 100).unwrap();
        assert!(v.alpha_eq(&tt()));
        assert_eq!(k, 1);
    }

    #[test]
    fn delayed_n_costs_n() {
        let m = Rc::new(delayed_n(4, Term::Unit, &Type::Unit));
        assert_eq!(eval_big(&m, 100).unwrap().1, 4);
    }
}

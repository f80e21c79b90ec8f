use super::parser::HOLE_MARKER;
use crate::syntax::{Term, Type};

// Precedence levels. Types: 0 arrow, 1 sum, 2 product, 3 atom.
// Terms: 0 binders and case, 1 application, 2 prefix keywords, 3 atom.

pub fn print_type(t: &Type) -> String {
    ty(t, 0, true)
}

fn ty(t: &Type, prec: u8, tail: bool) -> String {
    let (own, open_right) = match t {
        Type::Var(_) | Type::Unit => (3, false),
        Type::Arrow(..) => (0, false),
        Type::Sum(..) => (1, false),
        Type::Prod(..) => (2, false),
        Type::Mu(..) => (0, true),
    };
    let parens = if open_right { !tail } else { own < prec };
    let tail = parens || tail;
    let body = match t {
        Type::Var(a) => a.to_string(),
        Type::Unit => "1".to_string(),
        Type::Arrow(a, b) => format!("{} -> {}", ty(a, 1, false), ty(b, 0, tail)),
        Type::Sum(a, b) => format!("{} + {}", ty(a, 2, false), ty(b, 1, tail)),
        Type::Prod(a, b) => format!("{} * {}", ty(a, 3, false), ty(b, 2, tail)),
        Type::Mu(a, b) => format!("mu {a}. {}", ty(b, 0, true)),
    };
    if parens {
        format!("({body})")
    } else {
        body
    }
}

pub fn print_term(t: &Term) -> String {
    term(t, 0)
}

fn term(t: &Term, prec: u8) -> String {
    let own = match t {
        Term::Lam(..) | Term::Case(..) => 0,
        Term::App(..) => 1,
        Term::Fst(_) | Term::Snd(_) | Term::Inl(_) | Term::Inr(_) | Term::Fold(_) | Term::Unfold(_) => 2,
        Term::Var(_) | Term::Unit | Term::Pair(..) | Term::Ann(..) => 3,
    };
    let body = match t {
        Term::Var(x) if &**x == HOLE_MARKER => "[-]".to_string(),
        Term::Var(x) => x.to_string(),
        Term::Unit => "()".to_string(),
        Term::Pair(a, b) => format!("<{}, {}>", term(a, 0), term(b, 0)),
        Term::Ann(a, ty) => format!("({} : {})", term(a, 0), print_type(ty)),
        Term::Fst(a) => format!("fst {}", term(a, 3)),
        Term::Snd(a) => format!("snd {}", term(a, 3)),
        Term::Inl(a) => format!("inl {}", term(a, 3)),
        Term::Inr(a) => format!("inr {}", term(a, 3)),
        Term::Fold(a) => format!("fold {}", term(a, 3)),
        Term::Unfold(a) => format!("unfold {}", term(a, 3)),
        Term::App(f, a) => format!("{} {}", term(f, 1), term(a, 3)),
        Term::Lam(x, ty, b) => format!("fn {x} : {} => {}", print_type(ty), term(b, 0)),
        Term::Case(l, x1, m, x2, n) => format!(
            "case {} of {{ inl {x1} => {} | inr {x2} => {} }}",
            term(l, 0),
            term(m, 0),
            term(n, 0)
        ),
    };
    if own < prec {
        format!("({body})")
    } else {
        body
    }
}

//! Abstract syntax of FPC types and terms.
//!
//! Binders are stored by name. Alpha-equivalence is decided structurally by
//! comparing binder positions, and substitution is capture-avoiding with a
//! deterministic fresh-name supply (see [`set_fresh_seed`]).

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

/// Variable and binder names.
pub type Name = Rc<str>;

pub fn name(s: &str) -> Name {
    Rc::from(s)
}

static FRESH_SEED: AtomicU64 = AtomicU64::new(1);

/// Sets the first numeric suffix tried when a binder must be renamed.
pub fn set_fresh_seed(seed: u64) {
    FRESH_SEED.store(seed.max(1), Ordering::Relaxed);
}

/// Picks `base` with the smallest numeric suffix (from the current seed) that
/// is not in `avoid`. Deterministic for a fixed seed and avoid set.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    let mut k = FRESH_SEED.load(Ordering::Relaxed);
    loop {
        let candidate = format!("{stem}{k}");
        if !avoid.contains(candidate.as_str()) {
            return name(&candidate);
        }
        k += 1;
    }
}

// ---------------------------------------------------------------------------
// Types

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Var(Name),
    Unit,
    Sum(Rc<Type>, Rc<Type>),
    Prod(Rc<Type>, Rc<Type>),
    Arrow(Rc<Type>, Rc<Type>),
    Mu(Name, Rc<Type>),
}

impl Type {
    pub fn var(a: &str) -> Type {
        Type::Var(name(a))
    }

    pub fn sum(a: Type, b: Type) -> Type {
        Type::Sum(Rc::new(a), Rc::new(b))
    }

    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Rc::new(a), Rc::new(b))
    }

    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Rc::new(a), Rc::new(b))
    }

    pub fn mu(a: &str, body: Type) -> Type {
        Type::Mu(name(a), Rc::new(body))
    }

    /// `1 + 1`, with `inl` read as true.
    pub fn bool() -> Type {
        Type::sum(Type::Unit, Type::Unit)
    }

    /// `mu a. 1 + a`
    pub fn nat() -> Type {
        Type::mu("a", Type::sum(Type::Unit, Type::var("a")))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Type::Var(a) => {
                if !bound.contains(a) {
                    out.insert(a.clone());
                }
            }
            Type::Unit => {}
            Type::Sum(a, b) | Type::Prod(a, b) | Type::Arrow(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Type::Mu(a, body) => {
                bound.push(a.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn all_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Type::Var(a) => {
                out.insert(a.clone());
            }
            Type::Unit => {}
            Type::Sum(a, b) | Type::Prod(a, b) | Type::Arrow(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Type::Mu(a, body) => {
                out.insert(a.clone());
                body.all_names(out);
            }
        }
    }

    /// Alpha-equivalence.
    pub fn alpha_eq(&self, other: &Type) -> bool {
        fn go(a: &Type, b: &Type, env: &mut Vec<(Name, Name)>) -> bool {
            match (a, b) {
                (Type::Var(x), Type::Var(y)) => {
                    let lx = env.iter().rposition(|(l, _)| l == x);
                    let ly = env.iter().rposition(|(_, r)| r == y);
                    match (lx, ly) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Type::Unit, Type::Unit) => true,
                (Type::Sum(a1, a2), Type::Sum(b1, b2))
                | (Type::Prod(a1, a2), Type::Prod(b1, b2))
                | (Type::Arrow(a1, a2), Type::Arrow(b1, b2)) => {
                    go(a1, b1, env) && go(a2, b2, env)
                }
                (Type::Mu(x, ba), Type::Mu(y, bb)) => {
                    env.push((x.clone(), y.clone()));
                    let r = go(ba, bb, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// A representative of the alpha-equivalence class: binders are renamed
    /// to `#0`, `#1`, ... by nesting depth. Suitable as a map key.
    pub fn canonical(&self) -> Type {
        fn go(t: &Type, env: &mut Vec<(Name, Name)>) -> Type {
            match t {
                Type::Var(a) => match env.iter().rev().find(|(x, _)| x == a) {
                    Some((_, c)) => Type::Var(c.clone()),
                    None => t.clone(),
                },
                Type::Unit => Type::Unit,
                Type::Sum(a, b) => Type::Sum(Rc::new(go(a, env)), Rc::new(go(b, env))),
                Type::Prod(a, b) => Type::Prod(Rc::new(go(a, env)), Rc::new(go(b, env))),
                Type::Arrow(a, b) => Type::Arrow(Rc::new(go(a, env)), Rc::new(go(b, env))),
                Type::Mu(a, body) => {
                    let c = name(&format!("#{}", env.len()));
                    env.push((a.clone(), c.clone()));
                    let body = go(body, env);
                    env.pop();
                    Type::Mu(c, Rc::new(body))
                }
            }
        }
        go(self, &mut Vec::new())
    }

    /// `self[sub/a]`, capture-avoiding over `mu` binders.
    pub fn subst(&self, sub: &Type, a: &str) -> Type {
        let fv = sub.free_vars();
        self.subst_with(sub, a, &fv)
    }

    fn subst_with(&self, sub: &Type, a: &str, fv_sub: &BTreeSet<Name>) -> Type {
        match self {
            Type::Var(b) if &**b == a => sub.clone(),
            Type::Var(_) | Type::Unit => self.clone(),
            Type::Sum(x, y) => Type::sum(x.subst_with(sub, a, fv_sub), y.subst_with(sub, a, fv_sub)),
            Type::Prod(x, y) => {
                Type::prod(x.subst_with(sub, a, fv_sub), y.subst_with(sub, a, fv_sub))
            }
            Type::Arrow(x, y) => {
                Type::arrow(x.subst_with(sub, a, fv_sub), y.subst_with(sub, a, fv_sub))
            }
            Type::Mu(b, body) => {
                if &**b == a || !body.free_vars().contains(a) {
                    return self.clone();
                }
                if fv_sub.contains(b) {
                    let mut avoid = fv_sub.clone();
                    body.all_names(&mut avoid);
                    avoid.insert(name(a));
                    let b2 = fresh_name(b, &avoid);
                    let renamed = body.subst(&Type::Var(b2.clone()), b);
                    Type::Mu(b2, Rc::new(renamed.subst_with(sub, a, fv_sub)))
                } else {
                    Type::Mu(b.clone(), Rc::new(body.subst_with(sub, a, fv_sub)))
                }
            }
        }
    }

    /// For `mu a. t`, returns `t[mu a. t / a]`.
    pub fn unfold_mu(&self) -> Option<Type> {
        match self {
            Type::Mu(a, body) => Some(body.subst(self, a)),
            _ => None,
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::print_type(self))
    }
}

// ---------------------------------------------------------------------------
// Terms

/// FPC terms. `Ann` is the surface ascription `(M : T)`; it carries typing
/// information only and is transparent to every semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Unit,
    Pair(Rc<Term>, Rc<Term>),
    Fst(Rc<Term>),
    Snd(Rc<Term>),
    Inl(Rc<Term>),
    Inr(Rc<Term>),
    Case(Rc<Term>, Name, Rc<Term>, Name, Rc<Term>),
    Lam(Name, Type, Rc<Term>),
    App(Rc<Term>, Rc<Term>),
    Fold(Rc<Term>),
    Unfold(Rc<Term>),
    Ann(Rc<Term>, Type),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(name(x))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Rc::new(a), Rc::new(b))
    }

    pub fn fst(a: Term) -> Term {
        Term::Fst(Rc::new(a))
    }

    pub fn snd(a: Term) -> Term {
        Term::Snd(Rc::new(a))
    }

    pub fn inl(a: Term) -> Term {
        Term::Inl(Rc::new(a))
    }

    pub fn inr(a: Term) -> Term {
        Term::Inr(Rc::new(a))
    }

    pub fn case(scrut: Term, x1: &str, left: Term, x2: &str, right: Term) -> Term {
        Term::Case(Rc::new(scrut), name(x1), Rc::new(left), name(x2), Rc::new(right))
    }

    pub fn lam(x: &str, ty: Type, body: Term) -> Term {
        Term::Lam(name(x), ty, Rc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Rc::new(f), Rc::new(a))
    }

    pub fn fold(a: Term) -> Term {
        Term::Fold(Rc::new(a))
    }

    pub fn unfold(a: Term) -> Term {
        Term::Unfold(Rc::new(a))
    }

    pub fn ann(a: Term, ty: Type) -> Term {
        Term::Ann(Rc::new(a), ty)
    }

    /// Strips any ascriptions at the head.
    pub fn peel(&self) -> &Term {
        let mut t = self;
        while let Term::Ann(inner, _) = t {
            t = inner;
        }
        t
    }

    /// Immediate subterms, in the order used by redex paths.
    pub fn children(&self) -> Vec<&Rc<Term>> {
        match self {
            Term::Var(_) | Term::Unit => vec![],
            Term::Pair(a, b) | Term::App(a, b) => vec![a, b],
            Term::Case(l, _, m, _, n) => vec![l, m, n],
            Term::Fst(a)
            | Term::Snd(a)
            | Term::Inl(a)
            | Term::Inr(a)
            | Term::Lam(_, _, a)
            | Term::Fold(a)
            | Term::Unfold(a)
            | Term::Ann(a, _) => vec![a],
        }
    }

    /// Number of constructors, ignoring ascriptions.
    pub fn size(&self) -> usize {
        let own = usize::from(!matches!(self, Term::Ann(..)));
        own + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, _, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::Case(l, x1, m, x2, n) => {
                l.collect_free(bound, out);
                bound.push(x1.clone());
                m.collect_free(bound, out);
                bound.pop();
                bound.push(x2.clone());
                n.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn has_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => &**y == x,
            Term::Lam(y, _, body) => &**y != x && body.has_free(x),
            Term::Case(l, x1, m, x2, n) => {
                l.has_free(x) || (&**x1 != x && m.has_free(x)) || (&**x2 != x && n.has_free(x))
            }
            _ => self.children().iter().any(|c| c.has_free(x)),
        }
    }

    fn all_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Lam(x, _, _) => {
                out.insert(x.clone());
            }
            Term::Case(_, x1, _, x2, _) => {
                out.insert(x1.clone());
                out.insert(x2.clone());
            }
            _ => {}
        }
        for c in self.children() {
            c.all_names(out);
        }
    }

    /// Alpha-equivalence of terms (type annotations compared up to alpha too).
    pub fn alpha_eq(&self, other: &Term) -> bool {
        fn lookup(env: &[(Name, Name)], x: &Name, left: bool) -> Option<usize> {
            env.iter()
                .rposition(|(l, r)| if left { l == x } else { r == x })
        }
        fn go(a: &Term, b: &Term, env: &mut Vec<(Name, Name)>) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    match (lookup(env, x, true), lookup(env, y, false)) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::Unit, Term::Unit) => true,
                (Term::Pair(a1, a2), Term::Pair(b1, b2)) | (Term::App(a1, a2), Term::App(b1, b2)) => {
                    go(a1, b1, env) && go(a2, b2, env)
                }
                (Term::Fst(x), Term::Fst(y))
                | (Term::Snd(x), Term::Snd(y))
                | (Term::Inl(x), Term::Inl(y))
                | (Term::Inr(x), Term::Inr(y))
                | (Term::Fold(x), Term::Fold(y))
                | (Term::Unfold(x), Term::Unfold(y)) => go(x, y, env),
                (Term::Ann(x, tx), Term::Ann(y, ty)) => tx.alpha_eq(ty) && go(x, y, env),
                (Term::Lam(x, tx, bx), Term::Lam(y, ty, by)) => {
                    if !tx.alpha_eq(ty) {
                        return false;
                    }
                    env.push((x.clone(), y.clone()));
                    let r = go(bx, by, env);
                    env.pop();
                    r
                }
                (Term::Case(l1, x1, m1, x2, n1), Term::Case(l2, y1, m2, y2, n2)) => {
                    if !go(l1, l2, env) {
                        return false;
                    }
                    env.push((x1.clone(), y1.clone()));
                    let r1 = go(m1, m2, env);
                    env.pop();
                    if !r1 {
                        return false;
                    }
                    env.push((x2.clone(), y2.clone()));
                    let r2 = go(n1, n2, env);
                    env.pop();
                    r2
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// Classifies closed terms against the value grammar. Ascriptions are not
    /// constructors, so `(v : T)` is a value exactly when `v` is.
    pub fn is_value(&self) -> Option<ValueWitness> {
        let form = match self.peel() {
            Term::Unit => ValueForm::Unit,
            Term::Inl(_) => ValueForm::Inl,
            Term::Inr(_) => ValueForm::Inr,
            Term::Pair(..) => ValueForm::Pair,
            Term::Lam(..) => ValueForm::Lam,
            Term::Fold(_) => ValueForm::Fold,
            _ => return None,
        };
        Some(ValueWitness { form })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::print_term(self))
    }
}

/// Head constructor of a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueForm {
    Unit,
    Inl,
    Inr,
    Pair,
    Lam,
    Fold,
}

/// Evidence that a term matches the value grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValueWitness {
    pub form: ValueForm,
}

// ---------------------------------------------------------------------------
// Substitution

/// `m[n/x]`, capture-avoiding.
pub fn subst(m: &Rc<Term>, n: &Rc<Term>, x: &str) -> Rc<Term> {
    let s = Subst {
        x,
        n,
        fv_n: n.free_vars(),
    };
    s.go(m).unwrap_or_else(|| m.clone())
}

/// Renames the free occurrences of `from` to `to`. The caller guarantees `to`
/// is fresh for `m`.
fn rename(m: &Rc<Term>, from: &str, to: &Name) -> Rc<Term> {
    subst(m, &Rc::new(Term::Var(to.clone())), from)
}

struct Subst<'a> {
    x: &'a str,
    n: &'a Rc<Term>,
    fv_n: BTreeSet<Name>,
}

impl Subst<'_> {
    /// `None` when the subterm is unchanged, so untouched subtrees stay shared.
    fn go(&self, m: &Rc<Term>) -> Option<Rc<Term>> {
        let x = self.x;
        let r = |t: Term| Some(Rc::new(t));
        match &**m {
            Term::Var(y) => (&**y == x).then(|| self.n.clone()),
            Term::Unit => None,
            Term::Pair(a, b) => self.two(a, b).and_then(|(a, b)| r(Term::Pair(a, b))),
            Term::App(a, b) => self.two(a, b).and_then(|(a, b)| r(Term::App(a, b))),
            Term::Fst(a) => self.go(a).and_then(|a| r(Term::Fst(a))),
            Term::Snd(a) => self.go(a).and_then(|a| r(Term::Snd(a))),
            Term::Inl(a) => self.go(a).and_then(|a| r(Term::Inl(a))),
            Term::Inr(a) => self.go(a).and_then(|a| r(Term::Inr(a))),
            Term::Fold(a) => self.go(a).and_then(|a| r(Term::Fold(a))),
            Term::Unfold(a) => self.go(a).and_then(|a| r(Term::Unfold(a))),
            Term::Ann(a, t) => self.go(a).and_then(|a| r(Term::Ann(a, t.clone()))),
            Term::Lam(y, ty, body) => {
                let (y, body) = self.binder(y, body)?;
                r(Term::Lam(y, ty.clone(), body))
            }
            Term::Case(l, x1, mm, x2, nn) => {
                let l2 = self.go(l);
                let b1 = self.binder(x1, mm);
                let b2 = self.binder(x2, nn);
                if l2.is_none() && b1.is_none() && b2.is_none() {
                    return None;
                }
                let (x1, mm) = b1.unwrap_or_else(|| (x1.clone(), mm.clone()));
                let (x2, nn) = b2.unwrap_or_else(|| (x2.clone(), nn.clone()));
                r(Term::Case(l2.unwrap_or_else(|| l.clone()), x1, mm, x2, nn))
            }
        }
    }

    fn two(&self, a: &Rc<Term>, b: &Rc<Term>) -> Option<(Rc<Term>, Rc<Term>)> {
        match (self.go(a), self.go(b)) {
            (None, None) => None,
            (a2, b2) => Some((a2.unwrap_or_else(|| a.clone()), b2.unwrap_or_else(|| b.clone()))),
        }
    }

    fn binder(&self, y: &Name, body: &Rc<Term>) -> Option<(Name, Rc<Term>)> {
        if &**y == self.x || !body.has_free(self.x) {
            return None;
        }
        if self.fv_n.contains(y) {
            let mut avoid = self.fv_n.clone();
            body.all_names(&mut avoid);
            avoid.insert(name(self.x));
            let y2 = fresh_name(y, &avoid);
            let body = rename(body, y, &y2);
            let body = self.go(&body).unwrap_or(body);
            Some((y2, body))
        } else {
            self.go(body).map(|b| (y.clone(), b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rc(t: Term) -> Rc<Term> {
        Rc::new(t)
    }

    #[test]
    fn subst_variable_hit() {
        let r = subst(&rc(Term::var("x")), &rc(Term::Unit), "x");
        assert_eq!(*r, Term::Unit);
    }

    #[test]
    fn subst_renames_to_avoid_capture() {
        let m = rc(Term::lam("y", Type::Unit, Term::var("x")));
        let r = subst(&m, &rc(Term::var("y")), "x");
        let expected = Term::lam("z", Type::Unit, Term::var("y"));
        assert!(r.alpha_eq(&expected), "{r}");
        match &*r {
            Term::Lam(b, _, _) => assert_ne!(&**b, "y"),
            other => panic!("unexpected {other}"),
        }
    }

    /// Independent oracle: substitution that renames every binder to a fresh
    /// name first, then replaces naively.
    fn naive_subst(m: &Term, n: &Term, x: &str, counter: &mut usize) -> Term {
        match m {
            Term::Var(y) if &**y == x => n.clone(),
            Term::Var(_) | Term::Unit => m.clone(),
            Term::Lam(y, t, b) => {
                *counter += 1;
                let fresh = format!("#{counter}");
                let b = naive_rename(b, y, &fresh);
                Term::lam(&fresh, t.clone(), naive_subst(&b, n, x, counter))
            }
            Term::Case(l, x1, mm, x2, nn) => {
                *counter += 1;
                let f1 = format!("#{counter}");
                *counter += 1;
                let f2 = format!("#{counter}");
                let mm = naive_rename(mm, x1, &f1);
                let nn = naive_rename(nn, x2, &f2);
                Term::case(
                    naive_subst(l, n, x, counter),
                    &f1,
                    naive_subst(&mm, n, x, counter),
                    &f2,
                    naive_subst(&nn, n, x, counter),
                )
            }
            Term::Pair(a, b) => Term::pair(naive_subst(a, n, x, counter), naive_subst(b, n, x, counter)),
            Term::App(a, b) => Term::app(naive_subst(a, n, x, counter), naive_subst(b, n, x, counter)),
            Term::Fst(a) => Term::fst(naive_subst(a, n, x, counter)),
            Term::Snd(a) => Term::snd(naive_subst(a, n, x, counter)),
            Term::Inl(a) => Term::inl(naive_subst(a, n, x, counter)),
            Term::Inr(a) => Term::inr(naive_subst(a, n, x, counter)),
            Term::Fold(a) => Term::fold(naive_subst(a, n, x, counter)),
            Term::Unfold(a) => Term::unfold(naive_subst(a, n, x, counter)),
            Term::Ann(a, t) => Term::ann(naive_subst(a, n, x, counter), t.clone()),
        }
    }

    fn naive_rename(m: &Term, from: &str, to: &str) -> Term {
        // binders are all distinct "#k" names after renaming, so plain
        // replacement of free occurrences suffices
        let mut c = 0;
        naive_subst(m, &Term::var(to), from, &mut c)
    }

    #[test]
    fn subst_into_case_matches_naive_oracle() {
        let m = Term::case(Term::var("x"), "x1", Term::var("x1"), "x2", Term::var("x"));
        let n = Term::fold(Term::Unit);
        let got = subst(&rc(m.clone()), &rc(n.clone()), "x");
        let expected = Term::case(n.clone(), "x1", Term::var("x1"), "x2", n.clone());
        assert!(got.alpha_eq(&expected));
        let mut c = 0;
        assert!(got.alpha_eq(&naive_subst(&m, &n, "x", &mut c)));
    }

    #[test]
    fn type_subst_examples() {
        let nat = Type::nat();
        assert_eq!(Type::var("a").subst(&nat, "a"), nat);
        let body = Type::sum(Type::Unit, Type::var("a"));
        assert_eq!(body.subst(&nat, "a"), Type::sum(Type::Unit, nat.clone()));
        // mu b. b -> a, substituting b for a, must rename the binder
        let t = Type::mu("b", Type::arrow(Type::var("b"), Type::var("a")));
        let r = t.subst(&Type::var("b"), "a");
        let expected = Type::mu("c", Type::arrow(Type::var("c"), Type::var("b")));
        assert!(r.alpha_eq(&expected), "{r:?}");
        match r {
            Type::Mu(b, _) => assert_ne!(&*b, "b"),
            _ => unreachable!(),
        }
    }

    #[test]
    fn value_classification() {
        assert!(Term::Unit.is_value().is_some());
        assert!(Term::fold(Term::inl(Term::Unit)).is_value().is_some());
        assert!(Term::unfold(Term::fold(Term::Unit)).is_value().is_none());
        assert!(Term::ann(Term::fold(Term::Unit), Type::nat()).is_value().is_some());
        assert_eq!(
            Term::lam("x", Type::Unit, Term::var("x")).is_value().unwrap().form,
            ValueForm::Lam
        );
    }

    #[test]
    fn alpha_eq_respects_binding_structure() {
        let a = Term::lam("x", Type::Unit, Term::lam("y", Type::Unit, Term::var("x")));
        let b = Term::lam("p", Type::Unit, Term::lam("q", Type::Unit, Term::var("p")));
        let c = Term::lam("p", Type::Unit, Term::lam("q", Type::Unit, Term::var("q")));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
        assert!(!Term::var("x").alpha_eq(&Term::var("y")));
        assert!(Type::nat().alpha_eq(&Type::mu("z", Type::sum(Type::Unit, Type::var("z")))));
        assert_eq!(
            Type::nat().canonical(),
            Type::mu("z", Type::sum(Type::Unit, Type::var("z"))).canonical()
        );
    }

    #[test]
    fn unfold_mu_of_nat() {
        let nat = Type::nat();
        assert_eq!(nat.unfold_mu().unwrap(), Type::sum(Type::Unit, nat.clone()));
        assert!(Type::Unit.unfold_mu().is_none());
    }
}

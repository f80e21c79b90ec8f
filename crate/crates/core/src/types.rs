//! Well-formed types, bidirectional type checking and elaboration.
//!
//! `inl`, `inr` and `fold` only check against a known type: the typing rule
//! for `fold M : mu a. t` cannot recover `t` from `M`. The type comes from an
//! ascription `(M : T)`, from a lambda annotation through application, or
//! from the other branch of a `case`. Type equality is alpha-equivalence;
//! recursive types are never unrolled implicitly.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::{name, Name, Term, Type};

/// Θ: type variables in scope.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeCtx(Vec<Name>);

impl TypeCtx {
    pub fn new() -> TypeCtx {
        TypeCtx::default()
    }

    /// Appends `a`; `None` if it is already present.
    pub fn extend(&self, a: &str) -> Option<TypeCtx> {
        if self.contains(a) {
            return None;
        }
        let mut v = self.0.clone();
        v.push(name(a));
        Some(TypeCtx(v))
    }

    pub fn contains(&self, a: &str) -> bool {
        self.0.iter().any(|b| &**b == a)
    }
}

impl<S: AsRef<str>> FromIterator<S> for TypeCtx {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut ctx = TypeCtx::new();
        for a in iter {
            if let Some(c) = ctx.extend(a.as_ref()) {
                ctx = c;
            }
        }
        ctx
    }
}

/// `Θ ⊢ τ`. Binders of nested `mu`s may reuse names; they are renamed apart
/// silently, so this amounts to `FV(τ) ⊆ Θ`.
pub fn wf_type(theta: &TypeCtx, t: &Type) -> bool {
    t.free_vars().iter().all(|a| theta.contains(a))
}

/// Γ: typed term variables. Later bindings shadow earlier ones.
#[derive(Clone, Debug, Default)]
pub struct TermCtx(Vec<(Name, Type)>);

impl TermCtx {
    pub fn new() -> TermCtx {
        TermCtx::default()
    }

    pub fn extend(&self, x: &str, t: Type) -> TermCtx {
        let mut v = self.0.clone();
        v.push((name(x), t));
        TermCtx(v)
    }

    pub fn lookup(&self, x: &str) -> Option<&Type> {
        self.0.iter().rev().find(|(y, _)| &**y == x).map(|(_, t)| t)
    }

    pub fn bindings(&self) -> &[(Name, Type)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("type error in `{node}`: expected {expected}, found {found}")]
pub struct TypeError {
    pub node: String,
    pub expected: String,
    pub found: String,
}

fn err<T>(node: &Term, expected: impl fmt::Display, found: impl fmt::Display) -> Result<T, TypeError> {
    Err(TypeError {
        node: node.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    })
}

/// A term with its type at every node.
#[derive(Clone, Debug, PartialEq)]
pub struct CoreTerm {
    pub ty: Type,
    pub kind: CoreKind,
}

/// Node shapes of [`CoreTerm`], mirroring [`Term`]. The node type of `Unfold`
/// is the unrolled type, that of `Case` and `App` the result type.
#[derive(Clone, Debug, PartialEq)]
pub enum CoreKind {
    Var(Name),
    Unit,
    Pair(Rc<CoreTerm>, Rc<CoreTerm>),
    Fst(Rc<CoreTerm>),
    Snd(Rc<CoreTerm>),
    Inl(Rc<CoreTerm>),
    Inr(Rc<CoreTerm>),
    Case(Rc<CoreTerm>, Name, Rc<CoreTerm>, Name, Rc<CoreTerm>),
    Lam(Name, Type, Rc<CoreTerm>),
    App(Rc<CoreTerm>, Rc<CoreTerm>),
    Fold(Rc<CoreTerm>),
    Unfold(Rc<CoreTerm>),
    Ann(Rc<CoreTerm>, Type),
}

impl CoreTerm {
    fn new(ty: Type, kind: CoreKind) -> Rc<CoreTerm> {
        Rc::new(CoreTerm { ty, kind })
    }

    /// The source term.
    pub fn erase(&self) -> Term {
        self.rebuild(false)
    }

    /// The source term with every `inl`, `inr` and `fold` ascribed with its
    /// type (unless already ascribed), so that the result and everything it
    /// reduces to synthesizes a type on its own.
    pub fn ascribed(&self) -> Term {
        self.rebuild(true)
    }

    fn rebuild(&self, ascribe: bool) -> Term {
        let go = |c: &Rc<CoreTerm>| Rc::new(c.rebuild(ascribe));
        let t = match &self.kind {
            CoreKind::Var(x) => Term::Var(x.clone()),
            CoreKind::Unit => Term::Unit,
            CoreKind::Pair(a, b) => Term::Pair(go(a), go(b)),
            CoreKind::Fst(a) => Term::Fst(go(a)),
            CoreKind::Snd(a) => Term::Snd(go(a)),
            CoreKind::Inl(a) => Term::Inl(go(a)),
            CoreKind::Inr(a) => Term::Inr(go(a)),
            CoreKind::Case(l, x1, m, x2, n) => Term::Case(go(l), x1.clone(), go(m), x2.clone(), go(n)),
            CoreKind::Lam(x, t, b) => Term::Lam(x.clone(), t.clone(), go(b)),
            CoreKind::App(a, b) => Term::App(go(a), go(b)),
            CoreKind::Fold(a) => Term::Fold(go(a)),
            CoreKind::Unfold(a) => Term::Unfold(go(a)),
            CoreKind::Ann(a, t) => {
                // the ascription already supplies the type of its body
                return Term::Ann(Rc::new(a.rebuild_under_ann(ascribe)), t.clone());
            }
        };
        let needs = matches!(self.kind, CoreKind::Inl(_) | CoreKind::Inr(_) | CoreKind::Fold(_));
        if ascribe && needs {
            Term::Ann(Rc::new(t), self.ty.clone())
        } else {
            t
        }
    }

    fn rebuild_under_ann(&self, ascribe: bool) -> Term {
        match &self.kind {
            CoreKind::Inl(a) => Term::Inl(Rc::new(a.rebuild(ascribe))),
            CoreKind::Inr(a) => Term::Inr(Rc::new(a.rebuild(ascribe))),
            CoreKind::Fold(a) => Term::Fold(Rc::new(a.rebuild(ascribe))),
            _ => self.rebuild(ascribe),
        }
    }

    /// Subterms, in the same order as [`Term::children`].
    pub fn children(&self) -> Vec<&Rc<CoreTerm>> {
        match &self.kind {
            CoreKind::Var(_) | CoreKind::Unit => vec![],
            CoreKind::Pair(a, b) | CoreKind::App(a, b) => vec![a, b],
            CoreKind::Case(l, _, m, _, n) => vec![l, m, n],
            CoreKind::Fst(a)
            | CoreKind::Snd(a)
            | CoreKind::Inl(a)
            | CoreKind::Inr(a)
            | CoreKind::Lam(_, _, a)
            | CoreKind::Fold(a)
            | CoreKind::Unfold(a)
            | CoreKind::Ann(a, _) => vec![a],
        }
    }
}

/// Synthesizes the type of `m` under `gamma`.
pub fn infer(gamma: &TermCtx, m: &Term) -> Result<Type, TypeError> {
    elaborate(gamma, m).map(|c| c.ty.clone())
}

/// Checks `m` against `t` under `gamma`.
pub fn check(gamma: &TermCtx, m: &Term, t: &Type) -> Result<(), TypeError> {
    elaborate_against(gamma, m, t).map(|_| ())
}

pub fn elaborate(gamma: &TermCtx, m: &Term) -> Result<Rc<CoreTerm>, TypeError> {
    Checker.synth(gamma, m)
}

pub fn elaborate_against(gamma: &TermCtx, m: &Term, t: &Type) -> Result<Rc<CoreTerm>, TypeError> {
    if !t.is_closed() {
        return err(m, "a closed type", t);
    }
    Checker.check(gamma, m, t)
}

/// Convenience for closed programs.
pub fn elaborate_closed(m: &Term) -> Result<Rc<CoreTerm>, TypeError> {
    elaborate(&TermCtx::new(), m)
}

struct Checker;

impl Checker {
    fn closed_type(&self, node: &Term, t: &Type) -> Result<(), TypeError> {
        if t.is_closed() {
            Ok(())
        } else {
            let fv: Vec<String> = t.free_vars().iter().map(|a| a.to_string()).collect();
            err(node, format!("a closed type, but {t} mentions"), fv.join(", "))
        }
    }

    fn synth(&self, g: &TermCtx, m: &Term) -> Result<Rc<CoreTerm>, TypeError> {
        match m {
            Term::Var(x) => match g.lookup(x) {
                Some(t) => Ok(CoreTerm::new(t.clone(), CoreKind::Var(x.clone()))),
                None => err(m, "a bound variable", format!("unbound `{x}`")),
            },
            Term::Unit => Ok(CoreTerm::new(Type::Unit, CoreKind::Unit)),
            Term::Pair(a, b) => {
                let a = self.synth(g, a)?;
                let b = self.synth(g, b)?;
                Ok(CoreTerm::new(
                    Type::prod(a.ty.clone(), b.ty.clone()),
                    CoreKind::Pair(a, b),
                ))
            }
            Term::Fst(a) | Term::Snd(a) => {
                let a = self.synth(g, a)?;
                match &a.ty {
                    Type::Prod(t1, t2) => {
                        if matches!(m, Term::Fst(_)) {
                            Ok(CoreTerm::new((**t1).clone(), CoreKind::Fst(a)))
                        } else {
                            Ok(CoreTerm::new((**t2).clone(), CoreKind::Snd(a)))
                        }
                    }
                    other => err(m, "a product type", other),
                }
            }
            Term::Inl(_) | Term::Inr(_) | Term::Fold(_) => err(
                m,
                "a known type (add an ascription `(M : T)`)",
                "a term whose type cannot be inferred",
            ),
            Term::Case(l, x1, left, x2, right) => {
                let (l, t1, t2) = self.scrutinee(g, m, l)?;
                let g1 = g.extend(x1, t1);
                let g2 = g.extend(x2, t2);
                let (left, right) = match self.synth(&g1, left) {
                    Ok(lc) => {
                        let rc = self.check(&g2, right, &lc.ty)?;
                        (lc, rc)
                    }
                    Err(left_err) => match self.synth(&g2, right) {
                        Ok(rc) => (self.check(&g1, left, &rc.ty)?, rc),
                        Err(_) => return Err(left_err),
                    },
                };
                Ok(CoreTerm::new(
                    left.ty.clone(),
                    CoreKind::Case(l, x1.clone(), left, x2.clone(), right),
                ))
            }
            Term::Lam(x, t, body) => {
                self.closed_type(m, t)?;
                let body = self.synth(&g.extend(x, t.clone()), body)?;
                Ok(CoreTerm::new(
                    Type::arrow(t.clone(), body.ty.clone()),
                    CoreKind::Lam(x.clone(), t.clone(), body),
                ))
            }
            Term::App(f, a) => {
                let f = self.synth(g, f)?;
                match &f.ty {
                    Type::Arrow(dom, cod) => {
                        let a = self.check(g, a, dom)?;
                        Ok(CoreTerm::new((**cod).clone(), CoreKind::App(f, a)))
                    }
                    other => err(m, "a function type", other),
                }
            }
            Term::Unfold(a) => {
                let a = self.synth(g, a)?;
                match a.ty.unfold_mu() {
                    Some(t) => Ok(CoreTerm::new(t, CoreKind::Unfold(a))),
                    None => err(m, "a recursive type", &a.ty),
                }
            }
            Term::Ann(a, t) => {
                self.closed_type(m, t)?;
                let a = self.check(g, a, t)?;
                Ok(CoreTerm::new(t.clone(), CoreKind::Ann(a, t.clone())))
            }
        }
    }

    fn scrutinee(
        &self,
        g: &TermCtx,
        m: &Term,
        l: &Term,
    ) -> Result<(Rc<CoreTerm>, Type, Type), TypeError> {
        let l = self.synth(g, l)?;
        match &l.ty {
            Type::Sum(t1, t2) => {
                let (t1, t2) = ((**t1).clone(), (**t2).clone());
                Ok((l, t1, t2))
            }
            other => err(m, "a sum type for the scrutinee", other),
        }
    }

    fn check(&self, g: &TermCtx, m: &Term, t: &Type) -> Result<Rc<CoreTerm>, TypeError> {
        match (m, t) {
            (Term::Inl(a), Type::Sum(t1, _)) => {
                let a = self.check(g, a, t1)?;
                Ok(CoreTerm::new(t.clone(), CoreKind::Inl(a)))
            }
            (Term::Inr(a), Type::Sum(_, t2)) => {
                let a = self.check(g, a, t2)?;
                Ok(CoreTerm::new(t.clone(), CoreKind::Inr(a)))
            }
            (Term::Inl(_) | Term::Inr(_), _) => err(m, "a sum type", t),
            (Term::Fold(a), Type::Mu(..)) => {
                let unfolded = t.unfold_mu().expect("mu type");
                let a = self.check(g, a, &unfolded)?;
                Ok(CoreTerm::new(t.clone(), CoreKind::Fold(a)))
            }
            (Term::Fold(_), _) => err(m, "a recursive type", t),
            (Term::Pair(a, b), Type::Prod(t1, t2)) => {
                let a = self.check(g, a, t1)?;
                let b = self.check(g, b, t2)?;
                Ok(CoreTerm::new(t.clone(), CoreKind::Pair(a, b)))
            }
            (Term::Lam(x, dom, body), Type::Arrow(d, c)) if dom.alpha_eq(d) => {
                self.closed_type(m, dom)?;
                let body = self.check(&g.extend(x, dom.clone()), body, c)?;
                Ok(CoreTerm::new(
                    t.clone(),
                    CoreKind::Lam(x.clone(), dom.clone(), body),
                ))
            }
            (Term::Case(l, x1, left, x2, right), _) => {
                let (l, t1, t2) = self.scrutinee(g, m, l)?;
                let left = self.check(&g.extend(x1, t1), left, t)?;
                let right = self.check(&g.extend(x2, t2), right, t)?;
                Ok(CoreTerm::new(
                    t.clone(),
                    CoreKind::Case(l, x1.clone(), left, x2.clone(), right),
                ))
            }
            _ => {
                let c = self.synth(g, m)?;
                if c.ty.alpha_eq(t) {
                    Ok(c)
                } else {
                    err(m, t, &c.ty)
                }
            }
        }
    }
}

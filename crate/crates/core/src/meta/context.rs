//! One-hole program contexts, their typing judgment and contextual
//! equivalence suites.

use std::fmt;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::opsem::{eval_big, EvalError};
use crate::surface::{parse_file_with_hole, ParseError, HOLE_MARKER};
use crate::syntax::{Name, Term, Type};
use crate::types::{check, infer, TermCtx};

/// A term with exactly one hole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Context {
    Hole,
    Lam(Name, Type, Rc<Context>),
    AppL(Rc<Context>, Rc<Term>),
    AppR(Rc<Term>, Rc<Context>),
    Inl(Rc<Context>),
    Inr(Rc<Context>),
    PairL(Rc<Context>, Rc<Term>),
    PairR(Rc<Term>, Rc<Context>),
    Fst(Rc<Context>),
    Snd(Rc<Context>),
    CaseScrut(Rc<Context>, Name, Rc<Term>, Name, Rc<Term>),
    CaseLeft(Rc<Term>, Name, Rc<Context>, Name, Rc<Term>),
    CaseRight(Rc<Term>, Name, Rc<Term>, Name, Rc<Context>),
    Fold(Rc<Context>),
    Unfold(Rc<Context>),
    Ann(Rc<Context>, Type),
}

#[derive(Debug, Error)]
pub enum ContextError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {err}", path.display())]
    Parse { path: PathBuf, err: ParseError },
    #[error("{0}")]
    Holes(String),
    #[error("context {name} is not a context from ({hole}) to (1): {context}")]
    IllTyped {
        name: String,
        hole: Type,
        context: String,
    },
    #[error("{0}")]
    Eval(#[from] EvalError),
}

impl Context {
    /// Reads a context from a term in which the hole marker `[-]` occurs
    /// exactly once.
    pub fn from_marked(t: &Term) -> Result<Context, ContextError> {
        match count_holes(t) {
            1 => Ok(Self::build(t).expect("one hole")),
            n => Err(ContextError::Holes(format!(
                "a context needs exactly one `{HOLE_MARKER}`, found {n}"
            ))),
        }
    }

    pub fn parse(text: &str) -> Result<Context, ContextError> {
        let t = parse_file_with_hole(text).map_err(|err| ContextError::Parse {
            path: PathBuf::from("<input>"),
            err,
        })?;
        Context::from_marked(&t)
    }

    fn build(t: &Term) -> Option<Context> {
        let c = |t: &Rc<Term>| Self::build(t).map(Rc::new);
        Some(match t {
            Term::Var(x) if &**x == HOLE_MARKER => Context::Hole,
            Term::Var(_) | Term::Unit => return None,
            Term::Lam(x, ty, b) => Context::Lam(x.clone(), ty.clone(), c(b)?),
            Term::App(f, a) => match c(f) {
                Some(cf) => Context::AppL(cf, a.clone()),
                None => Context::AppR(f.clone(), c(a)?),
            },
            Term::Pair(a, b) => match c(a) {
                Some(ca) => Context::PairL(ca, b.clone()),
                None => Context::PairR(a.clone(), c(b)?),
            },
            Term::Inl(a) => Context::Inl(c(a)?),
            Term::Inr(a) => Context::Inr(c(a)?),
            Term::Fst(a) => Context::Fst(c(a)?),
            Term::Snd(a) => Context::Snd(c(a)?),
            Term::Fold(a) => Context::Fold(c(a)?),
            Term::Unfold(a) => Context::Unfold(c(a)?),
            Term::Ann(a, ty) => Context::Ann(c(a)?, ty.clone()),
            Term::Case(l, x, m, y, n) => {
                if let Some(cl) = c(l) {
                    Context::CaseScrut(cl, x.clone(), m.clone(), y.clone(), n.clone())
                } else if let Some(cm) = c(m) {
                    Context::CaseLeft(l.clone(), x.clone(), cm, y.clone(), n.clone())
                } else {
                    Context::CaseRight(l.clone(), x.clone(), m.clone(), y.clone(), c(n)?)
                }
            }
        })
    }
}

fn count_holes(t: &Term) -> usize {
    match t {
        Term::Var(x) if &**x == HOLE_MARKER => 1,
        _ => t.children().into_iter().map(|c| count_holes(c)).sum(),
    }
}

/// `C[M]`. Binders in `C` may capture free variables of `M`.
pub fn fill(c: &Context, m: &Term) -> Term {
    let f = |c: &Rc<Context>| Rc::new(fill(c, m));
    match c {
        Context::Hole => m.clone(),
        Context::Lam(x, ty, b) => Term::Lam(x.clone(), ty.clone(), f(b)),
        Context::AppL(c, n) => Term::App(f(c), n.clone()),
        Context::AppR(n, c) => Term::App(n.clone(), f(c)),
        Context::Inl(c) => Term::Inl(f(c)),
        Context::Inr(c) => Term::Inr(f(c)),
        Context::PairL(c, n) => Term::Pair(f(c), n.clone()),
        Context::PairR(n, c) => Term::Pair(n.clone(), f(c)),
        Context::Fst(c) => Term::Fst(f(c)),
        Context::Snd(c) => Term::Snd(f(c)),
        Context::CaseScrut(c, x, l, y, r) => Term::Case(f(c), x.clone(), l.clone(), y.clone(), r.clone()),
        Context::CaseLeft(s, x, c, y, r) => Term::Case(s.clone(), x.clone(), f(c), y.clone(), r.clone()),
        Context::CaseRight(s, x, l, y, c) => Term::Case(s.clone(), x.clone(), l.clone(), y.clone(), f(c)),
        Context::Fold(c) => Term::Fold(f(c)),
        Context::Unfold(c) => Term::Unfold(f(c)),
        Context::Ann(c, ty) => Term::Ann(f(c), ty.clone()),
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fill(self, &Term::var(HOLE_MARKER)).fmt(f)
    }
}

/// The hole's judgment `Γ ⊢ [-] : τ`.
struct HoleJudgment<'a> {
    gamma: &'a TermCtx,
    tau: &'a Type,
}

impl HoleJudgment<'_> {
    /// Every binding of `Γ` is visible in `Δ` at the same type.
    fn weakens_to(&self, delta: &TermCtx) -> bool {
        self.gamma
            .bindings()
            .iter()
            .all(|(x, t)| delta.lookup(x).is_some_and(|u| u.alpha_eq(t)))
    }

    fn synth(&self, c: &Context, delta: &TermCtx) -> Option<Type> {
        match c {
            Context::Hole => self.weakens_to(delta).then(|| self.tau.clone()),
            Context::Lam(x, a, b) => {
                let body = self.synth(b, &delta.extend(x, a.clone()))?;
                Some(Type::arrow(a.clone(), body))
            }
            Context::AppL(c, n) => match self.synth(c, delta)? {
                Type::Arrow(a, b) => check(delta, n, &a).ok().map(|_| (*b).clone()),
                _ => None,
            },
            Context::AppR(m, c) => match infer(delta, m).ok()? {
                Type::Arrow(a, b) => self.check(c, delta, &a).then(|| (*b).clone()),
                _ => None,
            },
            Context::PairL(c, n) => Some(Type::prod(self.synth(c, delta)?, infer(delta, n).ok()?)),
            Context::PairR(m, c) => Some(Type::prod(infer(delta, m).ok()?, self.synth(c, delta)?)),
            Context::Fst(c) => match self.synth(c, delta)? {
                Type::Prod(a, _) => Some((*a).clone()),
                _ => None,
            },
            Context::Snd(c) => match self.synth(c, delta)? {
                Type::Prod(_, b) => Some((*b).clone()),
                _ => None,
            },
            Context::Unfold(c) => {
                let t = self.synth(c, delta)?;
                match t {
                    Type::Mu(..) => t.unfold_mu(),
                    _ => None,
                }
            }
            Context::Ann(c, t) => self.check(c, delta, t).then(|| t.clone()),
            Context::CaseScrut(c, x, l, y, r) => match self.synth(c, delta)? {
                Type::Sum(a, b) => {
                    let (dl, dr) = (delta.extend(x, (*a).clone()), delta.extend(y, (*b).clone()));
                    match infer(&dl, l) {
                        Ok(t) => check(&dr, r, &t).ok().map(|_| t),
                        Err(_) => {
                            let t = infer(&dr, r).ok()?;
                            check(&dl, l, &t).ok().map(|_| t)
                        }
                    }
                }
                _ => None,
            },
            Context::CaseLeft(s, x, c, y, r) => match infer(delta, s).ok()? {
                Type::Sum(a, b) => {
                    let (dl, dr) = (delta.extend(x, (*a).clone()), delta.extend(y, (*b).clone()));
                    let t = match self.synth(c, &dl) {
                        Some(t) => t,
                        None => infer(&dr, r).ok()?,
                    };
                    (self.check(c, &dl, &t) && check(&dr, r, &t).is_ok()).then_some(t)
                }
                _ => None,
            },
            Context::CaseRight(s, x, l, y, c) => match infer(delta, s).ok()? {
                Type::Sum(a, b) => {
                    let (dl, dr) = (delta.extend(x, (*a).clone()), delta.extend(y, (*b).clone()));
                    let t = match self.synth(c, &dr) {
                        Some(t) => t,
                        None => infer(&dl, l).ok()?,
                    };
                    (self.check(c, &dr, &t) && check(&dl, l, &t).is_ok()).then_some(t)
                }
                _ => None,
            },
            Context::Inl(_) | Context::Inr(_) | Context::Fold(_) => None,
        }
    }

    fn check(&self, c: &Context, delta: &TermCtx, sigma: &Type) -> bool {
        match (c, sigma) {
            (Context::Hole, _) => self.weakens_to(delta) && self.tau.alpha_eq(sigma),
            (Context::Lam(x, a, b), Type::Arrow(a2, s)) => {
                a.alpha_eq(a2) && self.check(b, &delta.extend(x, a.clone()), s)
            }
            (Context::Inl(c), Type::Sum(a, _)) => self.check(c, delta, a),
            (Context::Inr(c), Type::Sum(_, b)) => self.check(c, delta, b),
            (Context::Fold(c), Type::Mu(..)) => {
                self.check(c, delta, &sigma.unfold_mu().expect("mu type"))
            }
            (Context::PairL(c, n), Type::Prod(a, b)) => {
                self.check(c, delta, a) && check(delta, n, b).is_ok()
            }
            (Context::PairR(m, c), Type::Prod(a, b)) => {
                check(delta, m, a).is_ok() && self.check(c, delta, b)
            }
            (Context::CaseScrut(c, x, l, y, r), _) => match self.synth(c, delta) {
                Some(Type::Sum(a, b)) => {
                    check(&delta.extend(x, (*a).clone()), l, sigma).is_ok()
                        && check(&delta.extend(y, (*b).clone()), r, sigma).is_ok()
                }
                _ => false,
            },
            (Context::CaseLeft(s, x, c, y, r), _) => match infer(delta, s) {
                Ok(Type::Sum(a, b)) => {
                    self.check(c, &delta.extend(x, (*a).clone()), sigma)
                        && check(&delta.extend(y, (*b).clone()), r, sigma).is_ok()
                }
                _ => false,
            },
            (Context::CaseRight(s, x, l, y, c), _) => match infer(delta, s) {
                Ok(Type::Sum(a, b)) => {
                    check(&delta.extend(x, (*a).clone()), l, sigma).is_ok()
                        && self.check(c, &delta.extend(y, (*b).clone()), sigma)
                }
                _ => false,
            },
            (Context::Lam(..) | Context::Inl(_) | Context::Inr(_) | Context::Fold(_), _) => false,
            (Context::PairL(..) | Context::PairR(..), _) => false,
            _ => self.synth(c, delta).is_some_and(|t| t.alpha_eq(sigma)),
        }
    }
}

/// The type of `C[M]` under `Δ` for any `Γ ⊢ M : τ`, when it is determined
/// by synthesis.
pub fn ctx_synth(c: &Context, gamma: &TermCtx, tau: &Type, delta: &TermCtx) -> Option<Type> {
    HoleJudgment { gamma, tau }.synth(c, delta)
}

/// `C : (Γ, τ) → (Δ, σ)`.
pub fn ctx_check(c: &Context, gamma: &TermCtx, tau: &Type, delta: &TermCtx, sigma: &Type) -> bool {
    HoleJudgment { gamma, tau }.check(c, delta, sigma)
}

/// Reads every `*.fpc` file of a directory as a context, sorted by name.
pub fn load_contexts(dir: &Path) -> Result<Vec<(String, Context)>, ContextError> {
    let io = |source| ContextError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "fpc"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).map_err(|source| ContextError::Io {
                path: path.clone(),
                source,
            })?;
            let t = parse_file_with_hole(&text).map_err(|err| ContextError::Parse {
                path: path.clone(),
                err,
            })?;
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok((name, Context::from_marked(&t)?))
        })
        .collect()
}

/// Per-context outcome. A timeout is never counted as disagreement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CtxOutcome {
    /// Both fills converge, after `k1` and `k2` counted steps.
    Agree { k1: usize, k2: usize },
    /// At least one fill ran out of fuel; `None` marks the timed-out side.
    Unknown {
        left: Option<usize>,
        right: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtxResult {
    pub name: String,
    pub context: String,
    #[serde(flatten)]
    pub outcome: CtxOutcome,
    /// Exactly one side converged within fuel.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtxEquivReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub fuel: usize,
    pub results: Vec<CtxResult>,
}

impl CtxEquivReport {
    pub fn agreed(&self) -> usize {
        self.results
            .iter()
            .filter(|r| matches!(r.outcome, CtxOutcome::Agree { .. }))
            .count()
    }

    pub fn flagged(&self) -> usize {
        self.results.iter().filter(|r| r.flagged).count()
    }

    pub fn all_agree(&self) -> bool {
        self.agreed() == self.results.len()
    }
}

/// Runs `C[M]` and `C[N]` for every context and compares convergence.
/// Every context must map closed terms of `ty` to closed programs of type 1.
pub fn ctx_equiv_suite(
    m: &Term,
    n: &Term,
    ty: &Type,
    contexts: &[(String, Context)],
    fuel: usize,
) -> Result<CtxEquivReport, ContextError> {
    let empty = TermCtx::new();
    let mut results = Vec::new();
    for (name, c) in contexts {
        if !ctx_check(c, &empty, ty, &empty, &Type::Unit) {
            return Err(ContextError::IllTyped {
                name: name.clone(),
                hole: ty.clone(),
                context: c.to_string(),
            });
        }
        let run = |t: &Term| match eval_big(&Rc::new(fill(c, t)), fuel) {
            Ok((_, k)) => Ok(Some(k)),
            Err(EvalError::Timeout { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        let (left, right) = (run(m)?, run(n)?);
        let outcome = match (left, right) {
            (Some(k1), Some(k2)) => CtxOutcome::Agree { k1, k2 },
            _ => CtxOutcome::Unknown { left, right },
        };
        results.push(CtxResult {
            name: name.clone(),
            context: c.to_string(),
            outcome,
            flagged: left.is_some() != right.is_some(),
        });
    }
    Ok(CtxEquivReport {
        ty: ty.to_string(),
        fuel,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelude::{delayed, diverge};
    use crate::surface::parse_term;

    #[test]
    fn fill_applies_and_captures() {
        let c = Context::parse("[-] ()").unwrap();
        let id = parse_term("fn x : 1 => x").unwrap();
        assert_eq!(fill(&c, &id), parse_term("(fn x : 1 => x) ()").unwrap());
        let c = Context::parse("fn x : 1 => [-]").unwrap();
        assert_eq!(fill(&c, &Term::var("x")), parse_term("fn x : 1 => x").unwrap());
    }

    #[test]
    fn hole_count_is_checked() {
        assert!(Context::parse("()").is_err());
        assert!(Context::parse("<[-], [-]>").is_err());
        assert_eq!(Context::parse("fst [-]").unwrap().to_string(), "fst [-]");
    }

    #[test]
    fn typing_judgment() {
        let g = TermCtx::new().extend("z", Type::Unit);
        let p = Type::prod(Type::Unit, Type::bool());
        let fst = Context::parse("fst [-]").unwrap();
        assert!(ctx_check(&fst, &g, &p, &g, &Type::Unit));
        assert!(!ctx_check(&fst, &g, &p, &g, &Type::bool()));
        assert!(!ctx_check(&fst, &g, &p, &TermCtx::new(), &Type::Unit));
        let lam = Context::parse("(fn z : 1 => [-]) ()").unwrap();
        assert!(ctx_check(&lam, &g, &Type::Unit, &TermCtx::new(), &Type::Unit));
        let inl = Context::parse("case (inl [-] : 1 + 1) of { inl a => a | inr b => () }").unwrap();
        assert!(ctx_check(&inl, &TermCtx::new(), &Type::Unit, &TermCtx::new(), &Type::Unit));
        assert_eq!(
            ctx_synth(&fst, &g, &p, &g),
            Some(Type::Unit)
        );
    }

    #[test]
    fn suite_outcomes() {
        let hole = vec![("hole".to_string(), Context::Hole)];
        let r = ctx_equiv_suite(&Term::Unit, &delayed(Term::Unit, &Type::Unit), &Type::Unit, &hole, 100).unwrap();
        assert_eq!(r.results[0].outcome, CtxOutcome::Agree { k1: 0, k2: 1 });
        assert!(r.all_agree());
        let r = ctx_equiv_suite(&Term::Unit, &diverge(&Type::Unit), &Type::Unit, &hole, 500).unwrap();
        assert_eq!(
            r.results[0].outcome,
            CtxOutcome::Unknown {
                left: Some(0),
                right: None
            }
        );
        assert!(r.results[0].flagged);
        let bad = vec![("fst".to_string(), Context::parse("fst [-]").unwrap())];
        assert!(ctx_equiv_suite(&Term::Unit, &Term::Unit, &Type::Unit, &bad, 10).is_err());
    }
}

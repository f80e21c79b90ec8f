//! Call-by-name operational semantics with fold-unfold step counting.
//!
//! Only the contraction `unfold (fold M) → M` counts (kind [`StepKind::One`]);
//! every other reduction is free. Redexes are found in evaluation contexts
//!
//! ```text
//! E ::= [-] | E M | case E of {..} | fst E | snd E | unfold E
//! ```
//!
//! and ascriptions are transparent: `(v : T)` is a value, a redex may sit
//! under an ascription, and reducing inside `(M : T)` keeps the ascription.

use std::fmt;
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{subst, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    Zero,
    One,
}

impl StepKind {
    pub fn count(self) -> usize {
        match self {
            StepKind::Zero => 0,
            StepKind::One => 1,
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Zero => "->0",
            StepKind::One => "->1",
        })
    }
}

/// Position of a subterm: child indices from the root, as in [`Term::children`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Path(pub Vec<usize>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Reduced {
        term: Rc<Term>,
        kind: StepKind,
        path: Path,
    },
    NormalForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("stuck: {0}")]
pub struct Stuck(pub String);

/// One reduction step.
pub fn step(m: &Rc<Term>) -> Result<Step, Stuck> {
    let mut path = Vec::new();
    match contract(m, &mut path)? {
        Some((term, kind)) => {
            path.reverse();
            Ok(Step::Reduced {
                term,
                kind,
                path: Path(path),
            })
        }
        None => Ok(Step::NormalForm),
    }
}

/// Finds and contracts the redex; `path` collects child indices innermost first.
fn contract(m: &Rc<Term>, path: &mut Vec<usize>) -> Result<Option<(Rc<Term>, StepKind)>, Stuck> {
    if m.is_value().is_some() {
        return Ok(None);
    }
    let inside = |child: &Rc<Term>,
                  path: &mut Vec<usize>,
                  rebuild: &dyn Fn(Rc<Term>) -> Term|
     -> Result<Option<(Rc<Term>, StepKind)>, Stuck> {
        match contract(child, path)? {
            Some((t, k)) => {
                path.push(0);
                Ok(Some((Rc::new(rebuild(t)), k)))
            }
            None => Err(Stuck(format!("`{}` cannot be eliminated in `{m}`", child))),
        }
    };
    match &**m {
        Term::Ann(a, ty) => match contract(a, path)? {
            Some((t, k)) => {
                path.push(0);
                Ok(Some((Rc::new(Term::Ann(t, ty.clone())), k)))
            }
            None => unreachable!("ascribed value is a value"),
        },
        Term::App(f, a) => match f.peel() {
            Term::Lam(x, _, body) => Ok(Some((subst(body, a, x), StepKind::Zero))),
            _ => inside(f, path, &|f| Term::App(f, a.clone())),
        },
        Term::Fst(p) => match p.peel() {
            Term::Pair(a, _) => Ok(Some((a.clone(), StepKind::Zero))),
            _ => inside(p, path, &|p| Term::Fst(p)),
        },
        Term::Snd(p) => match p.peel() {
            Term::Pair(_, b) => Ok(Some((b.clone(), StepKind::Zero))),
            _ => inside(p, path, &|p| Term::Snd(p)),
        },
        Term::Case(l, x1, left, x2, right) => match l.peel() {
            Term::Inl(v) => Ok(Some((subst(left, v, x1), StepKind::Zero))),
            Term::Inr(v) => Ok(Some((subst(right, v, x2), StepKind::Zero))),
            _ => inside(l, path, &|l| {
                Term::Case(l, x1.clone(), left.clone(), x2.clone(), right.clone())
            }),
        },
        Term::Unfold(a) => match a.peel() {
            Term::Fold(b) => Ok(Some((b.clone(), StepKind::One))),
            _ => inside(a, path, &|a| Term::Unfold(a)),
        },
        Term::Var(x) => Err(Stuck(format!("free variable `{x}`"))),
        _ => unreachable!("non-values are eliminations"),
    }
}

/// Iterator over the small-step reduction sequence of a term.
pub struct SmallStepper {
    current: Rc<Term>,
    done: bool,
}

impl SmallStepper {
    pub fn new(m: Rc<Term>) -> SmallStepper {
        SmallStepper {
            current: m,
            done: false,
        }
    }

    pub fn current(&self) -> &Rc<Term> {
        &self.current
    }
}

/// One entry of a reduction trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub path: Path,
    pub kind: StepKind,
    #[serde(serialize_with = "ser_term")]
    pub term: Rc<Term>,
}

impl Iterator for SmallStepper {
    type Item = Result<TraceStep, Stuck>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match step(&self.current) {
            Ok(Step::Reduced { term, kind, path }) => {
                self.current = term.clone();
                Some(Ok(TraceStep { path, kind, term }))
            }
            Ok(Step::NormalForm) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

fn ser_term<S: serde::Serializer>(t: &Rc<Term>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trace {
    #[serde(serialize_with = "ser_term")]
    pub initial: Rc<Term>,
    pub steps: Vec<TraceStep>,
    pub k: usize,
}

impl Trace {
    /// One line per step: index, step kind, redex position, resulting term.
    pub fn to_text(&self) -> String {
        let mut out = format!("{:>5}           {}\n", 0, self.initial);
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("{:>5} {} {:<6} {}\n", i + 1, s.kind, s.path.to_string(), s.term));
        }
        out.push_str(&format!("k = {}\n", self.k));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("timeout after {fuel} steps")]
    Timeout { fuel: usize },
    #[error(transparent)]
    Stuck(#[from] Stuck),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmallResult {
    pub value: Rc<Term>,
    pub k: usize,
    /// Total reductions of both kinds.
    pub steps: usize,
    pub trace: Trace,
}

/// Reduces to a value within `max_steps` reductions, recording the trace.
pub fn eval_small(m: &Rc<Term>, max_steps: usize) -> Result<SmallResult, EvalError> {
    let mut stepper = SmallStepper::new(m.clone());
    let mut steps = Vec::new();
    let mut k = 0;
    loop {
        if steps.len() == max_steps {
            return match step(stepper.current())? {
                Step::NormalForm => Ok(finish(m, stepper, steps, k)),
                Step::Reduced { .. } => Err(EvalError::Timeout { fuel: max_steps }),
            };
        }
        match stepper.next() {
            Some(s) => {
                let s = s?;
                k += s.kind.count();
                steps.push(s);
            }
            None => return Ok(finish(m, stepper, steps, k)),
        }
    }
}

fn finish(m: &Rc<Term>, stepper: SmallStepper, steps: Vec<TraceStep>, k: usize) -> SmallResult {
    SmallResult {
        value: stepper.current.clone(),
        k,
        steps: steps.len(),
        trace: Trace {
            initial: m.clone(),
            steps,
            k,
        },
    }
}

/// Like [`eval_small`] without keeping the trace.
pub fn run_small(m: &Rc<Term>, max_steps: usize) -> Result<(Rc<Term>, usize), EvalError> {
    let mut cur = m.clone();
    let mut k = 0;
    for _ in 0..max_steps {
        match step(&cur)? {
            Step::Reduced { term, kind, .. } => {
                k += kind.count();
                cur = term;
            }
            Step::NormalForm => return Ok((cur, k)),
        }
    }
    match step(&cur)? {
        Step::NormalForm => Ok((cur, k)),
        Step::Reduced { .. } => Err(EvalError::Timeout { fuel: max_steps }),
    }
}

/// Where a maximal run of free reductions stops.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroRun {
    /// `M'` with `M →*⁰ M'`.
    pub reached: Rc<Term>,
    /// `M''` when `M' →¹ M''`; `None` when `M'` is a value.
    pub counted: Option<Rc<Term>>,
}

/// Takes free steps until a value or a counted step, within `bound` steps.
pub fn zero_run(m: &Rc<Term>, bound: usize) -> Result<ZeroRun, EvalError> {
    let mut cur = m.clone();
    for _ in 0..=bound {
        match step(&cur)? {
            Step::Reduced {
                term,
                kind: StepKind::Zero,
                ..
            } => cur = term,
            Step::Reduced {
                term,
                kind: StepKind::One,
                ..
            } => {
                return Ok(ZeroRun {
                    reached: cur,
                    counted: Some(term),
                })
            }
            Step::NormalForm => {
                return Ok(ZeroRun {
                    reached: cur,
                    counted: None,
                })
            }
        }
    }
    Err(EvalError::Timeout { fuel: bound })
}

/// `M ⇓ᵏ v` by the big-step rules; `fuel` bounds rule applications.
pub fn eval_big(m: &Rc<Term>, fuel: usize) -> Result<(Rc<Term>, usize), EvalError> {
    let mut b = Big { fuel, left: fuel };
    b.eval(m)
}

struct Big {
    fuel: usize,
    left: usize,
}

impl Big {
    fn eval(&mut self, m: &Rc<Term>) -> Result<(Rc<Term>, usize), EvalError> {
        if self.left == 0 {
            return Err(EvalError::Timeout { fuel: self.fuel });
        }
        self.left -= 1;
        if m.is_value().is_some() {
            return Ok((m.clone(), 0));
        }
        let stuck = |what: &Term| Stuck(format!("`{what}` cannot be eliminated in `{m}`"));
        match &**m {
            Term::Ann(a, ty) => {
                let (v, k) = self.eval(a)?;
                Ok((Rc::new(Term::Ann(v, ty.clone())), k))
            }
            Term::App(f, a) => {
                let (fv, k1) = self.eval(f)?;
                match fv.peel() {
                    Term::Lam(x, _, body) => {
                        let (v, k2) = self.eval(&subst(body, a, x))?;
                        Ok((v, k1 + k2))
                    }
                    other => Err(stuck(other).into()),
                }
            }
            Term::Fst(p) | Term::Snd(p) => {
                let (pv, k1) = self.eval(p)?;
                match pv.peel() {
                    Term::Pair(a, b) => {
                        let chosen = if matches!(&**m, Term::Fst(_)) { a } else { b };
                        let (v, k2) = self.eval(chosen)?;
                        Ok((v, k1 + k2))
                    }
                    other => Err(stuck(other).into()),
                }
            }
            Term::Case(l, x1, left, x2, right) => {
                let (lv, k1) = self.eval(l)?;
                let next = match lv.peel() {
                    Term::Inl(v) => subst(left, v, x1),
                    Term::Inr(v) => subst(right, v, x2),
                    other => return Err(stuck(other).into()),
                };
                let (v, k2) = self.eval(&next)?;
                Ok((v, k1 + k2))
            }
            Term::Unfold(a) => {
                let (av, k1) = self.eval(a)?;
                match av.peel() {
                    Term::Fold(b) => {
                        let (v, k2) = self.eval(b)?;
                        Ok((v, k1 + k2 + 1))
                    }
                    other => Err(stuck(other).into()),
                }
            }
            Term::Var(x) => Err(Stuck(format!("free variable `{x}`")).into()),
            _ => unreachable!("non-values are eliminations"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_term;
    use crate::syntax::Type;

    fn p(s: &str) -> Rc<Term> {
        Rc::new(parse_term(s).unwrap())
    }

    fn reduced(m: &str) -> (Term, StepKind) {
        match step(&p(m)).unwrap() {
            Step::Reduced { term, kind, .. } => ((*term).clone(), kind),
            Step::NormalForm => panic!("normal form"),
        }
    }

    #[test]
    fn basic_steps() {
        assert_eq!(reduced("unfold (fold ())"), (Term::Unit, StepKind::One));
        assert_eq!(reduced("(fn x : 1 => x) ()"), (Term::Unit, StepKind::Zero));
        assert_eq!(reduced("fst <(), ()>"), (Term::Unit, StepKind::Zero));
        assert_eq!(step(&p("fold ()")).unwrap(), Step::NormalForm);
    }

    #[test]
    fn redex_path_points_into_context() {
        match step(&p("case unfold (fold (inl ())) of { inl x => x | inr y => y }")).unwrap() {
            Step::Reduced { path, kind, .. } => {
                assert_eq!(path, Path(vec![0]));
                assert_eq!(kind, StepKind::One);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn two_unfolds_cost_two() {
        let r = eval_small(&p("unfold (fold (unfold (fold ())))"), 100).unwrap();
        assert_eq!((&*r.value, r.k), (&Term::Unit, 2));
        assert_eq!(r.trace.steps.len(), 2);
        assert_eq!(eval_big(&p("unfold (fold (unfold (fold ())))"), 100).unwrap().1, 2);
    }

    #[test]
    fn values_evaluate_to_themselves() {
        let v = p("fold (inl ())");
        assert_eq!(eval_big(&v, 10).unwrap(), (v.clone(), 0));
        let (w, k) = eval_big(&p("unfold (fold (inl ()))"), 10).unwrap();
        assert_eq!((&*w, k), (&Term::inl(Term::Unit), 1));
    }

    fn fix_id(ty: &str) -> Rc<Term> {
        let b = format!("(mu b. b -> ({ty} -> {ty}) -> {ty})");
        p(&format!(
            "(fn t : {b} -> ({ty} -> {ty}) -> {ty} => t (fold t)) (fn x : {b} => fn y : {ty} -> {ty} => y (unfold x x y)) (fn z : {ty} => z)"
        ))
    }

    #[test]
    fn fix_of_identity_diverges() {
        let m = fix_id("1");
        assert_eq!(eval_small(&m, 10_000).unwrap_err(), EvalError::Timeout { fuel: 10_000 });
        assert_eq!(eval_big(&m, 10_000).unwrap_err(), EvalError::Timeout { fuel: 10_000 });
    }

    #[test]
    fn call_by_name_discards_unused_divergence() {
        let m = Rc::new(Term::snd(Term::pair((*fix_id("1")).clone(), Term::Unit)));
        assert_eq!(eval_big(&m, 10_000).unwrap(), (Rc::new(Term::Unit), 0));
        assert_eq!(eval_small(&m, 10_000).unwrap().k, 0);
    }

    #[test]
    fn ascriptions_are_transparent() {
        let m = p("(unfold (fold (inl ()) : mu a. 1 + a) : 1 + mu a. 1 + a)");
        let r = eval_small(&m, 100).unwrap();
        let (v, k) = eval_big(&m, 100).unwrap();
        assert!(r.value.alpha_eq(&v));
        assert_eq!((r.k, k), (1, 1));
        assert!(v.is_value().is_some());
        let _ = Type::Unit;
    }

    #[test]
    fn zero_run_stops_before_counted_step() {
        let z = zero_run(&p("(fn x : 1 => unfold (fold x)) ()"), 10).unwrap();
        assert_eq!(*z.reached, Term::unfold(Term::fold(Term::Unit)));
        assert_eq!(z.counted.as_deref(), Some(&Term::Unit));
        let z = zero_run(&p("()"), 10).unwrap();
        assert!(z.counted.is_none());
    }

    #[test]
    fn trace_renders_as_text_and_json() {
        let r = eval_small(&p("unfold (fold ((fn x : 1 => x) ()))"), 10).unwrap();
        let text = r.trace.to_text();
        assert!(text.contains("->1 root"), "{text}");
        assert!(text.trim_end().ends_with("k = 1"));
        let json = serde_json::to_value(&r.trace).unwrap();
        assert_eq!(json["k"], 1);
        assert_eq!(json["steps"][0]["kind"], "One");
        assert_eq!(json["steps"][1]["path"], serde_json::json!([]));
    }

    #[test]
    fn stuck_terms_are_diagnosed() {
        assert!(matches!(step(&p("fst ()")), Err(Stuck(_))));
        assert!(matches!(step(&p("x")), Err(Stuck(_))));
    }
}

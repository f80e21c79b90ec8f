//! Denotational semantics into the guarded delay monad.
//!
//! Types are interpreted structurally:
//!
//! | type        | semantic value                           |
//! |-------------|------------------------------------------|
//! | `1`         | [`SemVal::Unit`], a delayed unit          |
//! | `t1 + t2`   | [`SemVal::Sum`], a delayed injection      |
//! | `t1 * t2`   | [`SemVal::Pair`]                          |
//! | `t1 -> t2`  | [`SemVal::Fun`]                           |
//! | `mu a. t`   | [`SemVal::Later`], the unrolled type later |
//!
//! Every type carries a tick `θ : ▷⟦σ⟧ → ⟦σ⟧` ([`tick`]); `unfold` and `case`
//! are interpreted through it, which is where the counted steps of the
//! operational semantics reappear as `Step` layers.

use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::kernel::{ext, force, next, Delay, ForceResult, Susp};
use crate::syntax::{Name, Term, Type};
use crate::types::{elaborate_closed, CoreKind, CoreTerm, TypeError};

#[derive(Clone)]
pub enum SemVal {
    Unit(Delay<()>),
    Sum(Delay<Injection>),
    Pair(Rc<SemVal>, Rc<SemVal>),
    Fun(SemFn),
    Later(Susp<SemVal>),
}

#[derive(Clone, Debug)]
pub enum Injection {
    Left(Rc<SemVal>),
    Right(Rc<SemVal>),
}

impl Injection {
    pub fn side(&self) -> Side {
        match self {
            Injection::Left(_) => Side::Left,
            Injection::Right(_) => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "inl",
            Side::Right => "inr",
        })
    }
}

#[derive(Clone)]
pub struct SemFn(Rc<dyn Fn(SemVal) -> SemVal>);

impl SemFn {
    pub fn new(f: impl Fn(SemVal) -> SemVal + 'static) -> SemFn {
        SemFn(Rc::new(f))
    }

    pub fn apply(&self, x: SemVal) -> SemVal {
        (self.0)(x)
    }
}

impl fmt::Debug for SemVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemVal::Unit(d) => write!(f, "Unit({})", head(d)),
            SemVal::Sum(d) => write!(f, "Sum({})", head(d)),
            SemVal::Pair(a, b) => write!(f, "Pair({a:?}, {b:?})"),
            SemVal::Fun(_) => f.write_str("Fun"),
            SemVal::Later(s) => write!(f, "Later({s:?})"),
        }
    }
}

fn head<T>(d: &Delay<T>) -> &'static str {
    match d {
        Delay::Now(_) => "now",
        Delay::Step(_) => "step",
    }
}

fn ill_typed(expected: &str, found: &SemVal) -> ! {
    panic!("ill-typed semantic value: expected {expected}, found {found:?}")
}

impl SemVal {
    pub fn unit_now() -> SemVal {
        SemVal::Unit(Delay::Now(()))
    }

    pub fn into_unit(self) -> Delay<()> {
        match self {
            SemVal::Unit(d) => d,
            other => ill_typed("a unit computation", &other),
        }
    }

    pub fn into_sum(self) -> Delay<Injection> {
        match self {
            SemVal::Sum(d) => d,
            other => ill_typed("a sum computation", &other),
        }
    }

    pub fn into_pair(self) -> (SemVal, SemVal) {
        match self {
            SemVal::Pair(a, b) => ((*a).clone(), (*b).clone()),
            other => ill_typed("a pair", &other),
        }
    }

    pub fn into_fun(self) -> SemFn {
        match self {
            SemVal::Fun(f) => f,
            other => ill_typed("a function", &other),
        }
    }

    pub fn into_later(self) -> Susp<SemVal> {
        match self {
            SemVal::Later(s) => s,
            other => ill_typed("a later value", &other),
        }
    }

    pub fn fst(self) -> SemVal {
        self.into_pair().0
    }

    pub fn snd(self) -> SemVal {
        self.into_pair().1
    }

    pub fn apply(self, x: SemVal) -> SemVal {
        self.into_fun().apply(x)
    }

    /// Whether the head variant is the one dictated by `t`.
    pub fn conforms(&self, t: &Type) -> bool {
        matches!(
            (t, self),
            (Type::Unit, SemVal::Unit(_))
                | (Type::Sum(..), SemVal::Sum(_))
                | (Type::Prod(..), SemVal::Pair(..))
                | (Type::Arrow(..), SemVal::Fun(_))
                | (Type::Mu(..), SemVal::Later(_))
        )
    }
}

/// `θ_σ`, by recursion on the closed type `σ`.
pub fn tick(sigma: &Type, s: Susp<SemVal>) -> SemVal {
    match sigma {
        Type::Unit => SemVal::Unit(Delay::Step(s.map(SemVal::into_unit))),
        Type::Sum(..) => SemVal::Sum(Delay::Step(s.map(SemVal::into_sum))),
        Type::Prod(t1, t2) => SemVal::Pair(
            Rc::new(tick(t1, s.map(SemVal::fst))),
            Rc::new(tick(t2, s.map(SemVal::snd))),
        ),
        Type::Arrow(_, t2) => {
            let t2 = t2.clone();
            SemVal::Fun(SemFn::new(move |x| tick(&t2, s.map(move |f| f.apply(x)))))
        }
        Type::Mu(..) => {
            let sigma = sigma.clone();
            SemVal::Later(Susp::new(move || {
                let unrolled = sigma.unfold_mu().expect("mu type");
                tick(&unrolled, s.demand().into_later())
            }))
        }
        Type::Var(a) => panic!("tick at open type variable `{a}`"),
    }
}

/// `δ_σ = θ_σ ∘ next`.
pub fn delay_sem(sigma: &Type, d: SemVal) -> SemVal {
    tick(sigma, next(d))
}

/// `δ_σⁿ`.
pub fn delay_sem_n(sigma: &Type, n: usize, d: SemVal) -> SemVal {
    (0..n).fold(d, |d, _| delay_sem(sigma, d))
}

/// Persistent environment from term variables to semantic values.
#[derive(Clone, Default)]
pub struct Env(Option<Rc<EnvNode>>);

struct EnvNode {
    name: Name,
    value: SemVal,
    rest: Env,
}

impl Env {
    pub fn new() -> Env {
        Env(None)
    }

    pub fn extend(&self, name: &Name, value: SemVal) -> Env {
        Env(Some(Rc::new(EnvNode {
            name: name.clone(),
            value,
            rest: self.clone(),
        })))
    }

    pub fn lookup(&self, x: &str) -> Option<&SemVal> {
        let mut cur = &self.0;
        while let Some(node) = cur {
            if &*node.name == x {
                return Some(&node.value);
            }
            cur = &node.rest.0;
        }
        None
    }
}

/// `⟦M⟧γ`.
///
/// # Panics
///
/// If a free variable of `m` is missing from `env`.
pub fn denote(m: &Rc<CoreTerm>, env: &Env) -> SemVal {
    let v = match &m.kind {
        CoreKind::Var(x) => env
            .lookup(x)
            .unwrap_or_else(|| panic!("unbound variable `{x}` in denotation"))
            .clone(),
        CoreKind::Unit => SemVal::unit_now(),
        CoreKind::Pair(a, b) => SemVal::Pair(Rc::new(denote(a, env)), Rc::new(denote(b, env))),
        CoreKind::Fst(a) => denote(a, env).fst(),
        CoreKind::Snd(a) => denote(a, env).snd(),
        CoreKind::Inl(a) => SemVal::Sum(Delay::Now(Injection::Left(Rc::new(denote(a, env))))),
        CoreKind::Inr(a) => SemVal::Sum(Delay::Now(Injection::Right(Rc::new(denote(a, env))))),
        CoreKind::Case(l, x1, left, x2, right) => {
            let scrutinee = denote(l, env).into_sum();
            let (x1, left, x2, right, env2) =
                (x1.clone(), left.clone(), x2.clone(), right.clone(), env.clone());
            let sigma = m.ty.clone();
            let dispatch = move |inj: Injection| match inj {
                Injection::Left(v) => denote(&left, &env2.extend(&x1, (*v).clone())),
                Injection::Right(v) => denote(&right, &env2.extend(&x2, (*v).clone())),
            };
            ext(dispatch, move |s| tick(&sigma, s)).apply(scrutinee)
        }
        CoreKind::Lam(x, _, body) => {
            let (x, body, env) = (x.clone(), body.clone(), env.clone());
            SemVal::Fun(SemFn::new(move |v| denote(&body, &env.extend(&x, v))))
        }
        CoreKind::App(f, a) => denote(f, env).apply(denote(a, env)),
        CoreKind::Fold(a) => {
            let (a, env) = (a.clone(), env.clone());
            SemVal::Later(Susp::new(move || denote(&a, &env)))
        }
        CoreKind::Unfold(a) => tick(&m.ty, denote(a, env).into_later()),
        CoreKind::Ann(a, _) => denote(a, env),
    };
    debug_assert!(v.conforms(&m.ty), "denotation of `{}` does not match {}", m.erase(), m.ty);
    v
}

/// Typechecks a closed term and returns its type and denotation.
pub fn denote_term(m: &Term) -> Result<(Type, SemVal), TypeError> {
    let core = elaborate_closed(m)?;
    let v = denote(&core, &Env::new());
    Ok((core.ty.clone(), v))
}

/// Forces the outer delay of a unit denotation.
pub fn observe_unit(d: &SemVal, fuel: usize) -> ForceResult<()> {
    force(&d.clone().into_unit(), fuel)
}

/// Forces the outer delay of a sum denotation; the payload is not forced.
pub fn observe_bool(d: &SemVal, fuel: usize) -> ForceResult<Side> {
    force(&d.clone().into_sum(), fuel).map(|inj| inj.side())
}

/// Ground-type observation in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuel: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converged,
    Timeout,
}

impl Observation {
    pub fn steps(&self) -> Option<usize> {
        self.steps
    }
}

impl From<ForceResult<()>> for Observation {
    fn from(r: ForceResult<()>) -> Self {
        match r {
            ForceResult::Converged { steps, .. } => Observation {
                verdict: Verdict::Converged,
                steps: Some(steps),
                fuel: None,
                side: None,
            },
            ForceResult::Timeout { fuel } => Observation {
                verdict: Verdict::Timeout,
                steps: None,
                fuel: Some(fuel),
                side: None,
            },
        }
    }
}

impl From<ForceResult<Side>> for Observation {
    fn from(r: ForceResult<Side>) -> Self {
        match r {
            ForceResult::Converged { value, steps } => Observation {
                verdict: Verdict::Converged,
                steps: Some(steps),
                fuel: None,
                side: Some(value),
            },
            ForceResult::Timeout { fuel } => Observation::from(ForceResult::<()>::Timeout { fuel }),
        }
    }
}

/// Observes a denotation at `1` or `1 + 1`; `None` at other types.
pub fn observe(ty: &Type, d: &SemVal, fuel: usize) -> Option<Observation> {
    if *ty == Type::Unit {
        Some(observe_unit(d, fuel).into())
    } else if ty.alpha_eq(&Type::bool()) {
        Some(observe_bool(d, fuel).into())
    } else {
        None
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.verdict, self.side) {
            (Verdict::Converged, Some(side)) => {
                write!(f, "{side} after {} steps", self.steps.unwrap_or(0))
            }
            (Verdict::Converged, None) => write!(f, "() after {} steps", self.steps.unwrap_or(0)),
            (Verdict::Timeout, _) => write!(f, "Timeout (fuel {})", self.fuel.unwrap_or(0)),
        }
    }
}

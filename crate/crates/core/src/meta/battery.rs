//! Finite argument batteries for the arrow cases of the relational checkers.
//!
//! A battery for a closed type is a list of closed terms of that type with
//! their denotations: every enumerated term up to a size bound, a few of them
//! wrapped in one counted step, and a divergent term.

use std::rc::Rc;

use crate::denot::{denote, Env, SemVal};
use crate::prelude::{delayed, diverge};
use crate::syntax::{name, Name, Term, Type};
use crate::types::{elaborate_against, TermCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryConfig {
    /// Largest enumerated term size.
    pub max_size: usize,
    /// Enumerated terms kept, smallest first.
    pub max_terms: usize,
    /// How many enumerated terms also appear wrapped in one counted step.
    pub delayed: usize,
    /// Cross pairs `(x_i, x_j)` in the bisimulation battery.
    pub cross: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            max_size: 8,
            max_terms: 24,
            delayed: 6,
            cross: 8,
        }
    }
}

#[derive(Clone)]
pub struct Entry {
    pub term: Rc<Term>,
    pub den: SemVal,
}

/// Argument pairs for one type.
#[derive(Clone)]
pub struct Battery {
    pub ty: Type,
    /// `(⟦N⟧, N)` pairs for the logical relation.
    pub entries: Vec<Entry>,
    /// Candidate related pairs for the bisimulation.
    pub pairs: Vec<(SemVal, SemVal, String)>,
}

impl Battery {
    pub fn build(ty: &Type, config: &BatteryConfig) -> Battery {
        let base = enumerate(ty, config.max_size, config.max_terms);
        let mut terms: Vec<Term> = base.clone();
        for t in base.iter().take(config.delayed) {
            terms.push(delayed(t.clone(), ty));
        }
        terms.push(diverge(ty));
        let entries: Vec<Entry> = terms
            .into_iter()
            .map(|t| {
                let core = elaborate_against(&TermCtx::new(), &t, ty)
                    .unwrap_or_else(|e| panic!("battery term `{t}` is ill-typed: {e}"));
                Entry {
                    den: denote(&core, &Env::new()),
                    term: Rc::new(t),
                }
            })
            .collect();

        let n_base = base.len();
        let n_delayed = config.delayed.min(n_base);
        let mut pairs = Vec::new();
        for e in &entries {
            pairs.push((e.den.clone(), e.den.clone(), format!("{0} ~ {0}", e.term)));
        }
        for i in 0..n_delayed {
            let (x, dx) = (&entries[i], &entries[n_base + i]);
            pairs.push((x.den.clone(), dx.den.clone(), format!("{} ~ {}", x.term, dx.term)));
            pairs.push((dx.den.clone(), x.den.clone(), format!("{} ~ {}", dx.term, x.term)));
        }
        let mut crossed = 0;
        'outer: for i in 0..n_base {
            for j in 0..n_base {
                if crossed == config.cross {
                    break 'outer;
                }
                if i != j {
                    let (a, b) = (&entries[i], &entries[j]);
                    pairs.push((a.den.clone(), b.den.clone(), format!("{} ~ {}", a.term, b.term)));
                    crossed += 1;
                }
            }
        }
        Battery {
            ty: ty.clone(),
            entries,
            pairs,
        }
    }
}

/// Closed terms of `ty` of size at most `max_size`, smallest first, at most
/// `cap` of them. Every result checks against `ty`.
pub fn enumerate(ty: &Type, max_size: usize, cap: usize) -> Vec<Term> {
    let mut e = Enumerator { cap };
    let mut out = Vec::new();
    for s in 1..=max_size {
        for t in e.terms(ty, s, &[]) {
            if out.len() == cap {
                return out;
            }
            out.push(t);
        }
    }
    out
}

struct Enumerator {
    cap: usize,
}

impl Enumerator {
    fn var_name(gamma: &[(Name, Type)]) -> Name {
        name(&format!("x{}", gamma.len()))
    }

    /// Terms of `ty` of exactly `size` under `gamma`.
    fn terms(&mut self, ty: &Type, size: usize, gamma: &[(Name, Type)]) -> Vec<Term> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        let cap = self.cap;
        let push = |out: &mut Vec<Term>, t: Term| {
            if out.len() < cap {
                out.push(t);
            }
        };
        if size == 1 {
            if *ty == Type::Unit {
                push(&mut out, Term::Unit);
            }
            for (x, t) in gamma.iter().rev() {
                if t.alpha_eq(ty) {
                    push(&mut out, Term::Var(x.clone()));
                }
            }
        }
        match ty {
            Type::Sum(a, b) => {
                for t in self.terms(a, size - 1, gamma) {
                    push(&mut out, Term::inl(t));
                }
                for t in self.terms(b, size - 1, gamma) {
                    push(&mut out, Term::inr(t));
                }
            }
            Type::Prod(a, b) => {
                for s1 in 1..size.saturating_sub(1) {
                    let lefts = self.terms(a, s1, gamma);
                    if lefts.is_empty() {
                        continue;
                    }
                    let rights = self.terms(b, size - 1 - s1, gamma);
                    for l in &lefts {
                        for r in &rights {
                            push(&mut out, Term::pair(l.clone(), r.clone()));
                        }
                    }
                }
            }
            Type::Arrow(a, b) => {
                let x = Self::var_name(gamma);
                let mut inner = gamma.to_vec();
                inner.push((x.clone(), (**a).clone()));
                for body in self.terms(b, size - 1, &inner) {
                    push(&mut out, Term::Lam(x.clone(), (**a).clone(), Rc::new(body)));
                }
            }
            Type::Mu(..) => {
                let unrolled = ty.unfold_mu().expect("mu type");
                for t in self.terms(&unrolled, size - 1, gamma) {
                    push(&mut out, Term::fold(t));
                }
            }
            Type::Unit | Type::Var(_) => {}
        }
        for t in self.eliminations(ty, size, gamma) {
            push(&mut out, t);
        }
        out
    }

    /// Case analysis on variables of sum type (directly or under one unfold)
    /// and projections of variables of product type.
    fn eliminations(&mut self, ty: &Type, size: usize, gamma: &[(Name, Type)]) -> Vec<Term> {
        let mut out = Vec::new();
        for (v, vt) in gamma.iter().rev() {
            if size == 2 {
                if let Type::Prod(a, b) = vt {
                    if a.alpha_eq(ty) {
                        out.push(Term::fst(Term::Var(v.clone())));
                    }
                    if b.alpha_eq(ty) {
                        out.push(Term::snd(Term::Var(v.clone())));
                    }
                }
            }
            let (scrutinee, sum, cost) = match vt {
                Type::Sum(..) => (Term::Var(v.clone()), vt.clone(), 2),
                Type::Mu(..) => match vt.unfold_mu() {
                    Some(s @ Type::Sum(..)) => (Term::unfold(Term::Var(v.clone())), s, 3),
                    _ => continue,
                },
                _ => continue,
            };
            let Type::Sum(a, b) = &sum else { unreachable!() };
            if size < cost + 2 {
                continue;
            }
            let y = Self::var_name(gamma);
            let mut ga = gamma.to_vec();
            ga.push((y.clone(), (**a).clone()));
            let mut gb = gamma.to_vec();
            gb.push((y.clone(), (**b).clone()));
            for s1 in 1..=size - cost - 1 {
                let lefts = self.terms(ty, s1, &ga);
                let rights = self.terms(ty, size - cost - s1, &gb);
                for l in &lefts {
                    for r in &rights {
                        if out.len() < self.cap {
                            out.push(Term::Case(
                                Rc::new(scrutinee.clone()),
                                y.clone(),
                                Rc::new(l.clone()),
                                y.clone(),
                                Rc::new(r.clone()),
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::check;

    #[test]
    fn enumerates_small_types() {
        assert_eq!(enumerate(&Type::Unit, 8, 10), vec![Term::Unit]);
        let bools = enumerate(&Type::bool(), 8, 10);
        assert_eq!(bools, vec![Term::inl(Term::Unit), Term::inr(Term::Unit)]);
        let nats = enumerate(&Type::nat(), 8, 10);
        assert_eq!(nats.len(), 3);
    }

    #[test]
    fn enumerated_functions_typecheck() {
        let ty = Type::arrow(Type::nat(), Type::bool());
        let fs = enumerate(&ty, 8, 24);
        assert!(fs.len() >= 3);
        assert!(fs.iter().any(|f| matches!(f, Term::Lam(_, _, b) if matches!(**b, Term::Case(..)))));
        for f in &fs {
            check(&TermCtx::new(), f, &ty).unwrap();
        }
    }

    #[test]
    fn battery_contains_delayed_and_divergent_entries() {
        let b = Battery::build(&Type::Unit, &BatteryConfig::default());
        assert_eq!(b.entries.len(), 3);
        assert!(b.pairs.len() >= 4);
    }
}

use std::rc::Rc;

use super::{Harness, Level, MetaError, Verdict};
use crate::denot::{Injection, SemVal};
use crate::kernel::Delay;
use crate::opsem::zero_run;
use crate::syntax::{Term, Type};

impl Harness {
    /// Whether the denotation `d` and the closed term `m` are related at `ty`
    /// up to depth `n`.
    pub fn logrel(&self, ty: &Type, d: &SemVal, m: &Term, n: u32) -> Result<Verdict, MetaError> {
        Ok(self.logrel_level(ty, d, &Rc::new(m.clone()), n)?.verdict(n))
    }

    fn logrel_level(&self, ty: &Type, d: &SemVal, m: &Rc<Term>, n: u32) -> Result<Level, MetaError> {
        if n == 0 {
            return Ok(Level::full(0));
        }
        match (ty, d) {
            (Type::Unit, SemVal::Unit(delay)) => self.ground(delay, m, n, &|_, v, n| match v {
                Term::Unit => Ok(Level::full(n)),
                other => Ok(Level::fail(format!("expected (), reached {other}"))),
            }),
            (Type::Sum(a, b), SemVal::Sum(delay)) => self.ground(delay, m, n, &|inj, v, n| {
                match (inj, v) {
                    (Injection::Left(x), Term::Inl(l)) => {
                        Ok(self.logrel_level(a, x, l, n)?.under("inl"))
                    }
                    (Injection::Right(x), Term::Inr(l)) => {
                        Ok(self.logrel_level(b, x, l, n)?.under("inr"))
                    }
                    (inj, other) => Ok(Level::fail(format!(
                        "denotation is {}, term reached {other}",
                        inj.side()
                    ))),
                }
            }),
            (Type::Prod(a, b), SemVal::Pair(x, y)) => {
                let l = self.logrel_level(a, x, &Rc::new(Term::Fst(m.clone())), n)?;
                let r = self.logrel_level(b, y, &Rc::new(Term::Snd(m.clone())), n)?;
                Ok(l.under("fst").min(r.under("snd")))
            }
            (Type::Arrow(a, b), SemVal::Fun(f)) => {
                let mut acc = Level::full(n);
                for e in &self.battery(a).entries {
                    let k = self.logrel_level(a, &e.den, &e.term, n)?.reached.min(n);
                    let r = self.logrel_level(
                        b,
                        &f.apply(e.den.clone()),
                        &Rc::new(Term::App(m.clone(), e.term.clone())),
                        k,
                    )?;
                    if r.reached < k {
                        acc = acc.min(r.under(format!("arg {}", e.term)));
                    }
                }
                Ok(acc)
            }
            (Type::Mu(..), SemVal::Later(s)) => {
                let unrolled = ty.unfold_mu().expect("mu type");
                let run = zero_run(&Rc::new(Term::Unfold(m.clone())), self.config.zero_bound)?;
                match run.counted {
                    Some(next) => Ok(self
                        .logrel_level(&unrolled, &s.demand(), &next, n - 1)?
                        .later()
                        .under("unfold")),
                    None => Ok(Level::fail(format!(
                        "unfold reached value {} without a counted step",
                        run.reached
                    ))),
                }
            }
            (ty, d) => panic!("denotation {d:?} does not have type {ty}"),
        }
    }

    /// The unit and sum cases: a value now must meet a term that reaches the
    /// matching value by free steps; a tick must meet a counted step.
    fn ground<T: Clone + 'static>(
        &self,
        delay: &Delay<T>,
        m: &Rc<Term>,
        n: u32,
        now: &dyn Fn(&T, &Term, u32) -> Result<Level, MetaError>,
    ) -> Result<Level, MetaError> {
        if n == 0 {
            return Ok(Level::full(0));
        }
        let run = zero_run(m, self.config.zero_bound)?;
        match (delay, &run.counted) {
            (Delay::Now(x), None) => now(x, run.reached.peel(), n),
            (Delay::Now(_), Some(_)) => Ok(Level::fail(format!(
                "denotation is a value, {} takes a counted step",
                run.reached
            ))),
            (Delay::Step(_), None) => Ok(Level::fail(format!(
                "denotation ticks, term reached value {}",
                run.reached
            ))),
            (Delay::Step(s), Some(next)) => {
                Ok(self.ground(&s.demand(), next, n - 1, now)?.later())
            }
        }
    }
}

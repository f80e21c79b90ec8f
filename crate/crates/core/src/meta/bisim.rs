use super::{Harness, Level, Verdict};
use crate::denot::{Injection, SemVal};
use crate::kernel::{force, Delay, ForceResult};
use crate::syntax::Type;

/// Lifts a depth-indexed relation on values to delayed computations.
///
/// Two values now are compared by `r`. Two ticks recurse one level down. A
/// value against a tick unrolls the tick up to `search_fuel` steps looking
/// for a related value, and fails when none appears.
pub fn lift_rel<A: Clone + 'static, B: Clone + 'static>(
    r: impl Fn(&A, &B, u32) -> Verdict,
    da: &Delay<A>,
    db: &Delay<B>,
    n: u32,
    search_fuel: usize,
) -> Verdict {
    let r = |a: &A, b: &B, n: u32| match r(a, b, n) {
        Verdict::HoldsAt { depth } => Level::full(depth),
        Verdict::FailsAt { depth, path } => Level {
            reached: depth.saturating_sub(1),
            path,
        },
    };
    lift_level(&r, da, db, n, search_fuel).verdict(n)
}

pub(crate) fn lift_level<A: Clone + 'static, B: Clone + 'static>(
    r: &dyn Fn(&A, &B, u32) -> Level,
    da: &Delay<A>,
    db: &Delay<B>,
    n: u32,
    search_fuel: usize,
) -> Level {
    let (mut da, mut db) = (da.clone(), db.clone());
    let mut ticks = 0;
    loop {
        if ticks == n {
            return Level::full(n);
        }
        let m = n - ticks;
        let (a, b) = match (&da, &db) {
            (Delay::Now(a), Delay::Now(b)) => (a.clone(), b.clone()),
            (Delay::Now(a), Delay::Step(_)) => match force(&db, search_fuel) {
                ForceResult::Converged { value, .. } => (a.clone(), value),
                ForceResult::Timeout { fuel } => {
                    return failed(ticks, format!("right side shows no value within {fuel} steps"))
                }
            },
            (Delay::Step(_), Delay::Now(b)) => match force(&da, search_fuel) {
                ForceResult::Converged { value, .. } => (value, b.clone()),
                ForceResult::Timeout { fuel } => {
                    return failed(ticks, format!("left side shows no value within {fuel} steps"))
                }
            },
            (Delay::Step(s), Delay::Step(t)) => {
                let (s, t) = (s.demand(), t.demand());
                da = s;
                db = t;
                ticks += 1;
                continue;
            }
        };
        let mut l = r(&a, &b, m);
        l.reached += ticks;
        return l;
    }
}

fn failed(ticks: u32, reason: String) -> Level {
    let mut l = Level::fail(reason);
    l.reached += ticks;
    l
}

impl Harness {
    /// Weak bisimilarity of two denotations of `ty` up to depth `n`.
    pub fn bisim(&self, ty: &Type, d1: &SemVal, d2: &SemVal, n: u32) -> Verdict {
        self.bisim_level(ty, d1, d2, n).verdict(n)
    }

    fn bisim_level(&self, ty: &Type, d1: &SemVal, d2: &SemVal, n: u32) -> Level {
        if n == 0 {
            return Level::full(0);
        }
        let fuel = self.config.search_fuel;
        match (ty, d1, d2) {
            (Type::Unit, SemVal::Unit(a), SemVal::Unit(b)) => {
                lift_level(&|_: &(), _: &(), n| Level::full(n), a, b, n, fuel)
            }
            (Type::Sum(t1, t2), SemVal::Sum(a), SemVal::Sum(b)) => {
                let r = |x: &Injection, y: &Injection, n: u32| match (x, y) {
                    (Injection::Left(x), Injection::Left(y)) => {
                        self.bisim_level(t1, x, y, n).under("inl")
                    }
                    (Injection::Right(x), Injection::Right(y)) => {
                        self.bisim_level(t2, x, y, n).under("inr")
                    }
                    (x, y) => Level::fail(format!("{} vs {}", x.side(), y.side())),
                };
                lift_level(&r, a, b, n, fuel)
            }
            (Type::Prod(t1, t2), SemVal::Pair(x1, y1), SemVal::Pair(x2, y2)) => {
                let l = self.bisim_level(t1, x1, x2, n).under("fst");
                let r = self.bisim_level(t2, y1, y2, n).under("snd");
                l.min(r)
            }
            (Type::Arrow(t1, t2), SemVal::Fun(f), SemVal::Fun(g)) => {
                let mut acc = Level::full(n);
                for (a, b, label) in &self.battery(t1).pairs {
                    let k = self.bisim_level(t1, a, b, n).reached.min(n);
                    let r = self.bisim_level(t2, &f.apply(a.clone()), &g.apply(b.clone()), k);
                    if r.reached < k {
                        acc = acc.min(r.under(format!("arg {label}")));
                    }
                }
                acc
            }
            (Type::Mu(..), SemVal::Later(s), SemVal::Later(t)) => {
                let unrolled = ty.unfold_mu().expect("mu type");
                self.bisim_level(&unrolled, &s.demand(), &t.demand(), n - 1)
                    .later()
                    .under("unfold")
            }
            (ty, d1, d2) => panic!("denotations {d1:?} and {d2:?} do not both have type {ty}"),
        }
    }
}

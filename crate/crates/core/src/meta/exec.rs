use std::fmt;

use crate::denot::{Injection, Side};
use crate::kernel::Delay;

/// Result of running a boolean denotation for a bounded number of steps.
#[derive(Clone)]
pub enum Exec {
    Done(Side),
    More(Delay<Injection>),
}

impl Exec {
    pub fn side(&self) -> Option<Side> {
        match self {
            Exec::Done(s) => Some(*s),
            Exec::More(_) => None,
        }
    }
}

impl fmt::Debug for Exec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exec::Done(s) => write!(f, "Done({s:?})"),
            Exec::More(_) => f.write_str("More(..)"),
        }
    }
}

/// Advances the computation by one step; the payload of a value is dropped.
pub fn runstep(d: &Delay<Injection>) -> Exec {
    match d {
        Delay::Now(inj) => Exec::Done(inj.side()),
        Delay::Step(s) => Exec::More(s.demand()),
    }
}

/// Applies [`runstep`] at most `n + 1` times, stopping at the first value.
pub fn exec(n: usize, d: &Delay<Injection>) -> Exec {
    let mut cur = d.clone();
    for _ in 0..n {
        match runstep(&cur) {
            Exec::More(next) => cur = next,
            done => return done,
        }
    }
    runstep(&cur)
}

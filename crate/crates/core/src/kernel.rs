//! The delay monad `L A ≅ A + ▷ L A`, later-suspensions and fuel-bounded forcing.
//!
//! A [`Susp`] is a memoized thunk standing for the later modality: `next`
//! builds one without running anything, and [`Susp::demand`] runs the body at
//! most once. A [`Delay`] is either a value now or a suspended further delay,
//! so a chain of `Step`s may be infinite; the only way to look inside a delay
//! without bounding the work is to demand one layer at a time, and [`force`]
//! does exactly that under a fuel limit.
//!
//! ```
//! use fpc::kernel::{bottom, delta_l, eta, force, ForceResult};
//!
//! let two = delta_l(delta_l(eta(())));
//! assert_eq!(force(&two, 5), ForceResult::Converged { value: (), steps: 2 });
//! assert_eq!(force(&two, 1), ForceResult::Timeout { fuel: 1 });
//! assert_eq!(force(&bottom::<()>(), 1000), ForceResult::Timeout { fuel: 1000 });
//! ```

use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

enum State<T> {
    Pending(Box<dyn FnOnce() -> T>),
    Running,
    /// Placeholder of a [`gfix`] knot that has not been tied yet.
    Unset,
    Done(T),
}

/// A memoized suspension: a `T` available one step from now.
pub struct Susp<T>(Rc<RefCell<State<T>>>);

impl<T> Clone for Susp<T> {
    fn clone(&self) -> Self {
        Susp(self.0.clone())
    }
}

/// Raised when a suspension is demanded while it is being computed, or while
/// it is the not-yet-tied knot of a fixpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("suspension demanded during its own construction (non-productive fixpoint)")]
pub struct SelfDemand;

impl<T: Clone + 'static> Susp<T> {
    pub fn new(body: impl FnOnce() -> T + 'static) -> Susp<T> {
        Susp(Rc::new(RefCell::new(State::Pending(Box::new(body)))))
    }

    /// `next`: a suspension whose value is already known.
    pub fn ready(value: T) -> Susp<T> {
        Susp(Rc::new(RefCell::new(State::Done(value))))
    }

    fn unset() -> Susp<T> {
        Susp(Rc::new(RefCell::new(State::Unset)))
    }

    pub fn try_demand(&self) -> Result<T, SelfDemand> {
        let pending = {
            let mut state = self.0.borrow_mut();
            match &*state {
                State::Done(v) => return Ok(v.clone()),
                State::Running | State::Unset => return Err(SelfDemand),
                State::Pending(_) => {}
            }
            match std::mem::replace(&mut *state, State::Running) {
                State::Pending(f) => f,
                _ => unreachable!(),
            }
        };
        let value = pending();
        *self.0.borrow_mut() = State::Done(value.clone());
        Ok(value)
    }

    /// Runs the body on first demand and returns the memoized value after.
    ///
    /// # Panics
    ///
    /// On [`SelfDemand`].
    pub fn demand(&self) -> T {
        match self.try_demand() {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn is_evaluated(&self) -> bool {
        matches!(&*self.0.borrow(), State::Done(_))
    }

    /// `next f ⊛ self`.
    pub fn map<U: Clone + 'static>(&self, f: impl FnOnce(T) -> U + 'static) -> Susp<U> {
        let this = self.clone();
        Susp::new(move || f(this.demand()))
    }

    pub fn ptr_eq(&self, other: &Susp<T>) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }
}

impl<T> fmt::Debug for Susp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0.borrow() {
            State::Done(_) => f.write_str("Susp(evaluated)"),
            State::Running => f.write_str("Susp(running)"),
            _ => f.write_str("Susp(pending)"),
        }
    }
}

pub fn next<T: Clone + 'static>(value: T) -> Susp<T> {
    Susp::ready(value)
}

#[derive(Debug)]
pub enum Delay<T> {
    Now(T),
    Step(Susp<Delay<T>>),
}

impl<T: Clone> Clone for Delay<T> {
    fn clone(&self) -> Self {
        match self {
            Delay::Now(v) => Delay::Now(v.clone()),
            Delay::Step(s) => Delay::Step(s.clone()),
        }
    }
}

pub fn eta<T>(value: T) -> Delay<T> {
    Delay::Now(value)
}

/// `θ_L`.
pub fn step_l<T>(s: Susp<Delay<T>>) -> Delay<T> {
    Delay::Step(s)
}

/// `δ_L = θ_L ∘ next`.
pub fn delta_l<T: Clone + 'static>(d: Delay<T>) -> Delay<T> {
    Delay::Step(next(d))
}

/// `δⁿ`.
pub fn delta_n<T: Clone + 'static>(n: usize, d: Delay<T>) -> Delay<T> {
    (0..n).fold(d, |d, _| delta_l(d))
}

/// Guarded fixpoint: returns `x` with `x = f(next x)`.
///
/// `f` must not demand its argument before returning. The suspension handed
/// to `f` is tied to the result afterwards; demanding it earlier yields
/// [`SelfDemand`] (a panic through [`Susp::demand`]).
pub fn gfix<T: Clone + 'static>(f: impl FnOnce(Susp<T>) -> T) -> T {
    let knot = Susp::unset();
    let value = f(knot.clone());
    *knot.0.borrow_mut() = State::Done(value.clone());
    value
}

/// `⊥ = fix θ_L`, the everlasting delay.
pub fn bottom<T: Clone + 'static>() -> Delay<T> {
    gfix(step_l)
}

/// Homomorphic extension `f̂ : L A → B` of `f` into the `▷`-algebra `(B, tick)`.
pub struct Ext<A, B> {
    f: Rc<dyn Fn(A) -> B>,
    tick: Rc<dyn Fn(Susp<B>) -> B>,
}

impl<A, B> Clone for Ext<A, B> {
    fn clone(&self) -> Self {
        Ext {
            f: self.f.clone(),
            tick: self.tick.clone(),
        }
    }
}

impl<A: Clone + 'static, B: Clone + 'static> Ext<A, B> {
    pub fn apply(&self, d: Delay<A>) -> B {
        match d {
            Delay::Now(a) => (self.f)(a),
            Delay::Step(r) => {
                let this = self.clone();
                (self.tick)(Susp::new(move || this.apply(r.demand())))
            }
        }
    }
}

pub fn ext<A: Clone + 'static, B: Clone + 'static>(
    f: impl Fn(A) -> B + 'static,
    tick: impl Fn(Susp<B>) -> B + 'static,
) -> Ext<A, B> {
    Ext {
        f: Rc::new(f),
        tick: Rc::new(tick),
    }
}

/// Result of bounded forcing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ForceResult<T> {
    Converged { value: T, steps: usize },
    Timeout { fuel: usize },
}

impl<T> ForceResult<T> {
    pub fn steps(&self) -> Option<usize> {
        match self {
            ForceResult::Converged { steps, .. } => Some(*steps),
            ForceResult::Timeout { .. } => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> ForceResult<U> {
        match self {
            ForceResult::Converged { value, steps } => ForceResult::Converged {
                value: f(value),
                steps,
            },
            ForceResult::Timeout { fuel } => ForceResult::Timeout { fuel },
        }
    }
}

/// Unrolls at most `fuel` `Step` layers.
pub fn force<T: Clone + 'static>(d: &Delay<T>, fuel: usize) -> ForceResult<T> {
    let mut cur = d.clone();
    let mut steps = 0;
    loop {
        match cur {
            Delay::Now(value) => return ForceResult::Converged { value, steps },
            Delay::Step(s) => {
                if steps == fuel {
                    return ForceResult::Timeout { fuel };
                }
                cur = s.demand();
                steps += 1;
            }
        }
    }
}

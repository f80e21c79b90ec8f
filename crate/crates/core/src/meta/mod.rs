//! Executable metatheory: a depth-indexed logical relation between
//! denotations and terms, weak bisimulation of denotations, program contexts
//! with contextual-equivalence suites, and the step executor for boolean
//! programs.
//!
//! Relations are checked at a finite depth `n`: every later modality in a
//! definition consumes one unit and depth 0 always holds. Arrow cases range
//! over a finite [`Battery`] of argument terms, so a `FailsAt` verdict is a
//! genuine counterexample while `HoldsAt` is evidence, not proof.
//!
//! ```
//! use fpc::denot::denote_term;
//! use fpc::meta::Harness;
//! use fpc::surface::parse_term;
//!
//! let m = parse_term("unfold (fold () : mu a. 1)").unwrap();
//! let (ty, d) = denote_term(&m).unwrap();
//! let h = Harness::default();
//! assert!(h.logrel(&ty, &d, &m, 10).unwrap().holds());
//! ```

mod battery;
mod bisim;
mod context;
mod exec;
mod logrel;
mod verdict;

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

pub use battery::{enumerate, Battery, BatteryConfig, Entry};
pub use bisim::lift_rel;
pub use context::{
    ctx_check, ctx_equiv_suite, ctx_synth, fill, load_contexts, CtxEquivReport, CtxOutcome,
    CtxResult, Context, ContextError,
};
pub use exec::{exec, runstep, Exec};
pub use verdict::{Depth, Report, Verdict};

pub(crate) use verdict::Level;

use crate::opsem::EvalError;
use crate::syntax::Type;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MetaError {
    /// Free reductions did not reach a value or a counted step.
    #[error("free reductions exceeded {bound} steps")]
    FuelExhausted { bound: usize },
    #[error("{0}")]
    Stuck(String),
}

impl From<EvalError> for MetaError {
    fn from(e: EvalError) -> MetaError {
        match e {
            EvalError::Timeout { fuel } => MetaError::FuelExhausted { bound: fuel },
            EvalError::Stuck(s) => MetaError::Stuck(s.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub battery: BatteryConfig,
    /// Steps unrolled when a value is compared against a computation.
    pub search_fuel: usize,
    /// Bound on consecutive free reductions.
    pub zero_bound: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            battery: BatteryConfig::default(),
            search_fuel: 10_000,
            zero_bound: 100_000,
        }
    }
}

/// Checker state: configuration plus a per-type battery cache.
#[derive(Default)]
pub struct Harness {
    pub config: HarnessConfig,
    batteries: RefCell<HashMap<String, Rc<Battery>>>,
}

impl Harness {
    pub fn new(config: HarnessConfig) -> Harness {
        Harness {
            config,
            batteries: RefCell::default(),
        }
    }

    pub fn battery(&self, ty: &Type) -> Rc<Battery> {
        let key = ty.canonical().to_string();
        if let Some(b) = self.batteries.borrow().get(&key) {
            return b.clone();
        }
        let b = Rc::new(Battery::build(ty, &self.config.battery));
        self.batteries.borrow_mut().insert(key, b.clone());
        b
    }
}

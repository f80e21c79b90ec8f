//! Seeded random generation of closed, well-typed, terminating terms.
//!
//! Generated terms use the unit, boolean, natural number, product and arrow
//! types only. None of them has a recursive type with a negative occurrence,
//! so every generated term reaches a value. Introduction forms for sums and
//! recursive types are ascribed, so every term synthesizes its type.
//!
//! ```
//! use fpc::gen::Gen;
//! use fpc::syntax::Type;
//! use fpc::types::{infer, TermCtx};
//!
//! let m = Gen::new(7).term(&Type::bool(), 3);
//! assert_eq!(infer(&TermCtx::new(), &m).unwrap(), Type::bool());
//! ```

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::prelude::{delayed, nat, numeral, succ, zero};
use crate::syntax::{name, Name, Term, Type};

pub struct Gen {
    rng: ChaCha8Rng,
    vars: usize,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            vars: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A closed term of `ty` with elimination nesting at most `depth`.
    pub fn term(&mut self, ty: &Type, depth: usize) -> Term {
        self.gen(ty, depth, &mut Vec::new())
    }

    /// A closed program of type 1 or 1 + 1.
    pub fn ground(&mut self, depth: usize) -> (Term, Type) {
        let ty = if self.rng.gen_bool(0.5) {
            Type::Unit
        } else {
            Type::bool()
        };
        (self.term(&ty, depth), ty)
    }

    pub fn nat(&mut self, depth: usize) -> Term {
        self.term(&nat(), depth)
    }

    fn fresh(&mut self) -> Name {
        self.vars += 1;
        name(&format!("v{}", self.vars))
    }

    fn base_type(&mut self) -> Type {
        [Type::Unit, Type::bool(), nat()]
            .choose(&mut self.rng)
            .cloned()
            .expect("nonempty")
    }

    fn gen(&mut self, ty: &Type, depth: usize, gamma: &mut Vec<(Name, Type)>) -> Term {
        if depth == 0 || self.rng.gen_bool(0.25) {
            return self.leaf(ty, depth, gamma);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..7) {
            0 => self.intro(ty, d, gamma),
            1 => {
                let a = self.base_type();
                let f = self.gen(&Type::arrow(a.clone(), ty.clone()), d, gamma);
                let x = self.gen(&a, d, gamma);
                Term::app(f, x)
            }
            2 => {
                let scrut = self.gen(&Type::bool(), d, gamma);
                let (l, r) = (self.fresh(), self.fresh());
                let left = self.under(&l, Type::Unit, gamma, |g, gamma| g.gen(ty, d, gamma));
                let right = self.under(&r, Type::Unit, gamma, |g, gamma| g.gen(ty, d, gamma));
                Term::case(scrut, &l, left, &r, right)
            }
            3 => {
                let l = self.gen(&nat(), d, gamma);
                let (u, p) = (self.fresh(), self.fresh());
                let m = self.gen(ty, d, gamma);
                let n = self.under(&p, nat(), gamma, |g, gamma| g.gen(ty, d, gamma));
                Term::case(Term::unfold(l), &u, m, &p, n)
            }
            4 => delayed(self.gen(ty, d, gamma), ty),
            5 => {
                let other = self.gen(&Type::Unit, d, gamma);
                Term::fst(Term::pair(self.gen(ty, d, gamma), other))
            }
            _ => {
                let a = self.base_type();
                let x = self.fresh();
                let body = self.under(&x, a.clone(), gamma, |g, gamma| g.gen(ty, d, gamma));
                let arg = self.gen(&a, d, gamma);
                Term::app(Term::lam(&x, a, body), arg)
            }
        }
    }

    fn under<T>(
        &mut self,
        x: &Name,
        t: Type,
        gamma: &mut Vec<(Name, Type)>,
        f: impl FnOnce(&mut Gen, &mut Vec<(Name, Type)>) -> T,
    ) -> T {
        gamma.push((x.clone(), t));
        let out = f(self, gamma);
        gamma.pop();
        out
    }

    fn leaf(&mut self, ty: &Type, depth: usize, gamma: &mut Vec<(Name, Type)>) -> Term {
        let vars: Vec<&Name> = gamma
            .iter()
            .filter(|(_, t)| t.alpha_eq(ty))
            .map(|(x, _)| x)
            .collect();
        if !vars.is_empty() && self.rng.gen_bool(0.5) {
            return Term::Var((*vars.choose(&mut self.rng).expect("nonempty")).clone());
        }
        self.intro(ty, depth.saturating_sub(1), gamma)
    }

    fn intro(&mut self, ty: &Type, d: usize, gamma: &mut Vec<(Name, Type)>) -> Term {
        if ty.alpha_eq(&nat()) {
            return match self.rng.gen_range(0..3) {
                0 => zero(),
                1 => numeral(self.rng.gen_range(1..4)),
                _ => succ(self.gen(ty, d, gamma)),
            };
        }
        match ty {
            Type::Unit => Term::Unit,
            Type::Sum(a, b) => {
                let inj = if self.rng.gen_bool(0.5) {
                    Term::inl(self.gen(a, d, gamma))
                } else {
                    Term::inr(self.gen(b, d, gamma))
                };
                Term::ann(inj, ty.clone())
            }
            Type::Prod(a, b) => Term::pair(self.gen(a, d, gamma), self.gen(b, d, gamma)),
            Type::Arrow(a, b) => {
                let x = self.fresh();
                let body = self.under(&x, (**a).clone(), gamma, |g, gamma| g.gen(b, d, gamma));
                Term::lam(&x, (**a).clone(), body)
            }
            Type::Mu(..) => {
                let unrolled = ty.unfold_mu().expect("mu type");
                Term::ann(Term::fold(self.gen(&unrolled, d, gamma)), ty.clone())
            }
            Type::Var(a) => panic!("cannot generate a term of open type `{a}`"),
        }
    }
}

//! Worked examples for each operation of the public API.

use std::rc::Rc;

use fpc::denot::{denote_term, observe_bool, observe_unit, Side};
use fpc::kernel::{bottom, delta_l, delta_n, eta, force, ForceResult};
use fpc::meta::{
    ctx_check, ctx_equiv_suite, exec, fill, lift_rel, runstep, Context, CtxOutcome, Exec, Harness,
    Verdict,
};
use fpc::opsem::{eval_big, eval_small, step, EvalError, Step, StepKind};
use fpc::prelude::{diverge, fix_combinator, ifz, numeral, tt, zero};
use fpc::surface::{parse_term, parse_type};
use fpc::syntax::{subst, Term, Type, ValueForm};
use fpc::types::{elaborate, infer, wf_type, CoreKind, TermCtx, TypeCtx};

fn t(src: &str) -> Term {
    parse_term(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn rc(src: &str) -> Rc<Term> {
    Rc::new(t(src))
}

fn ty(src: &str) -> Type {
    parse_type(src).unwrap()
}

// syntax

#[test]
fn term_substitution() {
    assert_eq!(*subst(&rc("x"), &rc("()"), "x"), Term::Unit);
    let r = subst(&rc("fn y : 1 => x"), &rc("y"), "x");
    assert!(r.alpha_eq(&t("fn z : 1 => y")));
    assert!(!r.alpha_eq(&t("fn y : 1 => y")));
    let r = subst(&rc("case x of { inl x1 => x1 | inr x2 => x }"), &rc("fold ()"), "x");
    assert!(r.alpha_eq(&t("case fold () of { inl x1 => x1 | inr x2 => fold () }")));
}

#[test]
fn type_substitution() {
    let nat = ty("mu a. 1 + a");
    assert_eq!(ty("a").subst(&nat, "a"), nat);
    assert_eq!(ty("1 + a").subst(&nat, "a"), ty("1 + (mu a. 1 + a)"));
    let r = ty("mu b. b -> a").subst(&ty("b"), "a");
    assert!(r.alpha_eq(&ty("mu c. c -> b")));
    assert!(!r.alpha_eq(&ty("mu b. b -> b")));
}

#[test]
fn value_witnesses() {
    assert_eq!(Term::Unit.is_value().unwrap().form, ValueForm::Unit);
    assert_eq!(t("fold (inl ())").is_value().unwrap().form, ValueForm::Fold);
    assert!(t("unfold (fold ())").is_value().is_none());
}

// surface

#[test]
fn parsing_and_printing() {
    assert_eq!(t("fold (inl ())"), Term::fold(Term::inl(Term::Unit)));
    assert_eq!(t("fn x : 1 => x"), Term::lam("x", Type::Unit, Term::var("x")));
    assert_eq!(
        t("case unfold n of { inl x1 => x1 | inr x2 => x2 }"),
        Term::case(Term::unfold(Term::var("n")), "x1", Term::var("x1"), "x2", Term::var("x2"))
    );
    assert_eq!(ty("mu a. 1 + a"), Type::mu("a", Type::sum(Type::Unit, Type::var("a"))));
    assert_eq!(ty("1 -> 1 -> 1"), Type::arrow(Type::Unit, Type::arrow(Type::Unit, Type::Unit)));
    assert_eq!(ty("1 + 1 * 1"), Type::sum(Type::Unit, Type::prod(Type::Unit, Type::Unit)));
    assert_eq!(Term::fold(Term::inl(Term::Unit)).to_string(), "fold (inl ())");
    assert_eq!(ty("mu a. 1 + a").to_string(), "mu a. 1 + a");
    assert_eq!(t("f x y").to_string(), "f x y");
    // unbound variables are a typing matter, not a parse error
    assert!(parse_term("x y").is_ok());
}

// types

#[test]
fn well_formed_types() {
    assert!(wf_type(&TypeCtx::new(), &ty("mu a. 1 + a")));
    assert!(!wf_type(&TypeCtx::new(), &ty("a")));
    assert!(wf_type(&["a"].into_iter().collect(), &ty("a -> a")));
}

#[test]
fn inference() {
    let g = TermCtx::new();
    assert_eq!(infer(&g, &zero()).unwrap(), ty("mu a. 1 + a"));
    for a in [Type::Unit, Type::bool(), ty("mu a. 1 + a"), ty("1 -> 1")] {
        let f = infer(&g, &fix_combinator(&a)).unwrap();
        assert_eq!(f, Type::arrow(Type::arrow(a.clone(), a.clone()), a));
    }
    let err = infer(&g, &t("unfold ()")).unwrap_err();
    assert!(err.to_string().contains("recursive type"), "{err}");
}

#[test]
fn elaboration_annotations() {
    let g = TermCtx::new();
    let u = elaborate(&g, &t("unfold (fold () : mu a. 1)")).unwrap();
    assert!(matches!(u.kind, CoreKind::Unfold(_)));
    assert_eq!(u.ty, Type::Unit);
    let c = elaborate(&g, &ifz(numeral(1), tt(), "p", tt())).unwrap();
    assert!(matches!(c.kind, CoreKind::Case(..)));
    assert_eq!(c.ty, Type::bool());
    let z = elaborate(&g, &zero()).unwrap();
    let CoreKind::Ann(fold, _) = &z.kind else { panic!("{z:?}") };
    assert!(matches!(fold.kind, CoreKind::Fold(_)));
    assert_eq!(fold.ty, ty("mu a. 1 + a"));
}

// opsem

#[test]
fn single_steps() {
    let reduced = |src: &str| match step(&rc(src)).unwrap() {
        Step::Reduced { term, kind, .. } => (term, kind),
        Step::NormalForm => panic!("{src} is a normal form"),
    };
    assert_eq!(reduced("unfold (fold ())"), (Rc::new(Term::Unit), StepKind::One));
    assert_eq!(reduced("(fn x : 1 => x) ()"), (Rc::new(Term::Unit), StepKind::Zero));
    assert_eq!(reduced("fst <(), ()>"), (Rc::new(Term::Unit), StepKind::Zero));
}

#[test]
fn evaluation() {
    let r = eval_small(&rc("unfold (fold (unfold (fold ())))"), 100).unwrap();
    assert_eq!((r.value.as_ref(), r.k), (&Term::Unit, 2));
    let m = t("unfold (fold (unfold (fold ()) : mu a. 1) : mu a. 1)");
    let k_m = eval_small(&Rc::new(m.clone()), 100).unwrap().k;
    let z = ifz(zero(), m, "p", Term::Unit);
    assert_eq!(eval_small(&Rc::new(z), 100).unwrap().k, 1 + k_m);
    assert!(matches!(
        eval_small(&Rc::new(diverge(&Type::Unit)), 10_000),
        Err(EvalError::Timeout { .. })
    ));
    assert_eq!(eval_big(&rc("fold (inl ())"), 10).unwrap(), (rc("fold (inl ())"), 0));
    let (v, k) = eval_big(&rc("unfold (fold (inl ()))"), 10).unwrap();
    assert_eq!((v, k), (rc("inl ()"), 1));
    let m = Rc::new(Term::snd(Term::pair(diverge(&Type::Unit), Term::Unit)));
    assert_eq!(eval_big(&m, 10_000).unwrap(), (Rc::new(Term::Unit), 0));
}

// kernel and denot

#[test]
fn denotations_and_observation() {
    let (_, d) = denote_term(&Term::Unit).unwrap();
    assert_eq!(observe_unit(&d, 0), ForceResult::Converged { value: (), steps: 0 });
    let (_, d) = denote_term(&t("unfold (fold () : mu a. 1)")).unwrap();
    assert_eq!(observe_unit(&d, 10).steps(), Some(1));
    let (_, d) = denote_term(&diverge(&Type::Unit)).unwrap();
    for fuel in [0, 1, 10, 100, 1000, 10_000] {
        assert_eq!(observe_unit(&d, fuel), ForceResult::Timeout { fuel });
    }
    let (_, d) = denote_term(&t("(inl () : 1 + 1)")).unwrap();
    assert_eq!(observe_bool(&d, 0), ForceResult::Converged { value: Side::Left, steps: 0 });
    let m = t("unfold (fold (unfold (fold () : mu a. 1)) : mu a. 1)");
    let k = eval_small(&Rc::new(m.clone()), 100).unwrap().k;
    let (_, d) = denote_term(&m).unwrap();
    assert_eq!(observe_unit(&d, 100).steps(), Some(k));
}

#[test]
fn delays() {
    assert_eq!(force(&delta_n(3, eta(7)), 10), ForceResult::Converged { value: 7, steps: 3 });
    assert_eq!(force(&delta_n(3, eta(7)), 2), ForceResult::Timeout { fuel: 2 });
    assert_eq!(force(&bottom::<u8>(), 50), ForceResult::Timeout { fuel: 50 });
}

// meta

#[test]
fn logical_relation() {
    let h = Harness::default();
    let (_, unit) = denote_term(&Term::Unit).unwrap();
    for n in 0..60 {
        assert_eq!(h.logrel(&Type::Unit, &unit, &Term::Unit, n).unwrap(), Verdict::HoldsAt { depth: n });
    }
    let late = fpc::denot::SemVal::Unit(delta_l(eta(())));
    for n in 1..10 {
        assert!(h.logrel(&Type::Unit, &late, &Term::Unit, n).unwrap().fails());
    }
}

#[test]
fn logical_relation_rejects_mismatches() {
    let h = Harness::default();
    // a function denotation against a slower function
    let (fty, f) = denote_term(&t("fn x : 1 => x")).unwrap();
    let slow = t("fn x : 1 => unfold (fold x : mu d. 1)");
    let v = h.logrel(&fty, &f, &slow, 5).unwrap();
    assert!(matches!(v, Verdict::FailsAt { depth: 1, ref path } if path[0].starts_with("arg")), "{v}");
    // a boolean against the other boolean
    let (bty, b) = denote_term(&tt()).unwrap();
    assert!(h.logrel(&bty, &b, &t("(inr () : 1 + 1)"), 3).unwrap().fails());
    // 2 and 3 share two unfoldings; the third mismatch needs one more level
    let (nty, two) = denote_term(&numeral(2)).unwrap();
    let v = h.logrel(&nty, &two, &numeral(3), 10).unwrap();
    assert!(matches!(v, Verdict::FailsAt { depth: 4, .. }), "{v}");
}

#[test]
fn lifting() {
    let eq = |_: &(), _: &(), n: u32| Verdict::HoldsAt { depth: n };
    for a in 0..=20 {
        for b in 0..=20 {
            let n = a.max(b) as u32 + 1;
            assert!(lift_rel(eq, &delta_n(a, eta(())), &delta_n(b, eta(())), n, 10_000).holds());
        }
    }
    let bot = bottom::<()>();
    for n in [0, 1, 2, 50, 100] {
        assert_eq!(lift_rel(eq, &bot, &bot, n, 10_000), Verdict::HoldsAt { depth: n });
    }
    for n in 1..20 {
        assert!(lift_rel(eq, &eta(()), &bot, n, 10_000).fails());
    }
}

#[test]
fn bisimulation() {
    let h = Harness::default();
    let (_, a) = denote_term(&Term::Unit).unwrap();
    let (_, b) = denote_term(&t("unfold (fold () : mu a. 1)")).unwrap();
    for n in 2..40 {
        assert!(h.bisim(&Type::Unit, &a, &b, n).holds());
    }
}

#[test]
fn contexts() {
    let c = Context::parse("[-] ()").unwrap();
    assert_eq!(fill(&c, &t("fn x : 1 => x")), t("(fn x : 1 => x) ()"));
    let c = Context::parse("fn x : 1 => [-]").unwrap();
    assert_eq!(fill(&c, &t("x")), t("fn x : 1 => x"));
    let g = TermCtx::new().extend("w", Type::Unit);
    let c = Context::parse("fst [-]").unwrap();
    assert!(ctx_check(&c, &g, &ty("1 * (1 + 1)"), &g, &Type::Unit));
}

#[test]
fn contextual_equivalence_suites() {
    let hole = vec![("hole".to_string(), Context::Hole)];
    let delayed = t("unfold (fold () : mu a. 1)");
    let r = ctx_equiv_suite(&Term::Unit, &delayed, &Type::Unit, &hole, 10_000).unwrap();
    assert_eq!(r.results[0].outcome, CtxOutcome::Agree { k1: 0, k2: 1 });
    let r = ctx_equiv_suite(&Term::Unit, &diverge(&Type::Unit), &Type::Unit, &hole, 10_000).unwrap();
    assert!(matches!(r.results[0].outcome, CtxOutcome::Unknown { right: None, .. }));
    assert!(r.results[0].flagged);
    let r = ctx_equiv_suite(&Term::Unit, &Term::Unit, &Type::Unit, &hole, 10).unwrap();
    assert!(r.all_agree());
}

#[test]
fn executor() {
    use fpc::denot::Injection;
    use fpc::denot::SemVal;
    let left = eta(Injection::Left(Rc::new(SemVal::unit_now())));
    let right = eta(Injection::Right(Rc::new(SemVal::unit_now())));
    assert_eq!(runstep(&left).side(), Some(Side::Left));
    assert!(matches!(runstep(&delta_l(right)), Exec::More(fpc::kernel::Delay::Now(Injection::Right(_)))));
    assert!(matches!(runstep(&bottom()), Exec::More(_)));
    let (_, d) = denote_term(&t("(inl () : 1 + 1)")).unwrap();
    assert_eq!(exec(0, &d.into_sum()).side(), Some(Side::Left));
    let (_, d) = denote_term(&t("unfold (fold (inl ()) : mu a. 1 + 1)")).unwrap();
    let d = d.into_sum();
    assert_eq!(exec(1, &d).side(), Some(Side::Left));
    assert!(exec(0, &d).side().is_none());
    let (_, d) = denote_term(&diverge(&Type::bool())).unwrap();
    assert!(exec(10_000, &d.into_sum()).side().is_none());
}

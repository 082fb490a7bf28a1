//! Generators shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use selfref::syntax::{ArithFormula, ModalFormula, Term};

/// Terms whose variables are raw indices; [`close`] repairs them.
pub fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        (0u32..3).prop_map(Term::Var),
        (1u64..5000).prop_map(Term::num_u64),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            inner.prop_map(Term::diag),
        ]
    })
}

/// Arithmetic formulas of depth at most 8, possibly open.
pub fn formula() -> impl Strategy<Value = ArithFormula> {
    let tag = prop_oneof![Just("PA"), Just("Q"), Just("S")];
    let atom = prop_oneof![
        3 => (term(), term()).prop_map(|(a, b)| ArithFormula::eq(a, b)),
        1 => (tag, term()).prop_map(|(t, x)| ArithFormula::pr(t, x)),
    ];
    atom.prop_recursive(8, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ArithFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ArithFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ArithFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ArithFormula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ArithFormula::iff(a, b)),
            inner.clone().prop_map(ArithFormula::forall),
            inner.clone().prop_map(ArithFormula::exists),
            (term(), inner.clone()).prop_map(|(t, f)| ArithFormula::BoundedForall(t, Box::new(f))),
            (term(), inner).prop_map(|(t, f)| ArithFormula::BoundedExists(t, Box::new(f))),
        ]
    })
}

fn close_term(t: &Term, binders: u32) -> Term {
    match t {
        Term::Var(i) if binders == 0 => Term::num_u64(u64::from(*i) + 1),
        Term::Var(i) => Term::Var(i % binders),
        Term::Zero | Term::Num(_) => t.clone(),
        Term::Succ(a) => Term::succ(close_term(a, binders)),
        Term::Add(a, b) => Term::add(close_term(a, binders), close_term(b, binders)),
        Term::Mul(a, b) => Term::mul(close_term(a, binders), close_term(b, binders)),
        Term::Diag(a) => Term::diag(close_term(a, binders)),
    }
}

/// Rebinds stray variables so that the result is a sentence.
pub fn close(f: &ArithFormula, binders: u32) -> ArithFormula {
    use ArithFormula as F;
    let c = |g: &ArithFormula| Box::new(close(g, binders));
    match f {
        F::Eq(a, b) => F::Eq(close_term(a, binders), close_term(b, binders)),
        F::Pr(tag, t) => F::Pr(tag.clone(), close_term(t, binders)),
        F::Not(a) => F::Not(c(a)),
        F::And(a, b) => F::And(c(a), c(b)),
        F::Or(a, b) => F::Or(c(a), c(b)),
        F::Implies(a, b) => F::Implies(c(a), c(b)),
        F::Iff(a, b) => F::Iff(c(a), c(b)),
        F::Forall(a) => F::Forall(Box::new(close(a, binders + 1))),
        F::Exists(a) => F::Exists(Box::new(close(a, binders + 1))),
        F::BoundedForall(t, a) => F::BoundedForall(close_term(t, binders), Box::new(close(a, binders + 1))),
        F::BoundedExists(t, a) => F::BoundedExists(close_term(t, binders), Box::new(close(a, binders + 1))),
    }
}

pub fn sentence() -> impl Strategy<Value = ArithFormula> {
    formula().prop_map(|f| close(&f, 0))
}

/// Modal formulas over `p` and `q`.
pub fn modal() -> impl Strategy<Value = ModalFormula> {
    let leaf = prop_oneof![
        Just(ModalFormula::Bottom),
        Just(ModalFormula::Top),
        Just(ModalFormula::letter("p")),
        Just(ModalFormula::letter("q")),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ModalFormula::not),
            inner.clone().prop_map(ModalFormula::boxed),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| ModalFormula::iff(a, b)),
        ]
    })
}

/// Every formula over `p` and `#F` with at most `depth` nested
/// connectives or boxes.
pub fn exhaustive_one_letter(depth: usize) -> Vec<ModalFormula> {
    let mut levels = vec![vec![ModalFormula::letter("p"), ModalFormula::Bottom]];
    for _ in 0..depth {
        let below: Vec<ModalFormula> = levels.iter().flatten().cloned().collect();
        let mut next = Vec::new();
        for a in &below {
            next.push(ModalFormula::not(a.clone()));
            next.push(ModalFormula::boxed(a.clone()));
            for b in &below {
                next.push(ModalFormula::and(a.clone(), b.clone()));
                next.push(ModalFormula::or(a.clone(), b.clone()));
                next.push(ModalFormula::implies(a.clone(), b.clone()));
                next.push(ModalFormula::iff(a.clone(), b.clone()));
            }
        }
        next.retain(|f| !levels.iter().flatten().any(|g| g == f));
        levels.push(next);
    }
    let mut all: Vec<ModalFormula> = levels.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    all
}

//! Explicit fixed points in GL: for `A(p)` with `p` under a box, a
//! `p`-free `D` with `GL ⊢ D ↔ A(D)`.
//!
//! The solver writes `A(p) = B(□C1(p), …, □Cn(p))` with the `□Ci(p)` the
//! outermost boxed subformulas containing `p`, solves each
//! `Ai = B(…, ⊤ at i, …)` recursively to `Di`, and returns
//! `B(□C1(D1), …, □Cn(Dn))`. Every answer is checked by the prover; if the
//! check fails a small candidate search takes over.

use crate::gl::{gl_decide, gl_provable, GLVerdict};
use crate::syntax::ModalFormula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixpointResult {
    pub input: ModalFormula,
    pub letter: String,
    pub solution: ModalFormula,
    /// The verdict for `D ↔ A(D)`; always `Proved`.
    pub equivalence_verdict: GLVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixpointError {
    #[error("letter `{0}` occurs outside the scope of every box")]
    NotModalized(String),
    #[error("no certified fixed point found")]
    NoCertifiedSolution,
}

/// Outermost boxed subformulas containing `p`, in first-occurrence order.
fn p_boxes(f: &ModalFormula, p: &str, out: &mut Vec<ModalFormula>) {
    use ModalFormula as M;
    match f {
        M::Box(_) if f.contains_letter(p) => {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        M::Bottom | M::Top | M::Letter(_) | M::Box(_) => {}
        M::Not(x) => p_boxes(x, p, out),
        M::And(a, b) | M::Or(a, b) | M::Implies(a, b) | M::Iff(a, b) => {
            p_boxes(a, p, out);
            p_boxes(b, p, out);
        }
    }
}

/// Rewrites the outermost `p`-boxes through `by`.
fn replace_boxes(f: &ModalFormula, p: &str, by: &impl Fn(&ModalFormula) -> ModalFormula) -> ModalFormula {
    use ModalFormula as M;
    match f {
        M::Box(_) if f.contains_letter(p) => by(f),
        M::Bottom | M::Top | M::Letter(_) | M::Box(_) => f.clone(),
        M::Not(x) => M::not(replace_boxes(x, p, by)),
        M::And(a, b) => M::and(replace_boxes(a, p, by), replace_boxes(b, p, by)),
        M::Or(a, b) => M::or(replace_boxes(a, p, by), replace_boxes(b, p, by)),
        M::Implies(a, b) => M::implies(replace_boxes(a, p, by), replace_boxes(b, p, by)),
        M::Iff(a, b) => M::iff(replace_boxes(a, p, by), replace_boxes(b, p, by)),
    }
}

fn solve(a: &ModalFormula, p: &str) -> ModalFormula {
    let mut boxes = Vec::new();
    p_boxes(a, p, &mut boxes);
    if boxes.is_empty() {
        return a.clone();
    }
    let parts: Vec<(ModalFormula, ModalFormula)> = boxes
        .iter()
        .map(|bi| {
            let ai = replace_boxes(a, p, &|b| if b == bi { ModalFormula::Top } else { b.clone() });
            let di = solve(&ai, p);
            (bi.clone(), bi.replace_letter(p, &di))
        })
        .collect();
    replace_boxes(a, p, &|b| {
        parts.iter().find(|(bi, _)| bi == b).map(|(_, r)| r.clone()).expect("box was collected")
    })
    .simplify()
}

fn fixed_point_equation(a: &ModalFormula, p: &str, d: &ModalFormula) -> ModalFormula {
    ModalFormula::iff(d.clone(), a.replace_letter(p, d))
}

fn candidates(a: &ModalFormula, p: &str) -> Vec<ModalFormula> {
    use ModalFormula as M;
    let mut out = vec![M::Top, M::Bottom];
    for seed in [M::Top, M::Bottom] {
        let mut x = seed;
        for _ in 0..6 {
            x = a.replace_letter(p, &x).simplify();
            out.push(x.clone());
        }
    }
    for g in crate::syntax::subformulas_modal(a) {
        for c in [M::Top, M::Bottom] {
            let h = g.replace_letter(p, &c).simplify();
            out.push(M::not(h.clone()).simplify());
            out.push(h);
        }
    }
    let mut seen = Vec::new();
    out.retain(|f| {
        if seen.contains(f) {
            false
        } else {
            seen.push(f.clone());
            true
        }
    });
    out
}

/// Computes and certifies a fixed point of `a` in the letter `p`.
pub fn compute_fixed_point(a: &ModalFormula, p: &str) -> Result<FixpointResult, FixpointError> {
    if a.contains_letter(p) && !a.is_modalized_in(p) {
        return Err(FixpointError::NotModalized(p.to_string()));
    }
    let first = solve(a, p);
    let tries = std::iter::once(first).chain(candidates(a, p));
    for d in tries {
        if d.contains_letter(p) {
            continue;
        }
        if let verdict @ GLVerdict::Proved(_) = gl_decide(&fixed_point_equation(a, p, &d)) {
            return Ok(FixpointResult {
                input: a.clone(),
                letter: p.to_string(),
                solution: d,
                equivalence_verdict: verdict,
            });
        }
    }
    Err(FixpointError::NoCertifiedSolution)
}

/// `GL ⊢ (D1 ↔ A(D1)) ∧ (D2 ↔ A(D2)) → (D1 ↔ D2)`.
pub fn check_uniqueness(a: &ModalFormula, p: &str, d1: &ModalFormula, d2: &ModalFormula) -> bool {
    gl_provable(&ModalFormula::implies(
        ModalFormula::and(fixed_point_equation(a, p, d1), fixed_point_equation(a, p, d2)),
        ModalFormula::iff(d1.clone(), d2.clone()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_modal;

    fn m(s: &str) -> ModalFormula {
        parse_modal(s).unwrap()
    }

    #[test]
    fn goedel_and_henkin() {
        let g = compute_fixed_point(&m("~[]p"), "p").unwrap();
        assert!(gl_provable(&ModalFormula::iff(g.solution.clone(), m("~[]#F"))));
        let h = compute_fixed_point(&m("[]p"), "p").unwrap();
        assert!(gl_provable(&ModalFormula::iff(h.solution, ModalFormula::Top)));
        assert_eq!(compute_fixed_point(&ModalFormula::Top, "p").unwrap().solution, ModalFormula::Top);
    }

    #[test]
    fn non_modalized_is_rejected() {
        assert_eq!(
            compute_fixed_point(&m("p & []p"), "p"),
            Err(FixpointError::NotModalized("p".into()))
        );
    }

    #[test]
    fn uniqueness_examples() {
        let a = m("~[]p");
        assert!(check_uniqueness(&a, "p", &m("~[]#F"), &m("~[]#F & #T")));
        assert!(check_uniqueness(&a, "p", &m("~[]#F"), &m("#F")));
        assert!(check_uniqueness(&m("[]p"), "p", &m("#T"), &m("[]#T")));
    }

    const CATALOGUE: [&str; 12] = [
        "~[]p",
        "[]p",
        "[]~p",
        "~[]~p",
        "[]p -> []#F",
        "[](p -> #F)",
        "[][]p",
        "~[][]p",
        "[]p & []q",
        "[](p -> q)",
        "[]~p -> []#F",
        "q -> ~[](q -> p)",
    ];

    #[test]
    fn catalogue_is_certified() {
        for text in CATALOGUE {
            let a = m(text);
            let r = compute_fixed_point(&a, "p").unwrap_or_else(|e| panic!("{text}: {e}"));
            assert!(!r.solution.contains_letter("p"), "{text}");
            assert!(r.equivalence_verdict.is_proved(), "{text}");
            assert!(gl_provable(&fixed_point_equation(&a, "p", &r.solution)), "{text}");
        }
    }
}

use crate::syntax::{subformulas_modal, ModalFormula};

use super::prover::gl_provable;

/// `⋀{□B → B : □B a subformula of f}`.
pub fn reflection_hypothesis(f: &ModalFormula) -> ModalFormula {
    ModalFormula::conj(subformulas_modal(f).into_iter().filter_map(|g| match &g {
        ModalFormula::Box(b) => Some(ModalFormula::implies(g.clone(), (**b).clone())),
        _ => None,
    }))
}

/// Membership in GLS, the modal logic of truth in ℕ under the provability
/// reading: `GL ⊢ ⋀{□B → B} → f` over the boxed subformulas of `f`.
pub fn gls_holds(f: &ModalFormula) -> bool {
    gl_provable(&ModalFormula::implies(reflection_hypothesis(f), f.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("formula contains letters: {0}")]
pub struct HasLetters(pub String);

/// Truth of a letterless formula, reading `□B` as `GL ⊢ B`.
pub fn letterless_truth(f: &ModalFormula) -> Result<bool, HasLetters> {
    if !f.is_letterless() {
        let names: Vec<String> = f.letters().into_iter().collect();
        return Err(HasLetters(names.join(", ")));
    }
    Ok(eval(f))
}

fn eval(f: &ModalFormula) -> bool {
    use ModalFormula as M;
    match f {
        M::Bottom => false,
        M::Top => true,
        M::Letter(_) => unreachable!("letterless"),
        M::Not(x) => !eval(x),
        M::And(a, b) => eval(a) && eval(b),
        M::Or(a, b) => eval(a) || eval(b),
        M::Implies(a, b) => !eval(a) || eval(b),
        M::Iff(a, b) => eval(a) == eval(b),
        M::Box(x) => gl_provable(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_modal;

    fn m(s: &str) -> ModalFormula {
        parse_modal(s).unwrap()
    }

    #[test]
    fn gls_examples() {
        assert!(gls_holds(&m("~[]#F")));
        assert!(!gls_holds(&m("[]#F")));
        assert!(gls_holds(&m("[]([]p -> p) -> []p")));
        assert!(gls_holds(&m("[]p -> p")));
    }

    #[test]
    fn letterless_examples() {
        assert!(!letterless_truth(&m("#F")).unwrap());
        assert!(letterless_truth(&m("~[]#F")).unwrap());
        assert!(!letterless_truth(&m("[]~[]#F")).unwrap());
        assert!(letterless_truth(&m("[]p")).is_err());
    }
}

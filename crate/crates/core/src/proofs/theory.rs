use crate::coding::godel_term;
use crate::syntax::{parse_arith, ArithFormula, SyntaxError, Term};

/// Robinson's Q, in the order Q1–Q7.
pub const Q_AXIOMS: [&str; 7] = [
    "A x. ~(S(x) = 0)",
    "A x. A y. S(x) = S(y) -> x = y",
    "A x. x = 0 | (E y. x = S(y))",
    "A x. x + 0 = x",
    "A x. A y. x + S(y) = S(x + y)",
    "A x. x * 0 = 0",
    "A x. A y. x * S(y) = x * y + x",
];

/// An arithmetic theory: Q, optionally with induction instances for the
/// listed formulas, plus extra axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheorySpec {
    pub name: String,
    pub induction: bool,
    /// Formulas with the single free variable 0 whose induction instances
    /// are available.
    pub induction_formulas: Vec<ArithFormula>,
    pub extra_axioms: Vec<ArithFormula>,
}

fn q_axioms() -> Vec<ArithFormula> {
    Q_AXIOMS
        .iter()
        .map(|s| parse_arith(s).expect("Q axioms parse"))
        .collect()
}

/// `φ(0) ∧ ∀x(φ(x) → φ(S x)) → ∀x φ(x)`.
pub fn induction_instance(phi: &ArithFormula) -> Result<ArithFormula, SyntaxError> {
    let free = phi.free_vars();
    if free.iter().any(|&i| i != 0) {
        return Err(SyntaxError::NotUnary { free: free.len() });
    }
    let base = phi.instantiate(&Term::Zero);
    let next = phi.replace_var(0, &Term::succ(Term::Var(0)));
    let step = ArithFormula::forall(ArithFormula::implies(phi.clone(), next));
    Ok(ArithFormula::implies(
        ArithFormula::and(base, step),
        ArithFormula::forall(phi.clone()),
    ))
}

impl TheorySpec {
    pub fn q() -> Self {
        TheorySpec {
            name: "Q".into(),
            induction: false,
            induction_formulas: Vec::new(),
            extra_axioms: Vec::new(),
        }
    }

    pub fn pa(induction_formulas: Vec<ArithFormula>) -> Self {
        TheorySpec {
            name: "PA".into(),
            induction: true,
            induction_formulas,
            extra_axioms: Vec::new(),
        }
    }

    /// `PA + Pr[PA](#(0 = S(0)))`, the arithmetic side of the theory that
    /// asserts the inconsistency of PA.
    pub fn pa_plus_not_con() -> Self {
        let falsum = parse_arith("0 = S(0)").expect("parses");
        TheorySpec {
            name: "S".into(),
            induction: true,
            induction_formulas: Vec::new(),
            extra_axioms: vec![ArithFormula::pr("PA", godel_term(&falsum))],
        }
    }

    /// Looks up a built-in theory by its tag.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "Q" => Some(Self::q()),
            "PA" => Some(Self::pa(Vec::new())),
            "S" => Some(Self::pa_plus_not_con()),
            _ => None,
        }
    }

    /// All axioms, indexed as referenced by proof rules: Q1–Q7 first, then
    /// induction instances, then the extra axioms.
    pub fn axioms(&self) -> Vec<ArithFormula> {
        let mut out = q_axioms();
        if self.induction {
            out.extend(
                self.induction_formulas
                    .iter()
                    .filter_map(|phi| induction_instance(phi).ok()),
            );
        }
        out.extend(self.extra_axioms.iter().cloned());
        out
    }
}

/// Strips the leading universal quantifiers of an axiom.
pub(crate) fn split_universal(f: &ArithFormula) -> (usize, &ArithFormula) {
    let mut k = 0;
    let mut body = f;
    while let ArithFormula::Forall(inner) = body {
        k += 1;
        body = inner;
    }
    (k, body)
}

/// Instantiates the first `terms.len()` leading universals, outermost
/// first.
pub fn instantiate_axiom(axiom: &ArithFormula, terms: &[Term]) -> Option<ArithFormula> {
    let mut f = axiom.clone();
    for t in terms {
        match f {
            ArithFormula::Forall(body) => f = body.instantiate(t),
            _ => return None,
        }
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::render_arith;

    #[test]
    fn q_has_seven_sentences() {
        let axioms = TheorySpec::q().axioms();
        assert_eq!(axioms.len(), 7);
        assert!(axioms.iter().all(|a| a.is_sentence()));
    }

    #[test]
    fn induction_instance_shape() {
        let phi = crate::syntax::parse_arith_open("x + 0 = x", &["x"]).unwrap();
        let inst = induction_instance(&phi).unwrap();
        assert_eq!(
            render_arith(&inst),
            "0 + 0 = 0 & (A x. x + 0 = x -> S(x) + 0 = S(x)) -> (A x. x + 0 = x)"
        );
        assert_eq!(TheorySpec::pa(vec![phi]).axioms().len(), 8);
    }

    #[test]
    fn axiom_instantiation_is_outermost_first() {
        let q5 = &TheorySpec::q().axioms()[4];
        let inst = instantiate_axiom(q5, &[Term::Zero, Term::unary(1)]).unwrap();
        assert_eq!(render_arith(&inst), "0 + S(S(0)) = S(0 + S(0))");
    }
}

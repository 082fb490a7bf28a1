use std::fmt;

use super::ArithFormula;

/// Surface arithmetical-hierarchy class of a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SyntacticClass {
    Delta0,
    Sigma1,
    Pi1,
    Sigma2,
    Pi2,
    Other,
}

impl SyntacticClass {
    /// The class of the negation.
    pub fn dual(self) -> Self {
        use SyntacticClass::*;
        match self {
            Delta0 => Delta0,
            Sigma1 => Pi1,
            Pi1 => Sigma1,
            Sigma2 => Pi2,
            Pi2 => Sigma2,
            Other => Other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SyntacticClass::Delta0 => "Delta0",
            SyntacticClass::Sigma1 => "Sigma1",
            SyntacticClass::Pi1 => "Pi1",
            SyntacticClass::Sigma2 => "Sigma2",
            SyntacticClass::Pi2 => "Pi2",
            SyntacticClass::Other => "Other",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "Delta0" | "D0" | "Δ0" => SyntacticClass::Delta0,
            "Sigma1" | "S1" | "Σ1" => SyntacticClass::Sigma1,
            "Pi1" | "P1" | "Π1" => SyntacticClass::Pi1,
            "Sigma2" | "S2" | "Σ2" => SyntacticClass::Sigma2,
            "Pi2" | "P2" | "Π2" => SyntacticClass::Pi2,
            "Other" => SyntacticClass::Other,
            _ => return None,
        })
    }
}

impl fmt::Display for SyntacticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True when every quantifier is bounded and no `Pr` atom occurs.
pub fn is_delta0(f: &ArithFormula) -> bool {
    use ArithFormula as F;
    match f {
        F::Eq(..) => true,
        F::Pr(..) | F::Forall(_) | F::Exists(_) => false,
        F::Not(x) => is_delta0(x),
        F::BoundedForall(_, x) | F::BoundedExists(_, x) => is_delta0(x),
        F::And(a, b) | F::Or(a, b) | F::Implies(a, b) | F::Iff(a, b) => {
            is_delta0(a) && is_delta0(b)
        }
    }
}

/// Strict surface classification, without prenexing.
///
/// A block of unbounded `∃` over a Δ0 matrix is Σ1 and over a Π1 matrix is
/// Σ2; dually for `∀`. `Pr[T](t)` counts as Σ1 and a negation flips the
/// class of its operand. Anything else is `Other`.
pub fn classify_arith(f: &ArithFormula) -> SyntacticClass {
    use ArithFormula as F;
    if is_delta0(f) {
        return SyntacticClass::Delta0;
    }
    match f {
        F::Pr(..) => SyntacticClass::Sigma1,
        F::Not(x) => classify_arith(x).dual(),
        F::Exists(_) => {
            let mut m = f;
            while let F::Exists(body) = m {
                m = body;
            }
            match classify_arith(m) {
                SyntacticClass::Delta0 => SyntacticClass::Sigma1,
                SyntacticClass::Pi1 => SyntacticClass::Sigma2,
                _ => SyntacticClass::Other,
            }
        }
        F::Forall(_) => {
            let mut m = f;
            while let F::Forall(body) = m {
                m = body;
            }
            match classify_arith(m) {
                SyntacticClass::Delta0 => SyntacticClass::Pi1,
                SyntacticClass::Sigma1 => SyntacticClass::Pi2,
                _ => SyntacticClass::Other,
            }
        }
        _ => SyntacticClass::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_arith, parse_arith_open};
    use super::*;
    use SyntacticClass::*;

    fn class(text: &str) -> SyntacticClass {
        classify_arith(&parse_arith(text).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(class("0=0"), Delta0);
        assert_eq!(class("A x. ~Pr[T](x)"), Other);
        assert_eq!(class("~Pr[T](S(0))"), Pi1);
        assert_eq!(class("E x. x = S(0)"), Sigma1);
    }

    #[test]
    fn blocks_and_alternations() {
        assert_eq!(class("A x. A y. x + y = y + x"), Pi1);
        assert_eq!(class("E x. A y. x + y = y"), Sigma2);
        assert_eq!(class("A x. E y. x = S(y) | x = 0"), Pi2);
        assert_eq!(class("E x < S(0). x = 0"), Delta0);
        assert_eq!(class("~E x. x = 0"), Pi1);
        assert_eq!(class("(E x. x = 0) & 0 = 0"), Other);
        // `<=` is an unbounded existential
        assert_eq!(class("0 <= S(0)"), Sigma1);
        assert_eq!(classify_arith(&parse_arith_open("x = 0", &["x"]).unwrap()), Delta0);
    }
}

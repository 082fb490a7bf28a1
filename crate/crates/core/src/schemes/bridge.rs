//! Reading arithmetic sentences with `Pr` atoms as letterless modal
//! formulas.
//!
//! `Pr[T](t)` becomes `[T]φ` for the sentence `φ` named by `t`. A sentence
//! that names itself (directly or through a chain of `Pr` atoms) is
//! replaced by a letter and solved with [`compute_fixed_point`]. Parts
//! without `Pr` are evaluated in ℕ and become `⊤` or `⊥`.

use crate::fixpoint::{compute_fixed_point, FixpointError};
use crate::proofs::eval::denoted_sentence;
use crate::proofs::{eval_sentence, EvalOptions, Truth};
use crate::syntax::{render_arith_with, ArithFormula, ModalFormula, RenderOptions};
use crate::theoryctx::{pr_in, TheoryContext};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BridgeError {
    #[error("could not decide `{0}` in N")]
    Undetermined(String),
    #[error("Pr atom under a quantifier")]
    QuantifiedPr,
    #[error("no modal context for theory `{0}`")]
    UnknownTheory(String),
    #[error(transparent)]
    Fixpoint(#[from] FixpointError),
}

struct Bridge<'a> {
    opts: &'a EvalOptions,
    stack: Vec<ArithFormula>,
}

fn letter(i: usize) -> String {
    format!("s{i}")
}

impl Bridge<'_> {
    fn sentence(&mut self, s: &ArithFormula) -> Result<ModalFormula, BridgeError> {
        if let Some(i) = self.stack.iter().position(|t| t == s) {
            return Ok(ModalFormula::letter(letter(i)));
        }
        let i = self.stack.len();
        self.stack.push(s.clone());
        let body = self.part(s);
        self.stack.pop();
        let body = body?;
        if body.contains_letter(&letter(i)) {
            Ok(compute_fixed_point(&body, &letter(i))?.solution)
        } else {
            Ok(body)
        }
    }

    fn part(&mut self, f: &ArithFormula) -> Result<ModalFormula, BridgeError> {
        use ArithFormula as F;
        use ModalFormula as M;
        if !f.contains_pr() {
            return match eval_sentence(f, self.opts) {
                Ok(Truth::True) => Ok(M::Top),
                Ok(Truth::False) => Ok(M::Bottom),
                _ => Err(BridgeError::Undetermined(render_arith_with(
                    f,
                    RenderOptions { max_numeral_bits: Some(64) },
                ))),
            };
        }
        Ok(match f {
            F::Pr(tag, t) => {
                let ctx = TheoryContext::builtin(tag).ok_or_else(|| BridgeError::UnknownTheory(tag.clone()))?;
                match denoted_sentence(t) {
                    Some(s) => pr_in(&ctx, &self.sentence(&s)?),
                    None => M::Bottom,
                }
            }
            F::Not(x) => M::not(self.part(x)?),
            F::And(a, b) => M::and(self.part(a)?, self.part(b)?),
            F::Or(a, b) => M::or(self.part(a)?, self.part(b)?),
            F::Implies(a, b) => M::implies(self.part(a)?, self.part(b)?),
            F::Iff(a, b) => M::iff(self.part(a)?, self.part(b)?),
            _ => return Err(BridgeError::QuantifiedPr),
        })
    }
}

/// The modal reading of a sentence; letterless on success.
pub fn arith_to_modal(s: &ArithFormula, opts: &EvalOptions) -> Result<ModalFormula, BridgeError> {
    Bridge { opts, stack: Vec::new() }.sentence(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::fixed_point_literal;
    use crate::gl::gl_provable;
    use crate::syntax::{parse_arith, parse_arith_open, parse_modal};

    #[test]
    fn pr_free_sentences_become_constants() {
        let opts = EvalOptions::default();
        assert_eq!(arith_to_modal(&parse_arith("S(0) + S(0) = S(S(0))").unwrap(), &opts).unwrap(), ModalFormula::Top);
        assert_eq!(arith_to_modal(&parse_arith("0 = S(0)").unwrap(), &opts).unwrap(), ModalFormula::Bottom);
    }

    #[test]
    fn goedel_sentence_reads_as_consistency() {
        let (g, _) = fixed_point_literal(&parse_arith_open("~Pr[PA](x)", &["x"]).unwrap()).unwrap();
        let m = arith_to_modal(&g, &EvalOptions::default()).unwrap();
        assert!(m.is_letterless());
        assert!(gl_provable(&ModalFormula::iff(m, parse_modal("~[]#F").unwrap())));
    }

    #[test]
    fn henkin_sentence_reads_as_true() {
        let (h, _) = fixed_point_literal(&parse_arith_open("Pr[PA](x)", &["x"]).unwrap()).unwrap();
        let m = arith_to_modal(&h, &EvalOptions::default()).unwrap();
        assert!(gl_provable(&m));
    }

    #[test]
    fn quantified_pr_is_rejected() {
        let f = parse_arith("E x. Pr[PA](x)").unwrap();
        assert_eq!(arith_to_modal(&f, &EvalOptions::default()), Err(BridgeError::QuantifiedPr));
    }
}

//! Sequent calculus over Q and PA, bounded proof search, and truth in ℕ.

pub mod eval;
mod search;
mod sequent;
mod theory;

pub use eval::{
    eval_closed, eval_delta0, eval_pi1, eval_sentence, eval_sigma1, eval_term, EvalError,
    EvalOptions, EvalVerdict, Truth,
};
pub use search::{match_axiom, prove_bounded, prove_with, SearchLimits, SearchOutcome, DEFAULT_NODE_BUDGET};
pub use sequent::{
    check_proof, check_proof_detailed, expected_premises, proves, rewrite_related, unfold_bounded,
    Proof, ProofError, ProofNode, Rule, Sequent,
};
pub use theory::{induction_instance, instantiate_axiom, TheorySpec, Q_AXIOMS};

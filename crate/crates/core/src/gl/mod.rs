//! Provability logic: GL decision with derivations and countermodels,
//! Kripke semantics, and truth in ℕ via GLS.

mod enumerate;
mod kripke;
mod prover;
mod truth;

pub use enumerate::enumerate_countermodel;
pub use kripke::{kripke_eval, KripkeModel};
pub use prover::{
    check_gl_derivation, gl_decide, gl_provable, try_gl_decide, FuelExhausted, GLVerdict, GlDerivation,
    GlRule, GlSequent, DEFAULT_FUEL,
};
pub use truth::{gls_holds, letterless_truth, reflection_hypothesis, HasLetters};

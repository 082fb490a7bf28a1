//! A workbench for self-referential sentences of arithmetic.
//!
//! The crate builds Gödel-style fixed points with checkable certificates,
//! decides the provability logics GL and GLS, and checks concrete instances
//! of the eight truth/provability readings of the inference from
//! `A ↔ F(#A)` and `F(#A)` to `A`.
//!
//! Module map:
//!
//! * [`syntax`]: terms, arithmetic and modal formulas, parsing, printing.
//! * [`coding`]: prime-power Gödel numbering and numerals.
//! * [`diagonal`]: literal fixed points `A = F(diag(#θ))` with certificates.
//! * [`proofs`]: sequent calculus over Q/PA, proof search and truth in ℕ.
//! * [`gl`]: the GL decision procedure, Kripke models and GLS.
//! * [`fixpoint`]: explicit modal fixed points.
//! * [`theoryctx`]: theories `PA + X` rendered modally.
//! * [`schemes`]: the argument schemes and the built-in suites.

pub mod coding;
pub mod diagonal;
pub mod fixpoint;
pub mod gl;
pub mod proofs;
pub mod schemes;
pub mod syntax;
pub mod theoryctx;

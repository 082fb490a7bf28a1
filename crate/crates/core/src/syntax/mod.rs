//! Abstract syntax for first-order arithmetic (with `diag` and `Pr[T]`) and
//! for propositional provability logic.

mod arith;
mod classify;
mod modal;
mod parse;
mod render;

pub use arith::{free_vars, substitute, ArithFormula, Term};
pub use classify::{classify_arith, is_delta0, SyntacticClass};
pub use modal::{subformulas_modal, ModalFormula};
pub use parse::{parse_arith, parse_arith_open, parse_modal, parse_term};
pub use render::{
    default_free_names, render_arith, render_arith_open, render_arith_open_with, render_arith_with, render_modal,
    render_term, render_term_with, RenderOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbound variable `{name}` at byte {pos}")]
    UnboundVariable { name: String, pos: usize },
    #[error("expected exactly one free variable (index 0), found {free}")]
    NotUnary { free: usize },
    #[error("the substituted term must be closed")]
    OpenTerm,
}

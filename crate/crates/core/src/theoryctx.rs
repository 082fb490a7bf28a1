//! Theories `T = PA + X` seen through GL: `[T]A := □(X → A)`.
//!
//! Verdicts on letterless input transfer to arithmetic; anything with
//! letters is marked schematic, and a schematic refutation only means the
//! formula is not forced by GL.

use std::collections::BTreeSet;
use std::fmt;

use crate::gl::{gl_decide, gls_holds, GLVerdict};
use crate::syntax::{parse_modal, ModalFormula, SyntaxError};

/// Declared properties. Nothing here is checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ContextFlags {
    pub consistent: bool,
    pub omega_consistent: bool,
    pub sound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryContext {
    pub tag: String,
    /// The extra axiom `X`; `⊤` for PA.
    pub extension: ModalFormula,
    pub flags: ContextFlags,
    /// Letters declared to stand for true Σ1 sentences. Each contributes
    /// `q ∧ □q` to the hypotheses of every prover call.
    pub sigma1_true: BTreeSet<String>,
}

impl TheoryContext {
    pub fn new(tag: impl Into<String>, extension: ModalFormula, flags: ContextFlags) -> Self {
        TheoryContext { tag: tag.into(), extension, flags, sigma1_true: BTreeSet::new() }
    }

    pub fn pa() -> Self {
        let all = ContextFlags { consistent: true, omega_consistent: true, sound: true };
        Self::new("PA", ModalFormula::Top, all)
    }

    /// `S = PA + ¬Con(PA)`: consistent, but neither ω-consistent nor sound.
    pub fn s() -> Self {
        let flags = ContextFlags { consistent: true, ..Default::default() };
        Self::new("S", ModalFormula::boxed(ModalFormula::Bottom), flags)
    }

    /// `PA + ⊥`.
    pub fn inconsistent() -> Self {
        Self::new("INC", ModalFormula::Bottom, ContextFlags::default())
    }

    pub fn builtin(tag: &str) -> Option<Self> {
        match tag {
            "PA" => Some(Self::pa()),
            "S" => Some(Self::s()),
            "INC" => Some(Self::inconsistent()),
            _ => None,
        }
    }

    pub fn with_sigma1_true(mut self, letter: impl Into<String>) -> Self {
        self.sigma1_true.insert(letter.into());
        self
    }

    pub fn is_letterless(&self) -> bool {
        self.extension.is_letterless()
    }

    /// `⋀ (q ∧ □q)` over the declared Σ1 letters.
    fn hypothesis(&self) -> ModalFormula {
        ModalFormula::conj(self.sigma1_true.iter().map(|q| {
            let q = ModalFormula::letter(q.clone());
            ModalFormula::and(q.clone(), ModalFormula::boxed(q))
        }))
    }

    fn under_hypothesis(&self, f: ModalFormula) -> ModalFormula {
        if self.sigma1_true.is_empty() {
            f
        } else {
            ModalFormula::implies(self.hypothesis(), f)
        }
    }
}

impl fmt::Display for TheoryContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "context {} extends PA with {}", self.tag, crate::syntax::render_modal(&self.extension))?;
        let mut names = Vec::new();
        if self.flags.consistent {
            names.push("consistent");
        }
        if self.flags.omega_consistent {
            names.push("omega-consistent");
        }
        if self.flags.sound {
            names.push("sound");
        }
        if !names.is_empty() {
            write!(f, " [flags: {}]", names.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Faithfulness {
    Letterless,
    Schematic,
}

impl Faithfulness {
    fn of(f: &ModalFormula) -> Self {
        if f.is_letterless() {
            Faithfulness::Letterless
        } else {
            Faithfulness::Schematic
        }
    }

    pub fn is_faithful(self) -> bool {
        self == Faithfulness::Letterless
    }
}

impl fmt::Display for Faithfulness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Faithfulness::Letterless => "letterless",
            Faithfulness::Schematic => "schematic",
        })
    }
}

/// `□(X → a)`.
pub fn pr_in(ctx: &TheoryContext, a: &ModalFormula) -> ModalFormula {
    ModalFormula::boxed(ModalFormula::implies(ctx.extension.clone(), a.clone()))
}

/// `¬[T]⊥`.
pub fn con_of(ctx: &TheoryContext) -> ModalFormula {
    ModalFormula::not(pr_in(ctx, &ModalFormula::Bottom))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvabilityVerdict {
    pub verdict: GLVerdict,
    pub faithfulness: Faithfulness,
}

impl ProvabilityVerdict {
    pub fn is_proved(&self) -> bool {
        self.verdict.is_proved()
    }

    /// "unprovable" only when faithful; otherwise "not forced".
    pub fn describe(&self) -> &'static str {
        match (self.verdict.is_proved(), self.faithfulness) {
            (true, _) => "provable",
            (false, Faithfulness::Letterless) => "unprovable",
            (false, Faithfulness::Schematic) => "not forced",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruthVerdict {
    pub holds: bool,
    pub faithfulness: Faithfulness,
}

/// `T ⊢ a`, decided as `GL ⊢ X → a`.
pub fn provable_in(ctx: &TheoryContext, a: &ModalFormula) -> ProvabilityVerdict {
    let target = ModalFormula::implies(ctx.extension.clone(), a.clone());
    let faithfulness = Faithfulness::of(&target);
    ProvabilityVerdict { verdict: gl_decide(&ctx.under_hypothesis(target)), faithfulness }
}

/// `ℕ ⊨ a`, decided in GLS.
pub fn true_in_n(ctx: &TheoryContext, a: &ModalFormula) -> TruthVerdict {
    TruthVerdict { holds: gls_holds(&ctx.under_hypothesis(a.clone())), faithfulness: Faithfulness::of(a) }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContextParseError {
    #[error("expected `context <tag> extends PA with <formula> [flags: ...]`")]
    Shape,
    #[error("unknown flag `{0}`")]
    Flag(String),
    #[error(transparent)]
    Formula(#[from] SyntaxError),
}

/// Parses `context <tag> extends PA with <formula> [flags: a, b]`; the
/// flags part is optional.
pub fn parse_context_line(line: &str) -> Result<TheoryContext, ContextParseError> {
    let rest = line.trim().strip_prefix("context ").ok_or(ContextParseError::Shape)?;
    let (tag, rest) = rest.trim_start().split_once(char::is_whitespace).ok_or(ContextParseError::Shape)?;
    let rest = rest.trim_start().strip_prefix("extends PA with ").ok_or(ContextParseError::Shape)?;
    let (formula, flags_text) = match rest.find("flags:") {
        Some(i) => {
            let head = rest[..i].trim_end();
            let head = head.strip_suffix('[').unwrap_or(head);
            let tail = rest[i + "flags:".len()..].trim();
            (head, tail.strip_suffix(']').unwrap_or(tail))
        }
        None => (rest, ""),
    };
    let mut flags = ContextFlags::default();
    for name in flags_text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match name {
            "consistent" => flags.consistent = true,
            "omega-consistent" => flags.omega_consistent = true,
            "sound" => flags.sound = true,
            other => return Err(ContextParseError::Flag(other.to_string())),
        }
    }
    let extension = parse_modal(formula.trim())?;
    Ok(TheoryContext::new(tag, extension, flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::gl_provable;

    fn m(s: &str) -> ModalFormula {
        parse_modal(s).unwrap()
    }

    #[test]
    fn pr_and_con_shapes() {
        let pa = TheoryContext::pa();
        let s = TheoryContext::s();
        assert_eq!(pr_in(&s, &ModalFormula::Bottom), m("[]([]#F -> #F)"));
        assert!(gl_provable(&ModalFormula::iff(pr_in(&pa, &ModalFormula::Bottom), m("[]#F"))));
        assert!(gl_provable(&ModalFormula::iff(con_of(&s), m("~[]~[]#F"))));
        assert!(gl_provable(&ModalFormula::iff(con_of(&TheoryContext::inconsistent()), m("~[]#T"))));
    }

    #[test]
    fn provability_examples() {
        let pa = TheoryContext::pa();
        let s = TheoryContext::s();
        assert!(provable_in(&s, &ModalFormula::not(con_of(&s))).is_proved());
        let g = provable_in(&pa, &m("~[]#F"));
        assert!(!g.is_proved());
        assert_eq!(g.describe(), "unprovable");
        assert!(provable_in(&s, &ModalFormula::Top).is_proved());
        assert_eq!(provable_in(&pa, &m("p")).describe(), "not forced");
    }

    #[test]
    fn goedel_two_in_each_consistent_context() {
        for ctx in [TheoryContext::pa(), TheoryContext::s()] {
            let v = provable_in(&ctx, &con_of(&ctx));
            assert!(!v.is_proved() && v.faithfulness.is_faithful(), "{}", ctx.tag);
        }
    }

    #[test]
    fn truth_examples() {
        let pa = TheoryContext::pa();
        let s = TheoryContext::s();
        assert!(true_in_n(&pa, &m("~[]#F")).holds);
        assert!(true_in_n(&s, &con_of(&s)).holds);
        assert!(!true_in_n(&pa, &con_of(&TheoryContext::inconsistent())).holds);
    }

    #[test]
    fn sigma1_letters_are_provable() {
        let ctx = TheoryContext::pa().with_sigma1_true("q");
        assert!(provable_in(&ctx, &m("q")).is_proved());
        assert!(!provable_in(&TheoryContext::pa(), &m("q")).is_proved());
    }

    #[test]
    fn context_lines() {
        let c = parse_context_line("context S extends PA with []#F [flags: consistent]").unwrap();
        assert_eq!(c, TheoryContext::s());
        let pa = parse_context_line(&TheoryContext::pa().to_string()).unwrap();
        assert_eq!(pa, TheoryContext::pa());
        assert_eq!(parse_context_line("context T extends PA with #T").unwrap().flags, ContextFlags::default());
        assert!(matches!(
            parse_context_line("context T extends PA with #T flags: honest"),
            Err(ContextParseError::Flag(_))
        ));
        assert!(parse_context_line("context T extends Q with #T").is_err());
    }
}

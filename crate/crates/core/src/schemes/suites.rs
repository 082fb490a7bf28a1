//! Built-in batteries over theory contexts. Every check records what was
//! expected and what the oracle answered.

use std::fmt;

use crate::fixpoint::{check_uniqueness, compute_fixed_point};
use crate::gl::{gl_decide, gl_provable};
use crate::syntax::{parse_modal, render_modal, ModalFormula};
use crate::theoryctx::{con_of, pr_in, provable_in, true_in_n, TheoryContext};

use super::SchemeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: bool,
    pub observed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: bool, observed: bool) -> Self {
        Check { name: name.into(), expected, observed }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub title: String,
    /// Free-form lines printed before the checks.
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(title: impl Into<String>) -> Self {
        SuiteReport { title: title.into(), notes: Vec::new(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, expected: bool, observed: bool) {
        self.checks.push(Check::new(name, expected, observed));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for c in &self.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {} (expected {}, got {})", c.name, c.expected, c.observed)?;
        }
        Ok(())
    }
}

fn m(s: &str) -> ModalFormula {
    parse_modal(s).expect("built-in formula parses")
}

/// Derivations inside `S = PA + □⊥`: a true Σ1 sentence `σ` (modelled as
/// `⊤`, and once more as a declared Σ1 letter), `σ' = Con(S) ∧ σ`, and the
/// false Π1 sentence `ρ = ¬□⊤`.
pub fn reflection_battery() -> SuiteReport {
    let s = TheoryContext::s();
    let x = s.extension.clone();
    let mut r = SuiteReport::new("reflection battery for S = PA + []#F");
    let sigma_p = ModalFormula::and(con_of(&s), ModalFormula::Top);
    let rho = m("~[]#T");
    let not_pr = |a: &ModalFormula| ModalFormula::not(pr_in(&s, a));
    r.notes.push(format!("sigma' = {}", render_modal(&sigma_p)));
    r.notes.push(format!("rho = {}", render_modal(&rho)));

    let forward = gl_decide(&ModalFormula::implies(sigma_p.clone(), not_pr(&sigma_p)));
    r.check("sigma' -> ~Pr_S(sigma')", true, forward.is_proved());
    let back = gl_decide(&ModalFormula::implies(not_pr(&sigma_p), sigma_p.clone()));
    r.check("~Pr_S(sigma') -> sigma'", true, back.is_proved());
    let lob_used = forward.derivation().is_some_and(|d| d.gl_steps() > 0);
    r.check("forward direction uses the GL rule", true, lob_used);
    r.check("S |- ~Con(S)", true, gl_decide(&ModalFormula::implies(x.clone(), ModalFormula::not(con_of(&s)))).is_proved());
    r.check(
        "S |- rho <-> ~Pr_S(rho)",
        true,
        gl_decide(&ModalFormula::implies(x.clone(), ModalFormula::iff(rho.clone(), not_pr(&rho)))).is_proved(),
    );
    r.check("sigma' true", true, true_in_n(&s, &sigma_p).holds);
    r.check("rho true", false, true_in_n(&s, &rho).holds);
    r.check(
        "S |- sigma' <-> rho",
        true,
        gl_decide(&ModalFormula::implies(x, ModalFormula::iff(sigma_p, rho))).is_proved(),
    );

    let sq = s.clone().with_sigma1_true("q");
    let sigma_q = ModalFormula::and(con_of(&sq), ModalFormula::letter("q"));
    let eq = ModalFormula::iff(sigma_q.clone(), ModalFormula::not(pr_in(&sq, &sigma_q)));
    r.check("S |- sigma'_q <-> ~Pr_S(sigma'_q) for a true Sigma1 letter q", true, provable_in(&sq, &eq).is_proved());
    r
}

fn letterless(ctx: &TheoryContext) -> Result<(), SchemeError> {
    if ctx.is_letterless() {
        Ok(())
    } else {
        Err(SchemeError::SchematicContext(ctx.tag.clone()))
    }
}

/// The Gödel sentence of `T` in the strong sense: provably and truly
/// equivalent to its own unprovability. Checks that it is true exactly
/// when `T` is consistent.
pub fn godel_sentence_suite(ctx: &TheoryContext) -> Result<SuiteReport, SchemeError> {
    letterless(ctx)?;
    let mut r = SuiteReport::new(format!("goedel sentence suite for {}", ctx.tag));
    let a = ModalFormula::not(pr_in(ctx, &ModalFormula::letter("p")));
    let con = con_of(ctx);
    let d = match compute_fixed_point(&a, "p") {
        Ok(res) => res.solution,
        Err(e) => {
            r.notes.push(format!("no fixed point: {e}"));
            r.check("fixed point found", true, false);
            return Ok(r);
        }
    };
    r.notes.push(format!("D = {}", render_modal(&d)));
    let eq = ModalFormula::iff(d.clone(), ModalFormula::not(pr_in(ctx, &d)));
    r.check("T |- D <-> ~Pr_T(D)", true, gl_provable(&eq));
    r.check("N |= D <-> ~Pr_T(D)", true, true_in_n(ctx, &eq).holds);
    let d_true = true_in_n(ctx, &d).holds;
    let con_true = true_in_n(ctx, &con).holds;
    r.notes.push(format!("D is {}, Con(T) is {}", truth_word(d_true), truth_word(con_true)));
    r.check("D true iff Con(T) true", true, d_true == con_true);
    r.check("D true", ctx.flags.consistent, d_true);
    r.check("GL |- D <-> Con(T)", true, gl_provable(&ModalFormula::iff(d.clone(), con.clone())));
    r.check("unique up to equivalence (D vs Con(T))", true, check_uniqueness(&a, "p", &d, &con));
    Ok(r)
}

fn truth_word(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Letterless Π1-shaped sentences `¬□B`.
fn pi1_catalogue() -> Vec<ModalFormula> {
    ["#F", "#T", "[]#F", "~[]#F", "[][]#F", "~[][]#F", "[]~[]#F", "~[]~[]#F", "[]#F | ~[][]#F", "[][][]#F"]
        .iter()
        .map(|b| ModalFormula::not(ModalFormula::boxed(m(b))))
        .collect()
}

/// Whether `T + Con(T)` is inconsistent.
pub fn proves_own_inconsistency(ctx: &TheoryContext) -> bool {
    gl_provable(&ModalFormula::implies(
        ModalFormula::and(ctx.extension.clone(), con_of(ctx)),
        ModalFormula::Bottom,
    ))
}

/// Π1 sentences equivalent in `T` to their own unprovability are all true
/// exactly when `T + Con(T)` is consistent.
pub fn pi1_fixedpoint_suite(ctx: &TheoryContext) -> Result<SuiteReport, SchemeError> {
    letterless(ctx)?;
    let mut r = SuiteReport::new(format!("pi1 fixed point suite for {}", ctx.tag));
    let inconsistent = proves_own_inconsistency(ctx);
    r.notes.push(format!("T + Con(T) is {}", if inconsistent { "inconsistent" } else { "consistent" }));
    let fixed = |theta: &ModalFormula| {
        provable_in(ctx, &ModalFormula::iff(theta.clone(), ModalFormula::not(pr_in(ctx, theta)))).is_proved()
    };
    let found: Vec<(ModalFormula, bool)> = pi1_catalogue()
        .into_iter()
        .filter(|t| fixed(t))
        .map(|t| {
            let truth = true_in_n(ctx, &t).holds;
            (t, truth)
        })
        .collect();
    let false_ones: Vec<String> = found.iter().filter(|(_, t)| !t).map(|(f, _)| render_modal(f)).collect();
    r.notes.push(format!("catalogue fixed points: {} ({} false)", found.len(), false_ones.len()));
    if inconsistent {
        let rho = m("~[]#T");
        let eq = ModalFormula::iff(rho.clone(), ModalFormula::not(pr_in(ctx, &rho)));
        r.notes.push(format!("rho = {}", render_modal(&rho)));
        r.check("T |- rho <-> ~Pr_T(rho)", true, gl_provable(&ModalFormula::implies(ctx.extension.clone(), eq)));
        r.check("rho true", false, true_in_n(ctx, &rho).holds);
        r.check("catalogue has a false fixed point", true, !false_ones.is_empty());
    } else {
        r.check("every catalogue fixed point is true", true, false_ones.is_empty());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes() {
        let r = reflection_battery();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn goedel_suites() {
        for ctx in [TheoryContext::pa(), TheoryContext::s(), TheoryContext::inconsistent()] {
            let r = godel_sentence_suite(&ctx).unwrap();
            assert!(r.passed(), "{r}");
        }
        let schematic = TheoryContext::new("L", m("p"), Default::default());
        assert!(godel_sentence_suite(&schematic).is_err());
    }

    #[test]
    fn pi1_suites_branch_on_con() {
        assert!(!proves_own_inconsistency(&TheoryContext::pa()));
        assert!(proves_own_inconsistency(&TheoryContext::s()));
        assert!(proves_own_inconsistency(&TheoryContext::inconsistent()));
        for ctx in [TheoryContext::pa(), TheoryContext::s(), TheoryContext::inconsistent()] {
            let r = pi1_fixedpoint_suite(&ctx).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

//! The eight readings of the argument
//!
//! ```text
//! A ↔ F(#A),  F(#A)  ⟹  A
//! ```
//!
//! where each of the two premises and the conclusion is read either as
//! truth in ℕ or as provability in `T`. Instances are checked position by
//! position; a counterexample needs both premises to hold and the
//! conclusion to fail, all three faithfully.

mod bridge;
mod file;
mod paper;
mod suites;

use std::fmt;

use crate::coding::godel_term;
use crate::gl::GLVerdict;
use crate::proofs::{eval_sentence, prove_bounded, EvalOptions, Proof, SearchOutcome, TheorySpec, Truth};
use crate::syntax::{
    classify_arith, render_arith_open_with, render_arith_with, render_modal, substitute, ArithFormula,
    ModalFormula, RenderOptions, SyntacticClass,
};
use crate::theoryctx::{provable_in, true_in_n, TheoryContext};

pub use bridge::{arith_to_modal, BridgeError};
pub use file::{check_file, parse_instance_file, FileError, InstanceFile, ParsedInstance};
pub use paper::{run_paper_suite, PaperReport};
pub use suites::{godel_sentence_suite, pi1_fixedpoint_suite, reflection_battery, Check, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

/// How a position is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `ℕ ⊨ φ`
    Truth,
    /// `T ⊢ φ`
    Provability,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Truth => "N|=",
            Mode::Provability => "T|-",
        })
    }
}

impl SchemeId {
    pub const ALL: [SchemeId; 8] = [
        SchemeId::I,
        SchemeId::II,
        SchemeId::III,
        SchemeId::IV,
        SchemeId::V,
        SchemeId::VI,
        SchemeId::VII,
        SchemeId::VIII,
    ];

    fn index(self) -> usize {
        self as usize
    }

    /// Mode of `A ↔ F(#A)`: truth for I–IV.
    pub fn premise1_mode(self) -> Mode {
        if self.index() < 4 {
            Mode::Truth
        } else {
            Mode::Provability
        }
    }

    /// Mode of `F(#A)`: truth for I, II, V, VI.
    pub fn premise2_mode(self) -> Mode {
        if self.index() % 4 < 2 {
            Mode::Truth
        } else {
            Mode::Provability
        }
    }

    /// Mode of `A`: truth for the odd-numbered schemes.
    pub fn conclusion_mode(self) -> Mode {
        if self.index().is_multiple_of(2) {
            Mode::Truth
        } else {
            Mode::Provability
        }
    }

    pub fn roman(self) -> &'static str {
        ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"][self.index()]
    }

    pub fn from_roman(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.roman() == s)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceBody {
    Modal {
        a: ModalFormula,
        b: ModalFormula,
    },
    /// `b` is `f` applied to the numeral of `#a`; `f` has the single free
    /// variable `x`.
    Arith {
        a: ArithFormula,
        f: ArithFormula,
        b: ArithFormula,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeInstance {
    pub id: String,
    pub scheme: SchemeId,
    pub context: TheoryContext,
    pub body: InstanceBody,
    /// Declared classes of `A` and `F`, used by [`gate_pi1`].
    pub classes: Option<(SyntacticClass, SyntacticClass)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error("A must be a sentence")]
    NotASentence,
    #[error("F must have exactly the free variable x")]
    NotUnary,
    #[error("the arithmetic backend has no theory named `{0}`")]
    NoArithTheory(String),
    #[error("the Pi1 gate covers schemes III, V and VII, not {0}")]
    GateNotApplicable(SchemeId),
    #[error("context `{0}` has letters; the suite needs a letterless context")]
    SchematicContext(String),
}

impl SchemeInstance {
    pub fn modal(id: impl Into<String>, scheme: SchemeId, context: TheoryContext, a: ModalFormula, b: ModalFormula) -> Self {
        SchemeInstance { id: id.into(), scheme, context, body: InstanceBody::Modal { a, b }, classes: None }
    }

    /// Builds `B = F(#A)`. The code of `A` is computed; `B` itself is
    /// never encoded.
    pub fn arith(
        id: impl Into<String>,
        scheme: SchemeId,
        context: TheoryContext,
        a: ArithFormula,
        f: ArithFormula,
    ) -> Result<Self, SchemeError> {
        if !a.is_sentence() {
            return Err(SchemeError::NotASentence);
        }
        if f.free_vars().into_iter().collect::<Vec<_>>() != [0] {
            return Err(SchemeError::NotUnary);
        }
        if TheorySpec::by_name(&context.tag).is_none() {
            return Err(SchemeError::NoArithTheory(context.tag));
        }
        let b = substitute(&f, &godel_term(&a)).map_err(|_| SchemeError::NotUnary)?;
        Ok(SchemeInstance { id: id.into(), scheme, context, body: InstanceBody::Arith { a, f, b }, classes: None })
    }

    pub fn with_classes(mut self, a: SyntacticClass, f: SyntacticClass) -> Self {
        self.classes = Some((a, f));
        self
    }

    pub fn backend(&self) -> &'static str {
        match self.body {
            InstanceBody::Modal { .. } => "modal",
            InstanceBody::Arith { .. } => "arith",
        }
    }

    fn effective_classes(&self) -> Option<(SyntacticClass, SyntacticClass)> {
        match (&self.classes, &self.body) {
            (Some(c), _) => Some(*c),
            (None, InstanceBody::Arith { a, f, .. }) => Some((classify_arith(a), classify_arith(f))),
            (None, InstanceBody::Modal { .. }) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Direct evaluation in ℕ.
    Evaluation,
    /// GLS on the modal translation.
    Gls,
    /// GL on the modal translation.
    Gl,
    /// A checked sequent proof.
    BoundedProof,
    /// Nothing applied.
    None,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Evaluation => "evaluation",
            Method::Gls => "gls",
            Method::Gl => "gl",
            Method::BoundedProof => "bounded proof",
            Method::None => "none",
        })
    }
}

/// The verdict on one position of a scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgement {
    pub mode: Mode,
    pub status: Status,
    pub faithful: bool,
    pub method: Method,
    pub gl: Option<GLVerdict>,
    pub proof: Option<Proof>,
    pub note: Option<String>,
}

impl Judgement {
    fn new(mode: Mode, status: Status, faithful: bool, method: Method) -> Self {
        Judgement { mode, status, faithful, method, gl: None, proof: None, note: None }
    }

    fn unknown(mode: Mode, note: String) -> Self {
        Judgement { note: Some(note), ..Self::new(mode, Status::Unknown, false, Method::None) }
    }

    fn from_bool(mode: Mode, holds: bool, faithful: bool, method: Method) -> Self {
        Self::new(mode, if holds { Status::Holds } else { Status::Fails }, faithful, method)
    }

    fn faithfully(&self, status: Status) -> bool {
        self.status == status && self.faithful
    }

    fn describe(&self) -> String {
        let mut out = format!("{} ({} via {}", self.status, self.mode, self.method);
        if let Some(GLVerdict::Proved(d)) = &self.gl {
            out.push_str(&format!(", {} GL steps", d.gl_steps()));
        }
        if let Some(GLVerdict::Refuted(m)) = &self.gl {
            out.push_str(&format!(", countermodel with {} worlds", m.worlds));
        }
        if let Some(p) = &self.proof {
            out.push_str(&format!(", {} sequents", p.root.size()));
        }
        if !self.faithful && self.status != Status::Unknown {
            out.push_str(", schematic");
        }
        if let Some(n) = &self.note {
            out.push_str(&format!(", {n}"));
        }
        out.push(')');
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    ValidatedInstance,
    Counterexample,
    Inconclusive,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Classification {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "ValidatedInstance" => Some(Classification::ValidatedInstance),
            "Counterexample" => Some(Classification::Counterexample),
            "Inconclusive" => Some(Classification::Inconclusive),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// The scheme the positions were read by; differs from the instance's
    /// scheme after a gate reduction.
    pub scheme: SchemeId,
    pub premise1: Judgement,
    pub premise2: Judgement,
    pub conclusion: Judgement,
    pub classification: Classification,
}

impl Verdict {
    fn new(scheme: SchemeId, premise1: Judgement, premise2: Judgement, conclusion: Judgement) -> Self {
        let premises = |s| premise1.faithfully(s) && premise2.faithfully(s);
        let classification = if premises(Status::Holds) && conclusion.faithfully(Status::Fails) {
            Classification::Counterexample
        } else if premise1.status == Status::Holds
            && premise2.status == Status::Holds
            && conclusion.status == Status::Holds
        {
            Classification::ValidatedInstance
        } else {
            Classification::Inconclusive
        };
        Verdict { scheme, premise1, premise2, conclusion, classification }
    }

    pub fn faithful(&self) -> bool {
        self.premise1.faithful && self.premise2.faithful && self.conclusion.faithful
    }
}

/// Limits for instance checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub eval: EvalOptions,
    /// Height bound for sequent proofs of `T ⊢` positions.
    pub proof_depth: u32,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { eval: EvalOptions::default(), proof_depth: 12 }
    }
}

fn judge_modal(ctx: &TheoryContext, mode: Mode, f: &ModalFormula) -> Judgement {
    match mode {
        Mode::Truth => {
            let t = true_in_n(ctx, f);
            Judgement::from_bool(mode, t.holds, t.faithfulness.is_faithful(), Method::Gls)
        }
        Mode::Provability => {
            let v = provable_in(ctx, f);
            let mut j = Judgement::from_bool(mode, v.is_proved(), v.faithfulness.is_faithful(), Method::Gl);
            j.gl = Some(v.verdict);
            j
        }
    }
}

fn judge_arith(ctx: &TheoryContext, mode: Mode, f: &ArithFormula, opts: &CheckOptions) -> Judgement {
    if mode == Mode::Truth {
        match eval_sentence(f, &opts.eval) {
            Ok(Truth::True) => return Judgement::from_bool(mode, true, true, Method::Evaluation),
            Ok(Truth::False) => return Judgement::from_bool(mode, false, true, Method::Evaluation),
            _ => {}
        }
    } else if let Some(theory) = TheorySpec::by_name(&ctx.tag) {
        if let SearchOutcome::Proved(p) = prove_bounded(&theory, f, opts.proof_depth) {
            let mut j = Judgement::from_bool(mode, true, true, Method::BoundedProof);
            j.proof = Some(p);
            return j;
        }
    }
    match arith_to_modal(f, &opts.eval) {
        Ok(m) => judge_modal(ctx, mode, &m),
        Err(e) => Judgement::unknown(mode, e.to_string()),
    }
}

fn evaluate_as(inst: &SchemeInstance, scheme: SchemeId, opts: &CheckOptions) -> Verdict {
    let ctx = &inst.context;
    match &inst.body {
        InstanceBody::Modal { a, b } => Verdict::new(
            scheme,
            judge_modal(ctx, scheme.premise1_mode(), &ModalFormula::iff(a.clone(), b.clone())),
            judge_modal(ctx, scheme.premise2_mode(), b),
            judge_modal(ctx, scheme.conclusion_mode(), a),
        ),
        InstanceBody::Arith { a, b, .. } => Verdict::new(
            scheme,
            judge_arith(ctx, scheme.premise1_mode(), &ArithFormula::iff(a.clone(), b.clone()), opts),
            judge_arith(ctx, scheme.premise2_mode(), b, opts),
            judge_arith(ctx, scheme.conclusion_mode(), a, opts),
        ),
    }
}

/// Evaluates each position of the instance in its scheme's mode.
pub fn check_instance(inst: &SchemeInstance) -> Verdict {
    check_instance_with(inst, &CheckOptions::default())
}

pub fn check_instance_with(inst: &SchemeInstance, opts: &CheckOptions) -> Verdict {
    evaluate_as(inst, inst.scheme, opts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateOutcome {
    /// Both classes are Π1 and `T` is flagged ω-consistent: provable Σ2
    /// premises are true, so the instance is read as scheme I.
    Reduced(Verdict),
    Direct(Verdict),
}

impl GateOutcome {
    pub fn verdict(&self) -> &Verdict {
        match self {
            GateOutcome::Reduced(v) | GateOutcome::Direct(v) => v,
        }
    }
}

fn at_most_pi1(c: SyntacticClass) -> bool {
    matches!(c, SyntacticClass::Delta0 | SyntacticClass::Pi1)
}

/// The Π1 gate for schemes III, V and VII.
pub fn gate_pi1(inst: &SchemeInstance) -> Result<GateOutcome, SchemeError> {
    gate_pi1_with(inst, &CheckOptions::default())
}

pub fn gate_pi1_with(inst: &SchemeInstance, opts: &CheckOptions) -> Result<GateOutcome, SchemeError> {
    if !matches!(inst.scheme, SchemeId::III | SchemeId::V | SchemeId::VII) {
        return Err(SchemeError::GateNotApplicable(inst.scheme));
    }
    let open = inst.context.flags.omega_consistent
        && inst.effective_classes().is_some_and(|(a, f)| at_most_pi1(a) && at_most_pi1(f));
    Ok(if open {
        GateOutcome::Reduced(evaluate_as(inst, SchemeId::I, opts))
    } else {
        GateOutcome::Direct(check_instance_with(inst, opts))
    })
}

const SHORT: RenderOptions = RenderOptions { max_numeral_bits: Some(64) };

/// Plain-text block for one checked instance.
pub fn render_verdict(inst: &SchemeInstance, v: &Verdict) -> String {
    let mut out = format!("instance {}\n", inst.id);
    out.push_str(&format!("  scheme={} backend={} context={}\n", inst.scheme, inst.backend(), inst.context.tag));
    match &inst.body {
        InstanceBody::Modal { a, b } => {
            out.push_str(&format!("  A={}\n  B={}\n", render_modal(a), render_modal(b)));
        }
        InstanceBody::Arith { a, f, .. } => {
            out.push_str(&format!("  A={}\n", render_arith_with(a, SHORT)));
            out.push_str(&format!("  F(x)={}\n", render_arith_open_with(f, &["x"], SHORT)));
        }
    }
    if v.scheme != inst.scheme {
        out.push_str(&format!("  gate=reduced to {}\n", v.scheme));
    }
    out.push_str(&format!("  premise1={}\n", v.premise1.describe()));
    out.push_str(&format!("  premise2={}\n", v.premise2.describe()));
    out.push_str(&format!("  conclusion={}\n", v.conclusion.describe()));
    out.push_str(&format!("  classification={}\n", v.classification));
    out.push_str(&format!("  faithful={}\n", if v.faithful() { "yes" } else { "no" }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_modal;
    use crate::theoryctx::pr_in;

    fn m(s: &str) -> ModalFormula {
        parse_modal(s).unwrap()
    }

    #[test]
    fn mode_table() {
        use Mode::{Provability as P, Truth as N};
        let table = [
            (N, N, N),
            (N, N, P),
            (N, P, N),
            (N, P, P),
            (P, N, N),
            (P, N, P),
            (P, P, N),
            (P, P, P),
        ];
        for (id, row) in SchemeId::ALL.into_iter().zip(table) {
            assert_eq!((id.premise1_mode(), id.premise2_mode(), id.conclusion_mode()), row, "{id}");
            assert_eq!(SchemeId::from_roman(id.roman()), Some(id));
        }
    }

    #[test]
    fn trivial_instance_validates() {
        let inst = SchemeInstance::modal("t", SchemeId::I, TheoryContext::pa(), ModalFormula::Top, ModalFormula::Top);
        let v = check_instance(&inst);
        assert_eq!(v.classification, Classification::ValidatedInstance);
        assert!(v.faithful());
    }

    #[test]
    fn consistency_instances_are_counterexamples() {
        let pa = TheoryContext::pa();
        let a = m("~[]#F");
        let b = ModalFormula::not(pr_in(&pa, &a));
        for id in [SchemeId::II, SchemeId::VI] {
            let v = check_instance(&SchemeInstance::modal("g", id, pa.clone(), a.clone(), b.clone()));
            assert_eq!(v.classification, Classification::Counterexample, "{id}");
        }
        let vi = check_instance(&SchemeInstance::modal("g", SchemeId::VI, pa, a, b));
        assert!(vi.premise1.gl.as_ref().and_then(GLVerdict::derivation).is_some_and(|d| d.gl_steps() > 0));
    }

    #[test]
    fn schematic_refutations_never_count() {
        let inst = SchemeInstance::modal("s", SchemeId::II, TheoryContext::pa(), m("[]p -> p"), m("[]p -> p"));
        let v = check_instance(&inst);
        assert_eq!(v.conclusion.status, Status::Fails);
        assert!(!v.conclusion.faithful);
        assert_eq!(v.classification, Classification::Inconclusive);
    }

    #[test]
    fn gate() {
        let pa = TheoryContext::pa();
        let a = m("~[]#F");
        let b = ModalFormula::not(pr_in(&pa, &a));
        let v = SchemeInstance::modal("v", SchemeId::V, pa.clone(), a.clone(), b.clone())
            .with_classes(SyntacticClass::Pi1, SyntacticClass::Pi1);
        let GateOutcome::Reduced(r) = gate_pi1(&v).unwrap() else { panic!("gate should open") };
        assert_eq!((r.scheme, r.classification), (SchemeId::I, Classification::ValidatedInstance));
        let mut closed = v.clone();
        closed.context = TheoryContext::s();
        assert!(matches!(gate_pi1(&closed).unwrap(), GateOutcome::Direct(_)));
        let iv = SchemeInstance { scheme: SchemeId::IV, ..v };
        assert_eq!(gate_pi1(&iv), Err(SchemeError::GateNotApplicable(SchemeId::IV)));
    }
}

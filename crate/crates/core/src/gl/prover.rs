use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::syntax::ModalFormula;

use super::kripke::{kripke_eval, KripkeModel};

/// Prover steps allowed by [`gl_decide`]; never reached on desk-scale
/// input.
pub const DEFAULT_FUEL: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("GL prover ran out of fuel")]
pub struct FuelExhausted;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Bot,
    Top,
    Letter(u32),
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    Imp(u32, u32),
    Iff(u32, u32),
    Box(u32),
}

type Side = Vec<u32>;

fn insert(side: &mut Side, f: u32) {
    if let Err(pos) = side.binary_search(&f) {
        side.insert(pos, f);
    }
}

fn without(side: &Side, f: u32) -> Side {
    side.iter().copied().filter(|&g| g != f).collect()
}

fn with(side: &Side, fs: &[u32]) -> Side {
    let mut s = side.clone();
    for &f in fs {
        insert(&mut s, f);
    }
    s
}

/// One decomposition step of a non-saturated sequent.
enum Step {
    /// All premises must be provable.
    Premises(Vec<(Side, Side)>),
    Saturated,
}

/// Proof search for GL over hash-consed formulas.
struct Prover {
    nodes: Vec<Node>,
    ids: HashMap<Node, u32>,
    letters: Vec<String>,
    memo: HashMap<(Side, Side), bool>,
    fuel: u64,
}

impl Prover {
    fn new(fuel: u64) -> Self {
        Prover { nodes: Vec::new(), ids: HashMap::new(), letters: Vec::new(), memo: HashMap::new(), fuel }
    }

    fn intern_node(&mut self, n: Node) -> u32 {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(n);
        self.ids.insert(n, id);
        id
    }

    fn intern(&mut self, f: &ModalFormula) -> u32 {
        use ModalFormula as M;
        let node = match f {
            M::Bottom => Node::Bot,
            M::Top => Node::Top,
            M::Letter(p) => {
                let i = match self.letters.iter().position(|q| q == p) {
                    Some(i) => i,
                    None => {
                        self.letters.push(p.clone());
                        self.letters.len() - 1
                    }
                };
                Node::Letter(i as u32)
            }
            M::Not(x) => Node::Not(self.intern(x)),
            M::Box(x) => Node::Box(self.intern(x)),
            M::And(a, b) => Node::And(self.intern(a), self.intern(b)),
            M::Or(a, b) => Node::Or(self.intern(a), self.intern(b)),
            M::Implies(a, b) => Node::Imp(self.intern(a), self.intern(b)),
            M::Iff(a, b) => Node::Iff(self.intern(a), self.intern(b)),
        };
        self.intern_node(node)
    }

    fn formula(&self, id: u32) -> ModalFormula {
        use ModalFormula as M;
        match self.nodes[id as usize] {
            Node::Bot => M::Bottom,
            Node::Top => M::Top,
            Node::Letter(i) => M::Letter(self.letters[i as usize].clone()),
            Node::Not(x) => M::not(self.formula(x)),
            Node::Box(x) => M::boxed(self.formula(x)),
            Node::And(a, b) => M::and(self.formula(a), self.formula(b)),
            Node::Or(a, b) => M::or(self.formula(a), self.formula(b)),
            Node::Imp(a, b) => M::implies(self.formula(a), self.formula(b)),
            Node::Iff(a, b) => M::iff(self.formula(a), self.formula(b)),
        }
    }

    fn is_atomic(&self, id: u32) -> bool {
        matches!(self.nodes[id as usize], Node::Bot | Node::Top | Node::Letter(_) | Node::Box(_))
    }

    fn axiomatic(&self, ante: &Side, succ: &Side) -> Option<GlRule> {
        for &f in ante {
            if self.nodes[f as usize] == Node::Bot {
                return Some(GlRule::BotL);
            }
            if succ.binary_search(&f).is_ok() {
                return Some(GlRule::Axiom(self.formula(f)));
            }
        }
        succ.iter()
            .any(|&f| self.nodes[f as usize] == Node::Top)
            .then_some(GlRule::TopR)
    }

    /// The first invertible rule that applies, with its premises.
    fn step(&self, ante: &Side, succ: &Side) -> (Option<GlRule>, Step) {
        if let Some(&f) = ante.iter().find(|&&f| !self.is_atomic(f)) {
            let rest = without(ante, f);
            let pf = self.formula(f);
            let (rule, premises) = match self.nodes[f as usize] {
                Node::Not(x) => (GlRule::NotL(pf), vec![(rest, with(succ, &[x]))]),
                Node::And(a, b) => (GlRule::AndL(pf), vec![(with(&rest, &[a, b]), succ.clone())]),
                Node::Or(a, b) => (
                    GlRule::OrL(pf),
                    vec![(with(&rest, &[a]), succ.clone()), (with(&rest, &[b]), succ.clone())],
                ),
                Node::Imp(a, b) => (
                    GlRule::ImpL(pf),
                    vec![(rest.clone(), with(succ, &[a])), (with(&rest, &[b]), succ.clone())],
                ),
                Node::Iff(a, b) => (
                    GlRule::IffL(pf),
                    vec![(with(&rest, &[a, b]), succ.clone()), (rest.clone(), with(succ, &[a, b]))],
                ),
                _ => unreachable!("atomic formulas are skipped"),
            };
            return (Some(rule), Step::Premises(premises));
        }
        if let Some(&f) = succ.iter().find(|&&f| !self.is_atomic(f)) {
            let rest = without(succ, f);
            let pf = self.formula(f);
            let (rule, premises) = match self.nodes[f as usize] {
                Node::Not(x) => (GlRule::NotR(pf), vec![(with(ante, &[x]), rest)]),
                Node::And(a, b) => (
                    GlRule::AndR(pf),
                    vec![(ante.clone(), with(&rest, &[a])), (ante.clone(), with(&rest, &[b]))],
                ),
                Node::Or(a, b) => (GlRule::OrR(pf), vec![(ante.clone(), with(&rest, &[a, b]))]),
                Node::Imp(a, b) => (GlRule::ImpR(pf), vec![(with(ante, &[a]), with(&rest, &[b]))]),
                Node::Iff(a, b) => (
                    GlRule::IffR(pf),
                    vec![(with(ante, &[a]), with(&rest, &[b])), (with(ante, &[b]), with(&rest, &[a]))],
                ),
                _ => unreachable!("atomic formulas are skipped"),
            };
            return (Some(rule), Step::Premises(premises));
        }
        (None, Step::Saturated)
    }

    /// Premise of the GL rule for `□a` in the succedent:
    /// `□Γ, Γ, □a ⇒ a`.
    fn gl_premise(&mut self, ante: &Side, boxed: u32) -> (Side, Side) {
        let Node::Box(a) = self.nodes[boxed as usize] else { unreachable!("boxed formula") };
        let mut next = Vec::new();
        for &f in ante {
            if let Node::Box(b) = self.nodes[f as usize] {
                insert(&mut next, f);
                insert(&mut next, b);
            }
        }
        insert(&mut next, boxed);
        (next, vec![a])
    }

    fn boxes(&self, succ: &Side) -> Vec<u32> {
        succ.iter().copied().filter(|&f| matches!(self.nodes[f as usize], Node::Box(_))).collect()
    }

    fn provable(&mut self, ante: &Side, succ: &Side) -> Result<bool, FuelExhausted> {
        if self.fuel == 0 {
            return Err(FuelExhausted);
        }
        self.fuel -= 1;
        if self.axiomatic(ante, succ).is_some() {
            return Ok(true);
        }
        let key = (ante.clone(), succ.clone());
        if let Some(&r) = self.memo.get(&key) {
            return Ok(r);
        }
        let result = match self.step(ante, succ).1 {
            Step::Premises(ps) => {
                let mut all = true;
                for (a, s) in ps {
                    if !self.provable(&a, &s)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            Step::Saturated => {
                let mut any = false;
                for b in self.boxes(succ) {
                    let (a, s) = self.gl_premise(ante, b);
                    if self.provable(&a, &s)? {
                        any = true;
                        break;
                    }
                }
                any
            }
        };
        self.memo.insert(key, result);
        Ok(result)
    }

    fn sequent(&self, ante: &Side, succ: &Side) -> GlSequent {
        GlSequent {
            ante: ante.iter().map(|&f| self.formula(f)).collect(),
            succ: succ.iter().map(|&f| self.formula(f)).collect(),
        }
    }

    /// Derivation of a sequent already known to be provable.
    fn derive(&mut self, ante: &Side, succ: &Side) -> GlDerivation {
        let conclusion = self.sequent(ante, succ);
        if let Some(rule) = self.axiomatic(ante, succ) {
            return GlDerivation { rule, conclusion, premises: vec![] };
        }
        match self.step(ante, succ) {
            (Some(rule), Step::Premises(ps)) => {
                let premises = ps.iter().map(|(a, s)| self.derive(a, s)).collect();
                GlDerivation { rule, conclusion, premises }
            }
            _ => {
                for b in self.boxes(succ) {
                    let (a, s) = self.gl_premise(ante, b);
                    if self.memo.get(&(a.clone(), s.clone())) == Some(&true)
                        || self.axiomatic(&a, &s).is_some()
                    {
                        let premise = self.derive(&a, &s);
                        return GlDerivation { rule: GlRule::Gl(self.formula(b)), conclusion, premises: vec![premise] };
                    }
                }
                unreachable!("derive is only called on provable sequents")
            }
        }
    }

    /// Builds worlds refuting an unprovable sequent; returns the world
    /// whose submodel falsifies it.
    fn refute(&mut self, ante: &Side, succ: &Side, b: &mut ModelBuilder) -> usize {
        match self.step(ante, succ) {
            (_, Step::Premises(ps)) => {
                let (a, s) = ps
                    .into_iter()
                    .find(|(a, s)| !self.memo_or_axiom(a, s))
                    .expect("an unprovable sequent has an unprovable premise");
                self.refute(&a, &s, b)
            }
            (_, Step::Saturated) => {
                if let Some(&w) = b.seen.get(&(ante.clone(), succ.clone())) {
                    return w;
                }
                let w = b.valuation.len();
                let letters = ante
                    .iter()
                    .filter_map(|&f| match self.nodes[f as usize] {
                        Node::Letter(i) => Some(self.letters[i as usize].clone()),
                        _ => None,
                    })
                    .collect();
                b.valuation.push(letters);
                b.seen.insert((ante.clone(), succ.clone()), w);
                for boxed in self.boxes(succ) {
                    let (a, s) = self.gl_premise(ante, boxed);
                    let child = self.refute(&a, &s, b);
                    b.relation.insert((w, child));
                }
                w
            }
        }
    }

    fn memo_or_axiom(&self, a: &Side, s: &Side) -> bool {
        self.axiomatic(a, s).is_some() || self.memo.get(&(a.clone(), s.clone())) == Some(&true)
    }
}

#[derive(Default)]
struct ModelBuilder {
    valuation: Vec<BTreeSet<String>>,
    relation: BTreeSet<(usize, usize)>,
    seen: HashMap<(Side, Side), usize>,
}

/// A sequent of the GL calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlSequent {
    pub ante: BTreeSet<ModalFormula>,
    pub succ: BTreeSet<ModalFormula>,
}

impl fmt::Display for GlSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &BTreeSet<ModalFormula>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{} => {}", side(&self.ante), side(&self.succ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlRule {
    Axiom(ModalFormula),
    BotL,
    TopR,
    NotL(ModalFormula),
    NotR(ModalFormula),
    AndL(ModalFormula),
    AndR(ModalFormula),
    OrL(ModalFormula),
    OrR(ModalFormula),
    ImpL(ModalFormula),
    ImpR(ModalFormula),
    IffL(ModalFormula),
    IffR(ModalFormula),
    /// From `□Γ, Γ, □A ⇒ A` infer `Γ', □Γ ⇒ □A, Δ`.
    Gl(ModalFormula),
}

impl GlRule {
    pub fn name(&self) -> &'static str {
        match self {
            GlRule::Axiom(_) => "axiom",
            GlRule::BotL => "bot-L",
            GlRule::TopR => "top-R",
            GlRule::NotL(_) => "not-L",
            GlRule::NotR(_) => "not-R",
            GlRule::AndL(_) => "and-L",
            GlRule::AndR(_) => "and-R",
            GlRule::OrL(_) => "or-L",
            GlRule::OrR(_) => "or-R",
            GlRule::ImpL(_) => "imp-L",
            GlRule::ImpR(_) => "imp-R",
            GlRule::IffL(_) => "iff-L",
            GlRule::IffR(_) => "iff-R",
            GlRule::Gl(_) => "GL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlDerivation {
    pub rule: GlRule,
    pub conclusion: GlSequent,
    pub premises: Vec<GlDerivation>,
}

impl GlDerivation {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(GlDerivation::size).sum::<usize>()
    }

    /// Number of GL-rule applications.
    pub fn gl_steps(&self) -> usize {
        usize::from(matches!(self.rule, GlRule::Gl(_))) + self.premises.iter().map(GlDerivation::gl_steps).sum::<usize>()
    }

    pub fn render(&self) -> String {
        fn walk(d: &GlDerivation, indent: usize, out: &mut String) {
            out.push_str(&format!("{}{}: {}\n", "  ".repeat(indent), d.rule.name(), d.conclusion));
            for p in &d.premises {
                walk(p, indent + 1, out);
            }
        }
        let mut out = String::new();
        walk(self, 0, &mut out);
        out
    }
}

fn expected(rule: &GlRule, seq: &GlSequent) -> Result<Vec<GlSequent>, String> {
    use ModalFormula as M;
    let ante_has = |f: &ModalFormula| seq.ante.contains(f);
    let succ_has = |f: &ModalFormula| seq.succ.contains(f);
    let mk = |drop_a: Option<&ModalFormula>, add_a: &[&ModalFormula], drop_s: Option<&ModalFormula>, add_s: &[&ModalFormula]| {
        let mut s = seq.clone();
        if let Some(f) = drop_a {
            s.ante.remove(f);
        }
        if let Some(f) = drop_s {
            s.succ.remove(f);
        }
        s.ante.extend(add_a.iter().map(|f| (*f).clone()));
        s.succ.extend(add_s.iter().map(|f| (*f).clone()));
        s
    };
    let missing = || Err(format!("{}: principal formula missing or misshapen", rule.name()));
    match rule {
        GlRule::Axiom(f) if ante_has(f) && succ_has(f) => Ok(vec![]),
        GlRule::BotL if ante_has(&M::Bottom) => Ok(vec![]),
        GlRule::TopR if succ_has(&M::Top) => Ok(vec![]),
        GlRule::NotL(f @ M::Not(x)) if ante_has(f) => Ok(vec![mk(Some(f), &[], None, &[x])]),
        GlRule::NotR(f @ M::Not(x)) if succ_has(f) => Ok(vec![mk(None, &[x], Some(f), &[])]),
        GlRule::AndL(f @ M::And(a, b)) if ante_has(f) => Ok(vec![mk(Some(f), &[a, b], None, &[])]),
        GlRule::AndR(f @ M::And(a, b)) if succ_has(f) => {
            Ok(vec![mk(None, &[], Some(f), &[a]), mk(None, &[], Some(f), &[b])])
        }
        GlRule::OrL(f @ M::Or(a, b)) if ante_has(f) => {
            Ok(vec![mk(Some(f), &[a], None, &[]), mk(Some(f), &[b], None, &[])])
        }
        GlRule::OrR(f @ M::Or(a, b)) if succ_has(f) => Ok(vec![mk(None, &[], Some(f), &[a, b])]),
        GlRule::ImpL(f @ M::Implies(a, b)) if ante_has(f) => {
            Ok(vec![mk(Some(f), &[], None, &[a]), mk(Some(f), &[b], None, &[])])
        }
        GlRule::ImpR(f @ M::Implies(a, b)) if succ_has(f) => Ok(vec![mk(None, &[a], Some(f), &[b])]),
        GlRule::IffL(f @ M::Iff(a, b)) if ante_has(f) => {
            Ok(vec![mk(Some(f), &[a, b], None, &[]), mk(Some(f), &[], None, &[a, b])])
        }
        GlRule::IffR(f @ M::Iff(a, b)) if succ_has(f) => {
            Ok(vec![mk(None, &[a], Some(f), &[b]), mk(None, &[b], Some(f), &[a])])
        }
        GlRule::Gl(f @ M::Box(a)) if succ_has(f) => {
            let mut ante = BTreeSet::new();
            for g in &seq.ante {
                if let M::Box(b) = g {
                    ante.insert(g.clone());
                    ante.insert((**b).clone());
                }
            }
            ante.insert(f.clone());
            Ok(vec![GlSequent { ante, succ: BTreeSet::from([(**a).clone()]) }])
        }
        _ => missing(),
    }
}

/// Independent check of a GL derivation.
pub fn check_gl_derivation(d: &GlDerivation) -> Result<(), String> {
    let want = expected(&d.rule, &d.conclusion)?;
    if want.len() != d.premises.len() {
        return Err(format!("{}: wrong number of premises", d.rule.name()));
    }
    for (w, p) in want.iter().zip(&d.premises) {
        if *w != p.conclusion {
            return Err(format!("{}: premise `{}` expected, found `{}`", d.rule.name(), w, p.conclusion));
        }
        check_gl_derivation(p)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GLVerdict {
    Proved(GlDerivation),
    Refuted(KripkeModel),
}

impl GLVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, GLVerdict::Proved(_))
    }

    pub fn countermodel(&self) -> Option<&KripkeModel> {
        match self {
            GLVerdict::Refuted(m) => Some(m),
            GLVerdict::Proved(_) => None,
        }
    }

    pub fn derivation(&self) -> Option<&GlDerivation> {
        match self {
            GLVerdict::Proved(d) => Some(d),
            GLVerdict::Refuted(_) => None,
        }
    }
}

/// Greedy world deletion that keeps `f` false at the root.
fn minimize(mut m: KripkeModel, f: &ModalFormula) -> KripkeModel {
    let mut w = m.worlds;
    while w > 0 {
        w -= 1;
        if w == m.root {
            continue;
        }
        let keep: Vec<usize> = (0..m.worlds).filter(|&v| v != w).collect();
        let smaller = m.restrict(&keep);
        if !kripke_eval(&smaller, smaller.root, f) {
            m = smaller;
        }
    }
    m
}

/// Decides `GL ⊢ f` with a step budget.
pub fn try_gl_decide(f: &ModalFormula, fuel: u64) -> Result<GLVerdict, FuelExhausted> {
    let mut p = Prover::new(fuel);
    let goal = p.intern(f);
    let (ante, succ) = (Vec::new(), vec![goal]);
    if p.provable(&ante, &succ)? {
        return Ok(GLVerdict::Proved(p.derive(&ante, &succ)));
    }
    let mut b = ModelBuilder::default();
    let root = p.refute(&ante, &succ, &mut b);
    let mut m = KripkeModel { worlds: b.valuation.len(), relation: b.relation, valuation: b.valuation, root };
    m.close();
    // keep only what the root sees, root first
    let keep: Vec<usize> = std::iter::once(root).chain(m.successors(root).collect::<Vec<_>>()).collect();
    let m = minimize(m.restrict(&keep), f);
    debug_assert!(!kripke_eval(&m, m.root, f));
    Ok(GLVerdict::Refuted(m))
}

/// Decides `GL ⊢ f`, returning a checkable derivation or a countermodel.
pub fn gl_decide(f: &ModalFormula) -> GLVerdict {
    try_gl_decide(f, DEFAULT_FUEL).expect("GL search terminates within the default fuel")
}

/// Provability only, without building a certificate.
pub fn gl_provable(f: &ModalFormula) -> bool {
    let mut p = Prover::new(DEFAULT_FUEL);
    let goal = p.intern(f);
    p.provable(&Vec::new(), &vec![goal]).expect("GL search terminates within the default fuel")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_modal;

    fn decide(s: &str) -> GLVerdict {
        gl_decide(&parse_modal(s).unwrap())
    }

    #[test]
    fn lob_axiom_is_proved_with_a_checked_derivation() {
        let GLVerdict::Proved(d) = decide("[]([]p -> p) -> []p") else { panic!("expected a proof") };
        check_gl_derivation(&d).unwrap();
        assert!(d.gl_steps() >= 1);
    }

    #[test]
    fn reflection_is_refuted_by_a_small_model() {
        let f = parse_modal("[]p -> p").unwrap();
        let GLVerdict::Refuted(m) = gl_decide(&f) else { panic!("expected a countermodel") };
        m.validate().unwrap();
        assert!(m.worlds <= 2);
        assert!(!kripke_eval(&m, m.root, &f));
    }

    #[test]
    fn four_axiom_instance() {
        assert!(decide("[]#F -> [][]#F").is_proved());
        assert!(decide("[]p -> [][]p").is_proved());
        assert!(!decide("~[]#F").is_proved());
    }

    #[test]
    fn tampered_derivation_is_rejected() {
        let GLVerdict::Proved(mut d) = decide("[]([]p -> p) -> []p") else { panic!() };
        d.conclusion.succ.insert(ModalFormula::letter("q"));
        assert!(check_gl_derivation(&d).is_err());
    }
}

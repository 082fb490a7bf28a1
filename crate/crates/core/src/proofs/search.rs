use std::collections::{BTreeSet, HashMap};

use crate::syntax::{ArithFormula, Term};

use super::sequent::{expected_premises, Proof, ProofNode, Rule, Sequent};
use super::theory::{instantiate_axiom, split_universal, TheorySpec};

/// Default cap on explored sequents per search.
pub const DEFAULT_NODE_BUDGET: usize = 60_000;

/// Largest number of instance terms tried per quantifier.
const MAX_CANDIDATES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved(Proof),
    /// No proof within the depth and node limits.
    Unknown,
}

impl SearchOutcome {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            SearchOutcome::Proved(p) => Some(p),
            SearchOutcome::Unknown => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum proof height.
    pub depth: u32,
    pub node_budget: usize,
}

impl SearchLimits {
    pub fn depth(depth: u32) -> Self {
        SearchLimits { depth, node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// Iterative-deepening search for a proof of `⇒ goal`. The first proof
/// found has minimal height; ties are broken by the fixed rule order, so
/// the result is deterministic.
pub fn prove_bounded(theory: &TheorySpec, goal: &ArithFormula, depth: u32) -> SearchOutcome {
    prove_with(theory, goal, SearchLimits::depth(depth))
}

pub fn prove_with(theory: &TheorySpec, goal: &ArithFormula, limits: SearchLimits) -> SearchOutcome {
    if !goal.is_sentence() {
        return SearchOutcome::Unknown;
    }
    let mut searcher = Searcher::new(theory, limits.node_budget);
    let root = Sequent::goal(goal.clone());
    for d in 0..=limits.depth {
        match searcher.search(&root, d) {
            Ok(Some(node)) => {
                return SearchOutcome::Proved(Proof { theory: theory.clone(), root: node })
            }
            Ok(None) => {}
            Err(Exhausted) => break,
        }
    }
    SearchOutcome::Unknown
}

struct Exhausted;

/// An equational axiom `∀x̄ l = r`, used left to right.
struct Equation {
    index: usize,
    arity: usize,
    lhs: Term,
}

struct Searcher {
    axioms: Vec<ArithFormula>,
    equations: Vec<Equation>,
    /// Largest depth at which a sequent is known to fail.
    failed: HashMap<Sequent, u32>,
    nodes: usize,
    budget: usize,
}

impl Searcher {
    fn new(theory: &TheorySpec, budget: usize) -> Self {
        let axioms = theory.axioms();
        let equations = axioms
            .iter()
            .enumerate()
            .filter_map(|(index, ax)| {
                let (arity, body) = split_universal(ax);
                match body {
                    ArithFormula::Eq(lhs, _) if !matches!(lhs, Term::Var(_)) => {
                        Some(Equation { index, arity, lhs: lhs.clone() })
                    }
                    _ => None,
                }
            })
            .collect();
        Searcher { axioms, equations, failed: HashMap::new(), nodes: 0, budget }
    }

    fn node(&self, rule: Rule, conclusion: &Sequent, premises: Vec<ProofNode>) -> ProofNode {
        ProofNode { rule, conclusion: conclusion.clone(), premises }
    }

    fn leaf(&self, seq: &Sequent) -> Option<Rule> {
        if let Some(f) = seq.ante.iter().find(|f| seq.succ.contains(*f)) {
            return Some(Rule::Axiom(f.clone()));
        }
        for f in &seq.succ {
            if let ArithFormula::Eq(a, b) = f {
                if a == b {
                    return Some(Rule::Refl(f.clone()));
                }
            }
        }
        for f in &seq.succ {
            for (index, ax) in self.axioms.iter().enumerate() {
                if let Some(terms) = match_axiom(ax, f) {
                    return Some(Rule::TheoryAxiom { index, terms });
                }
            }
        }
        None
    }

    fn invertible(&self, seq: &Sequent) -> Option<Rule> {
        use ArithFormula as F;
        for f in &seq.ante {
            let rule = match f {
                F::Not(_) => Rule::NotL(f.clone()),
                F::And(..) => Rule::AndL(f.clone()),
                F::Or(..) => Rule::OrL(f.clone()),
                F::Implies(..) => Rule::ImpL(f.clone()),
                F::Iff(..) => Rule::IffL(f.clone()),
                F::Exists(_) => Rule::ExL(f.clone()),
                F::BoundedForall(..) | F::BoundedExists(..) => Rule::UnfoldL(f.clone()),
                _ => continue,
            };
            return Some(rule);
        }
        for f in &seq.succ {
            let rule = match f {
                F::Not(_) => Rule::NotR(f.clone()),
                F::And(..) => Rule::AndR(f.clone()),
                F::Or(..) => Rule::OrR(f.clone()),
                F::Implies(..) => Rule::ImpR(f.clone()),
                F::Iff(..) => Rule::IffR(f.clone()),
                F::Forall(_) => Rule::AllR(f.clone()),
                F::BoundedForall(..) | F::BoundedExists(..) => Rule::UnfoldR(f.clone()),
                _ => continue,
            };
            return Some(rule);
        }
        None
    }

    fn rewrites(&self, seq: &Sequent) -> Vec<Rule> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let sides = seq
            .succ
            .iter()
            .map(|f| (true, f))
            .chain(seq.ante.iter().map(|f| (false, f)));
        for (right, target) in sides {
            let ArithFormula::Eq(a, b) = target else { continue };
            let mut subterms = Vec::new();
            a.subterms(&mut subterms);
            b.subterms(&mut subterms);
            for u in subterms {
                for eq in &self.equations {
                    let Some(terms) = match_term_pattern(&eq.lhs, eq.arity, &u) else { continue };
                    let Some(ArithFormula::Eq(s, t)) =
                        instantiate_axiom(&self.axioms[eq.index], &terms)
                    else {
                        continue;
                    };
                    if s == t || !seen.insert((right, target.clone(), s.clone())) {
                        continue;
                    }
                    let result = target.replace_term(&s, &t);
                    out.push(rewrite_rule(right, s, t, target.clone(), result));
                }
            }
        }
        // equations already assumed, in both directions
        for e in &seq.ante {
            let ArithFormula::Eq(l, r) = e else { continue };
            if l == r {
                continue;
            }
            for (s, t) in [(l, r), (r, l)] {
                for target in &seq.succ {
                    let result = target.replace_term(s, t);
                    if result != *target {
                        out.push(rewrite_rule(true, s.clone(), t.clone(), target.clone(), result));
                    }
                }
            }
        }
        out
    }

    fn candidates(&self, seq: &Sequent) -> Vec<Term> {
        let mut found: BTreeSet<(usize, Term)> = BTreeSet::new();
        found.insert((1, Term::Zero));
        for i in 0..seq.eigen {
            found.insert((1, Term::Var(i)));
        }
        for f in seq.ante.iter().chain(&seq.succ) {
            f.map_terms(&mut |d, t| {
                let mut subs = Vec::new();
                t.subterms(&mut subs);
                for u in subs {
                    if let Some(v) = u.lower(d) {
                        found.insert((v.size(), v));
                    }
                }
                t.clone()
            });
        }
        found.into_iter().map(|(_, t)| t).take(MAX_CANDIDATES).collect()
    }

    fn instantiations(&self, seq: &Sequent) -> Vec<Rule> {
        let candidates = self.candidates(seq);
        let mut out = Vec::new();
        for f in &seq.succ {
            if let ArithFormula::Exists(body) = f {
                for t in &candidates {
                    if !seq.succ.contains(&body.instantiate(t)) {
                        out.push(Rule::ExR { formula: f.clone(), term: t.clone() });
                    }
                }
            }
        }
        for f in &seq.ante {
            if let ArithFormula::Forall(body) = f {
                for t in &candidates {
                    if !seq.ante.contains(&body.instantiate(t)) {
                        out.push(Rule::AllL { formula: f.clone(), term: t.clone() });
                    }
                }
            }
        }
        out
    }

    fn axiom_moves(&self, seq: &Sequent) -> Vec<Rule> {
        let equational: BTreeSet<usize> = self.equations.iter().map(|e| e.index).collect();
        self.axioms
            .iter()
            .enumerate()
            .filter(|(i, ax)| !equational.contains(i) && !seq.ante.contains(*ax))
            .map(|(index, _)| Rule::AxiomL { index })
            .collect()
    }

    fn search(&mut self, seq: &Sequent, d: u32) -> Result<Option<ProofNode>, Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        if let Some(rule) = self.leaf(seq) {
            return Ok(Some(self.node(rule, seq, vec![])));
        }
        if d == 0 || self.failed.get(seq).is_some_and(|&f| f >= d) {
            return Ok(None);
        }
        let result = if let Some(rule) = self.invertible(seq) {
            self.apply(seq, rule, d)?
        } else {
            let mut moves = self.rewrites(seq);
            moves.extend(self.instantiations(seq));
            moves.extend(self.axiom_moves(seq));
            let mut found = None;
            for rule in moves {
                if let Some(node) = self.apply(seq, rule, d)? {
                    found = Some(node);
                    break;
                }
            }
            found
        };
        if result.is_none() {
            let entry = self.failed.entry(seq.clone()).or_insert(0);
            *entry = (*entry).max(d);
        }
        Ok(result)
    }

    fn apply(&mut self, seq: &Sequent, rule: Rule, d: u32) -> Result<Option<ProofNode>, Exhausted> {
        let premises = expected_premises(&self.axioms, seq, &rule)
            .expect("search only generates applicable rules");
        let mut children = Vec::with_capacity(premises.len());
        for p in &premises {
            match self.search(p, d - 1)? {
                Some(node) => children.push(node),
                None => return Ok(None),
            }
        }
        Ok(Some(self.node(rule, seq, children)))
    }
}

fn rewrite_rule(right: bool, s: Term, t: Term, target: ArithFormula, result: ArithFormula) -> Rule {
    if right {
        Rule::RewriteR { s, t, target, result }
    } else {
        Rule::RewriteL { s, t, target, result }
    }
}

/// If `f` is an instance of the universally quantified axiom `ax`, the
/// instance terms (outermost first).
pub fn match_axiom(ax: &ArithFormula, f: &ArithFormula) -> Option<Vec<Term>> {
    let (arity, body) = split_universal(ax);
    let mut subst = vec![None; arity];
    if !match_formula(body, f, arity, 0, &mut subst) {
        return None;
    }
    let terms = finish(subst)?;
    (instantiate_axiom(ax, &terms).as_ref() == Some(f)).then_some(terms)
}

/// Matches a term pattern whose variables `0..arity` are metavariables.
fn match_term_pattern(pattern: &Term, arity: usize, t: &Term) -> Option<Vec<Term>> {
    let mut subst = vec![None; arity];
    match_term(pattern, t, arity, 0, &mut subst).then_some(())?;
    finish(subst)
}

fn finish(subst: Vec<Option<Term>>) -> Option<Vec<Term>> {
    // metavariable m is bound by the (arity-1-m)-th outermost quantifier
    subst.into_iter().rev().collect()
}

fn match_formula(p: &ArithFormula, f: &ArithFormula, k: usize, d: u32, s: &mut [Option<Term>]) -> bool {
    use ArithFormula as F;
    match (p, f) {
        (F::Eq(a, b), F::Eq(x, y)) => match_term(a, x, k, d, s) && match_term(b, y, k, d, s),
        (F::Pr(t1, a), F::Pr(t2, x)) => t1 == t2 && match_term(a, x, k, d, s),
        (F::Not(a), F::Not(x)) => match_formula(a, x, k, d, s),
        (F::And(a, b), F::And(x, y))
        | (F::Or(a, b), F::Or(x, y))
        | (F::Implies(a, b), F::Implies(x, y))
        | (F::Iff(a, b), F::Iff(x, y)) => match_formula(a, x, k, d, s) && match_formula(b, y, k, d, s),
        (F::Forall(a), F::Forall(x)) | (F::Exists(a), F::Exists(x)) => match_formula(a, x, k, d + 1, s),
        (F::BoundedForall(t, a), F::BoundedForall(u, x))
        | (F::BoundedExists(t, a), F::BoundedExists(u, x)) => {
            match_term(t, u, k, d, s) && match_formula(a, x, k, d + 1, s)
        }
        _ => false,
    }
}

fn match_term(p: &Term, t: &Term, k: usize, d: u32, s: &mut [Option<Term>]) -> bool {
    match p {
        Term::Var(i) if *i >= d => {
            let m = (*i - d) as usize;
            if m >= k {
                return false;
            }
            let Some(v) = t.lower(d) else { return false };
            match &s[m] {
                Some(prev) => *prev == v,
                None => {
                    s[m] = Some(v);
                    true
                }
            }
        }
        Term::Var(_) | Term::Zero | Term::Num(_) => p == t,
        Term::Succ(a) => matches!(t, Term::Succ(x) if match_term(a, x, k, d, s)),
        Term::Diag(a) => matches!(t, Term::Diag(x) if match_term(a, x, k, d, s)),
        Term::Add(a, b) | Term::Mul(a, b) => match (p, t) {
            (Term::Add(..), Term::Add(x, y)) | (Term::Mul(..), Term::Mul(x, y)) => {
                match_term(a, x, k, d, s) && match_term(b, y, k, d, s)
            }
            (_, Term::Num(_)) => match_term(p, &t.unfold(), k, d, s),
            _ => false,
        },
    }
}

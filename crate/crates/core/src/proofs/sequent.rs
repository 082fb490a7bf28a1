use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{render_arith_open, ArithFormula, Term};

use super::theory::{instantiate_axiom, TheorySpec};

/// `Γ ⇒ Δ` over `eigen` eigenvariables. Free variable `i` of a formula
/// denotes the eigenvariable introduced `i` steps ago.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub eigen: u32,
    pub ante: BTreeSet<ArithFormula>,
    pub succ: BTreeSet<ArithFormula>,
}

impl Sequent {
    /// `⇒ goal`.
    pub fn goal(f: ArithFormula) -> Self {
        Sequent { eigen: 0, ante: BTreeSet::new(), succ: BTreeSet::from([f]) }
    }

    fn with_ante(&self, f: ArithFormula) -> Self {
        let mut s = self.clone();
        s.ante.insert(f);
        s
    }

    fn with_succ(&self, f: ArithFormula) -> Self {
        let mut s = self.clone();
        s.succ.insert(f);
        s
    }

    fn without_ante(&self, f: &ArithFormula) -> Self {
        let mut s = self.clone();
        s.ante.remove(f);
        s
    }

    fn without_succ(&self, f: &ArithFormula) -> Self {
        let mut s = self.clone();
        s.succ.remove(f);
        s
    }

    /// Introduces a fresh eigenvariable: every existing formula is shifted.
    fn extend(&self) -> Self {
        Sequent {
            eigen: self.eigen + 1,
            ante: self.ante.iter().map(|f| f.shift(1, 0)).collect(),
            succ: self.succ.iter().map(|f| f.shift(1, 0)).collect(),
        }
    }

    fn in_scope(&self, t: &Term) -> bool {
        let mut free = BTreeSet::new();
        t.collect_free(0, &mut free);
        free.iter().all(|&i| i < self.eigen)
    }

    fn names(&self) -> Vec<String> {
        (0..self.eigen).map(|i| format!("e{}", self.eigen - 1 - i)).collect()
    }

    pub fn render_formula(&self, f: &ArithFormula) -> String {
        let names = self.names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        render_arith_open(f, &names)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |set: &BTreeSet<ArithFormula>| {
            set.iter().map(|f| self.render_formula(f)).collect::<Vec<_>>().join(", ")
        };
        let ante = side(&self.ante);
        let succ = side(&self.succ);
        match (ante.is_empty(), succ.is_empty()) {
            (true, true) => write!(out, "=>"),
            (true, false) => write!(out, "=> {succ}"),
            (false, true) => write!(out, "{ante} =>"),
            (false, false) => write!(out, "{ante} => {succ}"),
        }
    }
}

/// A rule application. Every rule names its principal formula so the
/// checker can recompute the premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Axiom(ArithFormula),
    Refl(ArithFormula),
    /// Leaf: an instance of theory axiom `index` occurs in the succedent.
    TheoryAxiom { index: usize, terms: Vec<Term> },
    /// Adds theory axiom `index` to the antecedent.
    AxiomL { index: usize },
    NotL(ArithFormula),
    NotR(ArithFormula),
    AndL(ArithFormula),
    AndR(ArithFormula),
    OrL(ArithFormula),
    OrR(ArithFormula),
    ImpL(ArithFormula),
    ImpR(ArithFormula),
    IffL(ArithFormula),
    IffR(ArithFormula),
    AllR(ArithFormula),
    ExL(ArithFormula),
    AllL { formula: ArithFormula, term: Term },
    ExR { formula: ArithFormula, term: Term },
    /// Replaces a bounded quantifier by its unbounded definition.
    UnfoldL(ArithFormula),
    UnfoldR(ArithFormula),
    /// From `Γ ⇒ Δ, s = t` and `Γ ⇒ Δ - target + result` conclude
    /// `Γ ⇒ Δ`, where `result` is `target` with some `s` and `t`
    /// occurrences exchanged.
    RewriteR { s: Term, t: Term, target: ArithFormula, result: ArithFormula },
    RewriteL { s: Term, t: Term, target: ArithFormula, result: ArithFormula },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom(_) => "axiom",
            Rule::Refl(_) => "refl",
            Rule::TheoryAxiom { .. } => "theory-axiom",
            Rule::AxiomL { .. } => "axiom-L",
            Rule::NotL(_) => "not-L",
            Rule::NotR(_) => "not-R",
            Rule::AndL(_) => "and-L",
            Rule::AndR(_) => "and-R",
            Rule::OrL(_) => "or-L",
            Rule::OrR(_) => "or-R",
            Rule::ImpL(_) => "imp-L",
            Rule::ImpR(_) => "imp-R",
            Rule::IffL(_) => "iff-L",
            Rule::IffR(_) => "iff-R",
            Rule::AllR(_) => "all-R",
            Rule::ExL(_) => "ex-L",
            Rule::AllL { .. } => "all-L",
            Rule::ExR { .. } => "ex-R",
            Rule::UnfoldL(_) => "unfold-L",
            Rule::UnfoldR(_) => "unfold-R",
            Rule::RewriteR { .. } => "rewrite-R",
            Rule::RewriteL { .. } => "rewrite-L",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<ProofNode>,
}

impl ProofNode {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        self.premises.iter().map(|p| 1 + p.height()).max().unwrap_or(0)
    }
}

/// A derivation over a theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub theory: TheorySpec,
    pub root: ProofNode,
}

impl Proof {
    pub fn conclusion(&self) -> &Sequent {
        &self.root.conclusion
    }

    /// Indented text tree: one node per line, rule name then sequent.
    pub fn render(&self) -> String {
        fn walk(node: &ProofNode, indent: usize, out: &mut String) {
            let detail = match &node.rule {
                Rule::TheoryAxiom { index, .. } | Rule::AxiomL { index } => format!(" #{}", index + 1),
                _ => String::new(),
            };
            out.push_str(&format!(
                "{}{}{}: {}\n",
                "  ".repeat(indent),
                node.rule.name(),
                detail,
                node.conclusion
            ));
            for p in &node.premises {
                walk(p, indent + 1, out);
            }
        }
        let mut out = format!("theory {}\n", self.theory.name);
        walk(&self.root, 0, &mut out);
        out
    }
}

/// `∀x<t φ` as `∀x(∃z(z + S(x) = t) → φ)` and `∃x<t φ` as
/// `∃x(∃z(z + S(x) = t) ∧ φ)`.
pub fn unfold_bounded(f: &ArithFormula) -> Option<ArithFormula> {
    let below = |t: &Term| {
        ArithFormula::exists(ArithFormula::Eq(
            Term::add(Term::Var(0), Term::succ(Term::Var(1))),
            t.shift(2, 0),
        ))
    };
    match f {
        ArithFormula::BoundedForall(t, body) => {
            Some(ArithFormula::forall(ArithFormula::implies(below(t), (**body).clone())))
        }
        ArithFormula::BoundedExists(t, body) => {
            Some(ArithFormula::exists(ArithFormula::and(below(t), (**body).clone())))
        }
        _ => None,
    }
}

/// Whether `a` and `b` agree except at positions where one has `s` and the
/// other `t` (both read at top level).
pub fn rewrite_related(a: &ArithFormula, b: &ArithFormula, s: &Term, t: &Term) -> bool {
    formula_related(a, b, s, t, 0)
}

fn formula_related(a: &ArithFormula, b: &ArithFormula, s: &Term, t: &Term, d: u32) -> bool {
    use ArithFormula as F;
    match (a, b) {
        (F::Eq(a1, a2), F::Eq(b1, b2)) => {
            term_related(a1, b1, s, t, d) && term_related(a2, b2, s, t, d)
        }
        (F::Pr(x, a1), F::Pr(y, b1)) => x == y && term_related(a1, b1, s, t, d),
        (F::Not(x), F::Not(y)) => formula_related(x, y, s, t, d),
        (F::And(a1, a2), F::And(b1, b2))
        | (F::Or(a1, a2), F::Or(b1, b2))
        | (F::Implies(a1, a2), F::Implies(b1, b2))
        | (F::Iff(a1, a2), F::Iff(b1, b2)) => {
            formula_related(a1, b1, s, t, d) && formula_related(a2, b2, s, t, d)
        }
        (F::Forall(x), F::Forall(y)) | (F::Exists(x), F::Exists(y)) => {
            formula_related(x, y, s, t, d + 1)
        }
        (F::BoundedForall(u, x), F::BoundedForall(v, y))
        | (F::BoundedExists(u, x), F::BoundedExists(v, y)) => {
            term_related(u, v, s, t, d) && formula_related(x, y, s, t, d + 1)
        }
        _ => false,
    }
}

fn term_related(a: &Term, b: &Term, s: &Term, t: &Term, d: u32) -> bool {
    if a == b {
        return true;
    }
    let (sd, td) = (s.shift(d, 0), t.shift(d, 0));
    if (*a == sd && *b == td) || (*a == td && *b == sd) {
        return true;
    }
    match (a, b) {
        (Term::Num(_), Term::Num(_)) => {
            term_related(&a.unfold(), &b.unfold(), s, t, d)
        }
        (Term::Num(_), _) => term_related(&a.unfold(), b, s, t, d),
        (_, Term::Num(_)) => term_related(a, &b.unfold(), s, t, d),
        (Term::Succ(x), Term::Succ(y)) | (Term::Diag(x), Term::Diag(y)) => {
            term_related(x, y, s, t, d)
        }
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            term_related(a1, b1, s, t, d) && term_related(a2, b2, s, t, d)
        }
        _ => false,
    }
}

/// The premises a rule application must have, or why it does not apply.
pub fn expected_premises(
    axioms: &[ArithFormula],
    seq: &Sequent,
    rule: &Rule,
) -> Result<Vec<Sequent>, String> {
    use ArithFormula as F;
    let in_ante = |f: &ArithFormula| {
        if seq.ante.contains(f) {
            Ok(())
        } else {
            Err(format!("principal formula {} not in antecedent", seq.render_formula(f)))
        }
    };
    let in_succ = |f: &ArithFormula| {
        if seq.succ.contains(f) {
            Ok(())
        } else {
            Err(format!("principal formula {} not in succedent", seq.render_formula(f)))
        }
    };
    let wrong_shape = || Err(format!("rule {} does not match its principal formula", rule.name()));
    let axiom = |index: usize| {
        axioms.get(index).ok_or_else(|| format!("theory has no axiom #{}", index + 1))
    };
    match rule {
        Rule::Axiom(f) => {
            in_ante(f)?;
            in_succ(f)?;
            Ok(vec![])
        }
        Rule::Refl(f) => {
            in_succ(f)?;
            match f {
                F::Eq(a, b) if a == b => Ok(vec![]),
                _ => Err("reflexivity needs an identity t = t".into()),
            }
        }
        Rule::TheoryAxiom { index, terms } => {
            let ax = axiom(*index)?;
            if !terms.iter().all(|t| seq.in_scope(t)) {
                return Err("instance term mentions an unknown variable".into());
            }
            let inst = instantiate_axiom(ax, terms)
                .ok_or("too many instance terms for the axiom")?;
            in_succ(&inst)?;
            Ok(vec![])
        }
        Rule::AxiomL { index } => Ok(vec![seq.with_ante(axiom(*index)?.clone())]),
        Rule::NotL(f) => {
            in_ante(f)?;
            let F::Not(x) = f else { return wrong_shape() };
            Ok(vec![seq.without_ante(f).with_succ((**x).clone())])
        }
        Rule::NotR(f) => {
            in_succ(f)?;
            let F::Not(x) = f else { return wrong_shape() };
            Ok(vec![seq.without_succ(f).with_ante((**x).clone())])
        }
        Rule::AndL(f) => {
            in_ante(f)?;
            let F::And(a, b) = f else { return wrong_shape() };
            Ok(vec![seq.without_ante(f).with_ante((**a).clone()).with_ante((**b).clone())])
        }
        Rule::AndR(f) => {
            in_succ(f)?;
            let F::And(a, b) = f else { return wrong_shape() };
            let rest = seq.without_succ(f);
            Ok(vec![rest.with_succ((**a).clone()), rest.with_succ((**b).clone())])
        }
        Rule::OrL(f) => {
            in_ante(f)?;
            let F::Or(a, b) = f else { return wrong_shape() };
            let rest = seq.without_ante(f);
            Ok(vec![rest.with_ante((**a).clone()), rest.with_ante((**b).clone())])
        }
        Rule::OrR(f) => {
            in_succ(f)?;
            let F::Or(a, b) = f else { return wrong_shape() };
            Ok(vec![seq.without_succ(f).with_succ((**a).clone()).with_succ((**b).clone())])
        }
        Rule::ImpL(f) => {
            in_ante(f)?;
            let F::Implies(a, b) = f else { return wrong_shape() };
            let rest = seq.without_ante(f);
            Ok(vec![rest.with_succ((**a).clone()), rest.with_ante((**b).clone())])
        }
        Rule::ImpR(f) => {
            in_succ(f)?;
            let F::Implies(a, b) = f else { return wrong_shape() };
            Ok(vec![seq.without_succ(f).with_ante((**a).clone()).with_succ((**b).clone())])
        }
        Rule::IffL(f) => {
            in_ante(f)?;
            let F::Iff(a, b) = f else { return wrong_shape() };
            let rest = seq.without_ante(f);
            Ok(vec![
                rest.with_ante((**a).clone()).with_ante((**b).clone()),
                rest.with_succ((**a).clone()).with_succ((**b).clone()),
            ])
        }
        Rule::IffR(f) => {
            in_succ(f)?;
            let F::Iff(a, b) = f else { return wrong_shape() };
            let rest = seq.without_succ(f);
            Ok(vec![
                rest.with_ante((**a).clone()).with_succ((**b).clone()),
                rest.with_ante((**b).clone()).with_succ((**a).clone()),
            ])
        }
        Rule::AllR(f) => {
            in_succ(f)?;
            let F::Forall(body) = f else { return wrong_shape() };
            Ok(vec![seq.without_succ(f).extend().with_succ((**body).clone())])
        }
        Rule::ExL(f) => {
            in_ante(f)?;
            let F::Exists(body) = f else { return wrong_shape() };
            Ok(vec![seq.without_ante(f).extend().with_ante((**body).clone())])
        }
        Rule::AllL { formula, term } => {
            in_ante(formula)?;
            let F::Forall(body) = formula else { return wrong_shape() };
            if !seq.in_scope(term) {
                return Err("instance term mentions an unknown variable".into());
            }
            Ok(vec![seq.with_ante(body.instantiate(term))])
        }
        Rule::ExR { formula, term } => {
            in_succ(formula)?;
            let F::Exists(body) = formula else { return wrong_shape() };
            if !seq.in_scope(term) {
                return Err("instance term mentions an unknown variable".into());
            }
            Ok(vec![seq.with_succ(body.instantiate(term))])
        }
        Rule::UnfoldL(f) => {
            in_ante(f)?;
            let g = unfold_bounded(f).ok_or("not a bounded quantifier")?;
            Ok(vec![seq.without_ante(f).with_ante(g)])
        }
        Rule::UnfoldR(f) => {
            in_succ(f)?;
            let g = unfold_bounded(f).ok_or("not a bounded quantifier")?;
            Ok(vec![seq.without_succ(f).with_succ(g)])
        }
        Rule::RewriteR { s, t, target, result } | Rule::RewriteL { s, t, target, result } => {
            if !seq.in_scope(s) || !seq.in_scope(t) {
                return Err("rewrite terms mention an unknown variable".into());
            }
            if !rewrite_related(target, result, s, t) {
                return Err("result is not a rewrite of the target".into());
            }
            let equation = seq.with_succ(F::Eq(s.clone(), t.clone()));
            let rewritten = if matches!(rule, Rule::RewriteR { .. }) {
                in_succ(target)?;
                seq.without_succ(target).with_succ(result.clone())
            } else {
                in_ante(target)?;
                seq.without_ante(target).with_ante(result.clone())
            };
            Ok(vec![equation, rewritten])
        }
    }
}

/// Where and why a proof fails to check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofError {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
        write!(f, "invalid node at [{}]: {}", path.join("."), self.message)
    }
}

fn check_node(axioms: &[ArithFormula], node: &ProofNode, path: &mut Vec<usize>) -> Result<(), ProofError> {
    let fail = |path: &Vec<usize>, message: String| Err(ProofError { path: path.clone(), message });
    let expected = match expected_premises(axioms, &node.conclusion, &node.rule) {
        Ok(e) => e,
        Err(msg) => return fail(path, msg),
    };
    if expected.len() != node.premises.len() {
        return fail(
            path,
            format!("{} expects {} premises, found {}", node.rule.name(), expected.len(), node.premises.len()),
        );
    }
    for (i, (want, child)) in expected.iter().zip(&node.premises).enumerate() {
        if *want != child.conclusion {
            return fail(path, format!("premise {i} should be `{want}`, found `{}`", child.conclusion));
        }
        path.push(i);
        check_node(axioms, child, path)?;
        path.pop();
    }
    Ok(())
}

/// Checks every node, reporting the first invalid one.
pub fn check_proof_detailed(p: &Proof) -> Result<(), ProofError> {
    let axioms = p.theory.axioms();
    check_node(&axioms, &p.root, &mut Vec::new())
}

pub fn check_proof(p: &Proof) -> bool {
    check_proof_detailed(p).is_ok()
}

/// Proof of `⇒ goal` when the root sequent has exactly that shape.
pub fn proves(p: &Proof, goal: &ArithFormula) -> bool {
    let c = p.conclusion();
    c.eigen == 0 && c.ante.is_empty() && c.succ.len() == 1 && c.succ.contains(goal) && check_proof(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_arith;

    fn leaf(rule: Rule, conclusion: Sequent) -> ProofNode {
        ProofNode { rule, conclusion, premises: vec![] }
    }

    #[test]
    fn reflexivity_leaf() {
        let f = parse_arith("S(0) = S(0)").unwrap();
        let p = Proof { theory: TheorySpec::q(), root: leaf(Rule::Refl(f.clone()), Sequent::goal(f)) };
        assert!(check_proof(&p));
        let bad = parse_arith("S(0) = 0").unwrap();
        let p = Proof { theory: TheorySpec::q(), root: leaf(Rule::Refl(bad.clone()), Sequent::goal(bad)) };
        assert!(!check_proof(&p));
    }

    #[test]
    fn five_node_proof_of_zero_plus_one() {
        // 0 + S(0) = S(0 + 0) by Q5, 0 + 0 = 0 by Q4, then S(0) = S(0)
        let goal = parse_arith("0 + S(0) = S(0)").unwrap();
        let mid = parse_arith("S(0 + 0) = S(0)").unwrap();
        let last = parse_arith("S(0) = S(0)").unwrap();
        let (s1, t1) = (crate::syntax::parse_term("0 + S(0)").unwrap(), crate::syntax::parse_term("S(0 + 0)").unwrap());
        let (s2, t2) = (crate::syntax::parse_term("0 + 0").unwrap(), Term::Zero);
        let root_seq = Sequent::goal(goal.clone());
        let mid_seq = Sequent::goal(mid.clone());
        let eq1 = root_seq.with_succ(ArithFormula::Eq(s1.clone(), t1.clone()));
        let eq2 = mid_seq.with_succ(ArithFormula::Eq(s2.clone(), t2.clone()));
        let root = ProofNode {
            rule: Rule::RewriteR { s: s1, t: t1, target: goal.clone(), result: mid.clone() },
            conclusion: root_seq,
            premises: vec![
                leaf(Rule::TheoryAxiom { index: 4, terms: vec![Term::Zero, Term::Zero] }, eq1),
                ProofNode {
                    rule: Rule::RewriteR { s: s2, t: t2, target: mid, result: last.clone() },
                    conclusion: mid_seq,
                    premises: vec![
                        leaf(Rule::TheoryAxiom { index: 3, terms: vec![Term::Zero] }, eq2),
                        leaf(Rule::Refl(last.clone()), Sequent::goal(last)),
                    ],
                },
            ],
        };
        let p = Proof { theory: TheorySpec::q(), root };
        assert_eq!(p.root.size(), 5);
        check_proof_detailed(&p).unwrap();
        assert!(proves(&p, &goal));
    }

    #[test]
    fn unfolding_matches_le_sugar() {
        let f = parse_arith("A x < S(0). x = 0").unwrap();
        let g = unfold_bounded(&f).unwrap();
        assert_eq!(crate::syntax::render_arith(&g), "A x. (E y. y + S(x) = S(0)) -> x = 0");
    }

    #[test]
    fn rewrite_relation_allows_both_orientations() {
        let a = parse_arith("0 + 0 = S(0 + 0)").unwrap();
        let b = parse_arith("0 = S(0 + 0)").unwrap();
        let s = crate::syntax::parse_term("0 + 0").unwrap();
        assert!(rewrite_related(&a, &b, &s, &Term::Zero));
        assert!(rewrite_related(&b, &a, &s, &Term::Zero));
        assert!(!rewrite_related(&a, &b, &Term::unary(1), &Term::Zero));
    }
}

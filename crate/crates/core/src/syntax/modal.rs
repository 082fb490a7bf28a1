use std::collections::{BTreeSet, HashSet};

/// A formula of propositional provability logic. `◇A` is printing sugar
/// for `¬□¬A` and has no node of its own.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFormula {
    Bottom,
    Top,
    Letter(String),
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Iff(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
}

impl ModalFormula {
    pub fn letter(name: impl Into<String>) -> Self {
        ModalFormula::Letter(name.into())
    }
    pub fn not(f: ModalFormula) -> Self {
        ModalFormula::Not(Box::new(f))
    }
    pub fn and(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Iff(Box::new(a), Box::new(b))
    }
    pub fn boxed(f: ModalFormula) -> Self {
        ModalFormula::Box(Box::new(f))
    }
    pub fn diamond(f: ModalFormula) -> Self {
        Self::not(Self::boxed(Self::not(f)))
    }

    /// Conjunction of a list; `⊤` when empty.
    pub fn conj(items: impl IntoIterator<Item = ModalFormula>) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => ModalFormula::Top,
            Some(first) => it.fold(first, ModalFormula::and),
        }
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            ModalFormula::Letter(p) => {
                out.insert(p.clone());
            }
            ModalFormula::Bottom | ModalFormula::Top => {}
            ModalFormula::Not(f) | ModalFormula::Box(f) => f.collect_letters(out),
            ModalFormula::And(a, b)
            | ModalFormula::Or(a, b)
            | ModalFormula::Implies(a, b)
            | ModalFormula::Iff(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    pub fn is_letterless(&self) -> bool {
        match self {
            ModalFormula::Letter(_) => false,
            ModalFormula::Bottom | ModalFormula::Top => true,
            ModalFormula::Not(f) | ModalFormula::Box(f) => f.is_letterless(),
            ModalFormula::And(a, b)
            | ModalFormula::Or(a, b)
            | ModalFormula::Implies(a, b)
            | ModalFormula::Iff(a, b) => a.is_letterless() && b.is_letterless(),
        }
    }

    pub fn contains_letter(&self, p: &str) -> bool {
        match self {
            ModalFormula::Letter(q) => q == p,
            ModalFormula::Bottom | ModalFormula::Top => false,
            ModalFormula::Not(f) | ModalFormula::Box(f) => f.contains_letter(p),
            ModalFormula::And(a, b)
            | ModalFormula::Or(a, b)
            | ModalFormula::Implies(a, b)
            | ModalFormula::Iff(a, b) => a.contains_letter(p) || b.contains_letter(p),
        }
    }

    /// Replaces every occurrence of the letter `p` by `by`.
    pub fn replace_letter(&self, p: &str, by: &ModalFormula) -> ModalFormula {
        self.map_letters(&mut |q| (q == p).then(|| by.clone()))
    }

    /// Rebuilds the formula, replacing each letter for which `f` returns
    /// `Some`.
    pub fn map_letters(&self, f: &mut impl FnMut(&str) -> Option<ModalFormula>) -> ModalFormula {
        use ModalFormula as M;
        match self {
            M::Letter(q) => f(q).unwrap_or_else(|| self.clone()),
            M::Bottom | M::Top => self.clone(),
            M::Not(x) => M::not(x.map_letters(f)),
            M::Box(x) => M::boxed(x.map_letters(f)),
            M::And(a, b) => M::and(a.map_letters(f), b.map_letters(f)),
            M::Or(a, b) => M::or(a.map_letters(f), b.map_letters(f)),
            M::Implies(a, b) => M::implies(a.map_letters(f), b.map_letters(f)),
            M::Iff(a, b) => M::iff(a.map_letters(f), b.map_letters(f)),
        }
    }

    /// True when every occurrence of `p` lies under at least one `□`.
    pub fn is_modalized_in(&self, p: &str) -> bool {
        match self {
            ModalFormula::Letter(q) => q != p,
            ModalFormula::Bottom | ModalFormula::Top | ModalFormula::Box(_) => true,
            ModalFormula::Not(f) => f.is_modalized_in(p),
            ModalFormula::And(a, b)
            | ModalFormula::Or(a, b)
            | ModalFormula::Implies(a, b)
            | ModalFormula::Iff(a, b) => a.is_modalized_in(p) && b.is_modalized_in(p),
        }
    }

    /// Nesting depth of `□`.
    pub fn modal_depth(&self) -> usize {
        match self {
            ModalFormula::Letter(_) | ModalFormula::Bottom | ModalFormula::Top => 0,
            ModalFormula::Not(f) => f.modal_depth(),
            ModalFormula::Box(f) => 1 + f.modal_depth(),
            ModalFormula::And(a, b)
            | ModalFormula::Or(a, b)
            | ModalFormula::Implies(a, b)
            | ModalFormula::Iff(a, b) => a.modal_depth().max(b.modal_depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ModalFormula::Letter(_) | ModalFormula::Bottom | ModalFormula::Top => 1,
            ModalFormula::Not(f) | ModalFormula::Box(f) => 1 + f.size(),
            ModalFormula::And(a, b)
            | ModalFormula::Or(a, b)
            | ModalFormula::Implies(a, b)
            | ModalFormula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Constant folding with `⊤`/`⊥` plus double negation. Preserves
    /// equivalence in every normal modal logic containing `□⊤`.
    pub fn simplify(&self) -> ModalFormula {
        use ModalFormula as M;
        match self {
            M::Bottom | M::Top | M::Letter(_) => self.clone(),
            M::Not(x) => match x.simplify() {
                M::Top => M::Bottom,
                M::Bottom => M::Top,
                M::Not(y) => *y,
                y => M::not(y),
            },
            M::Box(x) => match x.simplify() {
                M::Top => M::Top,
                y => M::boxed(y),
            },
            M::And(a, b) => match (a.simplify(), b.simplify()) {
                (M::Bottom, _) | (_, M::Bottom) => M::Bottom,
                (M::Top, y) | (y, M::Top) => y,
                (x, y) if x == y => x,
                (x, y) => M::and(x, y),
            },
            M::Or(a, b) => match (a.simplify(), b.simplify()) {
                (M::Top, _) | (_, M::Top) => M::Top,
                (M::Bottom, y) | (y, M::Bottom) => y,
                (x, y) if x == y => x,
                (x, y) => M::or(x, y),
            },
            M::Implies(a, b) => match (a.simplify(), b.simplify()) {
                (M::Bottom, _) | (_, M::Top) => M::Top,
                (M::Top, y) => y,
                (x, M::Bottom) => match x {
                    M::Not(inner) => *inner,
                    x => M::not(x),
                },
                (x, y) if x == y => M::Top,
                (x, y) => M::implies(x, y),
            },
            M::Iff(a, b) => match (a.simplify(), b.simplify()) {
                (M::Top, y) | (y, M::Top) => y,
                (M::Bottom, y) | (y, M::Bottom) => match y {
                    M::Not(inner) => *inner,
                    M::Top => M::Bottom,
                    M::Bottom => M::Top,
                    y => M::not(y),
                },
                (x, y) if x == y => M::Top,
                (x, y) => M::iff(x, y),
            },
        }
    }
}

/// All distinct subformulas of `f`, outside-in (pre-order, first
/// occurrence wins).
pub fn subformulas_modal(f: &ModalFormula) -> Vec<ModalFormula> {
    fn walk(f: &ModalFormula, seen: &mut HashSet<ModalFormula>, out: &mut Vec<ModalFormula>) {
        if !seen.insert(f.clone()) {
            return;
        }
        out.push(f.clone());
        match f {
            ModalFormula::Letter(_) | ModalFormula::Bottom | ModalFormula::Top => {}
            ModalFormula::Not(x) | ModalFormula::Box(x) => walk(x, seen, out),
            ModalFormula::And(a, b)
            | ModalFormula::Or(a, b)
            | ModalFormula::Implies(a, b)
            | ModalFormula::Iff(a, b) => {
                walk(a, seen, out);
                walk(b, seen, out);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    walk(f, &mut seen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ModalFormula as M;

    fn p() -> M {
        M::letter("p")
    }

    #[test]
    fn subformula_examples() {
        assert_eq!(subformulas_modal(&M::boxed(p())), vec![M::boxed(p()), p()]);
        let q = M::letter("q");
        assert_eq!(
            subformulas_modal(&M::implies(p(), q.clone())),
            vec![M::implies(p(), q.clone()), p(), q]
        );
        let bb = M::boxed(M::boxed(M::Bottom));
        assert_eq!(
            subformulas_modal(&bb),
            vec![bb.clone(), M::boxed(M::Bottom), M::Bottom]
        );
    }

    #[test]
    fn subformulas_are_deduplicated() {
        let f = M::and(M::boxed(p()), M::boxed(p()));
        assert_eq!(subformulas_modal(&f).len(), 3);
    }

    #[test]
    fn modalized_check() {
        assert!(M::not(M::boxed(p())).is_modalized_in("p"));
        assert!(!M::and(p(), M::boxed(p())).is_modalized_in("p"));
        assert!(M::Top.is_modalized_in("p"));
    }

    #[test]
    fn simplify_folds_constants() {
        assert_eq!(M::not(M::boxed(M::not(M::Top))).simplify(), M::not(M::boxed(M::Bottom)));
        assert_eq!(M::implies(M::Top, M::Bottom).simplify(), M::Bottom);
        assert_eq!(M::boxed(M::implies(M::Bottom, M::Bottom)).simplify(), M::Top);
    }
}

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::SyntaxError;

/// A term of first-order arithmetic over `0, S, +, ·` plus the `diag`
/// function symbol.
///
/// Variables are de Bruijn indices: `Var(0)` is the innermost enclosing
/// binder (or, at top level, the first free variable).
///
/// `Num(n)` is the packed form of the efficient numeral `num(n)` for
/// `n ≥ 1`. It denotes exactly the tree described in [`Term::unfold`]
/// and encodes to the same token stream; terms are kept in *numeral normal
/// form*, meaning a subtree spelling out an efficient numeral is always
/// stored packed. All constructors in this module maintain that form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Var(u32),
    Diag(Box<Term>),
    Num(BigUint),
}

/// A formula of arithmetic, possibly mentioning the designated provability
/// predicate `Pr[tag](t)` of a named theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithFormula {
    Eq(Term, Term),
    Not(Box<ArithFormula>),
    And(Box<ArithFormula>, Box<ArithFormula>),
    Or(Box<ArithFormula>, Box<ArithFormula>),
    Implies(Box<ArithFormula>, Box<ArithFormula>),
    Iff(Box<ArithFormula>, Box<ArithFormula>),
    Forall(Box<ArithFormula>),
    Exists(Box<ArithFormula>),
    /// `∀x < bound. body`; the bound lives outside the binder.
    BoundedForall(Term, Box<ArithFormula>),
    /// `∃x < bound. body`; the bound lives outside the binder.
    BoundedExists(Term, Box<ArithFormula>),
    Pr(String, Term),
}

fn two() -> Term {
    Term::Succ(Box::new(Term::Succ(Box::new(Term::Zero))))
}

fn one() -> Term {
    Term::Succ(Box::new(Term::Zero))
}

impl Term {
    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    /// `a + b`, folding the odd-numeral shape `(SS0)·num(k) + S0` into `Num`.
    pub fn add(a: Term, b: Term) -> Term {
        if b == one() {
            match &a {
                Term::Num(m) if !m.bit(0) => return Term::Num(m + 1u32),
                Term::Mul(l, r) if **l == two() && **r == Term::Zero => {
                    return Term::Num(BigUint::one())
                }
                _ => {}
            }
        }
        Term::Add(Box::new(a), Box::new(b))
    }

    /// `a · b`, folding the even-numeral shape `(SS0)·num(k)` into `Num`.
    pub fn mul(a: Term, b: Term) -> Term {
        if a == two() {
            if let Term::Num(k) = &b {
                return Term::Num(k << 1u32);
            }
        }
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn diag(t: Term) -> Term {
        Term::Diag(Box::new(t))
    }

    /// The efficient numeral of `n` in packed form (`Zero` for 0).
    pub fn num(n: BigUint) -> Term {
        if n.is_zero() {
            Term::Zero
        } else {
            Term::Num(n)
        }
    }

    pub fn num_u64(n: u64) -> Term {
        Term::num(BigUint::from(n))
    }

    /// `S^n(0)`.
    pub fn unary(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::succ(t);
        }
        t
    }

    /// One level of the efficient-numeral tree behind `Num(n)`:
    /// `num(2k) = (SS0)·num(k)` and `num(2k+1) = (SS0)·num(k) + S0`.
    /// Other terms are returned unchanged.
    pub fn unfold(&self) -> Term {
        match self {
            Term::Num(n) => {
                let k = Term::num(n >> 1u32);
                let doubled = Term::Mul(Box::new(two()), Box::new(k));
                if !n.bit(0) {
                    doubled
                } else {
                    Term::Add(Box::new(doubled), Box::new(one()))
                }
            }
            other => other.clone(),
        }
    }

    /// Fully expanded tree, with no `Num` nodes left. Only sensible for
    /// small numerals.
    pub fn expand_numerals(&self) -> Term {
        match self {
            Term::Num(_) => match self.unfold() {
                Term::Add(a, b) => Term::Add(Box::new(a.expand_numerals()), b),
                Term::Mul(a, b) => Term::Mul(a, Box::new(b.expand_numerals())),
                other => other,
            },
            Term::Zero | Term::Var(_) => self.clone(),
            Term::Succ(t) => Term::Succ(Box::new(t.expand_numerals())),
            Term::Diag(t) => Term::Diag(Box::new(t.expand_numerals())),
            Term::Add(a, b) => Term::Add(Box::new(a.expand_numerals()), Box::new(b.expand_numerals())),
            Term::Mul(a, b) => Term::Mul(Box::new(a.expand_numerals()), Box::new(b.expand_numerals())),
        }
    }

    /// Rebuilds the term through the smart constructors so that every
    /// efficient-numeral subtree ends up packed.
    pub fn normalize(&self) -> Term {
        match self {
            Term::Zero | Term::Var(_) | Term::Num(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.normalize()),
            Term::Diag(t) => Term::diag(t.normalize()),
            Term::Add(a, b) => Term::add(a.normalize(), b.normalize()),
            Term::Mul(a, b) => Term::mul(a.normalize(), b.normalize()),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Zero | Term::Num(_) => true,
            Term::Succ(t) | Term::Diag(t) => t.is_closed(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    pub fn contains_diag(&self) -> bool {
        match self {
            Term::Diag(_) => true,
            Term::Zero | Term::Var(_) | Term::Num(_) => false,
            Term::Succ(t) => t.contains_diag(),
            Term::Add(a, b) | Term::Mul(a, b) => a.contains_diag() || b.contains_diag(),
        }
    }

    /// If the term is a literal unary numeral `S^n(0)` (or a packed
    /// numeral), its value.
    pub fn as_numeral(&self) -> Option<BigUint> {
        match self {
            Term::Zero => Some(BigUint::zero()),
            Term::Num(n) => Some(n.clone()),
            Term::Succ(t) => t.as_numeral().map(|n| n + 1u32),
            _ => None,
        }
    }

    pub(crate) fn collect_free(&self, depth: u32, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                if *i >= depth {
                    out.insert(i - depth);
                }
            }
            Term::Zero | Term::Num(_) => {}
            Term::Succ(t) | Term::Diag(t) => t.collect_free(depth, out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_free(depth, out);
                b.collect_free(depth, out);
            }
        }
    }

    fn map_vars(&self, f: &mut impl FnMut(u32) -> Term) -> Term {
        match self {
            Term::Var(i) => f(*i),
            Term::Zero | Term::Num(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.map_vars(f)),
            Term::Diag(t) => Term::diag(t.map_vars(f)),
            Term::Add(a, b) => Term::add(a.map_vars(f), b.map_vars(f)),
            Term::Mul(a, b) => Term::mul(a.map_vars(f), b.map_vars(f)),
        }
    }

    /// Adds `by` to every variable index `>= cutoff`.
    pub fn shift(&self, by: u32, cutoff: u32) -> Term {
        if by == 0 {
            return self.clone();
        }
        self.map_vars(&mut |i| Term::Var(if i >= cutoff { i + by } else { i }))
    }

    /// Subtracts `by` from every variable index, or `None` if some
    /// variable is below `by`.
    pub fn lower(&self, by: u32) -> Option<Term> {
        if by == 0 {
            return Some(self.clone());
        }
        let mut free = BTreeSet::new();
        self.collect_free(0, &mut free);
        if free.iter().any(|&i| i < by) {
            return None;
        }
        Some(self.map_vars(&mut |i| Term::Var(i - by)))
    }

    /// Replaces every occurrence of `from` by `to`, rebuilding through the
    /// smart constructors. Packed numerals are atomic.
    pub fn replace_subterm(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Zero | Term::Var(_) | Term::Num(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.replace_subterm(from, to)),
            Term::Diag(t) => Term::diag(t.replace_subterm(from, to)),
            Term::Add(a, b) => Term::add(a.replace_subterm(from, to), b.replace_subterm(from, to)),
            Term::Mul(a, b) => Term::mul(a.replace_subterm(from, to), b.replace_subterm(from, to)),
        }
    }

    fn instantiate_at(&self, depth: u32, t: &Term) -> Term {
        self.map_vars(&mut |i| {
            if i == depth {
                t.shift(depth, 0)
            } else if i > depth {
                Term::Var(i - 1)
            } else {
                Term::Var(i)
            }
        })
    }

    fn replace_at(&self, depth: u32, index: u32, t: &Term) -> Term {
        self.map_vars(&mut |i| {
            if i == index + depth {
                t.shift(depth, 0)
            } else {
                Term::Var(i)
            }
        })
    }

    /// Number of nodes, counting a packed numeral as one.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) | Term::Num(_) => 1,
            Term::Succ(t) | Term::Diag(t) => 1 + t.size(),
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// All subterms (pre-order, packed numerals kept atomic).
    pub fn subterms(&self, out: &mut Vec<Term>) {
        out.push(self.clone());
        match self {
            Term::Zero | Term::Var(_) | Term::Num(_) => {}
            Term::Succ(t) | Term::Diag(t) => t.subterms(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.subterms(out);
                b.subterms(out);
            }
        }
    }

    /// The numeral value of a packed or unary numeral, if it fits in u64.
    pub fn small_value(&self) -> Option<u64> {
        self.as_numeral().and_then(|n| n.to_u64())
    }
}

impl ArithFormula {
    pub fn eq(a: Term, b: Term) -> Self {
        ArithFormula::Eq(a, b)
    }
    pub fn not(f: ArithFormula) -> Self {
        ArithFormula::Not(Box::new(f))
    }
    pub fn and(a: ArithFormula, b: ArithFormula) -> Self {
        ArithFormula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: ArithFormula, b: ArithFormula) -> Self {
        ArithFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: ArithFormula, b: ArithFormula) -> Self {
        ArithFormula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: ArithFormula, b: ArithFormula) -> Self {
        ArithFormula::Iff(Box::new(a), Box::new(b))
    }
    pub fn forall(body: ArithFormula) -> Self {
        ArithFormula::Forall(Box::new(body))
    }
    pub fn exists(body: ArithFormula) -> Self {
        ArithFormula::Exists(Box::new(body))
    }
    pub fn pr(tag: impl Into<String>, t: Term) -> Self {
        ArithFormula::Pr(tag.into(), t)
    }

    /// `a ≤ b` as `∃z (z + a = b)`.
    pub fn le(a: Term, b: Term) -> Self {
        ArithFormula::exists(ArithFormula::Eq(
            Term::add(Term::Var(0), a.shift(1, 0)),
            b.shift(1, 0),
        ))
    }

    /// Free variables, as indices relative to the top level.
    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_free(0, &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, depth: u32, out: &mut BTreeSet<u32>) {
        match self {
            ArithFormula::Eq(a, b) => {
                a.collect_free(depth, out);
                b.collect_free(depth, out);
            }
            ArithFormula::Pr(_, t) => t.collect_free(depth, out),
            ArithFormula::Not(f) => f.collect_free(depth, out),
            ArithFormula::And(a, b)
            | ArithFormula::Or(a, b)
            | ArithFormula::Implies(a, b)
            | ArithFormula::Iff(a, b) => {
                a.collect_free(depth, out);
                b.collect_free(depth, out);
            }
            ArithFormula::Forall(f) | ArithFormula::Exists(f) => f.collect_free(depth + 1, out),
            ArithFormula::BoundedForall(t, f) | ArithFormula::BoundedExists(t, f) => {
                t.collect_free(depth, out);
                f.collect_free(depth + 1, out);
            }
        }
    }

    /// Applies `f(depth, term)` to every term, where `depth` counts the
    /// binders above it.
    pub fn map_terms(&self, f: &mut impl FnMut(u32, &Term) -> Term) -> ArithFormula {
        self.map_terms_at(0, f)
    }

    fn map_terms_at(&self, depth: u32, f: &mut impl FnMut(u32, &Term) -> Term) -> ArithFormula {
        use ArithFormula as F;
        match self {
            F::Eq(a, b) => F::Eq(f(depth, a), f(depth, b)),
            F::Pr(tag, t) => F::Pr(tag.clone(), f(depth, t)),
            F::Not(x) => F::not(x.map_terms_at(depth, f)),
            F::And(a, b) => F::and(a.map_terms_at(depth, f), b.map_terms_at(depth, f)),
            F::Or(a, b) => F::or(a.map_terms_at(depth, f), b.map_terms_at(depth, f)),
            F::Implies(a, b) => F::implies(a.map_terms_at(depth, f), b.map_terms_at(depth, f)),
            F::Iff(a, b) => F::iff(a.map_terms_at(depth, f), b.map_terms_at(depth, f)),
            F::Forall(x) => F::forall(x.map_terms_at(depth + 1, f)),
            F::Exists(x) => F::exists(x.map_terms_at(depth + 1, f)),
            F::BoundedForall(t, x) => {
                F::BoundedForall(f(depth, t), Box::new(x.map_terms_at(depth + 1, f)))
            }
            F::BoundedExists(t, x) => {
                F::BoundedExists(f(depth, t), Box::new(x.map_terms_at(depth + 1, f)))
            }
        }
    }

    pub fn shift(&self, by: u32, cutoff: u32) -> ArithFormula {
        if by == 0 {
            return self.clone();
        }
        self.map_terms(&mut |d, t| t.shift(by, cutoff + d))
    }

    /// Opens a binder: replaces variable 0 by `t` and lowers the other free
    /// variables by one. `t` is read in the context outside the binder.
    pub fn instantiate(&self, t: &Term) -> ArithFormula {
        self.map_terms(&mut |d, u| u.instantiate_at(d, t))
    }

    /// Replaces free variable `index` by `t` without renumbering the rest.
    pub fn replace_var(&self, index: u32, t: &Term) -> ArithFormula {
        self.map_terms(&mut |d, u| u.replace_at(d, index, t))
    }

    /// Replaces every occurrence of the term `from` by `to`; both are read
    /// at top level and shifted under binders.
    pub fn replace_term(&self, from: &Term, to: &Term) -> ArithFormula {
        self.map_terms(&mut |d, u| u.replace_subterm(&from.shift(d, 0), &to.shift(d, 0)))
    }

    /// Rebuilds every term in numeral normal form.
    pub fn normalize(&self) -> ArithFormula {
        self.map_terms(&mut |_, t| t.normalize())
    }

    pub fn contains_pr(&self) -> bool {
        match self {
            ArithFormula::Pr(..) => true,
            ArithFormula::Eq(..) => false,
            ArithFormula::Not(f)
            | ArithFormula::Forall(f)
            | ArithFormula::Exists(f)
            | ArithFormula::BoundedForall(_, f)
            | ArithFormula::BoundedExists(_, f) => f.contains_pr(),
            ArithFormula::And(a, b)
            | ArithFormula::Or(a, b)
            | ArithFormula::Implies(a, b)
            | ArithFormula::Iff(a, b) => a.contains_pr() || b.contains_pr(),
        }
    }

    pub fn contains_diag(&self) -> bool {
        let mut found = false;
        self.map_terms(&mut |_, t| {
            found |= t.contains_diag();
            t.clone()
        });
        found
    }

    /// Number of connective, quantifier and atom nodes.
    pub fn size(&self) -> usize {
        match self {
            ArithFormula::Eq(..) | ArithFormula::Pr(..) => 1,
            ArithFormula::Not(f)
            | ArithFormula::Forall(f)
            | ArithFormula::Exists(f)
            | ArithFormula::BoundedForall(_, f)
            | ArithFormula::BoundedExists(_, f) => 1 + f.size(),
            ArithFormula::And(a, b)
            | ArithFormula::Or(a, b)
            | ArithFormula::Implies(a, b)
            | ArithFormula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Replaces the single free variable of `f` by the closed term `t`,
/// producing a sentence. This is how `F(#A)` is formed from `F(x)`.
pub fn substitute(f: &ArithFormula, t: &Term) -> Result<ArithFormula, SyntaxError> {
    if !t.is_closed() {
        return Err(SyntaxError::OpenTerm);
    }
    let free = f.free_vars();
    if free.len() != 1 || !free.contains(&0) {
        return Err(SyntaxError::NotUnary { free: free.len() });
    }
    Ok(f.instantiate(t))
}

pub fn free_vars(f: &ArithFormula) -> BTreeSet<u32> {
    f.free_vars()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeral_shapes_fold_into_num() {
        let num1 = Term::add(Term::mul(two(), Term::Zero), one());
        assert_eq!(num1, Term::num_u64(1));
        let num2 = Term::mul(two(), num1.clone());
        assert_eq!(num2, Term::num_u64(2));
        let num5 = Term::add(Term::mul(two(), num2), one());
        assert_eq!(num5, Term::num_u64(5));
        // S(S(0)) is a unary numeral and stays unpacked
        assert_eq!(two(), Term::unary(2));
    }

    #[test]
    fn unfold_then_normalize_is_identity() {
        for n in 1..200u64 {
            let t = Term::num_u64(n);
            assert_eq!(t.expand_numerals().normalize(), t);
            assert_eq!(t.unfold().normalize(), t);
        }
    }

    #[test]
    fn substitute_examples() {
        // x = 0, t = 0
        let f = ArithFormula::eq(Term::Var(0), Term::Zero);
        assert_eq!(
            substitute(&f, &Term::Zero).unwrap(),
            ArithFormula::eq(Term::Zero, Term::Zero)
        );
        // E y. y = x, t = S(S(0)): x is index 1 under the binder
        let f = ArithFormula::exists(ArithFormula::eq(Term::Var(0), Term::Var(1)));
        assert_eq!(
            substitute(&f, &Term::unary(2)).unwrap(),
            ArithFormula::exists(ArithFormula::eq(Term::Var(0), Term::unary(2)))
        );
    }

    #[test]
    fn substitute_rejects_bad_arity() {
        let closed = ArithFormula::eq(Term::Zero, Term::Zero);
        assert!(matches!(
            substitute(&closed, &Term::Zero),
            Err(SyntaxError::NotUnary { free: 0 })
        ));
        let two_free = ArithFormula::eq(Term::Var(0), Term::Var(1));
        assert!(substitute(&two_free, &Term::Zero).is_err());
        let f = ArithFormula::eq(Term::Var(0), Term::Zero);
        assert_eq!(substitute(&f, &Term::Var(3)), Err(SyntaxError::OpenTerm));
    }

    #[test]
    fn substitution_can_complete_a_numeral() {
        // (SS0)·x + S0 with x := 3 is num(7)
        let f = ArithFormula::eq(Term::add(Term::mul(two(), Term::Var(0)), one()), Term::Zero);
        let g = substitute(&f, &Term::num_u64(3)).unwrap();
        assert_eq!(g, ArithFormula::eq(Term::num_u64(7), Term::Zero));
    }
}

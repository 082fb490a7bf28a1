//! Truth in the standard model.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::coding::{decode_formula, diag_formula, diag_value, GodelNumber};
use crate::syntax::{classify_arith, is_delta0, ArithFormula, SyntacticClass, Term};

use super::search::{prove_bounded, SearchOutcome};
use super::theory::TheorySpec;

/// Bounded quantifiers with a larger bound are not enumerated.
pub const MAX_BOUNDED_RANGE: u64 = 1 << 22;

/// Total matrix evaluations allowed in one witness search.
const WORK_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("expected a sentence")]
    NotASentence,
    #[error("expected a {expected} sentence, found class {found}")]
    ClassMismatch { expected: SyntacticClass, found: SyntacticClass },
    #[error("bounded quantifier over {0} values is too large to enumerate")]
    BoundTooLarge(String),
}

/// Outcome of a bounded truth search. Witnesses and counterexamples give
/// the values of the leading quantifier block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalVerdict {
    True(Option<Vec<u64>>),
    False(Option<Vec<u64>>),
    Unknown,
}

impl fmt::Display for EvalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals = |v: &Vec<u64>| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        match self {
            EvalVerdict::True(None) => write!(f, "true"),
            EvalVerdict::True(Some(w)) => write!(f, "true (witness {})", vals(w)),
            EvalVerdict::False(None) => write!(f, "false"),
            EvalVerdict::False(Some(c)) => write!(f, "false (counterexample {})", vals(c)),
            EvalVerdict::Unknown => write!(f, "unknown (bound reached)"),
        }
    }
}

/// Three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    fn not(self) -> Self {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    fn and(self, other: Self) -> Self {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    fn or(self, other: Self) -> Self {
        self.not().and(other.not()).not()
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}

/// Value of a term; `env[env.len() - 1 - i]` is variable `i`.
pub fn eval_term(t: &Term, env: &[BigUint]) -> BigUint {
    match t {
        Term::Zero => BigUint::zero(),
        Term::Num(n) => n.clone(),
        Term::Var(i) => env[env.len() - 1 - *i as usize].clone(),
        Term::Succ(x) => eval_term(x, env) + 1u32,
        Term::Add(a, b) => eval_term(a, env) + eval_term(b, env),
        Term::Mul(a, b) => eval_term(a, env) * eval_term(b, env),
        Term::Diag(x) => diag_value(&eval_term(x, env)),
    }
}

/// Value of a closed term.
pub fn eval_closed(t: &Term) -> Option<BigUint> {
    t.is_closed().then(|| eval_term(t, &[]))
}

fn range(bound: &BigUint) -> Result<u64, EvalError> {
    bound
        .to_u64()
        .filter(|&b| b <= MAX_BOUNDED_RANGE)
        .ok_or_else(|| EvalError::BoundTooLarge(format!("{} bits", bound.bits())))
}

fn delta0(f: &ArithFormula, env: &mut Vec<BigUint>) -> Result<bool, EvalError> {
    use ArithFormula as F;
    Ok(match f {
        F::Eq(a, b) => eval_term(a, env) == eval_term(b, env),
        F::Not(x) => !delta0(x, env)?,
        F::And(a, b) => delta0(a, env)? && delta0(b, env)?,
        F::Or(a, b) => delta0(a, env)? || delta0(b, env)?,
        F::Implies(a, b) => !delta0(a, env)? || delta0(b, env)?,
        F::Iff(a, b) => delta0(a, env)? == delta0(b, env)?,
        F::BoundedForall(t, x) | F::BoundedExists(t, x) => {
            let n = range(&eval_term(t, env))?;
            let universal = matches!(f, F::BoundedForall(..));
            let mut result = universal;
            for v in 0..n {
                env.push(BigUint::from(v));
                let r = delta0(x, env);
                env.pop();
                if r? != universal {
                    result = !universal;
                    break;
                }
            }
            result
        }
        F::Forall(_) | F::Exists(_) | F::Pr(..) => unreachable!("checked Δ0"),
    })
}

/// Exact truth of a Δ0 sentence. `diag` terms are evaluated by the coding
/// rule.
pub fn eval_delta0(s: &ArithFormula) -> Result<bool, EvalError> {
    if !s.is_sentence() {
        return Err(EvalError::NotASentence);
    }
    if !is_delta0(s) {
        return Err(EvalError::ClassMismatch { expected: SyntacticClass::Delta0, found: classify_arith(s) });
    }
    delta0(s, &mut Vec::new())
}

/// Enumerates tuples of `k` naturals below `bound` in order of their
/// maximum, calling `visit` until it returns `Some`.
fn search_tuples<T>(
    k: usize,
    bound: u64,
    mut visit: impl FnMut(&[u64]) -> Result<Option<T>, EvalError>,
) -> Result<Option<T>, EvalError> {
    if k == 0 {
        return visit(&[]);
    }
    let mut work = 0u64;
    for m in 0..bound {
        let mut tuple = vec![0u64; k];
        loop {
            if tuple.contains(&m) {
                work += 1;
                if work > WORK_CAP {
                    return Ok(None);
                }
                if let Some(r) = visit(&tuple)? {
                    return Ok(Some(r));
                }
            }
            if !next_tuple(&mut tuple, m) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_tuple(tuple: &mut [u64], max: u64) -> bool {
    for i in (0..tuple.len()).rev() {
        if tuple[i] < max {
            tuple[i] += 1;
            return true;
        }
        tuple[i] = 0;
    }
    false
}

fn leading_block(f: &ArithFormula, existential: bool) -> (usize, &ArithFormula) {
    let mut k = 0;
    let mut m = f;
    loop {
        match (m, existential) {
            (ArithFormula::Exists(b), true) | (ArithFormula::Forall(b), false) => {
                k += 1;
                m = b;
            }
            _ => return (k, m),
        }
    }
}

fn env_of(tuple: &[u64]) -> Vec<BigUint> {
    tuple.iter().map(|&v| BigUint::from(v)).collect()
}

/// Witness search for a Σ1 sentence: values of the leading `∃` block
/// below `bound`. A `Pr` atom is decided through bounded proof search.
pub fn eval_sigma1(s: &ArithFormula, bound: u64) -> Result<EvalVerdict, EvalError> {
    if !s.is_sentence() {
        return Err(EvalError::NotASentence);
    }
    match classify_arith(s) {
        SyntacticClass::Delta0 => {
            return Ok(if eval_delta0(s)? { EvalVerdict::True(None) } else { EvalVerdict::False(None) })
        }
        SyntacticClass::Sigma1 => {}
        found => return Err(EvalError::ClassMismatch { expected: SyntacticClass::Sigma1, found }),
    }
    if let ArithFormula::Pr(tag, t) = s {
        return Ok(match eval_pr(tag, t, &EvalOptions::default()) {
            Truth::True => EvalVerdict::True(None),
            Truth::False => EvalVerdict::False(None),
            Truth::Unknown => EvalVerdict::Unknown,
        });
    }
    if let ArithFormula::Not(inner) = s {
        // ¬Π1: a counterexample of the Π1 sentence is a witness here
        return Ok(match eval_pi1(inner, bound)? {
            EvalVerdict::True(w) => EvalVerdict::False(w),
            EvalVerdict::False(w) => EvalVerdict::True(w),
            EvalVerdict::Unknown => EvalVerdict::Unknown,
        });
    }
    let (k, matrix) = leading_block(s, true);
    let found = search_tuples(k, bound, |tuple| {
        let mut env = env_of(tuple);
        Ok(delta0(matrix, &mut env)?.then(|| tuple.to_vec()))
    })?;
    Ok(found.map_or(EvalVerdict::Unknown, |w| EvalVerdict::True(Some(w))))
}

/// Counterexample search for a Π1 sentence. Truth of a Π1 sentence with
/// an unbounded quantifier is never certified.
pub fn eval_pi1(s: &ArithFormula, bound: u64) -> Result<EvalVerdict, EvalError> {
    if !s.is_sentence() {
        return Err(EvalError::NotASentence);
    }
    match classify_arith(s) {
        SyntacticClass::Delta0 => {
            return Ok(if eval_delta0(s)? { EvalVerdict::True(None) } else { EvalVerdict::False(None) })
        }
        SyntacticClass::Pi1 => {}
        found => return Err(EvalError::ClassMismatch { expected: SyntacticClass::Pi1, found }),
    }
    if let ArithFormula::Not(inner) = s {
        return Ok(match eval_sigma1(inner, bound)? {
            EvalVerdict::True(w) => EvalVerdict::False(w),
            EvalVerdict::False(w) => EvalVerdict::True(w),
            EvalVerdict::Unknown => EvalVerdict::Unknown,
        });
    }
    let (k, matrix) = leading_block(s, false);
    let found = search_tuples(k, bound, |tuple| {
        let mut env = env_of(tuple);
        Ok((!delta0(matrix, &mut env)?).then(|| tuple.to_vec()))
    })?;
    Ok(found.map_or(EvalVerdict::Unknown, |c| EvalVerdict::False(Some(c))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Unbounded quantifiers are searched below this value.
    pub bound: u64,
    /// Proof height used when deciding `Pr` atoms.
    pub proof_depth: u32,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { bound: 10_000, proof_depth: 6 }
    }
}

/// The sentence a closed term names, reading `diag(n)` symbolically so that
/// large codes need not be factored.
pub fn denoted_sentence(t: &Term) -> Option<ArithFormula> {
    let f = match t {
        Term::Diag(u) => diag_formula(&eval_closed(u)?)?,
        _ => decode_formula(&GodelNumber(eval_closed(t)?)).ok()?,
    };
    f.is_sentence().then_some(f)
}

/// `Pr[tag](t)`: true when a proof is found, false when `t` does not name
/// a sentence, unknown otherwise. Tags without a built-in theory are
/// searched with PA, whose theorems every listed extension shares.
pub fn eval_pr(tag: &str, t: &Term, opts: &EvalOptions) -> Truth {
    let Some(sentence) = denoted_sentence(t) else { return Truth::False };
    let theory = TheorySpec::by_name(tag).unwrap_or_else(|| TheorySpec::pa(Vec::new()));
    match prove_bounded(&theory, &sentence, opts.proof_depth) {
        SearchOutcome::Proved(_) => Truth::True,
        SearchOutcome::Unknown => Truth::Unknown,
    }
}

struct Kleene<'a> {
    opts: &'a EvalOptions,
    work: u64,
}

impl Kleene<'_> {
    fn eval(&mut self, f: &ArithFormula, env: &mut Vec<BigUint>) -> Truth {
        use ArithFormula as F;
        self.work += 1;
        if self.work > WORK_CAP {
            return Truth::Unknown;
        }
        match f {
            F::Eq(a, b) => Truth::from_bool(eval_term(a, env) == eval_term(b, env)),
            F::Pr(tag, t) => match t.is_closed() {
                true => eval_pr(tag, t, self.opts),
                false => {
                    let value = Term::num(eval_term(t, env));
                    eval_pr(tag, &value, self.opts)
                }
            },
            F::Not(x) => self.eval(x, env).not(),
            F::And(a, b) => self.eval(a, env).and(self.eval(b, env)),
            F::Or(a, b) => self.eval(a, env).or(self.eval(b, env)),
            F::Implies(a, b) => self.eval(a, env).not().or(self.eval(b, env)),
            F::Iff(a, b) => {
                let (x, y) = (self.eval(a, env), self.eval(b, env));
                x.and(y).or(x.not().and(y.not()))
            }
            F::BoundedForall(t, x) | F::BoundedExists(t, x) => {
                let Ok(n) = range(&eval_term(t, env)) else { return Truth::Unknown };
                self.quantify(x, env, n, matches!(f, F::BoundedForall(..)), true)
            }
            F::Forall(x) => self.quantify(x, env, self.opts.bound, true, false),
            F::Exists(x) => self.quantify(x, env, self.opts.bound, false, false),
        }
    }

    fn quantify(&mut self, body: &ArithFormula, env: &mut Vec<BigUint>, n: u64, universal: bool, exhaustive: bool) -> Truth {
        let decisive = if universal { Truth::False } else { Truth::True };
        let mut unknown = !exhaustive;
        for v in 0..n {
            env.push(BigUint::from(v));
            let r = self.eval(body, env);
            env.pop();
            if r == decisive {
                return decisive;
            }
            unknown |= r == Truth::Unknown;
            if self.work > WORK_CAP {
                return Truth::Unknown;
            }
        }
        if unknown {
            Truth::Unknown
        } else {
            decisive.not()
        }
    }
}

/// Three-valued truth of an arbitrary sentence: exact on Δ0 parts, bounded
/// witness search for unbounded quantifiers, and bounded proof search for
/// `Pr` atoms.
pub fn eval_sentence(s: &ArithFormula, opts: &EvalOptions) -> Result<Truth, EvalError> {
    if !s.is_sentence() {
        return Err(EvalError::NotASentence);
    }
    Ok(Kleene { opts, work: 0 }.eval(s, &mut Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::godel_term;
    use crate::syntax::parse_arith;

    fn p(s: &str) -> ArithFormula {
        parse_arith(s).unwrap()
    }

    #[test]
    fn delta0_examples() {
        assert!(eval_delta0(&p("0=0")).unwrap());
        assert!(eval_delta0(&p("E x < S(S(S(S(S(0))))). x + x = S(S(S(S(0))))")).unwrap());
        let g = ArithFormula::Eq(godel_term(&p("0=0")), Term::num_u64(2430));
        assert!(eval_delta0(&g).unwrap());
        assert!(eval_delta0(&p("E x. x = 0")).is_err());
    }

    #[test]
    fn sigma_pi_examples() {
        assert_eq!(eval_sigma1(&p("E x. x = S(0)"), 10).unwrap(), EvalVerdict::True(Some(vec![1])));
        assert_eq!(eval_pi1(&p("A x. x = x"), 10).unwrap(), EvalVerdict::Unknown);
        assert_eq!(eval_pi1(&p("A x. x = 0"), 10).unwrap(), EvalVerdict::False(Some(vec![1])));
        assert!(eval_pi1(&p("E x. x = 0"), 10).is_err());
    }

    #[test]
    fn tuple_search_finds_smallest_max() {
        let v = eval_sigma1(&p("E x. E y. x * y = S(S(S(S(S(S(0)))))) & S(0) + x = y"), 100).unwrap();
        assert_eq!(v, EvalVerdict::True(Some(vec![2, 3])));
    }

    #[test]
    fn pr_atoms() {
        let refl = godel_term(&p("S(0) = S(0)"));
        assert_eq!(eval_pr("Q", &refl, &EvalOptions::default()), Truth::True);
        assert_eq!(eval_pr("Q", &Term::num_u64(7), &EvalOptions::default()), Truth::False);
        let bad = godel_term(&p("0 = S(0)"));
        assert_eq!(eval_pr("Q", &bad, &EvalOptions::default()), Truth::Unknown);
    }

    #[test]
    fn kleene_evaluation() {
        let opts = EvalOptions { bound: 50, proof_depth: 4 };
        assert_eq!(eval_sentence(&p("E x. x + x = S(S(0))"), &opts).unwrap(), Truth::True);
        assert_eq!(eval_sentence(&p("A x. x + 0 = x"), &opts).unwrap(), Truth::Unknown);
        assert_eq!(eval_sentence(&p("A x. x = S(0)"), &opts).unwrap(), Truth::False);
        assert_eq!(eval_sentence(&p("A x < S(S(0)). x * 0 = 0"), &opts).unwrap(), Truth::True);
    }
}

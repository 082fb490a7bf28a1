//! Prime-power Gödel numbering.
//!
//! A formula is first serialized to its canonical, fully parenthesized token
//! stream `t1 … tn`; its code is `p1^t1 · … · pn^tn` over the first `n`
//! primes. Token codes:
//!
//! | token | code | token | code |
//! |-------|------|-------|------|
//! | `0`   | 1    | `&`   | 7    |
//! | `S`   | 2    | `\|`  | 8    |
//! | `+`   | 3    | `->`  | 9    |
//! | `*`   | 4    | `<->` | 10   |
//! | `=`   | 5    | `A`   | 11   |
//! | `~`   | 6    | `E`   | 12   |
//! | `(`   | 13   | `)`   | 14   |
//! | `diag`| 15   | `Pr`  | 16   |
//! | variable with de Bruijn index `i` | `17 + i` | | |
//!
//! Canonical shapes: `S(t)` is `2 ( t )`, `a + b` is `( a + b )`,
//! `a = b` is `a = b`, `~φ` is `~ ( φ )`, `φ & ψ` is `( φ & ψ )`, `∀φ` is
//! `A ( φ )`, `∀x<t. φ` is `A ( t ) ( φ )`, and `Pr[tag](t)` is
//! `Pr ( c1 … ck ) ( t )` where each tag byte `b` is written with code
//! `17 + b`. The position inside the first `Pr` group tells tag bytes apart
//! from variables.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::syntax::{ArithFormula, Term};

pub mod tok {
    pub const ZERO: u32 = 1;
    pub const SUCC: u32 = 2;
    pub const PLUS: u32 = 3;
    pub const TIMES: u32 = 4;
    pub const EQ: u32 = 5;
    pub const NOT: u32 = 6;
    pub const AND: u32 = 7;
    pub const OR: u32 = 8;
    pub const IMPLIES: u32 = 9;
    pub const IFF: u32 = 10;
    pub const FORALL: u32 = 11;
    pub const EXISTS: u32 = 12;
    pub const LPAREN: u32 = 13;
    pub const RPAREN: u32 = 14;
    pub const DIAG: u32 = 15;
    pub const PR: u32 = 16;
    pub const VAR_BASE: u32 = 17;
}

/// The Gödel number of a formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GodelNumber(pub BigUint);

impl GodelNumber {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for GodelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodingError {
    #[error("not a code: {0}")]
    NotACode(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumeralStyle {
    Unary,
    Efficient,
}

const SS0: [u32; 7] = [tok::SUCC, tok::LPAREN, tok::SUCC, tok::LPAREN, tok::ZERO, tok::RPAREN, tok::RPAREN];
const S0: [u32; 4] = [tok::SUCC, tok::LPAREN, tok::ZERO, tok::RPAREN];

/// Tokens of the expanded efficient numeral of `n`, produced without
/// recursion so that numerals of very large codes are cheap to stream.
fn numeral_tokens(n: &BigUint, out: &mut Vec<u32>) {
    let bits = n.bits();
    // n_j = n >> j for j < bits; the chain ends at num(0) = 0.
    for j in (0..bits).rev().map(|j| bits - 1 - j) {
        let odd = n.bit(j);
        if odd {
            out.push(tok::LPAREN);
        }
        out.push(tok::LPAREN);
        out.extend_from_slice(&SS0);
        out.push(tok::TIMES);
    }
    out.push(tok::ZERO);
    for j in (0..bits).rev() {
        out.push(tok::RPAREN);
        if n.bit(j) {
            out.push(tok::PLUS);
            out.extend_from_slice(&S0);
            out.push(tok::RPAREN);
        }
    }
}

fn term_tokens(t: &Term, out: &mut Vec<u32>) {
    match t {
        Term::Zero => out.push(tok::ZERO),
        Term::Num(n) => numeral_tokens(n, out),
        Term::Var(i) => out.push(tok::VAR_BASE + i),
        Term::Succ(x) => {
            out.extend([tok::SUCC, tok::LPAREN]);
            term_tokens(x, out);
            out.push(tok::RPAREN);
        }
        Term::Diag(x) => {
            out.extend([tok::DIAG, tok::LPAREN]);
            term_tokens(x, out);
            out.push(tok::RPAREN);
        }
        Term::Add(a, b) | Term::Mul(a, b) => {
            out.push(tok::LPAREN);
            term_tokens(a, out);
            out.push(if matches!(t, Term::Add(..)) { tok::PLUS } else { tok::TIMES });
            term_tokens(b, out);
            out.push(tok::RPAREN);
        }
    }
}

fn formula_tokens(f: &ArithFormula, out: &mut Vec<u32>) {
    use ArithFormula as F;
    let group = |g: &ArithFormula, out: &mut Vec<u32>| {
        out.push(tok::LPAREN);
        formula_tokens(g, out);
        out.push(tok::RPAREN);
    };
    match f {
        F::Eq(a, b) => {
            term_tokens(a, out);
            out.push(tok::EQ);
            term_tokens(b, out);
        }
        F::Not(x) => {
            out.push(tok::NOT);
            group(x, out);
        }
        F::And(a, b) | F::Or(a, b) | F::Implies(a, b) | F::Iff(a, b) => {
            let op = match f {
                F::And(..) => tok::AND,
                F::Or(..) => tok::OR,
                F::Implies(..) => tok::IMPLIES,
                _ => tok::IFF,
            };
            out.push(tok::LPAREN);
            formula_tokens(a, out);
            out.push(op);
            formula_tokens(b, out);
            out.push(tok::RPAREN);
        }
        F::Forall(x) | F::Exists(x) => {
            out.push(if matches!(f, F::Forall(_)) { tok::FORALL } else { tok::EXISTS });
            group(x, out);
        }
        F::BoundedForall(t, x) | F::BoundedExists(t, x) => {
            out.push(if matches!(f, F::BoundedForall(..)) { tok::FORALL } else { tok::EXISTS });
            out.push(tok::LPAREN);
            term_tokens(t, out);
            out.push(tok::RPAREN);
            group(x, out);
        }
        F::Pr(tag, t) => {
            out.extend([tok::PR, tok::LPAREN]);
            out.extend(tag.bytes().map(|b| tok::VAR_BASE + b as u32));
            out.extend([tok::RPAREN, tok::LPAREN]);
            term_tokens(t, out);
            out.push(tok::RPAREN);
        }
    }
}

/// The canonical token stream of a formula.
pub fn tokens(f: &ArithFormula) -> Vec<u32> {
    let mut out = Vec::new();
    formula_tokens(f, &mut out);
    out
}

pub fn term_token_stream(t: &Term) -> Vec<u32> {
    let mut out = Vec::new();
    term_tokens(t, &mut out);
    out
}

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let nf = n.max(6) as f64;
    let mut limit = (nf * (nf.ln() + nf.ln().ln())) as usize + 16;
    loop {
        let primes = sieve(limit);
        if primes.len() >= n {
            return primes[..n].to_vec();
        }
        limit *= 2;
    }
}

fn sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn product(mut factors: Vec<BigUint>) -> BigUint {
    if factors.is_empty() {
        return BigUint::one();
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len().div_ceil(2));
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        factors = next;
    }
    factors.pop().expect("nonempty")
}

/// `∏ p_i^{t_i}` over the first primes.
pub fn encode_tokens(stream: &[u32]) -> BigUint {
    let primes = first_primes(stream.len());
    let factors = stream
        .iter()
        .zip(primes)
        .map(|(&t, p)| BigUint::from(p).pow(t))
        .collect();
    product(factors)
}

pub fn encode_formula(f: &ArithFormula) -> GodelNumber {
    GodelNumber(encode_tokens(&tokens(f)))
}

/// Divides out every factor `p` of `n` and returns how many there were.
/// Works in chunks of `p^k < 2^64`: when `p^k` does not divide `n`, the
/// valuation is that of `n mod p^k`.
fn strip_prime(n: &mut BigUint, p: u64) -> u32 {
    let mut k = 1u32;
    let mut pk = p;
    while let Some(next) = pk.checked_mul(p) {
        pk = next;
        k += 1;
    }
    let mut e = 0;
    loop {
        let r = (&*n % pk).to_u64().expect("remainder below a u64 modulus");
        if r == 0 {
            *n /= pk;
            e += k;
            continue;
        }
        let (mut v, mut r, mut pv) = (0u32, r, 1u64);
        while r % p == 0 {
            r /= p;
            v += 1;
            pv *= p;
        }
        if v > 0 {
            *n /= pv;
        }
        return e + v;
    }
}

/// Recovers the token stream from a code: the exponents of 2, 3, 5, …
/// with no gaps and no other prime factors.
pub fn factor_tokens(n: &BigUint) -> Result<Vec<u32>, CodingError> {
    if n.is_zero() {
        return Err(CodingError::NotACode("0 has no factorization".into()));
    }
    if n.is_one() {
        return Err(CodingError::NotACode("1 encodes the empty token stream".into()));
    }
    let mut rest = n.clone();
    let mut stream = Vec::new();
    let mut primes = first_primes(64);
    let mut idx = 0;
    while !rest.is_one() {
        if idx == primes.len() {
            primes = first_primes(primes.len() * 2);
        }
        let p = primes[idx];
        let e = strip_prime(&mut rest, p);
        if e == 0 {
            return Err(CodingError::NotACode(format!(
                "exponent gap at prime {p} (position {})",
                idx + 1
            )));
        }
        stream.push(e);
        idx += 1;
    }
    Ok(stream)
}

enum Node {
    T(Term),
    F(ArithFormula),
}

struct TokenParser<'a> {
    toks: &'a [u32],
    pos: usize,
}

impl TokenParser<'_> {
    fn err(&self, msg: &str) -> CodingError {
        CodingError::NotACode(format!("{msg} at token {}", self.pos + 1))
    }

    fn next(&mut self) -> Result<u32, CodingError> {
        let t = *self.toks.get(self.pos).ok_or_else(|| self.err("unexpected end of token stream"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: u32) -> Result<(), CodingError> {
        if self.next()? == t {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.err(&format!("expected token {t}")))
        }
    }

    fn term(&mut self) -> Result<Term, CodingError> {
        match self.primary()? {
            Node::T(t) => Ok(t),
            Node::F(_) => Err(self.err("expected a term")),
        }
    }

    fn formula(&mut self) -> Result<ArithFormula, CodingError> {
        match self.any()? {
            Node::F(f) => Ok(f),
            Node::T(_) => Err(self.err("expected a formula")),
        }
    }

    fn any(&mut self) -> Result<Node, CodingError> {
        let node = self.primary()?;
        if let Node::T(lhs) = node {
            if self.toks.get(self.pos) == Some(&tok::EQ) {
                self.pos += 1;
                let rhs = self.term()?;
                return Ok(Node::F(ArithFormula::Eq(lhs, rhs)));
            }
            return Ok(Node::T(lhs));
        }
        Ok(node)
    }

    fn primary(&mut self) -> Result<Node, CodingError> {
        use ArithFormula as F;
        let t = self.next()?;
        Ok(match t {
            tok::ZERO => Node::T(Term::Zero),
            tok::SUCC | tok::DIAG => {
                self.expect(tok::LPAREN)?;
                let x = self.term()?;
                self.expect(tok::RPAREN)?;
                Node::T(if t == tok::SUCC { Term::succ(x) } else { Term::diag(x) })
            }
            tok::NOT => {
                self.expect(tok::LPAREN)?;
                let x = self.formula()?;
                self.expect(tok::RPAREN)?;
                Node::F(F::not(x))
            }
            tok::FORALL | tok::EXISTS => {
                self.expect(tok::LPAREN)?;
                let inner = self.any()?;
                self.expect(tok::RPAREN)?;
                let universal = t == tok::FORALL;
                match inner {
                    Node::F(body) => Node::F(if universal { F::forall(body) } else { F::exists(body) }),
                    Node::T(bound) => {
                        self.expect(tok::LPAREN)?;
                        let body = Box::new(self.formula()?);
                        self.expect(tok::RPAREN)?;
                        Node::F(if universal {
                            F::BoundedForall(bound, body)
                        } else {
                            F::BoundedExists(bound, body)
                        })
                    }
                }
            }
            tok::PR => {
                self.expect(tok::LPAREN)?;
                let mut tag = String::new();
                while let Some(&c) = self.toks.get(self.pos) {
                    if c == tok::RPAREN {
                        break;
                    }
                    let byte = c
                        .checked_sub(tok::VAR_BASE)
                        .and_then(|b| u8::try_from(b).ok())
                        .filter(|b| b.is_ascii_alphanumeric() || *b == b'_')
                        .ok_or_else(|| self.err("invalid theory tag character"))?;
                    tag.push(byte as char);
                    self.pos += 1;
                }
                if !tag.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    return Err(self.err("theory tag must start with a letter"));
                }
                self.expect(tok::RPAREN)?;
                self.expect(tok::LPAREN)?;
                let arg = self.term()?;
                self.expect(tok::RPAREN)?;
                Node::F(F::Pr(tag, arg))
            }
            tok::LPAREN => {
                let lhs = self.any()?;
                let op = self.next()?;
                let node = match (op, lhs) {
                    (tok::PLUS, Node::T(a)) => Node::T(Term::add(a, self.term()?)),
                    (tok::TIMES, Node::T(a)) => Node::T(Term::mul(a, self.term()?)),
                    (tok::AND..=tok::IFF, Node::F(a)) => {
                        let b = self.formula()?;
                        Node::F(match op {
                            tok::AND => F::and(a, b),
                            tok::OR => F::or(a, b),
                            tok::IMPLIES => F::implies(a, b),
                            _ => F::iff(a, b),
                        })
                    }
                    _ => {
                        self.pos -= 1;
                        return Err(self.err("operator does not fit its operands"));
                    }
                };
                self.expect(tok::RPAREN)?;
                node
            }
            v if v >= tok::VAR_BASE => Node::T(Term::Var(v - tok::VAR_BASE)),
            _ => {
                self.pos -= 1;
                return Err(self.err(&format!("token {t} cannot start a term or formula")));
            }
        })
    }
}

/// Parses a canonical token stream back into a formula.
pub fn parse_tokens(stream: &[u32]) -> Result<ArithFormula, CodingError> {
    let mut p = TokenParser { toks: stream, pos: 0 };
    let f = p.formula()?;
    if p.pos != stream.len() {
        return Err(p.err("trailing tokens"));
    }
    if tokens(&f) != stream {
        return Err(CodingError::NotACode("token stream is not in canonical form".into()));
    }
    Ok(f)
}

pub fn decode_formula(n: &GodelNumber) -> Result<ArithFormula, CodingError> {
    parse_tokens(&factor_tokens(&n.0)?)
}

/// `S^n(0)` or the efficient numeral `num(n)` (packed).
pub fn numeral(n: u64, style: NumeralStyle) -> Term {
    match style {
        NumeralStyle::Unary => Term::unary(n),
        NumeralStyle::Efficient => Term::num_u64(n),
    }
}

/// The standard term `#f`: the efficient numeral of `f`'s Gödel number.
pub fn godel_term(f: &ArithFormula) -> Term {
    Term::num(encode_formula(f).0)
}

/// Number of canonical tokens of a term, computed without expanding
/// packed numerals.
pub fn term_token_count(t: &Term) -> u64 {
    match t {
        Term::Zero | Term::Var(_) => 1,
        Term::Num(n) => {
            let bits = n.bits();
            let ones = n.count_ones();
            // even level: ( SS0 * … ) = 10 tokens, odd adds ( … + S0 ) = 7 more
            1 + bits * 10 + ones * 7
        }
        Term::Succ(x) | Term::Diag(x) => 3 + term_token_count(x),
        Term::Add(a, b) | Term::Mul(a, b) => 3 + term_token_count(a) + term_token_count(b),
    }
}

/// The value of `diag(n)`: the code of `φ(num(n))` when `n` codes a formula
/// `φ` whose only free variable is index 0, and 0 otherwise.
pub fn diag_value(n: &BigUint) -> BigUint {
    diag_formula(n).map_or_else(BigUint::zero, |f| encode_formula(&f).0)
}

/// The formula denoted by `diag(n)`, if `n` codes a unary formula.
pub fn diag_formula(n: &BigUint) -> Option<ArithFormula> {
    let f = decode_formula(&GodelNumber(n.clone())).ok()?;
    crate::syntax::substitute(&f, &Term::num(n.clone())).ok()
}

/// Small helper for tests and reports.
pub fn code_u64(f: &ArithFormula) -> Option<u64> {
    encode_formula(f).0.to_u64()
}

//! Recursive-descent parsers for the arithmetic and modal surface syntax.
//!
//! Arithmetic:
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" iff)?
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | quant | "(" formula ")" | atom
//! quant   := ("A" | "E") ident ("<" term)? "." formula
//! atom    := "Pr[" tag "](" term ")" | term "=" term | term "<=" term
//! term    := prod ("+" prod)*
//! prod    := prim ("*" prim)*
//! prim    := digits | "S(" term ")" | "diag(" term ")" | ident | "(" term ")"
//! ```
//!
//! A decimal literal `n` stands for the efficient numeral of `n`.
//!
//! Modal: `#F`, `#T`, letters, `~`, `[]`, `<>` (prefix) and the same
//! binary connectives with the same precedences.

use num_bigint::BigUint;

use super::{ArithFormula, ModalFormula, SyntaxError, Term};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn eat_any(&mut self, toks: &[&str]) -> bool {
        toks.iter().any(|t| self.eat(t))
    }

    /// Eats a keyword only when it is not the prefix of a longer word.
    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if let Some(after) = rest.strip_prefix(kw) {
            let next = after.chars().next();
            if !next.is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                self.pos += kw.len();
                return true;
            }
        }
        false
    }

    fn expect(&mut self, tok: &str) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    fn error(&mut self, msg: impl Into<String>) -> SyntaxError {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of input".to_string(),
        };
        SyntaxError::Parse { pos: self.pos, msg: format!("{}{found}", msg.into()) }
    }

    /// A lowercase-initial identifier; `diag` is reserved.
    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_lowercase() => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
            .map_or(rest.len(), |(i, _)| i);
        let name = &rest[..end];
        if name == "diag" {
            return None;
        }
        self.pos += end;
        Some(name.to_string())
    }

    fn tag(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        if end == 0 || !rest.as_bytes()[0].is_ascii_alphabetic() {
            return None;
        }
        self.pos += end;
        Some(rest[..end].to_string())
    }

    fn digits(&mut self) -> Option<BigUint> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        BigUint::parse_bytes(&rest.as_bytes()[..end], 10)
    }
}

struct ArithParser<'a> {
    cur: Cursor<'a>,
    /// Names in scope; the last entry is de Bruijn index 0.
    scope: Vec<String>,
}

impl ArithParser<'_> {
    fn formula(&mut self) -> Result<ArithFormula, SyntaxError> {
        let lhs = self.imp()?;
        if self.cur.eat_any(&["<->", "↔"]) {
            let rhs = self.formula()?;
            return Ok(ArithFormula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<ArithFormula, SyntaxError> {
        let lhs = self.or()?;
        if self.cur.eat_any(&["->", "→"]) {
            let rhs = self.imp()?;
            return Ok(ArithFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<ArithFormula, SyntaxError> {
        let mut lhs = self.and()?;
        while self.cur.eat_any(&["|", "∨"]) {
            lhs = ArithFormula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<ArithFormula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.cur.eat_any(&["&", "∧"]) {
            lhs = ArithFormula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ArithFormula, SyntaxError> {
        if self.cur.eat_any(&["~", "¬"]) {
            return Ok(ArithFormula::not(self.unary()?));
        }
        if self.cur.eat_keyword("A") || self.cur.eat("∀") {
            return self.quantifier(true);
        }
        if self.cur.eat_keyword("E") || self.cur.eat("∃") {
            return self.quantifier(false);
        }
        if self.cur.peek() == Some('(') {
            let start = self.cur.pos;
            let atom_err = match self.atom() {
                Ok(f) => return Ok(f),
                Err(e) => e,
            };
            self.cur.pos = start;
            self.cur.expect("(")?;
            let inner = self.formula().and_then(|f| {
                self.cur.expect(")")?;
                Ok(f)
            });
            return inner.map_err(|e| farther(e, atom_err));
        }
        self.atom()
    }

    fn quantifier(&mut self, universal: bool) -> Result<ArithFormula, SyntaxError> {
        let name = self
            .cur
            .ident()
            .ok_or_else(|| self.cur.error("expected a variable name after quantifier"))?;
        let bound = if self.cur.eat("<") { Some(self.term()?) } else { None };
        self.cur.expect(".")?;
        self.scope.push(name);
        let body = self.formula();
        self.scope.pop();
        let body = Box::new(body?);
        Ok(match (universal, bound) {
            (true, None) => ArithFormula::Forall(body),
            (false, None) => ArithFormula::Exists(body),
            (true, Some(b)) => ArithFormula::BoundedForall(b, body),
            (false, Some(b)) => ArithFormula::BoundedExists(b, body),
        })
    }

    fn atom(&mut self) -> Result<ArithFormula, SyntaxError> {
        if self.cur.eat_keyword("Pr") {
            self.cur.expect("[")?;
            let tag = self.cur.tag().ok_or_else(|| self.cur.error("expected a theory tag"))?;
            self.cur.expect("]")?;
            self.cur.expect("(")?;
            let t = self.term()?;
            self.cur.expect(")")?;
            return Ok(ArithFormula::Pr(tag, t));
        }
        let lhs = self.term()?;
        if self.cur.eat_any(&["<=", "≤"]) {
            let rhs = self.term()?;
            return Ok(ArithFormula::le(lhs, rhs));
        }
        if self.cur.eat("=") {
            let rhs = self.term()?;
            return Ok(ArithFormula::Eq(lhs, rhs));
        }
        Err(self.cur.error("expected `=` or `<=`"))
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.product()?;
        while self.cur.eat("+") {
            lhs = Term::add(lhs, self.product()?);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.primary()?;
        while self.cur.eat_any(&["*", "·"]) {
            lhs = Term::mul(lhs, self.primary()?);
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Term, SyntaxError> {
        if let Some(n) = self.cur.digits() {
            return Ok(Term::num(n));
        }
        if self.cur.eat_keyword("S") {
            self.cur.expect("(")?;
            let t = self.term()?;
            self.cur.expect(")")?;
            return Ok(Term::succ(t));
        }
        if self.cur.eat_keyword("diag") {
            self.cur.expect("(")?;
            let t = self.term()?;
            self.cur.expect(")")?;
            return Ok(Term::diag(t));
        }
        if self.cur.eat("(") {
            let t = self.term()?;
            self.cur.expect(")")?;
            return Ok(t);
        }
        let pos = {
            self.cur.skip_ws();
            self.cur.pos
        };
        match self.cur.ident() {
            Some(name) => match self.scope.iter().rev().position(|n| *n == name) {
                Some(i) => Ok(Term::Var(i as u32)),
                None => Err(SyntaxError::UnboundVariable { name, pos }),
            },
            None => Err(self.cur.error("expected a term")),
        }
    }
}

fn farther(a: SyntaxError, b: SyntaxError) -> SyntaxError {
    fn pos(e: &SyntaxError) -> usize {
        match e {
            SyntaxError::Parse { pos, .. } | SyntaxError::UnboundVariable { pos, .. } => *pos,
            _ => 0,
        }
    }
    if pos(&b) > pos(&a) {
        b
    } else {
        a
    }
}

/// Parses an arithmetic sentence. Every variable must be bound.
pub fn parse_arith(text: &str) -> Result<ArithFormula, SyntaxError> {
    parse_arith_open(text, &[])
}

/// Parses an arithmetic formula whose free variables are `free`;
/// `free[0]` becomes de Bruijn index 0.
pub fn parse_arith_open(text: &str, free: &[&str]) -> Result<ArithFormula, SyntaxError> {
    let mut p = ArithParser {
        cur: Cursor::new(text),
        scope: free.iter().rev().map(|s| s.to_string()).collect(),
    };
    let f = p.formula()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses a closed term.
pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = ArithParser { cur: Cursor::new(text), scope: Vec::new() };
    let t = p.term()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected trailing input"));
    }
    Ok(t)
}

struct ModalParser<'a> {
    cur: Cursor<'a>,
}

impl ModalParser<'_> {
    fn formula(&mut self) -> Result<ModalFormula, SyntaxError> {
        let lhs = self.imp()?;
        if self.cur.eat_any(&["<->", "↔"]) {
            let rhs = self.formula()?;
            return Ok(ModalFormula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<ModalFormula, SyntaxError> {
        let lhs = self.or()?;
        if self.cur.eat_any(&["->", "→"]) {
            let rhs = self.imp()?;
            return Ok(ModalFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<ModalFormula, SyntaxError> {
        let mut lhs = self.and()?;
        while self.cur.eat_any(&["|", "∨"]) {
            lhs = ModalFormula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<ModalFormula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.cur.eat_any(&["&", "∧"]) {
            lhs = ModalFormula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ModalFormula, SyntaxError> {
        if self.cur.eat_any(&["~", "¬"]) {
            return Ok(ModalFormula::not(self.unary()?));
        }
        if self.cur.eat_any(&["[]", "□"]) {
            return Ok(ModalFormula::boxed(self.unary()?));
        }
        if self.cur.eat_any(&["<>", "◇"]) {
            return Ok(ModalFormula::diamond(self.unary()?));
        }
        if self.cur.eat("(") {
            let f = self.formula()?;
            self.cur.expect(")")?;
            return Ok(f);
        }
        if self.cur.eat_any(&["#F", "⊥"]) {
            return Ok(ModalFormula::Bottom);
        }
        if self.cur.eat_any(&["#T", "⊤"]) {
            return Ok(ModalFormula::Top);
        }
        match self.cur.ident() {
            Some(name) => Ok(ModalFormula::Letter(name)),
            None => Err(self.cur.error("expected a modal formula")),
        }
    }
}

pub fn parse_modal(text: &str) -> Result<ModalFormula, SyntaxError> {
    let mut p = ModalParser { cur: Cursor::new(text) };
    let f = p.formula()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ArithFormula as F;
    use ModalFormula as M;

    #[test]
    fn arith_examples() {
        assert_eq!(parse_arith("0=0").unwrap(), F::Eq(Term::Zero, Term::Zero));
        assert_eq!(
            parse_arith("A x. x = x").unwrap(),
            F::forall(F::Eq(Term::Var(0), Term::Var(0)))
        );
        let one = Term::succ(Term::Zero);
        assert_eq!(
            parse_arith("E x. S(0) + S(0) = x").unwrap(),
            F::exists(F::Eq(Term::add(one.clone(), one), Term::Var(0)))
        );
    }

    #[test]
    fn modal_examples() {
        assert_eq!(
            parse_modal("[] #F -> #F").unwrap(),
            M::implies(M::boxed(M::Bottom), M::Bottom)
        );
        let p = M::letter("p");
        assert_eq!(
            parse_modal("[]([]p -> p) -> []p").unwrap(),
            M::implies(M::boxed(M::implies(M::boxed(p.clone()), p.clone())), M::boxed(p.clone()))
        );
        assert_eq!(parse_modal("<> p").unwrap(), M::not(M::boxed(M::not(p))));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_modal("p & q | r -> s -> t <-> u").unwrap();
        let (p, q, r, s, t, u) = ("p", "q", "r", "s", "t", "u");
        let l = M::letter;
        let expected = M::iff(
            M::implies(
                M::or(M::and(l(p), l(q)), l(r)),
                M::implies(l(s), l(t)),
            ),
            l(u),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn unbound_variable_is_reported() {
        assert_eq!(
            parse_arith("x = 0"),
            Err(SyntaxError::UnboundVariable { name: "x".into(), pos: 0 })
        );
        let f = parse_arith_open("x = 0", &["x"]).unwrap();
        assert_eq!(f, F::Eq(Term::Var(0), Term::Zero));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_arith("0 = ") {
            Err(SyntaxError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_modal("p &").is_err());
        assert!(parse_modal("p q").is_err());
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let f = parse_arith("(0 + 0) = 0 & (0 = 0)").unwrap();
        assert_eq!(
            f,
            F::and(
                F::Eq(Term::add(Term::Zero, Term::Zero), Term::Zero),
                F::Eq(Term::Zero, Term::Zero)
            )
        );
    }

    #[test]
    fn le_is_sugar() {
        let f = parse_arith("S(0) <= S(S(0))").unwrap();
        assert_eq!(f, F::le(Term::unary(1), Term::unary(2)));
        assert_eq!(
            f,
            F::exists(F::Eq(Term::add(Term::Var(0), Term::unary(1)), Term::unary(2)))
        );
    }

    #[test]
    fn pr_atoms_and_decimal_numerals() {
        let f = parse_arith("~Pr[PA](diag(2430))").unwrap();
        assert_eq!(f, F::not(F::Pr("PA".into(), Term::diag(Term::num_u64(2430)))));
    }

    #[test]
    fn bounded_quantifier_bound_is_outside_scope() {
        let f = parse_arith_open("A y < x. y = x", &["x"]).unwrap();
        assert_eq!(
            f,
            F::BoundedForall(Term::Var(0), Box::new(F::Eq(Term::Var(0), Term::Var(1))))
        );
    }
}

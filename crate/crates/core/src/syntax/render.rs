use std::fmt;

use super::{ArithFormula, ModalFormula, Term};

const NAME_POOL: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

fn pool_name(i: usize) -> String {
    let base = NAME_POOL[i % NAME_POOL.len()];
    match i / NAME_POOL.len() {
        0 => base.to_string(),
        k => format!("{base}{k}"),
    }
}

/// Default names for the free variables `0..count` of an open formula.
pub fn default_free_names(count: usize) -> Vec<String> {
    (0..count).map(pool_name).collect()
}

/// Rendering knobs. Numerals above `max_numeral_bits` are elided as
/// `<numeral: N bits>`, which keeps reports about huge Gödel numbers
/// readable but is no longer parseable.
#[derive(Clone, Copy, Debug, Default)]
pub struct RenderOptions {
    pub max_numeral_bits: Option<u64>,
}

struct ArithRenderer {
    opts: RenderOptions,
    /// Names in scope; the last entry is index 0.
    scope: Vec<String>,
}

impl ArithRenderer {
    fn fresh(&self) -> String {
        (0..)
            .map(pool_name)
            .find(|n| !self.scope.contains(n))
            .expect("name pool is infinite")
    }

    fn var(&self, i: u32) -> String {
        let i = i as usize;
        if i < self.scope.len() {
            self.scope[self.scope.len() - 1 - i].clone()
        } else {
            // Not covered by the naming context; still print something.
            format!("v{i}")
        }
    }

    fn term(&self, t: &Term, ctx: u8, out: &mut String) {
        let prec = match t {
            Term::Add(..) => 1,
            Term::Mul(..) => 2,
            _ => 3,
        };
        if prec < ctx {
            out.push('(');
        }
        match t {
            Term::Zero => out.push('0'),
            Term::Num(n) => match self.opts.max_numeral_bits {
                Some(max) if n.bits() > max => {
                    out.push_str(&format!("<numeral: {} bits>", n.bits()))
                }
                _ => out.push_str(&n.to_str_radix(10)),
            },
            Term::Var(i) => out.push_str(&self.var(*i)),
            Term::Succ(x) => {
                out.push_str("S(");
                self.term(x, 0, out);
                out.push(')');
            }
            Term::Diag(x) => {
                out.push_str("diag(");
                self.term(x, 0, out);
                out.push(')');
            }
            Term::Add(a, b) => {
                self.term(a, 1, out);
                out.push_str(" + ");
                self.term(b, 2, out);
            }
            Term::Mul(a, b) => {
                self.term(a, 2, out);
                out.push_str(" * ");
                self.term(b, 3, out);
            }
        }
        if prec < ctx {
            out.push(')');
        }
    }

    fn formula(&mut self, f: &ArithFormula, ctx: u8, out: &mut String) {
        use ArithFormula as F;
        let prec = match f {
            F::Forall(_) | F::Exists(_) | F::BoundedForall(..) | F::BoundedExists(..) => 0,
            F::Iff(..) => 1,
            F::Implies(..) => 2,
            F::Or(..) => 3,
            F::And(..) => 4,
            F::Not(_) => 5,
            F::Eq(..) | F::Pr(..) => 6,
        };
        if prec < ctx {
            out.push('(');
        }
        match f {
            F::Eq(a, b) => {
                self.term(a, 0, out);
                out.push_str(" = ");
                self.term(b, 0, out);
            }
            F::Pr(tag, t) => {
                out.push_str("Pr[");
                out.push_str(tag);
                out.push_str("](");
                self.term(t, 0, out);
                out.push(')');
            }
            F::Not(x) => {
                out.push('~');
                self.formula(x, 5, out);
            }
            F::And(a, b) => self.binary(a, " & ", b, (4, 5), out),
            F::Or(a, b) => self.binary(a, " | ", b, (3, 4), out),
            F::Implies(a, b) => self.binary(a, " -> ", b, (3, 2), out),
            F::Iff(a, b) => self.binary(a, " <-> ", b, (2, 1), out),
            F::Forall(x) => self.quant("A", None, x, out),
            F::Exists(x) => self.quant("E", None, x, out),
            F::BoundedForall(t, x) => self.quant("A", Some(t), x, out),
            F::BoundedExists(t, x) => self.quant("E", Some(t), x, out),
        }
        if prec < ctx {
            out.push(')');
        }
    }

    fn binary(
        &mut self,
        a: &ArithFormula,
        op: &str,
        b: &ArithFormula,
        (lp, rp): (u8, u8),
        out: &mut String,
    ) {
        self.formula(a, lp, out);
        out.push_str(op);
        self.formula(b, rp, out);
    }

    fn quant(&mut self, q: &str, bound: Option<&Term>, body: &ArithFormula, out: &mut String) {
        let name = self.fresh();
        out.push_str(q);
        out.push(' ');
        out.push_str(&name);
        if let Some(t) = bound {
            out.push_str(" < ");
            self.term(t, 0, out);
        }
        out.push_str(". ");
        self.scope.push(name);
        self.formula(body, 0, out);
        self.scope.pop();
    }
}

fn free_count(f: &ArithFormula) -> usize {
    f.free_vars().iter().next_back().map_or(0, |m| *m as usize + 1)
}

/// Renders an arithmetic formula. Free variables, if any, get the names of
/// [`default_free_names`].
pub fn render_arith(f: &ArithFormula) -> String {
    render_arith_with(f, RenderOptions::default())
}

pub fn render_arith_with(f: &ArithFormula, opts: RenderOptions) -> String {
    let names = default_free_names(free_count(f));
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    render_arith_open_with(f, &names, opts)
}

/// Renders an open formula with `free[0]` as the name of index 0, the
/// inverse of `parse_arith_open`.
pub fn render_arith_open(f: &ArithFormula, free: &[&str]) -> String {
    render_arith_open_with(f, free, RenderOptions::default())
}

pub fn render_arith_open_with(f: &ArithFormula, free: &[&str], opts: RenderOptions) -> String {
    let mut r = ArithRenderer { opts, scope: free.iter().rev().map(|s| s.to_string()).collect() };
    let mut out = String::new();
    r.formula(f, 0, &mut out);
    out
}

pub fn render_term(t: &Term) -> String {
    render_term_with(t, RenderOptions::default())
}

pub fn render_term_with(t: &Term, opts: RenderOptions) -> String {
    let mut free = Default::default();
    t.collect_free(0, &mut free);
    let count = free.iter().next_back().map_or(0, |m: &u32| *m as usize + 1);
    let r = ArithRenderer { opts, scope: default_free_names(count).into_iter().rev().collect() };
    let mut out = String::new();
    r.term(t, 0, &mut out);
    out
}

fn modal(f: &ModalFormula, ctx: u8, out: &mut String) {
    use ModalFormula as M;
    let prec = match f {
        M::Iff(..) => 1,
        M::Implies(..) => 2,
        M::Or(..) => 3,
        M::And(..) => 4,
        M::Not(_) | M::Box(_) => 5,
        M::Bottom | M::Top | M::Letter(_) => 6,
    };
    if prec < ctx {
        out.push('(');
    }
    match f {
        M::Bottom => out.push_str("#F"),
        M::Top => out.push_str("#T"),
        M::Letter(p) => out.push_str(p),
        M::Not(x) => match &**x {
            M::Box(y) if matches!(**y, M::Not(_)) => {
                let M::Not(z) = &**y else { unreachable!() };
                out.push_str("<>");
                modal(z, 5, out);
            }
            _ => {
                out.push('~');
                modal(x, 5, out);
            }
        },
        M::Box(x) => {
            out.push_str("[]");
            modal(x, 5, out);
        }
        M::And(a, b) => modal_binary(a, " & ", b, (4, 5), out),
        M::Or(a, b) => modal_binary(a, " | ", b, (3, 4), out),
        M::Implies(a, b) => modal_binary(a, " -> ", b, (3, 2), out),
        M::Iff(a, b) => modal_binary(a, " <-> ", b, (2, 1), out),
    }
    if prec < ctx {
        out.push(')');
    }
}

fn modal_binary(a: &ModalFormula, op: &str, b: &ModalFormula, (lp, rp): (u8, u8), out: &mut String) {
    modal(a, lp, out);
    out.push_str(op);
    modal(b, rp, out);
}

pub fn render_modal(f: &ModalFormula) -> String {
    let mut out = String::new();
    modal(f, 0, &mut out);
    out
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_modal(self))
    }
}

impl fmt::Display for ArithFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_arith(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_arith, parse_arith_open, parse_modal};
    use super::*;

    #[test]
    fn parse_examples_roundtrip() {
        for text in ["0 = 0", "A x. x = x", "E x. S(0) + S(0) = x"] {
            let f = parse_arith(text).unwrap();
            assert_eq!(render_arith(&f), text);
        }
        for text in ["[]#F -> #F", "[]([]p -> p) -> []p", "<>p"] {
            let f = parse_modal(text).unwrap();
            assert_eq!(render_modal(&f), text);
        }
    }

    #[test]
    fn quantifiers_under_connectives_are_parenthesized() {
        let f = parse_arith("~(A x. x = 0) & (E y. y = 0)").unwrap();
        let text = render_arith(&f);
        assert_eq!(text, "~(A x. x = 0) & (E x. x = 0)");
        assert_eq!(parse_arith(&text).unwrap(), f);
    }

    #[test]
    fn bound_names_avoid_free_names() {
        let f = parse_arith_open("A y. y = x", &["x"]).unwrap();
        assert_eq!(render_arith(&f), "A y. y = x");
        assert_eq!(render_arith_open(&f, &["x"]), "A y. y = x");
    }

    #[test]
    fn huge_numerals_can_be_elided() {
        let t = Term::num(num_bigint::BigUint::from(1u32) << 300u32);
        let f = ArithFormula::Eq(t.clone(), t);
        let opts = RenderOptions { max_numeral_bits: Some(64) };
        assert_eq!(render_arith_with(&f, opts), "<numeral: 301 bits> = <numeral: 301 bits>");
    }

    #[test]
    fn term_precedence() {
        let f = parse_arith("(0 + 0) * 0 + 0 * (0 + 0) = 0 + (0 + 0)").unwrap();
        assert_eq!(render_arith(&f), "(0 + 0) * 0 + 0 * (0 + 0) = 0 + (0 + 0)");
    }
}

//! Literal fixed points `A = F(diag(#θ))`.
//!
//! For `F(x)` with one free variable, `θ(x) := F(diag(x))` and
//! `A := θ(#θ)`. Evaluating `diag(#θ)` decodes `θ`, plugs in its own
//! numeral and re-encodes, giving exactly `#A`; so `A` is literally `F`
//! applied to a term whose value is the code of `A`.

use std::fmt;

use num_bigint::BigUint;

use crate::coding::{encode_formula, godel_term, GodelNumber};
use crate::proofs::eval_closed;
use crate::syntax::{render_arith_with, render_term_with, substitute, ArithFormula, RenderOptions, SyntaxError, Term};

/// Evidence that `a` speaks about its own code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointCertificate {
    /// `F(diag(x))`.
    pub theta: ArithFormula,
    /// `θ(#θ)`.
    pub a: ArithFormula,
    pub claimed_code: GodelNumber,
    /// Closed terms with their values; the last entry is
    /// `diag(#θ) ↦ #a`.
    pub evaluation_trace: Vec<(Term, BigUint)>,
}

/// Builds the fixed point of `f` and its certificate.
pub fn fixed_point_literal(f: &ArithFormula) -> Result<(ArithFormula, FixedPointCertificate), SyntaxError> {
    let free = f.free_vars();
    if free.len() != 1 || !free.contains(&0) {
        return Err(SyntaxError::NotUnary { free: free.len() });
    }
    let theta = f.replace_var(0, &Term::diag(Term::Var(0)));
    let theta_code = encode_formula(&theta).0;
    let theta_term = Term::num(theta_code.clone());
    let a = substitute(&theta, &theta_term)?;
    let code = encode_formula(&a);
    let trace = vec![
        (theta_term.clone(), theta_code),
        (Term::diag(theta_term), code.0.clone()),
    ];
    let cert = FixedPointCertificate { theta, a: a.clone(), claimed_code: code, evaluation_trace: trace };
    Ok((a, cert))
}

/// First point where a certificate fails.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("certificate rejected: {0}")]
pub struct CertificateError(pub String);

/// Recomputes every claim of the certificate.
pub fn check_certificate(cert: &FixedPointCertificate) -> Result<(), CertificateError> {
    let err = |m: &str| Err(CertificateError(m.to_string()));
    let theta_term = godel_term(&cert.theta);
    match substitute(&cert.theta, &theta_term) {
        Ok(a) if a == cert.a => {}
        Ok(_) => return err("a is not theta applied to its own code"),
        Err(e) => return Err(CertificateError(format!("theta is not unary: {e}"))),
    }
    if encode_formula(&cert.a) != cert.claimed_code {
        return err("claimed code differs from the code of a");
    }
    for (i, (term, value)) in cert.evaluation_trace.iter().enumerate() {
        match eval_closed(term) {
            Some(v) if v == *value => {}
            Some(_) => return Err(CertificateError(format!("trace entry {i} evaluates to a different value"))),
            None => return Err(CertificateError(format!("trace entry {i} is not a closed term"))),
        }
    }
    match cert.evaluation_trace.last() {
        Some((term, value)) if *term == Term::diag(theta_term) && *value == cert.claimed_code.0 => Ok(()),
        _ => err("trace does not end with diag(#theta) evaluating to the claimed code"),
    }
}

pub fn verify_certificate(cert: &FixedPointCertificate) -> bool {
    check_certificate(cert).is_ok()
}

impl FixedPointCertificate {
    /// Text rendering; numerals wider than `max_bits` are elided.
    pub fn render(&self, max_bits: u64) -> String {
        let opts = RenderOptions { max_numeral_bits: Some(max_bits) };
        let short = |n: &BigUint| {
            if n.bits() > max_bits {
                format!("<{} bits>", n.bits())
            } else {
                n.to_string()
            }
        };
        let mut out = String::new();
        out.push_str(&format!("theta: {}\n", crate::syntax::render_arith_open(&self.theta, &["x"])));
        out.push_str(&format!("A: {}\n", render_arith_with(&self.a, opts)));
        out.push_str(&format!("code: {}\n", short(&self.claimed_code.0)));
        for (term, value) in &self.evaluation_trace {
            out.push_str(&format!("  {} = {}\n", render_term_with(term, opts), short(value)));
        }
        out
    }
}

impl fmt::Display for FixedPointCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(256))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::eval_delta0;
    use crate::syntax::parse_arith_open;

    fn unary(text: &str) -> ArithFormula {
        parse_arith_open(text, &["x"]).unwrap()
    }

    #[test]
    fn identity_fixed_point_is_true() {
        let (a, cert) = fixed_point_literal(&unary("x = x")).unwrap();
        assert!(verify_certificate(&cert));
        assert!(eval_delta0(&a).unwrap());
    }

    #[test]
    fn goedel_sentence() {
        let (g, cert) = fixed_point_literal(&unary("~Pr[PA](x)")).unwrap();
        assert!(verify_certificate(&cert));
        let ArithFormula::Not(inner) = &g else { panic!("G is a negation") };
        let ArithFormula::Pr(tag, t) = &**inner else { panic!("of a Pr atom") };
        assert_eq!(tag, "PA");
        assert_eq!(crate::proofs::eval_closed(t).unwrap(), cert.claimed_code.0);
    }

    #[test]
    fn perturbed_code_is_rejected() {
        let (_, mut cert) = fixed_point_literal(&unary("x = x")).unwrap();
        cert.claimed_code.0 += 1u32;
        assert!(!verify_certificate(&cert));
    }

    #[test]
    fn arity_errors() {
        assert!(fixed_point_literal(&crate::syntax::parse_arith("0 = 0").unwrap()).is_err());
        assert!(fixed_point_literal(&parse_arith_open("x = y", &["x", "y"]).unwrap()).is_err());
    }
}

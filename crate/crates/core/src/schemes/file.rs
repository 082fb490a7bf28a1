//! Instance files.
//!
//! ```text
//! # comment
//! context T1 extends PA with []#F [flags: consistent]
//! instance g2 scheme II backend modal context PA A "~[]#F" B "~[](#T -> ~[]#F)" expect Counterexample
//! instance g4 scheme IV backend arith context PA A "fix: ~Pr[PA](x)" B "x = x"
//! ```
//!
//! For the arithmetic backend `B` is the formula `F(x)`; the instance
//! checks `F(#A)`. `A` may be `fix: F(x)`, the literal fixed point of `F`.
//! Optional trailing parts: `classes <c1> <c2>` and
//! `expect <Classification>`.

use std::collections::BTreeMap;

use crate::diagonal::fixed_point_literal;
use crate::syntax::{parse_arith, parse_arith_open, parse_modal, SyntacticClass};
use crate::theoryctx::{parse_context_line, TheoryContext};

use super::{check_instance, gate_pi1, Classification, SchemeId, SchemeInstance, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedInstance {
    pub line: usize,
    pub instance: SchemeInstance,
    pub expect: Option<Classification>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceFile {
    pub contexts: BTreeMap<String, TheoryContext>,
    pub instances: Vec<ParsedInstance>,
}

struct Words<'a> {
    words: std::slice::Iter<'a, String>,
}

impl<'a> Words<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str, String> {
        self.words.next().map(String::as_str).ok_or_else(|| format!("missing {what}"))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), String> {
        match self.next(kw)? {
            w if w == kw => Ok(()),
            w => Err(format!("expected `{kw}`, found `{w}`")),
        }
    }

    fn class(&mut self) -> Result<SyntacticClass, String> {
        let c = self.next("class")?;
        SyntacticClass::from_name(c).ok_or_else(|| format!("unknown class `{c}`"))
    }
}

fn parse_instance(
    words: &[String],
    contexts: &BTreeMap<String, TheoryContext>,
) -> Result<(SchemeInstance, Option<Classification>), String> {
    let mut w = Words { words: words.iter() };
    w.keyword("instance")?;
    let id = w.next("id")?.to_string();
    w.keyword("scheme")?;
    let scheme_text = w.next("scheme")?;
    let scheme = SchemeId::from_roman(scheme_text).ok_or_else(|| format!("unknown scheme `{scheme_text}`"))?;
    w.keyword("backend")?;
    let backend = w.next("backend")?;
    w.keyword("context")?;
    let tag = w.next("context")?;
    let ctx = contexts.get(tag).cloned().ok_or_else(|| format!("unknown context `{tag}`"))?;
    w.keyword("A")?;
    let a_text = w.next("A")?;
    w.keyword("B")?;
    let b_text = w.next("B")?;
    let mut classes = None;
    let mut expect = None;
    while let Ok(option) = w.next("option") {
        match option {
            "classes" => classes = Some((w.class()?, w.class()?)),
            "expect" => {
                let c = w.next("classification")?;
                expect = Some(Classification::from_name(c).ok_or_else(|| format!("unknown classification `{c}`"))?);
            }
            other => return Err(format!("unexpected `{other}`")),
        }
    }
    let mut inst = match backend {
        "modal" => {
            let a = parse_modal(a_text).map_err(|e| format!("A: {e}"))?;
            let b = parse_modal(b_text).map_err(|e| format!("B: {e}"))?;
            SchemeInstance::modal(id, scheme, ctx, a, b)
        }
        "arith" => {
            let a = match a_text.strip_prefix("fix:") {
                Some(f) => {
                    let f = parse_arith_open(f.trim(), &["x"]).map_err(|e| format!("A: {e}"))?;
                    fixed_point_literal(&f).map_err(|e| format!("A: {e}"))?.0
                }
                None => parse_arith(a_text).map_err(|e| format!("A: {e}"))?,
            };
            let f = parse_arith_open(b_text, &["x"]).map_err(|e| format!("B: {e}"))?;
            SchemeInstance::arith(id, scheme, ctx, a, f).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown backend `{other}`")),
    };
    inst.classes = classes;
    Ok((inst, expect))
}

/// Parses a whole file. The contexts PA, S and INC are predefined.
pub fn parse_instance_file(text: &str) -> Result<InstanceFile, FileError> {
    let mut file = InstanceFile::default();
    for tag in ["PA", "S", "INC"] {
        file.contexts.insert(tag.to_string(), TheoryContext::builtin(tag).expect("built-in"));
    }
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| FileError { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with("context ") {
            let ctx = parse_context_line(trimmed).map_err(|e| err(e.to_string()))?;
            file.contexts.insert(ctx.tag.clone(), ctx);
            continue;
        }
        let words = shlex::split(trimmed).ok_or_else(|| err("unbalanced quotes".into()))?;
        let (instance, expect) = parse_instance(&words, &file.contexts).map_err(err)?;
        file.instances.push(ParsedInstance { line, instance, expect });
    }
    Ok(file)
}

/// Parses and checks every instance. Instances of III, V and VII with
/// declared classes go through the Π1 gate.
pub fn check_file(text: &str) -> Result<Vec<(ParsedInstance, Verdict)>, FileError> {
    let file = parse_instance_file(text)?;
    Ok(file
        .instances
        .into_iter()
        .map(|p| {
            let gated = p.instance.classes.is_some() && matches!(p.instance.scheme, SchemeId::III | SchemeId::V | SchemeId::VII);
            let v = match gated.then(|| gate_pi1(&p.instance)) {
                Some(Ok(outcome)) => outcome.verdict().clone(),
                _ => check_instance(&p.instance),
            };
            (p, v)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_checks() {
        let text = r##"
# consistency of PA
context T1 extends PA with []#F [flags: consistent]
instance g2 scheme II backend modal context PA A "~[]#F" B "~[](#T -> ~[]#F)" expect Counterexample
instance t1 scheme I backend modal context T1 A "#T" B "#T"
instance v5 scheme V backend modal context PA A "~[]#F" B "~[]~[]#F" classes Pi1 Pi1
"##;
        let results = check_file(text).unwrap();
        assert_eq!(results.len(), 3);
        assert_eq!(results[0].1.classification, Classification::Counterexample);
        assert_eq!(results[0].0.expect, Some(Classification::Counterexample));
        assert_eq!(results[1].0.instance.context.tag, "T1");
        assert_eq!(results[2].1.scheme, SchemeId::I);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_instance_file("\ninstance x scheme IX backend modal context PA A \"#T\" B \"#T\"").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_instance_file("instance x scheme I backend modal context Q A \"#T\" B \"#T\"").is_err());
        assert!(parse_instance_file("instance x scheme I backend modal context PA A \"#T").is_err());
    }

    #[test]
    fn arith_instances() {
        let text = r#"instance d scheme I backend arith context PA A "0 = 0" B "x = x""#;
        let results = check_file(text).unwrap();
        assert_eq!(results[0].1.classification, Classification::ValidatedInstance);
    }
}

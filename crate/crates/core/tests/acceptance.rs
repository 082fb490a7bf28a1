//! Acceptance run: ten criteria, one pass/fail line each. Built with
//! `harness = false` so the lines are printed by `cargo test`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use selfref::coding::{decode_formula, encode_formula};
use selfref::diagonal::{fixed_point_literal, verify_certificate, FixedPointCertificate};
use selfref::gl::{check_gl_derivation, enumerate_countermodel, gl_decide, kripke_eval, GLVerdict};
use selfref::proofs::check_proof;
use selfref::schemes::{
    check_instance, godel_sentence_suite, pi1_fixedpoint_suite, reflection_battery, run_paper_suite,
    Classification, Method, SchemeId, SchemeInstance,
};
use selfref::syntax::{parse_arith, parse_arith_open, parse_modal, ArithFormula, ModalFormula, Term};
use selfref::theoryctx::{con_of, pr_in, true_in_n, TheoryContext};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn m(s: &str) -> ModalFormula {
    parse_modal(s).unwrap()
}

fn gl_small_scale() -> Outcome {
    let family = common::exhaustive_one_letter(2);
    for f in &family {
        let verdict = gl_decide(f);
        let small = enumerate_countermodel(f, 5);
        match (&verdict, &small) {
            (GLVerdict::Proved(d), None) => {
                check_gl_derivation(d).map_err(|e| format!("bad derivation for {f:?}: {e}"))?;
            }
            (GLVerdict::Refuted(model), Some(_)) => {
                model.validate()?;
                ensure(!kripke_eval(model, model.root, f), format!("countermodel does not refute {f:?}"))?;
            }
            _ => return Err(format!("prover and enumerator disagree on {f:?}")),
        }
    }
    ensure(gl_decide(&m("[]([]p -> p) -> []p")).is_proved(), "Loeb axiom not proved")?;
    let refl = gl_decide(&m("[]p -> p"));
    let model = refl.countermodel().ok_or("[]p -> p proved")?;
    ensure(model.worlds <= 2, format!("countermodel has {} worlds", model.worlds))?;
    println!("    {} formulas cross-checked", family.len());
    Ok(())
}

fn coding_roundtrip() -> Outcome {
    let config = Config { cases: 1000, ..Config::default() };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(config, rng);
    let strategy = common::formula();
    for _ in 0..1000 {
        let f = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let back = decode_formula(&encode_formula(&f)).map_err(|e| format!("{e} for {f:?}"))?;
        ensure(back == f, format!("roundtrip changed {f:?}"))?;
    }
    ensure(encode_formula(&parse_arith("0=0").unwrap()).0 == 2430u32.into(), "code of 0=0 is not 2430")
}

fn diagonalization() -> Outcome {
    let (g, cert) = fixed_point_literal(&parse_arith_open("~Pr[PA](x)", &["x"]).unwrap()).map_err(|e| e.to_string())?;
    ensure(verify_certificate(&cert), "certificate rejected")?;
    ensure(g == cert.a, "returned sentence differs from certificate")?;
    let perturbations: [fn(&mut FixedPointCertificate); 3] = [
        |c| c.claimed_code.0 += 1u32,
        |c| c.a = ArithFormula::not(c.a.clone()),
        |c| c.evaluation_trace.last_mut().unwrap().1 += 2u32,
    ];
    for (i, perturb) in perturbations.iter().enumerate() {
        let mut bad = cert.clone();
        perturb(&mut bad);
        ensure(!verify_certificate(&bad), format!("perturbation {i} accepted"))?;
    }
    Ok(())
}

fn reflection() -> Outcome {
    let r = reflection_battery();
    ensure(r.passed(), format!("\n{r}"))
}

fn goedel_iv() -> Outcome {
    let (g, _) = fixed_point_literal(&parse_arith_open("~Pr[PA](x)", &["x"]).unwrap()).map_err(|e| e.to_string())?;
    let f = ArithFormula::eq(Term::Var(0), selfref::coding::godel_term(&g));
    let inst = SchemeInstance::arith("iv", SchemeId::IV, TheoryContext::pa(), g, f).map_err(|e| e.to_string())?;
    let v = check_instance(&inst);
    ensure(v.classification == Classification::Counterexample, format!("classified {}", v.classification))?;
    ensure(v.premise2.method == Method::BoundedProof, "premise2 not established by a proof")?;
    let proof = v.premise2.proof.as_ref().ok_or("no proof object")?;
    ensure(check_proof(proof), "proof object rejected by the checker")
}

fn consistency_ii_vi() -> Outcome {
    let pa = TheoryContext::pa();
    let a = m("~[]#F");
    let b = ModalFormula::not(pr_in(&pa, &a));
    for id in [SchemeId::II, SchemeId::VI] {
        let v = check_instance(&SchemeInstance::modal("c", id, pa.clone(), a.clone(), b.clone()));
        ensure(v.classification == Classification::Counterexample, format!("{id} classified {}", v.classification))?;
        if id == SchemeId::VI {
            let d = v.premise1.gl.as_ref().and_then(GLVerdict::derivation).ok_or("premise1 of VI has no derivation")?;
            check_gl_derivation(d)?;
            ensure(d.gl_steps() > 0, "derivation does not use the GL rule")?;
        }
    }
    Ok(())
}

fn contexts() -> [TheoryContext; 3] {
    [TheoryContext::pa(), TheoryContext::s(), TheoryContext::inconsistent()]
}

fn goedel_sentence_truth() -> Outcome {
    for ctx in contexts() {
        let r = godel_sentence_suite(&ctx).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("\n{r}"))?;
        ensure(r.find("D true iff Con(T) true").is_some_and(|c| c.observed), "equivalence check missing")?;
        println!("    {}: Con(T) {}", ctx.tag, true_in_n(&ctx, &con_of(&ctx)).holds);
    }
    Ok(())
}

fn pi1_fixed_points() -> Outcome {
    let s = pi1_fixedpoint_suite(&TheoryContext::s()).map_err(|e| e.to_string())?;
    ensure(s.passed(), format!("\n{s}"))?;
    ensure(s.find("rho true").is_some_and(|c| !c.observed), "S branch does not exhibit a false fixed point")?;
    let pa = pi1_fixedpoint_suite(&TheoryContext::pa()).map_err(|e| e.to_string())?;
    ensure(pa.passed(), format!("\n{pa}"))?;
    ensure(pa.find("every catalogue fixed point is true").is_some_and(|c| c.observed), "PA scan failed")
}

fn summary() -> Outcome {
    let report = run_paper_suite();
    ensure(report.passed(), format!("{} mismatches, {} inconclusive", report.mismatches, report.inconclusive))?;
    let expected = [
        "  scheme I: valid (rule-level)",
        "  scheme II: invalid (mechanical counterexample)",
        "  scheme III: invalid (cited counterexample)",
        "  scheme IV: invalid (mechanical counterexample)",
        "  scheme V: invalid (cited counterexample)",
        "  scheme VI: invalid (mechanical counterexample)",
        "  scheme VII: invalid (cited counterexample)",
        "  scheme VIII: valid (rule-level)",
        "  Pi1 gate reduces III, V, VII to I: yes",
        "  invalid schemes: 6 of 8",
    ];
    for line in expected {
        ensure(report.text.lines().any(|l| l == line), format!("summary lacks `{}`", line.trim()))?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    let a = run_paper_suite().text;
    let b = run_paper_suite().text;
    ensure(a == b, "two runs differ")
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("GL prover agrees with countermodel enumeration", gl_small_scale),
        ("coding roundtrip and the code of 0=0", coding_roundtrip),
        ("diagonal fixed point certificate", diagonalization),
        ("reflection battery in S", reflection),
        ("scheme IV counterexample with a checked proof", goedel_iv),
        ("schemes II and VI counterexamples", consistency_ii_vi),
        ("Goedel sentence true iff Con(T) true", goedel_sentence_truth),
        ("false Pi1 fixed point exactly when T + Con(T) is inconsistent", pi1_fixed_points),
        ("suite summary: six of eight invalid", summary),
        ("suite report is deterministic", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: pass  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} passed in {:.2}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

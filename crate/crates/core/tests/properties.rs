mod common;

use proptest::prelude::*;

use selfref::coding::{decode_formula, encode_formula, factor_tokens, tokens};
use selfref::fixpoint::compute_fixed_point;
use selfref::gl::{enumerate_countermodel, gl_decide, gls_holds, kripke_eval, GLVerdict};
use selfref::syntax::{parse_arith, parse_modal, render_arith, render_modal, ModalFormula};
use selfref::theoryctx::{provable_in, TheoryContext};

fn small() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

/// Every `p` in `f` moved under a box, so the result is modalized in `p`.
fn modalize(f: &ModalFormula) -> ModalFormula {
    f.map_letters(&mut |l| (l == "p").then(|| ModalFormula::boxed(ModalFormula::letter("p"))))
}

proptest! {
    #![proptest_config(small())]

    #[test]
    fn arith_render_parses_back(f in common::sentence()) {
        let text = render_arith(&f);
        prop_assert_eq!(parse_arith(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn modal_render_parses_back(f in common::modal()) {
        let text = render_modal(&f);
        prop_assert_eq!(parse_modal(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn code_factors_into_its_tokens(f in common::formula()) {
        let code = encode_formula(&f);
        prop_assert_eq!(factor_tokens(code.value()).unwrap(), tokens(&f));
        prop_assert_eq!(decode_formula(&code).unwrap(), f);
    }

    #[test]
    fn prover_agrees_with_small_models(f in common::modal()) {
        match gl_decide(&f) {
            GLVerdict::Proved(_) => prop_assert!(enumerate_countermodel(&f, 3).is_none()),
            GLVerdict::Refuted(m) => {
                prop_assert!(m.validate().is_ok());
                prop_assert!(!kripke_eval(&m, m.root, &f));
            }
        }
    }

    #[test]
    fn gl_theorems_hold_in_gls(f in common::modal()) {
        if gl_decide(&f).is_proved() {
            prop_assert!(gls_holds(&f));
            prop_assert!(gl_decide(&ModalFormula::boxed(f)).is_proved());
        }
    }

    #[test]
    fn stronger_contexts_prove_more(f in common::modal()) {
        let pa = provable_in(&TheoryContext::pa(), &f).is_proved();
        let s = provable_in(&TheoryContext::s(), &f).is_proved();
        prop_assert!(!pa || s);
        prop_assert!(provable_in(&TheoryContext::inconsistent(), &f).is_proved());
    }

    #[test]
    fn modalized_formulas_have_certified_fixed_points(f in common::modal()) {
        let a = modalize(&f);
        let r = compute_fixed_point(&a, "p").unwrap();
        prop_assert!(r.equivalence_verdict.is_proved());
        prop_assert!(!r.solution.contains_letter("p"));
        let letters = r.solution.letters();
        prop_assert!(letters.iter().all(|l| a.letters().contains(l)));
    }
}

#[test]
fn non_codes_do_not_decode() {
    for n in [0u32, 1, 7, 2430 * 7, 3] {
        assert!(decode_formula(&selfref::coding::GodelNumber(n.into())).is_err(), "{n}");
    }
}

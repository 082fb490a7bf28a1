use std::collections::BTreeSet;

use crate::syntax::ModalFormula;

use super::kripke::KripkeModel;

/// Strict orders on `0..n` in which 0 lies below every other world and
/// `i R j` implies `i < j`. Every finite rooted GL frame is isomorphic to
/// one of these.
fn frames(n: usize) -> Vec<Vec<u32>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        // succ[i] is the bitmask of successors of i
        let mut succ = vec![0u32; n];
        for j in 1..n {
            succ[0] |= 1 << j;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                succ[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).filter(|&j| succ[i] >> j & 1 == 1).all(|j| succ[j] & !succ[i] == 0)
        });
        if transitive {
            out.push(succ);
        }
    }
    out
}

/// Bitmask of worlds where `f` holds, given letter masks.
fn eval_mask(f: &ModalFormula, succ: &[u32], letters: &[(String, u32)], all: u32) -> u32 {
    use ModalFormula as M;
    match f {
        M::Bottom => 0,
        M::Top => all,
        M::Letter(p) => letters.iter().find(|(q, _)| q == p).map_or(0, |(_, m)| *m),
        M::Not(x) => all & !eval_mask(x, succ, letters, all),
        M::And(a, b) => eval_mask(a, succ, letters, all) & eval_mask(b, succ, letters, all),
        M::Or(a, b) => eval_mask(a, succ, letters, all) | eval_mask(b, succ, letters, all),
        M::Implies(a, b) => (all & !eval_mask(a, succ, letters, all)) | eval_mask(b, succ, letters, all),
        M::Iff(a, b) => all & !(eval_mask(a, succ, letters, all) ^ eval_mask(b, succ, letters, all)),
        M::Box(x) => {
            let inner = eval_mask(x, succ, letters, all);
            (0..succ.len()).filter(|&w| succ[w] & !inner == 0).fold(0, |acc, w| acc | 1 << w)
        }
    }
}

/// Exhaustive search for a rooted countermodel with at most `max_worlds`
/// worlds, smallest first. Independent of the prover.
pub fn enumerate_countermodel(f: &ModalFormula, max_worlds: usize) -> Option<KripkeModel> {
    let letters: Vec<String> = f.letters().into_iter().collect();
    for n in 1..=max_worlds.min(12) {
        let all = (1u32 << n) - 1;
        let bits = n * letters.len();
        assert!(bits < 40, "valuation space too large to enumerate");
        for succ in frames(n) {
            for val in 0u64..(1u64 << bits) {
                let masks: Vec<(String, u32)> = letters
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.clone(), ((val >> (i * n)) as u32) & all))
                    .collect();
                if eval_mask(f, &succ, &masks, all) & 1 == 0 {
                    let mut relation = BTreeSet::new();
                    for (i, s) in succ.iter().enumerate() {
                        relation.extend((0..n).filter(|&j| s >> j & 1 == 1).map(|j| (i, j)));
                    }
                    let valuation = (0..n)
                        .map(|w| {
                            masks.iter().filter(|(_, m)| m >> w & 1 == 1).map(|(p, _)| p.clone()).collect::<BTreeSet<_>>()
                        })
                        .collect();
                    return Some(KripkeModel { worlds: n, relation, valuation, root: 0 });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::kripke_eval;
    use crate::syntax::parse_modal;

    #[test]
    fn frame_counts() {
        // naturally labelled posets below a common root
        assert_eq!(frames(1).len(), 1);
        assert_eq!(frames(2).len(), 1);
        assert_eq!(frames(3).len(), 2);
        assert_eq!(frames(4).len(), 7);
    }

    #[test]
    fn examples() {
        let refl = parse_modal("[]p -> p").unwrap();
        let m = enumerate_countermodel(&refl, 2).unwrap();
        m.validate().unwrap();
        assert!(!kripke_eval(&m, 0, &refl));
        assert!(enumerate_countermodel(&parse_modal("[]([]p -> p) -> []p").unwrap(), 5).is_none());
        assert!(enumerate_countermodel(&parse_modal("p | ~p").unwrap(), 5).is_none());
        let m = enumerate_countermodel(&parse_modal("~[]#F").unwrap(), 3).unwrap();
        assert_eq!(m.worlds, 1);
    }
}

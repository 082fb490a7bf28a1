use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::ModalFormula;

/// A finite Kripke model for GL: the relation is transitive and
/// irreflexive, and every world is reachable from `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub worlds: usize,
    /// Pairs `(v, w)` with `v R w`.
    pub relation: BTreeSet<(usize, usize)>,
    /// Letters true at each world.
    pub valuation: Vec<BTreeSet<String>>,
    pub root: usize,
}

impl KripkeModel {
    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.relation.range((w, 0)..(w + 1, 0)).map(|&(_, v)| v)
    }

    /// Checks the frame conditions; returns the first violation.
    pub fn validate(&self) -> Result<(), String> {
        if self.valuation.len() != self.worlds || self.root >= self.worlds {
            return Err("world count, valuation and root disagree".into());
        }
        for &(a, b) in &self.relation {
            if a >= self.worlds || b >= self.worlds {
                return Err(format!("pair ({a}, {b}) mentions an unknown world"));
            }
            if a == b {
                return Err(format!("world {a} sees itself"));
            }
            for c in self.successors(b) {
                if !self.relation.contains(&(a, c)) {
                    return Err(format!("not transitive at {a} -> {b} -> {c}"));
                }
            }
        }
        for w in 0..self.worlds {
            if w != self.root && !self.relation.contains(&(self.root, w)) {
                return Err(format!("world {w} is not reachable from the root"));
            }
        }
        Ok(())
    }

    /// Closes the relation under transitivity.
    pub(crate) fn close(&mut self) {
        loop {
            let extra: Vec<(usize, usize)> = self
                .relation
                .iter()
                .flat_map(|&(a, b)| self.successors(b).map(move |c| (a, c)))
                .filter(|p| !self.relation.contains(p))
                .collect();
            if extra.is_empty() {
                return;
            }
            self.relation.extend(extra);
        }
    }

    /// The submodel on `keep` (which must contain the root), renumbered in
    /// the order of `keep`.
    pub(crate) fn restrict(&self, keep: &[usize]) -> KripkeModel {
        let index = |w: usize| keep.iter().position(|&k| k == w);
        let relation = self
            .relation
            .iter()
            .filter_map(|&(a, b)| Some((index(a)?, index(b)?)))
            .collect();
        KripkeModel {
            worlds: keep.len(),
            relation,
            valuation: keep.iter().map(|&w| self.valuation[w].clone()).collect(),
            root: index(self.root).expect("root kept"),
        }
    }
}

/// Forcing: `□A` holds at `w` when `A` holds at every successor.
pub fn kripke_eval(m: &KripkeModel, w: usize, f: &ModalFormula) -> bool {
    use ModalFormula as M;
    match f {
        M::Bottom => false,
        M::Top => true,
        M::Letter(p) => m.valuation[w].contains(p),
        M::Not(x) => !kripke_eval(m, w, x),
        M::And(a, b) => kripke_eval(m, w, a) && kripke_eval(m, w, b),
        M::Or(a, b) => kripke_eval(m, w, a) || kripke_eval(m, w, b),
        M::Implies(a, b) => !kripke_eval(m, w, a) || kripke_eval(m, w, b),
        M::Iff(a, b) => kripke_eval(m, w, a) == kripke_eval(m, w, b),
        M::Box(x) => m.successors(w).all(|v| kripke_eval(m, v, x)),
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worlds: Vec<String> = (0..self.worlds).map(|w| w.to_string()).collect();
        writeln!(f, "worlds: {} (root {})", worlds.join(" "), self.root)?;
        let pairs: Vec<String> = self.relation.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        if pairs.is_empty() {
            writeln!(f, "relation: (empty)")?;
        } else {
            writeln!(f, "relation: {}", pairs.join(" "))?;
        }
        for (w, letters) in self.valuation.iter().enumerate() {
            let letters: Vec<&str> = letters.iter().map(String::as_str).collect();
            if letters.is_empty() {
                writeln!(f, "  {w}: (none)")?;
            } else {
                writeln!(f, "  {w}: {}", letters.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_modal;

    fn chain(n: usize) -> KripkeModel {
        let mut m = KripkeModel {
            worlds: n,
            relation: (1..n).map(|i| (i - 1, i)).collect(),
            valuation: vec![BTreeSet::new(); n],
            root: 0,
        };
        m.close();
        m
    }

    #[test]
    fn forcing_examples() {
        let one = chain(1);
        assert!(kripke_eval(&one, 0, &ModalFormula::Top));
        assert!(kripke_eval(&one, 0, &parse_modal("[]#F").unwrap()));
        let two = chain(2);
        assert!(!kripke_eval(&two, 0, &parse_modal("[]#F").unwrap()));
        assert!(kripke_eval(&two, 1, &parse_modal("[]#F").unwrap()));
    }

    #[test]
    fn validation() {
        assert!(chain(4).validate().is_ok());
        let mut m = chain(3);
        m.relation.remove(&(0, 2));
        assert!(m.validate().is_err());
    }
}

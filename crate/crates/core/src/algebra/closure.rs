//! Subuniverse closure and generation plans.

use super::{Elem, FinAlgebra};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Derivation {
    Generator,
    Apply(usize, Vec<Elem>),
}

/// Elements in the order they were generated, each with the step that produced it.
#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub steps: Vec<(Elem, Derivation)>,
}

/// Generation plan: level 0 is the closure of the nullaries, level `i+1` is what
/// `gens[i]` adds to the closure of the previous levels.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    pub gens: Vec<Elem>,
    pub levels: Vec<Level>,
}

struct Grower<'a> {
    alg: &'a FinAlgebra,
    member: Vec<bool>,
    order: Vec<Elem>,
}

impl<'a> Grower<'a> {
    fn new(alg: &'a FinAlgebra) -> Grower<'a> {
        Grower {
            alg,
            member: vec![false; alg.size()],
            order: Vec::new(),
        }
    }

    fn push(&mut self, e: Elem, how: Derivation, out: &mut Vec<(Elem, Derivation)>) {
        if !self.member[e] {
            self.member[e] = true;
            self.order.push(e);
            out.push((e, how));
        }
    }

    /// Adds `seeds` (and nullaries when `with_nullaries`) and closes.
    fn grow(&mut self, seeds: &[Elem], with_nullaries: bool) -> Vec<(Elem, Derivation)> {
        let mut out = Vec::new();
        let start = self.order.len();
        if with_nullaries {
            for (op, spec) in self.alg.signature().ops().iter().enumerate() {
                if spec.arity == 0 {
                    let c = self.alg.apply(op, &[]);
                    self.push(c, Derivation::Apply(op, vec![]), &mut out);
                }
            }
        }
        for &s in seeds {
            self.push(s, Derivation::Generator, &mut out);
        }
        let mut cursor = start;
        while cursor < self.order.len() {
            let x = self.order[cursor];
            for (op, spec) in self.alg.signature().ops().iter().enumerate() {
                match spec.arity {
                    1 => {
                        let v = self.alg.apply(op, &[x]);
                        self.push(v, Derivation::Apply(op, vec![x]), &mut out);
                    }
                    2 => {
                        let mut j = 0;
                        while j <= cursor {
                            let y = self.order[j];
                            let v = self.alg.apply(op, &[x, y]);
                            self.push(v, Derivation::Apply(op, vec![x, y]), &mut out);
                            let w = self.alg.apply(op, &[y, x]);
                            self.push(w, Derivation::Apply(op, vec![y, x]), &mut out);
                            j += 1;
                        }
                    }
                    _ => {}
                }
            }
            cursor += 1;
        }
        out
    }
}

/// The subuniverse generated by `seeds` together with all nullaries, as a membership vector.
pub fn closure(alg: &FinAlgebra, seeds: &[Elem]) -> Vec<bool> {
    let mut g = Grower::new(alg);
    g.grow(seeds, true);
    g.member
}

/// Greedy generating set: repeatedly adds the least element not yet generated.
pub fn generating_set(alg: &FinAlgebra) -> Vec<Elem> {
    plan(alg).gens
}

pub(crate) fn plan(alg: &FinAlgebra) -> Plan {
    let mut g = Grower::new(alg);
    let mut levels = vec![Level {
        steps: g.grow(&[], true),
    }];
    let mut gens = Vec::new();
    for e in 0..alg.size() {
        if !g.member[e] {
            gens.push(e);
            levels.push(Level {
                steps: g.grow(&[e], false),
            });
        }
    }
    Plan { gens, levels }
}

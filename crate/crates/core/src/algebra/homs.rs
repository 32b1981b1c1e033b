//! Homomorphism search by extension along a generation plan.

use super::closure::{plan, Derivation, Plan};
use super::{Elem, FinAlgebra, Hom};
use crate::error::Result;

const UNSET: Elem = usize::MAX;

pub(crate) struct Extender<'a> {
    a: &'a FinAlgebra,
    b: &'a FinAlgebra,
    plan: Plan,
    injective: bool,
    colors: Option<(Vec<u64>, Vec<u64>)>,
}

struct State {
    h: Vec<Elem>,
    used: Vec<bool>,
    defined: Vec<Elem>,
}

impl<'a> Extender<'a> {
    pub(crate) fn new(
        a: &'a FinAlgebra,
        b: &'a FinAlgebra,
        injective: bool,
        colors: Option<(Vec<u64>, Vec<u64>)>,
    ) -> Extender<'a> {
        Extender {
            a,
            b,
            plan: plan(a),
            injective,
            colors,
        }
    }

    /// Calls `sink` with every hom in lexicographic order of generator images;
    /// stops early when `sink` returns `true`.
    pub(crate) fn run(&self, sink: &mut dyn FnMut(&[Elem]) -> bool) {
        let mut st = State {
            h: vec![UNSET; self.a.size()],
            used: vec![false; self.b.size()],
            defined: Vec::with_capacity(self.a.size()),
        };
        self.descend(0, None, &mut st, sink);
    }

    fn admissible(&self, x: Elem, y: Elem, st: &State) -> bool {
        if self.injective && st.used[y] {
            return false;
        }
        match &self.colors {
            Some((ca, cb)) => ca[x] == cb[y],
            None => true,
        }
    }

    /// Assigns level `level` (with `gen_image` for its generator) and recurses.
    fn descend(
        &self,
        level: usize,
        gen_image: Option<Elem>,
        st: &mut State,
        sink: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        if level == self.plan.levels.len() {
            return sink(&st.h);
        }
        let steps = &self.plan.levels[level].steps;
        if level > 0 && gen_image.is_none() {
            let g = self.plan.gens[level - 1];
            for y in 0..self.b.size() {
                if self.admissible(g, y, st) && self.descend(level, Some(y), st, sink) {
                    return true;
                }
            }
            return false;
        }
        let mark = st.defined.len();
        let mut ok = true;
        for (e, how) in steps {
            let y = match how {
                Derivation::Generator => gen_image.expect("generator image chosen"),
                Derivation::Apply(op, args) => {
                    let img: Vec<Elem> = args.iter().map(|&x| st.h[x]).collect();
                    self.b.apply(*op, &img)
                }
            };
            if !self.admissible(*e, y, st) {
                ok = false;
                break;
            }
            st.h[*e] = y;
            st.used[y] = true;
            st.defined.push(*e);
        }
        let stop = ok && self.consistent(mark, st) && self.descend(level + 1, None, st, sink);
        for &e in &st.defined[mark..] {
            st.used[st.h[e]] = false;
            st.h[e] = UNSET;
        }
        st.defined.truncate(mark);
        stop
    }

    /// Checks every operation on tuples touching the newly defined elements.
    fn consistent(&self, mark: usize, st: &State) -> bool {
        let fresh = &st.defined[mark..];
        for (op, spec) in self.a.signature().ops().iter().enumerate() {
            match spec.arity {
                0 => {
                    if mark == 0 {
                        let c = self.a.apply(op, &[]);
                        if st.h[c] != self.b.apply(op, &[]) {
                            return false;
                        }
                    }
                }
                1 => {
                    for &x in fresh {
                        if st.h[self.a.apply(op, &[x])] != self.b.apply(op, &[st.h[x]]) {
                            return false;
                        }
                    }
                }
                _ => {
                    for &x in fresh {
                        for &y in &st.defined {
                            let (hx, hy) = (st.h[x], st.h[y]);
                            if st.h[self.a.apply(op, &[x, y])] != self.b.apply(op, &[hx, hy])
                                || st.h[self.a.apply(op, &[y, x])] != self.b.apply(op, &[hy, hx])
                            {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Every homomorphism `A → B`, sorted lexicographically by image tuple.
pub fn enumerate_homs(a: &FinAlgebra, b: &FinAlgebra) -> Result<Vec<Hom>> {
    a.check_compatible(b)?;
    let mut maps: Vec<Vec<Elem>> = Vec::new();
    Extender::new(a, b, false, None).run(&mut |h| {
        maps.push(h.to_vec());
        false
    });
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|m| Hom::trusted(a.clone(), b.clone(), m))
        .collect())
}

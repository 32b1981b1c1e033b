//! Subuniverse enumeration.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::closure::closure;
use super::{Elem, FinAlgebra, Hom};
use crate::error::{Error, Result};

/// A non-empty subset of a universe closed under every operation.
#[derive(Clone, Debug, PartialEq)]
pub struct SubUniverse {
    parent: FinAlgebra,
    elements: Vec<Elem>,
}

impl SubUniverse {
    /// Checks closure; `elements` may be given in any order.
    pub fn new(parent: FinAlgebra, elements: &[Elem]) -> Result<SubUniverse> {
        let set: BTreeSet<Elem> = elements.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::InvalidStructure("empty subuniverse".into()));
        }
        if set.iter().any(|&e| e >= parent.size()) {
            return Err(Error::InvalidStructure("element out of range".into()));
        }
        let seeds: Vec<Elem> = set.iter().copied().collect();
        let closed = closure(&parent, &seeds);
        if closed.iter().filter(|&&m| m).count() != set.len() {
            return Err(Error::InvalidStructure("subset is not closed".into()));
        }
        Ok(SubUniverse {
            parent,
            elements: seeds,
        })
    }

    fn from_mask(parent: &FinAlgebra, mask: &[bool]) -> SubUniverse {
        SubUniverse {
            parent: parent.clone(),
            elements: (0..mask.len()).filter(|&i| mask[i]).collect(),
        }
    }

    pub fn parent(&self) -> &FinAlgebra {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubUniverse) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// The induced algebra, with elements in increasing parent order.
    pub fn to_algebra(&self) -> FinAlgebra {
        let pos = |e: Elem| self.elements.binary_search(&e).expect("closed");
        let names = self
            .elements
            .iter()
            .map(|&e| self.parent.name(e).to_string())
            .collect();
        FinAlgebra::from_fn(self.parent.signature().clone(), names, |op, args| {
            let lifted: Vec<Elem> = args.iter().map(|&a| self.elements[a]).collect();
            pos(self.parent.apply(op, &lifted))
        })
        .expect("subuniverse is closed")
    }

    pub fn inclusion(&self, sub: &FinAlgebra) -> Hom {
        Hom::trusted(sub.clone(), self.parent.clone(), self.elements.clone())
    }
}

/// All subuniverses, sorted by size and then lexicographically.
pub fn enumerate_subuniverses(a: &FinAlgebra) -> Vec<SubUniverse> {
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue: VecDeque<Vec<bool>> = VecDeque::new();
    let base = closure(a, &[]);
    let push = |mask: Vec<bool>, seen: &mut HashSet<Vec<bool>>, q: &mut VecDeque<Vec<bool>>| {
        if mask.iter().any(|&m| m) && seen.insert(mask.clone()) {
            q.push_back(mask);
        }
    };
    push(base, &mut seen, &mut queue);
    for e in 0..a.size() {
        push(closure(a, &[e]), &mut seen, &mut queue);
    }
    while let Some(mask) = queue.pop_front() {
        let members: Vec<Elem> = (0..a.size()).filter(|&i| mask[i]).collect();
        for e in 0..a.size() {
            if !mask[e] {
                let mut seeds = members.clone();
                seeds.push(e);
                push(closure(a, &seeds), &mut seen, &mut queue);
            }
        }
    }
    let mut subs: Vec<SubUniverse> = seen.iter().map(|m| SubUniverse::from_mask(a, m)).collect();
    subs.sort_by(|x, y| {
        x.elements
            .len()
            .cmp(&y.elements.len())
            .then_with(|| x.elements.cmp(&y.elements))
    });
    subs
}

//! Congruences and the congruence lattice.

use std::collections::{HashSet, VecDeque};

use super::{tuples, Elem, FinAlgebra};
use crate::error::{Error, Result};

/// A partition of the universe compatible with every operation.
#[derive(Clone, Debug)]
pub struct Congruence {
    parent: FinAlgebra,
    labels: Vec<usize>,
    blocks: Vec<Vec<Elem>>,
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Congruence) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Congruence {}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], x: usize, y: usize) -> bool {
    let (rx, ry) = (find(parent, x), find(parent, y));
    if rx == ry {
        return false;
    }
    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
    parent[hi] = lo;
    true
}

/// Normalizes arbitrary labels so that blocks are numbered by their least element.
fn normalize(raw: &[usize]) -> (Vec<usize>, Vec<Vec<Elem>>) {
    let mut map = std::collections::HashMap::new();
    let mut labels = Vec::with_capacity(raw.len());
    let mut blocks: Vec<Vec<Elem>> = Vec::new();
    for (e, r) in raw.iter().enumerate() {
        let next = blocks.len();
        let id = *map.entry(*r).or_insert(next);
        if id == blocks.len() {
            blocks.push(Vec::new());
        }
        blocks[id].push(e);
        labels.push(id);
    }
    (labels, blocks)
}

impl Congruence {
    /// The equivalence whose classes are the fibres of `raw`; compatibility is not checked.
    pub fn from_labels(parent: FinAlgebra, raw: &[usize]) -> Congruence {
        let (labels, blocks) = normalize(raw);
        Congruence {
            parent,
            labels,
            blocks,
        }
    }

    /// Builds a congruence from blocks, checking the partition and compatibility.
    pub fn new(parent: FinAlgebra, blocks: &[Vec<Elem>]) -> Result<Congruence> {
        let mut raw = vec![usize::MAX; parent.size()];
        for (i, b) in blocks.iter().enumerate() {
            for &e in b {
                if e >= parent.size() || raw[e] != usize::MAX {
                    return Err(Error::InvalidStructure(
                        "blocks do not form a partition".into(),
                    ));
                }
                raw[e] = i;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::InvalidStructure(
                "blocks do not cover the universe".into(),
            ));
        }
        let theta = Congruence::from_labels(parent, &raw);
        if let Some(w) = theta.compatibility_violation() {
            return Err(Error::InvalidStructure(format!("not compatible: {w}")));
        }
        Ok(theta)
    }

    pub fn parent(&self) -> &FinAlgebra {
        &self.parent
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, e: Elem) -> usize {
        self.labels[e]
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&e| other.related(b[0], e)))
    }

    /// First operation and argument tuples whose outputs fall in different blocks.
    pub fn compatibility_violation(&self) -> Option<String> {
        let alg = &self.parent;
        for (op, spec) in alg.signature().ops().iter().enumerate() {
            if spec.arity == 0 {
                continue;
            }
            for args in tuples(alg.size(), spec.arity) {
                let reps: Vec<Elem> = args
                    .iter()
                    .map(|&a| self.blocks[self.labels[a]][0])
                    .collect();
                if !self.related(alg.apply(op, &args), alg.apply(op, &reps)) {
                    return Some(format!("{} at {:?}", spec.symbol, args));
                }
            }
        }
        None
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut parent: Vec<usize> = (0..self.labels.len()).collect();
        for theta in [self, other] {
            for b in &theta.blocks {
                for &e in &b[1..] {
                    union(&mut parent, b[0], e);
                }
            }
        }
        let raw: Vec<usize> = (0..parent.len()).map(|e| find(&mut parent, e)).collect();
        Congruence::from_labels(self.parent.clone(), &raw)
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let raw: Vec<usize> = (0..self.labels.len())
            .map(|e| self.labels[e] * other.len() + other.labels[e])
            .collect();
        Congruence::from_labels(self.parent.clone(), &raw)
    }
}

/// The congruence generated by the given pairs.
pub fn generated_congruence(a: &FinAlgebra, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = a.size();
    let mut parent: Vec<usize> = (0..n).collect();
    for &(x, y) in pairs {
        union(&mut parent, x, y);
    }
    let ops: Vec<(usize, usize)> = a
        .signature()
        .ops()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.arity > 0)
        .map(|(i, s)| (i, s.arity))
        .collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = find(&mut parent, x);
            if r == x {
                continue;
            }
            for &(op, arity) in &ops {
                if arity == 1 {
                    changed |= union(&mut parent, a.apply(op, &[x]), a.apply(op, &[r]));
                } else {
                    for z in 0..n {
                        changed |= union(&mut parent, a.apply(op, &[x, z]), a.apply(op, &[r, z]));
                        changed |= union(&mut parent, a.apply(op, &[z, x]), a.apply(op, &[z, r]));
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let raw: Vec<usize> = (0..n).map(|e| find(&mut parent, e)).collect();
    Congruence::from_labels(a.clone(), &raw)
}

pub fn principal_congruence(a: &FinAlgebra, x: Elem, y: Elem) -> Congruence {
    generated_congruence(a, &[(x, y)])
}

/// All congruences with the refinement order.
#[derive(Clone, Debug)]
pub struct ConLattice {
    pub congruences: Vec<Congruence>,
    /// `leq[i][j]` iff congruence `i` refines congruence `j`.
    pub leq: Vec<Vec<bool>>,
}

impl ConLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn position(&self, theta: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|c| c == theta)
    }

    /// Whether the lattice is distributive and complemented.
    pub fn is_boolean(&self) -> bool {
        let n = self.len();
        let join = |i: usize, j: usize| {
            let t = self.congruences[i].join(&self.congruences[j]);
            self.position(&t).expect("joins stay in the lattice")
        };
        let meet = |i: usize, j: usize| {
            let t = self.congruences[i].meet(&self.congruences[j]);
            self.position(&t).expect("meets stay in the lattice")
        };
        let (bottom, top) = (0, n - 1);
        let distributive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| meet(a, join(b, c)) == join(meet(a, b), meet(a, c))))
        });
        let complemented =
            (0..n).all(|a| (0..n).any(|b| join(a, b) == top && meet(a, b) == bottom));
        distributive && complemented
    }
}

/// Every congruence, ordered from the identity partition up to the total one.
pub fn congruence_lattice(a: &FinAlgebra) -> ConLattice {
    let n = a.size();
    let mut principals: Vec<Congruence> = Vec::new();
    let mut seen_p: HashSet<Vec<usize>> = HashSet::new();
    for x in 0..n {
        for y in x + 1..n {
            let p = principal_congruence(a, x, y);
            if seen_p.insert(p.labels.clone()) {
                principals.push(p);
            }
        }
    }
    let delta = Congruence::from_labels(a.clone(), &(0..n).collect::<Vec<_>>());
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut all = vec![];
    let mut queue = VecDeque::new();
    seen.insert(delta.labels.clone());
    queue.push_back(delta);
    while let Some(theta) = queue.pop_front() {
        for p in &principals {
            let j = theta.join(p);
            if seen.insert(j.labels.clone()) {
                queue.push_back(j);
            }
        }
        all.push(theta);
    }
    all.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.labels.cmp(&y.labels)));
    let leq = all
        .iter()
        .map(|x| all.iter().map(|y| x.refines(y)).collect())
        .collect();
    ConLattice {
        congruences: all,
        leq,
    }
}

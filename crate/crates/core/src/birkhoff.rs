//! Finite Priestley duality for bounded and unbounded distributive lattices.
//!
//! At finite scale a Priestley space is a finite poset with the discrete topology.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{enumerate_homs, Elem, FinAlgebra};
use crate::error::{Error, Result};
use crate::relational::{find_structure_iso, RelStructure};
use crate::signature::{Signature, JOIN, MEET, ONE, ZERO};
use crate::varieties::{canonical, validate, CanonicalName, VarietyTag};

/// A finite poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PriestleySpace {
    points: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl PriestleySpace {
    pub fn new(points: Vec<String>, leq: Vec<Vec<bool>>) -> Result<PriestleySpace> {
        let n = points.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidStructure(
                "order matrix has the wrong shape".into(),
            ));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidStructure(format!(
                    "order not reflexive at {i}"
                )));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidStructure(format!(
                        "order not antisymmetric at {i}, {j}"
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::InvalidStructure(format!(
                            "order not transitive at {i}, {j}, {k}"
                        )));
                    }
                }
            }
        }
        Ok(PriestleySpace { points, leq })
    }

    /// The order generated by the given strict pairs (reflexive-transitive closure).
    pub fn from_covers(points: Vec<String>, below: &[(usize, usize)]) -> Result<PriestleySpace> {
        let n = points.len();
        let mut leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for &(i, j) in below {
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        PriestleySpace::new(points, leq)
    }

    pub fn antichain(n: usize) -> PriestleySpace {
        PriestleySpace::from_covers((0..n).map(|i| format!("p{i}")).collect(), &[])
            .expect("antichain")
    }

    pub fn chain(n: usize) -> PriestleySpace {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        PriestleySpace::from_covers((0..n).map(|i| format!("c{i}")).collect(), &covers)
            .expect("chain")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn order_dual(&self) -> PriestleySpace {
        let n = self.len();
        PriestleySpace {
            points: self.points.clone(),
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.leq[j][i]).collect())
                .collect(),
        }
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq[b][x]))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.leq[x][t]))
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom().is_some() && self.top().is_some()
    }

    /// Least upper bound of `x` and `y` within `within` (all points when `None`).
    pub fn join_in(&self, within: &[usize], x: usize, y: usize) -> Option<usize> {
        let ub: Vec<usize> = within
            .iter()
            .copied()
            .filter(|&u| self.leq[x][u] && self.leq[y][u])
            .collect();
        ub.iter()
            .copied()
            .find(|&u| ub.iter().all(|&w| self.leq[u][w]))
    }

    pub fn meet_in(&self, within: &[usize], x: usize, y: usize) -> Option<usize> {
        let lb: Vec<usize> = within
            .iter()
            .copied()
            .filter(|&u| self.leq[u][x] && self.leq[u][y])
            .collect();
        lb.iter()
            .copied()
            .find(|&u| lb.iter().all(|&w| self.leq[w][u]))
    }

    /// A pair of points in `within` lacking a join or a meet there.
    pub fn non_lattice_pair(&self, within: &[usize]) -> Option<(usize, usize)> {
        for (i, &x) in within.iter().enumerate() {
            for &y in &within[i + 1..] {
                if self.join_in(within, x, y).is_none() || self.meet_in(within, x, y).is_none() {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Non-empty and every pair has a join and a meet.
    pub fn is_lattice(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        !self.is_empty() && self.non_lattice_pair(&all).is_none()
    }

    /// `{z | x ≤ z ≤ y}`.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| self.leq[x][z] && self.leq[z][y])
            .collect()
    }

    pub fn is_up_set(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|x| !set[x] || (0..self.len()).all(|y| !self.leq[x][y] || set[y]))
    }

    /// All up-sets as membership vectors, in enumeration order.
    pub fn up_sets(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq[x][y]).count());
        let mut out = vec![];
        let mut cur = vec![false; n];
        fn go(
            s: &PriestleySpace,
            order: &[usize],
            k: usize,
            cur: &mut Vec<bool>,
            out: &mut Vec<Vec<bool>>,
        ) {
            if k == order.len() {
                out.push(cur.clone());
                return;
            }
            let x = order[k];
            go(s, order, k + 1, cur, out);
            if (0..order.len()).all(|y| y == x || !s.leq[x][y] || cur[y]) {
                cur[x] = true;
                go(s, order, k + 1, cur, out);
                cur[x] = false;
            }
        }
        go(self, &order, 0, &mut cur, &mut out);
        out
    }

    pub fn disjoint_union(&self, other: &PriestleySpace) -> PriestleySpace {
        let (n, m) = (self.len(), other.len());
        let points = self
            .points
            .iter()
            .map(|p| format!("inl({p})"))
            .chain(other.points.iter().map(|p| format!("inr({p})")))
            .collect();
        let leq = (0..n + m)
            .map(|i| {
                (0..n + m)
                    .map(|j| match (i < n, j < n) {
                        (true, true) => self.leq[i][j],
                        (false, false) => other.leq[i - n][j - n],
                        _ => false,
                    })
                    .collect()
            })
            .collect();
        PriestleySpace { points, leq }
    }

    fn structure(&self, constants: Vec<usize>) -> RelStructure {
        RelStructure {
            sorts: vec![0; self.len()],
            relations: vec![self.leq.clone()],
            constants,
        }
    }

    /// An order isomorphism onto `other`, if one exists.
    pub fn isomorphism(&self, other: &PriestleySpace) -> Option<Vec<usize>> {
        find_structure_iso(&self.structure(vec![]), &other.structure(vec![]))
    }

    /// Connected components of the comparability graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = vec![];
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = vec![];
            comp[s] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..n {
                    if comp[y] == usize::MAX && (self.leq[x][y] || self.leq[y][x]) {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn restrict(&self, subset: &[usize]) -> PriestleySpace {
        PriestleySpace {
            points: subset.iter().map(|&i| self.points[i].clone()).collect(),
            leq: subset
                .iter()
                .map(|&i| subset.iter().map(|&j| self.leq[i][j]).collect())
                .collect(),
        }
    }
}

/// A finite poset with distinguished bottom and top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublyPointedSpace {
    pub space: PriestleySpace,
    pub bottom: usize,
    pub top: usize,
}

impl DoublyPointedSpace {
    pub fn new(space: PriestleySpace, bottom: usize, top: usize) -> Result<DoublyPointedSpace> {
        let n = space.len();
        if bottom >= n || top >= n {
            return Err(Error::InvalidStructure("endpoint out of range".into()));
        }
        if (0..n).any(|x| !space.leq(bottom, x) || !space.leq(x, top)) {
            return Err(Error::InvalidStructure(
                "endpoints are not bottom and top".into(),
            ));
        }
        Ok(DoublyPointedSpace { space, bottom, top })
    }

    pub fn order_dual(&self) -> DoublyPointedSpace {
        DoublyPointedSpace {
            space: self.space.order_dual(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn isomorphism(&self, other: &DoublyPointedSpace) -> Option<Vec<usize>> {
        find_structure_iso(
            &self.space.structure(vec![self.bottom, self.top]),
            &other.space.structure(vec![other.bottom, other.top]),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderedSpace {
    Plain(PriestleySpace),
    Pointed(DoublyPointedSpace),
}

impl OrderedSpace {
    pub fn poset(&self) -> &PriestleySpace {
        match self {
            OrderedSpace::Plain(s) => s,
            OrderedSpace::Pointed(d) => &d.space,
        }
    }

    pub fn len(&self) -> usize {
        self.poset().len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset().is_empty()
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        match self {
            OrderedSpace::Plain(_) => None,
            OrderedSpace::Pointed(d) => Some((d.bottom, d.top)),
        }
    }

    pub fn isomorphism(&self, other: &OrderedSpace) -> Option<Vec<usize>> {
        match (self, other) {
            (OrderedSpace::Plain(a), OrderedSpace::Plain(b)) => a.isomorphism(b),
            (OrderedSpace::Pointed(a), OrderedSpace::Pointed(b)) => a.isomorphism(b),
            _ => None,
        }
    }
}

/// Points of the Priestley dual as hom maps into `2`, with the induced order.
#[derive(Debug, Clone)]
pub struct LatticeDual {
    pub space: OrderedSpace,
    pub maps: Vec<Vec<Elem>>,
}

impl LatticeDual {
    pub fn position(&self, map: &[Elem]) -> Option<usize> {
        self.maps.iter().position(|m| m == map)
    }
}

pub(crate) fn pointwise_leq(x: &[Elem], y: &[Elem]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

fn filter_name(l: &FinAlgebra, map: &[Elem]) -> String {
    let ones: Vec<&str> = (0..l.size())
        .filter(|&a| map[a] == 1)
        .map(|a| l.name(a))
        .collect();
    format!("{{{}}}", ones.join(","))
}

/// `H(L)` for bounded `L` and `H⁻(L)` (constants included, as endpoints) for unbounded `L`.
pub fn priestley_dual(l: &FinAlgebra) -> Result<LatticeDual> {
    let v = VarietyTag::of(l)?;
    if !v.is_lattice() {
        return Err(Error::Precondition(
            "priestley_dual expects a D or D- algebra".into(),
        ));
    }
    let report = validate(l, v);
    if !report.valid {
        return Err(Error::InvalidAlgebra(format!(
            "not a distributive lattice: {}",
            report.violations[0].axiom
        )));
    }
    let two = if v.is_bounded() {
        canonical(CanonicalName::Two)
    } else {
        canonical(CanonicalName::TwoUnbounded)
    };
    let maps: Vec<Vec<Elem>> = enumerate_homs(l, &two)?
        .into_iter()
        .map(|h| h.map().to_vec())
        .collect();
    let names = maps.iter().map(|m| filter_name(l, m)).collect();
    let leq = maps
        .iter()
        .map(|x| maps.iter().map(|y| pointwise_leq(x, y)).collect())
        .collect();
    let poset = PriestleySpace::new(names, leq)?;
    let space = if v.is_bounded() {
        OrderedSpace::Plain(poset)
    } else {
        let bottom = maps
            .iter()
            .position(|m| m.iter().all(|&b| b == 0))
            .expect("constant 0");
        let top = maps
            .iter()
            .position(|m| m.iter().all(|&b| b == 1))
            .expect("constant 1");
        OrderedSpace::Pointed(DoublyPointedSpace::new(poset, bottom, top)?)
    };
    Ok(LatticeDual { space, maps })
}

fn set_name(x: &PriestleySpace, set: &[bool]) -> String {
    let members: Vec<&str> = (0..x.len())
        .filter(|&i| set[i])
        .map(|i| x.points()[i].as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// `K(X)`: up-sets under union and intersection; for a doubly pointed `X`, only those
/// containing the top and not the bottom, without bounds in the signature.
pub fn upset_algebra(x: &OrderedSpace) -> FinAlgebra {
    let poset = x.poset();
    let mut sets: Vec<Vec<bool>> = poset
        .up_sets()
        .into_iter()
        .filter(|u| match x.endpoints() {
            None => true,
            Some((b, t)) => u[t] && !u[b],
        })
        .collect();
    let key = |u: &Vec<bool>| {
        let members: Vec<usize> = (0..u.len()).filter(|&i| u[i]).collect();
        (members.len(), members)
    };
    sets.sort_by_key(key);
    if sets.is_empty() {
        // A doubly pointed space with bottom = top has no proper up-set.
        sets.push(vec![true; poset.len()]);
    }
    let index: HashMap<Vec<bool>, usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let names: Vec<String> = sets.iter().map(|s| set_name(poset, s)).collect();
    let combine = |a: &[bool], b: &[bool], union: bool| -> Vec<bool> {
        a.iter()
            .zip(b)
            .map(|(&p, &q)| if union { p || q } else { p && q })
            .collect()
    };
    let (sig, bounded) = match x {
        OrderedSpace::Plain(_) => (Signature::d(), true),
        OrderedSpace::Pointed(_) => (Signature::d_minus(), false),
    };
    let last = sets.len() - 1;
    FinAlgebra::from_fn(sig.clone(), names, |op, args| {
        match sig.ops()[op].symbol.as_str() {
            JOIN => index[&combine(&sets[args[0]], &sets[args[1]], true)],
            MEET => index[&combine(&sets[args[0]], &sets[args[1]], false)],
            ZERO if bounded => 0,
            ONE if bounded => last,
            _ => unreachable!("lattice signature"),
        }
    })
    .expect("up-sets form a lattice")
}

pub fn order_dual(x: &OrderedSpace) -> OrderedSpace {
    match x {
        OrderedSpace::Plain(s) => OrderedSpace::Plain(s.order_dual()),
        OrderedSpace::Pointed(d) => OrderedSpace::Pointed(d.order_dual()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoproductMode {
    /// Disjoint union.
    P,
    /// Disjoint union with bottoms identified and tops identified.
    P01,
}

pub fn coproduct_spaces(
    x: &OrderedSpace,
    y: &OrderedSpace,
    mode: CoproductMode,
) -> Result<OrderedSpace> {
    match mode {
        CoproductMode::P => Ok(OrderedSpace::Plain(x.poset().disjoint_union(y.poset()))),
        CoproductMode::P01 => {
            let (OrderedSpace::Pointed(a), OrderedSpace::Pointed(b)) = (x, y) else {
                return Err(Error::Precondition(
                    "P01 coproduct needs doubly pointed spaces".into(),
                ));
            };
            let n = a.space.len();
            let inner: Vec<usize> = (0..b.space.len())
                .filter(|&q| q != b.bottom && q != b.top)
                .collect();
            // Position of each point of `b` in the coproduct.
            let place = |q: usize| -> usize {
                if q == b.bottom {
                    a.bottom
                } else if q == b.top {
                    a.top
                } else {
                    n + inner.iter().position(|&i| i == q).expect("inner point")
                }
            };
            let total = n + inner.len();
            let mut points: Vec<String> = a
                .space
                .points()
                .iter()
                .map(|p| format!("inl({p})"))
                .collect();
            points.extend(
                inner
                    .iter()
                    .map(|&q| format!("inr({})", b.space.points()[q])),
            );
            let mut leq = vec![vec![false; total]; total];
            for i in 0..n {
                for j in 0..n {
                    leq[i][j] = a.space.leq(i, j);
                }
            }
            for p in 0..b.space.len() {
                for q in 0..b.space.len() {
                    if b.space.leq(p, q) {
                        leq[place(p)][place(q)] = true;
                    }
                }
            }
            for z in 0..total {
                leq[a.bottom][z] = true;
                leq[z][a.top] = true;
            }
            let space = PriestleySpace::new(points, leq)?;
            Ok(OrderedSpace::Pointed(DoublyPointedSpace::new(
                space, a.bottom, a.top,
            )?))
        }
    }
}

/// Join-irreducible elements of a bounded lattice in D.
pub fn join_irreducibles(l: &FinAlgebra) -> Vec<Elem> {
    let join = l.op_index(JOIN).expect("lattice join");
    let bottom = l.constant(ZERO);
    (0..l.size())
        .filter(|&a| Some(a) != bottom)
        .filter(|&a| {
            (0..l.size())
                .all(|b| (0..l.size()).all(|c| l.apply(join, &[b, c]) != a || b == a || c == a))
        })
        .collect()
}

/// The least element of the prime filter `x⁻¹(1)`, a join-irreducible.
pub fn point_as_join_irreducible(l: &FinAlgebra, x: &[Elem]) -> Option<Elem> {
    let meet = l.op_index(MEET)?;
    let mut ones = (0..l.size()).filter(|&a| x[a] == 1);
    let first = ones.next()?;
    Some(ones.fold(first, |acc, a| l.apply(meet, &[acc, a])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_isomorphism;
    use crate::varieties::t_lattice;
    use proptest::prelude::*;

    fn diamond() -> FinAlgebra {
        t_lattice(&canonical(CanonicalName::Four)).unwrap()
    }

    fn bounded_diamond_space() -> OrderedSpace {
        let s = PriestleySpace::from_covers(
            vec!["b".into(), "l".into(), "r".into(), "t".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        OrderedSpace::Pointed(DoublyPointedSpace::new(s, 0, 3).unwrap())
    }

    #[test]
    fn dual_of_diamond_is_antichain() {
        let d = priestley_dual(&diamond()).unwrap();
        assert_eq!(d.space.len(), 2);
        assert!(d
            .space
            .poset()
            .isomorphism(&PriestleySpace::antichain(2))
            .is_some());
    }

    #[test]
    fn dual_of_two_is_a_point() {
        assert_eq!(
            priestley_dual(&canonical(CanonicalName::Two))
                .unwrap()
                .space
                .len(),
            1
        );
    }

    #[test]
    fn unbounded_dual_of_diamond_is_bounded_diamond() {
        let l = t_lattice(&canonical(CanonicalName::FourMinus)).unwrap();
        let d = priestley_dual(&l).unwrap();
        assert_eq!(d.space.len(), 4);
        assert!(d.space.isomorphism(&bounded_diamond_space()).is_some());
    }

    #[test]
    fn upset_algebras() {
        let anti = upset_algebra(&OrderedSpace::Plain(PriestleySpace::antichain(2)));
        assert!(find_isomorphism(&anti, &diamond()).unwrap().is_some());
        assert!(upset_algebra(&OrderedSpace::Plain(PriestleySpace::antichain(0))).is_trivial());
        let unb = upset_algebra(&bounded_diamond_space());
        let l = t_lattice(&canonical(CanonicalName::FourMinus)).unwrap();
        assert!(find_isomorphism(&unb, &l).unwrap().is_some());
    }

    #[test]
    fn coproducts() {
        let pt = OrderedSpace::Plain(PriestleySpace::antichain(1));
        let two = coproduct_spaces(&pt, &pt, CoproductMode::P).unwrap();
        assert!(two
            .poset()
            .isomorphism(&PriestleySpace::antichain(2))
            .is_some());
        let c3 =
            OrderedSpace::Pointed(DoublyPointedSpace::new(PriestleySpace::chain(3), 0, 2).unwrap());
        let d = coproduct_spaces(&c3, &c3, CoproductMode::P01).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.isomorphism(&bounded_diamond_space()).is_some());
        let anti = PriestleySpace::antichain(2);
        assert!(anti.order_dual().isomorphism(&anti).is_some());
    }

    #[test]
    fn invalid_lattice_is_rejected() {
        let sig = Signature::d_minus();
        let bad = FinAlgebra::from_tables(
            sig,
            vec!["a".into(), "b".into()],
            vec![vec![0; 4], vec![0; 4]],
        )
        .unwrap();
        assert!(priestley_dual(&bad).is_err());
    }

    /// Random poset on `n` points from a strict upper-triangular relation.
    fn poset_from(n: usize, bits: &[bool]) -> PriestleySpace {
        let mut covers = vec![];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] {
                    covers.push((i, j));
                }
                k += 1;
            }
        }
        PriestleySpace::from_covers((0..n).map(|i| format!("p{i}")).collect(), &covers).unwrap()
    }

    proptest! {
        #[test]
        fn bounded_round_trip(n in 0usize..4, bits in prop::collection::vec(any::<bool>(), 6)) {
            let x = OrderedSpace::Plain(poset_from(n, &bits));
            let l = upset_algebra(&x);
            prop_assume!(l.size() <= 7);
            let back = upset_algebra(&priestley_dual(&l).unwrap().space);
            prop_assert!(find_isomorphism(&back, &l).unwrap().is_some());
            prop_assert_eq!(priestley_dual(&l).unwrap().space.len(), join_irreducibles(&l).len());
        }

        #[test]
        fn unbounded_round_trip(n in 0usize..4, bits in prop::collection::vec(any::<bool>(), 6)) {
            let inner = poset_from(n, &bits);
            let mut covers = vec![];
            for i in 0..n {
                covers.push((0, i + 1));
                covers.push((i + 1, n + 1));
            }
            covers.push((0, n + 1));
            for i in 0..n {
                for j in 0..n {
                    if i != j && inner.leq(i, j) {
                        covers.push((i + 1, j + 1));
                    }
                }
            }
            let names = (0..n + 2).map(|i| format!("q{i}")).collect();
            let x = OrderedSpace::Pointed(
                DoublyPointedSpace::new(PriestleySpace::from_covers(names, &covers).unwrap(), 0, n + 1)
                    .unwrap(),
            );
            let l = upset_algebra(&x);
            prop_assume!(l.size() <= 7);
            let back = upset_algebra(&priestley_dual(&l).unwrap().space);
            prop_assert!(find_isomorphism(&back, &l).unwrap().is_some());
        }

        #[test]
        fn coproduct_sizes(n in 1usize..4, m in 1usize..4) {
            let x = OrderedSpace::Plain(PriestleySpace::chain(n));
            let y = OrderedSpace::Plain(PriestleySpace::antichain(m));
            prop_assert_eq!(coproduct_spaces(&x, &y, CoproductMode::P).unwrap().len(), n + m);
            let px = OrderedSpace::Pointed(DoublyPointedSpace::new(PriestleySpace::chain(n + 1), 0, n).unwrap());
            let py = OrderedSpace::Pointed(DoublyPointedSpace::new(PriestleySpace::chain(m + 1), 0, m).unwrap());
            prop_assert_eq!(coproduct_spaces(&px, &py, CoproductMode::P01).unwrap().len(), n + m);
        }
    }

    #[test]
    fn points_correspond_to_join_irreducibles() {
        let l = diamond();
        let d = priestley_dual(&l).unwrap();
        let mut jis: Vec<Elem> = d
            .maps
            .iter()
            .map(|m| point_as_join_irreducible(&l, m).unwrap())
            .collect();
        jis.sort_unstable();
        assert_eq!(jis, join_irreducibles(&l));
    }
}

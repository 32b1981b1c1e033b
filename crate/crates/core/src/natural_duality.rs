//! Alter egos, the hom-functors `D` and `E`, and what they compute: free algebras,
//! coproducts and congruence lattices.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{
    congruence_lattice, enumerate_homs, preservation_violation, Congruence, Elem, FinAlgebra, Hom,
    SubUniverse, MATERIALIZE_LIMIT,
};
use crate::birkhoff::PriestleySpace;
use crate::error::{Error, Result};
use crate::relational::{find_structure_iso, RelStructure};
use crate::signature::JOIN;
use crate::varieties::{canonical, knowledge_tables, CanonicalName, VarietyTag};

/// Default cap on the number of maps an evaluation may produce.
pub const DEFAULT_GUARD: u64 = 1_000_000;

/// A binary relation between two sorts, given as a subuniverse of their product.
#[derive(Debug, Clone)]
pub struct EgoRelation {
    pub name: String,
    pub source: usize,
    pub target: usize,
    width: usize,
    sub: SubUniverse,
}

impl EgoRelation {
    pub fn holds(&self, a: Elem, b: Elem) -> bool {
        self.sub.contains(a * self.width + b)
    }

    pub fn subuniverse(&self) -> &SubUniverse {
        &self.sub
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        self.sub
            .elements()
            .iter()
            .map(|&e| (e / self.width, e % self.width))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct AlterEgo {
    pub variety: VarietyTag,
    pub sorts: Vec<FinAlgebra>,
    pub relations: Vec<EgoRelation>,
    /// `(sort, element)`.
    pub nullaries: Vec<(usize, Elem)>,
}

impl AlterEgo {
    pub fn new(
        variety: VarietyTag,
        sorts: Vec<FinAlgebra>,
        relations: Vec<(String, usize, usize, Vec<(Elem, Elem)>)>,
        nullaries: Vec<(usize, Elem)>,
    ) -> Result<AlterEgo> {
        if sorts.is_empty() {
            return Err(Error::InvalidStructure("alter ego without sorts".into()));
        }
        for s in &sorts[1..] {
            sorts[0].check_compatible(s)?;
        }
        let mut rels = vec![];
        for (name, source, target, pairs) in relations {
            if source >= sorts.len() || target >= sorts.len() {
                return Err(Error::InvalidStructure(format!(
                    "relation {name}: sort out of range"
                )));
            }
            let product = sorts[source].product(&sorts[target])?;
            let width = sorts[target].size();
            let elems: Vec<Elem> = pairs.iter().map(|&(a, b)| a * width + b).collect();
            let sub = SubUniverse::new(product, &elems).map_err(|_| {
                Error::InvalidStructure(format!("relation {name} is not a subuniverse"))
            })?;
            rels.push(EgoRelation {
                name,
                source,
                target,
                width,
                sub,
            });
        }
        for &(s, c) in &nullaries {
            if s >= sorts.len() || SubUniverse::new(sorts[s].clone(), &[c]).is_err() {
                return Err(Error::InvalidStructure(format!(
                    "nullary ({s}, {c}) is not a one-element subuniverse"
                )));
            }
        }
        Ok(AlterEgo {
            variety,
            sorts,
            relations: rels,
            nullaries,
        })
    }
}

/// `{(a, b) | a ∨ b = b}` for a join table.
fn order_pairs(n: usize, join: &[Elem]) -> Vec<(Elem, Elem)> {
    let mut out = vec![];
    for a in 0..n {
        for b in 0..n {
            if join[a * n + b] == b {
                out.push((a, b));
            }
        }
    }
    out
}

fn k_order(m: &FinAlgebra) -> Vec<(Elem, Elem)> {
    let (jk, _) = knowledge_tables(m).expect("bilattice sort");
    order_pairs(m.size(), &jk)
}

pub fn standard_alter_ego(v: VarietyTag) -> AlterEgo {
    let le_k = |m: &FinAlgebra, s| ("le_k".to_string(), s, s, k_order(m));
    let (sorts, nullaries): (Vec<FinAlgebra>, Vec<(usize, Elem)>) = match v {
        VarietyTag::Db => (vec![canonical(CanonicalName::Four)], vec![]),
        VarietyTag::DbMinus => (
            vec![canonical(CanonicalName::FourMinus)],
            vec![(0, 2), (0, 3)],
        ),
        VarietyTag::Dpb => (
            vec![
                canonical(CanonicalName::TwoPlus),
                canonical(CanonicalName::TwoMinus),
            ],
            vec![],
        ),
        VarietyTag::DpbMinus => (
            vec![
                canonical(CanonicalName::TwoPlusMinus),
                canonical(CanonicalName::TwoMinusMinus),
            ],
            vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        ),
        VarietyTag::D => (vec![canonical(CanonicalName::Two)], vec![]),
        VarietyTag::DMinus => (
            vec![canonical(CanonicalName::TwoUnbounded)],
            vec![(0, 0), (0, 1)],
        ),
    };
    let relations = if v.is_lattice() {
        let m = &sorts[0];
        let join = m.table(m.op_index(JOIN).expect("lattice join"));
        vec![("le".to_string(), 0, 0, order_pairs(m.size(), &join))]
    } else {
        sorts.iter().enumerate().map(|(s, m)| le_k(m, s)).collect()
    };
    AlterEgo::new(v, sorts, relations, nullaries).expect("standard alter egos are well formed")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Point {
    pub sort: usize,
    pub label: String,
}

/// A finite multisorted structure typed over an alter ego: relation `r` only relates
/// points of sorts `(r.source, r.target)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuredSpace {
    pub sorts: usize,
    pub points: Vec<Point>,
    /// One full incidence matrix per ego relation.
    pub relations: Vec<Vec<Vec<bool>>>,
    /// One point per ego nullary.
    pub nullaries: Vec<usize>,
}

impl StructuredSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sort_of(&self, p: usize) -> usize {
        self.points[p].sort
    }

    pub fn points_of_sort(&self, s: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.points[p].sort == s)
            .collect()
    }

    pub fn related(&self, r: usize, p: usize, q: usize) -> bool {
        self.relations[r][p][q]
    }

    /// Checks sort typing against the ego.
    pub fn check_typed(&self, e: &AlterEgo) -> Result<()> {
        if self.sorts != e.sorts.len()
            || self.relations.len() != e.relations.len()
            || self.nullaries.len() != e.nullaries.len()
        {
            return Err(Error::InvalidStructure(
                "space does not match the alter ego".into(),
            ));
        }
        if self.points.iter().any(|p| p.sort >= self.sorts) {
            return Err(Error::InvalidStructure("point of unknown sort".into()));
        }
        for (r, rel) in e.relations.iter().enumerate() {
            for p in 0..self.len() {
                for q in 0..self.len() {
                    if self.relations[r][p][q]
                        && (self.sort_of(p) != rel.source || self.sort_of(q) != rel.target)
                    {
                        return Err(Error::InvalidStructure(format!(
                            "{} relates points of the wrong sorts",
                            rel.name
                        )));
                    }
                }
            }
        }
        for (i, &p) in self.nullaries.iter().enumerate() {
            if p >= self.len() || self.sort_of(p) != e.nullaries[i].0 {
                return Err(Error::InvalidStructure(format!("nullary {i} misplaced")));
            }
        }
        Ok(())
    }

    /// The empty structure, legal only for egos without nullaries.
    pub fn empty(e: &AlterEgo) -> StructuredSpace {
        StructuredSpace {
            sorts: e.sorts.len(),
            points: vec![],
            relations: vec![vec![]; e.relations.len()],
            nullaries: vec![],
        }
    }

    /// The alter ego itself, read as a structure.
    pub fn of_ego(e: &AlterEgo) -> StructuredSpace {
        ego_power(e, 1).0
    }

    /// A poset as a space over a single-sorted ego with one relation and no nullaries.
    pub fn from_poset(p: &PriestleySpace) -> StructuredSpace {
        StructuredSpace {
            sorts: 1,
            points: p
                .points()
                .iter()
                .map(|l| Point {
                    sort: 0,
                    label: l.clone(),
                })
                .collect(),
            relations: vec![p.matrix().to_vec()],
            nullaries: vec![],
        }
    }

    /// Relation `r` as a poset, if it is a partial order on the whole space.
    pub fn poset(&self, r: usize) -> Result<PriestleySpace> {
        PriestleySpace::new(
            self.points.iter().map(|p| p.label.clone()).collect(),
            self.relations[r].clone(),
        )
    }

    /// Whether `map` is a sort-, relation- and nullary-preserving map into `other`.
    pub fn is_morphism(&self, other: &StructuredSpace, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&q| q < other.len())
            && (0..self.len()).all(|p| self.sort_of(p) == other.sort_of(map[p]))
            && self.relations.iter().zip(&other.relations).all(|(r, s)| {
                (0..self.len()).all(|p| (0..self.len()).all(|q| !r[p][q] || s[map[p]][map[q]]))
            })
            && self
                .nullaries
                .iter()
                .zip(&other.nullaries)
                .all(|(&p, &q)| map[p] == q)
    }

    /// A bijective morphism whose inverse is a morphism.
    pub fn is_isomorphism(&self, other: &StructuredSpace, map: &[usize]) -> bool {
        if self.len() != other.len() || !self.is_morphism(other, map) {
            return false;
        }
        let mut inv = vec![usize::MAX; other.len()];
        for (p, &q) in map.iter().enumerate() {
            if inv[q] != usize::MAX {
                return false;
            }
            inv[q] = p;
        }
        other.is_morphism(self, &inv)
    }

    fn structure(&self) -> RelStructure {
        RelStructure {
            sorts: self.points.iter().map(|p| p.sort).collect(),
            relations: self.relations.clone(),
            constants: self.nullaries.clone(),
        }
    }

    pub fn isomorphism(&self, other: &StructuredSpace) -> Option<Vec<usize>> {
        if self.sorts != other.sorts {
            return None;
        }
        find_structure_iso(&self.structure(), &other.structure())
    }

    /// Sortwise product with componentwise relations and nullaries.
    pub fn product(&self, other: &StructuredSpace) -> Result<StructuredSpace> {
        if self.sorts != other.sorts
            || self.relations.len() != other.relations.len()
            || self.nullaries.len() != other.nullaries.len()
        {
            return Err(Error::InvalidStructure(
                "spaces are typed differently".into(),
            ));
        }
        let mut pairs = vec![];
        for s in 0..self.sorts {
            for p in self.points_of_sort(s) {
                for q in other.points_of_sort(s) {
                    pairs.push((p, q));
                }
            }
        }
        let points = pairs
            .iter()
            .map(|&(p, q)| Point {
                sort: self.sort_of(p),
                label: format!("({},{})", self.points[p].label, other.points[q].label),
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .zip(&other.relations)
            .map(|(r, s)| {
                pairs
                    .iter()
                    .map(|&(p, q)| pairs.iter().map(|&(p2, q2)| r[p][p2] && s[q][q2]).collect())
                    .collect()
            })
            .collect();
        let nullaries = self
            .nullaries
            .iter()
            .zip(&other.nullaries)
            .map(|(&p, &q)| {
                pairs
                    .iter()
                    .position(|&x| x == (p, q))
                    .expect("sorts agree")
            })
            .collect();
        Ok(StructuredSpace {
            sorts: self.sorts,
            points,
            relations,
            nullaries,
        })
    }

    /// The induced substructure on `subset` (which must contain every nullary point).
    pub fn restrict(&self, subset: &[usize]) -> Result<StructuredSpace> {
        let pos = |p: usize| subset.iter().position(|&x| x == p);
        let nullaries = self
            .nullaries
            .iter()
            .map(|&p| pos(p).ok_or_else(|| Error::InvalidStructure("nullary point removed".into())))
            .collect::<Result<Vec<usize>>>()?;
        Ok(StructuredSpace {
            sorts: self.sorts,
            points: subset.iter().map(|&p| self.points[p].clone()).collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    subset
                        .iter()
                        .map(|&p| subset.iter().map(|&q| r[p][q]).collect())
                        .collect()
                })
                .collect(),
            nullaries,
        })
    }
}

/// `ego^n` computed sortwise, with the coordinate tuple of each point.
pub fn ego_power(e: &AlterEgo, n: usize) -> (StructuredSpace, Vec<Vec<Elem>>) {
    let mut points = vec![];
    let mut coords: Vec<Vec<Elem>> = vec![];
    for (s, m) in e.sorts.iter().enumerate() {
        for t in crate::algebra::tuples(m.size(), n) {
            let names: Vec<&str> = t.iter().map(|&a| m.name(a)).collect();
            let label = if n == 1 {
                names[0].to_string()
            } else {
                format!("({})", names.join(","))
            };
            points.push(Point { sort: s, label });
            coords.push(t);
        }
    }
    let relations = e
        .relations
        .iter()
        .map(|rel| {
            (0..points.len())
                .map(|p| {
                    (0..points.len())
                        .map(|q| {
                            points[p].sort == rel.source
                                && points[q].sort == rel.target
                                && (0..n).all(|i| rel.holds(coords[p][i], coords[q][i]))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let nullaries = e
        .nullaries
        .iter()
        .map(|&(s, c)| {
            (0..points.len())
                .find(|&p| points[p].sort == s && coords[p].iter().all(|&a| a == c))
                .expect("constant tuple")
        })
        .collect();
    let space = StructuredSpace {
        sorts: e.sorts.len(),
        points,
        relations,
        nullaries,
    };
    (space, coords)
}

/// `D(A)` together with the hom behind each point.
#[derive(Debug, Clone)]
pub struct NaturalDual {
    pub space: StructuredSpace,
    pub maps: Vec<Vec<Elem>>,
}

impl NaturalDual {
    pub fn position(&self, sort: usize, map: &[Elem]) -> Option<usize> {
        (0..self.maps.len()).find(|&p| self.space.sort_of(p) == sort && self.maps[p] == map)
    }
}

fn map_label(m: &FinAlgebra, map: &[Elem]) -> String {
    let names: Vec<&str> = map.iter().map(|&b| m.name(b)).collect();
    format!("[{}]", names.join(","))
}

pub fn natural_dual(a: &FinAlgebra, e: &AlterEgo) -> Result<NaturalDual> {
    a.check_compatible(&e.sorts[0])?;
    let mut points = vec![];
    let mut maps: Vec<Vec<Elem>> = vec![];
    for (s, m) in e.sorts.iter().enumerate() {
        for h in enumerate_homs(a, m)? {
            points.push(Point {
                sort: s,
                label: map_label(m, h.map()),
            });
            maps.push(h.map().to_vec());
        }
    }
    let n = points.len();
    let relations = e
        .relations
        .iter()
        .map(|rel| {
            (0..n)
                .map(|p| {
                    (0..n)
                        .map(|q| {
                            points[p].sort == rel.source
                                && points[q].sort == rel.target
                                && (0..a.size()).all(|x| rel.holds(maps[p][x], maps[q][x]))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let nullaries = e
        .nullaries
        .iter()
        .map(|&(s, c)| {
            (0..n)
                .find(|&p| points[p].sort == s && maps[p].iter().all(|&b| b == c))
                .ok_or_else(|| Error::TheoremViolation("constant map is not a hom".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(NaturalDual {
        space: StructuredSpace {
            sorts: e.sorts.len(),
            points,
            relations,
            nullaries,
        },
        maps,
    })
}

/// `D(h)`: the map `x ↦ x∘h` from `D(B)` to `D(A)` for `h: A → B`.
pub fn dual_morphism(h: &Hom, da: &NaturalDual, db: &NaturalDual) -> Result<Vec<usize>> {
    let map = (0..db.maps.len())
        .map(|p| {
            let composite: Vec<Elem> = h.map().iter().map(|&b| db.maps[p][b]).collect();
            da.position(db.space.sort_of(p), &composite)
                .ok_or_else(|| Error::TheoremViolation("composite is not a point of D(A)".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    if !db.space.is_morphism(&da.space, &map) {
        return Err(Error::TheoremViolation(
            "D(h) does not preserve the structure".into(),
        ));
    }
    Ok(map)
}

/// `E(X)` with the morphism behind each element.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub algebra: FinAlgebra,
    pub maps: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
}

impl Evaluation {
    pub fn element(&self, map: &[Elem]) -> Option<Elem> {
        self.index.get(map).copied()
    }
}

/// All morphisms `X → ego`, in lexicographic order, stopping past `limit` of them.
fn enumerate_space_maps(x: &StructuredSpace, e: &AlterEgo, limit: u64) -> Result<Vec<Vec<Elem>>> {
    x.check_typed(e)?;
    let n = x.len();
    let mut fixed: Vec<Option<Elem>> = vec![None; n];
    for (i, &p) in x.nullaries.iter().enumerate() {
        let c = e.nullaries[i].1;
        match fixed[p] {
            Some(d) if d != c => return Ok(vec![]),
            _ => fixed[p] = Some(c),
        }
    }
    // For each point, the constraints linking it to earlier points (or itself).
    let mut checks: Vec<Vec<(usize, usize, bool)>> = vec![vec![]; n];
    for (r, m) in x.relations.iter().enumerate() {
        for p in 0..n {
            for q in 0..=p {
                if m[q][p] {
                    checks[p].push((r, q, true));
                }
                if q != p && m[p][q] {
                    checks[p].push((r, q, false));
                }
            }
        }
    }
    let mut out = vec![];
    let mut cur = vec![0; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        p: usize,
        x: &StructuredSpace,
        e: &AlterEgo,
        fixed: &[Option<Elem>],
        checks: &[Vec<(usize, usize, bool)>],
        cur: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
        limit: u64,
    ) -> bool {
        if p == cur.len() {
            out.push(cur.clone());
            return out.len() as u64 <= limit;
        }
        let size = e.sorts[x.sort_of(p)].size();
        let range = match fixed[p] {
            Some(c) => c..c + 1,
            None => 0..size,
        };
        for v in range {
            cur[p] = v;
            let ok = checks[p].iter().all(|&(r, q, forward)| {
                if forward {
                    e.relations[r].holds(cur[q], v)
                } else {
                    e.relations[r].holds(v, cur[q])
                }
            });
            if ok && !go(p + 1, x, e, fixed, checks, cur, out, limit) {
                return false;
            }
        }
        true
    }
    if !go(0, x, e, &fixed, &checks, &mut cur, &mut out, limit) {
        return Err(Error::ResourceGuard {
            estimate: format!("more than {limit} structure-preserving maps"),
            limit,
        });
    }
    Ok(out)
}

pub fn evaluation(x: &StructuredSpace, e: &AlterEgo, limit: u64) -> Result<Evaluation> {
    let maps = enumerate_space_maps(x, e, limit)?;
    if maps.is_empty() {
        return Err(Error::InvalidStructure(
            "no structure-preserving maps: the evaluation algebra would be empty".into(),
        ));
    }
    let coords: Vec<FinAlgebra> = x.points.iter().map(|p| e.sorts[p.sort].clone()).collect();
    let names = maps
        .iter()
        .map(|m| {
            let parts: Vec<&str> = m
                .iter()
                .enumerate()
                .map(|(p, &v)| coords[p].name(v))
                .collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let algebra =
        FinAlgebra::from_pointwise(e.sorts[0].signature().clone(), coords, maps.clone(), names)?;
    let index = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(Evaluation {
        algebra,
        maps,
        index,
    })
}

pub fn evaluation_algebra(x: &StructuredSpace, e: &AlterEgo) -> Result<FinAlgebra> {
    Ok(evaluation(x, e, DEFAULT_GUARD)?.algebra)
}

/// `E(φ)`: the map `g ↦ g∘φ` from `E(Y)` to `E(X)` for a morphism `φ: X → Y`.
///
/// Preservation holds by construction; it is re-checked when the source is small.
pub fn evaluation_morphism(
    ex: &Evaluation,
    ey: &Evaluation,
    x: &StructuredSpace,
    y: &StructuredSpace,
    phi: &[usize],
) -> Result<Hom> {
    if !x.is_morphism(y, phi) {
        return Err(Error::InvalidStructure(
            "not a morphism of structured spaces".into(),
        ));
    }
    let map = ey
        .maps
        .iter()
        .map(|g| {
            let composite: Vec<Elem> = phi.iter().map(|&q| g[q]).collect();
            ex.element(&composite)
                .ok_or_else(|| Error::TheoremViolation("g∘φ is not in E(X)".into()))
        })
        .collect::<Result<Vec<Elem>>>()?;
    if ey.algebra.size() <= MATERIALIZE_LIMIT {
        Hom::new(ey.algebra.clone(), ex.algebra.clone(), map)
    } else {
        Ok(Hom::trusted(ey.algebra.clone(), ex.algebra.clone(), map))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub algebra_size: usize,
    pub dual_points: usize,
    pub evaluation_size: usize,
    pub evaluation_iso: bool,
    pub coevaluation_iso: bool,
    pub witnesses: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.evaluation_iso && self.coevaluation_iso
    }
}

/// Checks that `e_A: A → ED(A)` and `ε_{D(A)}: D(A) → DED(A)` are isomorphisms.
pub fn verify_full_duality(a: &FinAlgebra, e: &AlterEgo) -> Result<DualityReport> {
    verify_full_duality_with_guard(a, e, DEFAULT_GUARD)
}

pub fn verify_full_duality_with_guard(
    a: &FinAlgebra,
    e: &AlterEgo,
    limit: u64,
) -> Result<DualityReport> {
    let d = natural_dual(a, e)?;
    let ev = evaluation(&d.space, e, limit)?;
    let mut witnesses = vec![];
    let e_a: Vec<Option<Elem>> = (0..a.size())
        .map(|x| {
            let image: Vec<Elem> = d.maps.iter().map(|m| m[x]).collect();
            ev.element(&image)
        })
        .collect();
    let evaluation_iso = if let Some(x) = e_a.iter().position(|v| v.is_none()) {
        witnesses.push(format!("e_A({}) is not in E(D(A))", a.name(x)));
        false
    } else {
        let map: Vec<Elem> = e_a.into_iter().map(|v| v.expect("checked")).collect();
        if let Some((op, args)) = preservation_violation(a, &ev.algebra, &map) {
            witnesses.push(format!("e_A does not preserve {op} at {args:?}"));
            false
        } else {
            let h = Hom::trusted(a.clone(), ev.algebra.clone(), map);
            if !h.is_injective() {
                let m = h.map();
                let (x, y) = (0..a.size())
                    .flat_map(|x| (x + 1..a.size()).map(move |y| (x, y)))
                    .find(|&(x, y)| m[x] == m[y])
                    .expect("collision");
                witnesses.push(format!("e_A identifies {} and {}", a.name(x), a.name(y)));
                false
            } else if !h.is_surjective() {
                let g = (0..ev.algebra.size())
                    .find(|g| !h.map().contains(g))
                    .expect("missed element");
                witnesses.push(format!("e_A misses {}", ev.algebra.name(g)));
                false
            } else {
                true
            }
        }
    };
    let dd = natural_dual(&ev.algebra, e)?;
    let eps: Vec<Option<usize>> = (0..d.space.len())
        .map(|p| {
            let image: Vec<Elem> = ev.maps.iter().map(|g| g[p]).collect();
            dd.position(d.space.sort_of(p), &image)
        })
        .collect();
    let coevaluation_iso = if let Some(p) = eps.iter().position(|v| v.is_none()) {
        witnesses.push(format!("ε({}) is not a hom", d.space.points[p].label));
        false
    } else {
        let map: Vec<usize> = eps.into_iter().map(|v| v.expect("checked")).collect();
        if d.space.is_isomorphism(&dd.space, &map) {
            true
        } else {
            witnesses.push(format!(
                "ε is not an isomorphism: {} points onto {}",
                d.space.len(),
                dd.space.len()
            ));
            false
        }
    };
    Ok(DualityReport {
        algebra_size: a.size(),
        dual_points: d.space.len(),
        evaluation_size: ev.algebra.size(),
        evaluation_iso,
        coevaluation_iso,
        witnesses,
    })
}

const DEDEKIND: [u128; 9] = [
    2,
    3,
    6,
    20,
    168,
    7581,
    7_828_354,
    2_414_682_040_998,
    56_130_437_228_687_557_907_788,
];

/// Size of the free algebra on `n` generators for a standard alter ego, when known.
pub fn free_size_estimate(v: VarietyTag, n: usize) -> Option<u128> {
    let m = |k: usize| DEDEKIND.get(k).copied();
    let sq = |x: u128| x.checked_mul(x);
    match v {
        VarietyTag::Db => sq(m(2 * n)?),
        VarietyTag::DbMinus => sq(m(2 * n)? - 2),
        VarietyTag::Dpb => sq(m(n)?),
        VarietyTag::DpbMinus => sq(m(n)? - 2),
        VarietyTag::D => m(n),
        VarietyTag::DMinus => Some(m(n)? - 2),
    }
}

#[derive(Debug, Clone)]
pub struct FreeAlgebra {
    pub algebra: FinAlgebra,
    pub generators: Vec<Elem>,
    pub space: StructuredSpace,
    pub evaluation: Evaluation,
}

pub fn free_algebra(v: VarietyTag, n: usize) -> Result<FreeAlgebra> {
    free_algebra_with_guard(v, n, DEFAULT_GUARD)
}

/// `E(ego^n)` with the projections as free generators.
pub fn free_algebra_with_guard(v: VarietyTag, n: usize, limit: u64) -> Result<FreeAlgebra> {
    match free_size_estimate(v, n) {
        Some(0) => {
            return Err(Error::Precondition(format!(
                "{v} has no free algebra on {n} generators (it would be empty)"
            )))
        }
        Some(size) if size <= limit as u128 => {}
        Some(size) => {
            return Err(Error::ResourceGuard {
                estimate: size.to_string(),
                limit,
            })
        }
        None => {
            return Err(Error::ResourceGuard {
                estimate: "beyond 10^22".into(),
                limit,
            })
        }
    }
    let e = standard_alter_ego(v);
    let (space, coords) = ego_power(&e, n);
    let evaluation = evaluation(&space, &e, limit)?;
    let generators = (0..n)
        .map(|i| {
            let g: Vec<Elem> = coords.iter().map(|t| t[i]).collect();
            evaluation
                .element(&g)
                .expect("projections preserve the structure")
        })
        .collect();
    Ok(FreeAlgebra {
        algebra: evaluation.algebra.clone(),
        generators,
        space,
        evaluation,
    })
}

#[derive(Debug, Clone)]
pub struct Coproduct {
    pub algebra: FinAlgebra,
    pub left: Hom,
    pub right: Hom,
    pub space: StructuredSpace,
    pub evaluation: Evaluation,
}

/// `E(D(A) × D(B))` with its two injections.
pub fn coproduct_algebras(
    a: &FinAlgebra,
    b: &FinAlgebra,
    e: &AlterEgo,
    limit: u64,
) -> Result<Coproduct> {
    a.check_compatible(b)?;
    let da = natural_dual(a, e)?;
    let db = natural_dual(b, e)?;
    let space = da.space.product(&db.space)?;
    let evaluation = evaluation(&space, e, limit)?;
    let mut pairs = vec![];
    for s in 0..da.space.sorts {
        for p in da.space.points_of_sort(s) {
            for q in db.space.points_of_sort(s) {
                pairs.push((p, q));
            }
        }
    }
    let inject = |src: &FinAlgebra, left: bool| -> Result<Hom> {
        let map = (0..src.size())
            .map(|x| {
                let g: Vec<Elem> = pairs
                    .iter()
                    .map(|&(p, q)| if left { da.maps[p][x] } else { db.maps[q][x] })
                    .collect();
                evaluation
                    .element(&g)
                    .ok_or_else(|| Error::TheoremViolation("injection leaves E(X)".into()))
            })
            .collect::<Result<Vec<Elem>>>()?;
        Hom::new(src.clone(), evaluation.algebra.clone(), map)
    };
    let left = inject(a, true)?;
    let right = inject(b, false)?;
    Ok(Coproduct {
        algebra: evaluation.algebra.clone(),
        left,
        right,
        space,
        evaluation,
    })
}

/// Closed substructures of `D(A)` against `Con(A)`.
#[derive(Debug, Clone)]
pub struct SubstructureCorrespondence {
    /// Point sets, each containing every nullary point.
    pub substructures: Vec<Vec<usize>>,
    /// `congruence_of[i]`: the position in `congruences` of the kernel for substructure `i`.
    pub congruence_of: Vec<usize>,
    pub congruences: Vec<Congruence>,
    pub anti_isomorphic: bool,
    pub witness: Option<String>,
}

/// Most free points for which substructures are enumerated.
pub const SUBSTRUCTURE_LIMIT: usize = 16;

pub fn closed_substructure_lattice(
    a: &FinAlgebra,
    e: &AlterEgo,
) -> Result<SubstructureCorrespondence> {
    let d = natural_dual(a, e)?;
    let n = d.space.len();
    let fixed: Vec<bool> = (0..n).map(|p| d.space.nullaries.contains(&p)).collect();
    let free: Vec<usize> = (0..n).filter(|&p| !fixed[p]).collect();
    if free.len() > SUBSTRUCTURE_LIMIT {
        return Err(Error::ResourceGuard {
            estimate: format!("2^{} substructures", free.len()),
            limit: 1 << SUBSTRUCTURE_LIMIT,
        });
    }
    let mut substructures: Vec<Vec<usize>> = (0u32..1 << free.len())
        .map(|code| {
            (0..n)
                .filter(|&p| {
                    fixed[p]
                        || free
                            .iter()
                            .position(|&f| f == p)
                            .is_some_and(|i| code >> i & 1 == 1)
                })
                .collect()
        })
        .collect();
    substructures.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let con = congruence_lattice(a);
    let kernel = |y: &[usize]| {
        let labels: Vec<Vec<Elem>> = (0..a.size())
            .map(|x| y.iter().map(|&p| d.maps[p][x]).collect())
            .collect();
        let mut ids: HashMap<Vec<Elem>, usize> = HashMap::new();
        let raw: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Congruence::from_labels(a.clone(), &raw)
    };
    let mut witness = None;
    let mut congruence_of = vec![];
    for y in &substructures {
        let theta = kernel(y);
        match con.position(&theta) {
            Some(i) => congruence_of.push(i),
            None => {
                witness.get_or_insert(format!("kernel of substructure {y:?} is not a congruence"));
                congruence_of.push(usize::MAX);
            }
        }
    }
    if witness.is_none() {
        let mut hit = vec![false; con.len()];
        for &i in &congruence_of {
            if std::mem::replace(&mut hit[i], true) {
                witness = Some("two substructures share a congruence".into());
            }
        }
        if witness.is_none() {
            if let Some(i) = hit.iter().position(|&h| !h) {
                witness = Some(format!("congruence {i} has no substructure"));
            }
        }
    }
    if witness.is_none() {
        'outer: for (i, y) in substructures.iter().enumerate() {
            for (j, z) in substructures.iter().enumerate() {
                let subset = y.iter().all(|p| z.contains(p));
                if subset != con.leq[congruence_of[j]][congruence_of[i]] {
                    witness = Some(format!("order not reversed between {y:?} and {z:?}"));
                    break 'outer;
                }
            }
        }
    }
    Ok(SubstructureCorrespondence {
        substructures,
        congruence_of,
        congruences: con.congruences,
        anti_isomorphic: witness.is_none(),
        witness,
    })
}

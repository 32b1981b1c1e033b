//! Unification type, admissible clauses, embeddings into free algebras and
//! structural tests for finite members of DB and DB⁻.

use std::fmt;

use serde::Serialize;

use crate::algebra::{tuples, Elem, FinAlgebra, Hom};
use crate::birkhoff::PriestleySpace;
use crate::error::{Error, Result};
use crate::natural_duality::{
    ego_power, free_algebra, free_size_estimate, natural_dual, standard_alter_ego, NaturalDual,
    StructuredSpace, DEFAULT_GUARD,
};
use crate::signature::*;
use crate::varieties::{knowledge_tables, VarietyTag};

fn bilattice_variety(a: &FinAlgebra) -> Result<VarietyTag> {
    match VarietyTag::of(a)? {
        v @ (VarietyTag::Db | VarietyTag::DbMinus) => Ok(v),
        v => Err(Error::Precondition(format!(
            "only DB and DB- algebras are supported, got {v}"
        ))),
    }
}

fn dual_of(a: &FinAlgebra, v: VarietyTag) -> Result<(NaturalDual, PriestleySpace)> {
    if VarietyTag::of(a)? != v {
        return Err(Error::Precondition(format!(
            "algebra has signature {}, expected {v}",
            a.signature().name()
        )));
    }
    let dual = natural_dual(a, &standard_alter_ego(v))?;
    let poset = dual.space.poset(0)?;
    Ok((dual, poset))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum UnificationStatus {
    Unsolvable,
    Type1,
    TypeOmega,
    Type0,
}

impl fmt::Display for UnificationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnificationStatus::Unsolvable => "unsolvable",
            UnificationStatus::Type1 => "type1",
            UnificationStatus::TypeOmega => "typeOmega",
            UnificationStatus::Type0 => "type0",
        })
    }
}

/// Evidence for a verdict: a pair without join or meet, and the interval it was found in
/// (the whole poset for `typeOmega`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnificationWitness {
    pub interval: Option<(usize, usize)>,
    pub pair: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct UnificationVerdict {
    pub status: UnificationStatus,
    pub dual: PriestleySpace,
    pub witness: Option<UnificationWitness>,
}

impl UnificationVerdict {
    /// Re-checks the verdict against its evidence.
    pub fn is_consistent(&self) -> bool {
        let d = &self.dual;
        let all: Vec<usize> = (0..d.len()).collect();
        match self.status {
            UnificationStatus::Unsolvable => true,
            UnificationStatus::Type1 => d.is_lattice(),
            UnificationStatus::TypeOmega => {
                !d.is_lattice()
                    && non_lattice_interval(d).is_none()
                    && self
                        .witness
                        .as_ref()
                        .is_some_and(|w| d.non_lattice_pair(&all).is_some() && w.interval.is_none())
            }
            UnificationStatus::Type0 => self.witness.as_ref().is_some_and(|w| {
                let (x, y) = match w.interval {
                    Some(iv) => iv,
                    None => {
                        return d.join_in(&all, w.pair.0, w.pair.1).is_none()
                            || d.meet_in(&all, w.pair.0, w.pair.1).is_none()
                    }
                };
                let iv = d.interval(x, y);
                !iv.is_empty()
                    && iv.contains(&w.pair.0)
                    && iv.contains(&w.pair.1)
                    && (d.join_in(&iv, w.pair.0, w.pair.1).is_none()
                        || d.meet_in(&iv, w.pair.0, w.pair.1).is_none())
            }),
        }
    }
}

fn non_lattice_interval(d: &PriestleySpace) -> Option<((usize, usize), (usize, usize))> {
    for x in 0..d.len() {
        for y in 0..d.len() {
            if d.leq(x, y) {
                if let Some(p) = d.non_lattice_pair(&d.interval(x, y)) {
                    return Some(((x, y), p));
                }
            }
        }
    }
    None
}

/// Classifies the unification type through the dual poset.
pub fn unification_type(a: &FinAlgebra, v: VarietyTag) -> Result<UnificationVerdict> {
    if !matches!(v, VarietyTag::Db | VarietyTag::DbMinus) {
        return Err(Error::Precondition(format!(
            "unification type is only classified for DB and DB-, got {v}"
        )));
    }
    let (_, dual) = dual_of(a, v)?;
    let all: Vec<usize> = (0..dual.len()).collect();
    if v == VarietyTag::Db && a.size() == 1 {
        return Ok(UnificationVerdict {
            status: UnificationStatus::Unsolvable,
            dual,
            witness: None,
        });
    }
    let (status, witness) = match dual.non_lattice_pair(&all) {
        None if dual.is_lattice() => (UnificationStatus::Type1, None),
        None => {
            return Err(Error::TheoremViolation(
                "the dual of a non-trivial algebra is empty".into(),
            ))
        }
        Some(pair) => match (v, non_lattice_interval(&dual)) {
            (_, Some((iv, p))) => (
                UnificationStatus::Type0,
                Some(UnificationWitness {
                    interval: Some(iv),
                    pair: p,
                }),
            ),
            (VarietyTag::Db, None) => (
                UnificationStatus::TypeOmega,
                Some(UnificationWitness {
                    interval: None,
                    pair,
                }),
            ),
            (_, None) => (
                UnificationStatus::Type0,
                Some(UnificationWitness {
                    interval: None,
                    pair,
                }),
            ),
        },
    };
    Ok(UnificationVerdict {
        status,
        dual,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Op(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn constant(symbol: &str) -> Term {
        Term::Op(symbol.to_string(), vec![])
    }

    pub fn op(symbol: &str, args: Vec<Term>) -> Term {
        Term::Op(symbol.to_string(), args)
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::Op(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }
}

const VAR_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => match VAR_NAMES.get(*i) {
                Some(n) => f.write_str(n),
                None => write!(f, "x{i}"),
            },
            Term::Op(s, args) if args.is_empty() => f.write_str(s),
            Term::Op(s, args) => {
                write!(f, "{s}(")?;
                for (k, t) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation(pub Term, pub Term);

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.0, self.1)
    }
}

/// `(premises, conclusions)`: holds when every assignment satisfying all premises
/// satisfies some conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub premises: Vec<Equation>,
    pub conclusions: Vec<Equation>,
}

impl Clause {
    pub fn variables(&self) -> usize {
        self.premises
            .iter()
            .chain(&self.conclusions)
            .flat_map(|e| [e.0.max_var(), e.1.max_var()])
            .flatten()
            .max()
            .map_or(0, |m| m + 1)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |eqs: &[Equation]| {
            eqs.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "({{{}}}, {{{}}})",
            side(&self.premises),
            side(&self.conclusions)
        )
    }
}

/// The three clauses characterising a bounded non-empty dual.
pub fn basis_clauses() -> Vec<Clause> {
    let (x, y) = (Term::var(0), Term::var(1));
    let one_t = || Term::constant(ONE_T);
    let both = vec![Equation(x.clone(), one_t()), Equation(y.clone(), one_t())];
    vec![
        Clause {
            name: "meet_k".into(),
            premises: vec![Equation(
                Term::op(MEET_K, vec![x.clone(), y.clone()]),
                one_t(),
            )],
            conclusions: both.clone(),
        },
        Clause {
            name: "join_k".into(),
            premises: vec![Equation(Term::op(JOIN_K, vec![x, y]), one_t())],
            conclusions: both,
        },
        Clause {
            name: "bounds".into(),
            premises: vec![Equation(Term::constant(ZERO_T), one_t())],
            conclusions: vec![],
        },
    ]
}

struct Interp<'a> {
    a: &'a FinAlgebra,
    jk: Option<Vec<Elem>>,
    mk: Option<Vec<Elem>>,
}

impl<'a> Interp<'a> {
    fn new(a: &'a FinAlgebra) -> Interp<'a> {
        let (jk, mk) = match knowledge_tables(a) {
            Ok((j, m)) => (Some(j), Some(m)),
            Err(_) => (None, None),
        };
        Interp { a, jk, mk }
    }

    fn eval(&self, t: &Term, env: &[Elem]) -> Result<Elem> {
        match t {
            Term::Var(i) => env
                .get(*i)
                .copied()
                .ok_or_else(|| Error::Precondition(format!("unbound variable {i}"))),
            Term::Op(s, args) => {
                let vals = args
                    .iter()
                    .map(|t| self.eval(t, env))
                    .collect::<Result<Vec<Elem>>>()?;
                if let Some(op) = self.a.op_index(s) {
                    if self.a.signature().arity(op) != vals.len() {
                        return Err(Error::Precondition(format!("wrong arity for {s}")));
                    }
                    return Ok(self.a.apply(op, &vals));
                }
                let table = match s.as_str() {
                    JOIN_K => self.jk.as_ref(),
                    MEET_K => self.mk.as_ref(),
                    _ => None,
                };
                match (table, vals.as_slice()) {
                    (Some(t), [x, y]) => Ok(t[x * self.a.size() + y]),
                    _ => Err(Error::UnknownName(format!("operation {s}"))),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: String,
    pub holds: bool,
    /// First failing assignment, first variable most significant.
    pub witness: Option<Vec<Elem>>,
}

/// Evaluates `clause` on every assignment into `a`.
pub fn check_clause(a: &FinAlgebra, clause: &Clause) -> Result<ClauseResult> {
    let interp = Interp::new(a);
    let holds_eq = |e: &Equation, env: &[Elem]| -> Result<bool> {
        Ok(interp.eval(&e.0, env)? == interp.eval(&e.1, env)?)
    };
    for env in tuples(a.size(), clause.variables()) {
        let mut premised = true;
        for p in &clause.premises {
            if !holds_eq(p, &env)? {
                premised = false;
                break;
            }
        }
        if !premised {
            continue;
        }
        let mut concluded = false;
        for c in &clause.conclusions {
            if holds_eq(c, &env)? {
                concluded = true;
                break;
            }
        }
        if !concluded {
            return Ok(ClauseResult {
                clause: clause.to_string(),
                holds: false,
                witness: Some(env),
            });
        }
    }
    Ok(ClauseResult {
        clause: clause.to_string(),
        holds: true,
        witness: None,
    })
}

#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    pub clause_results: Vec<ClauseResult>,
    pub dual_nonempty: bool,
    pub dual_bounded: bool,
    pub equivalence_holds: bool,
    pub embedding: Option<Hom>,
    /// Why no embedding was built, when the dual is bounded and non-empty.
    pub embedding_error: Option<String>,
}

impl AdmissibilityReport {
    pub fn clauses_hold(&self) -> bool {
        self.clause_results.iter().all(|r| r.holds)
    }
}

/// Checks the basis clauses in a DB algebra and compares them with the shape of its dual.
pub fn admissibility_check(a: &FinAlgebra) -> Result<AdmissibilityReport> {
    let (_, dual) = dual_of(a, VarietyTag::Db)?;
    let clause_results = basis_clauses()
        .iter()
        .map(|c| check_clause(a, c))
        .collect::<Result<Vec<_>>>()?;
    let dual_nonempty = !dual.is_empty();
    let dual_bounded = dual.is_bounded();
    let all_hold = clause_results.iter().all(|r| r.holds);
    let (embedding, embedding_error) = if dual_nonempty && dual_bounded {
        match embed_into_free(a, VarietyTag::Db) {
            Ok(h) => (Some(h), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    Ok(AdmissibilityReport {
        equivalence_holds: all_hold == (dual_nonempty && dual_bounded),
        clause_results,
        dual_nonempty,
        dual_bounded,
        embedding,
        embedding_error,
    })
}

/// Number of generators used by [`embed_into_free`].
pub fn embedding_rank(points: usize, endpoints_equal: bool) -> usize {
    if endpoints_equal {
        0
    } else {
        points.saturating_sub(2).max(1)
    }
}

/// The onto morphism `f: ego^n → D(A)` and the injective hom `A → F(n)` it induces.
/// `searched` is set when the displayed map needs a free algebra beyond the guard and a
/// smaller rank was found by search instead.
#[derive(Debug, Clone)]
pub struct FreeEmbedding {
    pub rank: usize,
    pub onto: Vec<usize>,
    pub searched: bool,
    pub hom: Hom,
}

pub fn embed_into_free(a: &FinAlgebra, v: VarietyTag) -> Result<Hom> {
    Ok(free_embedding(a, v)?.hom)
}

fn within_guard(v: VarietyTag, n: usize) -> bool {
    matches!(free_size_estimate(v, n), Some(s) if s <= DEFAULT_GUARD as u128)
}

fn displayed_map(
    four: &FinAlgebra,
    coords: &[Vec<Elem>],
    n: usize,
    inner: &[usize],
    b: usize,
    t: usize,
) -> Vec<usize> {
    let zk = four.element("01").expect("0_k in the ego");
    let ok = four.element("10").expect("1_k in the ego");
    coords
        .iter()
        .map(|c| {
            let moved: Vec<usize> = (0..n).filter(|&i| c[i] != zk).collect();
            match moved.as_slice() {
                [] => b,
                _ if c.iter().all(|&x| x == ok) => t,
                [i] => inner.get(*i).copied().unwrap_or(t),
                _ => t,
            }
        })
        .collect()
}

/// Some onto morphism from `from` to `to`, by backtracking.
pub fn onto_morphism(from: &StructuredSpace, to: &StructuredSpace) -> Option<Vec<usize>> {
    const FREE: usize = usize::MAX;
    let mut map = vec![FREE; from.len()];
    for (&p, &q) in from.nullaries.iter().zip(&to.nullaries) {
        if map[p] != FREE && map[p] != q {
            return None;
        }
        map[p] = q;
    }
    let fixed = map.clone();
    let mut hits = vec![0usize; to.len()];
    for &q in fixed.iter().filter(|&&q| q != FREE) {
        hits[q] += 1;
    }
    let order: Vec<usize> = (0..from.len()).filter(|&p| fixed[p] == FREE).collect();
    let consistent = |map: &[usize], p: usize| {
        let q = map[p];
        from.sort_of(p) == to.sort_of(q)
            && from.relations.iter().zip(&to.relations).all(|(r, s)| {
                (0..from.len())
                    .filter(|&o| map[o] != FREE)
                    .all(|o| (!r[p][o] || s[q][map[o]]) && (!r[o][p] || s[map[o]][q]))
            })
    };
    if (0..from.len()).any(|p| fixed[p] != FREE && !consistent(&fixed, p)) {
        return None;
    }
    fn go(
        k: usize,
        order: &[usize],
        map: &mut Vec<usize>,
        hits: &mut Vec<usize>,
        targets: usize,
        consistent: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        let missing = hits.iter().filter(|&&h| h == 0).count();
        if missing > order.len() - k {
            return false;
        }
        if k == order.len() {
            return true;
        }
        let p = order[k];
        for q in 0..targets {
            map[p] = q;
            if consistent(map, p) {
                hits[q] += 1;
                if go(k + 1, order, map, hits, targets, consistent) {
                    return true;
                }
                hits[q] -= 1;
            }
        }
        map[p] = usize::MAX;
        false
    }
    if go(0, &order, &mut map, &mut hits, to.len(), &consistent) {
        Some(map)
    } else {
        None
    }
}

pub fn free_embedding(a: &FinAlgebra, v: VarietyTag) -> Result<FreeEmbedding> {
    if !matches!(v, VarietyTag::Db | VarietyTag::DbMinus) {
        return Err(Error::Precondition(format!(
            "free embeddings are only built for DB and DB-, got {v}"
        )));
    }
    let (dual, poset) = dual_of(a, v)?;
    let (b, t) = match (poset.bottom(), poset.top()) {
        (Some(b), Some(t)) if !poset.is_empty() => (b, t),
        _ => {
            return Err(Error::Precondition(
                "the dual is empty or has no bounds".into(),
            ))
        }
    };
    if v == VarietyTag::DbMinus && !(dual.space.nullaries == [b, t]) {
        return Err(Error::TheoremViolation(
            "constant points are not the bounds of the dual".into(),
        ));
    }
    let inner: Vec<usize> = (0..poset.len()).filter(|&p| p != b && p != t).collect();
    let ego = standard_alter_ego(v);
    let displayed = embedding_rank(poset.len(), b == t);
    let (n, onto, searched) = if within_guard(v, displayed) {
        let (_, coords) = ego_power(&ego, displayed);
        (
            displayed,
            displayed_map(&ego.sorts[0], &coords, displayed, &inner, b, t),
            false,
        )
    } else {
        let found = (0..displayed)
            .take_while(|&n| within_guard(v, n))
            .find_map(|n| {
                let (power, _) = ego_power(&ego, n);
                onto_morphism(&power, &dual.space).map(|f| (n, f))
            });
        match found {
            Some((n, f)) => (n, f, true),
            None => {
                return Err(Error::ResourceGuard {
                    estimate: free_size_estimate(v, displayed)
                        .map_or("overflow".into(), |s| s.to_string()),
                    limit: DEFAULT_GUARD,
                })
            }
        }
    };
    let free = free_algebra(v, n)?;
    let (power, _) = ego_power(&ego, n);
    if !power.is_morphism(&dual.space, &onto) {
        return Err(Error::TheoremViolation(
            "the map onto the dual does not preserve the structure".into(),
        ));
    }
    let mut hit = vec![false; poset.len()];
    for &p in &onto {
        hit[p] = true;
    }
    if hit.contains(&false) {
        return Err(Error::TheoremViolation(
            "the map onto the dual is not onto".into(),
        ));
    }
    let map = (0..a.size())
        .map(|x| {
            let g: Vec<Elem> = onto.iter().map(|&p| dual.maps[p][x]).collect();
            free.evaluation.element(&g).ok_or_else(|| {
                Error::TheoremViolation("image is not a morphism into the ego".into())
            })
        })
        .collect::<Result<Vec<Elem>>>()?;
    let hom = Hom::new(a.clone(), free.algebra.clone(), map)?;
    if !hom.is_injective() {
        return Err(Error::TheoremViolation("embedding is not injective".into()));
    }
    Ok(FreeEmbedding {
        rank: n,
        onto,
        searched,
        hom,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    /// `None` when injectivity is not applicable (no truth bounds).
    pub injective: Option<bool>,
    pub weakly_projective: bool,
    /// An element without a truth complement.
    pub uncomplemented: Option<Elem>,
}

pub fn structural_tests(a: &FinAlgebra) -> Result<StructuralReport> {
    let v = bilattice_variety(a)?;
    let (_, dual) = dual_of(a, v)?;
    let mut uncomplemented = None;
    let injective = match v {
        VarietyTag::Db => {
            let op = |s: &str| a.op_index(s).expect("DB operation");
            let (jt, mt) = (op(JOIN_T), op(MEET_T));
            let zt = a.constant(ZERO_T).expect("0_t");
            let ot = a.constant(ONE_T).expect("1_t");
            uncomplemented = (0..a.size()).find(|&x| {
                !(0..a.size()).any(|y| a.apply(jt, &[x, y]) == ot && a.apply(mt, &[x, y]) == zt)
            });
            Some(uncomplemented.is_none())
        }
        _ => None,
    };
    Ok(StructuralReport {
        injective,
        weakly_projective: dual.is_lattice(),
        uncomplemented,
    })
}

/// `x < a,b < c,d < y`: the smallest bounded poset with a non-lattice interval.
pub fn double_diamond() -> PriestleySpace {
    let names = ["x", "a", "b", "c", "d", "y"].map(String::from).to_vec();
    PriestleySpace::from_covers(
        names,
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 5),
            (4, 5),
        ],
    )
    .expect("double diamond is a poset")
}

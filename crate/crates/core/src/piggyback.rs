//! Piggyback relations, the dismount of a natural dual onto the Priestley dual of the
//! truth lattice, operation transfer, and the knowledge-order dual.

use serde::Serialize;

use crate::algebra::{enumerate_homs, enumerate_subuniverses, Elem, FinAlgebra, SubUniverse};
use crate::birkhoff::{
    pointwise_leq, priestley_dual, DoublyPointedSpace, LatticeDual, OrderedSpace, PriestleySpace,
};
use crate::error::{Error, Result};
use crate::signature::{Signature, JOIN, JOIN_T, MEET, MEET_T, NEG, ONE_K, ZERO_K};
use crate::varieties::{
    canonical, k_lattice, t_lattice, validate, CanonicalName, VarietyTag, FOUR_NAMES,
};

/// A lattice hom from the truth reduct of `M` into `2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaMap {
    pub tag: String,
    pub map: Vec<Elem>,
}

impl OmegaMap {
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn is_constant(&self) -> bool {
        self.map.iter().all(|&v| v == self.map[0])
    }
}

/// The truth lattice of `M` as a D (bounded) or D⁻ algebra.
fn lattice_reduct(m: &FinAlgebra, bounded: bool) -> Result<FinAlgebra> {
    if m.signature().has(JOIN) {
        return if bounded == m.signature().has(crate::signature::ZERO) {
            Ok(m.clone())
        } else if bounded {
            Err(Error::Precondition("algebra lacks bounds".into()))
        } else {
            m.reduct(Signature::d_minus(), &[(JOIN, JOIN), (MEET, MEET)])
        };
    }
    if bounded {
        let l = t_lattice(m)?;
        if !l.signature().compatible(&Signature::d()) {
            return Err(Error::Precondition("algebra lacks truth bounds".into()));
        }
        Ok(l)
    } else {
        m.reduct(Signature::d_minus(), &[(JOIN, JOIN_T), (MEET, MEET_T)])
    }
}

fn omega_tag(m: &FinAlgebra, map: &[Elem], k: usize) -> String {
    if map.iter().all(|&v| v == 0) {
        return "0bar".into();
    }
    if map.iter().all(|&v| v == 1) {
        return "1bar".into();
    }
    if m.names().iter().map(String::as_str).eq(FOUR_NAMES) {
        if map == [0, 1, 0, 1] {
            return "alpha".into();
        }
        if map == [0, 1, 1, 0] {
            return "beta".into();
        }
    }
    if map == [0, 1] {
        return "id".into();
    }
    format!("omega{k}")
}

/// `Ω`: the lattice homs from the truth reduct of `M` into `2`, constants included when
/// unbounded.
pub fn omega_set(m: &FinAlgebra, bounded: bool) -> Result<Vec<OmegaMap>> {
    let l = lattice_reduct(m, bounded)?;
    let report = validate(
        &l,
        if bounded {
            VarietyTag::D
        } else {
            VarietyTag::DMinus
        },
    );
    if !report.valid {
        return Err(Error::InvalidAlgebra(format!(
            "truth reduct is not a distributive lattice: {}",
            report.violations[0].axiom
        )));
    }
    let two = if bounded {
        canonical(CanonicalName::Two)
    } else {
        canonical(CanonicalName::TwoUnbounded)
    };
    Ok(enumerate_homs(&l, &two)?
        .iter()
        .enumerate()
        .map(|(k, h)| OmegaMap {
            tag: omega_tag(m, h.map(), k),
            map: h.map().to_vec(),
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct PiggybackRelations {
    pub algebra: FinAlgebra,
    pub bounded: bool,
    pub omegas: Vec<OmegaMap>,
    /// `binary[i][j]` = `R_{ω_i, ω_j}` as subuniverses of `M²`.
    pub binary: Vec<Vec<Vec<SubUniverse>>>,
    /// `unary[i][b]` = `R^b_{ω_i}` as subuniverses of `M`; empty when bounded.
    pub unary: Vec<[Vec<SubUniverse>; 2]>,
}

impl PiggybackRelations {
    pub fn omega(&self, tag: &str) -> Option<usize> {
        self.omegas.iter().position(|w| w.tag == tag)
    }

    /// `R_{ω₁,ω₂}` as sorted lists of pairs.
    pub fn binary_pairs(&self, i: usize, j: usize) -> Vec<Vec<(Elem, Elem)>> {
        let n = self.algebra.size();
        self.binary[i][j]
            .iter()
            .map(|r| r.elements().iter().map(|&e| (e / n, e % n)).collect())
            .collect()
    }

    pub fn unary_sets(&self, i: usize, b: usize) -> Vec<Vec<Elem>> {
        self.unary[i][b]
            .iter()
            .map(|r| r.elements().to_vec())
            .collect()
    }
}

/// The maximal members of `subs` lying inside `inside`.
fn maximal_inside(subs: &[SubUniverse], inside: impl Fn(Elem) -> bool) -> Vec<SubUniverse> {
    let candidates: Vec<&SubUniverse> = subs
        .iter()
        .filter(|s| s.elements().iter().all(|&e| inside(e)))
        .collect();
    candidates
        .iter()
        .filter(|s| {
            !candidates
                .iter()
                .any(|t| t.len() > s.len() && s.is_subset_of(t))
        })
        .map(|s| (*s).clone())
        .collect()
}

pub fn piggyback_relations(m: &FinAlgebra, bounded: bool) -> Result<PiggybackRelations> {
    let omegas = omega_set(m, bounded)?;
    let n = m.size();
    let square = m.product(m)?;
    let subs2 = enumerate_subuniverses(&square);
    let binary = omegas
        .iter()
        .map(|w1| {
            omegas
                .iter()
                .map(|w2| maximal_inside(&subs2, |e| w1.apply(e / n) <= w2.apply(e % n)))
                .collect()
        })
        .collect();
    let unary = if bounded {
        vec![]
    } else {
        let subs1 = enumerate_subuniverses(m);
        omegas
            .iter()
            .map(|w| {
                [
                    maximal_inside(&subs1, |e| w.apply(e) == 0),
                    maximal_inside(&subs1, |e| w.apply(e) == 1),
                ]
            })
            .collect()
    };
    Ok(PiggybackRelations {
        algebra: m.clone(),
        bounded,
        omegas,
        binary,
        unary,
    })
}

/// `Y_A = D(A) × Ω` with `≼`, its classes and the map `Φ_A` onto the Priestley dual.
#[derive(Debug, Clone)]
pub struct PreorderedCover {
    pub relations: PiggybackRelations,
    /// `D(A)` as hom maps into `M`.
    pub dual: Vec<Vec<Elem>>,
    /// `(x, ω)` pairs, ordered by `ω` and then `x`.
    pub points: Vec<(usize, usize)>,
    pub preceq: Vec<Vec<bool>>,
    /// `≈`-classes, each sorted, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub quotient: OrderedSpace,
    /// `Φ_A` on classes: the lattice hom `ω∘x`.
    pub phi: Vec<Vec<Elem>>,
    /// The Priestley dual of the truth reduct, and `Φ_A` as positions in it.
    pub priestley: LatticeDual,
    pub phi_index: Vec<usize>,
    /// `c₀`, `c₁` as class sets (unbounded only).
    pub c0: Option<Vec<usize>>,
    pub c1: Option<Vec<usize>>,
}

impl PreorderedCover {
    pub fn point_label(&self, y: usize) -> String {
        let (x, w) = self.points[y];
        let m = &self.relations.algebra;
        let names: Vec<&str> = self.dual[x].iter().map(|&b| m.name(b)).collect();
        format!("([{}],{})", names.join(","), self.relations.omegas[w].tag)
    }

    /// Every class a singleton, and `≼` is `≤` on each non-constant `Y_ω` block with
    /// no relation across blocks.
    pub fn is_disjoint_union_shape(&self, within: &dyn Fn(usize, usize, usize) -> bool) -> bool {
        if self.classes.iter().any(|c| c.len() != 1) {
            return false;
        }
        let n = self.points.len();
        (0..n).all(|p| {
            (0..n).all(|q| {
                let ((x, w1), (y, w2)) = (self.points[p], self.points[q]);
                self.preceq[p][q] == (w1 == w2 && within(w1, x, y))
            })
        })
    }

    /// Exactly two classes with more than one member, one holding all of `Y_{0̄}` and the
    /// other all of `Y_{1̄}`.
    pub fn is_collapsed_endpoint_shape(&self) -> bool {
        let big: Vec<&Vec<usize>> = self.classes.iter().filter(|c| c.len() > 1).collect();
        let whole = |tag: &str, class: &Vec<usize>| -> bool {
            let Some(w) = self.relations.omega(tag) else {
                return false;
            };
            (0..self.points.len())
                .filter(|&y| self.points[y].1 == w)
                .all(|y| class.contains(&y))
        };
        big.len() == 2
            && ((whole("0bar", big[0]) && whole("1bar", big[1]))
                || (whole("1bar", big[0]) && whole("0bar", big[1])))
    }
}

/// The dismount of `D(A)` for `A` in DB or DB⁻.
pub fn dismount(a: &FinAlgebra) -> Result<PreorderedCover> {
    let v = VarietyTag::of(a)?;
    let m = match v {
        VarietyTag::Db => canonical(CanonicalName::Four),
        VarietyTag::DbMinus => canonical(CanonicalName::FourMinus),
        _ => {
            return Err(Error::Precondition(
                "dismount expects a DB or DB- algebra".into(),
            ))
        }
    };
    dismount_with(a, &m, v.is_bounded())
}

/// The dismount for any single generator `M` whose truth reduct is a distributive lattice.
pub fn dismount_with(a: &FinAlgebra, m: &FinAlgebra, bounded: bool) -> Result<PreorderedCover> {
    let rels = piggyback_relations(m, bounded)?;
    let dual: Vec<Vec<Elem>> = enumerate_homs(a, m)?
        .into_iter()
        .map(|h| h.map().to_vec())
        .collect();
    let nd = dual.len();
    let points: Vec<(usize, usize)> = (0..rels.omegas.len())
        .flat_map(|w| (0..nd).map(move |x| (x, w)))
        .collect();
    let mn = m.size();
    let lifted = |r: &SubUniverse, x: usize, y: usize| {
        (0..a.size()).all(|c| r.contains(dual[x][c] * mn + dual[y][c]))
    };
    let preceq: Vec<Vec<bool>> = points
        .iter()
        .map(|&(x, w1)| {
            points
                .iter()
                .map(|&(y, w2)| rels.binary[w1][w2].iter().any(|r| lifted(r, x, y)))
                .collect()
        })
        .collect();
    let n = points.len();
    for p in 0..n {
        if !preceq[p][p] {
            return Err(Error::TheoremViolation(format!(
                "≼ is not reflexive at point {p}"
            )));
        }
        for q in 0..n {
            for s in 0..n {
                if preceq[p][q] && preceq[q][s] && !preceq[p][s] {
                    return Err(Error::TheoremViolation(format!(
                        "≼ is not transitive at points {p}, {q}, {s}"
                    )));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = vec![];
    for p in 0..n {
        if class_of[p] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (p..n).filter(|&q| preceq[p][q] && preceq[q][p]).collect();
        for &q in &members {
            class_of[q] = classes.len();
        }
        classes.push(members);
    }
    let composite = |y: usize| -> Vec<Elem> {
        let (x, w) = points[y];
        dual[x].iter().map(|&b| rels.omegas[w].apply(b)).collect()
    };
    let mut phi = vec![];
    for class in &classes {
        let first = composite(class[0]);
        if let Some(&q) = class.iter().find(|&&q| composite(q) != first) {
            return Err(Error::TheoremViolation(format!(
                "Φ is not well defined: points {} and {q} differ",
                class[0]
            )));
        }
        phi.push(first);
    }
    let names: Vec<String> = classes
        .iter()
        .map(|c| {
            let (x, w) = points[c[0]];
            let names: Vec<&str> = dual[x].iter().map(|&b| m.name(b)).collect();
            format!("[([{}],{})]", names.join(","), rels.omegas[w].tag)
        })
        .collect();
    let k = classes.len();
    let leq: Vec<Vec<bool>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| preceq[classes[i][0]][classes[j][0]])
                .collect()
        })
        .collect();
    let poset = PriestleySpace::new(names, leq)?;
    let lattice = lattice_reduct(a, bounded)?;
    let priestley = priestley_dual(&lattice)?;
    let phi_index = phi
        .iter()
        .map(|f| {
            priestley
                .position(f)
                .ok_or_else(|| Error::TheoremViolation("Φ lands outside the Priestley dual".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut hit = vec![false; priestley.maps.len()];
    for &i in &phi_index {
        if std::mem::replace(&mut hit[i], true) {
            return Err(Error::TheoremViolation("Φ is not injective".into()));
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::TheoremViolation("Φ is not surjective".into()));
    }
    for i in 0..k {
        for j in 0..k {
            if poset.leq(i, j) != pointwise_leq(&phi[i], &phi[j]) {
                return Err(Error::TheoremViolation(format!(
                    "Φ is not an order isomorphism at classes {i}, {j}"
                )));
            }
        }
    }
    let (quotient, c0, c1) = if bounded {
        (OrderedSpace::Plain(poset), None, None)
    } else {
        let c = |b: usize| -> Vec<usize> {
            let mut set: Vec<usize> = (0..n)
                .filter(|&y| {
                    let (x, w) = points[y];
                    rels.unary[w][b]
                        .iter()
                        .any(|r| (0..a.size()).all(|c| r.contains(dual[x][c])))
                })
                .map(|y| class_of[y])
                .collect();
            set.sort_unstable();
            set.dedup();
            set
        };
        let (c0, c1) = (c(0), c(1));
        let constant = |v: Elem| phi.iter().position(|f| f.iter().all(|&b| b == v));
        let (Some(bottom), Some(top)) = (constant(0), constant(1)) else {
            return Err(Error::TheoremViolation("no endpoint classes".into()));
        };
        if c0 != [bottom] || c1 != [top] {
            return Err(Error::TheoremViolation(
                "c₀ and c₁ are not the endpoint classes".into(),
            ));
        }
        (
            OrderedSpace::Pointed(DoublyPointedSpace::new(poset, bottom, top)?),
            Some(c0),
            Some(c1),
        )
    };
    Ok(PreorderedCover {
        relations: rels,
        dual,
        points,
        preceq,
        classes,
        class_of,
        quotient,
        phi,
        priestley,
        phi_index,
        c0,
        c1,
    })
}

/// Which operations of the signature fill the slots of operation transfer.
#[derive(Debug, Clone, Default)]
pub struct TransferSlots {
    /// Unary operations that are lattice endomorphisms of the truth reduct.
    pub f: Vec<String>,
    /// Unary operations that are lattice dual endomorphisms.
    pub h: Vec<String>,
    pub c: Vec<String>,
}

impl TransferSlots {
    pub fn bilattice() -> TransferSlots {
        TransferSlots {
            f: vec![],
            h: vec![NEG.into()],
            c: vec![ZERO_K.into(), ONE_K.into()],
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransferredStructure {
    pub cover: PreorderedCover,
    /// Self-maps of the classes.
    pub fbar: Vec<(String, Vec<usize>)>,
    pub hbar: Vec<(String, Vec<usize>)>,
    /// Class sets.
    pub cbar: Vec<(String, Vec<bool>)>,
}

/// Operation transfer for A in DB with `h = ¬` and `c ∈ {0_k, 1_k}`.
pub fn transfer_operations(a: &FinAlgebra) -> Result<TransferredStructure> {
    if VarietyTag::of(a)? != VarietyTag::Db {
        return Err(Error::Precondition(
            "transfer_operations expects a DB algebra".into(),
        ));
    }
    transfer_with(
        a,
        &canonical(CanonicalName::Four),
        &TransferSlots::bilattice(),
    )
}

/// Operation transfer onto the bounded dismount for arbitrary slots.
pub fn transfer_with(
    a: &FinAlgebra,
    m: &FinAlgebra,
    slots: &TransferSlots,
) -> Result<TransferredStructure> {
    let cover = dismount_with(a, m, true)?;
    let omegas = &cover.relations.omegas;
    let find_omega = |map: &[Elem]| -> Result<usize> {
        omegas
            .iter()
            .position(|w| w.map == map)
            .ok_or_else(|| Error::TheoremViolation("transferred map is not in Ω".into()))
    };
    let op = |alg: &FinAlgebra, s: &str| -> Result<usize> {
        alg.op_index(s)
            .ok_or_else(|| Error::Precondition(format!("no operation {s}")))
    };
    let nd = cover.dual.len();
    let k = cover.classes.len();
    let poset = cover.quotient.poset();
    // Lifts a point map on Y_A to classes, checking it respects ≈.
    let on_classes =
        |name: &str, point_map: &dyn Fn(usize) -> Result<usize>| -> Result<Vec<usize>> {
            (0..k)
                .map(|c| {
                    let images = cover.classes[c]
                        .iter()
                        .map(|&y| point_map(y).map(|z| cover.class_of[z]))
                        .collect::<Result<Vec<usize>>>()?;
                    if images.iter().any(|&i| i != images[0]) {
                        return Err(Error::TheoremViolation(format!(
                            "{name} does not respect ≈"
                        )));
                    }
                    Ok(images[0])
                })
                .collect()
        };
    let commutes = |name: &str, bar: &[usize], hat: &dyn Fn(&[Elem]) -> Vec<Elem>| -> Result<()> {
        for c in 0..k {
            if cover.phi[bar[c]] != hat(&cover.phi[c]) {
                return Err(Error::TheoremViolation(format!(
                    "{name}: commuting square fails at class {c}"
                )));
            }
        }
        Ok(())
    };
    let mut fbar = vec![];
    for s in &slots.f {
        let (fm, fa) = (op(m, s)?, op(a, s)?);
        let moved = omegas
            .iter()
            .map(|w| {
                find_omega(
                    &(0..m.size())
                        .map(|b| w.apply(m.apply(fm, &[b])))
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Result<Vec<usize>>>()?;
        let bar = on_classes(s, &|y| {
            let (x, w) = cover.points[y];
            Ok(moved[w] * nd + x)
        })?;
        commutes(s, &bar, &|x| {
            (0..a.size()).map(|c| x[a.apply(fa, &[c])]).collect()
        })?;
        if !(0..k).all(|i| (0..k).all(|j| !poset.leq(i, j) || poset.leq(bar[i], bar[j]))) {
            return Err(Error::TheoremViolation(format!(
                "{s}: f̄ is not order-preserving"
            )));
        }
        fbar.push((s.clone(), bar));
    }
    let mut hbar = vec![];
    for s in &slots.h {
        let (hm, ha) = (op(m, s)?, op(a, s)?);
        let moved = omegas
            .iter()
            .map(|w| {
                find_omega(
                    &(0..m.size())
                        .map(|b| 1 - w.apply(m.apply(hm, &[b])))
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Result<Vec<usize>>>()?;
        let bar = on_classes(s, &|y| {
            let (x, w) = cover.points[y];
            Ok(moved[w] * nd + x)
        })?;
        commutes(s, &bar, &|x| {
            (0..a.size()).map(|c| 1 - x[a.apply(ha, &[c])]).collect()
        })?;
        if !(0..k).all(|i| (0..k).all(|j| !poset.leq(i, j) || poset.leq(bar[j], bar[i]))) {
            return Err(Error::TheoremViolation(format!(
                "{s}: h̄ is not order-reversing"
            )));
        }
        hbar.push((s.clone(), bar));
    }
    let mut cbar = vec![];
    for s in &slots.c {
        let (cm, ca) = (m.apply(op(m, s)?, &[]), a.apply(op(a, s)?, &[]));
        let set: Vec<bool> = (0..k)
            .map(|c| omegas[cover.points[cover.classes[c][0]].1].apply(cm) == 1)
            .collect();
        for c in 0..k {
            if set[c] != (cover.phi[c][ca] == 1) {
                return Err(Error::TheoremViolation(format!(
                    "{s}: c̄ differs from ĉ at class {c}"
                )));
            }
        }
        if !poset.is_up_set(&set) {
            return Err(Error::TheoremViolation(format!("{s}: c̄ is not an up-set")));
        }
        cbar.push((s.clone(), set));
    }
    Ok(TransferredStructure {
        cover,
        fbar,
        hbar,
        cbar,
    })
}

/// `(Y_A; ≼′)` with `η_A` onto the Priestley dual of the knowledge lattice.
#[derive(Debug, Clone)]
pub struct KnowledgeDual {
    pub dual: Vec<Vec<Elem>>,
    /// `(x, ω)` with `ω` 0 for α and 1 for β.
    pub points: Vec<(usize, usize)>,
    pub space: PriestleySpace,
    pub eta: Vec<Vec<Elem>>,
    pub priestley: LatticeDual,
    pub eta_index: Vec<usize>,
}

pub fn knowledge_dual(a: &FinAlgebra) -> Result<KnowledgeDual> {
    if VarietyTag::of(a)? != VarietyTag::Db {
        return Err(Error::Precondition(
            "knowledge_dual expects a DB algebra".into(),
        ));
    }
    let m = canonical(CanonicalName::Four);
    let dual: Vec<Vec<Elem>> = enumerate_homs(a, &m)?
        .into_iter()
        .map(|h| h.map().to_vec())
        .collect();
    let nd = dual.len();
    let le_k = |x: usize, y: usize| {
        (0..a.size()).all(|c| {
            let (p, q) = (dual[x][c], dual[y][c]);
            crate::varieties::four_bits(p).0 <= crate::varieties::four_bits(q).0
                && crate::varieties::four_bits(p).1 >= crate::varieties::four_bits(q).1
        })
    };
    let points: Vec<(usize, usize)> = (0..2).flat_map(|w| (0..nd).map(move |x| (x, w))).collect();
    let names = points
        .iter()
        .map(|&(x, w)| {
            let vals: Vec<&str> = dual[x].iter().map(|&b| m.name(b)).collect();
            format!("([{}],{})", vals.join(","), ["alpha", "beta"][w])
        })
        .collect();
    let leq = points
        .iter()
        .map(|&(x, w1)| {
            points
                .iter()
                .map(|&(y, w2)| w1 == w2 && le_k(x, y))
                .collect()
        })
        .collect();
    let space = PriestleySpace::new(names, leq)?;
    let eta: Vec<Vec<Elem>> = points
        .iter()
        .map(|&(x, w)| {
            dual[x]
                .iter()
                .map(|&b| {
                    let (i, j) = crate::varieties::four_bits(b);
                    if w == 0 {
                        i as Elem
                    } else {
                        1 - j as Elem
                    }
                })
                .collect()
        })
        .collect();
    let priestley = priestley_dual(&k_lattice(a)?)?;
    let eta_index = eta
        .iter()
        .map(|f| {
            priestley
                .position(f)
                .ok_or_else(|| Error::TheoremViolation("η lands outside H(A_k)".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut sorted = eta_index.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != eta_index.len() || sorted.len() != priestley.maps.len() {
        return Err(Error::TheoremViolation("η is not a bijection".into()));
    }
    for p in 0..points.len() {
        for q in 0..points.len() {
            if space.leq(p, q) != pointwise_leq(&eta[p], &eta[q]) {
                return Err(Error::TheoremViolation(format!(
                    "η is not an order isomorphism at points {p}, {q}"
                )));
            }
        }
    }
    Ok(KnowledgeDual {
        dual,
        points,
        space,
        eta,
        priestley,
        eta_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_isomorphism;

    fn four() -> FinAlgebra {
        canonical(CanonicalName::Four)
    }

    fn four_minus() -> FinAlgebra {
        canonical(CanonicalName::FourMinus)
    }

    /// `4` with an extra unary operation.
    fn four_with(f: impl Fn(Elem) -> Elem) -> FinAlgebra {
        let base = four();
        let mut ops: Vec<(&str, usize)> = base
            .signature()
            .ops()
            .iter()
            .map(|o| (o.symbol.as_str(), o.arity))
            .collect();
        ops.push(("f", 1));
        let sig = Signature::new("DB+f", &ops).unwrap();
        let mut tables = base.tables();
        tables.push((0..4).map(f).collect());
        base.with_tables(sig, tables).unwrap()
    }

    #[test]
    fn omega_of_four() {
        let w = omega_set(&four(), true).unwrap();
        let tags: Vec<&str> = w.iter().map(|o| o.tag.as_str()).collect();
        assert_eq!(tags, vec!["alpha", "beta"]);
        // α⁻¹(1) = {11, 10}, β⁻¹(1) = {11, 01}.
        assert_eq!(w[0].map, vec![0, 1, 0, 1]);
        assert_eq!(w[1].map, vec![0, 1, 1, 0]);
        let wm: Vec<String> = omega_set(&four_minus(), false)
            .unwrap()
            .into_iter()
            .map(|o| o.tag)
            .collect();
        assert_eq!(wm.len(), 4);
        for t in ["alpha", "beta", "0bar", "1bar"] {
            assert!(wm.iter().any(|x| x == t));
        }
        let two: Vec<String> = omega_set(&canonical(CanonicalName::Two), true)
            .unwrap()
            .into_iter()
            .map(|o| o.tag)
            .collect();
        assert_eq!(two, vec!["id"]);
    }

    fn le_k_pairs() -> Vec<(Elem, Elem)> {
        let (jk, _) = crate::varieties::knowledge_tables(&four()).unwrap();
        let mut v = vec![];
        for a in 0..4 {
            for b in 0..4 {
                if jk[a * 4 + b] == b {
                    v.push((a, b));
                }
            }
        }
        v
    }

    #[test]
    fn relations_for_four() {
        let p = piggyback_relations(&four(), true).unwrap();
        let (a, b) = (p.omega("alpha").unwrap(), p.omega("beta").unwrap());
        let le = le_k_pairs();
        let mut ge: Vec<(Elem, Elem)> = le.iter().map(|&(x, y)| (y, x)).collect();
        ge.sort_unstable();
        assert_eq!(p.binary_pairs(a, a), vec![le]);
        assert_eq!(p.binary_pairs(b, b), vec![ge]);
        assert!(p.binary[a][b].is_empty());
        assert!(p.binary[b][a].is_empty());
    }

    #[test]
    fn relations_for_two() {
        let two = canonical(CanonicalName::Two);
        let p = piggyback_relations(&two, true).unwrap();
        assert_eq!(p.binary_pairs(0, 0), vec![vec![(0, 0), (0, 1), (1, 1)]]);
    }

    #[test]
    fn relations_are_maximal_subuniverses() {
        let p = piggyback_relations(&four_minus(), false).unwrap();
        let sq = four_minus().product(&four_minus()).unwrap();
        let subs = enumerate_subuniverses(&sq);
        for (i, w1) in p.omegas.iter().enumerate() {
            for (j, w2) in p.omegas.iter().enumerate() {
                for r in &p.binary[i][j] {
                    assert!(SubUniverse::new(sq.clone(), r.elements()).is_ok());
                    for s in &subs {
                        let inside = s
                            .elements()
                            .iter()
                            .all(|&e| w1.apply(e / 4) <= w2.apply(e % 4));
                        if inside && r.is_subset_of(s) {
                            assert_eq!(s.elements(), r.elements());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dismount_four() {
        let c = dismount(&four()).unwrap();
        assert_eq!(c.points.len(), 2);
        assert_eq!(c.classes.len(), 2);
        assert!(c
            .quotient
            .poset()
            .isomorphism(&PriestleySpace::antichain(2))
            .is_some());
    }

    #[test]
    fn dismount_four_minus() {
        let c = dismount(&four_minus()).unwrap();
        assert_eq!(c.points.len(), 12);
        assert_eq!(c.classes.len(), 4);
        assert!(c.is_collapsed_endpoint_shape());
        let diamond = PriestleySpace::from_covers(
            vec!["b".into(), "l".into(), "r".into(), "t".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let target = OrderedSpace::Pointed(DoublyPointedSpace::new(diamond, 0, 3).unwrap());
        assert!(c.quotient.isomorphism(&target).is_some());
    }

    #[test]
    fn dismount_of_a_product() {
        let sq = four().product(&four()).unwrap();
        let c = dismount(&sq).unwrap();
        assert_eq!(c.quotient.len(), 4);
        assert!(c.classes.iter().all(|k| k.len() == 1));
        let trivial = FinAlgebra::trivial(&Signature::db());
        assert!(dismount(&trivial).unwrap().quotient.is_empty());
    }

    #[test]
    fn negation_and_constants_transfer() {
        let t = transfer_operations(&four()).unwrap();
        let c = &t.cover;
        let alpha = c.relations.omega("alpha").unwrap();
        let class_a = c.class_of[c.points.iter().position(|&(_, w)| w == alpha).unwrap()];
        let class_b = 1 - class_a;
        assert_eq!(t.hbar[0].1[class_a], class_b);
        assert_eq!(t.hbar[0].1[class_b], class_a);
        let (name, one_k) = &t.cbar[1];
        assert_eq!(name, ONE_K);
        assert!(one_k[class_a] && !one_k[class_b]);
    }

    #[test]
    fn identity_slot_transfers_to_identity() {
        let a = four_with(|e| e);
        let slots = TransferSlots {
            f: vec!["f".into()],
            ..TransferSlots::bilattice()
        };
        let t = transfer_with(&a, &a, &slots).unwrap();
        let k = t.cover.classes.len();
        assert_eq!(t.fbar[0].1, (0..k).collect::<Vec<_>>());
    }

    #[test]
    fn synthetic_endomorphism_slot() {
        // f(ij) = ii is a truth-lattice endomorphism of 4.
        let f = |e: Elem| {
            let (i, _) = crate::varieties::four_bits(e);
            crate::varieties::four_elem(i, i)
        };
        let a = four_with(f);
        let slots = TransferSlots {
            f: vec!["f".into()],
            ..TransferSlots::default()
        };
        let sq = a.product(&a).unwrap();
        for alg in [a.clone(), sq] {
            let t = transfer_with(&alg, &a, &slots).unwrap();
            let c = &t.cover;
            for &img in &t.fbar[0].1 {
                let (_, w) = c.points[c.classes[img][0]];
                assert_eq!(c.relations.omegas[w].tag, "alpha");
            }
        }
    }

    #[test]
    fn knowledge_dual_of_four() {
        let k = knowledge_dual(&four()).unwrap();
        assert_eq!(k.space.len(), 2);
        assert_eq!(k.eta, vec![vec![0, 1, 0, 1], vec![1, 0, 0, 1]]);
        let trivial = FinAlgebra::trivial(&Signature::db());
        assert!(knowledge_dual(&trivial).unwrap().space.is_empty());
    }

    #[test]
    fn knowledge_dual_of_a_square_is_two_copies() {
        let sq = four().product(&four()).unwrap();
        let k = knowledge_dual(&sq).unwrap();
        assert_eq!(k.space.len(), 4);
        let lk = k_lattice(&sq).unwrap();
        let back = crate::birkhoff::upset_algebra(&OrderedSpace::Plain(k.space.clone()));
        assert!(find_isomorphism(&back, &lk).unwrap().is_some());
    }
}

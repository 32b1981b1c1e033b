//! The twelve acceptance criteria, each reported as one PASS or FAIL line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bilattice::algebra::{
    congruence_lattice, enumerate_subuniverses, find_isomorphism, tuples, Elem, FinAlgebra,
};
use bilattice::applications::{
    admissibility_check, double_diamond, embed_into_free, free_embedding, structural_tests,
    unification_type, UnificationStatus,
};
use bilattice::birkhoff::{priestley_dual, DoublyPointedSpace, OrderedSpace, PriestleySpace};
use bilattice::corpus::{corpus, pre_bilattice_corpus, CorpusEntry, DEFAULT_SEED};
use bilattice::natural_duality::{
    closed_substructure_lattice, coproduct_algebras, evaluation_algebra, evaluation_morphism,
    free_algebra, natural_dual, standard_alter_ego, verify_full_duality, StructuredSpace,
    DEFAULT_GUARD,
};
use bilattice::piggyback::{dismount, knowledge_dual, piggyback_relations};
use bilattice::product_rep::{bowtie, order_dual_lattice, verify_product_representation};
use bilattice::signature::{JOIN_K, MEET_K, ONE, ZERO};
use bilattice::varieties::{
    canonical, canonical_in, convert_to, derive_knowledge_ops, k_lattice, t_lattice, CanonicalName,
    VarietyTag,
};
use bilattice::Signature;

type Check = Result<String, String>;

/// Criteria whose literal targets cannot be met; they still print FAIL.
const DOCUMENTED_FAILURES: &[usize] = &[2];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn four() -> FinAlgebra {
    canonical(CanonicalName::Four)
}

fn four_minus() -> FinAlgebra {
    canonical(CanonicalName::FourMinus)
}

fn the_corpus() -> Vec<CorpusEntry> {
    corpus(DEFAULT_SEED).expect("corpus builds")
}

fn bilattices(c: &[CorpusEntry]) -> Vec<&CorpusEntry> {
    c.iter()
        .filter(|e| matches!(e.variety, VarietyTag::Db | VarietyTag::DbMinus))
        .collect()
}

/// `a ≤_k b` in 4, read off the knowledge join.
fn le_k(a: Elem, b: Elem) -> bool {
    let full = canonical_in(CanonicalName::Four, Signature::full()).unwrap();
    full.eval(JOIN_K, &[a, b]) == Some(b)
}

fn set_of(pairs: impl IntoIterator<Item = (Elem, Elem)>, n: usize) -> BTreeSet<Elem> {
    pairs.into_iter().map(|(a, b)| a * n + b).collect()
}

fn subuniverse_inventory() -> Check {
    let sq = four().power(2).map_err(|e| e.to_string())?;
    let got: BTreeSet<BTreeSet<Elem>> = enumerate_subuniverses(&sq)
        .iter()
        .map(|s| s.elements().iter().copied().collect())
        .collect();
    let all = || (0..4).flat_map(|a| (0..4).map(move |b| (a, b)));
    let want: BTreeSet<BTreeSet<Elem>> = [
        set_of(all(), 4),
        set_of((0..4).map(|a| (a, a)), 4),
        set_of(all().filter(|&(a, b)| le_k(a, b)), 4),
        set_of(all().filter(|&(a, b)| le_k(b, a)), 4),
    ]
    .into_iter()
    .collect();
    ensure!(
        got == want,
        "subuniverses of 4^2 differ: {} found",
        got.len()
    );

    let m = four_minus();
    let sqm = m.power(2).map_err(|e| e.to_string())?;
    let subs = enumerate_subuniverses(&sqm);
    let mut decomposable = 0;
    let mut indecomposable = BTreeSet::new();
    let factors: Vec<BTreeSet<Elem>> = vec![
        [m.element("01").unwrap()].into(),
        [m.element("10").unwrap()].into(),
        (0..4).collect(),
    ];
    for s in &subs {
        let el: BTreeSet<Elem> = s.elements().iter().copied().collect();
        let left: BTreeSet<Elem> = el.iter().map(|e| e / 4).collect();
        let right: BTreeSet<Elem> = el.iter().map(|e| e % 4).collect();
        let product: BTreeSet<Elem> = left
            .iter()
            .flat_map(|a| right.iter().map(move |b| a * 4 + b))
            .collect();
        if product == el {
            ensure!(
                factors.contains(&left) && factors.contains(&right),
                "decomposable subuniverse with unexpected factors"
            );
            decomposable += 1;
        } else {
            indecomposable.insert(el);
        }
    }
    let three: BTreeSet<BTreeSet<Elem>> = want.into_iter().filter(|s| s.len() < 16).collect();
    ensure!(subs.len() == 12, "4-^2 has {} subuniverses", subs.len());
    ensure!(
        decomposable == 9,
        "{decomposable} decomposable subuniverses"
    );
    ensure!(
        indecomposable == three,
        "indecomposable subuniverses are not diagonal, <=_k, >=_k"
    );
    Ok("4^2: full, diagonal, <=_k, >=_k; 4-^2: 12 = 3 + 9".into())
}

/// Maximal subuniverses of `m²` inside `{(x, y) : w1(x) <= w2(y)}`, by checking every subset.
fn oracle(m: &FinAlgebra, w1: &[Elem], w2: &[Elem]) -> Vec<Vec<(Elem, Elem)>> {
    let n = m.size();
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let arities: Vec<usize> = m.signature().ops().iter().map(|o| o.arity).collect();
    let closed: Vec<u32> = (1u32..1 << pairs.len())
        .filter(|&mask| {
            let inside = |&(x, y): &(Elem, Elem)| mask >> (x * n + y) & 1 == 1;
            let set: Vec<(Elem, Elem)> = pairs.iter().copied().filter(inside).collect();
            set.iter().all(|&(x, y)| w1[x] <= w2[y])
                && arities.iter().enumerate().all(|(op, &k)| {
                    tuples(set.len(), k).all(|args| {
                        let xs: Vec<Elem> = args.iter().map(|&i| set[i].0).collect();
                        let ys: Vec<Elem> = args.iter().map(|&i| set[i].1).collect();
                        inside(&(m.apply(op, &xs), m.apply(op, &ys)))
                    })
                })
        })
        .collect();
    let mut out: Vec<Vec<(Elem, Elem)>> = closed
        .iter()
        .filter(|&&a| !closed.iter().any(|&b| b != a && a & b == a))
        .map(|&a| {
            pairs
                .iter()
                .copied()
                .filter(|&(x, y)| a >> (x * n + y) & 1 == 1)
                .collect()
        })
        .collect();
    out.sort();
    out
}

fn piggyback_tables() -> Check {
    let p = piggyback_relations(&four(), true).map_err(|e| e.to_string())?;
    let (a, b) = (p.omega("alpha").unwrap(), p.omega("beta").unwrap());
    let all = || (0..4).flat_map(|x| (0..4).map(move |y| (x, y)));
    let le: Vec<(Elem, Elem)> = all().filter(|&(x, y)| le_k(x, y)).collect();
    let ge: Vec<(Elem, Elem)> = all().filter(|&(x, y)| le_k(y, x)).collect();
    ensure!(
        p.binary_pairs(a, a) == vec![le.clone()],
        "R[alpha,alpha] is not <=_k"
    );
    ensure!(
        p.binary_pairs(b, b) == vec![ge.clone()],
        "R[beta,beta] is not >=_k"
    );
    ensure!(
        p.binary_pairs(a, b).is_empty() && p.binary_pairs(b, a).is_empty(),
        "mixed relations for 4 are not empty"
    );

    let m = four_minus();
    let p = piggyback_relations(&m, false).map_err(|e| e.to_string())?;
    let w = |t: &str| p.omega(t).unwrap();
    let e = |s: &str| m.element(s).unwrap();
    let set = |v: Vec<(Elem, Elem)>| -> Vec<(Elem, Elem)> {
        let mut v = v;
        v.sort_unstable();
        v
    };
    let row = |x: Elem| set((0..4).map(|y| (x, y)).collect());
    let col = |y: Elem| set((0..4).map(|x| (x, y)).collect());
    let sorted = |mut v: Vec<Vec<(Elem, Elem)>>| {
        v.sort();
        v
    };
    let tags = ["alpha", "beta", "0bar", "1bar"];
    let mut mismatches = vec![];
    for t1 in tags {
        for t2 in tags {
            let got = sorted(p.binary_pairs(w(t1), w(t2)));
            let want: Option<Vec<Vec<(Elem, Elem)>>> = match (t1, t2) {
                ("alpha", "alpha") => Some(vec![le.clone()]),
                ("beta", "beta") => Some(vec![ge.clone()]),
                ("0bar", _) | (_, "1bar") => Some(vec![all().collect()]),
                ("alpha", "0bar") => Some(vec![row(e("01"))]),
                ("beta", "0bar") => Some(vec![row(e("10"))]),
                ("1bar", "alpha") => Some(vec![col(e("10"))]),
                ("1bar", "beta") => Some(vec![col(e("01"))]),
                ("alpha", "beta") => Some(sorted(vec![row(e("01")), vec![(e("10"), e("01"))]])),
                ("beta", "alpha") => Some(sorted(vec![row(e("10")), vec![(e("10"), e("01"))]])),
                ("1bar", "0bar") => Some(vec![]),
                _ => None,
            };
            ensure!(
                got == oracle(&m, &p.omegas[w(t1)].map, &p.omegas[w(t2)].map),
                "R[{t1},{t2}] of 4- is not maximal"
            );
            if let Some(want) = want {
                if got != want {
                    let show = |v: &[Vec<(Elem, Elem)>]| {
                        v.iter()
                            .map(|r| {
                                let pairs: Vec<String> = r
                                    .iter()
                                    .map(|&(x, y)| format!("({},{})", m.name(x), m.name(y)))
                                    .collect();
                                format!("{{{}}}", pairs.join(" "))
                            })
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    mismatches.push(format!(
                        "R[{t1},{t2}] is {} (listed: {})",
                        show(&got),
                        show(&want)
                    ));
                }
            }
        }
    }
    let unary = |t: &str, bit: usize| p.unary_sets(w(t), bit);
    let single = |s: &str| vec![vec![e(s)]];
    ensure!(
        unary("alpha", 0) == single("01") && unary("beta", 1) == single("01"),
        "r0_alpha or r1_beta"
    );
    ensure!(
        unary("alpha", 1) == single("10") && unary("beta", 0) == single("10"),
        "r1_alpha or r0_beta"
    );
    ensure!(
        unary("0bar", 0) == vec![(0..4).collect::<Vec<_>>()]
            && unary("1bar", 1) == vec![(0..4).collect::<Vec<_>>()],
        "r0_0bar or r1_1bar is not 4-"
    );
    ensure!(
        unary("0bar", 1).is_empty() && unary("1bar", 0).is_empty(),
        "R1_0bar or R0_1bar is not empty"
    );
    ensure!(
        mismatches.is_empty(),
        "{}; the other binary entries and all 8 unary entries match; computed tables agree with a brute-force search over all subsets of 4-^2",
        mismatches.join("; ")
    );
    Ok("4: <=_k, >=_k, empty mixed; 4-: all 16 binary and 8 unary entries".into())
}

fn full_duality() -> Check {
    let c = the_corpus();
    for e in &c {
        let r = verify_full_duality(&e.algebra(), &standard_alter_ego(e.variety))
            .map_err(|err| format!("{}: {err}", e.name))?;
        ensure!(r.passed(), "{}: {:?}", e.name, r.witnesses);
    }
    Ok(format!("{} corpus algebras", c.len()))
}

fn congruence_partitions(a: &FinAlgebra) -> BTreeSet<Vec<Vec<Elem>>> {
    congruence_lattice(a)
        .congruences
        .iter()
        .map(|c| c.blocks().to_vec())
        .collect()
}

fn congruence_coincidence() -> Check {
    let algebras = pre_bilattice_corpus(DEFAULT_SEED, 100, 16).map_err(|e| e.to_string())?;
    for (i, a) in algebras.iter().enumerate() {
        ensure!(a.size() <= 16, "algebra {i} has {} elements", a.size());
        let t = t_lattice(a).map_err(|e| e.to_string())?;
        let k = k_lattice(a).map_err(|e| e.to_string())?;
        let full = congruence_partitions(a);
        ensure!(
            congruence_partitions(&t) == full,
            "algebra {i}: truth reduct differs"
        );
        ensure!(
            congruence_partitions(&k) == full,
            "algebra {i}: knowledge reduct differs"
        );
    }
    let sizes: BTreeSet<usize> = algebras.iter().map(FinAlgebra::size).collect();
    Ok(format!("100 DPB- algebras, sizes {sizes:?}"))
}

fn ninety_degree() -> Check {
    let c = the_corpus();
    let mut checked = 0;
    for e in c.iter().filter(|e| e.variety.is_bounded()) {
        let (jk, mk) = derive_knowledge_ops(&e.full).map_err(|err| format!("{}: {err}", e.name))?;
        let a = &e.full;
        let n = a.size();
        for (x, y) in (0..n).flat_map(|x| (0..n).map(move |y| (x, y))) {
            ensure!(
                jk[x * n + y] == a.eval(JOIN_K, &[x, y]).unwrap(),
                "{}: join_k at {x},{y}",
                e.name
            );
            ensure!(
                mk[x * n + y] == a.eval(MEET_K, &[x, y]).unwrap(),
                "{}: meet_k at {x},{y}",
                e.name
            );
        }
        checked += 1;
    }
    Ok(format!("{checked} bounded corpus algebras"))
}

fn bounded_diamond() -> OrderedSpace {
    let d = PriestleySpace::from_covers(
        ["b", "l", "r", "t"].map(String::from).to_vec(),
        &[(0, 1), (0, 2), (1, 3), (2, 3)],
    )
    .unwrap();
    OrderedSpace::Pointed(DoublyPointedSpace::new(d, 0, 3).unwrap())
}

fn dismount_shapes() -> Check {
    let c = the_corpus();
    let bil = bilattices(&c);
    for e in &bil {
        let a = e.algebra();
        let err = |x: bilattice::Error| format!("{}: {x}", e.name);
        let cover = dismount(&a).map_err(err)?;
        let lt = priestley_dual(&t_lattice(&a).map_err(err)?).map_err(err)?;
        ensure!(
            cover.quotient.isomorphism(&lt.space).is_some(),
            "{}: quotient is not the truth dual",
            e.name
        );
        for i in 0..cover.classes.len() {
            for j in 0..cover.classes.len() {
                let q = cover.quotient.poset().leq(i, j);
                let p = lt.space.poset().leq(cover.phi_index[i], cover.phi_index[j]);
                ensure!(p == q, "{}: phi is not an order isomorphism", e.name);
            }
        }
        if e.variety.is_bounded() {
            let d = natural_dual(&a, &standard_alter_ego(e.variety)).map_err(err)?;
            let tags: Vec<String> = cover
                .relations
                .omegas
                .iter()
                .map(|o| o.tag.clone())
                .collect();
            let within = |w: usize, x: usize, y: usize| {
                if tags[w] == "alpha" {
                    d.space.related(0, x, y)
                } else {
                    d.space.related(0, y, x)
                }
            };
            ensure!(
                cover.is_disjoint_union_shape(&within),
                "{}: not D(A) + D(A)^op",
                e.name
            );
            let poset = d.space.poset(0).map_err(err)?;
            let kd = knowledge_dual(&a).map_err(err)?;
            let lk = priestley_dual(&k_lattice(&a).map_err(err)?).map_err(err)?;
            ensure!(
                kd.space.isomorphism(lk.space.poset()).is_some(),
                "{}: knowledge dual vs k-lattice",
                e.name
            );
            ensure!(
                kd.space
                    .isomorphism(&poset.disjoint_union(&poset))
                    .is_some(),
                "{}: knowledge dual is not two copies of D(A)",
                e.name
            );
        }
    }
    let cover = dismount(&four_minus()).map_err(|e| e.to_string())?;
    ensure!(
        cover.quotient.isomorphism(&bounded_diamond()).is_some(),
        "4-: quotient is not the bounded diamond"
    );
    let big = cover.classes.iter().filter(|k| k.len() > 1).count();
    ensure!(
        big == 2 && cover.is_collapsed_endpoint_shape(),
        "4-: {big} non-singleton classes"
    );
    Ok(format!(
        "{} bilattices; 4- collapses to the bounded diamond",
        bil.len()
    ))
}

fn lattice_product(a: &FinAlgebra, b: &FinAlgebra) -> FinAlgebra {
    a.product(b).unwrap()
}

fn product_representation() -> Check {
    let c = the_corpus();
    let bil = bilattices(&c);
    for e in &bil {
        let a = e.algebra();
        let err = |x: bilattice::Error| format!("{}: {x}", e.name);
        let r = verify_product_representation(&a).map_err(err)?;
        ensure!(r.explicit && r.generic, "{}: representation fails", e.name);
        let l = &r.lattice;
        let ld = order_dual_lattice(l).map_err(err)?;
        let at = t_lattice(&a).map_err(err)?;
        let ak = k_lattice(&a).map_err(err)?;
        ensure!(
            find_isomorphism(&at, &lattice_product(l, &ld))
                .map_err(err)?
                .is_some(),
            "{}: A_t",
            e.name
        );
        ensure!(
            find_isomorphism(&ak, &lattice_product(l, l))
                .map_err(err)?
                .is_some(),
            "{}: A_k",
            e.name
        );
    }
    let r = verify_product_representation(&four()).map_err(|e| e.to_string())?;
    let l = &r.lattice;
    let (zero, one) = (l.constant(ZERO).unwrap(), l.constant(ONE).unwrap());
    let bit = |v: u8| if v == 1 { one } else { zero };
    for x in 0..4 {
        let (i, j) = bilattice::varieties::four_bits(x);
        let want = r.bowtie.element(bit(i), bit(1 - j));
        ensure!(
            r.iso.apply(x) == want,
            "4: {} is not sent to (i, 1-j)",
            four().name(x)
        );
    }
    Ok(format!(
        "{} bilattices; 4 = 2 (.) 2 via ij -> (i,1-j)",
        bil.len()
    ))
}

/// Order-preserving self-maps of the knowledge diamond, counted directly.
fn monotone_self_maps_of_diamond() -> usize {
    tuples(4, 4)
        .filter(|f| (0..4).all(|x| (0..4).all(|y| !le_k(x, y) || le_k(f[x], f[y]))))
        .count()
}

fn free_algebras() -> Check {
    let err = |x: bilattice::Error| x.to_string();
    let f0 = free_algebra(VarietyTag::Db, 0).map_err(err)?;
    let f1 = free_algebra(VarietyTag::Db, 1).map_err(err)?;
    let fm = free_algebra(VarietyTag::DbMinus, 1).map_err(err)?;
    let sizes = (f0.algebra.size(), f1.algebra.size(), fm.algebra.size());
    ensure!(sizes == (4, 36, 16), "sizes {sizes:?}");
    let d2 = free_algebra(VarietyTag::D, 2).map_err(err)?;
    ensure!(
        d2.algebra.size() * d2.algebra.size() == 36,
        "|F_D(2)| = {}",
        d2.algebra.size()
    );
    ensure!(
        monotone_self_maps_of_diamond() == 36,
        "monotone count {}",
        monotone_self_maps_of_diamond()
    );
    let b = bowtie(&d2.algebra).map_err(err)?;
    ensure!(
        find_isomorphism(&f1.algebra, &b.algebra)
            .map_err(err)?
            .is_some(),
        "F_DB(1) is not F_D(2) (.) F_D(2)"
    );

    let ego = standard_alter_ego(VarietyTag::Db);
    let cop = coproduct_algebras(&f1.algebra, &f1.algebra, &ego, DEFAULT_GUARD).map_err(err)?;
    let f2 = free_algebra(VarietyTag::Db, 2).map_err(err)?;
    ensure!(
        cop.algebra.size() == f2.algebra.size(),
        "{} vs {}",
        cop.algebra.size(),
        f2.algebra.size()
    );
    let phi = f2
        .space
        .isomorphism(&cop.space)
        .ok_or("dual spaces are not isomorphic")?;
    let h = evaluation_morphism(&f2.evaluation, &cop.evaluation, &f2.space, &cop.space, &phi)
        .map_err(err)?;
    ensure!(h.is_bijective(), "E(phi) is not a bijection");
    let images: BTreeSet<Elem> = [
        cop.left.apply(f1.generators[0]),
        cop.right.apply(f1.generators[0]),
    ]
    .into_iter()
    .map(|g| h.apply(g))
    .collect();
    let gens: BTreeSet<Elem> = f2.generators.iter().copied().collect();
    ensure!(
        images == gens,
        "injections do not reach the free generators"
    );
    let (src, tgt) = (&cop.algebra, &f2.algebra);
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..5000 {
        let op = rng.gen_range(0..src.signature().len());
        let args: Vec<Elem> = (0..src.signature().arity(op))
            .map(|_| rng.gen_range(0..src.size()))
            .collect();
        let mapped: Vec<Elem> = args.iter().map(|&x| h.apply(x)).collect();
        ensure!(
            h.apply(src.apply(op, &args)) == tgt.apply(op, &mapped),
            "E(phi) fails on sampled operation"
        );
    }
    Ok(format!(
        "4, 36 = 6^2 = monotone count, 16; |F(1) + F(1)| = |F(2)| = {}",
        f2.algebra.size()
    ))
}

fn congruences_and_substructures() -> Check {
    let c = the_corpus();
    for e in &c {
        let s = closed_substructure_lattice(&e.algebra(), &standard_alter_ego(e.variety))
            .map_err(|x| format!("{}: {x}", e.name))?;
        ensure!(s.anti_isomorphic, "{}: {:?}", e.name, s.witness);
    }
    let con = congruence_lattice(&four().power(2).unwrap());
    ensure!(
        con.len() == 4 && con.is_boolean(),
        "Con(4^2) has {} elements",
        con.len()
    );
    Ok(format!(
        "{} corpus algebras; Con(4^2) is the 4-element Boolean lattice",
        c.len()
    ))
}

fn unification() -> Check {
    let err = |x: bilattice::Error| x.to_string();
    let ty = |a: &FinAlgebra, v| unification_type(a, v).map(|u| u.status);
    ensure!(
        ty(&four(), VarietyTag::Db).map_err(err)? == UnificationStatus::Type1,
        "type(4)"
    );
    let sq = four().power(2).unwrap();
    ensure!(
        ty(&sq, VarietyTag::Db).map_err(err)? == UnificationStatus::TypeOmega,
        "type(4^2)"
    );
    let ego = standard_alter_ego(VarietyTag::Db);
    let x6 =
        evaluation_algebra(&StructuredSpace::from_poset(&double_diamond()), &ego).map_err(err)?;
    let u = unification_type(&x6, VarietyTag::Db).map_err(err)?;
    ensure!(
        u.status == UnificationStatus::Type0 && u.is_consistent(),
        "type(E(X6))"
    );
    let trivial = FinAlgebra::trivial(&Signature::db());
    ensure!(
        ty(&trivial, VarietyTag::Db).map_err(err)? == UnificationStatus::Unsolvable,
        "type(1)"
    );
    ensure!(
        ty(&four_minus(), VarietyTag::DbMinus).map_err(err)? == UnificationStatus::Type1,
        "type(4-)"
    );
    let c = the_corpus();
    let bil = bilattices(&c);
    for e in &bil {
        let a = e.algebra();
        let u = unification_type(&a, e.variety).map_err(err)?;
        let s = structural_tests(&a).map_err(err)?;
        ensure!(
            u.is_consistent(),
            "{}: verdict not backed by its evidence",
            e.name
        );
        if u.status != UnificationStatus::Unsolvable {
            ensure!(
                (u.status == UnificationStatus::Type1) == s.weakly_projective,
                "{}: type1 vs weak projectivity",
                e.name
            );
        }
    }
    Ok(format!(
        "1, omega, 0, unsolvable; 4- is 1; {} bilattices agree",
        bil.len()
    ))
}

fn admissibility() -> Check {
    let err = |x: bilattice::Error| x.to_string();
    let c = the_corpus();
    let db: Vec<&CorpusEntry> = c.iter().filter(|e| e.variety == VarietyTag::Db).collect();
    let mut bounded = 0;
    for e in &db {
        let a = e.algebra();
        let r = admissibility_check(&a).map_err(err)?;
        let shape = r.dual_nonempty && r.dual_bounded;
        let embeds = embed_into_free(&a, VarietyTag::Db).is_ok();
        ensure!(
            r.clauses_hold() == shape,
            "{}: clauses vs dual shape",
            e.name
        );
        ensure!(embeds == shape, "{}: embedding vs dual shape", e.name);
        bounded += usize::from(shape);
    }
    let (mut unbounded, mut searched) = (0, 0);
    for e in c.iter().filter(|e| e.variety == VarietyTag::DbMinus) {
        let emb = free_embedding(&e.algebra(), VarietyTag::DbMinus)
            .map_err(|x| format!("{}: no embedding: {x}", e.name))?;
        ensure!(
            emb.hom.is_injective(),
            "{}: embedding is not injective",
            e.name
        );
        unbounded += 1;
        searched += usize::from(emb.searched);
    }
    let emb = free_embedding(&four_minus(), VarietyTag::DbMinus).map_err(err)?;
    ensure!(
        emb.hom.target().size() == 16 && emb.hom.is_injective(),
        "4- embedding"
    );
    let sq = four().power(2).unwrap();
    let r = admissibility_check(&sq).map_err(err)?;
    let w = r.clause_results[0]
        .witness
        .clone()
        .ok_or("4^2 satisfies clause (1)")?;
    let names: Vec<&str> = w.iter().map(|&x| sq.name(x)).collect();
    ensure!(names == ["(11,10)", "(10,11)"], "witness {names:?}");
    Ok(format!(
        "{} DB algebras ({bounded} bounded duals); {unbounded} DB- algebras embed ({searched} by search); 4- into F(1) of size 16; 4^2 fails at {names:?}",
        db.len()
    ))
}

fn multisorted() -> Check {
    let err = |x: bilattice::Error| x.to_string();
    let dpb = standard_alter_ego(VarietyTag::Dpb);
    let two_plus = canonical(CanonicalName::TwoPlus);
    let d = natural_dual(&two_plus, &dpb).map_err(err)?;
    ensure!(
        d.space.points_of_sort(0).len() == 1 && d.space.points_of_sort(1).is_empty(),
        "sorts of D(2+)"
    );
    ensure!(d.maps == vec![vec![0, 1]], "D(2+) is not {{id}}");
    let c = the_corpus();
    let mut n = 0;
    for e in c.iter().filter(|e| e.variety == VarietyTag::Dpb) {
        let a = e.algebra();
        let r = verify_full_duality(&a, &dpb).map_err(err)?;
        ensure!(r.passed(), "{} under the DPB ego", e.name);
        let am = convert_to(&a, VarietyTag::DpbMinus).map_err(err)?;
        let r = verify_full_duality(&am, &standard_alter_ego(VarietyTag::DpbMinus)).map_err(err)?;
        ensure!(r.passed(), "{} under the DPB- ego", e.name);
        n += 1;
    }
    Ok(format!(
        "D(2+) = ({{id}}, empty); {n} DPB algebras under both egos"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("subalgebra inventory", subuniverse_inventory),
        ("piggyback tables", piggyback_tables),
        ("full duality round trips", full_duality),
        ("congruence coincidence", congruence_coincidence),
        ("knowledge operations from truth operations", ninety_degree),
        ("dismount shapes", dismount_shapes),
        ("product representation", product_representation),
        ("free algebras", free_algebras),
        (
            "congruences and substructures",
            congruences_and_substructures,
        ),
        ("unification type", unification),
        ("admissibility", admissibility),
        ("multisorted duality", multisorted),
    ];
    let mut failed = vec![];
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed.push(i + 1);
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    let unexpected: Vec<usize> = failed
        .iter()
        .copied()
        .filter(|c| !DOCUMENTED_FAILURES.contains(c))
        .collect();
    println!(
        "acceptance: {} passed, {} failed ({} documented in README, {} unexpected)",
        criteria.len() - failed.len(),
        failed.len(),
        failed.len() - unexpected.len(),
        unexpected.len()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}

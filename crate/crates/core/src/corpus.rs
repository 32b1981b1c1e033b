//! Seeded test corpus: canonical algebras, bowties of small lattices and random
//! subalgebras and quotients of them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{closure, principal_congruence, Elem, FinAlgebra, SubUniverse};
use crate::birkhoff::{upset_algebra, OrderedSpace, PriestleySpace};
use crate::error::Result;
use crate::product_rep::bowtie_in;
use crate::signature::Signature;
use crate::varieties::{canonical_in, reduct_to, CanonicalName, VarietyTag};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const RANDOM_MEMBERS: usize = 25;

/// A corpus algebra. `full` keeps the knowledge operations and every bound the variety
/// admits, so derived operations can be compared with stored ones.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub variety: VarietyTag,
    pub full: FinAlgebra,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, variety: VarietyTag, full: FinAlgebra) -> CorpusEntry {
        CorpusEntry {
            name: name.into(),
            variety,
            full,
        }
    }

    /// The algebra in the signature of its variety.
    pub fn algebra(&self) -> FinAlgebra {
        reduct_to(&self.full, self.variety).expect("full signature extends the variety")
    }

    pub fn size(&self) -> usize {
        self.full.size()
    }
}

/// Signature with stored knowledge operations for algebras of `v`.
pub fn full_signature(v: VarietyTag) -> Signature {
    match v {
        VarietyTag::Db => Signature::full(),
        VarietyTag::Dpb => Signature::full_pre(),
        _ => v.signature(),
    }
}

/// The distributive lattices with at most four elements, as up-set lattices.
pub fn small_lattices() -> Vec<(String, FinAlgebra)> {
    let spaces = [
        ("1", PriestleySpace::antichain(0)),
        ("2", PriestleySpace::chain(1)),
        ("3", PriestleySpace::chain(2)),
        ("4", PriestleySpace::chain(3)),
        ("2x2", PriestleySpace::antichain(2)),
    ];
    spaces
        .into_iter()
        .map(|(n, p)| (n.to_string(), upset_algebra(&OrderedSpace::Plain(p))))
        .collect()
}

fn bowties(out: &mut Vec<CorpusEntry>) -> Result<()> {
    for (name, l) in small_lattices() {
        out.push(CorpusEntry::new(
            format!("bowtie({name})"),
            VarietyTag::Db,
            bowtie_in(&l, Signature::full())?.algebra,
        ));
    }
    for (name, l) in small_lattices() {
        let lu = reduct_to(&l, VarietyTag::DMinus)?;
        out.push(CorpusEntry::new(
            format!("bowtie-({name})"),
            VarietyTag::DbMinus,
            bowtie_in(&lu, Signature::db_minus())?.algebra,
        ));
    }
    for (name, l) in small_lattices() {
        if l.size() > 1 {
            out.push(CorpusEntry::new(
                format!("bowtie_pre({name})"),
                VarietyTag::Dpb,
                bowtie_in(&l, Signature::full_pre())?.algebra,
            ));
        }
    }
    Ok(())
}

/// The fixed part of the corpus.
pub fn base_corpus() -> Result<Vec<CorpusEntry>> {
    let four = canonical_in(CanonicalName::Four, Signature::full())?;
    let two_plus = canonical_in(CanonicalName::TwoPlus, Signature::full_pre())?;
    let two_minus = canonical_in(CanonicalName::TwoMinus, Signature::full_pre())?;
    let mut out = vec![
        CorpusEntry::new("4", VarietyTag::Db, four.clone()),
        CorpusEntry::new("4^2", VarietyTag::Db, four.power(2)?),
        CorpusEntry::new(
            "4-",
            VarietyTag::DbMinus,
            canonical_in(CanonicalName::FourMinus, Signature::db_minus())?,
        ),
        CorpusEntry::new("2+", VarietyTag::Dpb, two_plus.clone()),
        CorpusEntry::new("2-", VarietyTag::Dpb, two_minus.clone()),
        CorpusEntry::new("2+x2-", VarietyTag::Dpb, two_plus.product(&two_minus)?),
    ];
    bowties(&mut out)?;
    Ok(out)
}

fn random_subalgebra(a: &FinAlgebra, rng: &mut ChaCha8Rng) -> Result<FinAlgebra> {
    let k = rng.gen_range(1..=2);
    let seeds: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..a.size())).collect();
    let inside = closure(a, &seeds);
    let elems: Vec<Elem> = (0..a.size()).filter(|&e| inside[e]).collect();
    Ok(SubUniverse::new(a.clone(), &elems)?.to_algebra())
}

fn random_quotient(a: &FinAlgebra, rng: &mut ChaCha8Rng) -> Result<FinAlgebra> {
    let x = rng.gen_range(0..a.size());
    let y = rng.gen_range(0..a.size());
    a.quotient(&principal_congruence(a, x, y))
}

/// One random subalgebra or quotient step, never producing an empty algebra.
pub fn random_step(a: &FinAlgebra, rng: &mut ChaCha8Rng) -> Result<(FinAlgebra, &'static str)> {
    if rng.gen_bool(0.5) {
        Ok((random_subalgebra(a, rng)?, "sub"))
    } else {
        Ok((random_quotient(a, rng)?, "quo"))
    }
}

/// `count` seeded random subalgebras and quotients of the base corpus.
pub fn random_members(base: &[CorpusEntry], seed: u64, count: usize) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<&CorpusEntry> = base.iter().filter(|e| e.size() > 1).collect();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let parent = pool.choose(&mut rng).expect("non-empty pool");
        let steps = rng.gen_range(1..=2);
        let mut a = parent.full.clone();
        let mut path = String::new();
        for _ in 0..steps {
            let (b, tag) = random_step(&a, &mut rng)?;
            a = b;
            path.push_str(tag);
            path.push('.');
        }
        out.push(CorpusEntry::new(
            format!("r{i}:{path}{}", parent.name),
            parent.variety,
            a,
        ));
    }
    Ok(out)
}

/// Base corpus followed by [`RANDOM_MEMBERS`] random members.
pub fn corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut all = base_corpus()?;
    let extra = random_members(&all, seed, RANDOM_MEMBERS)?;
    all.extend(extra);
    Ok(all)
}

/// A random distributive lattice: the up-sets of a random poset on at most `points` points,
/// retried until it has at most `max_size` elements.
pub fn random_lattice(rng: &mut ChaCha8Rng, points: usize, max_size: usize) -> FinAlgebra {
    loop {
        let n = rng.gen_range(0..=points);
        let covers: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let p = PriestleySpace::from_covers(names, &covers).expect("acyclic covers");
        let l = upset_algebra(&OrderedSpace::Plain(p));
        if l.size() <= max_size {
            return l;
        }
    }
}

/// Seeded DPB⁻ algebras with at most `max_size` elements, built from bowties of random
/// lattices by subalgebra and quotient steps.
pub fn pre_bilattice_corpus(seed: u64, count: usize, max_size: usize) -> Result<Vec<FinAlgebra>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let side = (max_size as f64).sqrt() as usize;
        let l = random_lattice(&mut rng, 3, side.max(1));
        let l = reduct_to(&l, VarietyTag::DMinus)?;
        let mut a = bowtie_in(&l, Signature::dpb_minus())?.algebra;
        for _ in 0..rng.gen_range(0..=2) {
            a = random_step(&a, &mut rng)?.0;
        }
        if a.size() <= max_size {
            out.push(a);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::validate;

    #[test]
    fn corpus_is_valid_and_reproducible() {
        let c = corpus(DEFAULT_SEED).unwrap();
        assert_eq!(c.len(), 6 + 14 + RANDOM_MEMBERS);
        for e in &c {
            let r = validate(&e.algebra(), e.variety);
            assert!(r.valid, "{} {:?}", e.name, r.violations.first());
        }
        let d = corpus(DEFAULT_SEED).unwrap();
        let names = |c: &[CorpusEntry]| c.iter().map(|e| e.name.clone()).collect::<Vec<_>>();
        assert_eq!(names(&c), names(&d));
    }

    #[test]
    fn small_lattice_sizes() {
        let sizes: Vec<usize> = small_lattices().iter().map(|(_, l)| l.size()).collect();
        assert_eq!(sizes, [1, 2, 3, 4, 4]);
    }

    #[test]
    fn pre_bilattices_are_small_and_valid() {
        let c = pre_bilattice_corpus(7, 20, 16).unwrap();
        for a in &c {
            assert!(a.size() <= 16);
            assert!(validate(a, VarietyTag::DpbMinus).valid);
        }
    }
}

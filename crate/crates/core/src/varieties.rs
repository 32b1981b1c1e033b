//! Canonical generators, axiom validation, derived knowledge operations and
//! separating homomorphisms for the six varieties.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_homs, find_isomorphism, tuples, Elem, FinAlgebra, Hom};
use crate::error::{Error, Result};
use crate::signature::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarietyTag {
    #[serde(rename = "DB")]
    Db,
    #[serde(rename = "DB-")]
    DbMinus,
    #[serde(rename = "DPB")]
    Dpb,
    #[serde(rename = "DPB-")]
    DpbMinus,
    #[serde(rename = "D")]
    D,
    #[serde(rename = "D-")]
    DMinus,
}

impl VarietyTag {
    pub const ALL: [VarietyTag; 6] = [
        VarietyTag::Db,
        VarietyTag::DbMinus,
        VarietyTag::Dpb,
        VarietyTag::DpbMinus,
        VarietyTag::D,
        VarietyTag::DMinus,
    ];

    pub fn signature(self) -> Signature {
        match self {
            VarietyTag::Db => Signature::db(),
            VarietyTag::DbMinus => Signature::db_minus(),
            VarietyTag::Dpb => Signature::dpb(),
            VarietyTag::DpbMinus => Signature::dpb_minus(),
            VarietyTag::D => Signature::d(),
            VarietyTag::DMinus => Signature::d_minus(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VarietyTag::Db => "DB",
            VarietyTag::DbMinus => "DB-",
            VarietyTag::Dpb => "DPB",
            VarietyTag::DpbMinus => "DPB-",
            VarietyTag::D => "D",
            VarietyTag::DMinus => "D-",
        }
    }

    pub fn is_bounded(self) -> bool {
        matches!(self, VarietyTag::Db | VarietyTag::Dpb | VarietyTag::D)
    }

    pub fn has_negation(self) -> bool {
        matches!(self, VarietyTag::Db | VarietyTag::DbMinus)
    }

    pub fn is_lattice(self) -> bool {
        matches!(self, VarietyTag::D | VarietyTag::DMinus)
    }

    /// The variety with the same operations but without bounds.
    pub fn unbounded(self) -> VarietyTag {
        match self {
            VarietyTag::Db | VarietyTag::DbMinus => VarietyTag::DbMinus,
            VarietyTag::Dpb | VarietyTag::DpbMinus => VarietyTag::DpbMinus,
            VarietyTag::D | VarietyTag::DMinus => VarietyTag::DMinus,
        }
    }

    /// The variety whose signature lists exactly these operations.
    pub fn of_signature(sig: &Signature) -> Option<VarietyTag> {
        VarietyTag::ALL
            .into_iter()
            .find(|v| v.signature().compatible(sig))
    }

    pub fn of(a: &FinAlgebra) -> Result<VarietyTag> {
        VarietyTag::of_signature(a.signature()).ok_or_else(|| {
            Error::Precondition(format!(
                "signature {} is not one of the six varieties",
                a.signature().name()
            ))
        })
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VarietyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<VarietyTag> {
        match s {
            "DB" => Ok(VarietyTag::Db),
            "DB-" | "DB⁻" => Ok(VarietyTag::DbMinus),
            "DPB" => Ok(VarietyTag::Dpb),
            "DPB-" | "DPB⁻" => Ok(VarietyTag::DpbMinus),
            "D" => Ok(VarietyTag::D),
            "D-" | "D⁻" => Ok(VarietyTag::DMinus),
            _ => Err(Error::UnknownName(format!("variety {s}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalName {
    /// `4`, the bounded distributive bilattice.
    Four,
    /// `4⁻`, its unbounded counterpart.
    FourMinus,
    /// `2⁺` in DPB.
    TwoPlus,
    /// `2⁻` in DPB.
    TwoMinus,
    /// `2⁺⁻` in DPB⁻.
    TwoPlusMinus,
    /// `2⁻⁻` in DPB⁻.
    TwoMinusMinus,
    /// The two-element bounded lattice.
    Two,
    /// The two-element lattice without bounds.
    TwoUnbounded,
}

impl CanonicalName {
    pub const ALL: [CanonicalName; 8] = [
        CanonicalName::Four,
        CanonicalName::FourMinus,
        CanonicalName::TwoPlus,
        CanonicalName::TwoMinus,
        CanonicalName::TwoPlusMinus,
        CanonicalName::TwoMinusMinus,
        CanonicalName::Two,
        CanonicalName::TwoUnbounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CanonicalName::Four => "4",
            CanonicalName::FourMinus => "4-",
            CanonicalName::TwoPlus => "2+",
            CanonicalName::TwoMinus => "2-",
            CanonicalName::TwoPlusMinus => "2+-",
            CanonicalName::TwoMinusMinus => "2--",
            CanonicalName::Two => "2",
            CanonicalName::TwoUnbounded => "2-lattice",
        }
    }

    pub fn variety(self) -> VarietyTag {
        match self {
            CanonicalName::Four => VarietyTag::Db,
            CanonicalName::FourMinus => VarietyTag::DbMinus,
            CanonicalName::TwoPlus | CanonicalName::TwoMinus => VarietyTag::Dpb,
            CanonicalName::TwoPlusMinus | CanonicalName::TwoMinusMinus => VarietyTag::DpbMinus,
            CanonicalName::Two => VarietyTag::D,
            CanonicalName::TwoUnbounded => VarietyTag::DMinus,
        }
    }
}

impl fmt::Display for CanonicalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CanonicalName {
    type Err = Error;

    fn from_str(s: &str) -> Result<CanonicalName> {
        match s {
            "4" => Ok(CanonicalName::Four),
            "4-" | "4⁻" => Ok(CanonicalName::FourMinus),
            "2+" | "2⁺" => Ok(CanonicalName::TwoPlus),
            "2-" | "2⁻" => Ok(CanonicalName::TwoMinus),
            "2+-" | "2⁺⁻" => Ok(CanonicalName::TwoPlusMinus),
            "2--" | "2⁻⁻" => Ok(CanonicalName::TwoMinusMinus),
            "2" => Ok(CanonicalName::Two),
            "2-lattice" | "2⁻(lattice)" => Ok(CanonicalName::TwoUnbounded),
            _ => Err(Error::UnknownName(format!("canonical algebra {s}"))),
        }
    }
}

/// Universe order of `4` and `4⁻`.
pub const FOUR_NAMES: [&str; 4] = ["00", "11", "01", "10"];

/// The bit pair `ij` of an element of `4`.
pub fn four_bits(e: Elem) -> (u8, u8) {
    [(0, 0), (1, 1), (0, 1), (1, 0)][e]
}

pub fn four_elem(i: u8, j: u8) -> Elem {
    match (i, j) {
        (0, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        _ => 3,
    }
}

fn four_op(symbol: &str, args: &[Elem]) -> Elem {
    let bits: Vec<(u8, u8)> = args.iter().map(|&a| four_bits(a)).collect();
    match symbol {
        JOIN_T => four_elem(bits[0].0 | bits[1].0, bits[0].1 | bits[1].1),
        MEET_T => four_elem(bits[0].0 & bits[1].0, bits[0].1 & bits[1].1),
        JOIN_K => four_elem(bits[0].0 | bits[1].0, bits[0].1 & bits[1].1),
        MEET_K => four_elem(bits[0].0 & bits[1].0, bits[0].1 | bits[1].1),
        NEG => four_elem(1 - bits[0].1, 1 - bits[0].0),
        ZERO_T => four_elem(0, 0),
        ONE_T => four_elem(1, 1),
        ZERO_K => four_elem(0, 1),
        ONE_K => four_elem(1, 0),
        _ => unreachable!("not an operation of 4"),
    }
}

/// Operations on `{0,1}`; `k_dual` reverses the knowledge order.
fn two_op(symbol: &str, args: &[Elem], k_dual: bool) -> Elem {
    let max = || args[0].max(args[1]);
    let min = || args[0].min(args[1]);
    match symbol {
        JOIN_T | JOIN => max(),
        MEET_T | MEET => min(),
        JOIN_K => {
            if k_dual {
                min()
            } else {
                max()
            }
        }
        MEET_K => {
            if k_dual {
                max()
            } else {
                min()
            }
        }
        ZERO_T | ZERO => 0,
        ONE_T | ONE => 1,
        ZERO_K => usize::from(k_dual),
        ONE_K => usize::from(!k_dual),
        _ => unreachable!("not an operation of a two-element algebra"),
    }
}

pub fn canonical(name: CanonicalName) -> FinAlgebra {
    canonical_in(name, name.variety().signature()).expect("canonical tables are well formed")
}

/// A canonical algebra over another signature drawn from its operations, such as
/// [`Signature::full`] for `4`.
pub fn canonical_in(name: CanonicalName, sig: Signature) -> Result<FinAlgebra> {
    let lattice = name.variety().is_lattice();
    for spec in sig.ops() {
        let s = spec.symbol.as_str();
        let ok = match name {
            CanonicalName::Four | CanonicalName::FourMinus => ![JOIN, MEET, ZERO, ONE].contains(&s),
            _ if lattice => [JOIN, MEET, ZERO, ONE].contains(&s),
            _ => ![JOIN, MEET, ZERO, ONE, NEG].contains(&s),
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "{} has no operation {s}",
                name.name()
            )));
        }
    }
    let symbols: Vec<String> = sig.ops().iter().map(|s| s.symbol.clone()).collect();
    let (names, k_dual): (Vec<String>, Option<bool>) = match name {
        CanonicalName::Four | CanonicalName::FourMinus => {
            (FOUR_NAMES.iter().map(|s| s.to_string()).collect(), None)
        }
        CanonicalName::TwoMinus | CanonicalName::TwoMinusMinus => {
            (vec!["0".into(), "1".into()], Some(true))
        }
        _ => (vec!["0".into(), "1".into()], Some(false)),
    };
    FinAlgebra::from_fn(sig, names, |op, args| match k_dual {
        None => four_op(&symbols[op], args),
        Some(d) => two_op(&symbols[op], args, d),
    })
}

/// The reduct of `a` to the operations of `v`.
pub fn reduct_to(a: &FinAlgebra, v: VarietyTag) -> Result<FinAlgebra> {
    a.reduct(v.signature(), &[])
}

/// `a` over the signature of `v`: stored operations are kept, knowledge operations are
/// derived when missing, and anything else is an error.
pub fn convert_to(a: &FinAlgebra, v: VarietyTag) -> Result<FinAlgebra> {
    let sig = v.signature();
    let mut derived = None;
    let tables = sig
        .ops()
        .iter()
        .map(|spec| match a.op_index(&spec.symbol) {
            Some(op) => Ok(a.table(op)),
            None if spec.symbol == JOIN_K || spec.symbol == MEET_K => {
                if derived.is_none() {
                    derived = Some(derive_knowledge_ops(a)?);
                }
                let (jk, mk) = derived.as_ref().expect("just derived");
                Ok(if spec.symbol == JOIN_K {
                    jk.clone()
                } else {
                    mk.clone()
                })
            }
            None => Err(Error::Precondition(format!(
                "{} algebra has no operation {}",
                a.signature().name(),
                spec.symbol
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    FinAlgebra::from_tables(sig, a.names().to_vec(), tables)
}

pub fn canonical_by_name(name: &str) -> Result<FinAlgebra> {
    Ok(canonical(name.parse()?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

type Bin<'a> = Box<dyn Fn(Elem, Elem) -> Elem + 'a>;

fn stored_binary<'a>(a: &'a FinAlgebra, symbol: &str) -> Option<Bin<'a>> {
    let op = a.op_index(symbol)?;
    Some(Box::new(move |x, y| a.apply(op, &[x, y])))
}

fn table_binary(n: usize, table: Vec<Elem>) -> Bin<'static> {
    Box::new(move |x, y| table[x * n + y])
}

/// The 90° Lemma: knowledge join and meet from the truth operations and `0_k`, `1_k`.
pub fn derive_knowledge_ops(a: &FinAlgebra) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let need = |s: &str| {
        a.op_index(s)
            .ok_or_else(|| Error::Precondition(format!("algebra lacks {s}")))
    };
    let (jt, mt) = (need(JOIN_T)?, need(MEET_T)?);
    let zk = a.apply(need(ZERO_K)?, &[]);
    let ok = a.apply(need(ONE_K)?, &[]);
    let join = |x, y| a.apply(jt, &[x, y]);
    let meet = |x, y| a.apply(mt, &[x, y]);
    let n = a.size();
    let mut jk = Vec::with_capacity(n * n);
    let mut mk = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (lo, hi) = (meet(x, y), join(x, y));
            jk.push(join(meet(lo, zk), meet(hi, ok)));
            mk.push(join(meet(lo, ok), meet(hi, zk)));
        }
    }
    Ok((jk, mk))
}

/// Knowledge join and meet tables: stored when the signature has them, derived otherwise.
pub fn knowledge_tables(a: &FinAlgebra) -> Result<(Vec<Elem>, Vec<Elem>)> {
    match (a.op_index(JOIN_K), a.op_index(MEET_K)) {
        (Some(j), Some(m)) => Ok((a.table(j), a.table(m))),
        _ => derive_knowledge_ops(a),
    }
}

/// The truth lattice reduct in D (when `0_t`, `1_t` are present) or D⁻.
pub fn t_lattice(a: &FinAlgebra) -> Result<FinAlgebra> {
    if a.signature().has(ZERO_T) && a.signature().has(ONE_T) {
        a.reduct(
            Signature::d(),
            &[(JOIN, JOIN_T), (MEET, MEET_T), (ZERO, ZERO_T), (ONE, ONE_T)],
        )
    } else {
        a.reduct(Signature::d_minus(), &[(JOIN, JOIN_T), (MEET, MEET_T)])
    }
}

/// The knowledge lattice reduct in D (when `0_k`, `1_k` are present) or D⁻.
pub fn k_lattice(a: &FinAlgebra) -> Result<FinAlgebra> {
    let (jk, mk) = knowledge_tables(a)?;
    match (a.constant(ZERO_K), a.constant(ONE_K)) {
        (Some(z), Some(o)) => a.with_tables(Signature::d(), vec![jk, mk, vec![z], vec![o]]),
        _ => a.with_tables(Signature::d_minus(), vec![jk, mk]),
    }
}

struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    fn law(&mut self, axiom: &str, n: usize, arity: usize, holds: impl Fn(&[Elem]) -> bool) {
        if let Some(w) = tuples(n, arity).find(|t| !holds(t)) {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness: w,
            });
        }
    }

    fn lattice(&mut self, name: &str, n: usize, join: &Bin, meet: &Bin) {
        self.law(&format!("{name} join idempotent"), n, 1, |t| {
            join(t[0], t[0]) == t[0]
        });
        self.law(&format!("{name} meet idempotent"), n, 1, |t| {
            meet(t[0], t[0]) == t[0]
        });
        self.law(&format!("{name} join commutative"), n, 2, |t| {
            join(t[0], t[1]) == join(t[1], t[0])
        });
        self.law(&format!("{name} meet commutative"), n, 2, |t| {
            meet(t[0], t[1]) == meet(t[1], t[0])
        });
        self.law(&format!("{name} join associative"), n, 3, |t| {
            join(join(t[0], t[1]), t[2]) == join(t[0], join(t[1], t[2]))
        });
        self.law(&format!("{name} meet associative"), n, 3, |t| {
            meet(meet(t[0], t[1]), t[2]) == meet(t[0], meet(t[1], t[2]))
        });
        self.law(&format!("{name} absorption"), n, 2, |t| {
            join(t[0], meet(t[0], t[1])) == t[0] && meet(t[0], join(t[0], t[1])) == t[0]
        });
    }

    fn distributes(&mut self, n: usize, f: (&str, &Bin), g: (&str, &Bin)) {
        let (fname, f) = f;
        let (gname, g) = g;
        self.law(&format!("{fname} distributes over {gname}"), n, 3, |t| {
            f(t[0], g(t[1], t[2])) == g(f(t[0], t[1]), f(t[0], t[2]))
        });
    }
}

fn leq(join: &Bin, x: Elem, y: Elem) -> bool {
    join(x, y) == y
}

/// Exhaustive check of every defining law of `v`.
pub fn validate(a: &FinAlgebra, v: VarietyTag) -> ValidationReport {
    let mut c = Checker { violations: vec![] };
    if !v.signature().compatible(a.signature()) {
        c.violations.push(Violation {
            axiom: format!("signature {}", v.name()),
            witness: vec![],
        });
        return ValidationReport {
            valid: false,
            violations: c.violations,
        };
    }
    let n = a.size();
    if v.is_lattice() {
        let join = stored_binary(a, JOIN).expect("lattice join");
        let meet = stored_binary(a, MEET).expect("lattice meet");
        c.lattice("lattice", n, &join, &meet);
        c.distributes(n, (JOIN, &join), (MEET, &meet));
        c.distributes(n, (MEET, &meet), (JOIN, &join));
        if v.is_bounded() {
            let (z, o) = (a.constant(ZERO).unwrap(), a.constant(ONE).unwrap());
            c.law("0 is the least element", n, 1, |t| join(t[0], z) == t[0]);
            c.law("1 is the greatest element", n, 1, |t| meet(t[0], o) == t[0]);
        }
        return ValidationReport {
            valid: c.violations.is_empty(),
            violations: c.violations,
        };
    }
    let jt = stored_binary(a, JOIN_T).expect("truth join");
    let mt = stored_binary(a, MEET_T).expect("truth meet");
    let (jk, mk): (Bin, Bin) = match (stored_binary(a, JOIN_K), stored_binary(a, MEET_K)) {
        (Some(j), Some(m)) => (j, m),
        _ => {
            let (j, m) = derive_knowledge_ops(a).expect("bounded signatures carry 0_k, 1_k");
            (table_binary(n, j), table_binary(n, m))
        }
    };
    c.lattice("t-lattice", n, &jt, &mt);
    c.lattice("k-lattice", n, &jk, &mk);
    let ops: [(&str, &Bin); 4] = [(JOIN_T, &jt), (MEET_T, &mt), (JOIN_K, &jk), (MEET_K, &mk)];
    for f in ops {
        for g in ops {
            if f.0 != g.0 {
                c.distributes(n, f, g);
            }
        }
    }
    if v.has_negation() {
        let neg_op = a.op_index(NEG).expect("negation");
        let neg = |x: Elem| a.apply(neg_op, &[x]);
        c.law("neg involutive", n, 1, |t| neg(neg(t[0])) == t[0]);
        c.law("neg dual endomorphism of t-lattice", n, 2, |t| {
            neg(jt(t[0], t[1])) == mt(neg(t[0]), neg(t[1]))
                && neg(mt(t[0], t[1])) == jt(neg(t[0]), neg(t[1]))
        });
        c.law("neg endomorphism of k-lattice", n, 2, |t| {
            neg(jk(t[0], t[1])) == jk(neg(t[0]), neg(t[1]))
                && neg(mk(t[0], t[1])) == mk(neg(t[0]), neg(t[1]))
        });
        if v.is_bounded() {
            let k = |s: &str| a.constant(s).unwrap();
            c.law("neg interchanges 0_t and 1_t", n, 0, |_| {
                neg(k(ZERO_T)) == k(ONE_T) && neg(k(ONE_T)) == k(ZERO_T)
            });
            c.law("neg fixes 0_k and 1_k", n, 0, |_| {
                neg(k(ZERO_K)) == k(ZERO_K) && neg(k(ONE_K)) == k(ONE_K)
            });
        }
    }
    if v.is_bounded() {
        let k = |s: &str| a.constant(s).unwrap();
        let (zt, ot, zk, ok) = (k(ZERO_T), k(ONE_T), k(ZERO_K), k(ONE_K));
        c.law("0_t is the t-least element", n, 1, |t| jt(t[0], zt) == t[0]);
        c.law("1_t is the t-greatest element", n, 1, |t| {
            mt(t[0], ot) == t[0]
        });
        c.law("0_k is the k-least element", n, 1, |t| jk(t[0], zk) == t[0]);
        c.law("1_k is the k-greatest element", n, 1, |t| {
            mk(t[0], ok) == t[0]
        });
        c.law("0_k meet_t 1_k below a below 0_k join_t 1_k", n, 1, |t| {
            leq(&jt, mt(zk, ok), t[0]) && leq(&jt, t[0], jt(zk, ok))
        });
    }
    c.law("truth bounds on knowledge operations", n, 2, |t| {
        let (lo, hi) = (mt(t[0], t[1]), jt(t[0], t[1]));
        [jk(t[0], t[1]), mk(t[0], t[1])]
            .into_iter()
            .all(|m| leq(&jt, lo, m) && leq(&jt, m, hi))
    });
    c.law("knowledge bounds on truth operations", n, 2, |t| {
        let (lo, hi) = (mk(t[0], t[1]), jk(t[0], t[1]));
        [jt(t[0], t[1]), mt(t[0], t[1])]
            .into_iter()
            .all(|m| leq(&jk, lo, m) && leq(&jk, m, hi))
    });
    ValidationReport {
        valid: c.violations.is_empty(),
        violations: c.violations,
    }
}

/// A hom from `a` into a generator of its variety that separates `x` and `y`.
pub fn separating_family(a: &FinAlgebra, x: Elem, y: Elem) -> Result<(CanonicalName, Hom)> {
    let v = VarietyTag::of(a)?;
    if a.is_trivial() {
        return Err(Error::NoSeparatingHom);
    }
    if x == y {
        return Err(Error::Precondition(
            "elements to separate must differ".into(),
        ));
    }
    let lattice = t_lattice(a)?;
    let two = if v.is_bounded() {
        canonical(CanonicalName::Two)
    } else {
        canonical(CanonicalName::TwoUnbounded)
    };
    let filter = enumerate_homs(&lattice, &two)?
        .into_iter()
        .find(|h| h.apply(x) != h.apply(y))
        .ok_or(Error::NoSeparatingHom)?;
    let chi = filter.map();
    match v {
        VarietyTag::D | VarietyTag::DMinus => {
            let name = if v.is_bounded() {
                CanonicalName::Two
            } else {
                CanonicalName::TwoUnbounded
            };
            Ok((name, Hom::new(a.clone(), canonical(name), chi.to_vec())?))
        }
        VarietyTag::Db | VarietyTag::DbMinus => {
            let neg = a.op_index(NEG).expect("negation");
            let swapped = match a.constant(ZERO_K) {
                Some(zk) => chi[zk] == 1,
                None => {
                    let jk = a.op_index(JOIN_K).expect("knowledge join");
                    let n = a.size();
                    !(0..n).all(|c| (0..n).all(|d| chi[a.apply(jk, &[c, d])] == chi[c].max(chi[d])))
                }
            };
            let map: Vec<Elem> = (0..a.size())
                .map(|c| {
                    let (p, q) = (chi[c] as u8, 1 - chi[a.apply(neg, &[c])] as u8);
                    if swapped {
                        four_elem(q, p)
                    } else {
                        four_elem(p, q)
                    }
                })
                .collect();
            let name = if v.is_bounded() {
                CanonicalName::Four
            } else {
                CanonicalName::FourMinus
            };
            let hom = Hom::new(a.clone(), canonical(name), map)
                .map_err(|e| Error::TheoremViolation(format!("separating map: {e}")))?;
            Ok((name, hom))
        }
        VarietyTag::Dpb | VarietyTag::DpbMinus => {
            let theta = crate::algebra::Congruence::from_labels(a.clone(), chi);
            if let Some(w) = theta.compatibility_violation() {
                return Err(Error::TheoremViolation(format!(
                    "kernel of a prime filter is not a congruence: {w}"
                )));
            }
            let quotient = a.quotient(&theta)?;
            let to_quotient = a.quotient_map(&theta, &quotient)?;
            let names = if v.is_bounded() {
                [CanonicalName::TwoPlus, CanonicalName::TwoMinus]
            } else {
                [CanonicalName::TwoPlusMinus, CanonicalName::TwoMinusMinus]
            };
            for name in names {
                if let Some(iso) = find_isomorphism(&quotient, &canonical(name))? {
                    return Ok((name, to_quotient.then(&iso)?));
                }
            }
            Err(Error::TheoremViolation(
                "two-element quotient is neither 2+ nor 2-".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(a: &FinAlgebra, s: &str, args: &[&str]) -> String {
        let idx: Vec<Elem> = args.iter().map(|n| a.element(n).unwrap()).collect();
        a.name(a.eval(s, &idx).unwrap()).to_string()
    }

    #[test]
    fn four_negation() {
        let four = canonical(CanonicalName::Four);
        assert_eq!(sym(&four, NEG, &["00"]), "11");
        assert_eq!(sym(&four, NEG, &["11"]), "00");
        assert_eq!(sym(&four, NEG, &["01"]), "01");
        assert_eq!(sym(&four, NEG, &["10"]), "10");
    }

    #[test]
    fn four_orders() {
        let four = canonical(CanonicalName::Four);
        assert_eq!(sym(&four, JOIN_T, &["01", "10"]), "11");
        assert_eq!(sym(&four, MEET_T, &["01", "10"]), "00");
        let minus = canonical(CanonicalName::FourMinus);
        assert_eq!(sym(&minus, JOIN_K, &["00", "11"]), "10");
        assert_eq!(sym(&minus, MEET_K, &["00", "11"]), "01");
    }

    #[test]
    fn two_element_prebilattices() {
        let plus = canonical(CanonicalName::TwoPlus);
        assert_eq!(plus.constant(ZERO_T), Some(0));
        assert_eq!(plus.constant(ZERO_K), Some(0));
        assert_eq!(plus.constant(ONE_K), Some(1));
        let minus = canonical(CanonicalName::TwoMinus);
        assert_eq!(minus.constant(ZERO_K), Some(1));
        assert_eq!(minus.constant(ONE_K), Some(0));
        let (jk, _) = derive_knowledge_ops(&minus).unwrap();
        assert_eq!(jk, minus.table(minus.op_index(MEET_T).unwrap()));
        let (jk, _) = derive_knowledge_ops(&plus).unwrap();
        assert_eq!(jk, plus.table(plus.op_index(JOIN_T).unwrap()));
    }

    #[test]
    fn derived_knowledge_ops_on_four_match_stored() {
        let four = canonical(CanonicalName::Four);
        let minus = canonical(CanonicalName::FourMinus);
        let (jk, mk) = derive_knowledge_ops(&four).unwrap();
        assert_eq!(jk, minus.table(minus.op_index(JOIN_K).unwrap()));
        assert_eq!(mk, minus.table(minus.op_index(MEET_K).unwrap()));
        assert_eq!(four.name(jk[2 * 4 + 3]), "10");
    }

    #[test]
    fn canonical_algebras_are_valid() {
        for name in CanonicalName::ALL {
            let report = validate(&canonical(name), name.variety());
            assert!(report.valid, "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn identity_negation_is_reported() {
        let four = canonical(CanonicalName::Four);
        let mut tables = four.tables();
        tables[2] = vec![0, 1, 2, 3];
        let broken = four.with_tables(Signature::db(), tables).unwrap();
        let report = validate(&broken, VarietyTag::Db);
        assert!(!report.valid);
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == "neg dual endomorphism of t-lattice")
            .unwrap();
        assert_eq!(v.witness.len(), 2);
    }

    #[test]
    fn wrong_signature_is_reported() {
        let four = canonical(CanonicalName::Four);
        assert!(!validate(&four, VarietyTag::DbMinus).valid);
    }

    #[test]
    fn separating_four() {
        let four = canonical(CanonicalName::Four);
        let (name, h) = separating_family(&four, 0, 1).unwrap();
        assert_eq!(name, CanonicalName::Four);
        assert_eq!(h.map(), &[0, 1, 2, 3]);
        assert!(matches!(
            separating_family(&four, 1, 1),
            Err(Error::Precondition(_))
        ));
        let one = FinAlgebra::trivial(&Signature::db());
        assert!(matches!(
            separating_family(&one, 0, 0),
            Err(Error::NoSeparatingHom)
        ));
    }

    #[test]
    fn separating_product_of_prebilattices() {
        let p = canonical(CanonicalName::TwoPlus);
        let m = canonical(CanonicalName::TwoMinus);
        let pm = p.product(&m).unwrap();
        let (x, y) = (pm.element("(0,0)").unwrap(), pm.element("(1,0)").unwrap());
        let (name, h) = separating_family(&pm, x, y).unwrap();
        assert_eq!(name, CanonicalName::TwoPlus);
        assert_ne!(h.apply(x), h.apply(y));
        assert!(h.is_surjective());
    }

    #[test]
    fn separation_is_point_separating_on_four_minus_square() {
        let minus = canonical(CanonicalName::FourMinus);
        let sq = minus.product(&minus).unwrap();
        let n = sq.size();
        let mut homs = vec![];
        for x in 0..n {
            for y in x + 1..n {
                let (_, h) = separating_family(&sq, x, y).unwrap();
                assert_ne!(h.apply(x), h.apply(y));
                homs.push(h);
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                assert!(homs.iter().any(|h| h.apply(x) != h.apply(y)));
            }
        }
    }

    /// All lattice orders on `0..n`, as join/meet tables.
    fn lattice_tables(n: usize) -> Vec<(Vec<Elem>, Vec<Elem>)> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| i != j).map(move |j| (i, j)))
            .collect();
        let mut out = vec![];
        for code in 0u32..(1 << pairs.len()) {
            let le = |i: usize, j: usize| {
                i == j
                    || pairs
                        .iter()
                        .position(|&p| p == (i, j))
                        .is_some_and(|k| code >> k & 1 == 1)
            };
            let partial_order = (0..n).all(|i| {
                (0..n).all(|j| {
                    (i == j || !(le(i, j) && le(j, i)))
                        && (0..n).all(|k| !(le(i, j) && le(j, k)) || le(i, k))
                })
            });
            if !partial_order {
                continue;
            }
            let lub = |i: usize, j: usize| {
                let ub: Vec<usize> = (0..n).filter(|&u| le(i, u) && le(j, u)).collect();
                ub.iter().copied().find(|&u| ub.iter().all(|&w| le(u, w)))
            };
            let glb = |i: usize, j: usize| {
                let lb: Vec<usize> = (0..n).filter(|&u| le(u, i) && le(u, j)).collect();
                lb.iter().copied().find(|&u| lb.iter().all(|&w| le(w, u)))
            };
            let join: Option<Vec<Elem>> = tuples(n, 2).map(|t| lub(t[0], t[1])).collect();
            let meet: Option<Vec<Elem>> = tuples(n, 2).map(|t| glb(t[0], t[1])).collect();
            if let (Some(j), Some(m)) = (join, meet) {
                out.push((j, m));
            }
        }
        out
    }

    /// No valid DB or DB⁻ algebra has 2 or 3 elements; both reducts range over all lattice orders.
    #[test]
    fn no_small_bilattices() {
        for n in 2..=3 {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let lattices = lattice_tables(n);
            for (jt, mt) in &lattices {
                for (jk, mk) in &lattices {
                    for neg in tuples(n, n) {
                        let minus = FinAlgebra::from_tables(
                            Signature::db_minus(),
                            names.clone(),
                            vec![jt.clone(), mt.clone(), jk.clone(), mk.clone(), neg.clone()],
                        )
                        .unwrap();
                        assert!(!validate(&minus, VarietyTag::DbMinus).valid);
                    }
                }
                for neg in tuples(n, n) {
                    for consts in tuples(n, 4) {
                        let mut tables = vec![jt.clone(), mt.clone(), neg.clone()];
                        tables.extend(consts.iter().map(|&c| vec![c]));
                        let bounded =
                            FinAlgebra::from_tables(Signature::db(), names.clone(), tables)
                                .unwrap();
                        assert!(!validate(&bounded, VarietyTag::Db).valid);
                    }
                }
            }
        }
    }
}

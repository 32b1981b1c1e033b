//! The product construction `L ⊙ L` and the representation `A ≅ L ⊙ L`.

use crate::algebra::{find_isomorphism, Congruence, Elem, FinAlgebra, Hom};
use crate::error::{Error, Result};
use crate::signature::*;
use crate::varieties::{validate, VarietyTag};

#[derive(Debug, Clone)]
pub struct Bowtie {
    pub algebra: FinAlgebra,
    pub lattice: FinAlgebra,
}

impl Bowtie {
    pub fn pair(&self, e: Elem) -> (Elem, Elem) {
        let n = self.lattice.size();
        (e / n, e % n)
    }

    pub fn element(&self, a: Elem, b: Elem) -> Elem {
        a * self.lattice.size() + b
    }
}

fn check_lattice(l: &FinAlgebra) -> Result<bool> {
    let v = VarietyTag::of(l)?;
    if !v.is_lattice() {
        return Err(Error::Precondition("expected a D or D- algebra".into()));
    }
    let report = validate(l, v);
    if !report.valid {
        return Err(Error::InvalidAlgebra(format!(
            "not a distributive lattice: {}",
            report.violations[0].axiom
        )));
    }
    Ok(v.is_bounded())
}

/// `L ⊙ L` over an arbitrary signature of bilattice symbols.
pub fn bowtie_in(l: &FinAlgebra, sig: Signature) -> Result<Bowtie> {
    let bounded = check_lattice(l)?;
    let n = l.size();
    let join = l.op_index(JOIN).expect("lattice join");
    let meet = l.op_index(MEET).expect("lattice meet");
    let (bot, top) = (l.constant(ZERO), l.constant(ONE));
    for spec in sig.ops() {
        if spec.arity == 0 && !bounded {
            return Err(Error::Precondition(format!(
                "{} needs a bounded lattice",
                spec.symbol
            )));
        }
        if [JOIN, MEET, ZERO, ONE].contains(&spec.symbol.as_str()) {
            return Err(Error::Precondition(format!(
                "{} is not a bilattice symbol",
                spec.symbol
            )));
        }
    }
    let names = (0..n * n)
        .map(|e| format!("({},{})", l.name(e / n), l.name(e % n)))
        .collect();
    let symbols: Vec<String> = sig.ops().iter().map(|o| o.symbol.clone()).collect();
    let j = |x, y| l.apply(join, &[x, y]);
    let m = |x, y| l.apply(meet, &[x, y]);
    let algebra = FinAlgebra::from_fn(sig, names, |op, args| {
        let p = |i: usize| (args[i] / n, args[i] % n);
        let (a1, a2, b1, b2) = if args.len() == 2 {
            (p(0).0, p(0).1, p(1).0, p(1).1)
        } else if args.len() == 1 {
            (p(0).0, p(0).1, 0, 0)
        } else {
            (0, 0, 0, 0)
        };
        let (x, y) = match symbols[op].as_str() {
            JOIN_T => (j(a1, b1), m(a2, b2)),
            MEET_T => (m(a1, b1), j(a2, b2)),
            JOIN_K => (j(a1, b1), j(a2, b2)),
            MEET_K => (m(a1, b1), m(a2, b2)),
            NEG => (a2, a1),
            ZERO_T => (bot.unwrap(), top.unwrap()),
            ONE_T => (top.unwrap(), bot.unwrap()),
            ZERO_K => (bot.unwrap(), bot.unwrap()),
            ONE_K => (top.unwrap(), top.unwrap()),
            other => unreachable!("unexpected symbol {other}"),
        };
        x * n + y
    })?;
    Ok(Bowtie {
        algebra,
        lattice: l.clone(),
    })
}

/// `L ⊙ L` in DB for bounded `L` and in DB⁻ otherwise.
pub fn bowtie(l: &FinAlgebra) -> Result<Bowtie> {
    let v = if check_lattice(l)? {
        VarietyTag::Db
    } else {
        VarietyTag::DbMinus
    };
    bowtie_in(l, v.signature())
}

/// `W(g)`: `(a, b) ↦ (g a, g b)`.
pub fn bowtie_morphism(g: &Hom, source: &Bowtie, target: &Bowtie) -> Result<Hom> {
    let map = (0..source.algebra.size())
        .map(|e| {
            let (a, b) = source.pair(e);
            target.element(g.apply(a), g.apply(b))
        })
        .collect();
    Hom::new(source.algebra.clone(), target.algebra.clone(), map)
}

fn require(a: &FinAlgebra, v: VarietyTag) -> Result<()> {
    if VarietyTag::of(a)? != v {
        return Err(Error::Precondition(format!("expected a {v} algebra")));
    }
    let report = validate(a, v);
    if !report.valid {
        return Err(Error::InvalidAlgebra(format!(
            "not a {v} algebra: {}",
            report.violations[0].axiom
        )));
    }
    Ok(())
}

fn t_leq(a: &FinAlgebra, x: Elem, y: Elem) -> bool {
    a.eval(MEET_T, &[x, y]) == Some(x)
}

/// The truth interval `[lo, hi]` as a bounded lattice with the original names.
fn interval(a: &FinAlgebra, lo: Elem, hi: Elem) -> Result<(FinAlgebra, Vec<Elem>)> {
    let elems: Vec<Elem> = (0..a.size())
        .filter(|&x| t_leq(a, lo, x) && t_leq(a, x, hi))
        .collect();
    let pos = |x: Elem| elems.binary_search(&x).expect("interval is a sublattice");
    let names = elems.iter().map(|&x| a.name(x).to_string()).collect();
    let (jt, mt) = (
        a.op_index(JOIN_T).expect("join"),
        a.op_index(MEET_T).expect("meet"),
    );
    let l = FinAlgebra::from_fn(Signature::d(), names, |op, args| match op {
        0 => pos(a.apply(jt, &[elems[args[0]], elems[args[1]]])),
        1 => pos(a.apply(mt, &[elems[args[0]], elems[args[1]]])),
        2 => pos(lo),
        _ => pos(hi),
    })?;
    Ok((l, elems))
}

/// `V(A) = [0_k, 1_t]` as a sublattice of the truth lattice.
pub fn truth_interval(a: &FinAlgebra) -> Result<FinAlgebra> {
    require(a, VarietyTag::Db)?;
    let (zk, ot) = (
        a.constant(ZERO_K).expect("0_k"),
        a.constant(ONE_T).expect("1_t"),
    );
    Ok(interval(a, zk, ot)?.0)
}

/// The interval `[0_t, 1_k]`, for cross-checking only.
pub fn truth_interval_alt(a: &FinAlgebra) -> Result<FinAlgebra> {
    require(a, VarietyTag::Db)?;
    let (zt, ok) = (
        a.constant(ZERO_T).expect("0_t"),
        a.constant(ONE_K).expect("1_k"),
    );
    Ok(interval(a, zt, ok)?.0)
}

/// `θ_A = {(a, b) | a ∧_t b = a ∨_k b}`, checked to be a congruence of the truth lattice.
pub fn theta_congruence(a: &FinAlgebra) -> Result<Congruence> {
    require(a, VarietyTag::DbMinus)?;
    let n = a.size();
    let related = |x: Elem, y: Elem| a.eval(MEET_T, &[x, y]) == a.eval(JOIN_K, &[x, y]);
    let mut labels = vec![usize::MAX; n];
    for x in 0..n {
        if labels[x] != usize::MAX {
            continue;
        }
        for y in x..n {
            if related(x, y) {
                labels[y] = x;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if related(x, y) != (labels[x] == labels[y]) {
                return Err(Error::TheoremViolation(format!(
                    "θ is not an equivalence at ({}, {})",
                    a.name(x),
                    a.name(y)
                )));
            }
        }
    }
    let t = a.reduct(Signature::d_minus(), &[(JOIN, JOIN_T), (MEET, MEET_T)])?;
    let theta = Congruence::from_labels(t, &labels);
    if let Some(w) = theta.compatibility_violation() {
        return Err(Error::TheoremViolation(format!(
            "θ is not a congruence of the truth lattice: {w}"
        )));
    }
    Ok(theta)
}

/// `V⁻(A) = A_t / θ_A`.
pub fn theta_quotient(a: &FinAlgebra) -> Result<FinAlgebra> {
    let theta = theta_congruence(a)?;
    theta.parent().quotient(&theta)
}

#[derive(Debug, Clone)]
pub struct ProductRepresentation {
    pub lattice: FinAlgebra,
    pub bowtie: Bowtie,
    pub iso: Hom,
    /// Whether the coordinate map validated as an isomorphism.
    pub explicit: bool,
    /// Whether the generic search found an isomorphism too.
    pub generic: bool,
}

/// `A ≅ L ⊙ L` for `L = V(A)` or `V⁻(A)`.
pub fn verify_product_representation(a: &FinAlgebra) -> Result<ProductRepresentation> {
    let v = VarietyTag::of(a)?;
    let (lattice, coords): (FinAlgebra, Vec<(Elem, Elem)>) = match v {
        VarietyTag::Db => {
            require(a, v)?;
            let (zk, ot) = (
                a.constant(ZERO_K).expect("0_k"),
                a.constant(ONE_T).expect("1_t"),
            );
            let (l, elems) = interval(a, zk, ot)?;
            let rho = |x: Elem| {
                let y = a.eval(JOIN_T, &[x, zk]).expect("join");
                let z = a.eval(MEET_T, &[y, ot]).expect("meet");
                elems.binary_search(&z).expect("ρ lands in the interval")
            };
            let neg = a.op_index(NEG).expect("negation");
            let coords = (0..a.size())
                .map(|x| (rho(x), rho(a.apply(neg, &[x]))))
                .collect();
            (l, coords)
        }
        VarietyTag::DbMinus => {
            let theta = theta_congruence(a)?;
            let l = theta.parent().quotient(&theta)?;
            let neg = a.op_index(NEG).expect("negation");
            let coords = (0..a.size())
                .map(|x| (theta.block_of(x), theta.block_of(a.apply(neg, &[x]))))
                .collect();
            (l, coords)
        }
        _ => {
            return Err(Error::Precondition(
                "product representation expects a DB or DB- algebra".into(),
            ))
        }
    };
    let bt = bowtie(&lattice)?;
    let explicit_map: Vec<Elem> = coords.iter().map(|&(x, y)| bt.element(x, y)).collect();
    let explicit = Hom::new(a.clone(), bt.algebra.clone(), explicit_map)
        .ok()
        .filter(|h| h.is_bijective());
    let generic = find_isomorphism(a, &bt.algebra)?;
    let found = generic.is_some();
    let iso = match (explicit.clone(), generic) {
        (Some(h), _) | (None, Some(h)) => h,
        (None, None) => {
            return Err(Error::TheoremViolation(format!(
                "no isomorphism onto L ⊙ L with |L| = {}",
                lattice.size()
            )))
        }
    };
    Ok(ProductRepresentation {
        lattice,
        bowtie: bt,
        iso,
        explicit: explicit.is_some(),
        generic: found,
    })
}

/// `L^∂`: the order dual, with join and meet (and bounds) swapped.
pub fn order_dual_lattice(l: &FinAlgebra) -> Result<FinAlgebra> {
    let mapping: Vec<(&str, &str)> = if l.signature().has(ZERO) {
        vec![(JOIN, MEET), (MEET, JOIN), (ZERO, ONE), (ONE, ZERO)]
    } else {
        vec![(JOIN, MEET), (MEET, JOIN)]
    };
    l.reduct(l.signature().clone(), &mapping)
}

//! Finite algebras over a declared signature.
//!
//! Elements are positional indices into the universe; names are presentation only.

mod closure;
mod congruence;
mod homs;
mod iso;
mod subuniverse;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::Signature;

pub use closure::{closure, generating_set};
pub use congruence::{
    congruence_lattice, generated_congruence, principal_congruence, ConLattice, Congruence,
};
pub use homs::enumerate_homs;
pub use iso::{element_colors, find_isomorphism};
pub use subuniverse::{enumerate_subuniverses, SubUniverse};

pub type Elem = usize;

/// Pointwise algebras up to this size are converted into explicit tables.
pub const MATERIALIZE_LIMIT: usize = 1024;

#[derive(Clone)]
pub struct FinAlgebra {
    signature: Arc<Signature>,
    names: Arc<Vec<String>>,
    repr: Arc<Repr>,
}

enum Repr {
    Tables(Vec<Vec<Elem>>),
    Pointwise(Pointwise),
}

/// A subalgebra of a product of coordinate algebras, evaluated coordinatewise.
struct Pointwise {
    coords: Vec<FinAlgebra>,
    elements: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
}

fn table_len(n: usize, arity: usize) -> usize {
    n.pow(arity as u32)
}

fn table_index(n: usize, args: &[Elem]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Every argument tuple of the given arity over `0..n`, in lexicographic order.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = table_len(n, arity);
    (0..total).map(move |mut code| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

impl FinAlgebra {
    pub fn from_tables(
        signature: Signature,
        names: Vec<String>,
        tables: Vec<Vec<Elem>>,
    ) -> Result<FinAlgebra> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("empty universe".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate element name {name}"
                )));
            }
        }
        if tables.len() != signature.len() {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} tables, got {}",
                signature.len(),
                tables.len()
            )));
        }
        for (spec, table) in signature.ops().iter().zip(&tables) {
            if table.len() != table_len(n, spec.arity) {
                return Err(Error::InvalidAlgebra(format!(
                    "table for {} has {} entries, expected {}",
                    spec.symbol,
                    table.len(),
                    table_len(n, spec.arity)
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidAlgebra(format!(
                    "table for {} contains out-of-range value {bad}",
                    spec.symbol
                )));
            }
        }
        Ok(FinAlgebra {
            signature: Arc::new(signature),
            names: Arc::new(names),
            repr: Arc::new(Repr::Tables(tables)),
        })
    }

    /// Builds tables by evaluating `f(op, args)` on every tuple.
    pub fn from_fn(
        signature: Signature,
        names: Vec<String>,
        f: impl Fn(usize, &[Elem]) -> Elem,
    ) -> Result<FinAlgebra> {
        let n = names.len();
        let tables = signature
            .ops()
            .iter()
            .enumerate()
            .map(|(op, spec)| tuples(n, spec.arity).map(|t| f(op, &t)).collect())
            .collect();
        FinAlgebra::from_tables(signature, names, tables)
    }

    /// A subalgebra of `∏ coords` given by its element tuples.
    ///
    /// The element list must be closed under the coordinatewise operations.
    pub(crate) fn from_pointwise(
        signature: Signature,
        coords: Vec<FinAlgebra>,
        elements: Vec<Vec<Elem>>,
        names: Vec<String>,
    ) -> Result<FinAlgebra> {
        let index: HashMap<Vec<Elem>, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let pw = Pointwise {
            coords,
            elements,
            index,
        };
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("empty universe".into()));
        }
        let alg = FinAlgebra {
            signature: Arc::new(signature.clone()),
            names: Arc::new(names),
            repr: Arc::new(Repr::Pointwise(pw)),
        };
        if n <= MATERIALIZE_LIMIT {
            let tables = alg.tables();
            return Ok(FinAlgebra {
                signature: alg.signature.clone(),
                names: alg.names.clone(),
                repr: Arc::new(Repr::Tables(tables)),
            });
        }
        Ok(alg)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_materialized(&self) -> bool {
        matches!(*self.repr, Repr::Tables(_))
    }

    pub fn op_index(&self, symbol: &str) -> Option<usize> {
        self.signature.index_of(symbol)
    }

    pub fn apply(&self, op: usize, args: &[Elem]) -> Elem {
        match &*self.repr {
            Repr::Tables(tables) => tables[op][table_index(self.size(), args)],
            Repr::Pointwise(pw) => {
                let coords: Vec<Elem> = pw
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(c, m)| {
                        let local: Vec<Elem> = args.iter().map(|&a| pw.elements[a][c]).collect();
                        m.apply(op, &local)
                    })
                    .collect();
                *pw.index
                    .get(&coords)
                    .expect("pointwise algebra is closed under its operations")
            }
        }
    }

    /// Applies the operation named `symbol`, if the signature has it.
    pub fn eval(&self, symbol: &str, args: &[Elem]) -> Option<Elem> {
        self.op_index(symbol).map(|op| self.apply(op, args))
    }

    pub fn constant(&self, symbol: &str) -> Option<Elem> {
        self.eval(symbol, &[])
    }

    /// Explicit table for one operation.
    pub fn table(&self, op: usize) -> Vec<Elem> {
        match &*self.repr {
            Repr::Tables(tables) => tables[op].clone(),
            Repr::Pointwise(_) => tuples(self.size(), self.signature.arity(op))
                .map(|t| self.apply(op, &t))
                .collect(),
        }
    }

    pub fn tables(&self) -> Vec<Vec<Elem>> {
        (0..self.signature.len()).map(|op| self.table(op)).collect()
    }

    /// The coordinate tuple of an element of a pointwise algebra.
    pub fn coordinates(&self, e: Elem) -> Option<&[Elem]> {
        match &*self.repr {
            Repr::Tables(_) => None,
            Repr::Pointwise(pw) => Some(&pw.elements[e]),
        }
    }

    /// The same algebra under another signature tag.
    pub fn retagged(&self, name: &str) -> FinAlgebra {
        FinAlgebra {
            signature: Arc::new(self.signature.renamed(name)),
            names: self.names.clone(),
            repr: self.repr.clone(),
        }
    }

    pub fn with_names(&self, names: Vec<String>) -> Result<FinAlgebra> {
        FinAlgebra::from_tables((*self.signature).clone(), names, self.tables())
    }

    /// Builds an algebra in `signature` whose operation `target` is this algebra's `source`.
    pub fn reduct(&self, signature: Signature, mapping: &[(&str, &str)]) -> Result<FinAlgebra> {
        let mut tables = Vec::with_capacity(signature.len());
        for spec in signature.ops() {
            let source = mapping
                .iter()
                .find(|(t, _)| *t == spec.symbol)
                .map(|(_, s)| *s)
                .unwrap_or(spec.symbol.as_str());
            let op = self
                .op_index(source)
                .ok_or_else(|| Error::UnknownName(format!("operation {source}")))?;
            if self.signature.arity(op) != spec.arity {
                return Err(Error::InvalidAlgebra(format!(
                    "arity mismatch for {source} in reduct"
                )));
            }
            tables.push(self.table(op));
        }
        FinAlgebra::from_tables(signature, self.names.to_vec(), tables)
    }

    /// The same universe with explicitly supplied tables for a new signature.
    pub fn with_tables(&self, signature: Signature, tables: Vec<Vec<Elem>>) -> Result<FinAlgebra> {
        FinAlgebra::from_tables(signature, self.names.to_vec(), tables)
    }

    pub fn check_compatible(&self, other: &FinAlgebra) -> Result<()> {
        if self.signature.compatible(&other.signature) {
            Ok(())
        } else {
            Err(Error::IncompatibleSignatures(
                self.signature.name().to_string(),
                other.signature.name().to_string(),
            ))
        }
    }

    /// Cartesian product with coordinatewise operations; `(a,b)` has index `a·|B| + b`.
    pub fn product(&self, other: &FinAlgebra) -> Result<FinAlgebra> {
        self.check_compatible(other)?;
        let m = other.size();
        let names = (0..self.size() * m)
            .map(|i| format!("({},{})", self.name(i / m), other.name(i % m)))
            .collect();
        FinAlgebra::from_fn((*self.signature).clone(), names, |op, args| {
            let left: Vec<Elem> = args.iter().map(|&a| a / m).collect();
            let right: Vec<Elem> = args.iter().map(|&a| a % m).collect();
            self.apply(op, &left) * m + other.apply(op, &right)
        })
    }

    /// `A^k` as iterated product; the one-element power for `k = 0`.
    pub fn power(&self, k: usize) -> Result<FinAlgebra> {
        if k == 0 {
            return Ok(FinAlgebra::trivial(&self.signature));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn trivial(signature: &Signature) -> FinAlgebra {
        FinAlgebra::from_fn(signature.clone(), vec!["()".into()], |_, _| 0)
            .expect("one-element algebra is well formed")
    }

    pub fn projection_left(&self, other: &FinAlgebra, product: &FinAlgebra) -> Result<Hom> {
        let m = other.size();
        Hom::new(
            product.clone(),
            self.clone(),
            (0..product.size()).map(|i| i / m).collect(),
        )
    }

    pub fn projection_right(&self, other: &FinAlgebra, product: &FinAlgebra) -> Result<Hom> {
        let m = other.size();
        Hom::new(
            product.clone(),
            other.clone(),
            (0..product.size()).map(|i| i % m).collect(),
        )
    }

    /// Quotient by a congruence; block `j` is represented by its least element.
    pub fn quotient(&self, theta: &Congruence) -> Result<FinAlgebra> {
        if theta.parent().size() != self.size() {
            return Err(Error::Precondition(
                "congruence belongs to another algebra".into(),
            ));
        }
        let blocks = theta.blocks();
        let names = blocks
            .iter()
            .map(|b| format!("[{}]", self.name(b[0])))
            .collect();
        FinAlgebra::from_fn((*self.signature).clone(), names, |op, args| {
            let reps: Vec<Elem> = args.iter().map(|&j| blocks[j][0]).collect();
            theta.block_of(self.apply(op, &reps))
        })
    }

    pub fn quotient_map(&self, theta: &Congruence, quotient: &FinAlgebra) -> Result<Hom> {
        Hom::new(
            self.clone(),
            quotient.clone(),
            (0..self.size()).map(|a| theta.block_of(a)).collect(),
        )
    }

    pub fn identity(&self) -> Hom {
        Hom {
            source: self.clone(),
            target: self.clone(),
            map: (0..self.size()).collect(),
        }
    }
}

impl PartialEq for FinAlgebra {
    fn eq(&self, other: &FinAlgebra) -> bool {
        self.signature.compatible(&other.signature)
            && self.names == other.names
            && (0..self.signature.len()).all(|op| self.table(op) == other.table(op))
    }
}

impl Eq for FinAlgebra {}

impl fmt::Debug for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinAlgebra({}, {} elements)",
            self.signature.name(),
            self.size()
        )
    }
}

/// A verified homomorphism between algebras of a common signature.
#[derive(Clone, Debug)]
pub struct Hom {
    source: FinAlgebra,
    target: FinAlgebra,
    map: Vec<Elem>,
}

/// The first argument tuple on which `map` fails to commute with an operation.
pub fn preservation_violation(
    source: &FinAlgebra,
    target: &FinAlgebra,
    map: &[Elem],
) -> Option<(String, Vec<Elem>)> {
    for (op, spec) in source.signature().ops().iter().enumerate() {
        for args in tuples(source.size(), spec.arity) {
            let image: Vec<Elem> = args.iter().map(|&a| map[a]).collect();
            if map[source.apply(op, &args)] != target.apply(op, &image) {
                return Some((spec.symbol.clone(), args));
            }
        }
    }
    None
}

impl Hom {
    pub fn new(source: FinAlgebra, target: FinAlgebra, map: Vec<Elem>) -> Result<Hom> {
        source.check_compatible(&target)?;
        if map.len() != source.size() {
            return Err(Error::NotHomomorphism(format!(
                "map has {} entries for {} elements",
                map.len(),
                source.size()
            )));
        }
        if map.iter().any(|&b| b >= target.size()) {
            return Err(Error::NotHomomorphism("image out of range".into()));
        }
        if let Some((symbol, args)) = preservation_violation(&source, &target, &map) {
            return Err(Error::NotHomomorphism(format!(
                "{symbol} not preserved at {args:?}"
            )));
        }
        Ok(Hom {
            source,
            target,
            map,
        })
    }

    /// For maps that commute with the operations by construction.
    pub(crate) fn trusted(source: FinAlgebra, target: FinAlgebra, map: Vec<Elem>) -> Hom {
        debug_assert_eq!(map.len(), source.size());
        Hom {
            source,
            target,
            map,
        }
    }

    pub fn source(&self) -> &FinAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FinAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Hom) -> Result<Hom> {
        if self.target.size() != then.source.size() {
            return Err(Error::Precondition("homs are not composable".into()));
        }
        Hom::new(
            self.source.clone(),
            then.target.clone(),
            self.map.iter().map(|&b| then.map[b]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map
            .iter()
            .all(|&b| !std::mem::replace(&mut seen[b], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &b in &self.map {
            seen[b] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }

    /// The kernel as a congruence of the source.
    pub fn kernel(&self) -> Congruence {
        Congruence::from_labels(self.source.clone(), &self.map)
    }
}

impl PartialEq for Hom {
    fn eq(&self, other: &Hom) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

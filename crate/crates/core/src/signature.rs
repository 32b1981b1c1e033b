//! Operation signatures.

use crate::error::{Error, Result};

pub const JOIN_T: &str = "join_t";
pub const MEET_T: &str = "meet_t";
pub const JOIN_K: &str = "join_k";
pub const MEET_K: &str = "meet_k";
pub const NEG: &str = "neg";
pub const ZERO_T: &str = "0_t";
pub const ONE_T: &str = "1_t";
pub const ZERO_K: &str = "0_k";
pub const ONE_K: &str = "1_k";
pub const JOIN: &str = "join";
pub const MEET: &str = "meet";
pub const ZERO: &str = "0";
pub const ONE: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSpec {
    pub symbol: String,
    pub arity: usize,
}

/// A tagged list of operation symbols with arities 0, 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    name: String,
    ops: Vec<OpSpec>,
}

impl Signature {
    pub fn new(name: &str, ops: &[(&str, usize)]) -> Result<Signature> {
        let mut specs: Vec<OpSpec> = Vec::with_capacity(ops.len());
        for &(symbol, arity) in ops {
            if arity > 2 {
                return Err(Error::InvalidAlgebra(format!(
                    "operation {symbol} has arity {arity}"
                )));
            }
            if specs.iter().any(|s| s.symbol == symbol) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate operation symbol {symbol}"
                )));
            }
            specs.push(OpSpec {
                symbol: symbol.to_string(),
                arity,
            });
        }
        Ok(Signature {
            name: name.to_string(),
            ops: specs,
        })
    }

    fn fixed(name: &str, ops: &[(&str, usize)]) -> Signature {
        Signature::new(name, ops).expect("fixed signature is well formed")
    }

    pub fn db() -> Signature {
        Signature::fixed(
            "DB",
            &[
                (JOIN_T, 2),
                (MEET_T, 2),
                (NEG, 1),
                (ZERO_T, 0),
                (ONE_T, 0),
                (ZERO_K, 0),
                (ONE_K, 0),
            ],
        )
    }

    pub fn db_minus() -> Signature {
        Signature::fixed(
            "DB-",
            &[(JOIN_T, 2), (MEET_T, 2), (JOIN_K, 2), (MEET_K, 2), (NEG, 1)],
        )
    }

    pub fn dpb() -> Signature {
        Signature::fixed(
            "DPB",
            &[
                (JOIN_T, 2),
                (MEET_T, 2),
                (ZERO_T, 0),
                (ONE_T, 0),
                (ZERO_K, 0),
                (ONE_K, 0),
            ],
        )
    }

    pub fn dpb_minus() -> Signature {
        Signature::fixed(
            "DPB-",
            &[(JOIN_T, 2), (MEET_T, 2), (JOIN_K, 2), (MEET_K, 2)],
        )
    }

    /// Every bilattice operation: truth and knowledge lattices, negation and all four bounds.
    pub fn full() -> Signature {
        Signature::fixed(
            "full",
            &[
                (JOIN_T, 2),
                (MEET_T, 2),
                (JOIN_K, 2),
                (MEET_K, 2),
                (NEG, 1),
                (ZERO_T, 0),
                (ONE_T, 0),
                (ZERO_K, 0),
                (ONE_K, 0),
            ],
        )
    }

    /// [`Signature::full`] without negation.
    pub fn full_pre() -> Signature {
        Signature::fixed(
            "full-pre",
            &[
                (JOIN_T, 2),
                (MEET_T, 2),
                (JOIN_K, 2),
                (MEET_K, 2),
                (ZERO_T, 0),
                (ONE_T, 0),
                (ZERO_K, 0),
                (ONE_K, 0),
            ],
        )
    }

    pub fn d() -> Signature {
        Signature::fixed("D", &[(JOIN, 2), (MEET, 2), (ZERO, 0), (ONE, 0)])
    }

    pub fn d_minus() -> Signature {
        Signature::fixed("D-", &[(JOIN, 2), (MEET, 2)])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ops(&self) -> &[OpSpec] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.ops.iter().position(|s| s.symbol == symbol)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn has(&self, symbol: &str) -> bool {
        self.index_of(symbol).is_some()
    }

    /// Signatures are compatible when they list the same operations in the same order.
    pub fn compatible(&self, other: &Signature) -> bool {
        self.ops == other.ops
    }

    pub fn renamed(&self, name: &str) -> Signature {
        Signature {
            name: name.to_string(),
            ops: self.ops.clone(),
        }
    }
}

//! JSON algebra documents and their fingerprints.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Elem, FinAlgebra};
use crate::corpus::full_signature;
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::varieties::VarietyTag;

/// A table entry: a universe position or an element name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Table {
    Constant(Entry),
    Unary(Vec<Entry>),
    Binary(Vec<Vec<Entry>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub variety: VarietyTag,
    pub universe: Vec<String>,
    pub operations: BTreeMap<String, Table>,
}

impl AlgebraDocument {
    pub fn from_algebra(a: &FinAlgebra, variety: VarietyTag) -> AlgebraDocument {
        let n = a.size();
        let operations = a
            .signature()
            .ops()
            .iter()
            .enumerate()
            .map(|(op, spec)| {
                let t = a.table(op);
                let table = match spec.arity {
                    0 => Table::Constant(Entry::Name(a.name(t[0]).to_string())),
                    1 => Table::Unary(t.into_iter().map(Entry::Index).collect()),
                    _ => Table::Binary(
                        t.chunks(n)
                            .map(|row| row.iter().copied().map(Entry::Index).collect())
                            .collect(),
                    ),
                };
                (spec.symbol.clone(), table)
            })
            .collect();
        AlgebraDocument {
            variety,
            universe: a.names().to_vec(),
            operations,
        }
    }

    /// The signature whose symbols are exactly the document's operations: the variety's
    /// own, or the variety's with stored knowledge operations and bounds.
    fn signature(&self) -> Result<Signature> {
        let keys: Vec<&str> = self.operations.keys().map(String::as_str).collect();
        for sig in [self.variety.signature(), full_signature(self.variety)] {
            let mut symbols: Vec<&str> = sig.ops().iter().map(|o| o.symbol.as_str()).collect();
            symbols.sort();
            if symbols == keys {
                return Ok(sig);
            }
        }
        Err(Error::Parse(format!(
            "operations {:?} do not match the signature of {}",
            keys, self.variety
        )))
    }

    pub fn to_algebra(&self) -> Result<FinAlgebra> {
        let sig = self.signature()?;
        let n = self.universe.len();
        let lookup = |e: &Entry| -> Result<Elem> {
            match e {
                Entry::Index(i) if *i < n => Ok(*i),
                Entry::Index(i) => Err(Error::Parse(format!("entry {i} is out of range"))),
                Entry::Name(s) => self
                    .universe
                    .iter()
                    .position(|u| u == s)
                    .ok_or_else(|| Error::Parse(format!("unknown element {s}"))),
            }
        };
        let tables = sig
            .ops()
            .iter()
            .map(|spec| {
                let table = &self.operations[&spec.symbol];
                let entries: Vec<&Entry> = match (spec.arity, table) {
                    (0, Table::Constant(e)) => vec![e],
                    (1, Table::Unary(row)) if row.len() == n => row.iter().collect(),
                    (2, Table::Binary(rows))
                        if rows.len() == n && rows.iter().all(|r| r.len() == n) =>
                    {
                        rows.iter().flatten().collect()
                    }
                    _ => {
                        return Err(Error::Parse(format!(
                            "table for {} has the wrong shape for arity {}",
                            spec.symbol, spec.arity
                        )))
                    }
                };
                entries
                    .into_iter()
                    .map(lookup)
                    .collect::<Result<Vec<Elem>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FinAlgebra::from_tables(sig, self.universe.clone(), tables)
            .map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<AlgebraDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// SHA-256 of the compact canonical serialization.
    pub fn fingerprint(&self) -> String {
        fingerprint_text(&serde_json::to_string(self).expect("documents serialize"))
    }
}

/// SHA-256 of arbitrary text, for inputs that are not algebras.
pub fn fingerprint_text(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn fingerprint(a: &FinAlgebra, variety: VarietyTag) -> String {
    AlgebraDocument::from_algebra(a, variety).fingerprint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus, DEFAULT_SEED};
    use crate::varieties::{canonical, CanonicalName};

    #[test]
    fn round_trip_corpus() {
        for e in corpus(DEFAULT_SEED).unwrap() {
            for a in [e.full.clone(), e.algebra()] {
                let doc = AlgebraDocument::from_algebra(&a, e.variety);
                let back = AlgebraDocument::parse(&doc.to_json()).unwrap();
                assert_eq!(back.to_algebra().unwrap(), a, "{}", e.name);
                assert_eq!(back.fingerprint(), doc.fingerprint());
            }
        }
    }

    #[test]
    fn names_and_indices_both_parse() {
        let text = r#"{"variety":"D","universe":["a","b"],
            "operations":{"join":[[0,"b"],["b","b"]],"meet":[["a","a"],["a",1]],"0":"a","1":1}}"#;
        let a = AlgebraDocument::parse(text).unwrap().to_algebra().unwrap();
        assert_eq!(
            a,
            canonical(CanonicalName::Two)
                .with_names(vec!["a".into(), "b".into()])
                .unwrap()
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"variety":"D","universe":["a"],"operations":{},"extra":1}"#;
        assert!(matches!(AlgebraDocument::parse(text), Err(Error::Parse(_))));
        let text = r#"{"variety":"D","universe":["a"],"operations":{"join":[[0]]}}"#;
        let doc = AlgebraDocument::parse(text).unwrap();
        assert!(matches!(doc.to_algebra(), Err(Error::Parse(_))));
    }

    #[test]
    fn fingerprint_is_stable() {
        let a = canonical(CanonicalName::Four);
        assert_eq!(
            fingerprint(&a, VarietyTag::Db),
            fingerprint(&a.clone(), VarietyTag::Db)
        );
        assert_ne!(
            fingerprint(&a, VarietyTag::Db),
            fingerprint(&canonical(CanonicalName::TwoPlus), VarietyTag::Dpb)
        );
    }
}

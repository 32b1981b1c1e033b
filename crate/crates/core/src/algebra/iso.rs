//! Isomorphism search with invariant pruning.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::homs::Extender;
use super::{Elem, FinAlgebra, Hom};
use crate::error::Result;

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Isomorphism-invariant element colours from operation degrees, refined twice.
pub fn element_colors(a: &FinAlgebra) -> Vec<u64> {
    let n = a.size();
    let ops = a.signature().ops();
    let mut colors: Vec<u64> = (0..n)
        .map(|e| {
            let mut feats: Vec<usize> = Vec::new();
            for (op, spec) in ops.iter().enumerate() {
                match spec.arity {
                    0 => feats.push(usize::from(a.apply(op, &[]) == e)),
                    1 => {
                        let f = a.apply(op, &[e]);
                        feats.push(usize::from(f == e));
                        feats.push(usize::from(a.apply(op, &[f]) == e));
                        feats.push((0..n).filter(|&x| a.apply(op, &[x]) == e).count());
                    }
                    _ => {
                        feats.push(usize::from(a.apply(op, &[e, e]) == e));
                        feats.push((0..n).filter(|&x| a.apply(op, &[e, x]) == e).count());
                        feats.push((0..n).filter(|&x| a.apply(op, &[x, e]) == e).count());
                        feats.push((0..n).filter(|&x| a.apply(op, &[e, x]) == x).count());
                    }
                }
            }
            hash_of(&feats)
        })
        .collect();
    for _ in 0..2 {
        colors = (0..n)
            .map(|e| {
                let mut sig: Vec<u64> = vec![colors[e]];
                for (op, spec) in ops.iter().enumerate() {
                    match spec.arity {
                        1 => sig.push(colors[a.apply(op, &[e])]),
                        2 => {
                            let mut row: Vec<(u64, u64)> = (0..n)
                                .map(|x| (colors[x], colors[a.apply(op, &[e, x])]))
                                .collect();
                            row.sort_unstable();
                            sig.push(hash_of(&row));
                        }
                        _ => {}
                    }
                }
                hash_of(&sig)
            })
            .collect();
    }
    colors
}

/// A bijective hom `A → B`, the first in lexicographic search order, if any.
pub fn find_isomorphism(a: &FinAlgebra, b: &FinAlgebra) -> Result<Option<Hom>> {
    a.check_compatible(b)?;
    if a.size() != b.size() {
        return Ok(None);
    }
    let (ca, cb) = (element_colors(a), element_colors(b));
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let mut found: Option<Vec<Elem>> = None;
    Extender::new(a, b, true, Some((ca, cb))).run(&mut |h| {
        found = Some(h.to_vec());
        true
    });
    Ok(found.map(|m| Hom::trusted(a.clone(), b.clone(), m)))
}

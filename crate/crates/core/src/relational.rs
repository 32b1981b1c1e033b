//! Isomorphism search for finite sorted relational structures.

/// Points carry a sort; each relation is a full matrix over all points;
/// `constants[i]` must be sent to `constants[i]` of the other structure.
#[derive(Debug, Clone)]
pub struct RelStructure {
    pub sorts: Vec<usize>,
    pub relations: Vec<Vec<Vec<bool>>>,
    pub constants: Vec<usize>,
}

impl RelStructure {
    fn invariant(&self, p: usize) -> Vec<usize> {
        let n = self.sorts.len();
        let mut inv = vec![self.sorts[p]];
        for r in &self.relations {
            inv.push((0..n).filter(|&q| r[p][q]).count());
            inv.push((0..n).filter(|&q| r[q][p]).count());
            inv.push(usize::from(r[p][p]));
        }
        for &c in &self.constants {
            inv.push(usize::from(c == p));
        }
        inv
    }
}

/// A bijection `f` with `r(p,q) ⟺ r'(f p, f q)` for every relation, respecting sorts and
/// constants; the first in lexicographic order.
pub fn find_structure_iso(a: &RelStructure, b: &RelStructure) -> Option<Vec<usize>> {
    let n = a.sorts.len();
    if n != b.sorts.len()
        || a.relations.len() != b.relations.len()
        || a.constants.len() != b.constants.len()
    {
        return None;
    }
    let ia: Vec<Vec<usize>> = (0..n).map(|p| a.invariant(p)).collect();
    let ib: Vec<Vec<usize>> = (0..n).map(|p| b.invariant(p)).collect();
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        p: usize,
        a: &RelStructure,
        b: &RelStructure,
        ia: &[Vec<usize>],
        ib: &[Vec<usize>],
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = f.len();
        if p == n {
            return a
                .constants
                .iter()
                .zip(&b.constants)
                .all(|(&x, &y)| f[x] == y);
        }
        for q in 0..n {
            if used[q] || ia[p] != ib[q] {
                continue;
            }
            let fits = a.relations.iter().zip(&b.relations).all(|(ra, rb)| {
                (0..p).all(|s| ra[p][s] == rb[q][f[s]] && ra[s][p] == rb[f[s]][q])
                    && ra[p][p] == rb[q][q]
            });
            if fits {
                f[p] = q;
                used[q] = true;
                if go(p + 1, a, b, ia, ib, f, used) {
                    return true;
                }
                used[q] = false;
            }
        }
        false
    }
    if go(0, a, b, &ia, &ib, &mut f, &mut used) {
        Some(f)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> RelStructure {
        RelStructure {
            sorts: vec![0; n],
            relations: vec![(0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect()],
            constants: vec![],
        }
    }

    #[test]
    fn chain_is_rigid() {
        assert_eq!(
            find_structure_iso(&chain(3), &chain(3)),
            Some(vec![0, 1, 2])
        );
    }

    #[test]
    fn reversed_chain_is_found() {
        let mut rev = chain(3);
        rev.relations[0] = (0..3).map(|i| (0..3).map(|j| i >= j).collect()).collect();
        assert_eq!(find_structure_iso(&chain(3), &rev), Some(vec![2, 1, 0]));
    }

    #[test]
    fn constants_must_match() {
        let mut a = chain(2);
        a.relations[0] = vec![vec![true, false], vec![false, true]];
        let mut b = a.clone();
        a.constants = vec![0];
        b.constants = vec![1];
        assert_eq!(find_structure_iso(&a, &b), Some(vec![1, 0]));
    }
}

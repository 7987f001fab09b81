//! Exact Gaussian elimination over sparse rational vectors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, factor: &Q, row: &SparseVec<K>) {
    for (k, v) in row {
        let e = target.entry(k.clone()).or_insert_with(Q::zero);
        *e += factor * v;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Reduced row echelon form: pivot column to row, each row scaled to a
/// leading 1 and cleared from every other row.
pub fn rref<K: Ord + Clone>(rows: &[SparseVec<K>]) -> BTreeMap<K, SparseVec<K>> {
    let mut pivots: BTreeMap<K, SparseVec<K>> = BTreeMap::new();
    for r in rows {
        let mut r: SparseVec<K> = r.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k.clone(), v.clone())).collect();
        for (p, prow) in &pivots {
            if let Some(c) = r.get(p).cloned() {
                axpy(&mut r, &-c, prow);
            }
        }
        let Some((lead, c)) = r.iter().next().map(|(k, v)| (k.clone(), v.clone())) else { continue };
        let inv = c.recip();
        for v in r.values_mut() {
            *v *= &inv;
        }
        for prow in pivots.values_mut() {
            if let Some(c) = prow.get(&lead).cloned() {
                axpy(prow, &-c, &r);
            }
        }
        pivots.insert(lead, r);
    }
    pivots
}

pub fn rank<K: Ord + Clone>(rows: &[SparseVec<K>]) -> usize {
    rref(rows).len()
}

/// Basis of `{v : row . v = 0 for every row}` inside the span of `columns`.
pub fn nullspace<K: Ord + Clone>(rows: &[SparseVec<K>], columns: &[K]) -> Vec<SparseVec<K>> {
    let pivots = rref(rows);
    let mut out = Vec::new();
    for f in columns.iter().filter(|c| !pivots.contains_key(*c)) {
        let mut v = SparseVec::new();
        v.insert(f.clone(), Q::from_integer(1.into()));
        for (p, prow) in &pivots {
            if let Some(c) = prow.get(f) {
                v.insert(p.clone(), -c.clone());
            }
        }
        out.push(v);
    }
    out
}

pub fn dot<K: Ord>(a: &SparseVec<K>, b: &SparseVec<K>) -> Q {
    let mut s = Q::zero();
    for (k, v) in a {
        if let Some(w) = b.get(k) {
            s += v * w;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(entries: &[(u8, i64)]) -> SparseVec<u8> {
        entries.iter().map(|&(k, c)| (k, q(c))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(1, 1), (2, 1)])];
        assert_eq!(rank(&rows), 2);
        let ker = nullspace(&rows, &[0, 1, 2]);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            assert!(dot(r, &ker[0]).is_zero());
        }
    }
}

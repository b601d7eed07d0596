//! Exact sparse linear algebra over ℚ.
//!
//! Vectors are sorted `(index, value)` lists with no stored zeros. The
//! [`Echelon`] keeps one row per pivot column with a unit leading entry and
//! reduces incoming vectors in increasing column order, which is enough for
//! rank, span membership and coordinates against tagged inputs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec(Vec<(usize, Q)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, Q)>>(entries: I) -> Self {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, v) in entries {
            *map.entry(i).or_insert_with(Q::zero) += v;
        }
        SparseVec(map.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Q::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.0
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.0.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, idx: usize) -> Q {
        match self.0.binary_search_by_key(&idx, |(i, _)| *i) {
            Ok(p) => self.0[p].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn scale(&mut self, factor: &Q) {
        if factor.is_zero() {
            self.0.clear();
            return;
        }
        for (_, v) in &mut self.0 {
            *v *= factor;
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &Q) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut a = std::mem::take(&mut self.0).into_iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) if ia < ib => out.push(a.next().unwrap()),
                (Some((ia, _)), Some((ib, _))) if ia > ib => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, v * factor));
                }
                (Some(_), Some(_)) => {
                    let (i, mut v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    v += w * factor;
                    if !v.is_zero() {
                        out.push((i, v));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, v * factor));
                }
                (None, None) => break,
            }
        }
        self.0 = out;
    }

    pub fn dot_dense(&self, dense: &[Q]) -> Q {
        self.0.iter().fold(Q::zero(), |acc, (i, v)| acc + v * &dense[*i])
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    /// Combination of tagged inputs that this row equals, modulo untagged inputs.
    combo: SparseVec,
}

/// Row echelon form built incrementally.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: SparseVec,
    /// `v = residual + Σ combo[t]·tagged[t] + (span of untagged inputs)`.
    pub combo: SparseVec,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut residual = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let hit = residual
                .0
                .iter()
                .filter(|(c, _)| *c >= cursor)
                .find_map(|(c, val)| self.rows.get(c).map(|row| (*c, val.clone(), row)));
            let Some((col, factor, row)) = hit else { break };
            residual.add_scaled(&row.vec, &-factor.clone());
            combo.add_scaled(&row.combo, &factor);
            cursor = col + 1;
        }
        Reduction { residual, combo }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).residual.is_zero()
    }

    /// Inserts `v`, returning `true` if it was independent of the rows so far.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_impl(v, None)
    }

    /// Like [`insert`](Self::insert) but records `v` as tagged input `tag`
    /// for later coordinate extraction.
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: usize) -> bool {
        self.insert_impl(v, Some(tag))
    }

    fn insert_impl(&mut self, v: &SparseVec, tag: Option<usize>) -> bool {
        let Reduction { mut residual, combo } = self.reduce(v);
        let Some((lead, lead_val)) = residual.leading() else {
            return false;
        };
        let inv = lead_val.recip();
        // residual = v - Σ combo·tagged, so as a combination: e_tag - combo.
        let mut row_combo = match tag {
            Some(t) => SparseVec::unit(t),
            None => SparseVec::new(),
        };
        row_combo.add_scaled(&combo, &-Q::one());
        residual.scale(&inv);
        row_combo.scale(&inv);
        self.rows.insert(lead, Row { vec: residual, combo: row_combo });
        true
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Basis of `{x : r·x = 0 for every inserted row r}` in `ncols` coordinates.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        // Back-substitute into reduced row echelon form.
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rref: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut v = self.rows[&p].vec.clone();
            let hits: Vec<usize> = v.0.iter().map(|(c, _)| *c).filter(|c| *c != p && rref.contains_key(c)).collect();
            for c in hits {
                let coef = v.get(c);
                v.add_scaled(&rref[&c], &-coef);
            }
            rref.insert(p, v);
        }
        let is_pivot = |c: usize| rref.contains_key(&c);
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !is_pivot(*c)) {
            let mut entries = vec![(free, Q::one())];
            for (&p, row) in &rref {
                let coef = row.get(free);
                if !coef.is_zero() {
                    entries.push((p, -coef));
                }
            }
            basis.push(SparseVec::from_entries(entries));
        }
        basis
    }
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank<'a, I: IntoIterator<Item = &'a SparseVec>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rows of the transpose of a matrix with `ncols` columns.
pub fn transpose(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in &row.0 {
            cols[*c].push((r, v.clone()));
        }
    }
    cols.into_iter().map(SparseVec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|(i, v)| (*i, q(*v))))
    }

    /// Dense fraction-based reference rank.
    #[allow(clippy::needless_range_loop)]
    fn dense_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in 0..cols {
                        let t = &a[r][j] * &f;
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn add_scaled_merges() {
        let mut a = sv(&[(0, 1), (2, 3)]);
        a.add_scaled(&sv(&[(1, 1), (2, 1)]), &q(-3));
        assert_eq!(a, sv(&[(0, 1), (1, -3)]));
    }

    #[test]
    fn rank_matches_dense_reference() {
        let m = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0], vec![1, 3, 4, 4]];
        let rows: Vec<SparseVec> =
            m.iter().map(|r| SparseVec::from_entries(r.iter().enumerate().map(|(i, x)| (i, q(*x))))).collect();
        assert_eq!(rank(&rows), dense_rank(&m));
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let rows = vec![sv(&[(0, 1), (1, 1), (3, 2)]), sv(&[(1, 1), (2, -1)])];
        let mut e = Echelon::new();
        for r in &rows {
            e.insert(r);
        }
        let ker = e.kernel(4);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            for r in &rows {
                let mut dense = vec![Q::zero(); 4];
                for (i, v) in k.entries() {
                    dense[*i] = v.clone();
                }
                assert!(r.dot_dense(&dense).is_zero());
            }
        }
    }

    #[test]
    fn tagged_coordinates() {
        // Untagged span {e0}; tagged z0 = e0 + e1, z1 = e2.
        let mut e = Echelon::new();
        e.insert(&sv(&[(0, 1)]));
        assert!(e.insert_tagged(&sv(&[(0, 1), (1, 1)]), 0));
        assert!(e.insert_tagged(&sv(&[(2, 1)]), 1));
        // v = 5 e0 + 2 e1 - 3 e2 = 2 z0 - 3 z1 + 3 e0
        let red = e.reduce(&sv(&[(0, 5), (1, 2), (2, -3)]));
        assert!(red.residual.is_zero());
        assert_eq!(red.combo, sv(&[(0, 2), (1, -3)]));
        assert!(!e.insert_tagged(&sv(&[(1, 7)]), 2));
    }
}

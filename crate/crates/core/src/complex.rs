//! Finite abstract simplicial complexes stored by facets.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{MacError, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simplicial complex on vertices `1..=n`, stored by its facets.
///
/// The face family is the downward closure of `facets`. The empty set is
/// always a face; the complex `{∅}` is stored with the single facet `∅`.
/// Facets are kept in canonical order (cardinality, then bitmask), so two
/// complexes are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Reduces `facets` to its maximal elements and orders them canonically.
    pub fn from_facets<I: IntoIterator<Item = VertexSet>>(n: usize, facets: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(MacError::Input(format!("n = {n} exceeds {MAX_VERTICES}")));
        }
        let ambient = VertexSet::full(n);
        let mut facets: Vec<VertexSet> = facets.into_iter().collect();
        if let Some(bad) = facets.iter().find(|f| !f.is_subset(ambient)) {
            return Err(MacError::facet_out_of_range(*bad, n));
        }
        Ok(Self::from_facets_unchecked(n, facets.drain(..)))
    }

    pub(crate) fn from_facets_unchecked<I: IntoIterator<Item = VertexSet>>(n: usize, facets: I) -> Self {
        let mut facets: Vec<VertexSet> = facets.into_iter().collect();
        // Larger sets first so containment only needs to look backwards.
        facets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        facets.dedup();
        let mut kept: Vec<VertexSet> = Vec::with_capacity(facets.len());
        for f in facets {
            if !kept.iter().any(|k| f.is_subset(*k)) {
                kept.push(f);
            }
        }
        if kept.is_empty() {
            kept.push(VertexSet::EMPTY);
        }
        kept.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        SimplicialComplex { n, facets: kept }
    }

    /// The complex `{∅}` on `n` vertices.
    pub fn empty_face_only(n: usize) -> Self {
        Self::from_facets_unchecked(n, [VertexSet::EMPTY])
    }

    /// `Δ^q`: one facet on `q + 1` vertices.
    pub fn simplex(q: usize) -> Self {
        Self::from_facets_unchecked(q + 1, [VertexSet::full(q + 1)])
    }

    /// `∂Δ^q`: all `q`-subsets of `q + 1` vertices. For `q = 0` this is the
    /// complex `{∅}` on one vertex.
    pub fn boundary_simplex(q: usize) -> Self {
        let full = VertexSet::full(q + 1);
        if q == 0 {
            return Self::empty_face_only(1);
        }
        Self::from_facets_unchecked(q + 1, full.iter().map(|v| full - VertexSet::singleton(v)))
    }

    /// The `m`-cycle: edges `{i, i+1}` and `{m, 1}`. Requires `m ≥ 3`.
    pub fn cycle(m: usize) -> Result<Self> {
        if !(3..=MAX_VERTICES).contains(&m) {
            return Err(MacError::Input(format!("cycle length {m} must be in 3..={MAX_VERTICES}")));
        }
        let edges = (1..=m as u32).map(|i| {
            let j = if i as usize == m { 1 } else { i + 1 };
            VertexSet::singleton(i) | VertexSet::singleton(j)
        });
        Ok(Self::from_facets_unchecked(m, edges))
    }

    /// Boundary of the `k`-dimensional cross-polytope: the join of `k` copies of `∂Δ¹`.
    pub fn cross_polytope(k: usize) -> Result<Self> {
        if k == 0 || 2 * k > MAX_VERTICES {
            return Err(MacError::Input(format!("cross-polytope rank {k} out of range")));
        }
        let mut acc = Self::boundary_simplex(1);
        for _ in 1..k {
            acc = acc.join(&Self::boundary_simplex(1))?;
        }
        Ok(acc)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension of the largest facet; `-1` for `{∅}`.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32).max().unwrap_or(0) - 1
    }

    pub fn ambient(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_face(&self, sigma: VertexSet) -> bool {
        self.facets.iter().any(|f| sigma.is_subset(*f))
    }

    /// Vertices `v` with `{v}` not a face.
    pub fn ghost_vertices(&self) -> VertexSet {
        let covered = self.facets.iter().fold(VertexSet::EMPTY, |acc, f| acc | *f);
        self.ambient() - covered
    }

    pub fn has_all_singletons(&self) -> bool {
        self.ghost_vertices().is_empty()
    }

    /// All faces contained in `within`, including `∅`, sorted by
    /// (cardinality, bitmask). Labels stay ambient.
    pub fn faces_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for f in &self.facets {
            let g = *f & within;
            if seen.contains(&g) {
                continue;
            }
            for s in g.subsets() {
                seen.insert(s);
            }
        }
        let mut faces: Vec<VertexSet> = seen.into_iter().collect();
        faces.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        faces
    }

    pub fn faces(&self) -> Vec<VertexSet> {
        self.faces_within(self.ambient())
    }

    /// Join with `other`, whose vertices are relabeled by `+ self.n`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(MacError::Input(format!("join has {n} vertices, more than {MAX_VERTICES}")));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(*a | b.shift(self.n));
            }
        }
        Ok(Self::from_facets_unchecked(n, facets))
    }

    /// Full subcomplex `K_I = {σ ∩ I}`, relabeled order-preservingly onto
    /// `1..=|I|`. Use [`VertexSet::expand`] with `I` to recover labels.
    pub fn full_subcomplex(&self, within: VertexSet) -> SimplicialComplex {
        let within = within & self.ambient();
        let facets = self.facets.iter().map(|f| (*f & within).compress(within));
        Self::from_facets_unchecked(within.len(), facets)
    }

    /// Facets as sorted 1-indexed vertex lists.
    pub fn facet_lists(&self) -> Vec<Vec<u32>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K(n={}, facets={:?})", self.n, self.facets)
    }
}

/// JSON shape `{"n": int, "facets": [[int, ...], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRepr {
    pub n: usize,
    pub facets: Vec<Vec<u32>>,
}

impl TryFrom<ComplexRepr> for SimplicialComplex {
    type Error = MacError;
    fn try_from(repr: ComplexRepr) -> Result<Self> {
        if repr.n > MAX_VERTICES {
            return Err(MacError::Input(format!("n = {} exceeds {MAX_VERTICES}", repr.n)));
        }
        let mut facets = Vec::with_capacity(repr.facets.len());
        for (i, f) in repr.facets.iter().enumerate() {
            let set = VertexSet::from_vertices(f.iter().copied(), repr.n)
                .map_err(|e| MacError::Input(format!("facet #{i} {f:?}: {e}")))?;
            facets.push(set);
        }
        SimplicialComplex::from_facets(repr.n, facets)
    }
}

impl From<SimplicialComplex> for ComplexRepr {
    fn from(k: SimplicialComplex) -> Self {
        let facets = if k.facets == [VertexSet::EMPTY] { Vec::new() } else { k.facet_lists() };
        ComplexRepr { n: k.n, facets }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[u32]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn c4() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, [vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])]).unwrap()
    }

    #[test]
    fn from_facets_reduces() {
        let k = SimplicialComplex::from_facets(3, [vs(&[1, 2]), vs(&[2, 3]), vs(&[1, 2])]).unwrap();
        assert_eq!(k.facets(), &[vs(&[1, 2]), vs(&[2, 3])]);
        let k = SimplicialComplex::from_facets(2, [vs(&[1]), vs(&[1, 2])]).unwrap();
        assert_eq!(k.facets(), &[vs(&[1, 2])]);
    }

    #[test]
    fn from_facets_rejects_out_of_range() {
        let err = SimplicialComplex::from_facets(3, [vs(&[1, 4])]).unwrap_err();
        assert!(matches!(err, MacError::Input(_)));
    }

    #[test]
    fn c4_from_cycle_matches_direct() {
        let k = c4();
        assert_eq!(k, SimplicialComplex::cycle(4).unwrap());
        assert_eq!(k.faces().len(), 1 + 4 + 4);
    }

    #[test]
    fn is_face_examples() {
        let k = c4();
        assert!(!k.is_face(vs(&[1, 3])));
        assert!(k.is_face(VertexSet::EMPTY));
        assert!(SimplicialComplex::simplex(2).is_face(vs(&[1, 3])));
        assert!(SimplicialComplex::empty_face_only(3).is_face(VertexSet::EMPTY));
    }

    #[test]
    fn join_examples() {
        let b = SimplicialComplex::boundary_simplex(1);
        let j = b.join(&b).unwrap();
        assert_ne!(j, c4()); // isomorphic, different labelling
        assert_eq!(j.facets(), &[vs(&[1, 3]), vs(&[2, 3]), vs(&[1, 4]), vs(&[2, 4])]);

        let k = c4();
        assert_eq!(k.join(&SimplicialComplex::empty_face_only(0)).unwrap(), k);
        let p = SimplicialComplex::simplex(0);
        assert_eq!(p.join(&p).unwrap(), SimplicialComplex::simplex(1));
    }

    #[test]
    fn full_subcomplex_examples() {
        let k = c4();
        let sub = k.full_subcomplex(vs(&[1, 3]));
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.facets(), &[vs(&[1]), vs(&[2])]);
        assert_eq!(k.full_subcomplex(VertexSet::EMPTY), SimplicialComplex::empty_face_only(0));
        assert_eq!(k.full_subcomplex(k.ambient()), k);
    }

    #[test]
    fn standard_families() {
        assert_eq!(SimplicialComplex::simplex(2).facets(), &[vs(&[1, 2, 3])]);
        assert_eq!(SimplicialComplex::boundary_simplex(1).facets(), &[vs(&[1]), vs(&[2])]);
        assert_eq!(SimplicialComplex::boundary_simplex(2).facets(), &[vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 3])]);
        let b0 = SimplicialComplex::boundary_simplex(0);
        assert_eq!(b0.vertex_count(), 1);
        assert_eq!(b0.faces(), vec![VertexSet::EMPTY]);
        assert_eq!(b0.dim(), -1);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let k = c4();
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"n":4,"facets":[[1,2],[2,3],[1,4],[3,4]]}"#);
        let back: SimplicialComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
        let bad = serde_json::from_str::<SimplicialComplex>(r#"{"n":2,"facets":[[1,3]]}"#);
        assert!(bad.unwrap_err().to_string().contains("facet #0"));
        let empty: SimplicialComplex = serde_json::from_str(r#"{"n":1,"facets":[]}"#).unwrap();
        assert_eq!(empty, SimplicialComplex::boundary_simplex(0));
    }
}

//! Minimal non-faces, reconstruction from them, and the intersection-graph
//! join decomposition.
//!
//! A set is a non-face iff it meets the complement of every facet, so the
//! minimal non-faces of `K` are the minimal transversals of the facet
//! complements. Dually, the facets of `K(M, [n])` are the complements of
//! the minimal transversals of `M`. Both directions go through
//! [`minimal_transversals`].

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{MacError, Result};
use crate::vertex_set::{k_subsets, VertexSet, MAX_VERTICES};

/// A family of minimal non-faces `M` on the ambient vertex set `1..=n`.
///
/// Members have at least two elements, form an antichain, and are kept
/// sorted by bitmask.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct NonfaceFamily {
    n: usize,
    members: Vec<VertexSet>,
}

impl NonfaceFamily {
    pub fn new<I: IntoIterator<Item = VertexSet>>(n: usize, members: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(MacError::Input(format!("n = {n} exceeds {MAX_VERTICES}")));
        }
        let ambient = VertexSet::full(n);
        let mut members: Vec<VertexSet> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for m in &members {
            if !m.is_subset(ambient) {
                return Err(MacError::Input(format!("non-face {m} has a vertex outside 1..={n}")));
            }
            if m.len() < 2 {
                return Err(MacError::Input(format!("non-face {m} has fewer than 2 vertices")));
            }
        }
        for (i, a) in members.iter().enumerate() {
            if let Some(b) = members[i + 1..].iter().chain(&members[..i]).find(|b| a.is_proper_subset(**b)) {
                return Err(MacError::Input(format!("non-face {a} is contained in {b}")));
            }
        }
        Ok(NonfaceFamily { n, members })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<VertexSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        NonfaceFamily { n, members }
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `ν`: the union of all members.
    pub fn support(&self) -> VertexSet {
        self.members.iter().fold(VertexSet::EMPTY, |acc, m| acc | *m)
    }

    /// `M_I`: members contained in `within`. Labels stay ambient.
    pub fn restrict(&self, within: VertexSet) -> NonfaceFamily {
        let members = self.members.iter().copied().filter(|m| m.is_subset(within)).collect();
        NonfaceFamily::from_sorted_unchecked(self.n, members)
    }

    /// Relabels onto `1..=|within|`; members must lie inside `within`.
    pub fn compress(&self, within: VertexSet) -> NonfaceFamily {
        debug_assert!(self.members.iter().all(|m| m.is_subset(within)));
        let mut members: Vec<VertexSet> = self.members.iter().map(|m| m.compress(within)).collect();
        members.sort_unstable();
        NonfaceFamily::from_sorted_unchecked(within.len(), members)
    }

    /// Whether no two members intersect.
    pub fn is_pairwise_disjoint(&self) -> bool {
        let mut seen = VertexSet::EMPTY;
        for m in &self.members {
            if seen.intersects(*m) {
                return false;
            }
            seen = seen | *m;
        }
        true
    }

    pub fn member_lists(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|m| m.to_vec()).collect()
    }
}

impl std::fmt::Debug for NonfaceFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M(n={}, {:?})", self.n, self.members)
    }
}

/// JSON shape `{"n": int, "members": [[int, ...], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRepr {
    pub n: usize,
    pub members: Vec<Vec<u32>>,
}

impl TryFrom<FamilyRepr> for NonfaceFamily {
    type Error = MacError;
    fn try_from(repr: FamilyRepr) -> Result<Self> {
        let members = repr
            .members
            .iter()
            .map(|m| VertexSet::from_vertices(m.iter().copied(), repr.n))
            .collect::<Result<Vec<_>>>()?;
        NonfaceFamily::new(repr.n, members)
    }
}

impl From<NonfaceFamily> for FamilyRepr {
    fn from(m: NonfaceFamily) -> Self {
        FamilyRepr { n: m.n, members: m.member_lists() }
    }
}

/// Minimal transversals (hitting sets) of `edges`, sorted by bitmask.
///
/// Berge's incremental dualization. Returns `[∅]` for no edges and `[]`
/// when some edge is empty.
pub fn minimal_transversals(edges: &[VertexSet]) -> Vec<VertexSet> {
    let mut edges = edges.to_vec();
    edges.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    edges.dedup();
    if edges.first().is_some_and(|e| e.is_empty()) {
        return Vec::new();
    }
    let mut current = vec![VertexSet::EMPTY];
    for e in edges {
        let (hit, miss): (Vec<_>, Vec<_>) = current.into_iter().partition(|t| t.intersects(e));
        if miss.is_empty() {
            current = hit;
            continue;
        }
        let mut candidates: Vec<VertexSet> = Vec::new();
        for t in &miss {
            for v in e.iter() {
                let c = *t | VertexSet::singleton(v);
                // Hit sets stay minimal; a grown set is redundant if it contains one.
                if !hit.iter().any(|h| h.is_subset(c)) {
                    candidates.push(c);
                }
            }
        }
        candidates.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        candidates.dedup();
        let mut kept: Vec<VertexSet> = Vec::with_capacity(candidates.len());
        for c in candidates {
            if !kept.iter().any(|k| k.is_proper_subset(c)) {
                kept.push(c);
            }
        }
        current = hit;
        current.extend(kept);
    }
    current.sort_unstable();
    current
}

fn check_ghosts(k: &SimplicialComplex) -> Result<()> {
    match k.ghost_vertices().iter().next() {
        Some(v) => Err(MacError::GhostVertex { vertex: v }),
        None => Ok(()),
    }
}

/// Inclusion-minimal non-faces of `K`.
///
/// Fails with [`MacError::GhostVertex`] if some singleton is not a face.
pub fn minimal_nonfaces(k: &SimplicialComplex) -> Result<NonfaceFamily> {
    check_ghosts(k)?;
    let ambient = k.ambient();
    let complements: Vec<VertexSet> = k.facets().iter().map(|f| ambient - *f).collect();
    let members = minimal_transversals(&complements);
    Ok(NonfaceFamily::from_sorted_unchecked(k.vertex_count(), members))
}

/// Reference implementation of [`minimal_nonfaces`]: scans subsets by
/// cardinality and keeps `m` when `m` is not a face but every
/// `(|m| − 1)`-subset is.
pub fn minimal_nonfaces_scan(k: &SimplicialComplex) -> Result<NonfaceFamily> {
    check_ghosts(k)?;
    let n = k.vertex_count();
    if n > 24 {
        return Err(MacError::Resource(format!("subset scan limited to n ≤ 24, got {n}")));
    }
    // A minimal non-face has at most dim K + 2 vertices.
    let max_card = ((k.dim() + 2).max(0) as usize).min(n);
    let mut members = Vec::new();
    for card in 2..=max_card {
        for m in k_subsets(n, card) {
            if k.is_face(m) {
                continue;
            }
            if m.iter().all(|v| k.is_face(m - VertexSet::singleton(v))) {
                members.push(m);
            }
        }
    }
    members.sort_unstable();
    Ok(NonfaceFamily::from_sorted_unchecked(n, members))
}

/// `K(M, [n])`: subsets of `1..=n` containing no member of `M`.
pub fn reconstruct(m: &NonfaceFamily, n: usize) -> Result<SimplicialComplex> {
    let ambient = VertexSet::full(n);
    if let Some(bad) = m.members().iter().find(|x| !x.is_subset(ambient)) {
        return Err(MacError::Input(format!("non-face {bad} has a vertex outside 1..={n}")));
    }
    let facets = minimal_transversals(m.members()).into_iter().map(|t| ambient - t);
    Ok(SimplicialComplex::from_facets_unchecked(n, facets))
}

/// `K(M, ν)` relabeled onto `1..=|ν|`.
pub fn reduced_complex(m: &NonfaceFamily) -> SimplicialComplex {
    let nu = m.support();
    let local = m.compress(nu);
    reconstruct(&local, nu.len()).expect("compressed family lies in its support")
}

/// Splits `K(M, [n])` as `K(M, ν) * Δ^(n − |ν| − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostSplit {
    /// `K(M, ν)` relabeled onto `1..=|ν|`.
    pub reduced: SimplicialComplex,
    pub support: VertexSet,
    /// Number of cone vertices `n − |ν|`.
    pub cone: usize,
}

pub fn ghost_split(m: &NonfaceFamily, n: usize) -> Result<GhostSplit> {
    let support = m.support();
    if !support.is_subset(VertexSet::full(n)) {
        return Err(MacError::Input(format!("support {support} exceeds 1..={n}")));
    }
    Ok(GhostSplit { reduced: reduced_complex(m), support, cone: n - support.len() })
}

/// The graph `G(M)`: members as nodes, an edge when two members intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonfaceGraph {
    pub nodes: Vec<VertexSet>,
    /// Index pairs `(i, j)`, `i < j`, into `nodes`.
    pub edges: Vec<(usize, usize)>,
    /// Node indices per component, components ordered by smallest node.
    pub components: Vec<Vec<usize>>,
}

impl NonfaceGraph {
    pub fn has_edges(&self) -> bool {
        !self.edges.is_empty()
    }
}

pub fn intersection_graph(m: &NonfaceFamily) -> NonfaceGraph {
    let nodes = m.members().to_vec();
    let mut edges = Vec::new();
    let mut uf = UnionFind::<usize>::new(nodes.len());
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i].intersects(nodes[j]) {
                edges.push((i, j));
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut slot_of_root: std::collections::HashMap<usize, usize> = Default::default();
    for (i, root) in labels.into_iter().enumerate() {
        let slot = *slot_of_root.entry(root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[slot].push(i);
    }
    NonfaceGraph { nodes, edges, components }
}

/// One factor `(M_i, ν_i)` of the join decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub family: NonfaceFamily,
    pub support: VertexSet,
}

/// Groups members by connected component of `G(M)`, so that
/// `K(M, ν) ≅ K(M_1, ν_1) * ⋯ * K(M_l, ν_l)`.
pub fn component_decomposition(m: &NonfaceFamily) -> Vec<Component> {
    let g = intersection_graph(m);
    g.components
        .iter()
        .map(|idx| {
            let members: Vec<VertexSet> = idx.iter().map(|&i| g.nodes[i]).collect();
            let family = NonfaceFamily::from_sorted_unchecked(m.ambient_n(), members);
            let support = family.support();
            Component { family, support }
        })
        .collect()
}

pub fn support(m: &NonfaceFamily) -> VertexSet {
    m.support()
}

pub fn restrict_family(m: &NonfaceFamily, within: VertexSet) -> NonfaceFamily {
    m.restrict(within)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[u32]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn fam(n: usize, ms: &[&[u32]]) -> NonfaceFamily {
        NonfaceFamily::new(n, ms.iter().map(|m| vs(m))).unwrap()
    }

    fn c4() -> SimplicialComplex {
        SimplicialComplex::cycle(4).unwrap()
    }

    fn c5_family() -> NonfaceFamily {
        fam(5, &[&[1, 3], &[1, 4], &[2, 4], &[2, 5], &[3, 5]])
    }

    #[test]
    fn family_validation() {
        assert!(NonfaceFamily::new(3, [vs(&[1])]).is_err());
        assert!(NonfaceFamily::new(3, [vs(&[1, 2]), vs(&[1, 2, 3])]).is_err());
        assert!(NonfaceFamily::new(3, [vs(&[1, 4])]).is_err());
        assert!(NonfaceFamily::new(3, [vs(&[1, 2]), vs(&[2, 3])]).is_ok());
    }

    #[test]
    fn minimal_nonfaces_examples() {
        for n in 2..=6 {
            let b = SimplicialComplex::boundary_simplex(n - 1);
            assert_eq!(minimal_nonfaces(&b).unwrap().members(), &[VertexSet::full(n)]);
            assert!(minimal_nonfaces(&SimplicialComplex::simplex(n - 1)).unwrap().is_empty());
        }
        assert_eq!(minimal_nonfaces(&c4()).unwrap(), fam(4, &[&[1, 3], &[2, 4]]));
        let c5 = SimplicialComplex::cycle(5).unwrap();
        assert_eq!(minimal_nonfaces(&c5).unwrap(), c5_family());
    }

    #[test]
    fn ghost_vertex_is_an_error() {
        let k = SimplicialComplex::from_facets(3, [vs(&[1, 2])]).unwrap();
        assert_eq!(minimal_nonfaces(&k).unwrap_err(), MacError::GhostVertex { vertex: 3 });
        assert_eq!(minimal_nonfaces_scan(&k).unwrap_err(), MacError::GhostVertex { vertex: 3 });
    }

    #[test]
    fn reconstruct_examples() {
        let two_points = reconstruct(&fam(2, &[&[1, 2]]), 2).unwrap();
        assert_eq!(two_points, SimplicialComplex::boundary_simplex(1));
        assert_eq!(reconstruct(&fam(3, &[]), 3).unwrap(), SimplicialComplex::simplex(2));
        assert_eq!(reconstruct(&fam(4, &[&[1, 3], &[2, 4]]), 4).unwrap(), c4());
    }

    #[test]
    fn support_examples() {
        assert_eq!(fam(4, &[&[1, 3], &[2, 4]]).support(), vs(&[1, 2, 3, 4]));
        assert_eq!(fam(4, &[]).support(), VertexSet::EMPTY);
        assert_eq!(fam(3, &[&[1, 2], &[2, 3]]).support(), vs(&[1, 2, 3]));
    }

    #[test]
    fn ghost_split_examples() {
        let s = ghost_split(&fam(3, &[&[1, 2]]), 3).unwrap();
        assert_eq!(s.reduced, SimplicialComplex::boundary_simplex(1));
        assert_eq!(s.cone, 1);
        let joined = s.reduced.join(&SimplicialComplex::simplex(s.cone - 1)).unwrap();
        assert_eq!(joined, reconstruct(&fam(3, &[&[1, 2]]), 3).unwrap());

        let s = ghost_split(&fam(2, &[]), 2).unwrap();
        assert_eq!(s.reduced, SimplicialComplex::empty_face_only(0));
        assert_eq!(s.cone, 2);

        let s = ghost_split(&fam(4, &[&[1, 3], &[2, 4]]), 4).unwrap();
        assert_eq!(s.reduced, c4());
        assert_eq!(s.cone, 0);
    }

    #[test]
    fn intersection_graph_examples() {
        let g = intersection_graph(&fam(4, &[&[1, 3], &[2, 4]]));
        assert!(g.edges.is_empty());
        assert_eq!(g.components.len(), 2);

        let g = intersection_graph(&fam(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.components.len(), 1);

        // Members sorted by bitmask: {1,3},{1,4},{2,4},{2,5},{3,5}.
        let g = intersection_graph(&c5_family());
        assert_eq!(g.edges.len(), 5);
        let mut degree = [0; 5];
        for (a, b) in &g.edges {
            degree[*a] += 1;
            degree[*b] += 1;
        }
        assert!(degree.iter().all(|d| *d == 2));
        assert_eq!(g.components.len(), 1);
    }

    #[test]
    fn component_decomposition_examples() {
        let parts = component_decomposition(&fam(4, &[&[1, 3], &[2, 4]]));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].family.members(), &[vs(&[1, 3])]);
        assert_eq!(parts[0].support, vs(&[1, 3]));
        assert_eq!(parts[1].family.members(), &[vs(&[2, 4])]);
        assert_eq!(parts[1].support, vs(&[2, 4]));

        let single = fam(4, &[&[1, 2, 4]]);
        let parts = component_decomposition(&single);
        assert_eq!(parts.len(), 1);
        assert_eq!(reduced_complex(&parts[0].family), SimplicialComplex::boundary_simplex(2));

        assert!(component_decomposition(&fam(3, &[])).is_empty());
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(c5_family().restrict(vs(&[1, 3, 4])), fam(5, &[&[1, 3], &[1, 4]]));
        assert_eq!(c5_family().restrict(VertexSet::full(5)), c5_family());
        assert_eq!(fam(4, &[&[1, 3], &[2, 4]]).restrict(vs(&[1, 2, 3])), fam(4, &[&[1, 3]]));
    }

    #[test]
    fn transversals_edge_cases() {
        assert_eq!(minimal_transversals(&[]), vec![VertexSet::EMPTY]);
        assert!(minimal_transversals(&[VertexSet::EMPTY]).is_empty());
        assert_eq!(minimal_transversals(&[vs(&[1, 2]), vs(&[2, 3])]), vec![vs(&[2]), vs(&[1, 3])]);
    }

    #[test]
    fn family_json() {
        let m = c5_family();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"n":5,"members":[[1,3],[1,4],[2,4],[2,5],[3,5]]}"#);
        assert_eq!(serde_json::from_str::<NonfaceFamily>(&s).unwrap(), m);
        assert!(serde_json::from_str::<NonfaceFamily>(r#"{"n":3,"members":[[1]]}"#).is_err());
    }
}

//! Reduced rational cohomology of full subcomplexes and the Hochster-style
//! decomposition of `H*(Z(K); ℚ)`.
//!
//! The `(I, j)` summand `H̃^j(K_I; ℚ)` sits in total degree `j + |I| + 1`.
//! The `(∅, −1)` summand is the unit in degree 0. Cochains are indexed by
//! faces with ambient labels, oriented by increasing vertex label.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{MacError, Result};
use crate::linalg::{transpose, Echelon, SparseVec, Q};
use crate::vertex_set::VertexSet;

/// Largest `n` for which the `2ⁿ` subset aggregation is attempted.
pub const HOCHSTER_MAX_N: usize = 20;

/// Augmented cochain complex `C̃*(K_I; ℚ)` with ambient vertex labels.
#[derive(Clone, Debug)]
pub struct CochainComplexQ {
    within: VertexSet,
    /// `basis[j + 1]`: the `j`-dimensional faces, sorted by bitmask.
    basis: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl CochainComplexQ {
    pub fn new(k: &SimplicialComplex, within: VertexSet) -> Self {
        let faces = k.faces_within(within);
        let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut basis: Vec<Vec<VertexSet>> = vec![Vec::new(); top + 1];
        for f in faces {
            basis[f.len()].push(f);
        }
        for b in &mut basis {
            b.sort_unstable();
        }
        let index = basis.iter().map(|b| b.iter().enumerate().map(|(i, f)| (*f, i)).collect()).collect();
        CochainComplexQ { within, basis, index }
    }

    pub fn within(&self) -> VertexSet {
        self.within
    }

    /// Highest degree with a nonzero cochain group (`−1` for `{∅}`).
    pub fn top_degree(&self) -> i32 {
        self.basis.len() as i32 - 2
    }

    pub fn faces(&self, degree: i32) -> &[VertexSet] {
        let slot = degree + 1;
        if slot < 0 || slot as usize >= self.basis.len() {
            return &[];
        }
        &self.basis[slot as usize]
    }

    pub fn rank_of_group(&self, degree: i32) -> usize {
        self.faces(degree).len()
    }

    pub fn face_index(&self, degree: i32, face: VertexSet) -> Option<usize> {
        let slot = degree + 1;
        if slot < 0 || slot as usize >= self.index.len() {
            return None;
        }
        self.index[slot as usize].get(&face).copied()
    }

    /// Matrix of `d_j : C^j → C^(j+1)` as rows indexed by `(j+1)`-faces.
    pub fn coboundary_rows(&self, degree: i32) -> Vec<SparseVec> {
        self.faces(degree + 1)
            .iter()
            .map(|tau| {
                SparseVec::from_entries(tau.iter().enumerate().map(|(pos, v)| {
                    let face = *tau - VertexSet::singleton(v);
                    let col = self.face_index(degree, face).expect("faces are downward closed");
                    (col, sign(pos))
                }))
            })
            .collect()
    }

    /// `d_j c` for a cochain given in the degree-`j` face basis.
    pub fn apply_coboundary(&self, degree: i32, c: &SparseVec) -> SparseVec {
        let mut dense = vec![Q::zero(); self.rank_of_group(degree)];
        for (i, v) in c.entries() {
            dense[*i] = v.clone();
        }
        let rows = self.coboundary_rows(degree);
        SparseVec::from_entries(rows.iter().enumerate().map(|(i, r)| (i, r.dot_dense(&dense))))
    }

    /// Checks `d_(j+1) ∘ d_j = 0` in every degree.
    pub fn check_d_squared(&self) -> bool {
        (-1..=self.top_degree()).all(|j| {
            let first = self.coboundary_rows(j);
            let second = self.coboundary_rows(j + 1);
            let cols = transpose(&first, self.rank_of_group(j));
            // Each column of d_j is d_j(e_ρ); apply d_(j+1) to it.
            cols.iter().all(|col| {
                let mut dense = vec![Q::zero(); self.rank_of_group(j + 1)];
                for (i, v) in col.entries() {
                    dense[*i] = v.clone();
                }
                second.iter().all(|r| r.dot_dense(&dense).is_zero())
            })
        })
    }

    fn coboundary_rank(&self, degree: i32) -> usize {
        if degree < -1 || degree >= self.top_degree() {
            return 0;
        }
        crate::linalg::rank(&self.coboundary_rows(degree))
    }

    /// Reduced Betti numbers `(j, dim H̃^j)` for `−1 ≤ j ≤ top_degree`.
    pub fn reduced_betti(&self) -> Vec<(i32, usize)> {
        let ranks: Vec<usize> = (-1..=self.top_degree()).map(|j| self.coboundary_rank(j)).collect();
        (-1..=self.top_degree())
            .map(|j| {
                let slot = (j + 1) as usize;
                let below = if slot == 0 { 0 } else { ranks[slot - 1] };
                (j, self.rank_of_group(j) - ranks[slot] - below)
            })
            .collect()
    }

    /// Cohomology in degree `j` with cocycle representatives and a solver
    /// expressing cocycles in that basis.
    pub fn cohomology_in_degree(&self, degree: i32) -> DegreeCohomology {
        let ncols = self.rank_of_group(degree);
        let mut cocycle_eqs = Echelon::new();
        for row in self.coboundary_rows(degree) {
            cocycle_eqs.insert(&row);
        }
        let kernel = cocycle_eqs.kernel(ncols);
        let mut solver = Echelon::new();
        if degree > -1 {
            let prev = self.coboundary_rows(degree - 1);
            for image in transpose(&prev, self.rank_of_group(degree - 1)) {
                solver.insert(&image);
            }
        }
        let mut representatives = Vec::new();
        for z in kernel {
            if solver.insert_tagged(&z, representatives.len()) {
                representatives.push(z);
            }
        }
        DegreeCohomology { within: self.within, degree, faces: self.faces(degree).to_vec(), representatives, solver }
    }
}

fn sign(pos: usize) -> Q {
    if pos.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// A cochain on faces of a fixed dimension, with ambient labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: i32,
    pub values: BTreeMap<VertexSet, Q>,
}

impl Cochain {
    pub fn value(&self, face: VertexSet) -> Q {
        self.values.get(&face).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    fn from_sparse(degree: i32, faces: &[VertexSet], v: &SparseVec) -> Self {
        Cochain { degree, values: v.entries().iter().map(|(i, x)| (faces[*i], x.clone())).collect() }
    }

    fn to_sparse(&self, cx: &CochainComplexQ) -> Option<SparseVec> {
        let mut entries = Vec::with_capacity(self.values.len());
        for (f, x) in &self.values {
            if x.is_zero() {
                continue;
            }
            entries.push((cx.face_index(self.degree, *f)?, x.clone()));
        }
        Some(SparseVec::from_entries(entries))
    }
}

/// `H̃^j(K_I; ℚ)` with a chosen basis of cocycle representatives.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    within: VertexSet,
    degree: i32,
    faces: Vec<VertexSet>,
    representatives: Vec<SparseVec>,
    /// Coboundaries (untagged) plus representatives (tagged by index).
    solver: Echelon,
}

impl DegreeCohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn within(&self) -> VertexSet {
        self.within
    }

    pub fn representatives(&self) -> Vec<Cochain> {
        self.representatives.iter().map(|r| Cochain::from_sparse(self.degree, &self.faces, r)).collect()
    }

    /// Coordinates of the class of cocycle `c` in the representative basis,
    /// or `None` if `c` is not a cocycle.
    fn coordinates(&self, c: &SparseVec) -> Option<Vec<Q>> {
        let red = self.solver.reduce(c);
        if !red.residual.is_zero() {
            return None;
        }
        let mut coords = vec![Q::zero(); self.dim()];
        for (i, v) in red.combo.entries() {
            coords[*i] = v.clone();
        }
        Some(coords)
    }
}

/// One degree of [`reduced_cohomology`].
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: i32,
    pub dim: usize,
    pub representatives: Vec<Cochain>,
}

/// `H̃^j(K; ℚ)` for `−1 ≤ j ≤ dim K`.
pub fn reduced_cohomology(k: &SimplicialComplex) -> Vec<CohomologyGroup> {
    let cx = CochainComplexQ::new(k, k.ambient());
    (-1..=cx.top_degree())
        .map(|j| {
            let h = cx.cohomology_in_degree(j);
            CohomologyGroup { degree: j, dim: h.dim(), representatives: h.representatives() }
        })
        .collect()
}

fn check_hochster_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(MacError::Resource(format!("Hochster aggregation over 2^{n} subsets exceeds limit n ≤ {limit}")));
    }
    Ok(())
}

fn total_degree(subset: VertexSet, j: i32) -> usize {
    (j + subset.len() as i32 + 1) as usize
}

fn trim(mut betti: Vec<usize>) -> Vec<usize> {
    while betti.len() > 1 && betti.last() == Some(&0) {
        betti.pop();
    }
    if betti.is_empty() {
        betti.push(0);
    }
    betti
}

/// Rational Betti numbers of `Z(K)`:
/// `b_ℓ = Σ_I dim H̃^(ℓ − |I| − 1)(K_I; ℚ)`, trailing zeros trimmed.
pub fn hochster_betti(k: &SimplicialComplex) -> Result<Vec<usize>> {
    check_hochster_size(k.vertex_count(), HOCHSTER_MAX_N)?;
    let n = k.vertex_count();
    let betti = (0u64..1 << n)
        .into_par_iter()
        .map(|bits| {
            let subset = VertexSet::from_bits(bits);
            let mut local = vec![0usize; 2 * n + 2];
            for (j, d) in CochainComplexQ::new(k, subset).reduced_betti() {
                if d > 0 {
                    local[total_degree(subset, j)] += d;
                }
            }
            local
        })
        .reduce(
            || vec![0usize; 2 * n + 2],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(trim(betti))
}

/// A summand of the decomposition with nonzero dimension.
#[derive(Clone, Debug)]
pub struct HochsterEntry {
    pub subset: VertexSet,
    pub degree: i32,
    pub dim: usize,
    cohomology: Option<DegreeCohomology>,
}

impl HochsterEntry {
    pub fn total_degree(&self) -> usize {
        total_degree(self.subset, self.degree)
    }

    pub fn representatives(&self) -> Option<Vec<Cochain>> {
        self.cohomology.as_ref().map(|h| h.representatives())
    }
}

/// The table `(I, j) ↦ H̃^j(K_I; ℚ)` with the Betti numbers of `Z(K)`.
#[derive(Clone, Debug)]
pub struct HochsterTable {
    n: usize,
    entries: BTreeMap<(VertexSet, i32), HochsterEntry>,
    betti: Vec<usize>,
    complex: SimplicialComplex,
}

/// A class in one summand, in coordinates of the table's representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub subset: VertexSet,
    pub degree: i32,
    pub coords: Vec<Q>,
}

impl Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn total_degree(&self) -> usize {
        total_degree(self.subset, self.degree)
    }
}

/// JSON shape `{"entries":[{"I":[...],"j":int,"dim":int}],"betti":[int,...]}`.
#[derive(Clone, Debug, Serialize)]
pub struct HochsterReport {
    pub entries: Vec<EntryReport>,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    #[serde(rename = "I")]
    pub subset: Vec<u32>,
    pub j: i32,
    pub dim: usize,
}

impl HochsterTable {
    /// Dimensions only.
    pub fn dimensions(k: &SimplicialComplex) -> Result<Self> {
        Self::build(k, false, HOCHSTER_MAX_N)
    }

    /// Dimensions plus cocycle representatives, needed for star products.
    pub fn with_representatives(k: &SimplicialComplex) -> Result<Self> {
        Self::build(k, true, HOCHSTER_MAX_N)
    }

    pub fn build(k: &SimplicialComplex, representatives: bool, limit_n: usize) -> Result<Self> {
        let n = k.vertex_count();
        check_hochster_size(n, limit_n.min(HOCHSTER_MAX_N))?;
        let found: Vec<HochsterEntry> = (0u64..1 << n)
            .into_par_iter()
            .flat_map_iter(|bits| {
                let subset = VertexSet::from_bits(bits);
                let cx = CochainComplexQ::new(k, subset);
                let mut out = Vec::new();
                for (j, dim) in cx.reduced_betti() {
                    if dim == 0 {
                        continue;
                    }
                    let cohomology = representatives.then(|| cx.cohomology_in_degree(j));
                    debug_assert!(cohomology.as_ref().is_none_or(|h| h.dim() == dim));
                    out.push(HochsterEntry { subset, degree: j, dim, cohomology });
                }
                out
            })
            .collect();
        let mut betti = vec![0usize; 2 * n + 2];
        let mut entries = BTreeMap::new();
        for e in found {
            betti[e.total_degree()] += e.dim;
            entries.insert((e.subset, e.degree), e);
        }
        Ok(HochsterTable { n, entries, betti: trim(betti), complex: k.clone() })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn entries(&self) -> impl Iterator<Item = &HochsterEntry> {
        self.entries.values()
    }

    pub fn entry(&self, subset: VertexSet, degree: i32) -> Option<&HochsterEntry> {
        self.entries.get(&(subset, degree))
    }

    pub fn dim(&self, subset: VertexSet, degree: i32) -> usize {
        self.entry(subset, degree).map_or(0, |e| e.dim)
    }

    pub fn report(&self) -> HochsterReport {
        let mut entries: Vec<EntryReport> =
            self.entries.values().map(|e| EntryReport { subset: e.subset.to_vec(), j: e.degree, dim: e.dim }).collect();
        entries.sort_by(|a, b| a.subset.len().cmp(&b.subset.len()).then(a.subset.cmp(&b.subset)).then(a.j.cmp(&b.j)));
        HochsterReport { entries, betti: self.betti.clone() }
    }

    /// The unit, living in the `(∅, −1)` summand.
    pub fn unit(&self) -> Class {
        Class { subset: VertexSet::EMPTY, degree: -1, coords: vec![Q::one()] }
    }

    /// The `index`-th basis class of summand `(subset, degree)`.
    pub fn basis_class(&self, subset: VertexSet, degree: i32, index: usize) -> Result<Class> {
        let dim = self.dim(subset, degree);
        if index >= dim {
            return Err(MacError::Input(format!("no basis class {index} in summand ({subset}, {degree})")));
        }
        let mut coords = vec![Q::zero(); dim];
        coords[index] = Q::one();
        Ok(Class { subset, degree, coords })
    }

    fn solver(&self, subset: VertexSet, degree: i32) -> Result<&DegreeCohomology> {
        let entry = self
            .entry(subset, degree)
            .ok_or_else(|| MacError::Input(format!("summand ({subset}, {degree}) is zero in this table")))?;
        entry.cohomology.as_ref().ok_or_else(|| MacError::Input("table was built without representatives".into()))
    }

    fn validate(&self, c: &Class) -> Result<&DegreeCohomology> {
        let h = self.solver(c.subset, c.degree)?;
        if c.coords.len() != h.dim() {
            return Err(MacError::Input(format!(
                "class has {} coordinates, summand ({}, {}) has dimension {}",
                c.coords.len(),
                c.subset,
                c.degree,
                h.dim()
            )));
        }
        Ok(h)
    }

    fn cocycle_of(h: &DegreeCohomology, c: &Class) -> Cochain {
        let mut acc = SparseVec::new();
        for (coef, rep) in c.coords.iter().zip(&h.representatives) {
            acc.add_scaled(rep, coef);
        }
        Cochain::from_sparse(h.degree, &h.faces, &acc)
    }

    /// The product `α * β`, `None` when it vanishes.
    ///
    /// Zero when the supports meet; otherwise the class of the cross cochain
    /// `(α × β)(σ) = ε(σ) α(σ ∩ J) β(σ ∩ L)` on `K_(J ∪ L)`.
    pub fn star_product(&self, alpha: &Class, beta: &Class) -> Result<Option<Class>> {
        let ha = self.validate(alpha)?;
        let hb = self.validate(beta)?;
        if alpha.subset.is_empty() {
            return Ok((!beta.is_zero()).then(|| beta.clone()));
        }
        if beta.subset.is_empty() {
            return Ok((!alpha.is_zero()).then(|| alpha.clone()));
        }
        if alpha.subset.intersects(beta.subset) || alpha.is_zero() || beta.is_zero() {
            return Ok(None);
        }
        let target_subset = alpha.subset | beta.subset;
        let target_degree = alpha.degree + beta.degree + 1;
        let Some(target) = self.entry(target_subset, target_degree) else {
            return Ok(None);
        };
        let target = target.cohomology.as_ref().expect("validated tables carry representatives");
        let a = Self::cocycle_of(ha, alpha);
        let b = Self::cocycle_of(hb, beta);
        let gamma = cross_cochain(&self.complex, &a, alpha.subset, &b, beta.subset);
        let cx = CochainComplexQ::new(&self.complex, target_subset);
        let v = gamma.to_sparse(&cx).expect("cross cochain is supported on faces of K_(J∪L)");
        let coords = target.coordinates(&v).expect("cross product of cocycles is a cocycle");
        let class = Class { subset: target_subset, degree: target_degree, coords };
        Ok((!class.is_zero()).then_some(class))
    }
}

/// Sign of placing `σ ∩ J` before `σ ∩ L` relative to sorted order, times
/// `(−1)^((p+1)q)`.
fn cross_sign(part_j: VertexSet, part_l: VertexSet, p: i32, q: i32) -> bool {
    let inversions: usize = part_j.iter().map(|x| part_l.count_below(x)).sum();
    let shift = ((p + 1) * q).rem_euclid(2) as usize;
    (inversions + shift) % 2 == 1
}

/// `(α × β)(σ) = ±α(σ ∩ J) β(σ ∩ L)` on the faces of `K_(J ∪ L)` of
/// dimension `p + q + 1`.
pub fn cross_cochain(k: &SimplicialComplex, alpha: &Cochain, j: VertexSet, beta: &Cochain, l: VertexSet) -> Cochain {
    let (p, q) = (alpha.degree, beta.degree);
    let target_degree = p + q + 1;
    let mut values = BTreeMap::new();
    for sigma in k.faces_within(j | l) {
        if sigma.len() as i32 != target_degree + 1 {
            continue;
        }
        let (sj, sl) = (sigma & j, sigma & l);
        if sj.len() as i32 != p + 1 {
            continue;
        }
        let prod = alpha.value(sj) * beta.value(sl);
        if prod.is_zero() {
            continue;
        }
        values.insert(sigma, if cross_sign(sj, sl, p, q) { -prod } else { prod });
    }
    Cochain { degree: target_degree, values }
}

/// Whether `c` is a cocycle on `K_within`.
pub fn is_cocycle(k: &SimplicialComplex, within: VertexSet, c: &Cochain) -> bool {
    let cx = CochainComplexQ::new(k, within);
    match c.to_sparse(&cx) {
        Some(v) => cx.apply_coboundary(c.degree, &v).is_zero(),
        None => false,
    }
}

/// Evidence for [`is_trivial_ring`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingCertificate {
    /// No disjoint `J`, `L` both carry nonzero reduced cohomology.
    NoDisjointSupports,
    /// Every product of basis classes over disjoint supports was evaluated and vanished.
    AllProductsVanish { pairs_checked: usize },
    /// An explicit nonzero product.
    NonzeroProduct {
        #[serde(rename = "J")]
        j: Vec<u32>,
        p: i32,
        #[serde(rename = "L")]
        l: Vec<u32>,
        q: i32,
        /// Degree of the product in `H*(Z(K))`.
        degree: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingTriviality {
    pub trivial: bool,
    pub certificate: RingCertificate,
}

/// The combinatorial sufficient condition: no two disjoint nonempty
/// subsets both carry reduced cohomology.
pub fn no_disjoint_supports(table: &HochsterTable) -> bool {
    let mut supports: Vec<VertexSet> = table.entries().filter(|e| !e.subset.is_empty()).map(|e| e.subset).collect();
    supports.dedup();
    !supports.iter().enumerate().any(|(i, a)| supports[i + 1..].iter().any(|b| a.is_disjoint(*b)))
}

/// Evaluates all products of basis classes over disjoint nonempty supports.
pub fn exhaustive_products(table: &HochsterTable) -> Result<RingTriviality> {
    let positive: Vec<&HochsterEntry> = table.entries().filter(|e| !e.subset.is_empty()).collect();
    let mut pairs_checked = 0;
    for (ia, a) in positive.iter().enumerate() {
        for b in &positive[ia..] {
            if a.subset.intersects(b.subset) {
                continue;
            }
            for x in 0..a.dim {
                for y in 0..b.dim {
                    pairs_checked += 1;
                    let ca = table.basis_class(a.subset, a.degree, x)?;
                    let cb = table.basis_class(b.subset, b.degree, y)?;
                    if let Some(prod) = table.star_product(&ca, &cb)? {
                        return Ok(RingTriviality {
                            trivial: false,
                            certificate: RingCertificate::NonzeroProduct {
                                j: a.subset.to_vec(),
                                p: a.degree,
                                l: b.subset.to_vec(),
                                q: b.degree,
                                degree: prod.total_degree(),
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(RingTriviality { trivial: true, certificate: RingCertificate::AllProductsVanish { pairs_checked } })
}

/// Decides whether all products of positive-degree classes in `H*(Z(K))`
/// vanish. Tries the disjoint-support criterion first, then falls back to
/// evaluating every product.
pub fn is_trivial_ring(k: &SimplicialComplex) -> Result<RingTriviality> {
    let dims = HochsterTable::dimensions(k)?;
    if no_disjoint_supports(&dims) {
        return Ok(RingTriviality { trivial: true, certificate: RingCertificate::NoDisjointSupports });
    }
    exhaustive_products(&HochsterTable::with_representatives(k)?)
}

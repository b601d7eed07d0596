//! Elliptic/hyperbolic decision for `Z(K; (D², S¹))`.
//!
//! `Z(K)` is rationally elliptic exactly when the minimal non-faces of `K`
//! are pairwise disjoint. Then `K = ∂Δ^(|m_1|−1) * ⋯ * ∂Δ^(|m_k|−1) * Δ^(c−1)`
//! and `Z(K) ≅ ∏ S^(2|m_i|−1) × D^(2c)`. Otherwise a full subcomplex whose
//! non-faces pairwise intersect is returned as the hyperbolic witness.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{MacError, Result};
use crate::nonface::{intersection_graph, minimal_nonfaces, NonfaceFamily};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalTypeVerdict {
    /// `Z(K) ≅ ∏ S^(d_i) × D^(disk_dim)`.
    Elliptic { sphere_dims: Vec<u32>, disk_dim: u32 },
    /// `K_I` is a retract witness whose non-faces `M_I` pairwise intersect.
    Hyperbolic { witness_i: VertexSet, witness_family: NonfaceFamily },
}

impl RationalTypeVerdict {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, RationalTypeVerdict::Elliptic { .. })
    }

    pub fn report(&self) -> VerdictReport {
        match self {
            RationalTypeVerdict::Elliptic { sphere_dims, disk_dim } => {
                VerdictReport::Elliptic { spheres: sphere_dims.clone(), disk: *disk_dim }
            }
            RationalTypeVerdict::Hyperbolic { witness_i, witness_family } => VerdictReport::Hyperbolic {
                witness_i: witness_i.to_vec(),
                witness_nonfaces: witness_family.member_lists(),
            },
        }
    }
}

/// Wire form emitted by `mac classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VerdictReport {
    Elliptic {
        spheres: Vec<u32>,
        disk: u32,
    },
    Hyperbolic {
        #[serde(rename = "witness_I")]
        witness_i: Vec<u32>,
        witness_nonfaces: Vec<Vec<u32>>,
    },
}

pub fn classify(k: &SimplicialComplex) -> Result<RationalTypeVerdict> {
    let m = minimal_nonfaces(k)?;
    classify_family(&m, k.vertex_count())
}

/// Classifies `K(M, [n])` directly from its non-faces.
pub fn classify_family(m: &NonfaceFamily, n: usize) -> Result<RationalTypeVerdict> {
    if !intersection_graph(m).has_edges() {
        let (sphere_dims, disk_dim) = elliptic_model(m, n)?;
        return Ok(RationalTypeVerdict::Elliptic { sphere_dims, disk_dim });
    }
    let (witness_i, witness_family) = find_witness(m)?;
    Ok(RationalTypeVerdict::Hyperbolic { witness_i, witness_family })
}

/// Sphere dimensions `2|m_i| − 1` (ascending) and disk dimension `2(n − |ν|)`.
pub fn elliptic_model(m: &NonfaceFamily, n: usize) -> Result<(Vec<u32>, u32)> {
    if !m.is_pairwise_disjoint() {
        return Err(MacError::NotApplicable("minimal non-faces are not pairwise disjoint".into()));
    }
    let support = m.support();
    if !support.is_subset(VertexSet::full(n)) {
        return Err(MacError::Input(format!("support {support} exceeds 1..={n}")));
    }
    let mut spheres: Vec<u32> = m.members().iter().map(|x| 2 * x.len() as u32 - 1).collect();
    spheres.sort_unstable();
    Ok((spheres, 2 * (n - support.len()) as u32))
}

/// Picks an intersecting pair `(m̄₀, m̄₁)` minimizing `|m̄₀ ∪ m̄₁|` and
/// returns `I = m̄₀ ∪ m̄₁` with `M_I`.
///
/// Ties are broken by the first pair in member order (members sorted by
/// bitmask), i.e. the minimum of `(|m̄₀ ∪ m̄₁|, m̄₀, m̄₁)`.
pub fn find_witness(m: &NonfaceFamily) -> Result<(VertexSet, NonfaceFamily)> {
    let members = m.members();
    let mut best: Option<(usize, VertexSet, VertexSet)> = None;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if !a.intersects(*b) {
                continue;
            }
            let size = (*a | *b).len();
            if best.is_none_or(|(s, _, _)| size < s) {
                best = Some((size, *a, *b));
            }
        }
    }
    let (_, a, b) = best.ok_or_else(|| MacError::NotApplicable("no intersecting pair of minimal non-faces".into()))?;
    let witness = a | b;
    Ok((witness, m.restrict(witness)))
}

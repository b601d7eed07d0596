//! Rational homotopy ranks of sphere products and wedges.
//!
//! For a wedge of spheres `S^(d_1) ∨ ⋯ ∨ S^(d_r)`, `π_*(ΩX) ⊗ ℚ` is the free
//! graded Lie algebra on generators of degree `d_i − 1`, and its ranks
//! `l_k` are pinned down by
//!
//! ```text
//! ∏_{k even} (1 − t^k)^(−l_k) · ∏_{k odd} (1 + t^k)^(l_k) = 1 / (1 − Σ_i t^(d_i − 1))
//! ```
//!
//! which is solved one degree at a time. All arithmetic is exact.

use serde::Serialize;

use crate::cohomology::{hochster_betti, is_trivial_ring};
use crate::complex::SimplicialComplex;
use crate::error::{MacError, Result};

pub const DEFAULT_TRUNCATION: usize = 24;
pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Product,
    Wedge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereModel {
    pub kind: ModelKind,
    /// Sphere dimensions, ascending.
    pub dims: Vec<u32>,
}

impl SphereModel {
    pub fn product(mut dims: Vec<u32>) -> Result<Self> {
        if let Some(d) = dims.iter().find(|d| *d % 2 == 0) {
            return Err(MacError::Input(format!("product model needs odd spheres, got S^{d}")));
        }
        dims.sort_unstable();
        Ok(SphereModel { kind: ModelKind::Product, dims })
    }

    pub fn wedge(mut dims: Vec<u32>) -> Result<Self> {
        if let Some(d) = dims.iter().find(|d| **d < 2) {
            return Err(MacError::Input(format!("wedge summand S^{d} is not simply connected")));
        }
        dims.sort_unstable();
        Ok(SphereModel { kind: ModelKind::Wedge, dims })
    }
}

/// `ranks[k − 1] = l_k = dim π_(k+1)(X) ⊗ ℚ` for `1 ≤ k ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyRankSeries {
    pub ranks: Vec<u128>,
    pub model: SphereModel,
}

impl HomotopyRankSeries {
    pub fn truncation(&self) -> usize {
        self.ranks.len()
    }

    /// `l_k`, zero outside `1..=N`.
    pub fn rank(&self, k: usize) -> u128 {
        if k == 0 {
            return 0;
        }
        self.ranks.get(k - 1).copied().unwrap_or(0)
    }

    /// `S_m = Σ_{k ≤ m} l_k`.
    pub fn partial_sum(&self, m: usize) -> u128 {
        self.ranks.iter().take(m).sum()
    }

    pub fn total(&self) -> u128 {
        self.partial_sum(self.ranks.len())
    }
}

fn overflow() -> MacError {
    MacError::Resource("rank series coefficient overflowed 128 bits".into())
}

/// `C(a, b)` with overflow checking.
fn binomial(a: u128, b: usize) -> Result<u128> {
    if (b as u128) > a {
        return Ok(0);
    }
    let mut acc: u128 = 1;
    for i in 0..b as u128 {
        // acc * (a - i) is divisible by (i + 1) after multiplication.
        acc = acc.checked_mul(a - i).ok_or_else(overflow)? / (i + 1);
    }
    Ok(acc)
}

/// Coefficients of `1 / (1 − Σ_i t^(g_i))` through `t^N`.
pub fn tensor_algebra_series(generator_degrees: &[usize], truncation: usize) -> Result<Vec<u128>> {
    let mut a = vec![0u128; truncation + 1];
    a[0] = 1;
    for k in 1..=truncation {
        let mut s: u128 = 0;
        for &g in generator_degrees {
            if g >= 1 && g <= k {
                s = s.checked_add(a[k - g]).ok_or_else(overflow)?;
            }
        }
        a[k] = s;
    }
    Ok(a)
}

/// Multiplies `series` in place by the factor for `rank` generators in degree `k`.
fn apply_factor(series: &mut [u128], k: usize, rank: u128) -> Result<()> {
    if rank == 0 {
        return Ok(());
    }
    let n = series.len() - 1;
    let terms = n / k;
    // (1 + t^k)^l = Σ C(l, j) t^(kj); (1 − t^k)^(−l) = Σ C(l + j − 1, j) t^(kj)
    let coeffs: Vec<u128> = (0..=terms)
        .map(|j| if k % 2 == 1 { binomial(rank, j) } else { binomial(rank + j as u128 - 1, j) })
        .collect::<Result<_>>()?;
    let old = series.to_vec();
    for (deg, slot) in series.iter_mut().enumerate() {
        let mut s: u128 = 0;
        for (j, c) in coeffs.iter().enumerate() {
            if j * k > deg {
                break;
            }
            s = c.checked_mul(old[deg - j * k]).and_then(|x| x.checked_add(s)).ok_or_else(overflow)?;
        }
        *slot = s;
    }
    Ok(())
}

/// Ranks of the free graded Lie algebra on generators of the given degrees.
pub fn free_lie_ranks_from_generators(generator_degrees: &[usize], truncation: usize) -> Result<Vec<u128>> {
    if truncation == 0 {
        return Err(MacError::Input("truncation must be at least 1".into()));
    }
    let target = tensor_algebra_series(generator_degrees, truncation)?;
    let mut current = vec![0u128; truncation + 1];
    current[0] = 1;
    let mut ranks = Vec::with_capacity(truncation);
    for k in 1..=truncation {
        let l =
            target[k].checked_sub(current[k]).ok_or_else(|| MacError::Input(format!("negative rank in degree {k}")))?;
        apply_factor(&mut current, k, l)?;
        debug_assert_eq!(current[k], target[k]);
        ranks.push(l);
    }
    Ok(ranks)
}

pub fn free_lie_ranks(model: &SphereModel, truncation: usize) -> Result<HomotopyRankSeries> {
    if model.kind != ModelKind::Wedge {
        return Err(MacError::Input("free_lie_ranks expects a wedge model".into()));
    }
    if model.dims.is_empty() {
        return Err(MacError::Input("wedge model has no spheres".into()));
    }
    let gens: Vec<usize> = model.dims.iter().map(|d| *d as usize - 1).collect();
    let ranks = free_lie_ranks_from_generators(&gens, truncation)?;
    Ok(HomotopyRankSeries { ranks, model: model.clone() })
}

pub fn product_ranks(model: &SphereModel, truncation: usize) -> Result<HomotopyRankSeries> {
    if model.kind != ModelKind::Product {
        return Err(MacError::Input("product_ranks expects a product model".into()));
    }
    if let Some(d) = model.dims.iter().find(|d| *d % 2 == 0) {
        return Err(MacError::Input(format!("product model needs odd spheres, got S^{d}")));
    }
    let mut ranks = vec![0u128; truncation];
    for d in &model.dims {
        let k = *d as usize - 1;
        if (1..=truncation).contains(&k) {
            ranks[k - 1] += 1;
        }
    }
    Ok(HomotopyRankSeries { ranks, model: model.clone() })
}

/// Substitutes `ranks` into the product side of the identity and returns
/// its coefficients through `t^N`.
pub fn product_side_series(ranks: &[u128]) -> Result<Vec<u128>> {
    let mut series = vec![0u128; ranks.len() + 1];
    series[0] = 1;
    for (i, l) in ranks.iter().enumerate() {
        apply_factor(&mut series, i + 1, *l)?;
    }
    Ok(series)
}

/// Sphere model of a witness `K_I` whose cohomology ring is trivial: one
/// sphere `S^d` per unit of `b_d(Z(K_I))`, `d ≥ 1`.
pub fn wedge_model(witness: &SimplicialComplex) -> Result<SphereModel> {
    let ring = is_trivial_ring(witness)?;
    if !ring.trivial {
        return Err(MacError::NotApplicable("cohomology ring of Z(K_I) is not trivial".into()));
    }
    let betti = hochster_betti(witness)?;
    let mut dims = Vec::new();
    for (d, b) in betti.iter().enumerate().skip(1) {
        dims.extend(std::iter::repeat_n(d as u32, *b));
    }
    SphereModel::wedge(dims)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum GrowthCertificate {
    Finite,
    Exponential { ratio: f64 },
}

/// `ρ = (S_N / S_(N/2))^(2/N)`.
pub fn growth_ratio(r: &HomotopyRankSeries) -> Option<f64> {
    let n = r.truncation();
    let (hi, lo) = (r.partial_sum(n), r.partial_sum(n / 2));
    (lo > 0).then(|| (hi as f64 / lo as f64).powf(2.0 / n as f64))
}

/// Finite vs exponential growth of a rank series.
///
/// The split is structural: products and wedges of at most one sphere are
/// finite, wedges of two or more spheres are exponential. The ratio is
/// reported alongside; `delta` only flags a ratio too close to 1.
pub fn growth_certificate(r: &HomotopyRankSeries, delta: f64) -> Result<(GrowthCertificate, bool)> {
    let n = r.truncation();
    if n < 12 {
        return Err(MacError::Input(format!("growth certificate needs truncation ≥ 12, got {n}")));
    }
    let exponential = r.model.kind == ModelKind::Wedge && r.model.dims.len() >= 2;
    if !exponential {
        return Ok((GrowthCertificate::Finite, true));
    }
    let ratio = growth_ratio(r).unwrap_or(1.0);
    Ok((GrowthCertificate::Exponential { ratio }, ratio > 1.0 + delta))
}

//! Brute-force cellular chain complex of `Z(K; (D², S¹))`.
//!
//! `D²` carries one cell in each dimension 0, 1, 2 with `∂e² = e¹` and
//! `∂e¹ = 0`. A product cell of `(D²)ⁿ` is a pair `(σ, ω)`: coordinates in
//! `σ` carry `e²`, coordinates in `ω` carry `e¹`, the rest `e⁰`. It lies in
//! `Z(K)` iff `σ ∈ K`. This engine shares nothing with the cohomology module
//! beyond the linear algebra.

use std::collections::HashMap;

use num_traits::One;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{MacError, Result};
use crate::linalg::{rank, SparseVec, Q};
use crate::vertex_set::VertexSet;

pub const DEFAULT_CELL_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub sigma: VertexSet,
    pub omega: VertexSet,
}

impl Cell {
    pub fn dim(&self) -> usize {
        2 * self.sigma.len() + self.omega.len()
    }
}

#[derive(Clone, Debug)]
pub struct MomentAngleCellComplex {
    n: usize,
    /// `cells[d]`: cells of dimension `d`, sorted.
    cells: Vec<Vec<Cell>>,
    index: HashMap<Cell, usize>,
}

/// Number of cells, `Σ_{σ∈K} 2^(n−|σ|)`.
pub fn cell_count(k: &SimplicialComplex) -> u128 {
    let n = k.vertex_count();
    k.faces().iter().map(|s| 1u128 << (n - s.len())).sum()
}

pub fn build(k: &SimplicialComplex) -> Result<MomentAngleCellComplex> {
    build_with_limit(k, DEFAULT_CELL_LIMIT)
}

pub fn build_with_limit(k: &SimplicialComplex, max_cells: usize) -> Result<MomentAngleCellComplex> {
    let n = k.vertex_count();
    let total = cell_count(k);
    if total > max_cells as u128 {
        return Err(MacError::Resource(format!("Z(K) has {total} cells, limit is {max_cells}")));
    }
    let ambient = k.ambient();
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); 2 * n + 1];
    for sigma in k.faces() {
        for omega in (ambient - sigma).subsets() {
            let c = Cell { sigma, omega };
            cells[c.dim()].push(c);
        }
    }
    let mut index = HashMap::with_capacity(total as usize);
    for group in &mut cells {
        group.sort_unstable();
        for (i, c) in group.iter().enumerate() {
            index.insert(*c, i);
        }
    }
    Ok(MomentAngleCellComplex { n, cells, index })
}

impl MomentAngleCellComplex {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    /// `∂(σ, ω) = Σ_{i∈σ} (−1)^{|{ω < i}|} (σ∖i, ω∪i)`.
    pub fn boundary_of(&self, cell: Cell) -> SparseVec {
        let target_dim = cell.dim().saturating_sub(1);
        SparseVec::from_entries(cell.sigma.iter().map(|i| {
            let face =
                Cell { sigma: cell.sigma - VertexSet::singleton(i), omega: cell.omega | VertexSet::singleton(i) };
            debug_assert_eq!(face.dim(), target_dim);
            let col = self.index[&face];
            let s = if cell.omega.count_below(i).is_multiple_of(2) { Q::one() } else { -Q::one() };
            (col, s)
        }))
    }

    /// Rows of `∂_d : C_d → C_(d−1)`.
    pub fn boundary_rows(&self, dim: usize) -> Vec<SparseVec> {
        self.cells(dim).iter().map(|c| self.boundary_of(*c)).collect()
    }

    pub fn check_d_squared(&self) -> bool {
        (2..self.cells.len()).all(|d| {
            let lower = self.boundary_rows(d - 1);
            self.boundary_rows(d).iter().all(|row| {
                let mut acc = SparseVec::new();
                for (i, v) in row.entries() {
                    acc.add_scaled(&lower[*i], v);
                }
                acc.is_zero()
            })
        })
    }

    /// Rational Betti numbers, trailing zeros trimmed.
    pub fn betti(&self) -> Vec<usize> {
        let top = self.cells.len();
        let ranks: Vec<usize> =
            (0..=top).map(|d| if d == 0 || d >= top { 0 } else { rank(&self.boundary_rows(d)) }).collect();
        let mut betti: Vec<usize> = (0..top).map(|d| self.cells[d].len() - ranks[d] - ranks[d + 1]).collect();
        while betti.len() > 1 && betti.last() == Some(&0) {
            betti.pop();
        }
        betti
    }

    pub fn dump(&self) -> ChainDump {
        let mut cells = Vec::new();
        let mut boundary = Vec::new();
        for (d, group) in self.cells.iter().enumerate() {
            for c in group {
                cells.push(CellReport { sigma: c.sigma.to_vec(), omega: c.omega.to_vec(), dim: d });
                let entries = self
                    .boundary_of(*c)
                    .entries()
                    .iter()
                    .map(|(i, v)| {
                        let face = self.cells[d - 1][*i];
                        let coef = if v.is_one() { 1 } else { -1 };
                        BoundaryTerm { sigma: face.sigma.to_vec(), omega: face.omega.to_vec(), coef }
                    })
                    .collect();
                boundary.push(entries);
            }
        }
        ChainDump { cells, boundary }
    }
}

pub fn oracle_betti(c: &MomentAngleCellComplex) -> Vec<usize> {
    c.betti()
}

/// Debug dump `{"cells":[{"sigma":[...],"omega":[...]}],"boundary":[...]}`;
/// `boundary[i]` lists the terms of `∂ cells[i]`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainDump {
    pub cells: Vec<CellReport>,
    pub boundary: Vec<Vec<BoundaryTerm>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub sigma: Vec<u32>,
    pub omega: Vec<u32>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryTerm {
    pub sigma: Vec<u32>,
    pub omega: Vec<u32>,
    pub coef: i32,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti_of(k: &SimplicialComplex) -> Vec<usize> {
        let c = build(k).unwrap();
        assert!(c.check_d_squared());
        assert_eq!(c.total_cells() as u128, cell_count(k));
        c.betti()
    }

    #[test]
    fn circle_disk_sphere() {
        assert_eq!(betti_of(&SimplicialComplex::empty_face_only(1)), vec![1, 1]);
        assert_eq!(build(&SimplicialComplex::simplex(0)).unwrap().total_cells(), 3);
        assert_eq!(betti_of(&SimplicialComplex::simplex(0)), vec![1]);
        let s3 = SimplicialComplex::boundary_simplex(1);
        assert_eq!(build(&s3).unwrap().total_cells(), 8);
        assert_eq!(betti_of(&s3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn examples() {
        assert_eq!(betti_of(&SimplicialComplex::cycle(4).unwrap()), vec![1, 0, 0, 2, 0, 0, 1]);
        for k in 0..=3 {
            assert_eq!(betti_of(&SimplicialComplex::simplex(k)), vec![1]);
        }
        assert_eq!(betti_of(&SimplicialComplex::boundary_simplex(2)), vec![1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn resource_limit() {
        let k = SimplicialComplex::simplex(5);
        let err = build_with_limit(&k, 100).unwrap_err();
        assert!(matches!(err, MacError::Resource(_)));
    }

    #[test]
    fn dump_lists_every_cell() {
        let c = build(&SimplicialComplex::boundary_simplex(1)).unwrap();
        let d = c.dump();
        assert_eq!(d.cells.len(), 8);
        assert_eq!(d.boundary.len(), 8);
    }
}

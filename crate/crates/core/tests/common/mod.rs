//! Brute-force oracles and complex corpora shared by the integration tests.
//! Nothing here calls the library's enumeration code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mac_core::generate::{random_complex, random_family};
use mac_core::{NonfaceFamily, SimplicialComplex, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn vs(v: &[u32]) -> VertexSet {
    v.iter().copied().collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Downward closure of the facets, built by repeatedly deleting one vertex.
pub fn closure_faces(k: &SimplicialComplex) -> BTreeSet<u64> {
    let mut faces = BTreeSet::new();
    let mut stack: Vec<u64> = k.facets().iter().map(|f| f.bits()).collect();
    while let Some(f) = stack.pop() {
        if !faces.insert(f) {
            continue;
        }
        for i in 0..64 {
            if f & (1 << i) != 0 {
                stack.push(f & !(1 << i));
            }
        }
    }
    faces
}

/// Minimal non-faces from the explicit face list.
pub fn brute_nonfaces(k: &SimplicialComplex) -> Vec<VertexSet> {
    let faces = closure_faces(k);
    let n = k.vertex_count();
    let mut out = Vec::new();
    for m in 0u64..1 << n {
        if m.count_ones() < 2 || faces.contains(&m) {
            continue;
        }
        if (0..n).filter(|i| m & (1 << i) != 0).all(|i| faces.contains(&(m & !(1 << i)))) {
            out.push(VertexSet::from_bits(m));
        }
    }
    out
}

/// Faces of `K(M, [n])` by enumerating every subset of `[n]`.
pub fn brute_reconstruct_faces(members: &[VertexSet], n: usize) -> BTreeSet<u64> {
    (0u64..1 << n).filter(|s| members.iter().all(|m| m.bits() & !s != 0)).collect()
}

/// Every simplicial complex on `[n]` containing all singletons.
pub fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    let mut candidates: Vec<u64> = (0u64..1 << n).filter(|s| s.count_ones() >= 2).collect();
    candidates.sort_by_key(|s| (s.count_ones(), *s));
    let mut faces: BTreeSet<u64> = (0..n).map(|i| 1u64 << i).collect();
    faces.insert(0);
    let mut out = Vec::new();
    fn rec(idx: usize, cands: &[u64], faces: &mut BTreeSet<u64>, n: usize, out: &mut Vec<SimplicialComplex>) {
        if idx == cands.len() {
            let facets = faces.iter().map(|f| VertexSet::from_bits(*f));
            out.push(SimplicialComplex::from_facets(n, facets).unwrap());
            return;
        }
        let s = cands[idx];
        rec(idx + 1, cands, faces, n, out);
        let boundary_ok = (0..n).filter(|i| s & (1 << i) != 0).all(|i| faces.contains(&(s & !(1 << i))));
        if boundary_ok {
            faces.insert(s);
            rec(idx + 1, cands, faces, n, out);
            faces.remove(&s);
        }
    }
    rec(0, &candidates, &mut faces, n, &mut out);
    out
}

pub fn random_complexes(count: usize, max_n: usize, seed: u64) -> Vec<SimplicialComplex> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = 1 + (i % max_n);
            random_complex(n, &mut r)
        })
        .collect()
}

pub fn random_families(count: usize, max_n: usize, seed: u64) -> Vec<NonfaceFamily> {
    let mut r = rng(seed);
    (0..count).map(|i| random_family(2 + i % (max_n - 1), &mut r)).collect()
}

/// Graded convolution of two Betti vectors.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Coefficients of `∏ (1 + t^d)`.
pub fn sphere_product_poincare(dims: &[u32]) -> Vec<usize> {
    dims.iter().fold(vec![1usize], |acc, d| {
        convolve(&acc, &{
            let mut f = vec![0usize; *d as usize + 1];
            f[0] = 1;
            f[*d as usize] = 1;
            f
        })
    })
}

pub fn is_pairwise_intersecting(members: &[VertexSet]) -> bool {
    members.iter().enumerate().all(|(i, a)| members[i + 1..].iter().all(|b| a.intersects(*b)))
}

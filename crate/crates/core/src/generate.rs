//! Named complex families and seeded random complexes.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::error::{MacError, Result};
use crate::nonface::NonfaceFamily;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Family {
    Simplex,
    Boundary,
    Cycle,
    CrossPolytope,
    Random,
}

/// `size` is the dimension for `simplex`/`boundary`, the length for
/// `cycle`, the number of `∂Δ¹` factors for `cross_polytope` and the vertex
/// count for `random`.
pub fn generate(family: Family, size: usize, seed: u64) -> Result<SimplicialComplex> {
    match family {
        Family::Simplex | Family::Boundary if size >= MAX_VERTICES => {
            Err(MacError::Input(format!("dimension {size} too large")))
        }
        Family::Simplex => Ok(SimplicialComplex::simplex(size)),
        Family::Boundary if size == 0 => Err(MacError::Input("boundary family needs dimension ≥ 1".into())),
        Family::Boundary => Ok(SimplicialComplex::boundary_simplex(size)),
        Family::Cycle => SimplicialComplex::cycle(size),
        Family::CrossPolytope => SimplicialComplex::cross_polytope(size),
        Family::Random => {
            if size == 0 || size > MAX_VERTICES {
                return Err(MacError::Input(format!("random complex needs 1 ≤ n ≤ {MAX_VERTICES}")));
            }
            Ok(random_complex(size, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
    }
}

/// Samples a facet set on `n` vertices and forces every singleton to be a face.
pub fn random_complex<R: Rng>(n: usize, rng: &mut R) -> SimplicialComplex {
    let count = rng.gen_range(1..=n + 2);
    let bias: f64 = rng.gen_range(0.3..0.8);
    let mut facets: Vec<VertexSet> =
        (0..count).map(|_| (1..=n as u32).filter(|_| rng.gen_bool(bias)).collect()).collect();
    facets.extend((1..=n as u32).map(VertexSet::singleton));
    SimplicialComplex::from_facets_unchecked(n, facets)
}

/// Samples an antichain of subsets of size ≥ 2 on `n ≥ 2` vertices.
pub fn random_family<R: Rng>(n: usize, rng: &mut R) -> NonfaceFamily {
    assert!((2..=MAX_VERTICES).contains(&n));
    let target = rng.gen_range(0..=n + 1);
    let mut members: Vec<VertexSet> = Vec::new();
    for _ in 0..4 * target {
        if members.len() == target {
            break;
        }
        let size = rng.gen_range(2..=n.min(4));
        let mut m = VertexSet::EMPTY;
        while m.len() < size {
            m.insert(rng.gen_range(1..=n as u32));
        }
        if members.iter().all(|x| !x.is_subset(m) && !m.is_subset(*x)) {
            members.push(m);
        }
    }
    NonfaceFamily::new(n, members).expect("sampled family is an antichain")
}

//! Seeded pseudo-random modules: cokernels of random maps between projectives,
//! followed by a random change of basis at every vertex.

use alloc::vec::Vec;

use rand_core::RngCore;

use super::{ProjectiveMap, RepEngine, Representation};
use crate::field::{Field, Rationals};
use crate::matrix::QMatrix;

fn below<R: RngCore>(rng: &mut R, n: u32) -> u32 {
    rng.next_u32() % n
}

fn small<R: RngCore>(rng: &mut R) -> i64 {
    below(rng, 5) as i64 - 2
}

/// Random entries in `[-2, 2]` between up to `max_summands` projectives on
/// each side.
pub fn random_projective_map<R: RngCore>(
    engine: &RepEngine,
    rng: &mut R,
    max_summands: usize,
) -> ProjectiveMap {
    let n = engine.vertex_count() as u32;
    let pick =
        |rng: &mut R, k: usize| -> Vec<usize> { (0..k).map(|_| below(rng, n) as usize).collect() };
    let cod_len = 1 + below(rng, max_summands as u32) as usize;
    let dom_len = below(rng, max_summands as u32 + 1) as usize;
    let codomain = pick(rng, cod_len);
    let domain = pick(rng, dom_len);
    let a = &engine.alg;
    let entries = codomain
        .iter()
        .map(|&x| {
            domain
                .iter()
                .map(|&y| {
                    (0..a.dim_pair(x, y))
                        .map(|_| Rationals.from_int(small(rng)))
                        .collect()
                })
                .collect()
        })
        .collect();
    ProjectiveMap {
        domain,
        codomain,
        entries,
    }
}

fn random_invertible<R: RngCore>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        let m = QMatrix::from_fn(Rationals, n, n, |_, _| Rationals.from_int(small(rng)));
        if m.is_invertible() {
            return m;
        }
    }
}

/// A nonzero module of total dimension at most `max_dim`, satisfying the
/// relations by construction.
pub fn random_representation<R: RngCore>(
    engine: &RepEngine,
    rng: &mut R,
    max_dim: usize,
) -> Representation {
    let q = engine.quiver();
    for _ in 0..64 {
        let f = random_projective_map(engine, rng, 2);
        let m = engine.cokernel(&f);
        if m.is_zero() || m.total_dim() > max_dim {
            continue;
        }
        let g: Vec<QMatrix> = m.dims.iter().map(|&d| random_invertible(rng, d)).collect();
        return m.change_basis(q, &g);
    }
    let x = below(rng, engine.vertex_count() as u32) as usize;
    engine.simple(x)
}

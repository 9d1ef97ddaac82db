//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use toupie_core::field::{format_scalar, scalar, FieldSpec};
use toupie_core::ideal::close_ideal;
use toupie_core::rep::{random_representation, RepEngine, Representation};
use toupie_core::toupie::{PathRef, ToupiePresentation, ToupieRelation};

pub const P: i64 = 101;

fn below(rng: &mut ChaCha8Rng, n: u32) -> u32 {
    rng.next_u32() % n
}

fn modp(x: i64) -> i64 {
    x.rem_euclid(P)
}

fn inv(x: i64) -> i64 {
    let mut r = 1;
    let (mut b, mut e) = (modp(x), P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Reduces a rational given in canonical text form.
fn scalar_modp(s: &toupie_core::field::Scalar) -> i64 {
    let t = format_scalar(s);
    match t.split_once('/') {
        Some((n, d)) => modp(n.parse::<i64>().unwrap()) * inv(d.parse::<i64>().unwrap()) % P,
        None => modp(t.parse::<i64>().unwrap()),
    }
}

/// Row-reduced basis of a span over F_101.
#[derive(Debug, Clone)]
pub struct SpanModP {
    rows: Vec<(usize, Vec<i64>)>,
}

impl SpanModP {
    pub fn new(vectors: &[Vec<i64>]) -> Self {
        let mut s = SpanModP { rows: Vec::new() };
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = modp(*x - c * r);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<i64>) {
        let v = self.reduce(v.into_iter().map(modp).collect());
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let s = inv(v[piv]);
            let v: Vec<i64> = v.iter().map(|x| x * s % P).collect();
            for (_, row) in self.rows.iter_mut() {
                let c = row[piv];
                if c != 0 {
                    for (x, r) in row.iter_mut().zip(&v) {
                        *x = modp(*x - c * r);
                    }
                }
            }
            self.rows.push((piv, v));
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// One representative per projective point.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let t = self.rows.first().map_or(0, |r| r.1.len());
        let mut out = Vec::new();
        let mut c = vec![0i64; d];
        loop {
            if c.iter().find(|&&x| x != 0) == Some(&1) {
                let mut v = vec![0; t];
                for (k, (_, row)) in self.rows.iter().enumerate() {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = (*x + c[k] * r) % P;
                    }
                }
                out.push(v);
            }
            let mut k = 0;
            while k < d {
                c[k] += 1;
                if c[k] < P {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == d {
                return out;
            }
        }
    }
}

/// `W` over F_101 straight from the presentation: combination rows plus
/// `e_i` for every branch carrying a monomial.
pub fn relation_space_modp(p: &ToupiePresentation) -> SpanModP {
    let t = p.t();
    let mut vs = Vec::new();
    for r in &p.relations {
        match r {
            ToupieRelation::Combination(c) => vs.push(c.iter().map(scalar_modp).collect()),
            ToupieRelation::Monomial(q) => {
                let mut e = vec![0; t];
                e[q.branch] = 1;
                vs.push(e);
            }
        }
    }
    SpanModP::new(&vs)
}

/// Supports of minimal relations with at least two branches, by exhaustive
/// enumeration of the points of `W`.
pub fn minimal_supports_modp(w: &SpanModP) -> BTreeSet<Vec<usize>> {
    let mut found = BTreeSet::new();
    for v in w.points() {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        if support.len() < 2 || found.contains(&support) {
            continue;
        }
        let k = support.len();
        let minimal = (1..(1u32 << k) - 1).all(|mask| {
            let mut u = vec![0; v.len()];
            for (b, &i) in support.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    u[i] = v[i];
                }
            }
            !w.contains(&u)
        });
        if minimal {
            found.insert(support);
        }
    }
    found
}

/// Deterministic small integer presentations with `t <= 6` and `dim W <= 3`
/// whose relation space has the same dimension over Q and over F_101.
pub fn oracle_instances(n: usize, seed: u64) -> Vec<ToupiePresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let t = 2 + below(&mut rng, 5) as usize;
        let lengths: Vec<usize> = (0..t)
            .map(|_| {
                if below(&mut rng, 6) == 0 {
                    1
                } else {
                    2 + below(&mut rng, 2) as usize
                }
            })
            .collect();
        let mut relations = Vec::new();
        for _ in 0..1 + below(&mut rng, 3) {
            let row: Vec<i64> = lengths
                .iter()
                .map(|&l| {
                    if l >= 2 {
                        below(&mut rng, 5) as i64 - 2
                    } else {
                        0
                    }
                })
                .collect();
            if row.iter().any(|&x| x != 0) {
                relations.push(ToupieRelation::Combination(
                    row.into_iter().map(scalar).collect(),
                ));
            }
        }
        if below(&mut rng, 4) == 0 {
            let b = below(&mut rng, t as u32) as usize;
            if lengths[b] >= 2 {
                let end = if below(&mut rng, 2) == 0 {
                    lengths[b]
                } else {
                    2
                };
                relations.push(ToupieRelation::Monomial(PathRef::new(b, 0, end)));
            }
        }
        let p = ToupiePresentation::new(FieldSpec::Rational, lengths, relations);
        if !p.validate().is_valid() {
            continue;
        }
        let w = relation_space_modp(&p);
        let Ok(c) = close_ideal(&p) else { continue };
        if w.dim() == 0 || w.dim() > 3 || t - w.dim() != c.m {
            continue;
        }
        out.push(p);
    }
    out
}

/// Failed properties of a single module, as readable lines.
pub fn module_failures(e: &RepEngine, m: &Representation, tag: &str) -> Vec<String> {
    let mut bad = Vec::new();
    for x in 0..e.vertex_count() {
        let h = e.hom_basis(&e.projective(x), m).len();
        if h != m.dims[x] {
            bad.push(format!(
                "{tag}: dim Hom(P_{x}, M) = {h}, dim M_{x} = {}",
                m.dims[x]
            ));
        }
    }
    if !e.cover_is_minimal(m) {
        bad.push(format!("{tag}: projective cover is not minimal"));
    }
    if m.total_dim() <= 8 {
        let (a, b) = (e.id(m), e.id_by_coresolution(m));
        if a != b {
            bad.push(format!(
                "{tag}: id via the opposite algebra {a}, via coresolution {b}"
            ));
        }
    }
    bad
}

/// Projective and injective checks at every vertex.
pub fn algebra_failures(e: &RepEngine, name: &str) -> Vec<String> {
    let mut bad = Vec::new();
    for x in 0..e.vertex_count() {
        let p = e.projective(x);
        let i = e.injective(x);
        if !e.tau(&p).is_zero() {
            bad.push(format!("{name}: tau P_{x} is nonzero"));
        }
        if e.pd(&p) != 0 {
            bad.push(format!("{name}: pd P_{x} is nonzero"));
        }
        if e.id(&i) != 0 {
            bad.push(format!("{name}: id I_{x} is nonzero"));
        }
        bad.extend(module_failures(e, &p, &format!("{name} P_{x}")));
        bad.extend(module_failures(e, &i, &format!("{name} I_{x}")));
    }
    bad
}

/// `count` seeded random modules spread round-robin over `algebras`.
pub fn random_module_failures(
    algebras: &[(String, RepEngine)],
    count: usize,
    seed: u64,
) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for k in 0..count {
        let (name, e) = &algebras[k % algebras.len()];
        let m = random_representation(e, &mut rng, 8);
        bad.extend(module_failures(e, &m, &format!("{name} random #{k}")));
    }
    bad
}

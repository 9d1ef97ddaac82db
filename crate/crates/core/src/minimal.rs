//! Minimal relations and the linkage graph between branches.
//!
//! A vector `v` of `W` with support `J`, `|J| >= 2`, is a minimal relation when
//! no restriction of `v` to a nonempty proper subset of `J` lies in `W`. Inside
//! `W_J = {v in W : supp v in J}` the vectors failing this form a finite union
//! of subspaces: `{v_i = 0}` for `i in J`, and `{v|_J' in W}` for `J' < J`. Over
//! an infinite field a minimal relation with support `J` exists iff each of
//! them is proper, and a witness can be found by a finite sweep.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, FieldSpec, Rationals, Scalar};
use crate::ideal::{IdealClosure, IdealError};
use crate::matrix::QMatrix;

pub const MAX_BRANCHES: usize = 16;
const SWEEP_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRelation {
    /// 0-based branch indices, increasing.
    pub support: Vec<usize>,
    pub witness: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRelationCatalog {
    pub t: usize,
    /// Ordered by support size, then lexicographically.
    pub relations: Vec<MinimalRelation>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub linkage_edges: Vec<(usize, usize)>,
}

impl MinimalRelationCatalog {
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.relations.iter().map(|r| r.support.clone()).collect()
    }

    /// `[w_i]`: `i` together with every branch linked to it.
    pub fn class_of(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .linkage_edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.push(i);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every pair of distinct branches shares a minimal relation.
    pub fn is_simply_connected(&self) -> bool {
        self.linkage_edges.len() == self.t * self.t.saturating_sub(1) / 2
    }
}

/// Literal check of the definition of a minimal relation.
pub fn is_minimal_relation(w_ann: &QMatrix, v: &[Scalar]) -> bool {
    let f = Rationals;
    let support: Vec<usize> = (0..v.len()).filter(|&i| !f.is_zero(&v[i])).collect();
    if support.len() < 2 || !in_w(w_ann, v) {
        return false;
    }
    let k = support.len();
    for mask in 1..(1u32 << k) - 1 {
        let mut r = vec![f.zero(); v.len()];
        for (bit, &i) in support.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                r[i] = v[i].clone();
            }
        }
        if in_w(w_ann, &r) {
            return false;
        }
    }
    true
}

fn in_w(w_ann: &QMatrix, v: &[Scalar]) -> bool {
    w_ann.mul_vec(v).iter().all(|x| Rationals.is_zero(x))
}

fn subsets_of_size(t: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, t: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..t {
            cur.push(i);
            rec(i + 1, t, k, cur, out);
            cur.pop();
        }
    }
    rec(0, t, k, &mut cur, &mut out);
    out
}

/// Integer coefficient tuples of length `d`, by increasing max-norm, each shell
/// in lexicographic order of the entry sequence `0, 1, -1, 2, -2, ...`.
pub(crate) struct Spiral {
    n: u64,
    keys: Vec<u64>,
    done: bool,
}

impl Spiral {
    pub(crate) fn new(d: usize) -> Self {
        Spiral {
            n: 1,
            keys: vec![0; d],
            done: d == 0,
        }
    }

    /// Odometer step over keys `0..=2n`, most significant digit first;
    /// moves to the next shell after wrapping.
    fn step(&mut self) {
        let base = 2 * self.n + 1;
        for pos in (0..self.keys.len()).rev() {
            self.keys[pos] += 1;
            if self.keys[pos] < base {
                return;
            }
            self.keys[pos] = 0;
        }
        self.n += 1;
    }
}

impl Iterator for Spiral {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        fn value(key: u64) -> i64 {
            if key % 2 == 1 {
                key.div_ceil(2) as i64
            } else {
                -((key / 2) as i64)
            }
        }
        if self.done {
            return None;
        }
        loop {
            let on_shell = self.keys.iter().any(|&k| k >= 2 * self.n - 1);
            let out = on_shell.then(|| self.keys.iter().map(|&k| value(k)).collect());
            self.step();
            if out.is_some() {
                return out;
            }
        }
    }
}

pub(crate) fn spiral(d: usize, budget: usize) -> Vec<Vec<i64>> {
    Spiral::new(d).take(budget).collect()
}

/// Finds `c` with `M c != 0` for every matrix `M` in `avoid`. Every `M` must
/// be nonzero. Falls back to the moment curve `(1, s, s^2, ...)`: each `M c(s)`
/// is a nonzero polynomial vector of degree `< d`, so it vanishes for fewer
/// than `d` values of `s`.
fn avoid_all(d: usize, avoid: &[QMatrix]) -> Vec<Scalar> {
    let f = Rationals;
    let good = |c: &[Scalar]| {
        avoid
            .iter()
            .all(|m| m.mul_vec(c).iter().any(|x| !f.is_zero(x)))
    };
    for c in Spiral::new(d).take(SWEEP_BUDGET) {
        let c: Vec<Scalar> = c.iter().map(|&x| f.from_int(x)).collect();
        if good(&c) {
            return c;
        }
    }
    let mut s = 1i64;
    loop {
        let mut c = Vec::with_capacity(d);
        let mut acc = f.one();
        for _ in 0..d {
            c.push(acc.clone());
            acc = f.mul(&acc, &f.from_int(s));
        }
        if good(&c) {
            return c;
        }
        s += 1;
    }
}

pub fn minimal_relations(
    c: &IdealClosure<Rationals>,
) -> Result<MinimalRelationCatalog, IdealError> {
    if c.field_spec() != FieldSpec::Rational {
        return Err(IdealError::PrimeFieldUnsupported);
    }
    let t = c.t();
    if t > MAX_BRANCHES {
        return Err(IdealError::Capacity {
            t,
            max: MAX_BRANCHES,
        });
    }
    let f = Rationals;
    let ann = c.w.annihilator();
    let mut relations = Vec::new();
    for k in 2..=t {
        for support in subsets_of_size(t, k) {
            let wj = c.w.restrict_to_coords(&support);
            if wj.is_zero() {
                continue;
            }
            // v = coefficients * basis; bt has the basis vectors as columns.
            let bt = wj.basis_matrix().transpose();
            let d = wj.dim();
            let mut avoid: Vec<QMatrix> = Vec::new();
            let mut proper = true;
            for &i in &support {
                let m = bt.select_rows(&[i]);
                if m.is_zero() {
                    proper = false;
                    break;
                }
                avoid.push(m);
            }
            if !proper {
                continue;
            }
            // Proper subsets J' containing the first element of J cover all
            // J' up to complement.
            let rest = &support[1..];
            for mask in 0..(1u32 << rest.len()) {
                if mask == (1u32 << rest.len()) - 1 {
                    continue;
                }
                let mut proj = QMatrix::zeros(f, t, t);
                proj.set(support[0], support[0], f.one());
                for (bit, &i) in rest.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        proj.set(i, i, f.one());
                    }
                }
                let m = ann.mul(&proj).mul(&bt);
                if m.is_zero() {
                    proper = false;
                    break;
                }
                avoid.push(m);
            }
            if !proper {
                continue;
            }
            let coeffs = avoid_all(d, &avoid);
            let witness = bt.mul_vec(&coeffs);
            debug_assert!(is_minimal_relation(&ann, &witness));
            relations.push(MinimalRelation { support, witness });
        }
    }
    let mut linkage_edges = Vec::new();
    for r in &relations {
        for (x, &a) in r.support.iter().enumerate() {
            for &b in &r.support[x + 1..] {
                linkage_edges.push((a, b));
            }
        }
    }
    linkage_edges.sort_unstable();
    linkage_edges.dedup();
    Ok(MinimalRelationCatalog {
        t,
        relations,
        linkage_edges,
    })
}

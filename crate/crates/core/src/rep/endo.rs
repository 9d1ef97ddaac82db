//! Endomorphism rings: indecomposability, splitting and isomorphism search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{hom_basis, ModuleMap, Representation};
use crate::field::{Field, Rationals, Scalar};
use crate::matrix::QMatrix;
use crate::minimal::spiral;
use crate::quiver::GeneralBoundQuiver;
use crate::subspace::Subspace;

const SPLIT_BUDGET: usize = 200;
const ISO_SWEEP: usize = 64;
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Indecomposability {
    Yes,
    /// A nontrivial splitting `M = U + V`.
    No(Vec<Representation>),
    Unknown,
}

/// `dim End(M)/rad End(M) = 1` is tested with the trace form, which over a
/// field of characteristic 0 has radical exactly `rad End(M)`. Otherwise an
/// endomorphism with two distinct rational eigenvalues splits `M` by Fitting's
/// lemma.
pub fn is_indecomposable(q: &GeneralBoundQuiver, m: &Representation) -> Indecomposability {
    if m.is_zero() {
        return Indecomposability::No(Vec::new());
    }
    let e = hom_basis(q, m, m);
    let d = e.len();
    let gram = QMatrix::from_fn(Rationals, d, d, |i, j| e[i].compose(&e[j]).trace());
    if gram.rank() == 1 {
        return Indecomposability::Yes;
    }
    let mut candidates: Vec<ModuleMap> = e.clone();
    for c in spiral(d, SPLIT_BUDGET) {
        if c.iter().filter(|&&x| x != 0).count() < 2 {
            continue;
        }
        let mut phi = ModuleMap::zero(m, m);
        for (k, &x) in c.iter().enumerate() {
            if x != 0 {
                phi = phi.add(&e[k].scale(&Rationals.from_int(x)));
            }
        }
        candidates.push(phi);
    }
    for phi in &candidates {
        if let Some(parts) = fitting_split(q, m, phi) {
            return Indecomposability::No(parts);
        }
    }
    Indecomposability::Unknown
}

/// Splits `m` into indecomposable summands. The flag is `false` when some
/// summand could not be certified.
pub fn decompose(q: &GeneralBoundQuiver, m: &Representation) -> (Vec<Representation>, bool) {
    match is_indecomposable(q, m) {
        Indecomposability::Yes => (vec![m.clone()], true),
        Indecomposability::Unknown => (vec![m.clone()], false),
        Indecomposability::No(parts) => {
            let mut out = Vec::new();
            let mut complete = true;
            for p in parts {
                let (sub, ok) = decompose(q, &p);
                out.extend(sub);
                complete &= ok;
            }
            (out, complete)
        }
    }
}

fn fitting_split(
    q: &GeneralBoundQuiver,
    m: &Representation,
    phi: &ModuleMap,
) -> Option<Vec<Representation>> {
    let f = Rationals;
    let mut roots: Vec<Scalar> = Vec::new();
    for b in &phi.blocks {
        if b.rows() == 0 {
            continue;
        }
        for r in rational_roots(&char_poly(b))? {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    if roots.len() < 2 {
        return None;
    }
    roots.sort();
    let c = &roots[0];
    let n = m.total_dim();
    let powered: Vec<QMatrix> = phi
        .blocks
        .iter()
        .map(|b| b.sub(&QMatrix::identity(f, b.rows()).scale(c)).pow(n))
        .collect();
    let kernel: Vec<QMatrix> = powered
        .iter()
        .map(|p| QMatrix::from_columns(f, p.cols(), &p.kernel_vectors()))
        .collect();
    let image: Vec<QMatrix> = powered
        .iter()
        .map(|p| {
            let s = Subspace::row_space(&p.transpose());
            s.basis_matrix().transpose()
        })
        .collect();
    let u = m.subrepresentation(q, &kernel);
    let v = m.subrepresentation(q, &image);
    (!u.is_zero() && !v.is_zero()).then(|| vec![u, v])
}

/// Characteristic polynomial `det(x I - a)`, coefficients from degree 0 up,
/// by the Faddeev-LeVerrier recursion.
pub fn char_poly(a: &QMatrix) -> Vec<Scalar> {
    let f = Rationals;
    let n = a.rows();
    let mut c = vec![f.zero(); n + 1];
    c[n] = f.one();
    let mut mk = QMatrix::zeros(f, n, n);
    for k in 1..=n {
        mk = a
            .mul(&mk)
            .add(&QMatrix::identity(f, n).scale(&c[n - k + 1]));
        let tr = a.mul(&mk).trace();
        c[n - k] = -tr / f.from_int(k as i64);
    }
    c
}

fn divisors(n: &BigInt) -> Option<Vec<u128>> {
    let mut n = n.abs().to_u128()?;
    if n == 0 {
        return Some(vec![]);
    }
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut p = 2u128;
    while p * p <= n && p <= TRIAL_DIVISION_LIMIT as u128 {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        let limit = TRIAL_DIVISION_LIMIT as u128;
        if n > limit * limit {
            return None;
        }
        primes.push((n, 1));
    }
    let mut out = vec![1u128];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        out = next;
    }
    Some(out)
}

fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    poly.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

/// Rational roots via the rational root theorem; `None` when the
/// coefficients are too large to factor.
pub fn rational_roots(poly: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    if ints.iter().all(|c| c.is_zero()) {
        return Some(roots);
    }
    if ints[0].is_zero() {
        roots.push(Scalar::zero());
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().expect("nonempty"))?;
    let poly: Vec<Scalar> = ints.iter().cloned().map(Scalar::from_integer).collect();
    let mut found: Vec<Scalar> = Vec::new();
    for p in &ps {
        for qd in &qs {
            for sign in [1i32, -1] {
                let mut r = Scalar::new(BigInt::from(*p), BigInt::from(*qd));
                if sign < 0 {
                    r = -r;
                }
                if !found.contains(&r) && eval(&poly, &r).is_zero() {
                    found.push(r);
                }
            }
        }
    }
    found.sort();
    roots.extend(found);
    Some(roots)
}

/// An isomorphism `M -> N`, or `None` when there is none.
///
/// After a short sweep over small combinations of a `Hom(M, N)` basis
/// `h_1..h_d`, the search walks the curve `sum s^k h_k`: the product of the
/// vertex determinants along it is a polynomial of degree at most
/// `dim M * (d - 1)`, so it is identically zero (no isomorphism exists) unless
/// one of that many plus one sample points gives an isomorphism.
pub fn iso(q: &GeneralBoundQuiver, m: &Representation, n: &Representation) -> Option<ModuleMap> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    let h = hom_basis(q, m, n);
    let d = h.len();
    if d == 0 {
        return None;
    }
    let f = Rationals;
    let combine = |c: &[Scalar]| {
        let mut acc = ModuleMap::zero(m, n);
        for (k, x) in c.iter().enumerate() {
            if !f.is_zero(x) {
                acc = acc.add(&h[k].scale(x));
            }
        }
        acc
    };
    for c in spiral(d, ISO_SWEEP) {
        let c: Vec<Scalar> = c.iter().map(|&x| f.from_int(x)).collect();
        let g = combine(&c);
        if g.is_isomorphism() {
            return Some(g);
        }
    }
    let degree = m.total_dim() * (d - 1);
    for s in 0..=degree as i64 + 1 {
        let mut c = Vec::with_capacity(d);
        let mut acc = f.one();
        for _ in 0..d {
            c.push(acc.clone());
            acc = f.mul(&acc, &f.from_int(s));
        }
        let g = combine(&c);
        if g.is_isomorphism() {
            return Some(g);
        }
    }
    None
}

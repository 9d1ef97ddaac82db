//! The ideal generated by a toupie presentation.
//!
//! In a toupie quiver the only parallel paths are the branches. For a
//! combination generator `rho` (a sum of full branches), any product `u rho v`
//! with `u` or `v` a nontrivial path is zero, because no arrow enters `0` and no
//! arrow leaves `inf`. So the combination generators contribute exactly their
//! span to `e_0 I e_inf`. A monomial generator on a subpath of branch `i`
//! contributes every subpath that contains it, and it puts the full branch `w_i`
//! into `I`. That gives
//!
//! `W = e_0 I e_inf = span(combinations) + span{e_i : branch i contains a monomial}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, FieldSpec, Rationals, Scalar};
use crate::subspace::Subspace;
use crate::toupie::{PathRef, ToupiePresentation, ToupieRelation, ValidationIssue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    Invalid(Vec<ValidationIssue>),
    /// A coefficient has no image in the prime field.
    ScalarNotInField,
    /// The operation needs an infinite field.
    PrimeFieldUnsupported,
    Capacity {
        t: usize,
        max: usize,
    },
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::Invalid(issues) => {
                f.write_str("invalid presentation")?;
                for i in issues {
                    write!(f, "; {i}")?;
                }
                Ok(())
            }
            IdealError::ScalarNotInField => f.write_str("coefficient has no image in the field"),
            IdealError::PrimeFieldUnsupported => f.write_str(
                "minimal-relation analysis needs an infinite field (use field rational)",
            ),
            IdealError::Capacity { t, max } => {
                write!(f, "t = {t} exceeds the supported maximum {max}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealClosure<F: Field> {
    pub lengths: Vec<usize>,
    /// Monomial generators, in input order.
    pub monomials: Vec<PathRef>,
    /// Per branch, every subpath `(a, b)` lying in `I`, sorted.
    pub zero_subpaths: Vec<Vec<(usize, usize)>>,
    pub w: Subspace<F>,
    pub m: usize,
    /// 0-based indices of branches lying in `I`.
    pub branches_in_i: Vec<usize>,
}

pub fn close_ideal(p: &ToupiePresentation) -> Result<IdealClosure<Rationals>, IdealError> {
    close_ideal_over(p, Rationals)
}

pub fn close_ideal_over<F: Field>(
    p: &ToupiePresentation,
    field: F,
) -> Result<IdealClosure<F>, IdealError> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(IdealError::Invalid(report.issues));
    }
    let t = p.t();
    let lengths = p.lengths().to_vec();
    let mut monomials = Vec::new();
    let mut gens: Vec<Vec<F::Elem>> = Vec::new();
    for r in &p.relations {
        match r {
            ToupieRelation::Monomial(pr) => {
                monomials.push(*pr);
                let mut e = vec![field.zero(); t];
                e[pr.branch] = field.one();
                gens.push(e);
            }
            ToupieRelation::Combination(c) => {
                let v = c
                    .iter()
                    .map(|x| field.from_scalar(x).ok_or(IdealError::ScalarNotInField))
                    .collect::<Result<Vec<_>, _>>()?;
                gens.push(v);
            }
        }
    }
    let w = Subspace::span(field, t, &gens).expect("generators have length t");
    let branches_in_i: Vec<usize> = (0..t)
        .filter(|&i| {
            let mut e = vec![w.field().zero(); t];
            e[i] = w.field().one();
            w.contains(&e).expect("length t")
        })
        .collect();
    let mut zero_subpaths = Vec::with_capacity(t);
    for (i, &l) in lengths.iter().enumerate() {
        let mut z = Vec::new();
        for a in 0..l {
            for b in a + 1..=l {
                let sub = PathRef::new(i, a, b);
                let by_monomial = monomials.iter().any(|mp| sub.contains(mp));
                let full = a == 0 && b == l && branches_in_i.contains(&i);
                if by_monomial || full {
                    z.push((a, b));
                }
            }
        }
        zero_subpaths.push(z);
    }
    let m = t - w.dim();
    Ok(IdealClosure {
        lengths,
        monomials,
        zero_subpaths,
        w,
        m,
        branches_in_i,
    })
}

impl<F: Field> IdealClosure<F> {
    pub fn t(&self) -> usize {
        self.lengths.len()
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.w.field().spec()
    }

    pub fn is_zero_subpath(&self, branch: usize, a: usize, b: usize) -> bool {
        self.zero_subpaths[branch].binary_search(&(a, b)).is_ok()
    }

    /// Inclusion-minimal zero subpaths of `branch`.
    pub fn minimal_zero_subpaths(&self, branch: usize) -> Vec<(usize, usize)> {
        let z = &self.zero_subpaths[branch];
        z.iter()
            .copied()
            .filter(|&(a, b)| !z.iter().any(|&(c, d)| (c, d) != (a, b) && a <= c && d <= b))
            .collect()
    }

    pub fn relations_per_branch(&self, branch: usize) -> usize {
        self.minimal_zero_subpaths(branch).len()
    }

    pub fn relation_counts(&self) -> Vec<usize> {
        (0..self.t())
            .map(|i| self.relations_per_branch(i))
            .collect()
    }

    /// `I = 0` after closure.
    pub fn is_zero_ideal(&self) -> bool {
        self.w.is_zero() && self.monomials.is_empty()
    }

    /// The canonical parameters `lambda_3..lambda_t` when the ideal is, up to
    /// rescaling branches, generated by `w_a + lambda_i w_b - w_i`.
    ///
    /// `W` is the kernel of a `2 x t` configuration of columns. All nonzero
    /// vectors of `W` have support at least 3 exactly when those columns are
    /// pairwise independent, i.e. `t` distinct points of the projective line,
    /// which is exactly when a canonical presentation exists.
    pub fn canonical_parameters(&self) -> Option<Vec<F::Elem>> {
        let t = self.t();
        if t < 2 || !self.monomials.is_empty() || self.w.dim() + 2 != t {
            return None;
        }
        for a in 0..t {
            for b in a + 1..t {
                if !self.w.restrict_to_coords(&[a, b]).is_zero() {
                    return None;
                }
            }
        }
        let f = self.w.field().clone();
        'anchors: for a in 0..t {
            for b in 0..t {
                if a == b {
                    continue;
                }
                let mut lambdas = Vec::new();
                for i in (0..t).filter(|&i| i != a && i != b) {
                    let s = self.w.restrict_to_coords(&[a, b, i]);
                    if s.dim() != 1 {
                        continue 'anchors;
                    }
                    let v = &s.basis()[0];
                    if f.is_zero(&v[a]) || f.is_zero(&v[i]) {
                        continue 'anchors;
                    }
                    // Rescaling w_i turns v / v_a into (1, lambda_i, -1).
                    lambdas.push(f.div(&v[b], &v[a]).expect("nonzero"));
                }
                return Some(lambdas);
            }
        }
        None
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_parameters().is_some()
    }
}

impl IdealClosure<Rationals> {
    pub fn canonical_lambdas(&self) -> Option<Vec<Scalar>> {
        self.canonical_parameters()
    }
}

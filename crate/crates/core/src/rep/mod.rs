//! Representations of bound quivers and their morphisms.
//!
//! Right-module convention: the map of an arrow `a: x -> y` is a
//! `dim M_y x dim M_x` matrix acting on column vectors, and a path
//! `a_1 a_2 ... a_n` acts by `M_{a_n} ... M_{a_1}`. The projective `P_x` has
//! `(P_x)_y = e_x A e_y` with arrows acting by right multiplication.

mod endo;
mod homological;
mod random;

pub use endo::{decompose, is_indecomposable, iso, Indecomposability};
pub use homological::{Cover, Presentation, ProjectiveMap, RepEngine};
pub use random::{random_projective_map, random_representation};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::BasedAlgebra;
use crate::field::{Field, Rationals, Scalar};
use crate::matrix::QMatrix;
use crate::quiver::{GeneralBoundQuiver, Path};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepError {
    Shape(String),
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::Shape(s) => write!(f, "shape mismatch: {s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    /// One matrix per arrow, `dim(target) x dim(source)`.
    pub maps: Vec<QMatrix>,
}

/// Per-vertex matrices `N_x x M_x` of a morphism `M -> N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<QMatrix>,
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let f = Rationals;
    let mut e = vec![f.zero(); n];
    e[i] = f.one();
    e
}

/// Columns spanning the column space of `m`, in echelon-pivot order.
pub(crate) fn column_space(m: &QMatrix) -> QMatrix {
    let s = Subspace::row_space(&m.transpose());
    s.basis_matrix().transpose()
}

impl Representation {
    pub fn zero(q: &GeneralBoundQuiver) -> Self {
        Representation {
            dims: vec![0; q.vertex_count()],
            maps: q
                .arrows
                .iter()
                .map(|_| QMatrix::zeros(Rationals, 0, 0))
                .collect(),
        }
    }

    pub fn simple(q: &GeneralBoundQuiver, x: usize) -> Self {
        let mut dims = vec![0; q.vertex_count()];
        dims[x] = 1;
        Self::with_zero_maps(q, dims)
    }

    /// All arrow maps zero.
    pub fn with_zero_maps(q: &GeneralBoundQuiver, dims: Vec<usize>) -> Self {
        let maps = q
            .arrows
            .iter()
            .map(|a| QMatrix::zeros(Rationals, dims[a.target], dims[a.source]))
            .collect();
        Representation { dims, maps }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn shape_check(&self, q: &GeneralBoundQuiver) -> Result<(), RepError> {
        if self.dims.len() != q.vertex_count() {
            return Err(RepError::Shape(format!(
                "{} dimensions for {} vertices",
                self.dims.len(),
                q.vertex_count()
            )));
        }
        if self.maps.len() != q.arrows.len() {
            return Err(RepError::Shape(format!(
                "{} maps for {} arrows",
                self.maps.len(),
                q.arrows.len()
            )));
        }
        for (i, (m, a)) in self.maps.iter().zip(&q.arrows).enumerate() {
            let want = (self.dims[a.target], self.dims[a.source]);
            if m.shape() != want {
                return Err(RepError::Shape(format!(
                    "arrow {} ({}) has a {}x{} matrix, expected {}x{}",
                    i + 1,
                    a.label,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(())
    }

    /// Matrix of a path: `M_{a_n} ... M_{a_1}`.
    pub fn path_matrix(&self, p: &Path) -> QMatrix {
        let mut acc = QMatrix::identity(Rationals, self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Every relation acts as zero.
    pub fn check(&self, q: &GeneralBoundQuiver) -> Result<bool, RepError> {
        self.shape_check(q)?;
        for r in &q.relations {
            let Some((s, t)) = r.endpoints() else {
                continue;
            };
            let mut acc = QMatrix::zeros(Rationals, self.dims[t], self.dims[s]);
            for (c, p) in &r.terms {
                acc = acc.add(&self.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The action of `a` in `e_x A e_y` (local coordinates): `M_x -> M_y`.
    pub fn element_matrix(&self, alg: &BasedAlgebra, x: usize, y: usize, a: &[Scalar]) -> QMatrix {
        let f = Rationals;
        let mut acc = QMatrix::zeros(f, self.dims[y], self.dims[x]);
        for (k, &b) in alg.pair_basis(x, y).iter().enumerate() {
            if !f.is_zero(&a[k]) {
                acc = acc.add(&self.path_matrix(&alg.basis[b]).scale(&a[k]));
            }
        }
        acc
    }

    /// `D M`, a representation of the opposite quiver.
    pub fn dual(&self) -> Representation {
        Representation {
            dims: self.dims.clone(),
            maps: self.maps.iter().map(QMatrix::transpose).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// Applies the base change `g_x` at every vertex: `M'_a = g_y M_a g_x^{-1}`.
    pub fn change_basis(&self, q: &GeneralBoundQuiver, g: &[QMatrix]) -> Representation {
        let inv: Vec<QMatrix> = g
            .iter()
            .map(|m| m.inverse().expect("invertible base change"))
            .collect();
        Representation {
            dims: self.dims.clone(),
            maps: q
                .arrows
                .iter()
                .zip(&self.maps)
                .map(|(a, m)| g[a.target].mul(m).mul(&inv[a.source]))
                .collect(),
        }
    }

    /// `rad M`: the sum of the images of the arrows, as column bases per vertex.
    pub fn radical_inclusions(&self, q: &GeneralBoundQuiver) -> Vec<QMatrix> {
        (0..self.dims.len())
            .map(|x| {
                let mut acc = QMatrix::zeros(Rationals, self.dims[x], 0);
                for a in q.arrows_to(x) {
                    acc = acc.hstack(&self.maps[a]);
                }
                column_space(&acc)
            })
            .collect()
    }

    /// `soc M`: the joint kernel of the outgoing arrows.
    pub fn socle_inclusions(&self, q: &GeneralBoundQuiver) -> Vec<QMatrix> {
        (0..self.dims.len())
            .map(|x| {
                let mut acc = QMatrix::zeros(Rationals, 0, self.dims[x]);
                for a in q.arrows_from(x) {
                    acc = acc.vstack(&self.maps[a]);
                }
                let k = acc.kernel_vectors();
                QMatrix::from_columns(Rationals, self.dims[x], &k)
            })
            .collect()
    }

    pub fn radical(&self, q: &GeneralBoundQuiver) -> Representation {
        self.subrepresentation(q, &self.radical_inclusions(q))
    }

    pub fn socle(&self, q: &GeneralBoundQuiver) -> Representation {
        self.subrepresentation(q, &self.socle_inclusions(q))
    }

    pub fn top(&self, q: &GeneralBoundQuiver) -> Representation {
        self.quotient(q, &self.radical_inclusions(q))
    }

    /// The subrepresentation spanned by the columns of `incl[x]` (which must
    /// be independent and closed under the arrows).
    pub fn subrepresentation(&self, q: &GeneralBoundQuiver, incl: &[QMatrix]) -> Representation {
        let dims: Vec<usize> = incl.iter().map(|m| m.cols()).collect();
        let maps = q
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let image = m.mul(&incl[a.source]);
                incl[a.target]
                    .solve_matrix(&image)
                    .expect("shapes")
                    .expect("subspace closed under arrows")
            })
            .collect();
        Representation { dims, maps }
    }

    /// Complement bases and projections for `M / U`.
    pub(crate) fn quotient_data(&self, sub: &[QMatrix]) -> (Vec<QMatrix>, Vec<QMatrix>) {
        let f = Rationals;
        let mut complements = Vec::new();
        let mut projections = Vec::new();
        for (x, u) in sub.iter().enumerate() {
            let n = self.dims[x];
            let mut span = Subspace::row_space(&u.transpose());
            let mut chosen = Vec::new();
            for i in 0..n {
                let e = unit(n, i);
                if !span.contains(&e).expect("length") {
                    span = span
                        .sum(&Subspace::span(f, n, core::slice::from_ref(&e)).expect("length"))
                        .expect("length");
                    chosen.push(e);
                }
            }
            let c = QMatrix::from_columns(f, n, &chosen);
            let full = c.hstack(u);
            let inv = full.inverse().expect("complement plus subspace is a basis");
            let rows: Vec<usize> = (0..chosen.len()).collect();
            projections.push(inv.select_rows(&rows));
            complements.push(c);
        }
        (complements, projections)
    }

    pub fn quotient(&self, q: &GeneralBoundQuiver, sub: &[QMatrix]) -> Representation {
        let (c, p) = self.quotient_data(sub);
        Representation {
            dims: c.iter().map(|m| m.cols()).collect(),
            maps: q
                .arrows
                .iter()
                .zip(&self.maps)
                .map(|(a, m)| p[a.target].mul(m).mul(&c[a.source]))
                .collect(),
        }
    }
}

impl ModuleMap {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        ModuleMap {
            blocks: m
                .dims
                .iter()
                .zip(&n.dims)
                .map(|(&a, &b)| QMatrix::zeros(Rationals, b, a))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        ModuleMap {
            blocks: m
                .dims
                .iter()
                .map(|&d| QMatrix::identity(Rationals, d))
                .collect(),
        }
    }

    pub fn is_morphism(
        &self,
        q: &GeneralBoundQuiver,
        m: &Representation,
        n: &Representation,
    ) -> bool {
        q.arrows.iter().enumerate().all(|(i, a)| {
            n.maps[i].mul(&self.blocks[a.source]) == self.blocks[a.target].mul(&m.maps[i])
        })
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(QMatrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(QMatrix::is_invertible)
    }

    pub fn trace(&self) -> Scalar {
        self.blocks
            .iter()
            .fold(Rationals.zero(), |acc, b| acc + b.trace())
    }

    pub fn kernel_inclusions(&self) -> Vec<QMatrix> {
        self.blocks
            .iter()
            .map(|b| QMatrix::from_columns(Rationals, b.cols(), &b.kernel_vectors()))
            .collect()
    }

    pub fn image_inclusions(&self) -> Vec<QMatrix> {
        self.blocks.iter().map(column_space).collect()
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(QMatrix::rank).sum()
    }
}

/// A basis of `Hom(M, N)`: the kernel of `f |-> (N_a f_x - f_y M_a)_a`.
pub fn hom_basis(q: &GeneralBoundQuiver, m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let f = Rationals;
    let nv = q.vertex_count();
    let mut offset = vec![0; nv + 1];
    for x in 0..nv {
        offset[x + 1] = offset[x] + n.dims[x] * m.dims[x];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |x: usize, i: usize, j: usize| offset[x] + i * m.dims[x] + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (ai, a) in q.arrows.iter().enumerate() {
        let (x, y) = (a.source, a.target);
        let (na, ma) = (&n.maps[ai], &m.maps[ai]);
        for i in 0..n.dims[y] {
            for j in 0..m.dims[x] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..n.dims[x] {
                    let c = na.get(i, k);
                    if !f.is_zero(c) {
                        let v = var(x, k, j);
                        row[v] = f.add(&row[v], c);
                    }
                }
                for k in 0..m.dims[y] {
                    let c = ma.get(k, j);
                    if !f.is_zero(c) {
                        let v = var(y, i, k);
                        row[v] = f.sub(&row[v], c);
                    }
                }
                if row.iter().any(|c| !f.is_zero(c)) {
                    rows.push(row);
                }
            }
        }
    }
    let system = QMatrix::from_rows(f, unknowns, &rows).expect("row length");
    system
        .kernel_vectors()
        .into_iter()
        .map(|v| ModuleMap {
            blocks: (0..nv)
                .map(|x| QMatrix::from_fn(f, n.dims[x], m.dims[x], |i, j| v[var(x, i, j)].clone()))
                .collect(),
        })
        .collect()
}

/// `P_x`: `(P_x)_y = e_x A e_y`, arrows acting by right multiplication.
pub fn projective(alg: &BasedAlgebra, x: usize) -> Representation {
    let q = &alg.quiver;
    let dims: Vec<usize> = (0..alg.vertex_count())
        .map(|y| alg.dim_pair(x, y))
        .collect();
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let cols: Vec<Vec<Scalar>> = alg
                .pair_basis(x, a.source)
                .iter()
                .map(|&b| {
                    let p = alg.basis[b]
                        .concat(&Path {
                            source: a.source,
                            target: a.target,
                            arrows: vec![ai],
                        })
                        .expect("composable");
                    alg.reduce_path(&p)
                })
                .collect();
            QMatrix::from_columns(Rationals, dims[a.target], &cols)
        })
        .collect();
    Representation { dims, maps }
}

/// `I_x`: `(I_x)_y = D(e_y A e_x)`; an arrow `a: y -> z` sends a functional
/// `phi` to `c |-> phi(a c)`.
pub fn injective(alg: &BasedAlgebra, x: usize) -> Representation {
    let q = &alg.quiver;
    let dims: Vec<usize> = (0..alg.vertex_count())
        .map(|y| alg.dim_pair(y, x))
        .collect();
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let rows: Vec<Vec<Scalar>> = alg
                .pair_basis(a.target, x)
                .iter()
                .map(|&c| {
                    let p = Path {
                        source: a.source,
                        target: a.target,
                        arrows: vec![ai],
                    }
                    .concat(&alg.basis[c])
                    .expect("composable");
                    alg.reduce_path(&p)
                })
                .collect();
            QMatrix::from_rows(Rationals, dims[a.source], &rows).expect("row length")
        })
        .collect();
    Representation { dims, maps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{scalar, FieldSpec};
    use crate::toupie::{ToupiePresentation, ToupieRelation};

    fn alg(lengths: &[usize], rels: Vec<ToupieRelation>) -> BasedAlgebra {
        BasedAlgebra::from_toupie(&ToupiePresentation::new(
            FieldSpec::Rational,
            lengths.to_vec(),
            rels,
        ))
        .unwrap()
    }

    fn comb(v: &[i64]) -> ToupieRelation {
        ToupieRelation::Combination(v.iter().map(|&x| scalar(x)).collect())
    }

    #[test]
    fn kronecker_projective() {
        let a = alg(&[1, 1], vec![]);
        let p0 = projective(&a, 0);
        assert_eq!(p0.dims, vec![1, 2]);
        assert!(p0.check(&a.quiver).unwrap());
        assert_eq!(p0.radical(&a.quiver).dims, vec![0, 2]);
        assert_eq!(p0.top(&a.quiver).dims, vec![1, 0]);
    }

    #[test]
    fn projectives_and_injectives_satisfy_relations() {
        let a = alg(&[2, 2, 2], vec![comb(&[1, 1, -1])]);
        let q = &a.quiver;
        for x in 0..a.vertex_count() {
            let p = projective(&a, x);
            let i = injective(&a, x);
            assert!(p.check(q).unwrap() && i.check(q).unwrap());
            assert_eq!(p.top(q), Representation::simple(q, x));
            assert_eq!(i.socle(q).dims, Representation::simple(q, x).dims);
        }
        assert_eq!(projective(&a, 0).dims[a.vertex_count() - 1], 2);
    }

    #[test]
    fn relation_violation_detected() {
        let a = alg(&[2, 2], vec![comb(&[1, -1])]);
        let q = &a.quiver;
        let mut m = Representation::with_zero_maps(q, vec![1, 1, 1, 1]);
        for k in 0..4 {
            m.maps[k] = QMatrix::from_ints(Rationals, 1, 1, &[1]);
        }
        assert!(m.check(q).unwrap());
        m.maps[3] = QMatrix::from_ints(Rationals, 1, 1, &[2]);
        assert!(!m.check(q).unwrap());
        m.maps[3] = QMatrix::zeros(Rationals, 2, 1);
        assert!(m.check(q).is_err());
    }

    #[test]
    fn hom_dimensions() {
        let a = alg(&[2, 2, 2], vec![comb(&[1, -1, 0])]);
        let q = &a.quiver;
        let s = Representation::simple(q, 1);
        assert_eq!(hom_basis(q, &s, &s).len(), 1);
        assert_eq!(hom_basis(q, &s, &Representation::simple(q, 3)).len(), 0);
        let inf = a.vertex_count() - 1;
        assert_eq!(
            hom_basis(q, &projective(&a, 0), &injective(&a, inf)).len(),
            2
        );
        let p0 = projective(&a, 0);
        for x in 0..a.vertex_count() {
            let maps = hom_basis(q, &projective(&a, x), &p0);
            assert_eq!(maps.len(), p0.dims[x]);
            assert!(maps
                .iter()
                .all(|f| f.is_morphism(q, &projective(&a, x), &p0)));
        }
    }

    #[test]
    fn dual_of_projective_is_injective_over_opposite() {
        let a = alg(
            &[2, 3],
            vec![ToupieRelation::Monomial(crate::toupie::PathRef::new(
                1, 0, 2,
            ))],
        );
        let op = a.opposite();
        for x in 0..a.vertex_count() {
            assert_eq!(projective(&op, x).dual(), injective(&a, x));
        }
    }
}

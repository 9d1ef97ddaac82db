//! `A = kQ/I` as a based algebra over the rationals.
//!
//! Every basis element is a single path: for each vertex pair `(x, y)` the paths
//! `x ~> y` are scanned in path order and kept when independent of the earlier
//! ones modulo `I(x, y) = span{u rho v}`. Products are concatenation followed by
//! reduction, so `b_i b_j` means "first `b_i`, then `b_j`".

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, FieldSpec, Rationals, Scalar};
use crate::matrix::QMatrix;
use crate::quiver::{Arrow, GeneralBoundQuiver, Path, QuiverIssue, Relation};
use crate::subspace::Subspace;
use crate::toupie::ToupiePresentation;

/// Upper bound on the number of paths between one vertex pair.
pub const MAX_PATHS_PER_PAIR: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    Invalid(Vec<QuiverIssue>),
    PrimeFieldUnsupported,
    Capacity(String),
    UnknownVertex(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Invalid(issues) => {
                f.write_str("invalid bound quiver")?;
                for i in issues {
                    write!(f, "; {}: {}", i.location, i.message)?;
                }
                Ok(())
            }
            AlgebraError::PrimeFieldUnsupported => {
                f.write_str("the module engine works over the rationals only")
            }
            AlgebraError::Capacity(s) => write!(f, "capacity exceeded: {s}"),
            AlgebraError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedAlgebra {
    pub quiver: GeneralBoundQuiver,
    /// Basis paths; index `i` is the `i`-th basis element.
    pub basis: Vec<Path>,
    /// `pair_basis[x][y]`: global indices of the basis of `e_x A e_y`.
    pair_basis: Vec<Vec<Vec<usize>>>,
    /// Every path, with its coordinates in the basis of its vertex pair.
    reduction: BTreeMap<Path, Vec<Scalar>>,
}

fn path_vector(
    paths: &[Path],
    index: &BTreeMap<Path, usize>,
    terms: &[(Scalar, Path)],
) -> Vec<Scalar> {
    let mut v = vec![Rationals.zero(); paths.len()];
    for (c, p) in terms {
        let k = index[p];
        v[k] = &v[k] + c;
    }
    v
}

impl BasedAlgebra {
    pub fn from_toupie(p: &ToupiePresentation) -> Result<Self, AlgebraError> {
        Self::build(&p.to_general())
    }

    pub fn build(q: &GeneralBoundQuiver) -> Result<Self, AlgebraError> {
        if q.field != FieldSpec::Rational {
            return Err(AlgebraError::PrimeFieldUnsupported);
        }
        let issues = q.validate();
        if !issues.is_empty() {
            return Err(AlgebraError::Invalid(issues));
        }
        let n = q.vertex_count();
        let f = Rationals;
        let mut all_paths: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let ps = q.paths_between(x, y);
                if ps.len() > MAX_PATHS_PER_PAIR {
                    return Err(AlgebraError::Capacity(format!(
                        "{} paths from {} to {}",
                        ps.len(),
                        q.vertices[x],
                        q.vertices[y]
                    )));
                }
                all_paths[x][y] = ps;
            }
        }
        let mut basis = Vec::new();
        let mut pair_basis = vec![vec![Vec::new(); n]; n];
        let mut reduction = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let paths = &all_paths[x][y];
                if paths.is_empty() {
                    continue;
                }
                let index: BTreeMap<Path, usize> = paths
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, p)| (p, i))
                    .collect();
                // I(x, y) = span{u rho v}.
                let mut gens: Vec<Vec<Scalar>> = Vec::new();
                for r in &q.relations {
                    let Some((s, t)) = r.endpoints() else {
                        continue;
                    };
                    for u in &all_paths[x][s] {
                        for v in &all_paths[t][y] {
                            let terms: Vec<(Scalar, Path)> = r
                                .terms
                                .iter()
                                .map(|(c, p)| {
                                    (
                                        c.clone(),
                                        u.concat(p)
                                            .and_then(|up| up.concat(v))
                                            .expect("composable"),
                                    )
                                })
                                .collect();
                            gens.push(path_vector(paths, &index, &terms));
                        }
                    }
                }
                let ideal = Subspace::span(f, paths.len(), &gens).expect("vector length");
                let mut span = ideal.clone();
                let mut chosen: Vec<usize> = Vec::new();
                for (k, _) in paths.iter().enumerate() {
                    let mut e = vec![f.zero(); paths.len()];
                    e[k] = f.one();
                    if !span.contains(&e).expect("length") {
                        chosen.push(k);
                        span = span
                            .sum(&Subspace::span(f, paths.len(), &[e]).expect("length"))
                            .expect("length");
                    }
                }
                // Columns: chosen basis paths, then a basis of I(x, y).
                let mut cols: Vec<Vec<Scalar>> = chosen
                    .iter()
                    .map(|&k| {
                        let mut e = vec![f.zero(); paths.len()];
                        e[k] = f.one();
                        e
                    })
                    .collect();
                cols.extend(ideal.basis());
                let system = QMatrix::from_columns(f, paths.len(), &cols);
                let d = chosen.len();
                let rhs = QMatrix::identity(f, paths.len());
                let sol = system
                    .solve_matrix(&rhs)
                    .expect("shapes")
                    .expect("paths span kQ(x, y)");
                for (k, p) in paths.iter().enumerate() {
                    let coords: Vec<Scalar> = (0..d).map(|i| sol.get(i, k).clone()).collect();
                    reduction.insert(p.clone(), coords);
                }
                for &k in &chosen {
                    pair_basis[x][y].push(basis.len());
                    basis.push(paths[k].clone());
                }
            }
        }
        Ok(BasedAlgebra {
            quiver: q.clone(),
            basis,
            pair_basis,
            reduction,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_pair(&self, x: usize, y: usize) -> usize {
        self.pair_basis[x][y].len()
    }

    pub fn pair_basis(&self, x: usize, y: usize) -> &[usize] {
        &self.pair_basis[x][y]
    }

    pub fn idempotent(&self, x: usize) -> usize {
        self.pair_basis[x][x][0]
    }

    /// Coordinates of a path in the basis of its vertex pair.
    pub fn reduce_path(&self, p: &Path) -> Vec<Scalar> {
        self.reduction
            .get(p)
            .cloned()
            .unwrap_or_else(|| panic!("not a path of the quiver: {p:?}"))
    }

    /// `a b` for `a` in `e_x A e_y` and `b` in `e_y A e_z`, in local coordinates.
    pub fn mul_local(
        &self,
        x: usize,
        y: usize,
        z: usize,
        a: &[Scalar],
        b: &[Scalar],
    ) -> Vec<Scalar> {
        let f = Rationals;
        let mut out = vec![f.zero(); self.dim_pair(x, z)];
        for (i, &bi) in self.pair_basis[x][y].iter().enumerate() {
            if f.is_zero(&a[i]) {
                continue;
            }
            for (j, &bj) in self.pair_basis[y][z].iter().enumerate() {
                if f.is_zero(&b[j]) {
                    continue;
                }
                let c = f.mul(&a[i], &b[j]);
                let prod = self.basis[bi].concat(&self.basis[bj]).expect("composable");
                for (k, r) in self.reduce_path(&prod).iter().enumerate() {
                    if !f.is_zero(r) {
                        out[k] = f.add(&out[k], &f.mul(&c, r));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `e_x A e_y -> e_x A e_z`, `u |-> u b`.
    pub fn right_mul_matrix(&self, x: usize, y: usize, z: usize, b: &[Scalar]) -> QMatrix {
        let f = Rationals;
        let cols: Vec<Vec<Scalar>> = (0..self.dim_pair(x, y))
            .map(|i| {
                let mut e = vec![f.zero(); self.dim_pair(x, y)];
                e[i] = f.one();
                self.mul_local(x, y, z, &e, b)
            })
            .collect();
        QMatrix::from_columns(f, self.dim_pair(x, z), &cols)
    }

    /// Matrix of `e_y A e_z -> e_x A e_z`, `u |-> a u`.
    pub fn left_mul_matrix(&self, x: usize, y: usize, z: usize, a: &[Scalar]) -> QMatrix {
        let f = Rationals;
        let cols: Vec<Vec<Scalar>> = (0..self.dim_pair(y, z))
            .map(|i| {
                let mut e = vec![f.zero(); self.dim_pair(y, z)];
                e[i] = f.one();
                self.mul_local(x, y, z, a, &e)
            })
            .collect();
        QMatrix::from_columns(f, self.dim_pair(x, z), &cols)
    }

    /// Structure constants: `b_i b_j` in global coordinates, `None` when the
    /// vertex pairs do not compose.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<Vec<Scalar>> {
        let prod = self.basis[i].concat(&self.basis[j])?;
        let local = self.reduce_path(&prod);
        let mut out = vec![Rationals.zero(); self.dim()];
        for (k, &g) in self.pair_basis[prod.source][prod.target].iter().enumerate() {
            out[g] = local[k].clone();
        }
        Some(out)
    }

    /// `A^op` on the same basis indices: paths reversed, products transposed.
    pub fn opposite(&self) -> BasedAlgebra {
        let n = self.vertex_count();
        let mut pair_basis = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                pair_basis[y][x] = self.pair_basis[x][y].clone();
            }
        }
        BasedAlgebra {
            quiver: self.quiver.opposite(),
            basis: self.basis.iter().map(Path::reversed).collect(),
            pair_basis,
            reduction: self
                .reduction
                .iter()
                .map(|(p, c)| (p.reversed(), c.clone()))
                .collect(),
        }
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, AlgebraError> {
        self.quiver
            .vertex_index(label)
            .ok_or_else(|| AlgebraError::UnknownVertex(label.into()))
    }

    /// A presentation of `eAe` for `e` the sum of the idempotents at `verts`.
    pub fn truncate(&self, verts: &[usize]) -> Result<GeneralBoundQuiver, AlgebraError> {
        let f = Rationals;
        let mut vs: Vec<usize> = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() {
            return Err(AlgebraError::Invalid(vec![QuiverIssue {
                location: "vertices".into(),
                message: "truncation needs at least one vertex".into(),
            }]));
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(AlgebraError::UnknownVertex(format!("{v}")));
        }
        let k = vs.len();
        // Arrows of eAe: basis elements of A(x, y) independent modulo rad^2.
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut arrow_elem: Vec<Vec<Scalar>> = Vec::new();
        for (xi, &x) in vs.iter().enumerate() {
            for (yi, &y) in vs.iter().enumerate() {
                if x == y || self.dim_pair(x, y) == 0 {
                    continue;
                }
                let d = self.dim_pair(x, y);
                let mut rad2: Vec<Vec<Scalar>> = Vec::new();
                for &z in &vs {
                    if z == x || z == y {
                        continue;
                    }
                    for i in 0..self.dim_pair(x, z) {
                        for j in 0..self.dim_pair(z, y) {
                            let mut a = vec![f.zero(); self.dim_pair(x, z)];
                            a[i] = f.one();
                            let mut b = vec![f.zero(); self.dim_pair(z, y)];
                            b[j] = f.one();
                            rad2.push(self.mul_local(x, z, y, &a, &b));
                        }
                    }
                }
                let mut span = Subspace::span(f, d, &rad2).expect("length");
                for i in 0..d {
                    let mut e = vec![f.zero(); d];
                    e[i] = f.one();
                    if !span.contains(&e).expect("length") {
                        let path = &self.basis[self.pair_basis[x][y][i]];
                        let name = if path.len() == 1 {
                            self.quiver.arrows[path.arrows[0]].label.clone()
                        } else {
                            let mut s = String::new();
                            for (n, &a) in path.arrows.iter().enumerate() {
                                if n > 0 {
                                    s.push('*');
                                }
                                s.push_str(&self.quiver.arrows[a].label);
                            }
                            s
                        };
                        arrows.push(Arrow {
                            source: xi,
                            target: yi,
                            label: name,
                        });
                        arrow_elem.push(e.clone());
                        span = span
                            .sum(&Subspace::span(f, d, &[e]).expect("length"))
                            .expect("length");
                    }
                }
            }
        }
        let mut out = GeneralBoundQuiver {
            field: FieldSpec::Rational,
            vertices: vs
                .iter()
                .map(|&v| self.quiver.vertices[v].clone())
                .collect(),
            arrows,
            relations: Vec::new(),
        };
        // Evaluate every path of the new quiver in A.
        let mut paths: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); k]; k];
        for xi in 0..k {
            for yi in 0..k {
                let ps = out.paths_between(xi, yi);
                if ps.len() > MAX_PATHS_PER_PAIR {
                    return Err(AlgebraError::Capacity(format!(
                        "{} paths in the truncated quiver",
                        ps.len()
                    )));
                }
                paths[xi][yi] = ps;
            }
        }
        let eval = |p: &Path| -> Vec<Scalar> {
            let x = vs[p.source];
            let mut cur = x;
            let mut acc = vec![f.one()];
            for &a in &p.arrows {
                let next = vs[out.arrows[a].target];
                acc = self.mul_local(x, cur, next, &acc, &arrow_elem[a]);
                cur = next;
            }
            acc
        };
        // Kernel of kQ'(x, y) -> A(x, y) per pair.
        let mut kernels: Vec<Vec<Subspace<Rationals>>> = vec![vec![Subspace::zero(f, 0); k]; k];
        for xi in 0..k {
            for yi in 0..k {
                let ps = &paths[xi][yi];
                if ps.is_empty() {
                    continue;
                }
                let cols: Vec<Vec<Scalar>> = ps.iter().map(&eval).collect();
                let m = QMatrix::from_columns(f, self.dim_pair(vs[xi], vs[yi]), &cols);
                kernels[xi][yi] = Subspace::kernel_of(&m);
            }
        }
        // Generators: a complement of the part generated by the kernels at
        // shorter pairs, `a I'(z, y) + I'(x, z) b`.
        let pairs = (0..k).flat_map(|x| (0..k).map(move |y| (x, y)));
        let mut relations = Vec::new();
        for (xi, yi) in pairs {
            let ker = &kernels[xi][yi];
            if ker.is_zero() {
                continue;
            }
            let ps = &paths[xi][yi];
            let index: BTreeMap<Path, usize> = ps
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            let mut generated: Vec<Vec<Scalar>> = Vec::new();
            for a in out.arrows_from(xi) {
                let zi = out.arrows[a].target;
                let ap = Path {
                    source: xi,
                    target: zi,
                    arrows: vec![a],
                };
                for v in kernels[zi][yi].basis() {
                    let terms: Vec<(Scalar, Path)> = paths[zi][yi]
                        .iter()
                        .zip(&v)
                        .filter(|(_, c)| !f.is_zero(c))
                        .map(|(p, c)| (c.clone(), ap.concat(p).expect("composable")))
                        .collect();
                    generated.push(path_vector(ps, &index, &terms));
                }
            }
            for b in out.arrows_to(yi) {
                let zi = out.arrows[b].source;
                let bp = Path {
                    source: zi,
                    target: yi,
                    arrows: vec![b],
                };
                for v in kernels[xi][zi].basis() {
                    let terms: Vec<(Scalar, Path)> = paths[xi][zi]
                        .iter()
                        .zip(&v)
                        .filter(|(_, c)| !f.is_zero(c))
                        .map(|(p, c)| (c.clone(), p.concat(&bp).expect("composable")))
                        .collect();
                    generated.push(path_vector(ps, &index, &terms));
                }
            }
            let mut span = Subspace::span(f, ps.len(), &generated).expect("length");
            for v in ker.basis() {
                if span.contains(&v).expect("length") {
                    continue;
                }
                relations.push(Relation {
                    terms: ps
                        .iter()
                        .zip(&v)
                        .filter(|(_, c)| !f.is_zero(c))
                        .map(|(p, c)| (c.clone(), p.clone()))
                        .collect(),
                });
                span = span
                    .sum(&Subspace::span(f, ps.len(), &[v]).expect("length"))
                    .expect("length");
            }
        }
        out.relations = relations;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::scalar;
    use crate::toupie::{recognize_toupie, PathRef, ToupieRelation};

    fn comb(v: &[i64]) -> ToupieRelation {
        ToupieRelation::Combination(v.iter().map(|&x| scalar(x)).collect())
    }

    fn toupie(lengths: &[usize], rels: Vec<ToupieRelation>) -> (ToupiePresentation, BasedAlgebra) {
        let p = ToupiePresentation::new(FieldSpec::Rational, lengths.to_vec(), rels);
        let a = BasedAlgebra::from_toupie(&p).unwrap();
        (p, a)
    }

    fn sink(a: &BasedAlgebra) -> usize {
        a.vertex_count() - 1
    }

    #[test]
    fn hereditary_dimensions() {
        let (_, a) = toupie(&[2, 2, 2], vec![]);
        assert_eq!(a.dim_pair(0, sink(&a)), 3);
        // 5 idempotents, 6 arrows, 3 branches.
        assert_eq!(a.dim(), 14);
    }

    #[test]
    fn canonical_and_monomial_dimensions() {
        let (_, a) = toupie(
            &[2, 2, 2, 2],
            vec![comb(&[1, 1, -1, 0]), comb(&[1, 2, 0, -1])],
        );
        assert_eq!(a.dim_pair(0, sink(&a)), 2);
        let (_, b) = toupie(
            &[2, 2],
            vec![ToupieRelation::Monomial(PathRef::new(0, 0, 2))],
        );
        assert_eq!(b.dim_pair(0, sink(&b)), 1);
    }

    #[test]
    fn associativity_and_idempotents() {
        let (_, a) = toupie(
            &[3, 2, 2],
            vec![
                comb(&[1, 1, -1]),
                ToupieRelation::Monomial(PathRef::new(0, 1, 3)),
            ],
        );
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = a.mul_basis(i, j).map(|ij| {
                        let mut acc = vec![scalar(0); n];
                        for (l, c) in ij.iter().enumerate() {
                            if let Some(lk) = a.mul_basis(l, k) {
                                for (m, d) in lk.iter().enumerate() {
                                    acc[m] = &acc[m] + c * d;
                                }
                            }
                        }
                        acc
                    });
                    let rhs = a.mul_basis(j, k).map(|jk| {
                        let mut acc = vec![scalar(0); n];
                        for (l, c) in jk.iter().enumerate() {
                            if let Some(il) = a.mul_basis(i, l) {
                                for (m, d) in il.iter().enumerate() {
                                    acc[m] = &acc[m] + c * d;
                                }
                            }
                        }
                        acc
                    });
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        assert_eq!(l, r);
                    }
                }
            }
        }
        for x in 0..a.vertex_count() {
            let e = a.idempotent(x);
            assert!(a.basis[e].is_trivial());
            let sq = a.mul_basis(e, e).unwrap();
            assert_eq!(sq[e], scalar(1));
            assert_eq!(sq.iter().filter(|c| **c != scalar(0)).count(), 1);
        }
    }

    #[test]
    fn opposite_is_involutive() {
        let (_, a) = toupie(&[2, 2, 1], vec![comb(&[1, -1, 0])]);
        let op = a.opposite();
        assert_eq!(op.opposite(), a);
        assert_eq!(op.dim_pair(sink(&a), 0), 2);
        let i = a.pair_basis(0, 1)[0];
        let j = a.pair_basis(1, sink(&a))[0];
        assert_eq!(a.mul_basis(i, j), op.mul_basis(j, i));
    }

    #[test]
    fn identity_truncation() {
        let (p, a) = toupie(&[2, 2, 2], vec![]);
        let all: Vec<usize> = (0..a.vertex_count()).collect();
        let g = a.truncate(&all).unwrap();
        assert_eq!(g.arrows.len(), 6);
        assert!(g.relations.is_empty());
        assert_eq!(recognize_toupie(&g), Some(p.normalized()));
    }

    #[test]
    fn truncation_gives_direct_arrow() {
        let (_, a) = toupie(&[2, 2, 2], vec![comb(&[1, -1, 0])]);
        let verts = [0, 1, 2, sink(&a)];
        let g = a.truncate(&verts).unwrap();
        let r = recognize_toupie(&g).unwrap();
        assert_eq!(r.quiver.lengths, vec![1, 2, 2]);
        assert_eq!(r.relations, vec![comb(&[0, 1, -1])]);
    }

    #[test]
    fn truncation_to_commutative_square() {
        let (_, a) = toupie(&[3, 2], vec![comb(&[1, -1])]);
        // vertices: 0, 1.1, 1.2, 2.1, inf
        let g = a.truncate(&[0, 1, 3, 4]).unwrap();
        let r = recognize_toupie(&g).unwrap();
        assert_eq!(r.quiver.lengths, vec![2, 2]);
        assert_eq!(r.relations.len(), 1);
        assert!(matches!(&r.relations[0], ToupieRelation::Combination(c) if c[0] == -c[1].clone()));
    }
}

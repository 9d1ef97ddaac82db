use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{hom_basis, injective, projective, unit, ModuleMap, Representation};
use crate::algebra::{AlgebraError, BasedAlgebra};
use crate::field::{Rationals, Scalar};
use crate::matrix::QMatrix;
use crate::quiver::GeneralBoundQuiver;
use crate::subspace::Subspace;
use crate::toupie::ToupiePresentation;

/// A map between direct sums of indecomposable projectives. `entries[i][j]`
/// lies in `e_{codomain[i]} A e_{domain[j]}`; the component
/// `P_{domain[j]} -> P_{codomain[i]}` is left multiplication by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    pub entries: Vec<Vec<Vec<Scalar>>>,
}

/// A minimal projective cover `P -> M`, `P = sum of P_{vertices[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub vertices: Vec<usize>,
    /// Image of the top of the `i`-th summand, an element of `M_{vertices[i]}`.
    pub generators: Vec<Vec<Scalar>>,
    pub module: Representation,
    pub epi: ModuleMap,
}

/// `P1 -> P0 -> M -> 0` with both covers minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub map: ProjectiveMap,
}

/// A based algebra together with its opposite, which the homological
/// operations need for duality.
#[derive(Debug, Clone)]
pub struct RepEngine {
    pub alg: Arc<BasedAlgebra>,
    pub op: Arc<BasedAlgebra>,
}

impl RepEngine {
    pub fn new(alg: BasedAlgebra) -> Self {
        let op = Arc::new(alg.opposite());
        RepEngine {
            alg: Arc::new(alg),
            op,
        }
    }

    pub fn from_quiver(q: &GeneralBoundQuiver) -> Result<Self, AlgebraError> {
        Ok(Self::new(BasedAlgebra::build(q)?))
    }

    pub fn from_toupie(p: &ToupiePresentation) -> Result<Self, AlgebraError> {
        Ok(Self::new(BasedAlgebra::from_toupie(p)?))
    }

    /// The engine of `A^op`.
    pub fn opposite(&self) -> RepEngine {
        RepEngine {
            alg: self.op.clone(),
            op: self.alg.clone(),
        }
    }

    pub fn quiver(&self) -> &GeneralBoundQuiver {
        &self.alg.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.alg.vertex_count()
    }

    pub fn simple(&self, x: usize) -> Representation {
        Representation::simple(self.quiver(), x)
    }

    pub fn projective(&self, x: usize) -> Representation {
        projective(&self.alg, x)
    }

    pub fn injective(&self, x: usize) -> Representation {
        injective(&self.alg, x)
    }

    pub fn projective_sum(&self, vertices: &[usize]) -> Representation {
        vertices
            .iter()
            .fold(Representation::zero(self.quiver()), |acc, &x| {
                acc.direct_sum(&self.projective(x))
            })
    }

    pub fn hom_basis(&self, m: &Representation, n: &Representation) -> Vec<ModuleMap> {
        hom_basis(self.quiver(), m, n)
    }

    /// Realizes `f` as a morphism of representations.
    pub fn realize(&self, f: &ProjectiveMap) -> ModuleMap {
        let a = &self.alg;
        ModuleMap {
            blocks: (0..a.vertex_count())
                .map(|z| {
                    let mut rows = QMatrix::zeros(
                        Rationals,
                        0,
                        f.domain.iter().map(|&y| a.dim_pair(y, z)).sum(),
                    );
                    for (i, &x) in f.codomain.iter().enumerate() {
                        let mut row = QMatrix::zeros(Rationals, a.dim_pair(x, z), 0);
                        for (j, &y) in f.domain.iter().enumerate() {
                            row = row.hstack(&a.left_mul_matrix(x, y, z, &f.entries[i][j]));
                        }
                        rows = rows.vstack(&row);
                    }
                    rows
                })
                .collect(),
        }
    }

    pub fn cokernel(&self, f: &ProjectiveMap) -> Representation {
        let target = self.projective_sum(&f.codomain);
        let image = self.realize(f).image_inclusions();
        target.quotient(self.quiver(), &image)
    }

    pub fn projective_cover(&self, m: &Representation) -> Cover {
        let q = self.quiver();
        let a = &self.alg;
        let rad = m.radical_inclusions(q);
        let mut vertices = Vec::new();
        let mut generators = Vec::new();
        for x in 0..a.vertex_count() {
            let n = m.dims[x];
            let mut span = Subspace::row_space(&rad[x].transpose());
            for i in 0..n {
                let e = unit(n, i);
                if !span.contains(&e).expect("length") {
                    span = span
                        .sum(
                            &Subspace::span(Rationals, n, core::slice::from_ref(&e))
                                .expect("length"),
                        )
                        .expect("length");
                    vertices.push(x);
                    generators.push(e);
                }
            }
        }
        let module = self.projective_sum(&vertices);
        let epi = ModuleMap {
            blocks: (0..a.vertex_count())
                .map(|y| {
                    let mut block = QMatrix::zeros(Rationals, m.dims[y], 0);
                    for (&x, g) in vertices.iter().zip(&generators) {
                        let cols: Vec<Vec<Scalar>> = a
                            .pair_basis(x, y)
                            .iter()
                            .map(|&b| m.path_matrix(&a.basis[b]).mul_vec(g))
                            .collect();
                        block = block.hstack(&QMatrix::from_columns(Rationals, m.dims[y], &cols));
                    }
                    block
                })
                .collect(),
        };
        Cover {
            vertices,
            generators,
            module,
            epi,
        }
    }

    /// `Omega M` together with its inclusion into the projective cover.
    pub fn syzygy_with_cover(&self, m: &Representation) -> (Representation, Vec<QMatrix>, Cover) {
        let cover = self.projective_cover(m);
        let incl = cover.epi.kernel_inclusions();
        let k = cover.module.subrepresentation(self.quiver(), &incl);
        (k, incl, cover)
    }

    pub fn syzygy(&self, m: &Representation) -> Representation {
        self.syzygy_with_cover(m).0
    }

    pub fn is_projective(&self, m: &Representation) -> bool {
        self.syzygy(m).is_zero()
    }

    /// Projective dimension; `0` for the zero module.
    pub fn pd(&self, m: &Representation) -> usize {
        let guard = self.vertex_count() + 1;
        let mut cur = m.clone();
        for n in 0..=guard {
            let next = self.syzygy(&cur);
            if next.is_zero() {
                return n;
            }
            cur = next;
        }
        panic!("projective resolution longer than the vertex count: the quiver must be acyclic");
    }

    /// Injective dimension, as the projective dimension of `D M` over `A^op`.
    pub fn id(&self, m: &Representation) -> usize {
        self.opposite().pd(&m.dual())
    }

    /// Ranks of the terms of a minimal projective resolution.
    pub fn resolution_terms(&self, m: &Representation) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = m.clone();
        for _ in 0..=self.vertex_count() + 1 {
            if cur.is_zero() {
                break;
            }
            let (k, _, cover) = self.syzygy_with_cover(&cur);
            out.push(cover.vertices);
            cur = k;
        }
        out
    }

    /// Injective envelope `M -> E` built from functionals dual to a socle basis.
    pub fn injective_envelope(&self, m: &Representation) -> (Representation, ModuleMap) {
        let q = self.quiver();
        let a = &self.alg;
        let soc = m.socle_inclusions(q);
        let mut funcs: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for x in 0..a.vertex_count() {
            let s = &soc[x];
            if s.cols() == 0 {
                continue;
            }
            let n = m.dims[x];
            let mut basis = s.clone();
            let mut span = Subspace::row_space(&s.transpose());
            for i in 0..n {
                let e = unit(n, i);
                if !span.contains(&e).expect("length") {
                    span = span
                        .sum(
                            &Subspace::span(Rationals, n, core::slice::from_ref(&e))
                                .expect("length"),
                        )
                        .expect("length");
                    basis = basis.hstack(&QMatrix::from_columns(Rationals, n, &[e]));
                }
            }
            let inv = basis.inverse().expect("basis");
            for i in 0..s.cols() {
                funcs.push((x, inv.row(i)));
            }
        }
        let mut envelope = Representation::zero(q);
        for &(x, _) in &funcs {
            envelope = envelope.direct_sum(&self.injective(x));
        }
        let map = ModuleMap {
            blocks: (0..a.vertex_count())
                .map(|y| {
                    let mut block = QMatrix::zeros(Rationals, 0, m.dims[y]);
                    for (x, phi) in &funcs {
                        let phi_m =
                            QMatrix::from_rows(Rationals, m.dims[*x], core::slice::from_ref(phi))
                                .expect("length");
                        let mut part = QMatrix::zeros(Rationals, 0, m.dims[y]);
                        for &p in a.pair_basis(y, *x) {
                            part = part.vstack(&phi_m.mul(&m.path_matrix(&a.basis[p])));
                        }
                        block = block.vstack(&part);
                    }
                    block
                })
                .collect(),
        };
        (envelope, map)
    }

    /// Injective dimension from a minimal injective coresolution, computed
    /// without passing to `A^op`.
    pub fn id_by_coresolution(&self, m: &Representation) -> usize {
        let q = self.quiver();
        let guard = self.vertex_count() + 1;
        let mut cur = m.clone();
        for n in 0..=guard {
            let (env, map) = self.injective_envelope(&cur);
            let next = env.quotient(q, &map.image_inclusions());
            if next.is_zero() {
                return n;
            }
            cur = next;
        }
        panic!("injective coresolution longer than the vertex count");
    }

    pub fn minimal_presentation(&self, m: &Representation) -> Presentation {
        let a = &self.alg;
        let (k, incl, c0) = self.syzygy_with_cover(m);
        let c1 = self.projective_cover(&k);
        // Offsets of the summands of P0 inside (P0)_y.
        let mut entries = vec![Vec::with_capacity(c1.vertices.len()); c0.vertices.len()];
        for (&y, g) in c1.vertices.iter().zip(&c1.generators) {
            let v = incl[y].mul_vec(g);
            let mut off = 0;
            for (i, &x) in c0.vertices.iter().enumerate() {
                let d = a.dim_pair(x, y);
                entries[i].push(v[off..off + d].to_vec());
                off += d;
            }
        }
        Presentation {
            p0: c0.vertices.clone(),
            p1: c1.vertices.clone(),
            map: ProjectiveMap {
                domain: c1.vertices,
                codomain: c0.vertices,
                entries,
            },
        }
    }

    /// `Tr M`, a module over `A^op`.
    pub fn transpose(&self, m: &Representation) -> Representation {
        let pres = self.minimal_presentation(m);
        let f = &pres.map;
        let t = ProjectiveMap {
            domain: f.codomain.clone(),
            codomain: f.domain.clone(),
            entries: (0..f.domain.len())
                .map(|j| {
                    (0..f.codomain.len())
                        .map(|i| f.entries[i][j].clone())
                        .collect()
                })
                .collect(),
        };
        self.opposite().cokernel(&t)
    }

    /// `tau M = D Tr M`.
    pub fn tau(&self, m: &Representation) -> Representation {
        if m.is_zero() {
            return m.clone();
        }
        self.transpose(m).dual()
    }

    /// `tau^{-1} M = Tr D M`.
    pub fn tau_inverse(&self, m: &Representation) -> Representation {
        if m.is_zero() {
            return m.clone();
        }
        self.opposite().transpose(&m.dual())
    }

    pub fn tau_power(&self, m: &Representation, n: usize) -> Representation {
        let mut cur = m.clone();
        for _ in 0..n {
            if cur.is_zero() {
                break;
            }
            cur = self.tau(&cur);
        }
        cur
    }

    /// `dim Ext^1(M, N)` from `0 -> Omega M -> P0 -> M -> 0`.
    pub fn ext1_dim(&self, m: &Representation, n: &Representation) -> usize {
        let (k, _, cover) = self.syzygy_with_cover(m);
        let hom_k = self.hom_basis(&k, n).len();
        let hom_p = self.hom_basis(&cover.module, n).len();
        let hom_m = self.hom_basis(m, n).len();
        hom_k + hom_m - hom_p
    }

    /// The kernel of a cover lies in the radical of the cover.
    pub fn cover_is_minimal(&self, m: &Representation) -> bool {
        let q = self.quiver();
        let (_, incl, cover) = self.syzygy_with_cover(m);
        let rad = cover.module.radical_inclusions(q);
        incl.iter().zip(&rad).all(|(k, r)| {
            let rs = Subspace::row_space(&r.transpose());
            k.column_vectors()
                .iter()
                .all(|v| rs.contains(v).expect("length"))
        })
    }

    pub fn rad_p0(&self) -> Representation {
        let p = self.projective(0);
        p.radical(self.quiver())
    }
}

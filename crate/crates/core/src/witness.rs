//! Explicit module families on small toupie quivers, each with the
//! projective/injective dimension contract it is expected to meet.
//!
//! Matrices follow the column convention of [`crate::rep`]: the map of an
//! arrow `x -> y` is `dim M_y x dim M_x`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::field::{format_scalar, scalar, FieldSpec, Rationals, Scalar};
use crate::ideal::{close_ideal, IdealError};
use crate::matrix::QMatrix;
use crate::rep::Representation;
use crate::toupie::{PathRef, ToupiePresentation, ToupieQuiver, ToupieRelation, ToupieVertex};

/// The sampled parameter values for every one-parameter family.
pub const SAMPLE_LAMBDAS: [i64; 3] = [1, 2, 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    Constraint(String),
    Ideal(IdealError),
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::Constraint(s) => write!(f, "constraint violated: {s}"),
            WitnessError::Ideal(e) => write!(f, "{e}"),
        }
    }
}

impl From<IdealError> for WitnessError {
    fn from(e: IdealError) -> Self {
        WitnessError::Ideal(e)
    }
}

fn constraint<T>(msg: impl Into<String>) -> Result<T, WitnessError> {
    Err(WitnessError::Constraint(msg.into()))
}

/// One branch carrying zero relations: its length and the monomials on it,
/// as `(start, end)` positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchShape {
    pub length: usize,
    pub monomials: Vec<(usize, usize)>,
}

impl BranchShape {
    /// A branch of length `length` whose full path is a monomial.
    pub fn full(length: usize) -> Self {
        BranchShape {
            length,
            monomials: vec![(0, length)],
        }
    }

    /// First position `p` with `0 ⇝ p` a zero path.
    fn first_zero_end(&self) -> Option<usize> {
        (1..=self.length).find(|&b| self.monomials.iter().any(|&(s, e)| s == 0 && e <= b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSpec {
    /// `r` length-2 branches forming one linkage class and `s` direct arrows.
    NoBranchInIdeal {
        r: usize,
        s: usize,
        m: usize,
        lambda: Scalar,
    },
    /// One branch in the ideal and `m` direct arrows.
    BranchInIdealM2 {
        branch: BranchShape,
        m: usize,
        lambda: Scalar,
    },
    /// One branch in the ideal and one direct arrow.
    BranchInIdealM1 {
        branch: BranchShape,
    },
    /// Two branches starting with the monomial `(0, 2)` and one direct arrow.
    TwoBranchesInIdeal {
        first: BranchShape,
        second: BranchShape,
        lambda: Scalar,
    },
    /// All branches of length 2, relation space spanned by `relations`.
    InfiniteFamily {
        relations: Vec<Vec<Scalar>>,
        lambda: Scalar,
    },
    Dxy {
        x: ToupieVertex,
        y: ToupieVertex,
    },
    RadP0,
    /// An interval module on a single branch with its monomials.
    Interval {
        shape: BranchShape,
        start: usize,
        end: usize,
    },
}

impl WitnessSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            WitnessSpec::NoBranchInIdeal { .. } => "no-branch-in-ideal",
            WitnessSpec::BranchInIdealM2 { .. } => "branch-in-ideal-m2",
            WitnessSpec::BranchInIdealM1 { .. } => "branch-in-ideal-m1",
            WitnessSpec::TwoBranchesInIdeal { .. } => "two-branches-in-ideal",
            WitnessSpec::InfiniteFamily { .. } => "infinite-family",
            WitnessSpec::Dxy { .. } => "d-xy",
            WitnessSpec::RadP0 => "rad-p0",
            WitnessSpec::Interval { .. } => "interval",
        }
    }

    pub fn lambda(&self) -> Option<&Scalar> {
        match self {
            WitnessSpec::NoBranchInIdeal { lambda, .. }
            | WitnessSpec::BranchInIdealM2 { lambda, .. }
            | WitnessSpec::TwoBranchesInIdeal { lambda, .. }
            | WitnessSpec::InfiniteFamily { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    /// The standalone witness; `None` for families living on the input
    /// algebra itself.
    pub fn build(&self) -> Option<Result<Witness, WitnessError>> {
        Some(match self.clone() {
            WitnessSpec::NoBranchInIdeal { r, s, m, lambda } => {
                build_no_branch_in_ideal(r, s, m, lambda)
            }
            WitnessSpec::BranchInIdealM2 { branch, m, lambda } => {
                build_branch_in_ideal_m2(branch, m, lambda)
            }
            WitnessSpec::BranchInIdealM1 { branch } => build_branch_in_ideal_m1(branch),
            WitnessSpec::TwoBranchesInIdeal {
                first,
                second,
                lambda,
            } => build_two_branches_in_ideal(first, second, lambda),
            WitnessSpec::InfiniteFamily { relations, lambda } => {
                build_infinite_family(relations, lambda)
            }
            WitnessSpec::Interval { shape, start, end } => build_interval(shape, start, end),
            WitnessSpec::Dxy { .. } | WitnessSpec::RadP0 => return None,
        })
    }

    /// Integer and vertex parameters as text pairs, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        let shape = |b: &BranchShape| {
            let mons: Vec<String> = b
                .monomials
                .iter()
                .map(|(s, e)| format!("({s},{e})"))
                .collect();
            format!("{}:{}", b.length, mons.join(""))
        };
        match self {
            WitnessSpec::NoBranchInIdeal { r, s, m, .. } => {
                vec![
                    ("r", format!("{r}")),
                    ("s", format!("{s}")),
                    ("m", format!("{m}")),
                ]
            }
            WitnessSpec::BranchInIdealM2 { branch, m, .. } => {
                vec![("branch", shape(branch)), ("m", format!("{m}"))]
            }
            WitnessSpec::BranchInIdealM1 { branch } => vec![("branch", shape(branch))],
            WitnessSpec::TwoBranchesInIdeal { first, second, .. } => {
                vec![("first", shape(first)), ("second", shape(second))]
            }
            WitnessSpec::InfiniteFamily { relations, .. } => {
                let rows: Vec<String> = relations
                    .iter()
                    .map(|r| {
                        let c: Vec<String> = r.iter().map(format_scalar).collect();
                        format!("({})", c.join(","))
                    })
                    .collect();
                vec![
                    ("t", format!("{}", relations.first().map_or(0, |r| r.len()))),
                    ("relations", rows.join("")),
                ]
            }
            WitnessSpec::Dxy { x, y } => vec![("x", format!("{x}")), ("y", format!("{y}"))],
            WitnessSpec::RadP0 => Vec::new(),
            WitnessSpec::Interval {
                shape: sh,
                start,
                end,
            } => {
                vec![
                    ("branch", shape(sh)),
                    ("start", format!("{start}")),
                    ("end", format!("{end}")),
                ]
            }
        }
    }
}

/// Expected homological dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact(usize),
    AtLeast(usize),
    Unspecified,
}

impl Bound {
    pub fn admits(&self, n: usize) -> bool {
        match *self {
            Bound::Exact(k) => n == k,
            Bound::AtLeast(k) => n >= k,
            Bound::Unspecified => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contract {
    pub pd: Bound,
    pub id: Bound,
    /// Multiplicity of `P_inf` in the last term of the minimal projective
    /// resolution, when the family predicts it.
    pub last_sink_rank: Option<usize>,
}

impl Contract {
    fn none() -> Self {
        Contract {
            pd: Bound::Unspecified,
            id: Bound::Unspecified,
            last_sink_rank: None,
        }
    }

    fn at_least_two() -> Self {
        Contract {
            pd: Bound::AtLeast(2),
            id: Bound::AtLeast(2),
            last_sink_rank: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub spec: WitnessSpec,
    pub presentation: ToupiePresentation,
    pub module: Representation,
    pub contract: Contract,
}

/// Fills a representation on a toupie quiver arrow by arrow.
struct Builder {
    quiver: ToupieQuiver,
    dims: Vec<usize>,
    maps: Vec<Option<QMatrix>>,
}

impl Builder {
    fn new(lengths: &[usize]) -> Self {
        let quiver = ToupieQuiver::new(lengths.to_vec());
        let arrows = lengths.iter().sum();
        Builder {
            dims: vec![0; quiver.vertex_count()],
            maps: vec![None; arrows],
            quiver,
        }
    }

    fn dim(&mut self, v: ToupieVertex, d: usize) {
        let i = self.quiver.vertex_index(v).expect("vertex of the quiver");
        self.dims[i] = d;
    }

    fn dim_at(&mut self, branch: usize, pos: usize, d: usize) {
        let v = self.quiver.vertex_at(branch, pos);
        self.dim(v, d);
    }

    fn map(&mut self, branch: usize, j: usize, m: QMatrix) {
        let a = self.quiver.arrow_index(branch, j);
        self.maps[a] = Some(m);
    }

    /// Unset arrows get zero maps; set maps must match the dimensions.
    fn finish(self) -> Representation {
        let q = &self.quiver;
        let mut maps = Vec::with_capacity(self.maps.len());
        for (b, &l) in q.lengths.iter().enumerate() {
            for j in 0..l {
                let s = self.dims[q.vertex_index(q.vertex_at(b, j)).expect("vertex")];
                let t = self.dims[q.vertex_index(q.vertex_at(b, j + 1)).expect("vertex")];
                let m = self.maps[q.arrow_index(b, j)]
                    .clone()
                    .unwrap_or_else(|| QMatrix::zeros(Rationals, t, s));
                assert_eq!(m.shape(), (t, s), "arrow a{}.{}", b + 1, j + 1);
                maps.push(m);
            }
        }
        Representation {
            dims: self.dims,
            maps,
        }
    }
}

fn mat(rows: usize, cols: usize, entries: &[Scalar]) -> QMatrix {
    QMatrix::from_fn(Rationals, rows, cols, |r, c| entries[r * cols + c].clone())
}

fn ints(rows: usize, cols: usize, entries: &[i64]) -> QMatrix {
    QMatrix::from_ints(Rationals, rows, cols, entries)
}

fn ident(n: usize) -> QMatrix {
    QMatrix::identity(Rationals, n)
}

fn check_lambda(lambda: &Scalar) -> Result<(), WitnessError> {
    if lambda.is_zero() {
        return constraint("lambda must be nonzero");
    }
    Ok(())
}

fn monomial_relations(branch: usize, shape: &BranchShape) -> Vec<ToupieRelation> {
    shape
        .monomials
        .iter()
        .map(|&(s, e)| ToupieRelation::Monomial(PathRef::new(branch, s, e)))
        .collect()
}

fn check_shape(shape: &BranchShape) -> Result<(), WitnessError> {
    if shape.length < 2 {
        return constraint("a branch in the ideal has length at least 2");
    }
    for &(s, e) in &shape.monomials {
        if e > shape.length || e < s + 2 {
            return constraint(format!(
                "monomial ({s},{e}) does not fit a branch of length {}",
                shape.length
            ));
        }
    }
    if shape.first_zero_end().is_none() {
        return constraint("some monomial must start at the source");
    }
    Ok(())
}

/// `r` length-2 branches in one linkage class plus `s` direct arrows, with
/// `m = dim e_0 A e_inf`. Needs `1 < r`, `1 <= s < m`, `m - s < r`.
///
/// The relation space is spanned by the rows `(1^k, 2^k, ..., r^k, 0, ..., 0)`
/// for `k < r - m + s`, so every pair of the first `r` branches is linked.
pub fn build_no_branch_in_ideal(
    r: usize,
    s: usize,
    m: usize,
    lambda: Scalar,
) -> Result<Witness, WitnessError> {
    check_lambda(&lambda)?;
    if r < 2 || s < 1 || s >= m || m - s >= r {
        return constraint(format!(
            "need 1 < r, 1 <= s < m, m - s < r (r={r}, s={s}, m={m})"
        ));
    }
    let d = r - (m - s);
    let t = r + s;
    let mut lengths = vec![2; r];
    lengths.extend(vec![1; s]);
    let relations = (0..d)
        .map(|k| {
            let mut row: Vec<Scalar> = (1..=r).map(|j| scalar((j as i64).pow(k as u32))).collect();
            row.extend(vec![Scalar::zero(); s]);
            ToupieRelation::Combination(row)
        })
        .collect();
    let p = ToupiePresentation::new(FieldSpec::Rational, lengths.clone(), relations);
    let mut b = Builder::new(&lengths);
    b.dim(ToupieVertex::Source, 2);
    b.dim(ToupieVertex::Sink, 2);
    b.dim_at(0, 1, 2);
    b.dim_at(1, 1, 2);
    b.map(0, 0, ints(2, 2, &[1, 0, 0, 0]));
    b.map(0, 1, ints(2, 2, &[0, 1, 0, 1]));
    b.map(1, 0, ints(2, 2, &[0, 1, 0, 0]));
    let one = Scalar::one();
    b.map(
        1,
        1,
        mat(
            2,
            2,
            &[Scalar::zero(), one.clone(), Scalar::zero(), lambda.clone()],
        ),
    );
    b.map(r, 0, ident(2));
    debug_assert_eq!(t, p.t());
    Ok(Witness {
        spec: WitnessSpec::NoBranchInIdeal { r, s, m, lambda },
        presentation: p,
        module: b.finish(),
        contract: Contract {
            pd: Bound::Exact(2),
            id: Bound::Exact(2),
            last_sink_rank: Some(2 * (r + s - m) - 1),
        },
    })
}

/// Branch 1 in the ideal through the monomials of `branch`, plus `m >= 2`
/// direct arrows carrying `1, lambda, 0, ..., 0`.
pub fn build_branch_in_ideal_m2(
    branch: BranchShape,
    m: usize,
    lambda: Scalar,
) -> Result<Witness, WitnessError> {
    check_lambda(&lambda)?;
    check_shape(&branch)?;
    if m < 2 {
        return constraint("needs m >= 2");
    }
    let mut lengths = vec![branch.length];
    lengths.extend(vec![1; m]);
    let p = ToupiePresentation::new(
        FieldSpec::Rational,
        lengths.clone(),
        monomial_relations(0, &branch),
    );
    let mut b = Builder::new(&lengths);
    b.dim(ToupieVertex::Source, 1);
    b.dim(ToupieVertex::Sink, 1);
    b.map(1, 0, ident(1));
    b.map(2, 0, mat(1, 1, core::slice::from_ref(&lambda)));
    Ok(Witness {
        spec: WitnessSpec::BranchInIdealM2 { branch, m, lambda },
        presentation: p,
        module: b.finish(),
        contract: Contract::at_least_two(),
    })
}

/// Branch 1 in the ideal and one direct arrow; `k` at both ends joined by it.
pub fn build_branch_in_ideal_m1(branch: BranchShape) -> Result<Witness, WitnessError> {
    check_shape(&branch)?;
    let lengths = vec![branch.length, 1];
    let p = ToupiePresentation::new(
        FieldSpec::Rational,
        lengths.clone(),
        monomial_relations(0, &branch),
    );
    let mut b = Builder::new(&lengths);
    b.dim(ToupieVertex::Source, 1);
    b.dim(ToupieVertex::Sink, 1);
    b.map(1, 0, ident(1));
    Ok(Witness {
        spec: WitnessSpec::BranchInIdealM1 { branch },
        presentation: p,
        module: b.finish(),
        contract: Contract::at_least_two(),
    })
}

/// Two branches in the ideal, each starting with the monomial `(0, 2)`, and
/// one direct arrow. `k^2` at both ends; on a branch of length at least 3,
/// `k` at its first and last inner vertex, and on a branch of length 2 the
/// two copies of `k` merge into `k^2` at the middle vertex.
pub fn build_two_branches_in_ideal(
    first: BranchShape,
    second: BranchShape,
    lambda: Scalar,
) -> Result<Witness, WitnessError> {
    check_lambda(&lambda)?;
    for sh in [&first, &second] {
        check_shape(sh)?;
        if !sh.monomials.contains(&(0, 2)) {
            return constraint("each branch needs the monomial (0,2)");
        }
    }
    let ls = vec![first.length, second.length, 1];
    let mut relations = monomial_relations(0, &first);
    relations.extend(monomial_relations(1, &second));
    let p = ToupiePresentation::new(FieldSpec::Rational, ls.clone(), relations);
    let mut b = Builder::new(&ls);
    b.dim(ToupieVertex::Source, 2);
    b.dim(ToupieVertex::Sink, 2);
    let out = [
        ints(2, 1, &[1, 1]),
        mat(2, 1, &[Scalar::one(), lambda.clone()]),
    ];
    let inn = [ints(1, 2, &[0, 1]), ints(1, 2, &[1, 0])];
    for (br, l) in [(0, first.length), (1, second.length)] {
        if l == 2 {
            b.dim_at(br, 1, 2);
            let emb = inn[br].vstack(&ints(1, 2, &[0, 0]));
            let proj = QMatrix::zeros(Rationals, 2, 1).hstack(&out[br]);
            b.map(br, 0, emb);
            b.map(br, 1, proj);
        } else {
            b.dim_at(br, 1, 1);
            b.dim_at(br, l - 1, 1);
            b.map(br, 0, inn[br].clone());
            b.map(br, l - 1, out[br].clone());
        }
    }
    b.map(2, 0, ident(2));
    Ok(Witness {
        spec: WitnessSpec::TwoBranchesInIdeal {
            first,
            second,
            lambda,
        },
        presentation: p,
        module: b.finish(),
        contract: Contract::at_least_two(),
    })
}

/// The interval module `k` on positions `start..=end` of a single branch of
/// length `shape.length`, with identity maps inside the interval.
pub fn build_interval(
    shape: BranchShape,
    start: usize,
    end: usize,
) -> Result<Witness, WitnessError> {
    if start > end || end > shape.length {
        return constraint(format!(
            "bad interval [{start},{end}] on a branch of length {}",
            shape.length
        ));
    }
    if shape.monomials.iter().any(|&(s, e)| start <= s && e <= end) {
        return constraint(format!("interval [{start},{end}] contains a monomial"));
    }
    let ls = vec![shape.length];
    let p = ToupiePresentation::new(
        FieldSpec::Rational,
        ls.clone(),
        monomial_relations(0, &shape),
    );
    let mut b = Builder::new(&ls);
    for pos in start..=end {
        b.dim_at(0, pos, 1);
    }
    for j in start..end {
        b.map(0, j, ident(1));
    }
    Ok(Witness {
        spec: WitnessSpec::Interval { shape, start, end },
        presentation: p,
        module: b.finish(),
        contract: Contract::none(),
    })
}

/// All branches of length 2 with relation space spanned by `relations`.
///
/// The first two nonzero coordinates `a < b` of the first relation carry the
/// scalar maps; after scaling that relation to `-1` at `a`, the map into `b`
/// is `1 / lambda_b`. The next two branches carry the rank-one maps. Needs
/// `m >= 3` and the projection of the relation space to coordinates `a, b` to
/// be one-dimensional; otherwise the module violates a relation.
pub fn build_infinite_family(
    relations: Vec<Vec<Scalar>>,
    lambda: Scalar,
) -> Result<Witness, WitnessError> {
    check_lambda(&lambda)?;
    let t = relations.first().map_or(0, |r| r.len());
    if t < 4 || relations.iter().any(|r| r.len() != t) {
        return constraint("needs t >= 4 and relations of length t");
    }
    let lengths = vec![2; t];
    let p = ToupiePresentation::new(
        FieldSpec::Rational,
        lengths.clone(),
        relations
            .iter()
            .cloned()
            .map(ToupieRelation::Combination)
            .collect(),
    );
    let c = close_ideal(&p)?;
    if c.m < 3 {
        return constraint(format!("needs m >= 3, got m = {}", c.m));
    }
    let first = &relations[0];
    let nz: Vec<usize> = (0..t).filter(|&i| !first[i].is_zero()).collect();
    if nz.len() < 2 {
        return constraint("the first relation needs two nonzero coefficients");
    }
    let (a, bb) = (nz[0], nz[1]);
    let lambda_b = -first[bb].clone() / first[a].clone();
    for v in c.w.basis() {
        // (v_a, v_b) must be proportional to (-1, lambda_b).
        if v[a].clone() * lambda_b.clone() + v[bb].clone() != Scalar::zero() {
            return constraint(
                "the relation space projects onto a plane in the two scalar coordinates",
            );
        }
    }
    let others: Vec<usize> = (0..t).filter(|&i| i != a && i != bb).collect();
    let (c3, c4) = (others[0], others[1]);
    let mut b = Builder::new(&lengths);
    b.dim(ToupieVertex::Source, 2);
    b.dim(ToupieVertex::Sink, 2);
    for i in [a, bb, c3, c4] {
        b.dim_at(i, 1, 2);
    }
    b.map(a, 0, ident(2));
    b.map(a, 1, ident(2));
    b.map(bb, 0, ident(2).scale(&(Scalar::one() / lambda_b)));
    b.map(bb, 1, ident(2));
    b.map(c3, 0, ints(2, 2, &[1, 1, 0, 0]));
    b.map(c3, 1, ints(2, 2, &[0, 1, 0, 0]));
    let z = Scalar::zero();
    b.map(
        c4,
        0,
        mat(2, 2, &[Scalar::one(), lambda.clone(), z.clone(), z]),
    );
    b.map(c4, 1, ints(2, 2, &[0, 0, 0, 1]));
    Ok(Witness {
        spec: WitnessSpec::InfiniteFamily { relations, lambda },
        presentation: p,
        module: b.finish(),
        contract: Contract::none(),
    })
}

/// Position of `v` along `branch`, with `0` the source and the branch length
/// the sink.
fn position_on(q: &ToupieQuiver, branch: usize, v: ToupieVertex) -> Option<usize> {
    match v {
        ToupieVertex::Source => Some(0),
        ToupieVertex::Sink => Some(q.lengths[branch]),
        ToupieVertex::Inner { branch: b, pos } if b == branch && q.contains(v) => Some(pos),
        _ => None,
    }
}

/// The module `D_xy` on a presentation with `m = 1` and exactly one branch
/// in the ideal; `x != y` on that branch, `x` and `y` in the support.
///
/// When `x ⇝ y` the vertices strictly between them are zero. When `y ⇝ x` the segment is `k^2`, the
/// arrow into `y` includes into the first coordinate and the arrow out of `x`
/// projects onto the second; this orientation needs `y` and `x` inner. Every
/// other branch carries `k` with identity maps except its last arrow, which
/// is scaled by the functional cutting out the relation space. The result
/// need not satisfy the monomial relations; callers check.
pub fn build_d_xy(
    p: &ToupiePresentation,
    x: ToupieVertex,
    y: ToupieVertex,
) -> Result<Representation, WitnessError> {
    let c = close_ideal(p)?;
    if c.m != 1 || c.branches_in_i.len() != 1 {
        return constraint("needs m = 1 and exactly one branch in the ideal");
    }
    let w1 = c.branches_in_i[0];
    let q = &p.quiver;
    let (Some(px), Some(py)) = (position_on(q, w1, x), position_on(q, w1, y)) else {
        return constraint(format!("x and y must lie on branch {}", w1 + 1));
    };
    if px == py {
        return constraint("needs x != y");
    }
    let phi = c.w.annihilator().row(0);
    let t = q.t();
    let mut dims = vec![1usize; q.vertex_count()];
    let (lo, hi) = (px.min(py), px.max(py));
    let seg_dim = if px < py { 0 } else { 2 };
    if seg_dim == 2 && (lo == 0 || hi == q.lengths[w1]) {
        return constraint("the y ⇝ x orientation needs inner vertices");
    }
    // x ~> y: zero strictly between x and y. y ~> x: k^2 from y to x.
    let span = if seg_dim == 0 { lo + 1..hi } else { lo..hi + 1 };
    for pos in span {
        dims[q.vertex_index(q.vertex_at(w1, pos)).expect("vertex")] = seg_dim;
    }
    let mut b = Builder::new(&q.lengths);
    b.dims = dims.clone();
    let dim_of =
        |br: usize, pos: usize| dims[q.vertex_index(q.vertex_at(br, pos)).expect("vertex")];
    for br in 0..t {
        let l = q.lengths[br];
        for j in 0..l {
            let (s, e) = (dim_of(br, j), dim_of(br, j + 1));
            if s == 0 || e == 0 {
                continue;
            }
            let m = if br == w1 && seg_dim == 2 && j + 1 == lo {
                ints(2, 1, &[1, 0])
            } else if br == w1 && seg_dim == 2 && j == hi {
                ints(1, 2, &[0, 1])
            } else if br != w1 && j + 1 == l {
                ident(s).scale(&phi[br])
            } else {
                ident(s)
            };
            b.map(br, j, m);
        }
    }
    Ok(b.finish())
}

/// All `D_xy` on the branch in the ideal that satisfy the relations, ordered
/// by `(x, y)` positions.
pub fn valid_d_xy(
    p: &ToupiePresentation,
) -> Result<Vec<(ToupieVertex, ToupieVertex, Representation)>, WitnessError> {
    let c = close_ideal(p)?;
    if c.m != 1 || c.branches_in_i.len() != 1 {
        return constraint("needs m = 1 and exactly one branch in the ideal");
    }
    let w1 = c.branches_in_i[0];
    let q = &p.quiver;
    let g = p.to_general();
    let l = q.lengths[w1];
    let mut out = Vec::new();
    for px in 0..=l {
        for py in 0..=l {
            let (x, y) = (q.vertex_at(w1, px), q.vertex_at(w1, py));
            if let Ok(d) = build_d_xy(p, x, y) {
                if d.check(&g).unwrap_or(false) {
                    out.push((x, y, d));
                }
            }
        }
    }
    Ok(out)
}

/// The vertex after the first inner vertex on the unique branch of length at
/// least 3, or the sink when every branch has length 2. Used as the expected
/// translate of `rad P_0` in the tilted `t = m + 1` case.
pub fn tilted_tau_target(q: &ToupieQuiver) -> Option<ToupieVertex> {
    let long: Vec<usize> = (0..q.t()).filter(|&b| q.lengths[b] >= 3).collect();
    match long.as_slice() {
        [] => Some(ToupieVertex::Sink),
        [b] => Some(q.vertex_at(*b, 2)),
        _ => None,
    }
}

//! Toupie quivers: a unique source `0`, a unique sink `inf`, and `t` disjoint
//! branches between them.
//!
//! Branch indices are 0-based in this API and 1-based in every textual form
//! (grammar, labels, evidence).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::field::{is_prime, FieldSpec, Scalar};
use crate::quiver::{Arrow, GeneralBoundQuiver, Path, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToupieQuiver {
    pub lengths: Vec<usize>,
}

impl ToupieQuiver {
    pub fn new(lengths: Vec<usize>) -> Self {
        ToupieQuiver { lengths }
    }

    pub fn t(&self) -> usize {
        self.lengths.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 + self
            .lengths
            .iter()
            .map(|&l| l.saturating_sub(1))
            .sum::<usize>()
    }

    pub fn vertices(&self) -> Vec<ToupieVertex> {
        let mut out = vec![ToupieVertex::Source];
        for (i, &l) in self.lengths.iter().enumerate() {
            for j in 1..l {
                out.push(ToupieVertex::Inner { branch: i, pos: j });
            }
        }
        out.push(ToupieVertex::Sink);
        out
    }

    pub fn contains(&self, v: ToupieVertex) -> bool {
        match v {
            ToupieVertex::Source | ToupieVertex::Sink => true,
            ToupieVertex::Inner { branch, pos } => {
                branch < self.t() && pos >= 1 && pos < self.lengths[branch]
            }
        }
    }

    /// Index of `v` in the vertex order of [`to_general`].
    pub fn vertex_index(&self, v: ToupieVertex) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        Some(match v {
            ToupieVertex::Source => 0,
            ToupieVertex::Sink => self.vertex_count() - 1,
            ToupieVertex::Inner { branch, pos } => {
                1 + self.lengths[..branch]
                    .iter()
                    .map(|&l| l.saturating_sub(1))
                    .sum::<usize>()
                    + pos
                    - 1
            }
        })
    }

    /// The vertex at position `pos` along `branch`.
    pub fn vertex_at(&self, branch: usize, pos: usize) -> ToupieVertex {
        if pos == 0 {
            ToupieVertex::Source
        } else if pos >= self.lengths[branch] {
            ToupieVertex::Sink
        } else {
            ToupieVertex::Inner { branch, pos }
        }
    }

    /// Index of the `j`-th arrow (0-based) of `branch` in the arrow order of
    /// [`to_general`].
    pub fn arrow_index(&self, branch: usize, j: usize) -> usize {
        self.lengths[..branch].iter().sum::<usize>() + j
    }

    pub fn long_branch_count(&self) -> usize {
        self.lengths.iter().filter(|&&l| l >= 3).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ToupieVertex {
    Source,
    Inner { branch: usize, pos: usize },
    Sink,
}

impl fmt::Display for ToupieVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToupieVertex::Source => f.write_str("0"),
            ToupieVertex::Sink => f.write_str("inf"),
            ToupieVertex::Inner { branch, pos } => write!(f, "{}.{}", branch + 1, pos),
        }
    }
}

/// Parses `0`, `inf` or `i.j` (1-based branch).
pub fn parse_vertex(text: &str) -> Option<ToupieVertex> {
    match text {
        "0" => Some(ToupieVertex::Source),
        "inf" => Some(ToupieVertex::Sink),
        _ => {
            let (i, j) = text.split_once('.')?;
            let i: usize = i.parse().ok()?;
            let j: usize = j.parse().ok()?;
            (i >= 1 && j >= 1).then(|| ToupieVertex::Inner {
                branch: i - 1,
                pos: j,
            })
        }
    }
}

/// The subpath of `branch` from position `start` to position `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathRef {
    pub branch: usize,
    pub start: usize,
    pub end: usize,
}

impl PathRef {
    pub fn new(branch: usize, start: usize, end: usize) -> Self {
        PathRef { branch, start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn contains(&self, other: &PathRef) -> bool {
        self.branch == other.branch && self.start <= other.start && other.end <= self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToupiePath {
    Trivial(ToupieVertex),
    Segment(PathRef),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToupieRelation {
    Monomial(PathRef),
    /// Coefficients over the `t` full branches.
    Combination(Vec<Scalar>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToupiePresentation {
    pub field: FieldSpec,
    pub quiver: ToupieQuiver,
    pub relations: Vec<ToupieRelation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationIssue {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    /// `t = 1`; accepted but routed to the linear case.
    pub linear: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownVertex(pub ToupieVertex);

impl fmt::Display for UnknownVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown vertex {}", self.0)
    }
}

fn is_residue(s: &Scalar, p: u64) -> bool {
    s.is_integer() && !s.is_negative() && *s.numer() < p.into()
}

impl ToupiePresentation {
    pub fn new(field: FieldSpec, lengths: Vec<usize>, relations: Vec<ToupieRelation>) -> Self {
        ToupiePresentation {
            field,
            quiver: ToupieQuiver::new(lengths),
            relations,
        }
    }

    pub fn t(&self) -> usize {
        self.quiver.t()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.quiver.lengths
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut push = |location: String, message: &str| {
            issues.push(ValidationIssue {
                location,
                message: message.into(),
            })
        };
        if let FieldSpec::Prime(p) = self.field {
            if !is_prime(p) || p >= (1u64 << 32) {
                push("field".into(), "modulus must be a prime below 2^32");
            }
        }
        let t = self.t();
        if t == 0 {
            push(
                "branches".into(),
                "a toupie quiver needs at least one branch",
            );
        }
        for (i, &l) in self.quiver.lengths.iter().enumerate() {
            if l == 0 {
                push(
                    format!("lengths[{}]", i + 1),
                    "branch length must be at least 1",
                );
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            let loc = format!("relation {}", k + 1);
            match r {
                ToupieRelation::Monomial(p) => {
                    if p.branch >= t {
                        push(loc, "branch index out of range");
                    } else if p.start >= p.end || p.end > self.quiver.lengths[p.branch] {
                        push(loc, "subpath positions must satisfy 0 <= a < b <= length");
                    } else if p.len() < 2 {
                        push(loc, "monomial of length < 2 violates I in R^2");
                    }
                }
                ToupieRelation::Combination(c) => {
                    if c.len() != t {
                        push(loc, "combination needs one coefficient per branch");
                        continue;
                    }
                    if c.iter().all(|x| x.is_zero()) {
                        push(loc.clone(), "combination has no nonzero coefficient");
                    }
                    if let FieldSpec::Prime(p) = self.field {
                        if c.iter().any(|x| !is_residue(x, p)) {
                            push(
                                loc.clone(),
                                "prime-field coefficients must be residues 0..p-1",
                            );
                        }
                    }
                    if c.iter()
                        .zip(&self.quiver.lengths)
                        .any(|(x, &l)| !x.is_zero() && l < 2)
                    {
                        push(
                            loc,
                            "combination touches a length-1 branch, violates I in R^2",
                        );
                    }
                }
            }
        }
        ValidationReport {
            issues,
            linear: t == 1,
        }
    }

    /// All paths from `x` to `y`. Between `0` and `inf` these are the `t`
    /// branches; any other ordered pair has at most one path.
    pub fn enumerate_paths(
        &self,
        x: ToupieVertex,
        y: ToupieVertex,
    ) -> Result<Vec<ToupiePath>, UnknownVertex> {
        for v in [x, y] {
            if !self.quiver.contains(v) {
                return Err(UnknownVertex(v));
            }
        }
        if x == y {
            return Ok(vec![ToupiePath::Trivial(x)]);
        }
        let q = &self.quiver;
        let seg = |b, s, e| ToupiePath::Segment(PathRef::new(b, s, e));
        Ok(match (x, y) {
            (ToupieVertex::Source, ToupieVertex::Sink) => {
                (0..q.t()).map(|b| seg(b, 0, q.lengths[b])).collect()
            }
            (ToupieVertex::Source, ToupieVertex::Inner { branch, pos }) => {
                vec![seg(branch, 0, pos)]
            }
            (ToupieVertex::Inner { branch, pos }, ToupieVertex::Sink) => {
                vec![seg(branch, pos, q.lengths[branch])]
            }
            (
                ToupieVertex::Inner {
                    branch: b1,
                    pos: p1,
                },
                ToupieVertex::Inner {
                    branch: b2,
                    pos: p2,
                },
            ) if b1 == b2 && p1 < p2 => {
                vec![seg(b1, p1, p2)]
            }
            _ => Vec::new(),
        })
    }

    pub fn path_of(&self, p: &PathRef) -> Path {
        let q = &self.quiver;
        let src = q
            .vertex_index(q.vertex_at(p.branch, p.start))
            .expect("valid path");
        let tgt = q
            .vertex_index(q.vertex_at(p.branch, p.end))
            .expect("valid path");
        Path {
            source: src,
            target: tgt,
            arrows: (p.start..p.end)
                .map(|j| q.arrow_index(p.branch, j))
                .collect(),
        }
    }

    /// Expands to a general bound quiver. Vertices are `0`, then the inner
    /// vertices branch by branch, then `inf`; arrows are listed branch by
    /// branch.
    pub fn to_general(&self) -> GeneralBoundQuiver {
        let q = &self.quiver;
        let vertices = q.vertices().iter().map(|v| format!("{v}")).collect();
        let mut arrows = Vec::new();
        for (b, &l) in q.lengths.iter().enumerate() {
            for j in 0..l {
                arrows.push(Arrow {
                    source: q.vertex_index(q.vertex_at(b, j)).expect("vertex"),
                    target: q.vertex_index(q.vertex_at(b, j + 1)).expect("vertex"),
                    label: format!("a{}.{}", b + 1, j + 1),
                });
            }
        }
        let relations = self
            .relations
            .iter()
            .map(|r| match r {
                ToupieRelation::Monomial(p) => Relation::monomial(self.path_of(p)),
                ToupieRelation::Combination(c) => Relation {
                    terms: c
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(b, x)| (x.clone(), self.path_of(&PathRef::new(b, 0, q.lengths[b]))))
                        .collect(),
                },
            })
            .collect();
        GeneralBoundQuiver {
            field: self.field,
            vertices,
            arrows,
            relations,
        }
    }

    /// Stable sort of the branches by length, remapping relation data.
    pub fn canonicalize(&self) -> ToupiePresentation {
        let mut order: Vec<usize> = (0..self.t()).collect();
        order.sort_by_key(|&b| self.quiver.lengths[b]);
        self.permute_branches(&order)
    }

    /// New branch `k` is old branch `order[k]`.
    pub fn permute_branches(&self, order: &[usize]) -> ToupiePresentation {
        let mut new_of_old = vec![0; order.len()];
        for (k, &old) in order.iter().enumerate() {
            new_of_old[old] = k;
        }
        let relations = self
            .relations
            .iter()
            .map(|r| match r {
                ToupieRelation::Monomial(p) => {
                    ToupieRelation::Monomial(PathRef::new(new_of_old[p.branch], p.start, p.end))
                }
                ToupieRelation::Combination(c) => {
                    ToupieRelation::Combination(order.iter().map(|&old| c[old].clone()).collect())
                }
            })
            .collect();
        ToupiePresentation {
            field: self.field,
            quiver: ToupieQuiver::new(order.iter().map(|&old| self.quiver.lengths[old]).collect()),
            relations,
        }
    }

    /// Canonical branch order with single-branch combinations written as
    /// full-branch monomials; the form [`recognize_toupie`] returns.
    pub fn normalized(&self) -> ToupiePresentation {
        let mut out = self.canonicalize();
        for r in &mut out.relations {
            if let ToupieRelation::Combination(c) = r {
                let nz: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
                if nz.len() == 1 {
                    let b = nz[0];
                    *r = ToupieRelation::Monomial(PathRef::new(b, 0, out.quiver.lengths[b]));
                }
            }
        }
        out
    }
}

/// Recognizes a general bound quiver of toupie shape. Branches are read off in
/// arrow order from the source and then put in canonical order.
pub fn recognize_toupie(g: &GeneralBoundQuiver) -> Option<ToupiePresentation> {
    let n = g.vertex_count();
    if n < 2 || !g.validate().is_empty() {
        return None;
    }
    let sources: Vec<usize> = (0..n).filter(|&v| g.in_degree(v) == 0).collect();
    let sinks: Vec<usize> = (0..n).filter(|&v| g.out_degree(v) == 0).collect();
    if sources.len() != 1 || sinks.len() != 1 || sources[0] == sinks[0] {
        return None;
    }
    let (src, snk) = (sources[0], sinks[0]);
    for v in 0..n {
        if v != src && v != snk && (g.in_degree(v) != 1 || g.out_degree(v) != 1) {
            return None;
        }
    }
    // Trace each branch: arrow sequence from the source to the sink.
    let mut branches: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for a in g.arrows_from(src) {
        let mut arrows = vec![a];
        let mut at = g.arrows[a].target;
        while at != snk {
            if seen[at] {
                return None;
            }
            seen[at] = true;
            let next = g.arrows_from(at).next()?;
            arrows.push(next);
            at = g.arrows[next].target;
        }
        branches.push(arrows);
    }
    if seen
        .iter()
        .enumerate()
        .any(|(v, &s)| !s && v != src && v != snk)
    {
        return None;
    }
    // Locate each arrow: (branch, position).
    let mut where_ = vec![(0usize, 0usize); g.arrows.len()];
    for (b, arrows) in branches.iter().enumerate() {
        for (j, &a) in arrows.iter().enumerate() {
            where_[a] = (b, j);
        }
    }
    let lengths: Vec<usize> = branches.iter().map(|a| a.len()).collect();
    let t = lengths.len();
    let mut relations = Vec::new();
    for r in &g.relations {
        let r = r.normalized();
        if r.terms.is_empty() {
            continue;
        }
        let refs: Vec<(Scalar, PathRef)> = r
            .terms
            .iter()
            .map(|(c, p)| {
                let (b, s) = where_[p.arrows[0]];
                (c.clone(), PathRef::new(b, s, s + p.len()))
            })
            .collect();
        if refs.len() == 1 {
            relations.push(ToupieRelation::Monomial(refs[0].1));
        } else {
            let mut c = vec![Scalar::zero(); t];
            for (x, p) in refs {
                if p.start != 0 || p.end != lengths[p.branch] {
                    return None;
                }
                c[p.branch] = x;
            }
            relations.push(ToupieRelation::Combination(c));
        }
    }
    let p = ToupiePresentation {
        field: g.field,
        quiver: ToupieQuiver::new(lengths),
        relations,
    };
    Some(p.normalized())
}

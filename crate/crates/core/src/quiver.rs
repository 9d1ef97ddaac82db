//! General acyclic bound quivers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A path as a sequence of arrow indices; the empty sequence is the trivial
/// path at `source == target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `other`; `None` if they do not compose.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Paths order by length, then lexicographically by arrow indices.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

/// A linear combination of parallel paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn monomial(path: Path) -> Self {
        Relation {
            terms: vec![(Scalar::from_integer(1.into()), path)],
        }
    }

    /// Merges repeated paths and drops zero coefficients; terms come out in
    /// path order.
    pub fn normalized(&self) -> Relation {
        let mut acc: BTreeMap<Path, Scalar> = BTreeMap::new();
        for (c, p) in &self.terms {
            let e = acc.entry(p.clone()).or_insert_with(Scalar::zero);
            *e += c;
        }
        Relation {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(p, c)| (c, p))
                .collect(),
        }
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.terms.first().map(|(_, p)| (p.source, p.target))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverIssue {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralBoundQuiver {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl GeneralBoundQuiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows_to(v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows_from(v).count()
    }

    /// Kahn's algorithm; `None` if the quiver has an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            let mut next = Vec::new();
            for a in self.arrows_from(v) {
                let w = self.arrows[a].target;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    next.push(w);
                }
            }
            next.sort_unstable_by(|a, b| b.cmp(a));
            ready.extend(next);
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_path(&self, p: &Path) -> bool {
        if p.source >= self.vertex_count() || p.target >= self.vertex_count() {
            return false;
        }
        let mut at = p.source;
        for &a in &p.arrows {
            match self.arrows.get(a) {
                Some(arrow) if arrow.source == at => at = arrow.target,
                _ => return false,
            }
        }
        at == p.target
    }

    /// All paths from `x` to `y`, in path order. Requires acyclicity.
    pub fn paths_between(&self, x: usize, y: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![Path::trivial(x)];
        while let Some(p) = stack.pop() {
            if p.target == y {
                out.push(p.clone());
            }
            for a in self.arrows_from(p.target) {
                let mut q = p.clone();
                q.arrows.push(a);
                q.target = self.arrows[a].target;
                stack.push(q);
            }
        }
        out.sort();
        out
    }

    pub fn all_paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        for x in 0..self.vertex_count() {
            for y in 0..self.vertex_count() {
                out.extend(self.paths_between(x, y));
            }
        }
        out.sort();
        out
    }

    pub fn validate(&self) -> Vec<QuiverIssue> {
        let mut issues = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.vertex_count() || a.target >= self.vertex_count() {
                issues.push(QuiverIssue {
                    location: format!("arrow {}", i + 1),
                    message: "endpoint is not a vertex".into(),
                });
            }
        }
        if !issues.is_empty() {
            return issues;
        }
        if self.topological_order().is_none() {
            issues.push(QuiverIssue {
                location: "quiver".into(),
                message: "quiver has an oriented cycle".into(),
            });
        }
        for (i, r) in self.relations.iter().enumerate() {
            let loc = format!("relation {}", i + 1);
            if r.terms.is_empty() {
                issues.push(QuiverIssue {
                    location: loc.clone(),
                    message: "relation has no terms".into(),
                });
                continue;
            }
            let (s, t) = r.endpoints().expect("nonempty");
            for (_, p) in &r.terms {
                if !self.is_path(p) {
                    issues.push(QuiverIssue {
                        location: loc.clone(),
                        message: "term is not a path of the quiver".into(),
                    });
                } else if p.source != s || p.target != t {
                    issues.push(QuiverIssue {
                        location: loc.clone(),
                        message: "terms are not parallel paths".into(),
                    });
                } else if p.len() < 2 {
                    issues.push(QuiverIssue {
                        location: loc.clone(),
                        message: "term of length < 2 violates admissibility".into(),
                    });
                }
            }
        }
        issues
    }

    /// Reverses every arrow and relation path.
    pub fn opposite(&self) -> GeneralBoundQuiver {
        GeneralBoundQuiver {
            field: self.field,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    source: a.target,
                    target: a.source,
                    label: a.label.clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, p)| (c.clone(), p.reversed()))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn kronecker() -> GeneralBoundQuiver {
        GeneralBoundQuiver {
            field: FieldSpec::Rational,
            vertices: vec!["0".to_string(), "inf".to_string()],
            arrows: vec![
                Arrow {
                    source: 0,
                    target: 1,
                    label: "a".into(),
                },
                Arrow {
                    source: 0,
                    target: 1,
                    label: "b".into(),
                },
            ],
            relations: vec![],
        }
    }

    #[test]
    fn parallel_paths_enumerated_in_order() {
        let q = kronecker();
        let ps = q.paths_between(0, 1);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].arrows, vec![0]);
        assert_eq!(q.paths_between(1, 0).len(), 0);
        assert_eq!(q.paths_between(0, 0), vec![Path::trivial(0)]);
    }

    #[test]
    fn cycle_is_reported() {
        let mut q = kronecker();
        q.arrows.push(Arrow {
            source: 1,
            target: 0,
            label: "c".into(),
        });
        assert!(q.topological_order().is_none());
        assert!(!q.validate().is_empty());
    }

    #[test]
    fn short_relation_is_inadmissible() {
        let mut q = kronecker();
        q.relations.push(Relation::monomial(Path {
            source: 0,
            target: 1,
            arrows: vec![0],
        }));
        let issues = q.validate();
        assert_eq!(issues.len(), 1);
        assert!(issues[0].message.contains("admissibility"));
    }

    #[test]
    fn opposite_reverses() {
        let q = kronecker().opposite();
        assert_eq!(q.arrows[0].source, 1);
        assert_eq!(q.opposite(), kronecker());
    }
}

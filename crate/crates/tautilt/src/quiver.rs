//! Finite quivers: loop-free cores, tree and cycle diagnostics, and path
//! enumeration on tree cores.
//!
//! Vertex ids are arbitrary positive integers (not forced to `1..n`), so that
//! idempotent quotients can keep their original labels. Parallel arrows and
//! multiple loops per vertex are representable; the tree check rejects
//! parallels explicitly.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{name}` references undeclared vertex {vertex}")]
    UndeclaredVertex { name: String, vertex: u32 },
    #[error("vertex ids must be positive")]
    NonPositiveVertex,
    #[error("quiver has a loop; operation requires a loop-free quiver")]
    LoopPresent,
    #[error("the loop-free core is not a tree quiver")]
    NotTree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: u32,
    pub target: u32,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver: an ordered vertex list and a list of named arrows.
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<u32>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<u32>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if v == 0 {
                return Err(QuiverError::NonPositiveVertex);
            }
            if !seen.insert(v) {
                return Err(QuiverError::DuplicateVertex(v));
            }
        }
        let mut names = BTreeSet::new();
        for a in &arrows {
            if !names.insert(a.name.clone()) {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
            for v in [a.source, a.target] {
                if !seen.contains(&v) {
                    return Err(QuiverError::UndeclaredVertex {
                        name: a.name.clone(),
                        vertex: v,
                    });
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor: arrows as (name, source, target).
    pub fn from_parts(vertices: &[u32], arrows: &[(&str, u32, u32)]) -> Result<Self, QuiverError> {
        Quiver::new(
            vertices.to_vec(),
            arrows
                .iter()
                .map(|&(n, s, t)| Arrow {
                    name: n.to_string(),
                    source: s,
                    target: t,
                })
                .collect(),
        )
    }

    /// The linear quiver `1 -> 2 -> ... -> n` with arrows `a1, ..., a(n-1)`.
    pub fn linear_a(n: u32) -> Quiver {
        let vertices: Vec<u32> = (1..=n).collect();
        let arrows = (1..n)
            .map(|i| Arrow {
                name: format!("a{i}"),
                source: i,
                target: i + 1,
            })
            .collect();
        Quiver { vertices, arrows }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn vertex_index(&self, v: u32) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.is_loop())
    }

    /// The loop-free core: same vertices, arrows with `source != target` only.
    pub fn core(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .filter(|a| !a.is_loop())
                .cloned()
                .collect(),
        }
    }

    /// `true` iff the underlying undirected graph is a tree with no two
    /// arrows joining the same unordered vertex pair. Requires a loop-free
    /// quiver (call on [`Quiver::core`]).
    pub fn is_tree_quiver(&self) -> Result<bool, QuiverError> {
        if self.has_loops() {
            return Err(QuiverError::LoopPresent);
        }
        let n = self.vertices.len();
        if n == 0 {
            return Ok(false);
        }
        if self.arrows.len() != n - 1 {
            return Ok(false);
        }
        let mut pairs = BTreeSet::new();
        for a in &self.arrows {
            let key = (a.source.min(a.target), a.source.max(a.target));
            if !pairs.insert(key) {
                return Ok(false);
            }
        }
        // Connectivity over the undirected graph.
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for a in &self.arrows {
            adj.entry(a.source).or_default().push(a.target);
            adj.entry(a.target).or_default().push(a.source);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.vertices[0]];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            if let Some(ns) = adj.get(&v) {
                stack.extend(ns.iter().copied());
            }
        }
        Ok(seen.len() == n)
    }

    /// `true` iff some directed cycle of length > 1 exists (loops ignored).
    pub fn has_higher_cycles(&self) -> bool {
        let core = self.core();
        // DFS with colors on the core.
        let mut color: BTreeMap<u32, u8> = BTreeMap::new(); // 0 white, 1 gray, 2 black
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for a in &core.arrows {
            adj.entry(a.source).or_default().push(a.target);
        }
        fn dfs(v: u32, color: &mut BTreeMap<u32, u8>, adj: &BTreeMap<u32, Vec<u32>>) -> bool {
            color.insert(v, 1);
            if let Some(ns) = adj.get(&v) {
                for &w in ns {
                    match color.get(&w).copied().unwrap_or(0) {
                        1 => return true,
                        0 => {
                            if dfs(w, color, adj) {
                                return true;
                            }
                        }
                        _ => {}
                    }
                }
            }
            color.insert(v, 2);
            false
        }
        for &v in &core.vertices {
            if color.get(&v).copied().unwrap_or(0) == 0 && dfs(v, &mut color, &adj) {
                return true;
            }
        }
        false
    }

    /// All directed paths of length >= 1 in the loop-free core, as sequences
    /// of arrow names. Requires the core to be a tree quiver; for a tree
    /// there is at most one path per ordered vertex pair.
    pub fn core_paths(&self) -> Result<Vec<CorePath>, QuiverError> {
        let core = self.core();
        if !core.is_tree_quiver()? {
            return Err(QuiverError::NotTree);
        }
        let mut out: Vec<CorePath> = Vec::new();
        let mut frontier: Vec<CorePath> = core
            .arrows
            .iter()
            .map(|a| CorePath {
                arrows: vec![a.name.clone()],
                source: a.source,
                target: a.target,
            })
            .collect();
        while !frontier.is_empty() {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                for a in &core.arrows {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a.name.clone());
                        next.push(CorePath {
                            arrows,
                            source: p.source,
                            target: a.target,
                        });
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

/// A nonempty composable sequence of non-loop arrows in the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorePath {
    pub arrows: Vec<String>,
    pub source: u32,
    pub target: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gls_a2_quiver() -> Quiver {
        Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("e1", 1, 1), ("e2", 2, 2)]).unwrap()
    }

    #[test]
    fn core_removes_loops() {
        let q = gls_a2_quiver();
        let core = q.core();
        assert_eq!(core.vertices(), &[1, 2]);
        assert_eq!(core.arrows().len(), 1);
        assert_eq!(core.arrows()[0].name, "a");
    }

    #[test]
    fn core_identity_on_loop_free() {
        let q = Quiver::linear_a(3);
        assert_eq!(q.core(), q);
    }

    #[test]
    fn core_of_only_loops() {
        let q =
            Quiver::from_parts(&[1, 2, 3], &[("x", 1, 1), ("y", 2, 2), ("z", 3, 3)]).unwrap();
        let core = q.core();
        assert_eq!(core.vertices().len(), 3);
        assert!(core.arrows().is_empty());
    }

    #[test]
    fn core_is_idempotent() {
        let q = gls_a2_quiver();
        assert_eq!(q.core().core(), q.core());
    }

    #[test]
    fn linear_is_tree() {
        assert!(Quiver::linear_a(3).is_tree_quiver().unwrap());
    }

    #[test]
    fn two_cycle_is_not_tree() {
        let q = Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        assert!(!q.is_tree_quiver().unwrap());
    }

    #[test]
    fn star_is_tree() {
        let q =
            Quiver::from_parts(&[1, 2, 3, 4], &[("a", 1, 2), ("b", 1, 3), ("c", 1, 4)]).unwrap();
        assert!(q.is_tree_quiver().unwrap());
    }

    #[test]
    fn tree_check_rejects_loops() {
        let q = gls_a2_quiver();
        assert_eq!(q.is_tree_quiver(), Err(QuiverError::LoopPresent));
    }

    #[test]
    fn two_cycle_has_higher_cycle() {
        let q = Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        assert!(q.has_higher_cycles());
    }

    #[test]
    fn tree_with_loops_has_no_higher_cycle() {
        let q = gls_a2_quiver();
        assert!(!q.has_higher_cycles());
    }

    #[test]
    fn three_cycle_detected() {
        let q =
            Quiver::from_parts(&[1, 2, 3], &[("a", 1, 2), ("b", 2, 3), ("c", 3, 1)]).unwrap();
        assert!(q.has_higher_cycles());
    }

    #[test]
    fn tree_implies_no_higher_cycles() {
        for q in [Quiver::linear_a(4), Quiver::linear_a(2), Quiver::linear_a(5)] {
            if q.core().is_tree_quiver().unwrap() {
                assert!(!q.has_higher_cycles());
            }
        }
    }

    #[test]
    fn core_paths_linear_a3() {
        let q = Quiver::linear_a(3);
        let paths = q.core_paths().unwrap();
        let mut sets: Vec<Vec<String>> = paths.into_iter().map(|p| p.arrows).collect();
        sets.sort();
        assert_eq!(
            sets,
            vec![
                vec!["a1".to_string()],
                vec!["a1".to_string(), "a2".to_string()],
                vec!["a2".to_string()],
            ]
        );
    }

    #[test]
    fn core_paths_single_arrow() {
        let q = Quiver::linear_a(2);
        let paths = q.core_paths().unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].arrows, vec!["a1".to_string()]);
    }

    #[test]
    fn core_paths_sink_star() {
        // 1 -> 3 <- 2: only the two arrows, no length-2 path.
        let q = Quiver::from_parts(&[1, 2, 3], &[("a", 1, 3), ("b", 2, 3)]).unwrap();
        let paths = q.core_paths().unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.arrows.len() == 1));
    }

    #[test]
    fn core_paths_unique_per_ordered_pair() {
        let q = Quiver::linear_a(5);
        let paths = q.core_paths().unwrap();
        let mut pairs = BTreeSet::new();
        for p in &paths {
            assert!(pairs.insert((p.source, p.target)), "duplicate path for pair");
        }
        // Ordered pairs (i, j) with i < j all reachable in the linear quiver.
        assert_eq!(paths.len(), 10);
    }

    #[test]
    fn core_paths_rejects_non_tree() {
        let q = Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        assert_eq!(q.core_paths(), Err(QuiverError::NotTree));
    }
}

//! Finite poset utilities: Hasse quivers, isomorphism testing by invariant
//! refinement plus backtracking, lattice checks, joins and meets, intervals,
//! and the structural probes that recover a tree quiver from its silting
//! poset (simple-supported nodes, the pair nodes `M_{i,j}`, and the three
//! local interval shapes).

use crate::algebra::BoundQuiverAlgebra;
use crate::mutation::SiltingPoset;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("elements are not comparable")]
    NotComparable,
    #[error("poset enumeration is incomplete")]
    IncompletePoset,
    #[error("interval shape violation: {0}")]
    ShapeViolation(String),
}

/// Finite poset stored as a full `>=` bit matrix plus its Hasse arrows
/// (the transitive reduction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    geq: Vec<bool>,
    hasse: Vec<(usize, usize)>,
}

impl FinitePoset {
    pub fn from_geq(matrix: &[Vec<bool>]) -> Result<Self, PosetError> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(PosetError::NotPartialOrder("ragged matrix".into()));
            }
            if !row[i] {
                return Err(PosetError::NotPartialOrder(format!(
                    "not reflexive at {i}"
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && matrix[i][j] && matrix[j][i] {
                    return Err(PosetError::NotPartialOrder(format!(
                        "not antisymmetric at ({i},{j})"
                    )));
                }
                for k in 0..n {
                    if matrix[i][j] && matrix[j][k] && !matrix[i][k] {
                        return Err(PosetError::NotPartialOrder(format!(
                            "not transitive at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let mut geq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                geq[i * n + j] = matrix[i][j];
            }
        }
        let mut hasse = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !matrix[i][j] {
                    continue;
                }
                let covered =
                    (0..n).any(|k| k != i && k != j && matrix[i][k] && matrix[k][j]);
                if !covered {
                    hasse.push((i, j));
                }
            }
        }
        Ok(FinitePoset { n, geq, hasse })
    }

    /// Poset of an enumerated silting poset with the given full order matrix.
    pub fn from_order_matrix(matrix: &[Vec<bool>]) -> Result<Self, PosetError> {
        Self::from_geq(matrix)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn geq(&self, i: usize, j: usize) -> bool {
        self.geq[i * self.n + j]
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.hasse.iter().filter(|(f, _)| *f == i).count()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.hasse.iter().filter(|(_, t)| *t == i).count()
    }

    pub fn maximum(&self) -> Option<usize> {
        let maxima: Vec<usize> = (0..self.n)
            .filter(|&i| (0..self.n).all(|j| self.geq(i, j)))
            .collect();
        maxima.first().copied().filter(|_| maxima.len() == 1)
    }

    pub fn minimum(&self) -> Option<usize> {
        let minima: Vec<usize> = (0..self.n)
            .filter(|&j| (0..self.n).all(|i| self.geq(i, j)))
            .collect();
        minima.first().copied().filter(|_| minima.len() == 1)
    }

    /// Least upper bound, when unique.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ups: Vec<usize> = (0..self.n)
            .filter(|&x| self.geq(x, a) && self.geq(x, b))
            .collect();
        let least: Vec<usize> = ups
            .iter()
            .copied()
            .filter(|&x| ups.iter().all(|&y| self.geq(y, x)))
            .collect();
        least.first().copied().filter(|_| least.len() == 1)
    }

    /// Greatest lower bound, when unique.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let downs: Vec<usize> = (0..self.n)
            .filter(|&x| self.geq(a, x) && self.geq(b, x))
            .collect();
        let greatest: Vec<usize> = downs
            .iter()
            .copied()
            .filter(|&x| downs.iter().all(|&y| self.geq(x, y)))
            .collect();
        greatest.first().copied().filter(|_| greatest.len() == 1)
    }

    /// Every pair has a unique least upper bound and greatest lower bound.
    pub fn is_lattice(&self) -> bool {
        for a in 0..self.n {
            for b in a..self.n {
                if self.join(a, b).is_none() || self.meet(a, b).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Induced subposet on `[b, a] = {x | a >= x >= b}` (note `a >= b`);
    /// returns the interval poset and its element list in original indices.
    pub fn interval(&self, a: usize, b: usize) -> Result<(FinitePoset, Vec<usize>), PosetError> {
        if !self.geq(a, b) {
            return Err(PosetError::NotComparable);
        }
        let elems: Vec<usize> = (0..self.n)
            .filter(|&x| self.geq(a, x) && self.geq(x, b))
            .collect();
        let m = elems.len();
        let mut matrix = vec![vec![false; m]; m];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                matrix[i][j] = self.geq(x, y);
            }
        }
        Ok((FinitePoset::from_geq(&matrix)?, elems))
    }

    /// Iterated degree-refinement labels (a 1-dimensional Weisfeiler-Leman
    /// pass on the Hasse digraph), used to prune isomorphism search.
    fn refinement_labels(&self) -> Vec<u64> {
        let succ: Vec<Vec<usize>> = (0..self.n)
            .map(|i| {
                self.hasse
                    .iter()
                    .filter(|(f, _)| *f == i)
                    .map(|(_, t)| *t)
                    .collect()
            })
            .collect();
        let pred: Vec<Vec<usize>> = (0..self.n)
            .map(|i| {
                self.hasse
                    .iter()
                    .filter(|(_, t)| *t == i)
                    .map(|(f, _)| *f)
                    .collect()
            })
            .collect();
        let mut labels: Vec<u64> = (0..self.n)
            .map(|i| (succ[i].len() as u64) << 32 | pred[i].len() as u64)
            .collect();
        for _ in 0..self.n {
            let mut keys: Vec<(u64, Vec<u64>, Vec<u64>)> = (0..self.n)
                .map(|i| {
                    let mut s: Vec<u64> = succ[i].iter().map(|&j| labels[j]).collect();
                    let mut p: Vec<u64> = pred[i].iter().map(|&j| labels[j]).collect();
                    s.sort();
                    p.sort();
                    (labels[i], s, p)
                })
                .collect();
            let mut sorted = keys.clone();
            sorted.sort();
            sorted.dedup();
            let index: BTreeMap<_, u64> = sorted
                .into_iter()
                .enumerate()
                .map(|(i, k)| (k, i as u64))
                .collect();
            let new_labels: Vec<u64> = keys.drain(..).map(|k| index[&k]).collect();
            if new_labels == labels {
                break;
            }
            labels = new_labels;
        }
        labels
    }

    /// A relation-preserving bijection in both directions, or `None`.
    pub fn is_isomorphic(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        if self.n != other.n || self.hasse.len() != other.hasse.len() {
            return None;
        }
        if self.n == 0 {
            return Some(vec![]);
        }
        let la = self.refinement_labels();
        let lb = other.refinement_labels();
        let mut ha: Vec<u64> = la.clone();
        let mut hb: Vec<u64> = lb.clone();
        ha.sort();
        hb.sort();
        if ha != hb {
            return None;
        }
        // Order source vertices by class size (most constrained first).
        let mut class_size: BTreeMap<u64, usize> = BTreeMap::new();
        for &l in &la {
            *class_size.entry(l).or_insert(0) += 1;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&i| (class_size[&la[i]], la[i], i));
        let mut mapping = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        if self.backtrack(other, &la, &lb, &order, 0, &mut mapping, &mut used) {
            Some(mapping)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        &self,
        other: &FinitePoset,
        la: &[u64],
        lb: &[u64],
        order: &[usize],
        pos: usize,
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let u = order[pos];
        for v in 0..other.n {
            if used[v] || la[u] != lb[v] {
                continue;
            }
            let consistent = order[..pos].iter().all(|&w| {
                let fw = mapping[w];
                self.geq(u, w) == other.geq(v, fw) && self.geq(w, u) == other.geq(fw, v)
            });
            if !consistent {
                continue;
            }
            mapping[u] = v;
            used[v] = true;
            if self.backtrack(other, la, lb, order, pos + 1, mapping, used) {
                return true;
            }
            mapping[u] = usize::MAX;
            used[v] = false;
        }
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Pass,
    Fail { node: usize, degree: usize },
    /// Enumeration hit the node cap; regularity undecidable on a prefix.
    Unknown,
}

/// Each node of a complete silting poset must have exactly as many Hasse
/// neighbours as the algebra has vertices.
pub fn regularity_check(a: &BoundQuiverAlgebra, sp: &SiltingPoset) -> Regularity {
    if !sp.complete {
        return Regularity::Unknown;
    }
    let want = a.quiver().vertices().len();
    for i in 0..sp.len() {
        let deg = sp.hasse.iter().filter(|(f, t)| *f == i || *t == i).count();
        if deg != want {
            return Regularity::Fail { node: i, degree: deg };
        }
    }
    Regularity::Pass
}

/// Local interval shape over a vertex pair, per the two-vertex silting poset
/// classification: a diamond (no arrow between the vertices) or a pentagon
/// whose long side passes through one of the two simple-supported nodes
/// (an arrow in the corresponding direction).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairShape {
    Disconnected,
    ArrowFromFirst,
    ArrowFromSecond,
}

#[derive(Debug, Clone)]
pub struct PairData {
    pub mij: usize,
    pub shape: PairShape,
}

#[derive(Debug, Clone)]
pub struct Located {
    /// Vertex -> node whose module has exactly that support vertex.
    pub simple_of_vertex: BTreeMap<u32, usize>,
    /// Unordered vertex pair (i < j) -> the unique common bound data.
    pub pairs: BTreeMap<(u32, u32), PairData>,
}

impl Located {
    /// Arrows of the recovered quiver skeleton: `(i, j)` when the pair shape
    /// says there is an arrow `i -> j`.
    pub fn recovered_arrows(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (&(i, j), data) in &self.pairs {
            match data.shape {
                PairShape::ArrowFromFirst => out.push((i, j)),
                PairShape::ArrowFromSecond => out.push((j, i)),
                PairShape::Disconnected => {}
            }
        }
        out
    }
}

/// Locate the simple-supported nodes `X_i` and, for every vertex pair, the
/// unique direct predecessor `M_{i,j}` of `X_i` or `X_j` lying above both;
/// classify the interval `[0, M_{i,j}]` against the three legal shapes.
pub fn locate_simples_and_mij(
    a: &BoundQuiverAlgebra,
    sp: &SiltingPoset,
    geq: &[Vec<bool>],
) -> Result<Located, PosetError> {
    if !sp.complete {
        return Err(PosetError::IncompletePoset);
    }
    let order = FinitePoset::from_geq(geq)?;
    let minimum = order
        .minimum()
        .ok_or_else(|| PosetError::ShapeViolation("no unique minimum".into()))?;

    let mut simple_of_vertex: BTreeMap<u32, usize> = BTreeMap::new();
    for (idx, node) in sp.nodes.iter().enumerate() {
        if idx != minimum && node.module.support.len() == 1 {
            let v = node.module.support[0];
            if simple_of_vertex.insert(v, idx).is_some() {
                return Err(PosetError::ShapeViolation(format!(
                    "two simple-supported nodes at vertex {v}"
                )));
            }
        }
    }
    for &v in a.quiver().vertices() {
        if !simple_of_vertex.contains_key(&v) {
            return Err(PosetError::ShapeViolation(format!(
                "no simple-supported node at vertex {v}"
            )));
        }
    }

    let dpr = |x: usize| -> Vec<usize> {
        sp.hasse
            .iter()
            .filter(|(_, t)| *t == x)
            .map(|(f, _)| *f)
            .collect()
    };

    let verts = a.quiver().vertices();
    let mut pairs = BTreeMap::new();
    for (pi, &i) in verts.iter().enumerate() {
        for &j in verts.iter().skip(pi + 1) {
            let xi = simple_of_vertex[&i];
            let xj = simple_of_vertex[&j];
            let mut cands: Vec<usize> = dpr(xi)
                .into_iter()
                .chain(dpr(xj))
                .filter(|&m| {
                    geq[m][xi]
                        && geq[m][xj]
                        && sp.nodes[m].module.support == supports_pair(i, j)
                })
                .collect();
            cands.sort();
            cands.dedup();
            if cands.len() != 1 {
                return Err(PosetError::ShapeViolation(format!(
                    "pair ({i},{j}): {} candidates for the common bound",
                    cands.len()
                )));
            }
            let mij = cands[0];

            // The interval [0, M_{i,j}] must be exactly the nodes supported
            // inside {i, j}, must be 2-regular, and must match a legal shape.
            let (ivl, elems) = order.interval(mij, minimum)?;
            let expected: BTreeSet<usize> = (0..sp.len())
                .filter(|&x| {
                    sp.nodes[x]
                        .module
                        .support
                        .iter()
                        .all(|v| *v == i || *v == j)
                })
                .collect();
            let got: BTreeSet<usize> = elems.iter().copied().collect();
            if expected != got {
                return Err(PosetError::ShapeViolation(format!(
                    "pair ({i},{j}): interval differs from the support-restricted subposet"
                )));
            }
            for x in 0..ivl.len() {
                if ivl.in_degree(x) + ivl.out_degree(x) != 2 {
                    return Err(PosetError::ShapeViolation(format!(
                        "pair ({i},{j}): interval is not 2-regular"
                    )));
                }
            }
            let xi_local = elems.iter().position(|&e| e == xi).unwrap();
            let xj_local = elems.iter().position(|&e| e == xj).unwrap();
            let m_local = elems.iter().position(|&e| e == mij).unwrap();
            let shape = classify_interval(&ivl, m_local, xi_local, xj_local)
                .map_err(|msg| {
                    PosetError::ShapeViolation(format!("pair ({i},{j}): {msg}"))
                })?;
            pairs.insert((i, j), PairData { mij, shape });
        }
    }
    Ok(Located {
        simple_of_vertex,
        pairs,
    })
}

fn supports_pair(i: u32, j: u32) -> Vec<u32> {
    let mut v = vec![i, j];
    v.sort();
    v
}

fn classify_interval(
    ivl: &FinitePoset,
    m: usize,
    xi: usize,
    xj: usize,
) -> Result<PairShape, String> {
    let succs = |x: usize| -> Vec<usize> {
        ivl.hasse()
            .iter()
            .filter(|(f, _)| *f == x)
            .map(|(_, t)| *t)
            .collect()
    };
    let bottom = ivl.minimum().ok_or("no minimum in interval")?;
    match ivl.len() {
        4 => {
            // Diamond: M -> X_i, X_j -> bottom.
            let mut s = succs(m);
            s.sort();
            let mut expect = vec![xi, xj];
            expect.sort();
            if s == expect && succs(xi) == vec![bottom] && succs(xj) == vec![bottom] {
                Ok(PairShape::Disconnected)
            } else {
                Err("four-element interval is not a diamond".into())
            }
        }
        5 => {
            // Pentagon: M -> {c, X_b}, c -> X_a -> bottom, X_b -> bottom;
            // the long side passing through X_i means an arrow i -> j.
            let s = succs(m);
            if s.len() != 2 {
                return Err("pentagon top must have two successors".into());
            }
            let (short, extra) = if s[0] == xi || s[0] == xj {
                (s[0], s[1])
            } else if s[1] == xi || s[1] == xj {
                (s[1], s[0])
            } else {
                return Err("pentagon top misses the simple nodes".into());
            };
            let long_target = succs(extra);
            if long_target.len() != 1 {
                return Err("pentagon middle node must have one successor".into());
            }
            let through = long_target[0];
            if short == xj && through == xi {
                Ok(PairShape::ArrowFromFirst)
            } else if short == xi && through == xj {
                Ok(PairShape::ArrowFromSecond)
            } else {
                Err("pentagon sides do not pass through the simple nodes".into())
            }
        }
        other => Err(format!("interval has {other} elements")),
    }
}

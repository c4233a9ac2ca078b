//! Left mutation of two-term silting complexes and breadth-first enumeration
//! of the silting poset.
//!
//! A node stores the decomposed summand list. Mutation at a summand `X`
//! computes a minimal left approximation `f : X -> E` into the additive hull
//! of the remaining summands (multiplicities read off the top of the Hom
//! module over the endomorphism algebra of the rest), forms the mapping
//! cone, and reduces it back into the two-term window. A cone that keeps a
//! degree -2 residue signals that the exchange partner lies above, not
//! below; enumeration simply skips that direction. Every produced node is
//! verified to be silting and strictly below its parent before it is
//! accepted.

use crate::algebra::BoundQuiverAlgebra;
use crate::complexes::{
    self, decompose, fingerprint_of_summands, hom_k1_dimension, hom_k_space,
    module_data_of_summands, ComplexError, HomK, ModuleData, ProjMap, TwoTermComplex,
};
use crate::linalg::{ExactMatrix, Rat, RowSpace};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MutationError {
    #[error("mapping cone leaves a degree -2 residue (no downward mutation at this summand)")]
    NotTwoTerm,
    #[error("mutation result failed silting verification: {0}")]
    NotSilting(String),
    #[error("poset enumeration is incomplete (node cap hit)")]
    IncompletePoset,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// One element of the silting poset: decomposed summands, canonical
/// fingerprint, and cached module data.
#[derive(Debug, Clone)]
pub struct SiltingNode {
    pub summands: Vec<TwoTermComplex>,
    pub fingerprint: Vec<Vec<i64>>,
    pub module: ModuleData,
}

impl SiltingNode {
    fn from_summands(a: &BoundQuiverAlgebra, mut summands: Vec<TwoTermComplex>) -> Self {
        summands.sort_by(|x, y| x.sort_key(a).cmp(&y.sort_key(a)));
        let fingerprint = fingerprint_of_summands(a, &summands);
        let module = module_data_of_summands(a, &summands);
        SiltingNode {
            summands,
            fingerprint,
            module,
        }
    }

    pub fn total(&self, a: &BoundQuiverAlgebra) -> TwoTermComplex {
        TwoTermComplex::direct_sum(a, &self.summands)
    }
}

/// The enumerated poset: nodes in BFS discovery order, Hasse arrows
/// `(from, to)` with `from > to` adjacent.
#[derive(Debug, Clone)]
pub struct SiltingPoset {
    pub nodes: Vec<SiltingNode>,
    pub hasse: Vec<(usize, usize)>,
    pub complete: bool,
    pub cap_hit: bool,
}

impl SiltingPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn fingerprint_set(&self) -> BTreeSet<Vec<Vec<i64>>> {
        self.nodes.iter().map(|n| n.fingerprint.clone()).collect()
    }
}

/// Pairwise Hom_K spaces between the summands of a node:
/// `hom[i][j] = Hom_K(summand_j, summand_i)`.
struct NodeHoms {
    hom: Vec<Vec<HomK>>,
}

impl NodeHoms {
    fn build(a: &BoundQuiverAlgebra, node: &SiltingNode) -> Result<Self, ComplexError> {
        let n = node.summands.len();
        let mut hom = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(hom_k_space(a, &node.summands[j], &node.summands[i])?);
            }
            hom.push(row);
        }
        Ok(NodeHoms { hom })
    }
}

fn compose_chain(
    a: &BoundQuiverAlgebra,
    f: &(ProjMap, ProjMap),
    g: &(ProjMap, ProjMap),
) -> (ProjMap, ProjMap) {
    (f.0.compose(a, &g.0), f.1.compose(a, &g.1))
}

/// Multiplication data of `End_K(⊕ parts)` over the block bases in `homs`,
/// restricted to the index set `keep`.
struct EndoBlocks<'a> {
    homs: &'a NodeHoms,
    /// (block_row, block_col, index) per flat basis position.
    flat: Vec<(usize, usize, usize)>,
    offsets: BTreeMap<(usize, usize), usize>,
}

impl<'a> EndoBlocks<'a> {
    fn new(homs: &'a NodeHoms, keep: Vec<usize>) -> Self {
        let mut flat = Vec::new();
        let mut offsets = BTreeMap::new();
        for &i in &keep {
            for &j in &keep {
                offsets.insert((i, j), flat.len());
                for k in 0..homs.hom[i][j].dim() {
                    flat.push((i, j, k));
                }
            }
        }
        EndoBlocks {
            homs,
            flat,
            offsets,
        }
    }

    fn dim(&self) -> usize {
        self.flat.len()
    }

    /// Coordinates of `basis_x ∘ basis_y` over the flat basis.
    fn mult_table(&self, a: &BoundQuiverAlgebra) -> Vec<Vec<Vec<Rat>>> {
        let k = self.dim();
        let mut table = vec![vec![vec![Rat::zero(); k]; k]; k];
        for (x, &(i, j, kx)) in self.flat.iter().enumerate() {
            for (y, &(j2, l, ky)) in self.flat.iter().enumerate() {
                if j != j2 {
                    continue;
                }
                let prod = compose_chain(
                    a,
                    &self.homs.hom[i][j].reps[kx],
                    &self.homs.hom[j2][l].reps[ky],
                );
                let coords = self.homs.hom[i][l]
                    .coords_of(a, &prod)
                    .expect("endomorphism blocks closed under composition");
                let off = self.offsets[&(i, l)];
                for (t, c) in coords.into_iter().enumerate() {
                    table[x][y][off + t] = c;
                }
            }
        }
        table
    }
}

/// Radical of the algebra with the given multiplication table, via the trace
/// form of the regular representation.
fn table_radical(table: &[Vec<Vec<Rat>>]) -> Vec<Vec<Rat>> {
    let k = table.len();
    if k == 0 {
        return Vec::new();
    }
    let traces: Vec<Rat> = (0..k)
        .map(|l| (0..k).map(|j| table[l][j][j].clone()).sum())
        .collect();
    let mut gram = ExactMatrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            let val: Rat = (0..k)
                .map(|l| table[i][j][l].clone() * traces[l].clone())
                .sum();
            *gram.at_mut(i, j) = val;
        }
    }
    gram.kernel_basis()
}

/// Whether `End_K(part)/rad` is one-dimensional (indecomposable with split
/// endomorphism field); the minimal-approximation shortcut requires it.
fn summand_is_split_local(a: &BoundQuiverAlgebra, homs: &NodeHoms, i: usize) -> bool {
    let blocks = EndoBlocks::new(homs, vec![i]);
    let k = blocks.dim();
    if k == 0 {
        return false;
    }
    let table = blocks.mult_table(a);
    let rad = table_radical(&table);
    k - rad.len() == 1
}

/// Minimal left approximation data: for each kept summand index, the chosen
/// representative maps `X -> part_i`.
fn minimal_approximation(
    a: &BoundQuiverAlgebra,
    node: &SiltingNode,
    homs: &NodeHoms,
    s: usize,
) -> Option<Vec<(usize, (ProjMap, ProjMap))>> {
    let keep: Vec<usize> = (0..node.summands.len()).filter(|&i| i != s).collect();
    for &i in &keep {
        if !summand_is_split_local(a, homs, i) {
            return None;
        }
    }
    let blocks = EndoBlocks::new(homs, keep.clone());
    let table = blocks.mult_table(a);
    let rad = table_radical(&table);

    // Flat coordinates of M = ⊕_i Hom_K(X, part_i).
    let mut m_offsets = BTreeMap::new();
    let mut m_dim = 0;
    for &i in &keep {
        m_offsets.insert(i, m_dim);
        m_dim += homs.hom[i][s].dim();
    }
    // rad(B)·M spans the non-minimal directions.
    let mut span = RowSpace::new(m_dim);
    for r in &rad {
        // r = sum of flat B-basis elements; apply to each M-basis vector.
        for &j in &keep {
            for t in 0..homs.hom[j][s].dim() {
                let mvec = &homs.hom[j][s].reps[t];
                let mut out = vec![Rat::zero(); m_dim];
                let mut nonzero = false;
                for (x, &(bi, bj, bk)) in blocks.flat.iter().enumerate() {
                    if r[x].is_zero() || bj != j {
                        continue;
                    }
                    let prod = compose_chain(a, &homs.hom[bi][bj].reps[bk], mvec);
                    let coords = homs.hom[bi][s]
                        .coords_of(a, &prod)
                        .expect("composition stays in the Hom space");
                    let off = m_offsets[&bi];
                    for (u, c) in coords.into_iter().enumerate() {
                        if !c.is_zero() {
                            out[off + u] = std::mem::take(&mut out[off + u]) + r[x].clone() * c;
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    span.insert(&out);
                }
            }
        }
    }
    // Top representatives: basis vectors of M enlarging the span.
    let mut chosen = Vec::new();
    for &i in &keep {
        for t in 0..homs.hom[i][s].dim() {
            let mut unit = vec![Rat::zero(); m_dim];
            unit[m_offsets[&i] + t] = Rat::one();
            if span.insert(&unit) {
                chosen.push((i, homs.hom[i][s].reps[t].clone()));
            }
        }
    }
    Some(chosen)
}

/// Mapping cone of `f : X -> E`, reduced into the two-term window.
fn cone_of_approximation(
    a: &BoundQuiverAlgebra,
    x: &TwoTermComplex,
    parts: &[(TwoTermComplex, (ProjMap, ProjMap))],
) -> Result<TwoTermComplex, MutationError> {
    let mut e1: Vec<u32> = Vec::new();
    let mut e0: Vec<u32> = Vec::new();
    for (t, _) in parts {
        e1.extend_from_slice(t.p1());
        e0.extend_from_slice(t.p0());
    }
    // Degree -2 -> -1 block: (-d_X ; f_1), degree -1 -> 0 block: (f_0, d_E).
    let mut g_rows: Vec<u32> = x.p0().to_vec();
    g_rows.extend_from_slice(&e1);
    let mut g = ProjMap::zero(a, g_rows.clone(), x.p1().to_vec());
    for r in 0..x.p0().len() {
        for c in 0..x.p1().len() {
            g.m[r][c] = x.d.m[r][c].scale(&-Rat::one());
        }
    }
    let mut row_off = x.p0().len();
    for (t, f) in parts {
        for r in 0..t.p1().len() {
            for c in 0..x.p1().len() {
                g.m[row_off + r][c] = f.0.m[r][c].clone();
            }
        }
        row_off += t.p1().len();
    }
    let mut h = ProjMap::zero(a, e0.clone(), g_rows);
    let mut r_off = 0;
    for (t, f) in parts {
        for r in 0..t.p0().len() {
            for c in 0..x.p0().len() {
                h.m[r_off + r][c] = f.1.m[r][c].clone();
            }
        }
        r_off += t.p0().len();
    }
    let (mut r_off, mut c_off) = (0, x.p0().len());
    for (t, _) in parts {
        for r in 0..t.p0().len() {
            for c in 0..t.p1().len() {
                h.m[r_off + r][c_off + c] = t.d.m[r][c].clone();
            }
        }
        r_off += t.p0().len();
        c_off += t.p1().len();
    }
    match complexes::reduce_cone(a, complexes::ThreeTerm { g, h }) {
        Ok(t) => Ok(t),
        Err(ComplexError::NotTwoTerm) => Err(MutationError::NotTwoTerm),
        Err(e) => Err(e.into()),
    }
}

/// Left mutation at summand `s`: the unique exchange strictly below, or
/// `NotTwoTerm` when the exchange partner lies above.
pub fn left_mutate(
    a: &BoundQuiverAlgebra,
    node: &SiltingNode,
    s: usize,
) -> Result<SiltingNode, MutationError> {
    let homs = NodeHoms::build(a, node)?;
    left_mutate_cached(a, node, &homs, s)
}

fn left_mutate_cached(
    a: &BoundQuiverAlgebra,
    node: &SiltingNode,
    homs: &NodeHoms,
    s: usize,
) -> Result<SiltingNode, MutationError> {
    let x = &node.summands[s];
    let rest: Vec<TwoTermComplex> = node
        .summands
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != s)
        .map(|(_, t)| t.clone())
        .collect();
    let rest_gs: BTreeSet<Vec<i64>> = rest.iter().map(|t| t.g_vector(a)).collect();

    let new_summands: Vec<TwoTermComplex> = match minimal_approximation(a, node, homs, s) {
        Some(chosen) => {
            let parts: Vec<(TwoTermComplex, (ProjMap, ProjMap))> = chosen
                .into_iter()
                .map(|(i, f)| (node.summands[i].clone(), f))
                .collect();
            let y = cone_of_approximation(a, x, &parts)?;
            if rest_gs.contains(&y.g_vector(a)) || y.g_vector(a) == x.g_vector(a) {
                return Err(MutationError::NotSilting(
                    "cone summand repeats an existing g-vector".into(),
                ));
            }
            if y.is_zero_object() {
                return Err(MutationError::NotSilting("cone vanished".into()));
            }
            vec![y]
        }
        None => {
            // Non-split endomorphism ring among the kept summands: fall back
            // to a full-basis approximation and a real decomposition.
            let mut parts = Vec::new();
            for (i, t) in node.summands.iter().enumerate() {
                if i == s {
                    continue;
                }
                for rep in &homs.hom[i][s].reps {
                    parts.push((t.clone(), rep.clone()));
                }
            }
            let cone = cone_of_approximation(a, x, &parts)?;
            let pieces = decompose(a, &cone)?;
            let fresh: Vec<TwoTermComplex> = pieces
                .into_iter()
                .filter(|p| !rest_gs.contains(&p.g_vector(a)))
                .collect();
            if fresh.len() != 1 {
                return Err(MutationError::NotSilting(format!(
                    "expected exactly one new summand, found {}",
                    fresh.len()
                )));
            }
            if fresh[0].g_vector(a) == x.g_vector(a) {
                return Err(MutationError::NotSilting(
                    "mutation returned the original summand".into(),
                ));
            }
            fresh
        }
    };

    let mut summands = rest;
    summands.extend(new_summands);
    let result = SiltingNode::from_summands(a, summands);

    // Verify: result is silting and strictly below the input.
    let new_total = result.total(a);
    if hom_k1_dimension(a, &new_total, &new_total)? != 0 {
        return Err(MutationError::NotSilting(
            "result is not presilting".into(),
        ));
    }
    let mut distinct = result.fingerprint.clone();
    distinct.dedup();
    if distinct.len() != a.quiver().vertices().len() {
        return Err(MutationError::NotSilting(
            "result does not have |L| distinct summands".into(),
        ));
    }
    let old_total = node.total(a);
    if hom_k1_dimension(a, &old_total, &new_total)? != 0 {
        return Err(MutationError::NotSilting(
            "result is not below the input".into(),
        ));
    }
    if result.fingerprint == node.fingerprint {
        return Err(MutationError::NotSilting("mutation did not move".into()));
    }
    Ok(result)
}

/// BFS enumeration of the silting poset from the algebra complex, deduped by
/// g-matrix fingerprint. `complete` is set when the frontier is exhausted
/// under the node cap; by finiteness of connected components this then is
/// the whole poset.
pub fn enumerate(a: &BoundQuiverAlgebra, cap: usize) -> Result<SiltingPoset, MutationError> {
    assert!(cap >= 1, "cap must be at least 1");
    let start = SiltingNode::from_summands(
        a,
        a.quiver()
            .vertices()
            .iter()
            .map(|&v| TwoTermComplex::projective(a, v))
            .collect(),
    );
    let mut nodes = vec![start];
    let mut index: BTreeMap<Vec<Vec<i64>>, usize> = BTreeMap::new();
    index.insert(nodes[0].fingerprint.clone(), 0);
    let mut hasse: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut cap_hit = false;

    'bfs: while let Some(cur) = queue.pop_front() {
        let node = nodes[cur].clone();
        let homs = NodeHoms::build(a, &node)?;
        for s in 0..node.summands.len() {
            match left_mutate_cached(a, &node, &homs, s) {
                Ok(next) => {
                    let id = match index.get(&next.fingerprint) {
                        Some(&id) => id,
                        None => {
                            if nodes.len() >= cap {
                                cap_hit = true;
                                break 'bfs;
                            }
                            let id = nodes.len();
                            index.insert(next.fingerprint.clone(), id);
                            nodes.push(next);
                            queue.push_back(id);
                            id
                        }
                    };
                    hasse.insert((cur, id));
                }
                Err(MutationError::NotTwoTerm) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(SiltingPoset {
        nodes,
        complete: !cap_hit,
        cap_hit,
        hasse: hasse.into_iter().collect(),
    })
}

/// Full order relation `geq[i][j] = (node_i >= node_j)` on a complete poset,
/// verified against the recorded Hasse arrows (the transitive reduction of
/// the relation must reproduce them exactly).
pub fn order_pairs(
    a: &BoundQuiverAlgebra,
    poset: &SiltingPoset,
) -> Result<Vec<Vec<bool>>, MutationError> {
    if !poset.complete {
        return Err(MutationError::IncompletePoset);
    }
    let n = poset.len();
    let totals: Vec<TwoTermComplex> = poset.nodes.iter().map(|nd| nd.total(a)).collect();
    let mut geq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            geq[i][j] = hom_k1_dimension(a, &totals[i], &totals[j])? == 0;
        }
    }
    for i in 0..n {
        if !geq[i][i] {
            return Err(MutationError::NotSilting("order not reflexive".into()));
        }
        for j in 0..n {
            if i != j && geq[i][j] && geq[j][i] {
                return Err(MutationError::NotSilting("order not antisymmetric".into()));
            }
            for k in 0..n {
                if geq[i][j] && geq[j][k] && !geq[i][k] {
                    return Err(MutationError::NotSilting("order not transitive".into()));
                }
            }
        }
    }
    // Transitive reduction must match the recorded mutation arrows.
    let mut reduction = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !geq[i][j] {
                continue;
            }
            let covered = (0..n)
                .any(|k| k != i && k != j && geq[i][k] && geq[k][j]);
            if !covered {
                reduction.insert((i, j));
            }
        }
    }
    let recorded: BTreeSet<(usize, usize)> = poset.hasse.iter().copied().collect();
    if reduction != recorded {
        return Err(MutationError::NotSilting(
            "transitive reduction of the order differs from the mutation arrows".into(),
        ));
    }
    Ok(geq)
}

/// All distinct indecomposable presilting summands occurring in the poset,
/// keyed by g-vector.
pub fn collect_summands(
    a: &BoundQuiverAlgebra,
    poset: &SiltingPoset,
) -> BTreeMap<Vec<i64>, TwoTermComplex> {
    let mut out = BTreeMap::new();
    for node in &poset.nodes {
        for s in &node.summands {
            out.entry(s.g_vector(a)).or_insert_with(|| s.clone());
        }
    }
    out
}

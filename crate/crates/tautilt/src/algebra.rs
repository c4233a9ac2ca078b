//! Finite-dimensional bound quiver algebras with an explicit normal-form
//! basis and structure constants over the rationals.
//!
//! [`BoundQuiverAlgebra::build`] constructs `kQ/I` bounded by a nilpotency
//! degree `N`: the ambient space is spanned by all paths of length below the
//! bound, the relation closure `u*g*v` is row-reduced, and the surviving
//! (non-pivot) paths under degree-lexicographic order form the basis. The
//! construction verifies that every path of length `N` already reduces to
//! zero inside the bound-`(N+1)` closure, so the result is `kQ/I` itself and
//! not a proper quotient of it; otherwise it reports [`AlgebraError::NotAdmissible`]
//! and the caller should increase the bound.
//!
//! On top of that sit the corner-space queries, the tree-characterization
//! checks (core is a tree / `e_i L a = a L e_j` per arrow / no core path dies),
//! two-sided quotients, the central-radical-element construction with its
//! tree propagation, and the Cartan-data algebra builder.

use crate::linalg::{subspace_equal, ExactMatrix, Rat, RowSpace};
use crate::quiver::{Arrow, Quiver, QuiverError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

static TOKEN_COUNTER: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("nilpotency bound must be at least 2")]
    NilboundTooSmall,
    #[error("relation term has path length < 2 (admissibility requires I inside Rad^2)")]
    RelationTooShort,
    #[error("relation references unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation term is not a composable path")]
    RelationNotComposable,
    #[error("relation terms do not share source and target")]
    RelationMixedEndpoints,
    #[error("Rad^{0} is not contained in the ideal; increase the nilpotency bound")]
    NotAdmissible(u32),
    #[error("arrow `{0}` is a loop")]
    IsLoop(String),
    #[error("quotient ideal contains a unit component")]
    IdealNotInRadical,
    #[error("tree characterization does not hold: {0}")]
    TreeCharacterizationFailed(String),
    #[error("edge propagation system unsolvable or produced a non-central element: {0}")]
    PropagationFailed(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// One relation: a linear combination of composable paths (arrow name
/// sequences) of length >= 2, all sharing source and target.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationSpec {
    pub terms: Vec<(Rat, Vec<String>)>,
}

impl RelationSpec {
    pub fn monomial(arrows: &[&str]) -> Self {
        RelationSpec {
            terms: vec![(Rat::one(), arrows.iter().map(|s| s.to_string()).collect())],
        }
    }

    /// `lhs - rhs` for two monomial paths (commutation-style relations).
    pub fn commutator(lhs: &[&str], rhs: &[&str]) -> Self {
        RelationSpec {
            terms: vec![
                (Rat::one(), lhs.iter().map(|s| s.to_string()).collect()),
                (-Rat::one(), rhs.iter().map(|s| s.to_string()).collect()),
            ],
        }
    }
}

/// Coefficient vector over the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement(pub Vec<Rat>);

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, idx: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[idx] = Rat::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, f: &Rat) -> Self {
        AlgebraElement(self.0.iter().map(|a| a.clone() * f.clone()).collect())
    }
}

type Sparse = Vec<(usize, Rat)>;

/// Condition data for the Cartan-matrix algebra builder: a symmetrizable
/// generalized Cartan matrix `C`, a symmetrizer diagonal `D`, and an
/// orientation `Omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub c: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub omega: Vec<(u32, u32)>,
}

impl CartanData {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.c.len();
        if n == 0 || self.c.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::InvalidCartan("C must be square".into()));
        }
        if self.d.len() != n {
            return Err(AlgebraError::InvalidCartan(
                "symmetrizer length must match C".into(),
            ));
        }
        for i in 0..n {
            if self.c[i][i] != 2 {
                return Err(AlgebraError::InvalidCartan(format!(
                    "c[{0}][{0}] must be 2",
                    i + 1
                )));
            }
            if self.d[i] < 1 {
                return Err(AlgebraError::InvalidCartan(
                    "symmetrizer entries must be positive".into(),
                ));
            }
            for j in 0..n {
                if i != j {
                    if self.c[i][j] > 0 {
                        return Err(AlgebraError::InvalidCartan(
                            "off-diagonal entries must be <= 0".into(),
                        ));
                    }
                    if (self.c[i][j] == 0) != (self.c[j][i] == 0) {
                        return Err(AlgebraError::InvalidCartan(
                            "c_ij = 0 must be symmetric in i, j".into(),
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.d[i] * self.c[i][j] != self.d[j] * self.c[j][i] {
                    return Err(AlgebraError::InvalidCartan("DC must be symmetric".into()));
                }
            }
        }
        // Orientation: meets {(i,j),(j,i)} exactly when c_ij < 0, and the
        // pair digraph is acyclic (no Omega-sequence returns to its start).
        for &(i, j) in &self.omega {
            let (iu, ju) = (i as usize, j as usize);
            if i == j || iu == 0 || ju == 0 || iu > n || ju > n {
                return Err(AlgebraError::InvalidOrientation(format!(
                    "pair ({i},{j}) out of range"
                )));
            }
            if self.c[iu - 1][ju - 1] >= 0 {
                return Err(AlgebraError::InvalidOrientation(format!(
                    "pair ({i},{j}) requires c_ij < 0"
                )));
            }
        }
        for i in 1..=n as u32 {
            for j in (i + 1)..=n as u32 {
                let present = self.omega.contains(&(i, j)) || self.omega.contains(&(j, i));
                if (self.c[i as usize - 1][j as usize - 1] < 0) != present {
                    return Err(AlgebraError::InvalidOrientation(format!(
                        "orientation must contain exactly one of ({i},{j}),({j},{i}) iff c_ij < 0"
                    )));
                }
            }
        }
        // Acyclicity of the orientation digraph.
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &(i, j) in &self.omega {
            adj.entry(i).or_default().push(j);
        }
        let mut color: BTreeMap<u32, u8> = BTreeMap::new();
        fn dfs(v: u32, adj: &BTreeMap<u32, Vec<u32>>, color: &mut BTreeMap<u32, u8>) -> bool {
            color.insert(v, 1);
            for &w in adj.get(&v).map(|v| v.as_slice()).unwrap_or(&[]) {
                match color.get(&w).copied().unwrap_or(0) {
                    1 => return true,
                    0 => {
                        if dfs(w, adj, color) {
                            return true;
                        }
                    }
                    _ => {}
                }
            }
            color.insert(v, 2);
            false
        }
        for v in 1..=n as u32 {
            if color.get(&v).copied().unwrap_or(0) == 0 && dfs(v, &adj, &mut color) {
                return Err(AlgebraError::InvalidOrientation(
                    "orientation sequence returns to its start".into(),
                ));
            }
        }
        Ok(())
    }
}

/// `true` iff `C` is symmetric and every nonzero off-diagonal entry is -1.
pub fn check_condition_s(c: &CartanData) -> bool {
    let n = c.c.len();
    for i in 0..n {
        for j in 0..n {
            if c.c[i][j] != c.c[j][i] {
                return false;
            }
            if i != j && c.c[i][j] != 0 && c.c[i][j] != -1 {
                return false;
            }
        }
    }
    true
}

/// Quiver, relations and nilpotency bound of the algebra `H(C, D, Omega)`:
/// arrows `a{i}_{j}(_{g})` for each orientation pair, one loop `e{i}` per
/// vertex with `c_i >= 2` (a loop with `c_i = 1` is zero and omitted), loop
/// relations `e{i}^{c_i}`, and for each arrow the commutation relation
/// `e_i^{f_ji} a = a e_j^{f_ij}` with `f_ij = |c_ij| / gcd(c_ij, c_ji)`,
/// where a side whose loop is absent drops out.
pub fn gls_build(data: &CartanData) -> Result<(Quiver, Vec<RelationSpec>, u32), AlgebraError> {
    data.validate()?;
    let n = data.c.len();
    let vertices: Vec<u32> = (1..=n as u32).collect();
    let mut arrows = Vec::new();
    let mut rels = Vec::new();
    for &(i, j) in &data.omega {
        let cij = data.c[i as usize - 1][j as usize - 1];
        let cji = data.c[j as usize - 1][i as usize - 1];
        let g = num_integer::gcd(cij.abs(), cji.abs());
        let f_ij = cij.abs() / g;
        let f_ji = cji.abs() / g;
        for k in 1..=g {
            let name = if g == 1 {
                format!("a{i}_{j}")
            } else {
                format!("a{i}_{j}_{k}")
            };
            arrows.push((name.clone(), i, j));
            let loop_i = data.d[i as usize - 1] >= 2;
            let loop_j = data.d[j as usize - 1] >= 2;
            let mut lhs: Vec<String> = Vec::new();
            if loop_i {
                lhs.extend(std::iter::repeat(format!("e{i}")).take(f_ji as usize));
            }
            lhs.push(name.clone());
            let mut rhs: Vec<String> = vec![name.clone()];
            if loop_j {
                rhs.extend(std::iter::repeat(format!("e{j}")).take(f_ij as usize));
            }
            match (loop_i, loop_j) {
                (true, true) => rels.push(RelationSpec {
                    terms: vec![(Rat::one(), lhs), (-Rat::one(), rhs)],
                }),
                (true, false) if f_ji >= 1 => rels.push(RelationSpec {
                    terms: vec![(Rat::one(), lhs)],
                }),
                (false, true) if f_ij >= 1 => rels.push(RelationSpec {
                    terms: vec![(Rat::one(), rhs)],
                }),
                _ => {}
            }
        }
    }
    for i in 1..=n as u32 {
        let ci = data.d[i as usize - 1];
        if ci >= 2 {
            arrows.push((format!("e{i}"), i, i));
            rels.push(RelationSpec {
                terms: vec![(
                    Rat::one(),
                    std::iter::repeat(format!("e{i}")).take(ci as usize).collect(),
                )],
            });
        }
    }
    let quiver = Quiver::new(
        vertices,
        arrows
            .into_iter()
            .map(|(name, source, target)| Arrow {
                name,
                source,
                target,
            })
            .collect(),
    )?;
    let maxc = data.d.iter().copied().max().unwrap_or(1) as u32;
    let nilbound = maxc * (n as u32 + 1);
    Ok((quiver, rels, nilbound.max(2)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub tree: bool,
    pub arrows: Option<bool>,
    pub paths: Option<bool>,
}

impl TreeReport {
    pub fn passes(&self) -> bool {
        self.tree && self.arrows == Some(true) && self.paths == Some(true)
    }
}

#[derive(Debug, Clone)]
struct BasisElem {
    src: u32,
    tgt: u32,
    label: String,
    is_idem: bool,
    /// Arrow-name sequence when the element is the class of a single path of
    /// the presenting quiver (always the case for freshly built algebras).
    path: Option<Vec<String>>,
}

/// `kQ/I` with a normal-form basis, structure constants, and the primitive
/// idempotents indexed by vertex. Immutable after construction.
#[derive(Debug, Clone)]
pub struct BoundQuiverAlgebra {
    token: u64,
    quiver: Quiver,
    nilbound: u32,
    elems: Vec<BasisElem>,
    idem_of: BTreeMap<u32, usize>,
    arrow_class: BTreeMap<String, AlgebraElement>,
    table: Vec<Sparse>,
    corners: BTreeMap<(u32, u32), Vec<usize>>,
    path_presented: bool,
}

impl BoundQuiverAlgebra {
    pub fn token(&self) -> u64 {
        self.token
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn nilbound(&self) -> u32 {
        self.nilbound
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.elems[idx].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.elems.iter().map(|e| e.label.clone()).collect()
    }

    pub fn source_of(&self, idx: usize) -> u32 {
        self.elems[idx].src
    }

    pub fn target_of(&self, idx: usize) -> u32 {
        self.elems[idx].tgt
    }

    pub fn is_idempotent_elem(&self, idx: usize) -> bool {
        self.elems[idx].is_idem
    }

    pub fn path_of(&self, idx: usize) -> Option<&[String]> {
        self.elems[idx].path.as_deref()
    }

    pub fn is_path_presented(&self) -> bool {
        self.path_presented
    }

    pub fn idempotent_index(&self, v: u32) -> usize {
        self.idem_of[&v]
    }

    pub fn idempotent(&self, v: u32) -> AlgebraElement {
        AlgebraElement::unit(self.dim(), self.idem_of[&v])
    }

    pub fn one(&self) -> AlgebraElement {
        let mut v = AlgebraElement::zero(self.dim());
        for &i in self.idem_of.values() {
            v.0[i] = Rat::one();
        }
        v
    }

    pub fn arrow_element(&self, name: &str) -> Option<&AlgebraElement> {
        self.arrow_class.get(name)
    }

    /// Basis indices of the corner space `e_i L e_j`.
    pub fn corner(&self, i: u32, j: u32) -> &[usize] {
        self.corners.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.elems[i].is_idem).collect()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim() + j]
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim());
        for (i, ca) in a.0.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.0.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let f = ca.clone() * cb.clone();
                for (k, coeff) in self.mul_basis(i, j) {
                    out.0[*k] = std::mem::take(&mut out.0[*k]) + coeff.clone() * f.clone();
                }
            }
        }
        out
    }

    /// Class of a composable arrow-name path, or `None` if a name is unknown.
    pub fn element_of_path(&self, names: &[&str]) -> Option<AlgebraElement> {
        let mut acc: Option<AlgebraElement> = None;
        for name in names {
            let cls = self.arrow_class.get(*name)?;
            acc = Some(match acc {
                None => cls.clone(),
                Some(prev) => self.multiply(&prev, cls),
            });
        }
        acc
    }

    /// Builds `kQ/I` with nilpotency bound `N` and verifies `Rad^N` is
    /// contained in the ideal (each length-`N` path must reduce to zero in
    /// the bound-`(N+1)` closure).
    pub fn build(
        quiver: Quiver,
        relations: &[RelationSpec],
        nilbound: u32,
    ) -> Result<Self, AlgebraError> {
        if nilbound < 2 {
            return Err(AlgebraError::NilboundTooSmall);
        }
        let n = nilbound as usize;
        let arrows = quiver.arrows();
        let arrow_idx: BTreeMap<&str, usize> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.as_str(), i))
            .collect();

        // Validate relations and convert to arrow-index form.
        let mut rels_ix: Vec<(u32, u32, Vec<(Rat, Vec<usize>)>)> = Vec::new();
        for rel in relations {
            let mut endpoints: Option<(u32, u32)> = None;
            let mut terms = Vec::new();
            for (coeff, names) in &rel.terms {
                if names.len() < 2 {
                    return Err(AlgebraError::RelationTooShort);
                }
                let mut seq = Vec::with_capacity(names.len());
                for name in names {
                    let &ix = arrow_idx
                        .get(name.as_str())
                        .ok_or_else(|| AlgebraError::UnknownArrow(name.clone()))?;
                    seq.push(ix);
                }
                for w in seq.windows(2) {
                    if arrows[w[0]].target != arrows[w[1]].source {
                        return Err(AlgebraError::RelationNotComposable);
                    }
                }
                let ep = (arrows[seq[0]].source, arrows[*seq.last().unwrap()].target);
                match endpoints {
                    None => endpoints = Some(ep),
                    Some(e) if e != ep => return Err(AlgebraError::RelationMixedEndpoints),
                    _ => {}
                }
                terms.push((coeff.clone(), seq));
            }
            if let Some((s, t)) = endpoints {
                rels_ix.push((s, t, terms));
            }
        }

        // Enumerate all paths of length <= N (the bound-(N+1) ambient space),
        // in degree-lexicographic order: trivial paths by vertex order, then
        // arrow-index sequences ordered by (length, lex).
        #[derive(Clone)]
        struct PathInfo {
            src: u32,
            tgt: u32,
            seq: Vec<usize>, // empty for trivial paths
            len: usize,
        }
        let nv = quiver.vertices().len();
        let mut paths: Vec<PathInfo> = quiver
            .vertices()
            .iter()
            .map(|&v| PathInfo {
                src: v,
                tgt: v,
                seq: Vec::new(),
                len: 0,
            })
            .collect();
        let mut by_seq: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut prev_level: Vec<usize> = Vec::new();
        for (ai, a) in arrows.iter().enumerate() {
            let id = paths.len();
            paths.push(PathInfo {
                src: a.source,
                tgt: a.target,
                seq: vec![ai],
                len: 1,
            });
            by_seq.insert(vec![ai], id);
            prev_level.push(id);
        }
        for _len in 2..=n {
            let mut level = Vec::new();
            for &pid in &prev_level {
                let (ptgt, pseq) = (paths[pid].tgt, paths[pid].seq.clone());
                for (ai, a) in arrows.iter().enumerate() {
                    if a.source != ptgt {
                        continue;
                    }
                    let mut seq = pseq.clone();
                    seq.push(ai);
                    let id = paths.len();
                    paths.push(PathInfo {
                        src: paths[pid].src,
                        tgt: a.target,
                        seq: seq.clone(),
                        len: seq.len(),
                    });
                    by_seq.insert(seq, id);
                    level.push(id);
                }
            }
            if level.is_empty() {
                break;
            }
            prev_level = level;
        }
        let total = paths.len();

        // Relation closure: rows u * g * v for all composable path pairs
        // within the bound.
        let mut ends_at: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        let mut starts_at: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (id, p) in paths.iter().enumerate() {
            ends_at.entry(p.tgt).or_default().push(id);
            starts_at.entry(p.src).or_default().push(id);
        }
        let mut closure = RowSpace::new(total);
        for (s, t, terms) in &rels_ix {
            let min_len = terms.iter().map(|(_, seq)| seq.len()).min().unwrap();
            let us = ends_at.get(s).map(|v| v.as_slice()).unwrap_or(&[]);
            let vs = starts_at.get(t).map(|v| v.as_slice()).unwrap_or(&[]);
            for &u in us {
                if paths[u].len + min_len > n {
                    continue;
                }
                for &v in vs {
                    if paths[u].len + min_len + paths[v].len > n {
                        continue;
                    }
                    let mut row = vec![Rat::zero(); total];
                    let mut nonzero = false;
                    for (coeff, seq) in terms {
                        let len = paths[u].len + seq.len() + paths[v].len;
                        if len > n {
                            continue;
                        }
                        let mut full = paths[u].seq.clone();
                        full.extend_from_slice(seq);
                        full.extend_from_slice(&paths[v].seq);
                        let id = by_seq[&full];
                        row[id] = std::mem::take(&mut row[id]) + coeff.clone();
                        nonzero = true;
                    }
                    if nonzero {
                        closure.insert(&row);
                    }
                }
            }
        }

        // Admissibility: every path of length exactly N must lie in the closure.
        for (id, p) in paths.iter().enumerate() {
            if p.len == n {
                let mut unit = vec![Rat::zero(); total];
                unit[id] = Rat::one();
                if !closure.contains(&unit) {
                    return Err(AlgebraError::NotAdmissible(nilbound));
                }
            }
        }

        // Basis: non-pivot paths of length < N.
        let pivot_set: std::collections::BTreeSet<usize> =
            closure.pivots().iter().copied().collect();
        let mut basis_ids = Vec::new();
        for (id, p) in paths.iter().enumerate() {
            if p.len < n && !pivot_set.contains(&id) {
                basis_ids.push(id);
            }
        }
        let basis_pos: BTreeMap<usize, usize> =
            basis_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let dim = basis_ids.len();

        let label_of = |p: &PathInfo| -> String {
            if p.seq.is_empty() {
                format!("id_{}", p.src)
            } else {
                p.seq
                    .iter()
                    .map(|&ai| arrows[ai].name.clone())
                    .collect::<Vec<_>>()
                    .join("*")
            }
        };

        // Normal form of a path id (length < N) over the basis.
        let pivot_row_of: BTreeMap<usize, usize> = closure
            .pivots()
            .iter()
            .enumerate()
            .map(|(r, &p)| (p, r))
            .collect();
        let nf_of_path = |id: usize| -> Sparse {
            if let Some(&pos) = basis_pos.get(&id) {
                return vec![(pos, Rat::one())];
            }
            let row = &closure.rows()[pivot_row_of[&id]];
            let mut out = Vec::new();
            for (c, coeff) in row.iter().enumerate() {
                if c == id || coeff.is_zero() {
                    continue;
                }
                if let Some(&pos) = basis_pos.get(&c) {
                    out.push((pos, -coeff.clone()));
                }
            }
            out
        };

        // Structure constants by path concatenation plus reduction.
        let mut table: Vec<Sparse> = vec![Vec::new(); dim * dim];
        for (bi, &pi) in basis_ids.iter().enumerate() {
            for (bj, &pj) in basis_ids.iter().enumerate() {
                if paths[pi].tgt != paths[pj].src {
                    continue;
                }
                let len = paths[pi].len + paths[pj].len;
                if len >= n {
                    continue;
                }
                let id = if paths[pi].seq.is_empty() {
                    pj
                } else if paths[pj].seq.is_empty() {
                    pi
                } else {
                    let mut seq = paths[pi].seq.clone();
                    seq.extend_from_slice(&paths[pj].seq);
                    by_seq[&seq]
                };
                table[bi * dim + bj] = nf_of_path(id);
            }
        }

        let elems: Vec<BasisElem> = basis_ids
            .iter()
            .map(|&id| {
                let p = &paths[id];
                BasisElem {
                    src: p.src,
                    tgt: p.tgt,
                    label: label_of(p),
                    is_idem: p.seq.is_empty(),
                    path: Some(
                        p.seq
                            .iter()
                            .map(|&ai| arrows[ai].name.clone())
                            .collect(),
                    ),
                }
            })
            .collect();
        let idem_of: BTreeMap<u32, usize> = (0..nv)
            .map(|i| (quiver.vertices()[i], i)) // trivial paths are never pivots
            .collect();
        let mut arrow_class = BTreeMap::new();
        for (ai, a) in arrows.iter().enumerate() {
            let id = by_seq[&vec![ai]];
            let sparse = nf_of_path(id); // arrows are never pivots either
            let mut v = AlgebraElement::zero(dim);
            for (k, c) in sparse {
                v.0[k] = c;
            }
            arrow_class.insert(a.name.clone(), v);
        }
        let mut corners: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
        for (i, e) in elems.iter().enumerate() {
            corners.entry((e.src, e.tgt)).or_default().push(i);
        }

        Ok(BoundQuiverAlgebra {
            token: TOKEN_COUNTER.fetch_add(1, Ordering::Relaxed),
            quiver,
            nilbound,
            elems,
            idem_of,
            arrow_class,
            table,
            corners,
            path_presented: true,
        })
    }

    /// Whether `span{x a : x in e_i L e_i} = span{a y : y in e_j L e_j}`
    /// inside `e_i L e_j`, for a non-loop arrow `a : i -> j`. Valid because
    /// `a = e_i a e_j`, so `e_i L a = (e_i L e_i) a` and `a L e_j = a (e_j L e_j)`.
    pub fn check_arrow_condition(&self, arrow_name: &str) -> Result<bool, AlgebraError> {
        let arrow = self
            .quiver
            .arrow_by_name(arrow_name)
            .ok_or_else(|| AlgebraError::UnknownArrow(arrow_name.to_string()))?;
        if arrow.is_loop() {
            return Err(AlgebraError::IsLoop(arrow_name.to_string()));
        }
        let cls = self.arrow_class[arrow_name].clone();
        let left: Vec<Vec<Rat>> = self
            .corner(arrow.source, arrow.source)
            .iter()
            .map(|&x| {
                self.multiply(&AlgebraElement::unit(self.dim(), x), &cls)
                    .0
            })
            .collect();
        let right: Vec<Vec<Rat>> = self
            .corner(arrow.target, arrow.target)
            .iter()
            .map(|&y| {
                self.multiply(&cls, &AlgebraElement::unit(self.dim(), y))
                    .0
            })
            .collect();
        Ok(subspace_equal(&left, &right, self.dim()).expect("same ambient dimension"))
    }

    /// Whether every path of the loop-free core has nonzero class.
    pub fn check_core_paths_nonzero(&self) -> Result<bool, AlgebraError> {
        let paths = self.quiver.core_paths()?;
        for p in paths {
            let names: Vec<&str> = p.arrows.iter().map(|s| s.as_str()).collect();
            let cls = self
                .element_of_path(&names)
                .ok_or_else(|| AlgebraError::UnknownArrow(names.join("*")))?;
            if cls.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The three-part tree characterization: (a) the loop-free core is a
    /// tree, (b) every non-loop arrow passes the arrow condition, (c) every
    /// core path survives. Parts (b), (c) are skipped when (a) fails.
    pub fn check_tree_characterization(&self) -> TreeReport {
        let tree = self
            .quiver
            .core()
            .is_tree_quiver()
            .expect("core has no loops");
        if !tree {
            return TreeReport {
                tree,
                arrows: None,
                paths: None,
            };
        }
        let arrows = self
            .quiver
            .arrows()
            .iter()
            .filter(|a| !a.is_loop())
            .all(|a| self.check_arrow_condition(&a.name).unwrap_or(false));
        let paths = self.check_core_paths_nonzero().unwrap_or(false);
        TreeReport {
            tree,
            arrows: Some(arrows),
            paths: Some(paths),
        }
    }

    /// Radical power subspaces `Rad^1, Rad^2, ...` down to zero (exclusive).
    pub fn radical_powers(&self) -> Vec<RowSpace> {
        let dim = self.dim();
        let rad = self.radical_indices();
        let mut r1 = RowSpace::new(dim);
        for &i in &rad {
            r1.insert(&AlgebraElement::unit(dim, i).0);
        }
        let mut out = vec![r1];
        loop {
            let prev = out.last().unwrap();
            let mut next = RowSpace::new(dim);
            for row in prev.rows() {
                let row_el = AlgebraElement(row.clone());
                for &b in &rad {
                    let prod = self.multiply(&AlgebraElement::unit(dim, b), &row_el);
                    if !prod.is_zero() {
                        next.insert(&prod.0);
                    }
                }
            }
            if next.rank() == 0 {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Quotient by the two-sided ideal generated by `gens`. Surviving
    /// idempotents must stay distinct: an ideal closure whose idempotent
    /// coordinates are not spanned by whole killed idempotents is rejected.
    pub fn quotient_by_elements(
        &self,
        gens: &[AlgebraElement],
    ) -> Result<BoundQuiverAlgebra, AlgebraError> {
        let dim = self.dim();
        let mut ideal = RowSpace::new(dim);
        let mut queue: Vec<Vec<Rat>> = Vec::new();
        for g in gens {
            if ideal.insert(&g.0) {
                queue.push(g.0.clone());
            }
        }
        while let Some(v) = queue.pop() {
            let el = AlgebraElement(v);
            for b in 0..dim {
                let unit = AlgebraElement::unit(dim, b);
                for prod in [self.multiply(&unit, &el), self.multiply(&el, &unit)] {
                    if !prod.is_zero() && ideal.insert(&prod.0) {
                        queue.push(prod.0);
                    }
                }
            }
        }

        // Killed vertices: e_v inside the ideal.
        let mut killed: Vec<u32> = Vec::new();
        for (&v, &idx) in &self.idem_of {
            if ideal.contains(&AlgebraElement::unit(dim, idx).0) {
                killed.push(v);
            }
        }
        if killed.len() == self.idem_of.len() && !self.idem_of.is_empty() {
            return Err(AlgebraError::IdealNotInRadical);
        }
        // Idempotent coordinates of the closure must be spanned by killed
        // idempotents alone.
        for row in ideal.rows() {
            for (&v, &idx) in &self.idem_of {
                if !row[idx].is_zero() && !killed.contains(&v) {
                    return Err(AlgebraError::IdealNotInRadical);
                }
            }
        }

        // Surviving basis = non-pivot coordinates.
        let pivot_set: std::collections::BTreeSet<usize> =
            ideal.pivots().iter().copied().collect();
        let survivors: Vec<usize> = (0..dim).filter(|i| !pivot_set.contains(i)).collect();
        let pos: BTreeMap<usize, usize> =
            survivors.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let qdim = survivors.len();
        let project = |v: &[Rat]| -> Vec<Rat> {
            let red = ideal.reduce(v);
            survivors.iter().map(|&s| red[s].clone()).collect()
        };

        let mut table: Vec<Sparse> = vec![Vec::new(); qdim * qdim];
        for (qi, &si) in survivors.iter().enumerate() {
            for (qj, &sj) in survivors.iter().enumerate() {
                let mut prod = vec![Rat::zero(); dim];
                for (k, c) in self.mul_basis(si, sj) {
                    prod[*k] = c.clone();
                }
                let red = project(&prod);
                let sparse: Sparse = red
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                table[qi * qdim + qj] = sparse;
            }
        }

        let elems: Vec<BasisElem> = survivors
            .iter()
            .map(|&s| self.elems[s].clone())
            .collect();
        let idem_of: BTreeMap<u32, usize> = self
            .idem_of
            .iter()
            .filter(|(v, _)| !killed.contains(v))
            .map(|(&v, &idx)| (v, pos[&idx]))
            .collect();
        let mut corners: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
        for (i, e) in elems.iter().enumerate() {
            corners.entry((e.src, e.tgt)).or_default().push(i);
        }

        // Recompute the Gabriel quiver of the quotient: surviving vertices,
        // arrow count dim e_i (R/R^2) e_j per pair, representatives preferring
        // surviving original arrows.
        let vertices: Vec<u32> = self
            .quiver
            .vertices()
            .iter()
            .copied()
            .filter(|v| !killed.contains(v))
            .collect();
        let mut tmp = BoundQuiverAlgebra {
            token: TOKEN_COUNTER.fetch_add(1, Ordering::Relaxed),
            quiver: Quiver::new(vertices.clone(), Vec::new())?,
            nilbound: self.nilbound,
            elems,
            idem_of,
            arrow_class: BTreeMap::new(),
            table,
            corners,
            path_presented: false,
        };

        let powers = tmp.radical_powers();
        let rad2 = powers.get(1);
        let mut new_arrows: Vec<Arrow> = Vec::new();
        let mut arrow_class: BTreeMap<String, AlgebraElement> = BTreeMap::new();
        for &i in &vertices {
            for &j in &vertices {
                let corner_rad: Vec<usize> = tmp
                    .corner(i, j)
                    .iter()
                    .copied()
                    .filter(|&k| !tmp.elems[k].is_idem)
                    .collect();
                if corner_rad.is_empty() {
                    continue;
                }
                let mut span = RowSpace::new(qdim);
                if let Some(r2) = rad2 {
                    for row in r2.rows() {
                        // Rows are corner-homogeneous; keep the (i, j) ones.
                        let support_in_corner = row
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .all(|(k, _)| tmp.elems[k].src == i && tmp.elems[k].tgt == j);
                        if support_in_corner
                            && row.iter().any(|c| !c.is_zero())
                        {
                            span.insert(row);
                        }
                    }
                }
                let needed = corner_rad.len() - span.rank();
                let mut count = 0;
                for a in self.quiver.arrows() {
                    if a.source != i || a.target != j || count == needed {
                        continue;
                    }
                    let mut v = vec![Rat::zero(); dim];
                    for (k, c) in self.arrow_class[&a.name].0.iter().enumerate() {
                        v[k] = c.clone();
                    }
                    let red = project(&v);
                    if span.insert(&red) {
                        new_arrows.push(Arrow {
                            name: a.name.clone(),
                            source: i,
                            target: j,
                        });
                        arrow_class.insert(a.name.clone(), AlgebraElement(red));
                        count += 1;
                    }
                }
                // Fallback representatives when original arrows do not span.
                let mut extra = 0;
                while count < needed {
                    let mut advanced = false;
                    for &k in &corner_rad {
                        let v = AlgebraElement::unit(qdim, k);
                        if span.insert(&v.0) {
                            let name = format!("q{i}_{j}_{extra}");
                            extra += 1;
                            new_arrows.push(Arrow {
                                name: name.clone(),
                                source: i,
                                target: j,
                            });
                            arrow_class.insert(name, v);
                            count += 1;
                            advanced = true;
                            break;
                        }
                    }
                    if !advanced {
                        break;
                    }
                }
            }
        }
        tmp.quiver = Quiver::new(vertices, new_arrows)?;
        tmp.arrow_class = arrow_class;
        tmp.nilbound = (powers.len() as u32 + 1).max(2);
        Ok(tmp)
    }

    /// The central radical element `z = sum_j l_j` obtained by picking a
    /// deepest loop class at a vertex maximizing `m_i` and propagating along
    /// the tree edges; `None` when every `m_i` is zero. Requires the tree
    /// characterization to hold.
    #[allow(clippy::type_complexity)]
    pub fn central_element(
        &self,
    ) -> Result<Option<(AlgebraElement, Vec<(u32, AlgebraElement)>)>, AlgebraError> {
        let report = self.check_tree_characterization();
        if !report.passes() {
            return Err(AlgebraError::TreeCharacterizationFailed(format!(
                "{report:?}"
            )));
        }
        let dim = self.dim();
        let powers = self.radical_powers();
        // m_i = max m with e_i Rad^m e_i != 0 (0 when none). Radical power
        // rows are corner-homogeneous, so membership is a support check.
        let mut m: BTreeMap<u32, usize> = BTreeMap::new();
        for &v in self.quiver.vertices() {
            m.insert(v, 0);
        }
        for (k, space) in powers.iter().enumerate() {
            for row in space.rows() {
                let supp: Vec<usize> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, _)| i)
                    .collect();
                if supp.is_empty() {
                    continue;
                }
                let (s, t) = (self.elems[supp[0]].src, self.elems[supp[0]].tgt);
                if s == t && supp.iter().all(|&i| {
                    self.elems[i].src == s && self.elems[i].tgt == s
                }) {
                    let entry = m.get_mut(&s).unwrap();
                    *entry = (*entry).max(k + 1);
                }
            }
        }
        let max_m = m.values().copied().max().unwrap_or(0);
        if max_m == 0 {
            return Ok(None);
        }
        let root = *self
            .quiver
            .vertices()
            .iter()
            .find(|v| m[v] == max_m)
            .unwrap();
        // Deterministic nonzero element of e_root Rad^{max_m} e_root.
        let deep = &powers[max_m - 1];
        let l_root = deep
            .rows()
            .iter()
            .find(|row| {
                row.iter().enumerate().any(|(i, c)| {
                    !c.is_zero() && self.elems[i].src == root && self.elems[i].tgt == root
                })
            })
            .map(|row| AlgebraElement(row.clone()))
            .ok_or_else(|| AlgebraError::PropagationFailed("no deep loop class".into()))?;

        // Propagate along the tree: l_{j'} a = a l_j for a : j' -> j and
        // l_j a = a l_{j'} for a : j -> j', with j' the vertex nearer the root.
        let core = self.quiver.core();
        let mut solved: BTreeMap<u32, AlgebraElement> = BTreeMap::new();
        solved.insert(root, l_root);
        let mut frontier = vec![root];
        while let Some(jp) = frontier.pop() {
            for a in core.arrows() {
                let (from_known, j) = if a.source == jp && !solved.contains_key(&a.target) {
                    (true, a.target)
                } else if a.target == jp && !solved.contains_key(&a.source) {
                    (false, a.source)
                } else {
                    continue;
                };
                let cls = &self.arrow_class[&a.name];
                let lk = solved[&jp].clone();
                let unknown_basis: Vec<usize> = self
                    .corner(j, j)
                    .iter()
                    .copied()
                    .filter(|&k| !self.elems[k].is_idem)
                    .collect();
                let (cols, rhs): (Vec<Vec<Rat>>, Vec<Rat>) = if from_known {
                    // a : j' -> j, unknown on the right of a.
                    let cols = unknown_basis
                        .iter()
                        .map(|&b| self.multiply(cls, &AlgebraElement::unit(dim, b)).0)
                        .collect();
                    (cols, self.multiply(&lk, cls).0)
                } else {
                    // a : j -> j', unknown on the left of a.
                    let cols = unknown_basis
                        .iter()
                        .map(|&b| self.multiply(&AlgebraElement::unit(dim, b), cls).0)
                        .collect();
                    (cols, self.multiply(cls, &lk).0)
                };
                let mut mat = ExactMatrix::zero(dim, cols.len());
                for (c, col) in cols.iter().enumerate() {
                    for r in 0..dim {
                        *mat.at_mut(r, c) = col[r].clone();
                    }
                }
                let x = mat.solve(&rhs).ok_or_else(|| {
                    AlgebraError::PropagationFailed(format!(
                        "edge {} between {} and {}",
                        a.name, jp, j
                    ))
                })?;
                let mut lj = AlgebraElement::zero(dim);
                for (c, &b) in unknown_basis.iter().enumerate() {
                    if !x[c].is_zero() {
                        lj.0[b] = x[c].clone();
                    }
                }
                solved.insert(j, lj);
                frontier.push(j);
            }
        }

        let mut z = AlgebraElement::zero(dim);
        for l in solved.values() {
            z = z.add(l);
        }
        // Verify z central and radical.
        for (&v, &idx) in &self.idem_of {
            if !z.0[idx].is_zero() {
                return Err(AlgebraError::PropagationFailed(format!(
                    "z has a unit component at vertex {v}"
                )));
            }
        }
        for b in 0..dim {
            let unit = AlgebraElement::unit(dim, b);
            if self.multiply(&z, &unit) != self.multiply(&unit, &z) {
                return Err(AlgebraError::PropagationFailed(format!(
                    "z does not commute with basis element {}",
                    self.label(b)
                )));
            }
        }
        Ok(Some((z, solved.into_iter().collect())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat_int, rat_one};

    pub(crate) fn gls_a2() -> BoundQuiverAlgebra {
        let q =
            Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("e1", 1, 1), ("e2", 2, 2)]).unwrap();
        let rels = vec![
            RelationSpec::monomial(&["e1", "e1"]),
            RelationSpec::monomial(&["e2", "e2"]),
            RelationSpec::commutator(&["e1", "a"], &["a", "e2"]),
        ];
        BoundQuiverAlgebra::build(q, &rels, 4).unwrap()
    }

    fn ka2() -> BoundQuiverAlgebra {
        BoundQuiverAlgebra::build(Quiver::linear_a(2), &[], 2).unwrap()
    }

    fn ka3_rel() -> BoundQuiverAlgebra {
        BoundQuiverAlgebra::build(
            Quiver::linear_a(3),
            &[RelationSpec::monomial(&["a1", "a2"])],
            3,
        )
        .unwrap()
    }

    #[test]
    fn build_ka2() {
        let a = ka2();
        assert_eq!(a.dim(), 3);
        let mut labels = a.labels();
        labels.sort();
        assert_eq!(labels, vec!["a1", "id_1", "id_2"]);
    }

    #[test]
    fn build_gls_a2() {
        let a = gls_a2();
        assert_eq!(a.dim(), 6);
        let mut labels = a.labels();
        labels.sort();
        assert_eq!(labels, vec!["a", "e1", "e1*a", "e2", "id_1", "id_2"]);
    }

    #[test]
    fn build_ka3_with_relation() {
        let a = ka3_rel();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn build_rejects_short_relation() {
        let q = Quiver::from_parts(&[1, 2], &[("a", 1, 2)]).unwrap();
        let r = RelationSpec::monomial(&["a"]);
        assert_eq!(
            BoundQuiverAlgebra::build(q, &[r], 3).unwrap_err(),
            AlgebraError::RelationTooShort
        );
    }

    #[test]
    fn build_detects_inadmissible_bound() {
        // A loop with no relation: Rad^N never reaches zero.
        let q = Quiver::from_parts(&[1], &[("e", 1, 1)]).unwrap();
        assert_eq!(
            BoundQuiverAlgebra::build(q, &[], 3).unwrap_err(),
            AlgebraError::NotAdmissible(3)
        );
    }

    #[test]
    fn build_stable_in_bound() {
        let q =
            Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("e1", 1, 1), ("e2", 2, 2)]).unwrap();
        let rels = vec![
            RelationSpec::monomial(&["e1", "e1"]),
            RelationSpec::monomial(&["e2", "e2"]),
            RelationSpec::commutator(&["e1", "a"], &["a", "e2"]),
        ];
        let a4 = BoundQuiverAlgebra::build(q.clone(), &rels, 4).unwrap();
        let a5 = BoundQuiverAlgebra::build(q, &rels, 5).unwrap();
        assert_eq!(a4.dim(), a5.dim());
        // Same labels in the same order, and the same structure constants
        // under the label identification.
        assert_eq!(a4.labels(), a5.labels());
        for i in 0..a4.dim() {
            for j in 0..a4.dim() {
                assert_eq!(a4.mul_basis(i, j), a5.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn multiply_idempotent_action() {
        let a = ka2();
        let alpha = a.arrow_element("a1").unwrap().clone();
        let e1 = a.idempotent(1);
        assert_eq!(a.multiply(&e1, &alpha), alpha);
        assert!(a.multiply(&alpha, &e1).is_zero());
    }

    #[test]
    fn multiply_gls_commutation() {
        let a = gls_a2();
        let alpha = a.arrow_element("a").unwrap().clone();
        let eps1 = a.arrow_element("e1").unwrap().clone();
        let eps2 = a.arrow_element("e2").unwrap().clone();
        let lhs = a.multiply(&eps1, &alpha);
        let rhs = a.multiply(&alpha, &eps2);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn associativity_on_random_triples() {
        let a = gls_a2();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    let (x, y, z) = (
                        AlgebraElement::unit(a.dim(), i),
                        AlgebraElement::unit(a.dim(), j),
                        AlgebraElement::unit(a.dim(), k),
                    );
                    assert_eq!(
                        a.multiply(&a.multiply(&x, &y), &z),
                        a.multiply(&x, &a.multiply(&y, &z))
                    );
                }
            }
        }
    }

    #[test]
    fn dimension_additivity() {
        for a in [ka2(), gls_a2(), ka3_rel()] {
            let mut total = 0;
            for &i in a.quiver().vertices() {
                for &j in a.quiver().vertices() {
                    total += a.corner(i, j).len();
                }
            }
            assert_eq!(total, a.dim());
        }
    }

    #[test]
    fn corner_spaces() {
        let a = ka2();
        assert_eq!(a.corner(1, 2).len(), 1);
        assert_eq!(a.corner(2, 1).len(), 0);
        let g = gls_a2();
        let labels: Vec<&str> = g.corner(1, 2).iter().map(|&i| g.label(i)).collect();
        assert_eq!(labels, vec!["a", "e1*a"]);
    }

    #[test]
    fn arrow_condition_hereditary() {
        let a = ka2();
        assert!(a.check_arrow_condition("a1").unwrap());
    }

    #[test]
    fn arrow_condition_gls() {
        let a = gls_a2();
        assert!(a.check_arrow_condition("a").unwrap());
        assert_eq!(
            a.check_arrow_condition("e1"),
            Err(AlgebraError::IsLoop("e1".into()))
        );
    }

    #[test]
    fn arrow_condition_one_sided_loop() {
        // Loop at the source only. With e1^2 and e1*a killed the spans agree;
        // with only e1^2 they differ.
        let q = Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("e1", 1, 1)]).unwrap();
        let balanced = BoundQuiverAlgebra::build(
            q.clone(),
            &[
                RelationSpec::monomial(&["e1", "e1"]),
                RelationSpec::monomial(&["e1", "a"]),
            ],
            3,
        )
        .unwrap();
        assert!(balanced.check_arrow_condition("a").unwrap());
        let unbalanced = BoundQuiverAlgebra::build(
            q,
            &[RelationSpec::monomial(&["e1", "e1"])],
            3,
        )
        .unwrap();
        assert!(!unbalanced.check_arrow_condition("a").unwrap());
    }

    #[test]
    fn core_paths_nonzero() {
        assert!(BoundQuiverAlgebra::build(Quiver::linear_a(3), &[], 3)
            .unwrap()
            .check_core_paths_nonzero()
            .unwrap());
        assert!(!ka3_rel().check_core_paths_nonzero().unwrap());
        assert!(gls_a2().check_core_paths_nonzero().unwrap());
    }

    #[test]
    fn tree_characterization_reports() {
        assert!(gls_a2().check_tree_characterization().passes());
        let r = ka3_rel().check_tree_characterization();
        assert_eq!((r.tree, r.arrows, r.paths), (true, Some(true), Some(false)));
        let two_cycle = Quiver::from_parts(&[1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        let rels = vec![
            RelationSpec::monomial(&["a", "b"]),
            RelationSpec::monomial(&["b", "a"]),
        ];
        let alg = BoundQuiverAlgebra::build(two_cycle, &rels, 3).unwrap();
        let r = alg.check_tree_characterization();
        assert_eq!((r.tree, r.arrows, r.paths), (false, None, None));
    }

    #[test]
    fn quotient_by_central_element() {
        let a = gls_a2();
        let z = a
            .arrow_element("e1")
            .unwrap()
            .add(a.arrow_element("e2").unwrap());
        let q = a.quotient_by_elements(&[z]).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.quiver().vertices(), &[1, 2]);
        assert_eq!(q.quiver().arrows().len(), 1);
        assert!(q.check_tree_characterization().passes());
    }

    #[test]
    fn quotient_by_nothing() {
        let a = gls_a2();
        let q = a.quotient_by_elements(&[]).unwrap();
        assert_eq!(q.dim(), a.dim());
    }

    #[test]
    fn quotient_by_idempotent() {
        let a = BoundQuiverAlgebra::build(Quiver::linear_a(3), &[], 3).unwrap();
        let q = a.quotient_by_elements(&[a.idempotent(3)]).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.quiver().vertices(), &[1, 2]);
        assert_eq!(q.quiver().arrows().len(), 1);
    }

    #[test]
    fn quotient_dimension_decreases() {
        let a = gls_a2();
        let z = a.arrow_element("e1").unwrap().clone();
        let q = a.quotient_by_elements(&[z]).unwrap();
        assert!(q.dim() < a.dim());
    }

    #[test]
    fn central_element_gls_a2() {
        let a = gls_a2();
        let (z, family) = a.central_element().unwrap().unwrap();
        let expected = a
            .arrow_element("e1")
            .unwrap()
            .add(a.arrow_element("e2").unwrap());
        assert_eq!(z, expected);
        assert_eq!(family.len(), 2);
        let alpha = a.arrow_element("a").unwrap().clone();
        let eps1 = a.arrow_element("e1").unwrap().clone();
        let za = a.multiply(&z, &alpha);
        let az = a.multiply(&alpha, &z);
        assert_eq!(za, az);
        assert_eq!(za, a.multiply(&eps1, &alpha));
        assert!(a.multiply(&z, &eps1).is_zero());
    }

    #[test]
    fn central_element_absent_for_hereditary() {
        let a = BoundQuiverAlgebra::build(Quiver::linear_a(3), &[], 3).unwrap();
        assert_eq!(a.central_element().unwrap(), None);
    }

    #[test]
    fn central_element_iteration_reaches_core() {
        let mut a = gls_a2();
        loop {
            match a.central_element().unwrap() {
                Some((z, _)) => a = a.quotient_by_elements(&[z]).unwrap(),
                None => break,
            }
        }
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn central_element_commutes_with_all_basis_elements() {
        let a = gls_a2();
        let (z, _) = a.central_element().unwrap().unwrap();
        for b in 0..a.dim() {
            let unit = AlgebraElement::unit(a.dim(), b);
            assert_eq!(a.multiply(&z, &unit), a.multiply(&unit, &z));
        }
        for (_, &idx) in a.idem_of.iter() {
            assert!(z.0[idx].is_zero());
        }
    }

    fn symmetric_a2_cartan() -> CartanData {
        CartanData {
            c: vec![vec![2, -1], vec![-1, 2]],
            d: vec![2, 2],
            omega: vec![(1, 2)],
        }
    }

    #[test]
    fn gls_build_a2() {
        let (q, rels, n) = gls_build(&symmetric_a2_cartan()).unwrap();
        assert_eq!(q.vertices(), &[1, 2]);
        let names: Vec<&str> = q.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, vec!["a1_2", "e1", "e2"]);
        assert_eq!(rels.len(), 3);
        let alg = BoundQuiverAlgebra::build(q, &rels, n).unwrap();
        assert_eq!(alg.dim(), 6);
        assert!(alg.check_tree_characterization().passes());
    }

    #[test]
    fn gls_build_identity_symmetrizer_is_hereditary() {
        let data = CartanData {
            c: vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            d: vec![1, 1, 1],
            omega: vec![(1, 2), (2, 3)],
        };
        let (q, rels, n) = gls_build(&data).unwrap();
        assert!(q.arrows().iter().all(|a| !a.is_loop()));
        assert!(rels.is_empty());
        let alg = BoundQuiverAlgebra::build(q, &rels, n).unwrap();
        assert_eq!(alg.dim(), 6); // path algebra of A3
    }

    #[test]
    fn gls_build_b2_shape() {
        // c1 = 1 kills the loop at vertex 1; the commutation relation
        // degenerates to a redundant single-sided one.
        let data = CartanData {
            c: vec![vec![2, -2], vec![-1, 2]],
            d: vec![1, 2],
            omega: vec![(1, 2)],
        };
        let (q, rels, n) = gls_build(&data).unwrap();
        let names: Vec<&str> = q.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, vec!["a1_2", "e2"]);
        let alg = BoundQuiverAlgebra::build(q, &rels, n).unwrap();
        assert_eq!(alg.dim(), 5);
        let mut labels = alg.labels();
        labels.sort();
        assert_eq!(labels, vec!["a1_2", "a1_2*e2", "e2", "id_1", "id_2"]);
    }

    #[test]
    fn condition_s_checks() {
        assert!(check_condition_s(&symmetric_a2_cartan()));
        let mut bad = symmetric_a2_cartan();
        bad.c[0][1] = -2;
        bad.c[1][0] = -2;
        bad.d = vec![1, 1];
        assert!(!check_condition_s(&bad));
        let asym = CartanData {
            c: vec![vec![2, -2], vec![-1, 2]],
            d: vec![1, 2],
            omega: vec![(1, 2)],
        };
        assert!(!check_condition_s(&asym));
    }

    #[test]
    fn gls_satisfies_arrow_and_path_conditions_under_s() {
        // Random-ish small symmetric Cartan matrices of tree type with (S).
        let cases = vec![
            (vec![vec![2, -1], vec![-1, 2]], vec![3, 3], vec![(2, 1)]),
            (
                vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
                vec![2, 2, 2],
                vec![(1, 2), (3, 2)],
            ),
            (
                vec![vec![2, 0, -1], vec![0, 2, -1], vec![-1, -1, 2]],
                vec![3, 3, 3],
                vec![(1, 3), (3, 2)],
            ),
        ];
        for (c, d, omega) in cases {
            let data = CartanData { c, d, omega };
            assert!(check_condition_s(&data));
            let (q, rels, n) = gls_build(&data).unwrap();
            let alg = BoundQuiverAlgebra::build(q, &rels, n).unwrap();
            let report = alg.check_tree_characterization();
            assert_eq!(report.arrows, Some(true));
            assert_eq!(report.paths, Some(true));
        }
    }

    #[test]
    fn rational_coefficients_are_exact() {
        // 2/3 e1 e1 = 0 is the same ideal as e1 e1 = 0.
        let q = Quiver::from_parts(&[1], &[("e", 1, 1)]).unwrap();
        let rel = RelationSpec {
            terms: vec![(
                rat_int(2) / rat_int(3),
                vec!["e".to_string(), "e".to_string()],
            )],
        };
        let a = BoundQuiverAlgebra::build(q, &[rel], 2).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(rat_one(), rat_int(1));
    }
}

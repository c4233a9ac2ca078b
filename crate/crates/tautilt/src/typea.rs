//! Combinatorial interval model for the silting poset of algebras whose
//! loop-free core is the linearly ordered quiver `1 -> 2 -> ... -> n`.
//!
//! The indecomposable rigid objects are the intervals `X(i, j)` for
//! `1 <= i <= j <= n` (with `X(i, n)` projective); rigidity of a pair is a
//! closed-interval condition on `[i-1, j]` brackets, and a configuration is
//! a pairwise-compatible set covering as many vertices as it has members.
//! This model is independent of the mutation engine and serves as its
//! oracle on type-A inputs.

use std::collections::BTreeSet;

/// The interval object `X(i, j)`, `1 <= i <= j <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    pub i: u32,
    pub j: u32,
    pub n: u32,
}

impl Interval {
    pub fn new(i: u32, j: u32, n: u32) -> Self {
        assert!(1 <= i && i <= j && j <= n, "interval out of range");
        Interval { i, j, n }
    }

    /// Support vertices `i..=j`.
    pub fn support(&self) -> impl Iterator<Item = u32> {
        self.i..=self.j
    }

    fn bracket(&self) -> (i64, i64) {
        (self.i as i64 - 1, self.j as i64)
    }
}

/// `Hom(x, tau y) = 0` for interval objects of the same rank: the brackets
/// `[i-1, j]`, `[p-1, q]` are disjoint, or nested, or interleave as
/// `i-1 < p-1 <= j < q`.
pub fn hom_tau_vanishes(x: &Interval, y: &Interval) -> bool {
    assert_eq!(x.n, y.n, "interval ranks differ");
    let (a, b) = x.bracket();
    let (c, d) = y.bracket();
    let disjoint = b < c || d < a;
    let nested = (c <= a && b <= d) || (a <= c && d <= b);
    let interleaved = a < c && c <= b && b < d;
    disjoint || nested || interleaved
}

/// A support tau-tilting configuration: pairwise-compatible intervals whose
/// count equals the size of their support union; the shifted part is the
/// complement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntervalConfig {
    pub n: u32,
    pub intervals: Vec<Interval>,
    pub shifted: Vec<u32>,
}

impl IntervalConfig {
    pub fn new(n: u32, mut intervals: Vec<Interval>) -> Self {
        intervals.sort();
        let support: BTreeSet<u32> = intervals.iter().flat_map(|x| x.support()).collect();
        let shifted: Vec<u32> = (1..=n).filter(|v| !support.contains(v)).collect();
        IntervalConfig {
            n,
            intervals,
            shifted,
        }
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.intervals.iter().flat_map(|x| x.support()).collect()
    }
}

/// All configurations for rank `n`, including the empty one, by depth-first
/// search with pairwise-compatibility pruning.
pub fn enumerate_interval_model(n: u32) -> Vec<IntervalConfig> {
    assert!(n >= 1);
    let all: Vec<Interval> = (1..=n)
        .flat_map(|i| (i..=n).map(move |j| Interval::new(i, j, n)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Interval> = Vec::new();
    search(&all, 0, &mut chosen, &mut out, n);
    out
}

fn search(
    all: &[Interval],
    from: usize,
    chosen: &mut Vec<Interval>,
    out: &mut Vec<IntervalConfig>,
    n: u32,
) {
    let support: BTreeSet<u32> = chosen.iter().flat_map(|x| x.support()).collect();
    if chosen.len() == support.len() {
        out.push(IntervalConfig::new(n, chosen.clone()));
    }
    for k in from..all.len() {
        let cand = all[k];
        if chosen
            .iter()
            .all(|x| hom_tau_vanishes(x, &cand) && hom_tau_vanishes(&cand, x))
        {
            chosen.push(cand);
            search(all, k + 1, chosen, out, n);
            chosen.pop();
        }
    }
}

/// Order on configurations: support containment together with
/// `Hom(y, tau x) = 0` for every member `y` of the smaller and `x` of the
/// larger configuration.
pub fn interval_order_geq(a: &IntervalConfig, b: &IntervalConfig) -> bool {
    assert_eq!(a.n, b.n, "configuration ranks differ");
    let sa = a.support();
    let sb = b.support();
    if !sb.is_subset(&sa) {
        return false;
    }
    b.intervals
        .iter()
        .all(|y| a.intervals.iter().all(|x| hom_tau_vanishes(y, x)))
}

/// Canonical g-matrix fingerprint of a configuration: `X(i, j)` contributes
/// `e_i - e_{j+1}` (just `e_i` when `j = n`), a shifted vertex contributes
/// `-e_v`; rows sorted.
pub fn to_gmatrix(c: &IntervalConfig) -> Vec<Vec<i64>> {
    let n = c.n as usize;
    let mut out: Vec<Vec<i64>> = Vec::new();
    for x in &c.intervals {
        let mut g = vec![0i64; n];
        g[(x.i - 1) as usize] += 1;
        if x.j < c.n {
            g[x.j as usize] -= 1;
        }
        out.push(g);
    }
    for &v in &c.shifted {
        let mut g = vec![0i64; n];
        g[(v - 1) as usize] -= 1;
        out.push(g);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BoundQuiverAlgebra;
    use crate::mutation::{enumerate, order_pairs};
    use crate::poset::FinitePoset;
    use crate::quiver::Quiver;

    #[test]
    fn sentinel_asymmetry_at_rank_two() {
        // The pair behind "X_1 + P_2 is not rigid": one direction holds,
        // the other fails.
        let x11 = Interval::new(1, 1, 2);
        let x22 = Interval::new(2, 2, 2);
        assert!(hom_tau_vanishes(&x11, &x22));
        assert!(!hom_tau_vanishes(&x22, &x11));
    }

    #[test]
    fn self_compatibility() {
        for n in 1..=4 {
            for i in 1..=n {
                for j in i..=n {
                    let x = Interval::new(i, j, n);
                    assert!(hom_tau_vanishes(&x, &x));
                }
            }
        }
    }

    #[test]
    fn disjoint_brackets_are_compatible() {
        let x = Interval::new(1, 1, 3);
        let y = Interval::new(3, 3, 3);
        assert!(hom_tau_vanishes(&x, &y));
        assert!(hom_tau_vanishes(&y, &x));
    }

    #[test]
    fn projective_targets_always_vanish() {
        // Hom(-, tau P) = 0: for q = n the predicate always holds.
        for n in 1..=5u32 {
            for p in 1..=n {
                let proj = Interval::new(p, n, n);
                for i in 1..=n {
                    for j in i..=n {
                        assert!(hom_tau_vanishes(&Interval::new(i, j, n), &proj));
                    }
                }
            }
        }
    }

    #[test]
    fn model_counts() {
        assert_eq!(enumerate_interval_model(1).len(), 2);
        assert_eq!(enumerate_interval_model(2).len(), 5);
        assert_eq!(enumerate_interval_model(3).len(), 14);
    }

    #[test]
    fn rank_two_configurations_exactly() {
        let mut got: Vec<Vec<(u32, u32)>> = enumerate_interval_model(2)
            .into_iter()
            .map(|c| c.intervals.iter().map(|x| (x.i, x.j)).collect())
            .collect();
        got.sort();
        let mut expect = vec![
            vec![],
            vec![(1, 1)],
            vec![(2, 2)],
            vec![(1, 1), (1, 2)],
            vec![(1, 2), (2, 2)],
        ];
        for e in &mut expect {
            e.sort();
        }
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn empty_config_is_minimum() {
        let configs = enumerate_interval_model(3);
        let empty = configs.iter().find(|c| c.intervals.is_empty()).unwrap();
        for c in &configs {
            assert!(interval_order_geq(c, empty));
        }
    }

    #[test]
    fn full_config_is_maximum() {
        let configs = enumerate_interval_model(2);
        let full = IntervalConfig::new(
            2,
            vec![Interval::new(1, 2, 2), Interval::new(2, 2, 2)],
        );
        for c in &configs {
            assert!(interval_order_geq(&full, c));
        }
    }

    #[test]
    fn simple_configs_incomparable() {
        let s1 = IntervalConfig::new(2, vec![Interval::new(1, 1, 2)]);
        let s2 = IntervalConfig::new(2, vec![Interval::new(2, 2, 2)]);
        assert!(!interval_order_geq(&s1, &s2));
        assert!(!interval_order_geq(&s2, &s1));
    }

    #[test]
    fn gmatrix_of_simple_config() {
        let c = IntervalConfig::new(2, vec![Interval::new(1, 1, 2)]);
        assert_eq!(c.shifted, vec![2]);
        assert_eq!(to_gmatrix(&c), vec![vec![0, -1], vec![1, -1]]);
    }

    #[test]
    fn gmatrix_of_full_and_empty() {
        let full = IntervalConfig::new(
            2,
            vec![Interval::new(1, 2, 2), Interval::new(2, 2, 2)],
        );
        assert_eq!(to_gmatrix(&full), vec![vec![0, 1], vec![1, 0]]);
        let empty = IntervalConfig::new(2, vec![]);
        assert_eq!(to_gmatrix(&empty), vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn model_matches_engine_pentagon() {
        let a = BoundQuiverAlgebra::build(Quiver::linear_a(2), &[], 2).unwrap();
        let sp = enumerate(&a, 100).unwrap();
        let engine_fps = sp.fingerprint_set();
        let model_fps: std::collections::BTreeSet<Vec<Vec<i64>>> = enumerate_interval_model(2)
            .iter()
            .map(to_gmatrix)
            .collect();
        assert_eq!(engine_fps, model_fps);
        // The posets agree as abstract posets too.
        let geq = order_pairs(&a, &sp).unwrap();
        let engine_poset = FinitePoset::from_geq(&geq).unwrap();
        let configs = enumerate_interval_model(2);
        let n = configs.len();
        let mut m = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = interval_order_geq(&configs[i], &configs[j]);
            }
        }
        let model_poset = FinitePoset::from_geq(&m).unwrap();
        assert!(engine_poset.is_isomorphic(&model_poset).is_some());
    }

    #[test]
    fn join_of_simples_is_the_restricted_algebra() {
        // Join of the simple configs S_1 ... S_{n-1} is the configuration of
        // the algebra with the last vertex cut: all X(i, n-1) plus shift n.
        let n = 3u32;
        let configs = enumerate_interval_model(n);
        let mut m = vec![vec![false; configs.len()]; configs.len()];
        for i in 0..configs.len() {
            for j in 0..configs.len() {
                m[i][j] = interval_order_geq(&configs[i], &configs[j]);
            }
        }
        let poset = FinitePoset::from_geq(&m).unwrap();
        let idx_of = |c: &IntervalConfig| configs.iter().position(|d| d == c).unwrap();
        let s1 = idx_of(&IntervalConfig::new(n, vec![Interval::new(1, 1, n)]));
        let s2 = idx_of(&IntervalConfig::new(n, vec![Interval::new(2, 2, n)]));
        let join = poset.join(s1, s2).expect("rank-three model is a lattice");
        let expected = IntervalConfig::new(
            n,
            vec![Interval::new(1, 2, n), Interval::new(2, 2, n)],
        );
        assert_eq!(configs[join], expected);
        assert_eq!(configs[join].shifted, vec![3]);
    }
}

//! JSON and DOT emission for enumerated posets, shared between the mutation
//! engine and the interval model. Output is deterministic: node order comes
//! from the (deterministic) enumeration, field order from the structs.

use crate::algebra::BoundQuiverAlgebra;
use crate::mutation::SiltingPoset;
use crate::poset::FinitePoset;
use crate::typea::{enumerate_interval_model, interval_order_geq, to_gmatrix, IntervalConfig};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct NodeJson {
    pub id: usize,
    pub gmatrix: Vec<Vec<i64>>,
    pub dim_vector: Vec<u64>,
    pub support: Vec<u32>,
    pub shifted: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetJson {
    pub complete: bool,
    pub nodes: Vec<NodeJson>,
    pub hasse: Vec<[usize; 2]>,
}

pub fn poset_view(_a: &BoundQuiverAlgebra, sp: &SiltingPoset) -> PosetJson {
    let nodes = sp
        .nodes
        .iter()
        .enumerate()
        .map(|(id, n)| NodeJson {
            id,
            gmatrix: n.fingerprint.clone(),
            dim_vector: n.module.dim_vector.clone(),
            support: n.module.support.clone(),
            shifted: n.module.shifted.clone(),
        })
        .collect();
    let mut hasse: Vec<[usize; 2]> = sp.hasse.iter().map(|&(f, t)| [f, t]).collect();
    hasse.sort();
    PosetJson {
        complete: sp.complete,
        nodes,
        hasse,
    }
}

fn config_dim_vector(c: &IntervalConfig) -> Vec<u64> {
    (1..=c.n)
        .map(|v| c.intervals.iter().filter(|x| x.i <= v && v <= x.j).count() as u64)
        .collect()
}

/// Interval-model poset in the same schema; configurations are ordered by
/// their g-matrix for canonical node ids.
pub fn typea_view(n: u32) -> PosetJson {
    let mut configs = enumerate_interval_model(n);
    configs.sort_by_key(to_gmatrix);
    let m = configs.len();
    let mut geq = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            geq[i][j] = interval_order_geq(&configs[i], &configs[j]);
        }
    }
    let poset = FinitePoset::from_geq(&geq).expect("interval order is a partial order");
    let nodes = configs
        .iter()
        .enumerate()
        .map(|(id, c)| NodeJson {
            id,
            gmatrix: to_gmatrix(c),
            dim_vector: config_dim_vector(c),
            support: c.support().into_iter().collect(),
            shifted: c.shifted.clone(),
        })
        .collect();
    let mut hasse: Vec<[usize; 2]> = poset.hasse().iter().map(|&(f, t)| [f, t]).collect();
    hasse.sort();
    PosetJson {
        complete: true,
        nodes,
        hasse,
    }
}

pub fn to_json(view: &PosetJson) -> String {
    serde_json::to_string_pretty(view).expect("poset serializes")
}

pub fn to_dot(view: &PosetJson) -> String {
    let mut out = String::from("digraph sttilt {\n");
    for node in &view.nodes {
        let label = serde_json::to_string(&node.gmatrix).expect("gmatrix serializes");
        out.push_str(&format!(
            "  n{} [label=\"{}\"];\n",
            node.id,
            label.replace('"', "\\\"")
        ));
    }
    for [f, t] in &view.hasse {
        out.push_str(&format!("  n{f} -> n{t};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::enumerate;
    use crate::quiver::Quiver;

    #[test]
    fn json_pentagon_shape() {
        let a = BoundQuiverAlgebra::build(Quiver::linear_a(2), &[], 2).unwrap();
        let sp = enumerate(&a, 100).unwrap();
        let view = poset_view(&a, &sp);
        assert!(view.complete);
        assert_eq!(view.nodes.len(), 5);
        assert_eq!(view.hasse.len(), 5);
        let text = to_json(&view);
        assert!(text.contains("\"gmatrix\""));
        // Byte-stable across runs.
        let sp2 = enumerate(&a, 100).unwrap();
        assert_eq!(text, to_json(&poset_view(&a, &sp2)));
    }

    #[test]
    fn dot_pentagon_shape() {
        let a = BoundQuiverAlgebra::build(Quiver::linear_a(2), &[], 2).unwrap();
        let sp = enumerate(&a, 100).unwrap();
        let dot = to_dot(&poset_view(&a, &sp));
        assert_eq!(dot.matches("label=").count(), 5);
        assert_eq!(dot.matches(" -> ").count(), 5);
    }

    #[test]
    fn typea_views() {
        assert_eq!(typea_view(1).nodes.len(), 2);
        assert_eq!(typea_view(2).nodes.len(), 5);
        assert_eq!(typea_view(3).nodes.len(), 14);
        let v = typea_view(2);
        assert_eq!(v.hasse.len(), 5);
    }
}

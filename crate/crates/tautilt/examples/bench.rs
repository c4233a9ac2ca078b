use std::time::Instant;
use tautilt::algebra::BoundQuiverAlgebra;
use tautilt::mutation::{enumerate, order_pairs};
use tautilt::quiver::Quiver;

fn main() {
    for n in 3..=5u32 {
        let t0 = Instant::now();
        let a = BoundQuiverAlgebra::build(Quiver::linear_a(n), &[], n.max(2)).unwrap();
        let sp = enumerate(&a, 10000).unwrap();
        let t1 = t0.elapsed();
        let geq = order_pairs(&a, &sp).unwrap();
        let t2 = t0.elapsed();
        println!("kA{}: {} nodes, enumerate {:?}, order {:?}, geq[0][0]={}", n, sp.len(), t1, t2 - t1, geq[0][0]);
    }
}

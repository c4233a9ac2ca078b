use std::time::Instant;
use tautilt::algebra::{gls_build, BoundQuiverAlgebra, CartanData};
use tautilt::extension::{build_extension, crosscheck_tsilt_iso, verify_condition_cg};

fn main() {
    let t0 = Instant::now();
    let data = CartanData {
        c: vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        d: vec![2, 2, 2],
        omega: vec![(1, 2), (2, 3)],
    };
    let (q, rels, n) = gls_build(&data).unwrap();
    println!("GLS A3 nilbound {}", n);
    let alg = BoundQuiverAlgebra::build(q, &rels, n).unwrap();
    println!("build: dim {} in {:?}", alg.dim(), t0.elapsed());
    let t1 = Instant::now();
    let ext = build_extension(&alg).unwrap();
    println!("extension in {:?}", t1.elapsed());
    let t2 = Instant::now();
    let cg = verify_condition_cg(&ext).unwrap();
    println!("cg {:?} in {:?}", cg, t2.elapsed());
    let t3 = Instant::now();
    let ok = crosscheck_tsilt_iso(&ext, 10000).unwrap();
    println!("crosscheck {} in {:?}", ok, t3.elapsed());
    let t4 = Instant::now();
    let mut a = alg.clone();
    let mut steps = 0;
    while let Some((z, _)) = a.central_element().unwrap() {
        a = a.quotient_by_elements(&[z]).unwrap();
        steps += 1;
    }
    println!("central-element iteration: {} steps to dim {} in {:?}", steps, a.dim(), t4.elapsed());
    println!("total {:?}", t0.elapsed());
}

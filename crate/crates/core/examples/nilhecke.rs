// The cyclotomic nilHecke algebra: closed forms against the general sum.

use klr::{nilhecke_dim, nilhecke_graded_dim, validate_cartan, DimContext, IndexTuple, Weight};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let a1 = validate_cartan(vec![vec![2]])?;
    for l in 0..=4 {
        let ctx = DimContext::new(a1.clone(), Weight::new(vec![l]))?;
        for n in 0..=l {
            let nu = IndexTuple::new(vec![0; n as usize]);
            let p = ctx.graded_dim(&nu, &nu)?;
            assert_eq!(p, nilhecke_graded_dim(l, n, 1));
            assert_eq!(p.eval_one(), nilhecke_dim(l, n));
            println!("l={l} n={n}: {} = {p}", nilhecke_dim(l, n));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

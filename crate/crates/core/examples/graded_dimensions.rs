// Graded dimensions of idempotent truncations, blocks and whole levels,
// with the recursion oracle alongside.

use klr::{builtin_cartan, DimContext, RootElement, Weight};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = DimContext::new(builtin_cartan("A1~")?, Weight::new(vec![1, 2]))?;
    let beta = RootElement::new(vec![1, 1])?;
    for nu in beta.tuples() {
        for mu in beta.tuples() {
            let closed = ctx.graded_dim(&nu, &mu)?;
            let oracle = ctx.graded_dim_oracle(&nu, &mu)?;
            assert_eq!(closed, oracle);
            let (a, b) = (ctx.cartan().tuple_labels(&nu), ctx.cartan().tuple_labels(&mu));
            println!("e{a:?} R e{b:?}: {}", closed.to_string_ascending());
        }
    }
    for n in 1..=3 {
        let p = ctx.algebra_graded_dim(n)?;
        println!("dim_q R({n}) = {p}  (dim {})", p.eval_one());
    }

    // the same block through the divided-power sum
    let a2 = DimContext::new(builtin_cartan("A2")?, Weight::new(vec![3, 2]))?;
    let nu = a2.cartan().parse_tuple("2,1,1")?;
    println!("dim e(2,1,1) R e(2,1,1) = {} = {}", a2.dim(&nu, &nu)?, a2.dim_divided(&nu)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

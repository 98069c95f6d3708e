// Level reduction: dimensions at a sum of weights from dimensions at the
// parts, and the graded sum that does not work.

use klr::{
    builtin_cartan, reduce_algebra_dim, reduce_pair_dim, validate_cartan, DimContext, IndexTuple, LevelReducer,
    LevelSplit, Weight,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = DimContext::new(builtin_cartan("A2")?, Weight::new(vec![3, 2]))?;
    let split = LevelSplit::new(vec![Weight::new(vec![1, 1]), Weight::new(vec![2, 1])], ctx.weight())?;
    let nu = ctx.cartan().parse_tuple("1,2,1")?;
    let mu = ctx.cartan().parse_tuple("2,1,1")?;
    println!("shuffle sum {} vs direct {}", reduce_pair_dim(&ctx, &nu, &mu, &split)?, ctx.dim(&nu, &mu)?);

    let fundamental = LevelSplit::fundamental(ctx.weight())?;
    for n in 1..=3 {
        println!(
            "dim R({n}): {} from {} fundamental pieces, {} direct",
            reduce_algebra_dim(&ctx, n, &fundamental)?,
            fundamental.len(),
            ctx.algebra_dim(n)?
        );
    }

    let target = Weight::new(vec![2]);
    let nil = DimContext::new(validate_cartan(vec![vec![2]])?, target.clone())?;
    let halves = LevelSplit::new(vec![Weight::new(vec![1]), Weight::new(vec![1])], &target)?;
    let nu = IndexTuple::new(vec![0]);
    let graded_sum = LevelReducer::new(&nil, &halves)?.pair_graded(&nu, &nu)?;
    println!("graded shuffle sum {graded_sum} but graded dimension {}", nil.graded_dim(&nu, &nu)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

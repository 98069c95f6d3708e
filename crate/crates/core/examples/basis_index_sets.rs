// Monomial basis index sets of e(nu~) R e(mu) and the n = 3 counts.

use klr::{
    basis_121_counts, basis_index_set, basis_tilde_tilde, builtin_cartan, graded_dim_tilde, n_weight_transform_check,
    DimContext, TildeData, Weight,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = DimContext::new(builtin_cartan("A2")?, Weight::new(vec![3, 2]))?;
    let mu = ctx.cartan().parse_tuple("2,1,1")?;
    let letters = ctx.cartan().parse_tuple("1,2")?;
    let tilde = TildeData::with_order(&mu, letters.entries())?;
    let set = basis_index_set(&ctx, &mu, &tilde)?;
    println!("nu~ = {:?}, d_mu = {}, bounds {:?}", ctx.cartan().tuple_labels(tilde.tuple()), set.d_mu(), set.bounds());
    println!("{} elements, dim e(nu~) R e(mu) = {}", set.cardinality(), ctx.dim(tilde.tuple(), &mu)?);
    for (w, r) in set.elements().take(5) {
        println!("  w = {w}, r = {r:?}");
    }
    println!("N transform at position 1 holds: {}", n_weight_transform_check(&ctx, &mu, &tilde, 0)?);

    let own = basis_tilde_tilde(&ctx, &tilde)?;
    println!("e(nu~) R e(nu~): {} elements, graded {}", own.cardinality(), graded_dim_tilde(&ctx, &tilde));

    let counts = basis_121_counts(3, 2, -1, -1)?;
    println!("e(121) R e(121): {} + {} = {}", counts.psi_part, counts.poly_part, counts.total);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

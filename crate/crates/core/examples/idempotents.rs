// Deciding whether e(nu) vanishes, four ways, with the witness each
// method produced.

use klr::idempotents::fundamentals_of;
use klr::{builtin_cartan, nonzero_by_shuffle, nonzero_direct, nonzero_divided, nonzero_tilde, DimContext, Weight};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = DimContext::new(builtin_cartan("A2")?, Weight::new(vec![2, 1]))?;
    for text in ["1,1,2", "1,2,1", "2,1,1", "1,1,1", "2,2"] {
        let nu = ctx.cartan().parse_tuple(text)?;
        let direct = nonzero_direct(&ctx, &nu)?;
        let divided = nonzero_divided(&ctx, &nu)?;
        let shuffle = nonzero_by_shuffle(&ctx, &nu, &fundamentals_of(ctx.weight()))?;
        assert_eq!(direct.nonzero, divided.nonzero);
        assert_eq!(direct.nonzero, shuffle.nonzero);
        println!("e({text}) nonzero: {}", direct.nonzero);
        println!("  direct  {:?}", direct.witness);
        println!("  divided {:?}", divided.witness);
        println!("  shuffle {:?}", shuffle.witness);
        if let Ok(tilde) = nonzero_tilde(&ctx, &nu) {
            println!("  tilde   {:?}", tilde.witness);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

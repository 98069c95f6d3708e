// Cartan data: registry types, JSON input, symmetrizers and pairings.

use klr::{builtin_cartan, CartanData, RootElement, Weight};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["A3", "C2", "G2", "A1~", "A4^2", "D5^2"] {
        let c = builtin_cartan(name)?;
        println!("{name:5} rank {} symmetrizer {:?} det {}", c.rank(), c.symmetrizer(), c.determinant());
    }

    // arbitrary labels; weights and tuples refer to nodes by label
    let c = CartanData::from_json(r#"{"matrix": [[2, -3], [-1, 2]], "labels": [7, 9]}"#)?;
    let nu = c.parse_tuple("9,7,7")?;
    println!("nu = {:?} internally {nu}", c.tuple_labels(&nu));

    let lambda = Weight::new(vec![2, 1]);
    let beta = RootElement::new(vec![2, 1])?;
    println!("(Lambda|beta) = {}", c.pair_weight_root(&lambda, &beta));
    println!("(beta|beta) = {}", c.pair_root_root(&beta, &beta));
    println!("<Lambda - beta, h_7> = {}", c.pair_coroot(&lambda, Some(&beta), 0));
    println!("defect = {} half units", c.defect(&lambda, &beta).half_units());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

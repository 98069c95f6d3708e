// Exact Laurent polynomials and quantum integers.

use klr::{quantum_binomial, quantum_factorial, quantum_int, LaurentPoly};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    println!("[3] = {}", quantum_int(3, 1));
    println!("[3]_2 = {}", quantum_int(3, 2));
    println!("[4]! = {}", quantum_factorial(4, 1));
    println!("[5 choose 2] = {}", quantum_binomial(5, 2, 1)?);

    let p: LaurentPoly = "2q^6+5q^4+6q^2+4+q^-2".parse()?;
    println!("{p} at q = 1 is {}", p.eval_one());
    println!("ascending {}, bar {}", p.to_string_ascending(), p.bar());
    println!("json {}", serde_json::to_string(&p)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

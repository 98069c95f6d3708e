// Symmetric group combinatorics: transport sets, inversion codes, coset
// representatives and shuffle splits.

use klr::perms::{d_mu, min_coset_reps, recompose, shuffles, split_under_shuffle, transport_set};
use klr::{IndexTuple, Permutation, ShuffleSplit};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let nu = IndexTuple::new(vec![0, 1, 0, 1]);
    let all: Vec<Permutation> = transport_set(&nu, &nu)?.collect();
    let reps: Vec<Permutation> = min_coset_reps(&nu).collect();
    println!("|S(nu,nu)| = {}, |D(nu)| = {}", all.len(), reps.len());

    let w = Permutation::from_one_line(&[3, 1, 4, 2])?;
    println!("{w}: length {}, code {:?}", w.length(), w.theta());
    assert_eq!(Permutation::theta_inverse(&w.theta())?, w);

    let s = ShuffleSplit::new(vec![vec![0, 2], vec![1, 3]])?;
    let (pieces, t) = split_under_shuffle(&w, &s)?;
    println!("split along {:?}: pieces {:?}, t = {:?}", s.one_based(), pieces, t.one_based());
    assert_eq!(recompose(&pieces, &s, &t)?, w);
    println!("{} two-part shuffles of 4 positions", shuffles(4, 2).count());

    let mu = IndexTuple::new(vec![1, 0, 0]);
    println!("d_mu for mu = {mu}: {}", d_mu(&mu, &IndexTuple::new(vec![0, 0, 1]))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

//! Randomized sweep dimensions and the fit pairs of a diagonal embedding.

use flagcone::embed::EmbeddingDatum;
use flagcone::liealg::{RankOracle, DEFAULT_DIM_CAP};
use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let a2 = RootDatum::parse("A2", Isogeny::SimplyConnected)?;
    let e = EmbeddingDatum::diagonal(&a2, 2)?;
    let oracle = RankOracle::new(&e, DEFAULT_DIM_CAP)?;
    println!("Chevalley model of {}: dim {}", e.g.name(), oracle.alg.dim());
    for levi in e.xi_max()? {
        let pairs = oracle.fit_pairs(&levi, 5, 42)?;
        let fit = pairs.iter().filter(|r| r.fit).count();
        println!("xi = {}: {fit} of {} coset representatives are fit", levi.xi, pairs.len());
        for r in pairs.iter().filter(|r| !r.fit) {
            println!("  w {:?}: dim {} < expected {} (per trial {:?})", r.w, r.dim, r.expected, r.per_trial);
        }
    }
    Ok(())
}

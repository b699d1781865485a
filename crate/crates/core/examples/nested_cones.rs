//! The cones C_1 (ample) and C_2 (movable) for diagonal SL2^k.

use flagcone::cones;
use flagcone::embed::EmbeddingDatum;
use flagcone::liealg::{RankOracle, DEFAULT_DIM_CAP};
use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let a1 = RootDatum::parse("A1", Isogeny::SimplyConnected)?;
    for k in 2..=6 {
        let e = EmbeddingDatum::diagonal(&a1, k)?;
        let oracle = RankOracle::new(&e, DEFAULT_DIM_CAP)?;
        let c1 = cones::ck_cone(&oracle, 1, 5, 0)?;
        let c2 = cones::ck_cone(&oracle, 2, 5, 0)?;
        println!(
            "k = {k}: dim C_1 = {}, dim C_2 = {}, criterion {}, nested {}",
            c1.dim,
            c2.dim,
            cones::rho_criterion(&e)?,
            cones::nesting_violations(&c1, &c2).is_empty()
        );
    }
    Ok(())
}

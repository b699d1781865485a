//! Kirwan-Ness strata of the unstable locus for the principal SL2 in SL3.

use flagcone::embed::EmbeddingDatum;
use flagcone::liealg::{RankOracle, DEFAULT_DIM_CAP};
use flagcone::popov::Context;
use flagcone::rootcore::{Isogeny, RootDatum};
use flagcone::strat;

fn main() -> flagcone::error::Result<()> {
    let e = EmbeddingDatum::principal(RootDatum::parse("A2", Isogeny::SimplyConnected)?)?;
    let oracle = RankOracle::new(&e, DEFAULT_DIM_CAP)?;
    let mut cx = Context::new();
    let lam = [2, 1];
    let all = strat::stratifying_pairs_with_fit(&mut cx, &oracle, &lam, 5, 0)?;
    for r in &all {
        println!("xi {} w {:?}: m = {}, codim {}, fit {:?}", r.xi, r.w, r.m, r.codim, r.fit);
    }
    let top = strat::top_strata(&e, &all);
    println!("components: {:?}", top.iter().map(|r| r.w.clone()).collect::<Vec<_>>());
    println!("codim X^us = {:?}", strat::codim_unstable(&mut cx, &e, &lam)?);
    println!("torus codim = {:?}", strat::t_codim_unstable(&e, &lam)?);
    Ok(())
}

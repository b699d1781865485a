//! Brute-force invariant dimensions and the membership test they give.

use flagcone::embed::EmbeddingDatum;
use flagcone::oracle;
use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let a2 = RootDatum::parse("A2", Isogeny::SimplyConnected)?;
    let e = EmbeddingDatum::diagonal(&a2, 3)?;
    for lam in [[1, 0, 1, 0, 1, 0], [1, 1, 1, 1, 1, 1], [2, 1, 0, 1, 1, 2]] {
        println!("{lam:?}: dim of invariants {}", oracle::invariant_dim(&e, &lam)?);
    }
    let m = oracle::membership(&e, &[2, 0, 1, 0, 0, 1], oracle::DEFAULT_JMAX)?;
    println!("membership: {:?} after dims {:?}", m.verdict, m.dims);

    // weight multiplicities against Kostant's formula
    let g2 = RootDatum::parse("G2", Isogeny::SimplyConnected)?;
    let ch = oracle::character(&g2, &[1, 1], oracle::DEFAULT_WEIGHT_CAP)?;
    let zero = ch[&vec![0, 0]];
    println!("G2, weight (1,1): dim {}, zero weight mult {zero} (Kostant {})", oracle::weyl_dimension(&g2, &[1, 1]), oracle::kostant_multiplicity(&g2, &[1, 1], &[0, 0])?);
    Ok(())
}

//! Ample-cone membership through the signed tree, for a few weights.

use flagcone::embed::EmbeddingDatum;
use flagcone::popov::{self, Context};
use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let a1 = RootDatum::parse("A1", Isogeny::SimplyConnected)?;
    let e = EmbeddingDatum::diagonal(&a1, 3)?;
    let mut cx = Context::new();
    for lam in [[1, 1, 1], [3, 1, 1], [2, 2, 3], [5, 1, 2]] {
        let tree = cx.build_tree(&e, &lam)?;
        println!("{lam:?}: ample {} (root {:?}, {} children)", cx.is_ample(&e, &lam)?, tree.sign, tree.children.len());
    }
    // the tree for an unstable weight, in full
    let tree = popov::build_tree(&e, &[5, 1, 2])?;
    println!("{}", serde_json::to_string_pretty(&tree).expect("tree serializes"));
    Ok(())
}

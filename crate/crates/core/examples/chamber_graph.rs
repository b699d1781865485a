//! Chambers, walls and classes for diagonal SL2^4.

use flagcone::cones;
use flagcone::embed::EmbeddingDatum;
use flagcone::popov::Context;
use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let a1 = RootDatum::parse("A1", Isogeny::SimplyConnected)?;
    let e = EmbeddingDatum::diagonal(&a1, 4)?;
    let mut cx = Context::new();
    let graph = cones::t_chambers(&mut cx, &e, cones::DEFAULT_HYPERPLANE_CAP)?;
    println!("{} hyperplanes, {} chambers, {} classes", graph.hyperplanes.len(), graph.chambers.len(), graph.classes.len());
    for c in &graph.chambers {
        println!("  {:?} codim {:?} class {}", c.sample, c.codim, c.class);
    }
    let walls = graph.facets.iter().filter(|f| f.g_wall).count();
    println!("{walls} of {} facets separate classes", graph.facets.len());
    let audit = cones::no_jump_audit(&graph);
    println!("no-jump audit passed: {}", audit.passed());
    Ok(())
}

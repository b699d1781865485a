//! Build embeddings three ways and look at their cubicles and maximal
//! one-parameter subgroups.

use flagcone::embed::{EmbeddingDatum, EmbeddingSpec};
use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let a2 = RootDatum::parse("A2", Isogeny::SimplyConnected)?;
    let spec: EmbeddingSpec = serde_json::from_str(
        r#"{ "kind": "custom",
             "ghat": { "factors": [{ "series": "A", "rank": 1 }] },
             "g":    { "factors": [{ "series": "A", "rank": 1 }, { "series": "A", "rank": 1 }] },
             "iota": [[1, 1]] }"#,
    )
    .expect("valid schema");

    let list = [
        EmbeddingDatum::diagonal(&a2, 2)?,
        EmbeddingDatum::principal(RootDatum::parse("B2", Isogeny::SimplyConnected)?)?,
        spec.build()?,
    ];
    for e in &list {
        println!("{}  flags {:?}", e.describe(), e.flags);
        for c in e.cubicles()? {
            println!("  cubicle sigma = {}, {} rays", c.sigma.word_string(), c.rays.len());
        }
        for l in e.xi_max()? {
            println!("  xi = {}  r = {} rhat = {} a = {} b = {}", l.xi, l.r, l.r_hat, l.a, l.b);
        }
    }
    Ok(())
}

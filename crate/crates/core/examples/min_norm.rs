//! Closest point to the origin in a convex hull of weights, with the
//! one-parameter subgroup it defines.

use flagcone::embed::EmbeddingDatum;
use flagcone::linalg::qvec;
use flagcone::popov;
use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let e = EmbeddingDatum::identity(RootDatum::parse("A2", Isogeny::SimplyConnected)?)?;
    let metric = popov::weight_metric(&e);
    let points = vec![qvec(&[2, -1]), qvec(&[-1, 2]), qvec(&[1, 1]), qvec(&[3, 0])];
    let r = popov::min_norm_point(&points, &metric)?;
    let nu: Vec<String> = r.nu.iter().map(|x| x.to_string()).collect();
    println!("nu = {nu:?}, support {:?}", r.support.iter().map(|(i, c)| (i, c.to_string())).collect::<Vec<_>>());
    match popov::xi_from_nu(&e, &r.nu) {
        Some(xi) => println!("xi = {xi}"),
        None => println!("origin lies in the hull"),
    }
    Ok(())
}

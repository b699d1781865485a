//! Reduced words, inverted sets and Bruhat order for a small Weyl group.

use flagcone::rootcore::{Isogeny, RootDatum};

fn main() -> flagcone::error::Result<()> {
    let g = RootDatum::parse("B3", Isogeny::SimplyConnected)?;
    let w = g.enumerate_weyl(1_000)?;
    println!("{}: |W| = {}, {} positive roots", g.name(), w.len(), g.num_positive());

    let w0 = g.longest();
    println!("longest element {} (length {})", w0.word_string(), w0.length());

    let x = g.element_from_word(&[0, 1, 2, 1]);
    println!("s1 s2 s3 s2 reduces to {}", x.word_string());
    for (j, beta) in g.order_inverted_set(&x).iter().enumerate() {
        println!("  beta_{} = {beta:?}", j + 1);
    }

    let below = w.iter().filter(|u| g.bruhat_le(u, &x)).count();
    println!("{below} elements lie below it in Bruhat order");
    Ok(())
}

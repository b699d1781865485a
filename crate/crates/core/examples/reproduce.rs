//! Runs one acceptance criterion (default 4) and prints its checks.

use flagcone::reproduce::{self, Settings};

fn main() {
    let id = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let r = reproduce::run(id, &Settings::default());
    println!("{} {:?} {}", r.id, r.status, r.title);
    for line in r.detail {
        println!("  {line}");
    }
}

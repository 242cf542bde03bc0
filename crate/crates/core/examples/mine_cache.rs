//! Regenerates the shipped exploration-sequence cache on stdout.

use rvbeep_core::uxs::{mine_uxs, UxsCache};

fn main() {
    let mut cache = UxsCache::new();
    for m in 1..=4 {
        let record = mine_uxs(m).expect("mining within the cap succeeds");
        eprintln!("m = {}  R = {}", m, record.len());
        cache.insert(record);
    }
    print!("{}", cache.to_text());
}

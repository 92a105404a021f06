// Enumerate every ODC-starter of small orders, check that the construction
// appears among them, and group them by multiplier.

use std::error::Error;

use odc_hampath::search::{
    compare_with_construction, enumerate_starters, unit_orbits, SearchConfig,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in [3, 5, 7, 9, 11] {
        let res = enumerate_starters(&SearchConfig::new(n))?;
        let orbits = unit_orbits(&res.starters);
        println!(
            "n={n:>2}: {:>4} starters up to translation/reversal, {:>3} multiplier orbits, {} nodes",
            res.starters.len(),
            orbits.len(),
            res.nodes_explored
        );
    }

    for n in [5, 9] {
        let cmp = compare_with_construction(n)?;
        for m in &cmp.constructions {
            println!(
                "n={n} g={:>2} {}  canonical {}  found={}",
                m.root, m.starter, m.canonical, m.found
            );
        }
        if !cmp.all_found() {
            return Err(format!("n={n}: construction missing from the search").into());
        }
    }

    // Plain, non-canonical enumeration with a cap.
    let mut cfg = SearchConfig::new(13);
    cfg.canonicalize = false;
    cfg.limit = Some(3);
    for p in enumerate_starters(&cfg)?.starters {
        println!("n=13 {p}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

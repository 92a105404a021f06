// Which odd n are covered by the product classification, which by 2n+1
// being prime, and which only by the latter.
//
//     cargo run --example coverage_table -- 200

use std::error::Error;

use odc_hampath::coverage::{classify, enumerate_new_values};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    table(60)
}

fn table(hi: u64) -> Result<(), Box<dyn Error>> {
    let (mut product, mut prime, mut neither) = (0, 0, Vec::new());
    for n in (3..=hi).step_by(2) {
        let v = classify(n)?;
        product += v.thm1.is_some() as usize;
        prime += v.thm2 as usize;
        if !v.is_covered() {
            neither.push(n);
        }
    }
    println!("odd n in [3, {hi}]: product form {product}, 2n+1 prime {prime}");
    println!("uncovered: {neither:?}");

    println!("new values:");
    for v in enumerate_new_values(hi) {
        let fams: Vec<String> = v.families.iter().map(|f| f.to_string()).collect();
        println!(
            "  n={:>4}  2n+1={:>4}  {}",
            v.n,
            v.modulus(),
            fams.join("; ")
        );
    }

    for n in [9, 45, 23] {
        let v = classify(n)?;
        match &v.thm1 {
            Some(c) => println!("n={n}: {c}"),
            None => println!("n={n}: no product certificate"),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(hi) => table(hi.parse()?),
        None => run_example(),
    }
}

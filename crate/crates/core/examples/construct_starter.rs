// Build the discrete-log starter for a few orders and print its profile.
//
//     cargo run --example construct_starter -- 21

use std::error::Error;

use odc_hampath::construct::ap_terrace;
use odc_hampath::odc::is_odc_starter;
use odc_hampath::path::edge_lengths;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    show(&[5, 9, 15, 29])
}

fn show(orders: &[usize]) -> Result<(), Box<dyn Error>> {
    for &n in orders {
        let inst = match ap_terrace(n, None) {
            Ok(inst) => inst,
            Err(e) => {
                println!("n={n}: {e}");
                continue;
            }
        };
        let starter = inst.terrace();
        let (ok, profile) = is_odc_starter(starter);
        if !ok {
            return Err(format!("n={n}: construction is not a starter").into());
        }
        let lengths: Vec<String> = edge_lengths(starter)
            .iter()
            .map(|l| l.to_string())
            .collect();
        let distances: Vec<String> = profile
            .expect("starter has a profile")
            .pairs()
            .into_iter()
            .map(|(l, k)| format!("{l}->{k}"))
            .collect();
        println!("n={n} g={} mod {}", inst.root().g(), inst.modulus());
        println!("  starter   {starter}");
        println!("  lengths   {}", lengths.join(","));
        println!("  distances {}", distances.join(" "));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let orders: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if orders.is_empty() {
        run_example()
    } else {
        show(&orders)
    }
}

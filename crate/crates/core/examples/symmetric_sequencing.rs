// The log sequence c_i = log_g(i) on Z_2n, its symmetry b_i = -b_(2n-i)
// between consecutive differences, and its projection to Z_n.

use std::error::Error;

use odc_hampath::construct::log_sequence;
use odc_hampath::modnum::{find_primitive_root, primitive_roots};
use odc_hampath::path::{is_symmetric_directed_terrace, is_terrace, project_to_half};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 9;
    let g = find_primitive_root(2 * n as u64 + 1)?;
    let t = log_sequence(n, g)?;
    let join = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    println!("c   = {}", join(t.entries()));
    println!("b   = {}", join(t.sequencing()));
    println!("symmetric: {}", is_symmetric_directed_terrace(&t));
    let d = project_to_half(&t)?;
    println!("c mod {n} = {d}  terrace: {}", is_terrace(&d).0);

    // Every root of 19 gives a symmetric directed terrace.
    for g in primitive_roots(19)? {
        let t = log_sequence(n, g)?;
        println!(
            "g={:>2}  {}  {}",
            g.g(),
            project_to_half(&t)?,
            is_symmetric_directed_terrace(&t)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

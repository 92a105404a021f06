// The number theory underneath: primality, factoring, primitive roots,
// inverses and discrete logarithms.

use std::error::Error;

use odc_hampath::modnum::{
    discrete_log, factorize, find_primitive_root, is_prime, mod_inverse, primitive_roots, LogTable,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for v in [
        19u64,
        31,
        2_147_483_647,
        18_446_744_073_709_551_557,
        600_851_475_143,
    ] {
        println!("{v}: prime={} factors={:?}", is_prime(v), factorize(v));
    }

    let roots: Vec<u64> = primitive_roots(31)?.into_iter().map(|g| g.g()).collect();
    println!("primitive roots of 31: {roots:?}");

    let p = 1_000_000_007;
    let g = find_primitive_root(p)?;
    let y = 123_456_789;
    let e = discrete_log(g, y)?;
    println!("log_{}({y}) mod {p} = {e}, check {}", g.g(), g.pow(e));
    println!("1/{y} mod {p} = {}", mod_inverse(y, p)?);

    let table = LogTable::new(find_primitive_root(19)?);
    let logs: Vec<u64> = (1..19).map(|y| table.log(y)).collect::<Result<_, _>>()?;
    println!("logs base {} mod 19: {logs:?}", table.root().g());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// For each distance k, the explicit pair of same-length edges of the starter
// whose distance is k, computed from x = g^k without scanning the path.

use std::error::Error;

use odc_hampath::construct::{ap_terrace, witness_certificate};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = ap_terrace(15, Some(3))?;
    println!("n=15 g=3 starter {}", inst.terrace());
    let cert = witness_certificate(&inst)?;
    println!(" k   x   u   i   j  e_i     e_j     len");
    for w in &cert.witnesses {
        println!(
            "{:>2} {:>3} {:>3} {:>3} {:>3}  {:<7} {:<7} {}",
            w.k,
            w.x,
            w.u,
            w.i,
            w.j,
            format!("{}-{}", w.e_i.lo(), w.e_i.hi()),
            format!("{}-{}", w.e_j.lo(), w.e_j.hi()),
            w.length
        );
    }
    // The certificate is only returned when it matches the scanned profile.
    assert_eq!(&cert.induced_profile(), inst.distances().assignment());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

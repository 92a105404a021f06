// The nine translates of the n = 9 starter form an orthogonal double cover
// of K_9. Also shows what the checker reports for a broken collection.

use std::error::Error;

use odc_hampath::construct::ap_terrace;
use odc_hampath::odc::{verify_odc, OdcCollection, Violation};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = ap_terrace(9, None)?;
    let odc = inst.odc();
    for p in odc.paths() {
        println!("({p})");
    }
    let report = verify_odc(&odc);
    println!(
        "double cover: {}, orthogonality: {}",
        report.double_cover_ok, report.orthogonality_ok
    );
    if !report.is_ok() {
        return Err("translates failed verification".into());
    }

    // Swap in a second copy of row 0: both properties break.
    let mut rows = odc.paths().to_vec();
    rows[1] = rows[0].clone();
    let broken = verify_odc(&OdcCollection::new(rows)?);
    let edges = broken
        .violations
        .iter()
        .filter(|v| matches!(v, Violation::EdgeCount { .. }))
        .count();
    println!(
        "row 1 := row 0 -> {} edge-count and {} pair violations",
        edges,
        broken.violations.len() - edges
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

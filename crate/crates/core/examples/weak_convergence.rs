//! Normalized discrete measures approaching the limit measure as m grows.

use qtcatalan::measure::convergence_report;
use qtcatalan::DEFAULT_BUDGET;

fn main() -> qtcatalan::Result<()> {
    let rep = convergence_report(4, &[2, 3, 5, 10, 20, 50], 60, 60, 0, 0, DEFAULT_BUDGET)?;
    println!(
        "n = 4 against the {} reference, limit weight {}",
        rep.reference, rep.limit_weight
    );
    for ((m, d), w) in rep
        .m_list
        .iter()
        .zip(&rep.distances)
        .zip(&rep.total_weights)
    {
        println!("  m = {m:>2}: L1 {d:.4}, total weight {w}");
    }
    let rep = convergence_report(3, &[2, 8, 32], 30, 30, 400_000, 5, DEFAULT_BUDGET)?;
    println!("n = 3 against a {} reference:", rep.reference);
    for (m, d) in rep.m_list.iter().zip(&rep.distances) {
        println!("  m = {m:>2}: L1 {d:.4}");
    }
    Ok(())
}

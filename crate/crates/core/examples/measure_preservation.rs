//! T carries the uniform measure on A_n to itself: compare transported and fresh samples.

use qtcatalan::measure::measure_preservation_check;

fn main() -> qtcatalan::Result<()> {
    for (n, k) in [(3, 8), (4, 3), (5, 1)] {
        let rep = measure_preservation_check(n, 400_000, 11, k)?;
        println!(
            "n = {n}: chi-square {:.1} (limit {:.1}, {} cells), max |z| {:.2}, L1 {:.4} (limit {:.4}), pass {}",
            rep.chi_square, rep.chi_square_limit, rep.occupied_cells, rep.max_abs_z, rep.l1, rep.l1_limit, rep.pass
        );
    }
    Ok(())
}

//! q,t-Catalan polynomials from both pairs of statistics, with the symmetry check.

use qtcatalan::{qt_catalan_area_bounce, qt_catalan_dinv_area, DEFAULT_BUDGET};

fn main() -> qtcatalan::Result<()> {
    let c3 = qt_catalan_dinv_area(3, 1, DEFAULT_BUDGET)?;
    println!("C_3(q,t) = {c3}");

    let (n, m) = (4, 2);
    let da = qt_catalan_dinv_area(n, m, DEFAULT_BUDGET)?;
    let ab = qt_catalan_area_bounce(n, m, DEFAULT_BUDGET)?;
    println!(
        "C_{n}^({m})(q,t) has {} terms, value {} at q = t = 1",
        da.len(),
        da.eval_one()
    );
    println!("  dinv-area equals area-bounce: {}", da == ab);
    println!("  symmetric in q and t: {}", da.is_symmetric());
    println!(
        "  q = 1 specialization by t-degree: {:?}",
        da.specialize_q1()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );
    println!("{}", da.to_json(n as u32, m));
    Ok(())
}

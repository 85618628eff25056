//! Monte Carlo pushforward of the height-4 measure against its exact density.

use qtcatalan::measure::{
    density_n4_cell_integrals, exact_density_n4, polytope_volume, sample_area_polytope,
};
use qtcatalan::MapChoice;

fn main() -> qtcatalan::Result<()> {
    let batch = sample_area_polytope(4, 500_000, 1)?;
    println!(
        "acceptance ratio {:.4} (volume {} over box volume 6)",
        batch.acceptance_ratio(),
        polytope_volume(4)
    );
    let exact = density_n4_cell_integrals(qtcatalan::measure::Bounds::square(6.0), 24, 24);
    for map in [MapChoice::DinvArea, MapChoice::AreaBounce] {
        let h = batch.pushforward(map, 24, 24);
        println!(
            "{map}: total {:.6}, L1 to exact {:.4}, symmetry deviation {:.4}",
            h.binned_weight(),
            h.l1_distance(&exact),
            h.symmetry_deviation()
        );
    }
    println!("density along the diagonal:");
    for k in 0..=8 {
        let x = 1.5 + 0.25 * k as f64;
        println!("  f_4({x:.2}, {x:.2}) = {:.4}", exact_density_n4(x, x));
    }
    Ok(())
}

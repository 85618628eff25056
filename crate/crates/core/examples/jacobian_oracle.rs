//! The Jacobian of the bounce-to-area map counts the orderings that sort to a point.

use qtcatalan::verify::generic_bounce_vectors;

fn main() -> qtcatalan::Result<()> {
    for n in 3..=7 {
        let mut agree = 0;
        let mut largest = 0;
        let vectors = generic_bounce_vectors(n, 200, 7);
        for b in &vectors {
            let d = b.jacobian_count()?;
            if d == b.sort_preimage_count(8)? {
                agree += 1;
            }
            largest = largest.max(d);
        }
        println!(
            "n = {n}: {agree}/{} agree, largest count {largest}",
            vectors.len()
        );
    }
    let b = &generic_bounce_vectors(4, 1, 1)[0];
    println!(
        "example b = {b}: jacobian {}, preimages {}",
        b.jacobian_count()?,
        b.sort_preimage_count(8)?
    );
    Ok(())
}

//! Statistics of a continuous Dyck path, its bounce vector, and the map T.

use qtcatalan::ContinuousPath;

fn main() -> qtcatalan::Result<()> {
    let d = ContinuousPath::parse("0,0.6,1.2,0.5")?;
    println!("D = {d}");
    println!(
        "  north x-coordinates {:?}",
        d.north_x()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
    );
    println!("  area {}, dinv {}", d.area(), d.dinv());
    let b = d.bounce_vector()?;
    println!("  bounce vector {b}, bounce {}", b.sum());

    let t = d.transform()?;
    println!("T(D) = {t}");
    println!(
        "  area {} (= dinv D), bounce {} (= area D)",
        t.area(),
        t.bounce()?
    );
    println!(
        "  bounce vector of T(D) {} (the sorted area vector of D)",
        t.bounce_vector()?
    );

    let e = ContinuousPath::parse("0,1,1")?;
    for m in [1, 2, 3, 4] {
        let s = e.normalized_m_stats(m)?;
        println!(
            "(0,1,1) at m = {m}: area {}, dinv {}, bounce {}",
            s.area, s.dinv, s.bounce
        );
    }
    Ok(())
}

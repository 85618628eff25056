//! Area, dinv and bounce of an m-Dyck path, and its image under Loehr's bijection.

use qtcatalan::discrete::MDyckPath;
use qtcatalan::enumerate_m_dyck;

fn main() -> qtcatalan::Result<()> {
    let p = MDyckPath::new(2, vec![0, 1, 0, 2, 3])?;
    let bp = p.bounce_path();
    println!("path {p}");
    println!("  north x-coordinates {:?}", p.north_x());
    println!(
        "  area {}, dinv {}, bounce {}",
        p.area(),
        p.dinv(),
        p.bounce()
    );
    println!("  bounce runs v = {:?}, h = {:?}", bp.v, bp.h);

    let img = p.phi()?;
    println!(
        "phi image {img}: area {} (= dinv), bounce {} (= area)",
        img.area(),
        img.bounce()
    );

    let n = 4;
    let m = 2;
    let paths: Vec<MDyckPath> = enumerate_m_dyck(n, m, 1000)?.collect();
    println!(
        "{} paths of height {n} for m = {m}; first five:",
        paths.len()
    );
    for p in paths.iter().take(5) {
        println!(
            "  {p}  area {} dinv {} bounce {}",
            p.area(),
            p.dinv(),
            p.bounce()
        );
    }
    Ok(())
}

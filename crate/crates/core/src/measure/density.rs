//! Exact density of the q,t-Catalan measure for paths of height 4.
//!
//! The support is the pentagon with vertices (6,0), (3,1), (2,2), (1,3),
//! (0,6), cut into three triangles by the segments from (2,2) to (6,0) and
//! to (0,6). On each triangle the density is linear and vanishes on the
//! outer edges:
//!
//! ```text
//! (0,6),(1,3),(2,2):  (3x + y - 6) / 2
//! (6,0),(2,2),(0,6):  (6 - x - y) / 2
//! (6,0),(3,1),(2,2):  (x + 3y - 6) / 2
//! ```
//!
//! The total mass is 8/3, the volume of `A_4`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::histogram::{Bounds, Histogram2D};

/// One linear piece: `(cx*x + cy*y + c0) / denom` on a closed triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityPiece {
    pub triangle: [(i64, i64); 3],
    pub cx: i64,
    pub cy: i64,
    pub c0: i64,
    pub denom: i64,
}

const PIECES: [DensityPiece; 3] = [
    DensityPiece {
        triangle: [(0, 6), (1, 3), (2, 2)],
        cx: 3,
        cy: 1,
        c0: -6,
        denom: 2,
    },
    DensityPiece {
        triangle: [(6, 0), (2, 2), (0, 6)],
        cx: -1,
        cy: -1,
        c0: 6,
        denom: 2,
    },
    DensityPiece {
        triangle: [(6, 0), (3, 1), (2, 2)],
        cx: 1,
        cy: 3,
        c0: -6,
        denom: 2,
    },
];

pub fn density_n4_pieces() -> &'static [DensityPiece] {
    &PIECES
}

impl DensityPiece {
    pub fn value(&self, x: f64, y: f64) -> f64 {
        (self.cx as f64 * x + self.cy as f64 * y + self.c0 as f64) / self.denom as f64
    }

    fn vertices_f64(&self) -> Vec<(f64, f64)> {
        self.triangle
            .iter()
            .map(|&(x, y)| (x as f64, y as f64))
            .collect()
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let [a, b, c] = self.triangle.map(|(x, y)| (x as f64, y as f64));
        let cross =
            |p: (f64, f64), q: (f64, f64)| (q.0 - p.0) * (y - p.1) - (q.1 - p.1) * (x - p.0);
        let d1 = cross(a, b);
        let d2 = cross(b, c);
        let d3 = cross(c, a);
        let has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
        let has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
        !(has_neg && has_pos)
    }

    /// Exact integral: triangle area times the mean of the vertex values.
    pub fn integral(&self) -> BigRational {
        let [(ax, ay), (bx, by), (cx, cy)] = self.triangle;
        let twice_area = ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay)).abs();
        let vertex_sum: i64 = self
            .triangle
            .iter()
            .map(|&(x, y)| self.cx * x + self.cy * y + self.c0)
            .sum();
        BigRational::new(
            BigInt::from(twice_area * vertex_sum),
            BigInt::from(2 * 3 * self.denom),
        )
    }
}

/// Density of the height-4 measure at `(x, y)`.
pub fn exact_density_n4(x: f64, y: f64) -> f64 {
    PIECES
        .iter()
        .find(|p| p.contains(x, y))
        .map_or(0.0, |p| p.value(x, y).max(0.0))
}

pub fn density_n4_integral() -> BigRational {
    PIECES.iter().map(DensityPiece::integral).sum()
}

fn polygon_area_centroid(poly: &[(f64, f64)]) -> (f64, f64, f64) {
    let mut a = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for k in 0..poly.len() {
        let (x0, y0) = poly[k];
        let (x1, y1) = poly[(k + 1) % poly.len()];
        let cross = x0 * y1 - x1 * y0;
        a += cross;
        cx += (x0 + x1) * cross;
        cy += (y0 + y1) * cross;
    }
    if a.abs() < 1e-300 {
        return (0.0, 0.0, 0.0);
    }
    (a / 2.0, cx / (3.0 * a), cy / (3.0 * a))
}

/// Sutherland-Hodgman clip against one half-plane `keep(p) >= 0`.
fn clip(poly: &[(f64, f64)], side: impl Fn((f64, f64)) -> f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    for k in 0..poly.len() {
        let p = poly[k];
        let q = poly[(k + 1) % poly.len()];
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp >= 0.0) != (sq >= 0.0) {
            let t = sp / (sp - sq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// Integral of the density over each cell of the grid.
pub fn density_n4_cell_integrals(bounds: Bounds, cells_x: usize, cells_y: usize) -> Histogram2D {
    let mut h = Histogram2D::new(bounds, cells_x, cells_y);
    for iy in 0..cells_y {
        for ix in 0..cells_x {
            let (x0, x1, y0, y1) = h.cell_rect(ix, iy);
            let mut w = 0.0;
            for piece in &PIECES {
                let mut poly = piece.vertices_f64();
                poly = clip(&poly, |p| p.0 - x0);
                poly = clip(&poly, |p| x1 - p.0);
                poly = clip(&poly, |p| p.1 - y0);
                poly = clip(&poly, |p| y1 - p.1);
                if poly.len() < 3 {
                    continue;
                }
                let (area, gx, gy) = polygon_area_centroid(&poly);
                w += area.abs() * piece.value(gx, gy);
            }
            h.cells[iy * cells_x + ix] = w;
            h.total_weight += w;
        }
    }
    h
}

/// Integrals of the given test functions against the density, by a
/// degree-2 edge-midpoint rule on a uniform refinement of each piece.
pub fn density_n4_test_integrals(tests: &[fn(f64, f64) -> f64]) -> Vec<f64> {
    const LEVELS: u32 = 6;
    let mut totals = vec![0.0; tests.len()];
    for piece in &PIECES {
        let v = piece.vertices_f64();
        let mut tris = vec![[v[0], v[1], v[2]]];
        for _ in 0..LEVELS {
            let mid = |p: (f64, f64), q: (f64, f64)| ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0);
            tris = tris
                .into_iter()
                .flat_map(|[a, b, c]| {
                    let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
                    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
                })
                .collect();
        }
        for [a, b, c] in tris {
            let area = ((b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1)).abs() / 2.0;
            let nodes = [
                ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0),
                ((b.0 + c.0) / 2.0, (b.1 + c.1) / 2.0),
                ((c.0 + a.0) / 2.0, (c.1 + a.1) / 2.0),
            ];
            for (k, h) in tests.iter().enumerate() {
                let s: f64 = nodes
                    .iter()
                    .map(|&(x, y)| piece.value(x, y) * h(x, y))
                    .sum();
                totals[k] += area * s / 3.0;
            }
        }
    }
    totals
}

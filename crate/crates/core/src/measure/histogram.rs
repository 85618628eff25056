use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::DiscreteMeasure;

use super::support_side;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Bounds {
    pub fn square(side: f64) -> Self {
        Bounds {
            x_lo: 0.0,
            x_hi: side,
            y_lo: 0.0,
            y_hi: side,
        }
    }
}

/// Dense grid of cell weights.
///
/// Cells are half-open `[x0, x1) x [y0, y1)` except the last row and column,
/// which are closed, so points on the outer edge land in the last cell.
/// Weight that falls outside the bounds is kept in `outside`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram2D {
    pub bounds: Bounds,
    pub cells_x: usize,
    pub cells_y: usize,
    /// Row-major in y: index `iy * cells_x + ix`.
    pub cells: Vec<f64>,
    pub total_weight: f64,
    pub outside: f64,
}

fn axis_index(v: f64, lo: f64, hi: f64, cells: usize) -> Option<usize> {
    if !(lo..=hi).contains(&v) {
        return None;
    }
    let k = ((v - lo) / (hi - lo) * cells as f64).floor() as usize;
    Some(k.min(cells - 1))
}

fn exact_axis_index(v: &BigRational, lo: f64, hi: f64, cells: usize) -> Option<usize> {
    let lo_q = BigRational::from_float(lo)?;
    let hi_q = BigRational::from_float(hi)?;
    if *v < lo_q || *v > hi_q {
        return None;
    }
    let scaled = (v - &lo_q) * BigRational::from_integer(cells.into()) / (hi_q - lo_q);
    let k = scaled.numer().div_floor(scaled.denom()).to_usize()?;
    Some(k.min(cells - 1))
}

impl Histogram2D {
    pub fn new(bounds: Bounds, cells_x: usize, cells_y: usize) -> Self {
        assert!(cells_x > 0 && cells_y > 0, "grid must have cells");
        assert!(
            bounds.x_hi > bounds.x_lo && bounds.y_hi > bounds.y_lo,
            "empty bounds"
        );
        Histogram2D {
            bounds,
            cells_x,
            cells_y,
            cells: vec![0.0; cells_x * cells_y],
            total_weight: 0.0,
            outside: 0.0,
        }
    }

    /// Grid over `[0, binom(n,2)]^2`.
    pub fn support(n: u32, cells_x: usize, cells_y: usize) -> Self {
        Self::new(Bounds::square(f64::from(support_side(n))), cells_x, cells_y)
    }

    pub fn same_grid(&self, other: &Histogram2D) -> bool {
        self.bounds == other.bounds
            && self.cells_x == other.cells_x
            && self.cells_y == other.cells_y
    }

    pub fn cell_of(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let b = &self.bounds;
        Some((
            axis_index(x, b.x_lo, b.x_hi, self.cells_x)?,
            axis_index(y, b.y_lo, b.y_hi, self.cells_y)?,
        ))
    }

    pub fn add(&mut self, x: f64, y: f64, weight: f64) {
        self.total_weight += weight;
        match self.cell_of(x, y) {
            Some((ix, iy)) => self.cells[iy * self.cells_x + ix] += weight,
            None => self.outside += weight,
        }
    }

    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.cells[iy * self.cells_x + ix]
    }

    /// `(x0, x1, y0, y1)` of a cell.
    pub fn cell_rect(&self, ix: usize, iy: usize) -> (f64, f64, f64, f64) {
        let b = &self.bounds;
        let xs = |k: usize| b.x_lo + (b.x_hi - b.x_lo) * k as f64 / self.cells_x as f64;
        let ys = |k: usize| b.y_lo + (b.y_hi - b.y_lo) * k as f64 / self.cells_y as f64;
        (xs(ix), xs(ix + 1), ys(iy), ys(iy + 1))
    }

    pub fn binned_weight(&self) -> f64 {
        self.cells.iter().sum()
    }

    pub fn merge(&mut self, other: &Histogram2D) {
        assert!(
            self.same_grid(other),
            "merging histograms on different grids"
        );
        for (a, b) in self.cells.iter_mut().zip(&other.cells) {
            *a += b;
        }
        self.total_weight += other.total_weight;
        self.outside += other.outside;
    }

    /// Sum of absolute cell differences (outside mass included).
    pub fn l1_distance(&self, other: &Histogram2D) -> f64 {
        assert!(
            self.same_grid(other),
            "comparing histograms on different grids"
        );
        self.cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            + (self.outside - other.outside).abs()
    }

    /// Reflection across `y = x`; needs a square grid.
    pub fn transpose(&self) -> Histogram2D {
        assert_eq!(self.cells_x, self.cells_y, "transpose needs a square grid");
        let b = self.bounds;
        let mut out = Histogram2D::new(
            Bounds {
                x_lo: b.y_lo,
                x_hi: b.y_hi,
                y_lo: b.x_lo,
                y_hi: b.x_hi,
            },
            self.cells_y,
            self.cells_x,
        );
        for iy in 0..self.cells_y {
            for ix in 0..self.cells_x {
                out.cells[ix * out.cells_x + iy] = self.get(ix, iy);
            }
        }
        out.total_weight = self.total_weight;
        out.outside = self.outside;
        out
    }

    pub fn symmetry_deviation(&self) -> f64 {
        self.l1_distance(&self.transpose())
    }

    /// Bins a discrete measure; cell membership is decided in exact arithmetic
    /// so atoms on cell edges are never misplaced by round-off.
    pub fn from_measure(
        mu: &DiscreteMeasure,
        bounds: Bounds,
        cells_x: usize,
        cells_y: usize,
    ) -> Self {
        let mut h = Histogram2D::new(bounds, cells_x, cells_y);
        for atom in &mu.atoms {
            let w = atom.weight.to_f64().unwrap_or(f64::NAN);
            h.total_weight += w;
            let cell = exact_axis_index(&atom.x, bounds.x_lo, bounds.x_hi, cells_x)
                .zip(exact_axis_index(&atom.y, bounds.y_lo, bounds.y_hi, cells_y));
            match cell {
                Some((ix, iy)) => h.cells[iy * cells_x + ix] += w,
                None => h.outside += w,
            }
        }
        h
    }

    /// `x_lo,x_hi,y_lo,y_hi,weight`, one row per cell, x fastest.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x_lo,x_hi,y_lo,y_hi,weight\n");
        for iy in 0..self.cells_y {
            for ix in 0..self.cells_x {
                let (x0, x1, y0, y1) = self.cell_rect(ix, iy);
                out.push_str(&format!("{x0},{x1},{y0},{y1},{}\n", self.get(ix, iy)));
            }
        }
        out
    }

    /// Reads back [`Histogram2D::to_csv`] output. The outside weight is not
    /// part of the file and comes back as zero.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some("x_lo,x_hi,y_lo,y_hi,weight") {
            return Err(Error::Parse("unexpected histogram header".into()));
        }
        let mut rows = Vec::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let vals: std::result::Result<Vec<f64>, _> = line.split(',').map(str::parse).collect();
            match vals {
                Ok(v) if v.len() == 5 => rows.push(v),
                _ => return Err(Error::Parse(format!("bad histogram row {line:?}"))),
            }
        }
        let cells_x = rows.iter().take_while(|r| r[2] == rows[0][2]).count();
        if cells_x == 0 || rows.len() % cells_x != 0 {
            return Err(Error::Parse("histogram rows do not form a grid".into()));
        }
        let cells_y = rows.len() / cells_x;
        let last = &rows[rows.len() - 1];
        let bounds = Bounds {
            x_lo: rows[0][0],
            x_hi: last[1],
            y_lo: rows[0][2],
            y_hi: last[3],
        };
        let mut h = Histogram2D::new(bounds, cells_x, cells_y);
        for (k, r) in rows.iter().enumerate() {
            h.cells[k] = r[4];
        }
        h.total_weight = h.binned_weight();
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binning_convention() {
        let mut h = Histogram2D::new(Bounds::square(1.0), 4, 4);
        h.add(0.25, 0.0, 1.0); // left edge of cell 1
        h.add(1.0, 1.0, 1.0); // outer corner goes to the last cell
        h.add(1.5, 0.5, 2.0); // outside
        assert_eq!(h.get(1, 0), 1.0);
        assert_eq!(h.get(3, 3), 1.0);
        assert_eq!(h.outside, 2.0);
        assert_eq!(h.total_weight, 4.0);
        assert_eq!(h.binned_weight(), 2.0);
    }

    #[test]
    fn exact_binning_of_edge_atoms() {
        // 3/10 sits exactly on a cell edge of a 0.1-wide grid; f64 division
        // would put it in cell 2.
        let mut mu = DiscreteMeasure::default();
        mu.push(q(3, 10), q(59, 10), q(1, 1)).unwrap();
        let h = Histogram2D::from_measure(&mu, Bounds::square(6.0), 60, 60);
        assert_eq!(h.get(3, 59), 1.0);
    }

    #[test]
    fn transpose_and_symmetry() {
        let mut h = Histogram2D::new(Bounds::square(2.0), 2, 2);
        h.add(0.5, 1.5, 1.0);
        let t = h.transpose();
        assert_eq!(t.get(1, 0), 1.0);
        assert_eq!(h.symmetry_deviation(), 2.0);
        h.add(1.5, 0.5, 1.0);
        assert_eq!(h.symmetry_deviation(), 0.0);
    }

    #[test]
    fn csv_round_trip() {
        let mut h = Histogram2D::new(Bounds::square(6.0), 3, 2);
        h.add(0.1, 0.2, 0.125);
        h.add(5.9, 5.0, 1.0 / 3.0);
        let csv = h.to_csv();
        assert!(csv.starts_with("x_lo,x_hi,y_lo,y_hi,weight\n0,2,0,3,0.125\n"));
        let back = Histogram2D::from_csv(&csv).unwrap();
        assert_eq!(back.cells, h.cells);
        assert_eq!(back.bounds, h.bounds);
        assert!(Histogram2D::from_csv("nope").is_err());
    }
}

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::continuous::transform_area;
use crate::error::{Error, Result};
use crate::poly::{qt_catalan_dinv_area, DiscreteMeasure};

use super::density::{density_n4_cell_integrals, density_n4_test_integrals};
use super::histogram::Histogram2D;
use super::sampling::{sample_area_polytope, SampleBatch};
use super::{polytope_volume, MapChoice};

/// Fixed test functions for weak-convergence spot checks.
pub const TEST_FUNCTION_NAMES: [&str; 3] = ["1", "x+y", "exp(-(x^2+y^2)/20)"];

const TEST_FUNCTIONS: [fn(f64, f64) -> f64; 3] = [
    |_, _| 1.0,
    |x, y| x + y,
    |x, y| (-(x * x + y * y) / 20.0).exp(),
];

/// Offset between the seed of a sample and the seed of an independent
/// comparison sample drawn in the same report.
const INDEPENDENT_SEED_OFFSET: u64 = 0x9e37_79b9_7f4a_7c15;

const CHUNK: usize = 16_384;

fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl SampleBatch {
    /// Bins the image of every sample under `map`; each sample carries
    /// `vol(A_n) / count`, so the total weight is the polytope volume.
    pub fn pushforward(&self, map: MapChoice, cells_x: usize, cells_y: usize) -> Histogram2D {
        self.pushforward_with(|a| map.apply(a), cells_x, cells_y)
    }

    pub(crate) fn pushforward_with(
        &self,
        f: impl Fn(&[f64]) -> (f64, f64) + Sync,
        cells_x: usize,
        cells_y: usize,
    ) -> Histogram2D {
        let n = self.n as u32;
        let weight = polytope_volume(n).to_f64().unwrap_or(f64::NAN) / self.len() as f64;
        let parts: Vec<Histogram2D> = self
            .points
            .par_chunks(CHUNK * self.n)
            .map(|chunk| {
                let mut h = Histogram2D::support(n, cells_x, cells_y);
                for p in chunk.chunks_exact(self.n) {
                    let (x, y) = f(p);
                    h.add(x, y, weight);
                }
                h
            })
            .collect();
        let mut out = Histogram2D::support(n, cells_x, cells_y);
        for h in &parts {
            out.merge(h);
        }
        out
    }

    /// Applies the measure-preserving map to every sample.
    pub fn transformed(&self) -> SampleBatch {
        let points: Vec<f64> = self
            .points
            .par_chunks(self.n)
            .flat_map_iter(|p| transform_area(p).expect("sorted area vectors lie in B_n"))
            .collect();
        SampleBatch {
            points,
            ..self.clone()
        }
    }
}

/// Standalone function form of [`SampleBatch::pushforward`].
pub fn pushforward_histogram(
    batch: &SampleBatch,
    map: MapChoice,
    cells_x: usize,
    cells_y: usize,
) -> Histogram2D {
    batch.pushforward(map, cells_x, cells_y)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub n: u32,
    pub m_list: Vec<u32>,
    pub seed: u64,
    pub grid: [usize; 2],
    /// How the limit measure was binned: `exact-density`, `monte-carlo`
    /// or `point-mass`.
    pub reference: &'static str,
    /// L1 distance between each binned discrete measure and the limit.
    pub distances: Vec<f64>,
    /// `C_n^(m) / m^(n-1)` for each m.
    #[serde(serialize_with = "ser_rationals")]
    pub total_weights: Vec<BigRational>,
    #[serde(serialize_with = "ser_rational")]
    pub limit_weight: BigRational,
    pub test_functions: [&'static str; 3],
    pub reference_integrals: Vec<f64>,
    pub discrete_integrals: Vec<Vec<f64>>,
}

impl ConvergenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn distances_strictly_decreasing(&self) -> bool {
        self.distances.windows(2).all(|w| w[1] < w[0])
    }
}

/// Compares normalized discrete measures built from `C_n^(m)(q,t)` with the
/// limit measure on a common grid.
///
/// For `n = 4` the limit is binned from the exact density; for `n = 1` it is
/// the unit point mass at the origin; otherwise it is a Monte Carlo
/// pushforward with `mc_count` samples.
pub fn convergence_report(
    n: u32,
    m_list: &[u32],
    cells_x: usize,
    cells_y: usize,
    mc_count: usize,
    seed: u64,
    cap: u64,
) -> Result<ConvergenceReport> {
    if m_list.is_empty() {
        return Err(Error::Argument("at least one m is required".into()));
    }
    if n == 0 || m_list.contains(&0) {
        return Err(Error::Argument("n and every m must be positive".into()));
    }
    let grid = Histogram2D::support(n, cells_x, cells_y);
    let bounds = grid.bounds;
    let (reference, reference_hist, reference_integrals) = match n {
        1 => {
            let mut h = grid.clone();
            h.add(0.0, 0.0, 1.0);
            let ints = TEST_FUNCTIONS.iter().map(|f| f(0.0, 0.0)).collect();
            ("point-mass", h, ints)
        }
        4 => (
            "exact-density",
            density_n4_cell_integrals(bounds, cells_x, cells_y),
            density_n4_test_integrals(&TEST_FUNCTIONS),
        ),
        _ => {
            let batch = sample_area_polytope(n as usize, mc_count, seed)?;
            let vol = polytope_volume(n).to_f64().unwrap_or(f64::NAN);
            let ints = TEST_FUNCTIONS
                .iter()
                .map(|f| {
                    let s: f64 = batch
                        .iter()
                        .map(|p| {
                            let (x, y) = MapChoice::DinvArea.apply(p);
                            f(x, y)
                        })
                        .sum();
                    s * vol / batch.len() as f64
                })
                .collect();
            (
                "monte-carlo",
                batch.pushforward(MapChoice::DinvArea, cells_x, cells_y),
                ints,
            )
        }
    };
    let mut distances = Vec::with_capacity(m_list.len());
    let mut total_weights = Vec::with_capacity(m_list.len());
    let mut discrete_integrals = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let poly = qt_catalan_dinv_area(n as usize, m, cap)?;
        let mu: DiscreteMeasure = poly.to_normalized_measure(n, m);
        let hist = Histogram2D::from_measure(&mu, bounds, cells_x, cells_y);
        distances.push(hist.l1_distance(&reference_hist));
        total_weights.push(mu.total_weight());
        discrete_integrals.push(TEST_FUNCTIONS.iter().map(|f| mu.integrate(f)).collect());
    }
    Ok(ConvergenceReport {
        n,
        m_list: m_list.to_vec(),
        seed,
        grid: [cells_x, cells_y],
        reference,
        distances,
        total_weights,
        limit_weight: polytope_volume(n),
        test_functions: TEST_FUNCTION_NAMES,
        reference_integrals,
        discrete_integrals,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PreservationReport {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    /// Cells per unit length along each free coordinate of `A_n`.
    pub cells_per_unit: usize,
    pub cells: usize,
    /// Cells that received at least one point from either sample.
    pub occupied_cells: usize,
    /// `(transported - direct) / sqrt(transported + direct)` per occupied cell.
    pub z_scores: Vec<f64>,
    pub max_abs_z: f64,
    pub chi_square: f64,
    /// `occupied + 3 * sqrt(2 * occupied)`.
    pub chi_square_limit: f64,
    /// L1 distance of the two histograms in units of volume.
    pub l1: f64,
    pub l1_limit: f64,
    /// L1 distance between `dinv x area` pushforwards of the raw and the
    /// transported samples on a 30 x 30 support grid.
    pub pushforward_l1: f64,
    pub pass: bool,
}

fn box_histogram(batch: &SampleBatch, k: usize) -> Vec<u64> {
    let n = batch.n;
    let sides: Vec<usize> = (1..n).map(|i| i * k).collect();
    let size: usize = sides.iter().product();
    let mut counts = vec![0u64; size];
    for p in batch.iter() {
        let mut idx = 0;
        for (axis, &cells) in sides.iter().enumerate() {
            let v = p[axis + 1] * k as f64;
            let c = (v.max(0.0).floor() as usize).min(cells - 1);
            idx = idx * cells + c;
        }
        counts[idx] += 1;
    }
    counts
}

/// Samples `A_n`, pushes the sample through the measure-preserving map and
/// compares its histogram with an independent direct sample.
pub fn measure_preservation_check(
    n: usize,
    count: usize,
    seed: u64,
    cells_per_unit: usize,
) -> Result<PreservationReport> {
    if n < 2 || cells_per_unit == 0 {
        return Err(Error::Argument(
            "need n >= 2 and a positive resolution".into(),
        ));
    }
    let raw = sample_area_polytope(n, count, seed)?;
    let direct = sample_area_polytope(n, count, seed.wrapping_add(INDEPENDENT_SEED_OFFSET))?;
    let moved = raw.transformed();

    let ht = box_histogram(&moved, cells_per_unit);
    let hd = box_histogram(&direct, cells_per_unit);
    let vol = polytope_volume(n as u32).to_f64().unwrap_or(f64::NAN);
    let mut z_scores = Vec::new();
    let mut l1 = 0.0;
    for (&a, &b) in ht.iter().zip(&hd) {
        l1 += (a as f64 - b as f64).abs();
        if a + b > 0 {
            z_scores.push((a as f64 - b as f64) / ((a + b) as f64).sqrt());
        }
    }
    l1 *= vol / count as f64;
    let occupied = z_scores.len();
    let chi_square: f64 = z_scores.iter().map(|z| z * z).sum();
    let chi_square_limit = occupied as f64 + 3.0 * (2.0 * occupied as f64).sqrt();
    let max_abs_z = z_scores.iter().fold(0.0f64, |m, z| m.max(z.abs()));
    let l1_limit = 0.03 * vol;

    let pushforward_l1 = raw
        .pushforward(MapChoice::DinvArea, 30, 30)
        .l1_distance(&moved.pushforward(MapChoice::DinvArea, 30, 30));

    Ok(PreservationReport {
        n,
        count,
        seed,
        cells_per_unit,
        cells: ht.len(),
        occupied_cells: occupied,
        z_scores,
        max_abs_z,
        chi_square,
        chi_square_limit,
        l1,
        l1_limit,
        pushforward_l1,
        pass: chi_square <= chi_square_limit && l1 <= l1_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_converges_trivially() {
        let rep = convergence_report(1, &[1, 5, 20], 10, 10, 0, 0, 1000).unwrap();
        assert_eq!(rep.distances, vec![0.0, 0.0, 0.0]);
        assert!(rep.total_weights.iter().all(|w| w.to_string() == "1"));
        assert_eq!(rep.reference, "point-mass");
    }

    #[test]
    fn empty_m_list_rejected() {
        assert!(convergence_report(4, &[], 10, 10, 0, 0, 1000).is_err());
    }

    #[test]
    fn transform_on_n2_is_a_reflection() {
        let batch = sample_area_polytope(2, 1000, 5).unwrap();
        let moved = batch.transformed();
        for (p, q) in batch.iter().zip(moved.iter()) {
            assert!((q[1] - (1.0 - p[1])).abs() < 1e-12);
        }
    }

    #[test]
    fn n2_preservation() {
        let rep = measure_preservation_check(2, 100_000, 9, 10).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn pushforward_total_weight() {
        let batch = sample_area_polytope(3, 10_000, 1).unwrap();
        let h = batch.pushforward(MapChoice::AreaBounce, 20, 20);
        assert!((h.total_weight - 1.5).abs() < 1e-9);
        assert!((h.binned_weight() - 1.5).abs() < 1e-9);
        assert_eq!(h.outside, 0.0);
    }

    #[test]
    fn n2_image_is_a_segment() {
        // dinv = 1 - a_1 and area = a_1, so every image lies on x + y = 1.
        let batch = sample_area_polytope(2, 1000, 2).unwrap();
        for p in batch.iter() {
            let (x, y) = MapChoice::DinvArea.apply(p);
            assert!((x + y - 1.0).abs() < 1e-12);
        }
        let h = batch.pushforward(MapChoice::DinvArea, 10, 10);
        assert!((h.binned_weight() - 1.0).abs() < 1e-12);
    }
}

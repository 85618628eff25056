use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Accepted points per work item. Each item draws from its own ChaCha stream,
/// so the output does not depend on how rayon schedules the items.
const BATCH: usize = 8192;

/// Uniform points of `A_n`, stored flat with stride `n` (leading zero kept).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub n: usize,
    pub seed: u64,
    pub points: Vec<f64>,
    pub proposed: u64,
    pub accepted: u64,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.points.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.points.chunks_exact(self.n)
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.n..(i + 1) * self.n]
    }

    pub fn acceptance_ratio(&self) -> f64 {
        self.accepted as f64 / self.proposed as f64
    }
}

fn propose(rng: &mut ChaCha8Rng, buf: &mut [f64]) -> bool {
    buf[0] = 0.0;
    for i in 1..buf.len() {
        buf[i] = rng.random::<f64>() * i as f64;
        if buf[i] > buf[i - 1] + 1.0 {
            // Remaining coordinates still have to be drawn so that a proposal
            // always consumes the same number of variates.
            for (k, slot) in buf.iter_mut().enumerate().skip(i + 1) {
                *slot = rng.random::<f64>() * k as f64;
            }
            return false;
        }
    }
    true
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Rejection sampling from the box `prod_{i=1}^{n-1} [0, i]`, which contains
/// `A_n`.
pub fn sample_area_polytope(n: usize, count: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 || count == 0 {
        return Err(Error::Argument(format!(
            "sampling needs n >= 1 and count >= 1 (got n = {n}, count = {count})"
        )));
    }
    let batches = count.div_ceil(BATCH);
    let parts: Vec<(Vec<f64>, u64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let want = BATCH.min(count - b * BATCH);
            let mut rng = stream_rng(seed, b as u64);
            let mut out = Vec::with_capacity(want * n);
            let mut buf = vec![0.0; n];
            let mut proposed = 0u64;
            while out.len() < want * n {
                proposed += 1;
                if propose(&mut rng, &mut buf) {
                    out.extend_from_slice(&buf);
                }
            }
            (out, proposed)
        })
        .collect();
    let mut points = Vec::with_capacity(count * n);
    let mut proposed = 0;
    for (p, k) in parts {
        points.extend(p);
        proposed += k;
    }
    Ok(SampleBatch {
        n,
        seed,
        points,
        proposed,
        accepted: count as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub proposals: u64,
    pub accepted: u64,
    /// `accepted / proposals * (n-1)!`.
    pub volume: f64,
}

/// Runs a fixed number of box proposals and scales the hit rate by the box
/// volume `(n-1)!`.
pub fn estimate_volume(n: usize, proposals: u64, seed: u64) -> Result<VolumeEstimate> {
    if n == 0 || proposals == 0 {
        return Err(Error::Argument(
            "need n >= 1 and at least one proposal".into(),
        ));
    }
    let batch = BATCH as u64;
    let batches = proposals.div_ceil(batch);
    let accepted: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let k = batch.min(proposals - b * batch);
            let mut rng = stream_rng(seed, b);
            let mut buf = vec![0.0; n];
            (0..k).filter(|_| propose(&mut rng, &mut buf)).count() as u64
        })
        .sum();
    let box_volume: f64 = (1..n).map(|i| i as f64).product();
    Ok(VolumeEstimate {
        proposals,
        accepted,
        volume: accepted as f64 / proposals as f64 * box_volume,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuous::check_area;

    #[test]
    fn n2_accepts_everything() {
        let batch = sample_area_polytope(2, 1000, 7).unwrap();
        assert_eq!(batch.proposed, 1000);
        assert_eq!(batch.acceptance_ratio(), 1.0);
    }

    #[test]
    fn points_are_feasible_and_deterministic() {
        let a = sample_area_polytope(5, 20_000, 11).unwrap();
        let b = sample_area_polytope(5, 20_000, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20_000);
        for p in a.iter() {
            assert_eq!(p[0], 0.0);
            for w in p.windows(2) {
                assert!(w[1] >= 0.0 && w[1] <= w[0] + 1.0);
            }
            check_area(p).unwrap();
        }
        let c = sample_area_polytope(5, 20_000, 12).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn n4_acceptance_near_four_ninths() {
        let est = estimate_volume(4, 400_000, 3).unwrap();
        let ratio = est.accepted as f64 / est.proposals as f64;
        assert!((ratio - 4.0 / 9.0).abs() < 0.005, "{ratio}");
    }

    #[test]
    fn n1_is_a_point() {
        let batch = sample_area_polytope(1, 5, 0).unwrap();
        assert_eq!(batch.points, vec![0.0; 5]);
        assert_eq!(estimate_volume(1, 10, 0).unwrap().volume, 1.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sample_area_polytope(0, 10, 0).is_err());
        assert!(sample_area_polytope(3, 0, 0).is_err());
        assert!(estimate_volume(3, 0, 0).is_err());
    }
}

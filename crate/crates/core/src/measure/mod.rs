//! Measures on the plane built from continuous and discrete Dyck paths.
//!
//! The q,t-Catalan measure of height `n` is the pushforward of Lebesgue
//! measure on the area polytope `A_n` under `dinv x area` (equivalently
//! `area x bounce`). This module samples `A_n`, bins pushforwards onto a grid,
//! knows the exact density for `n = 4`, and compares the limit measure with
//! normalized discrete measures coming from q,t-Catalan polynomials.

mod density;
mod histogram;
mod report;
mod sampling;

pub use density::{
    density_n4_cell_integrals, density_n4_integral, density_n4_pieces, density_n4_test_integrals,
    exact_density_n4, DensityPiece,
};
pub use histogram::{Bounds, Histogram2D};
pub use report::{
    convergence_report, measure_preservation_check, pushforward_histogram, ConvergenceReport,
    PreservationReport, TEST_FUNCTION_NAMES,
};
pub use sampling::{estimate_volume, sample_area_polytope, SampleBatch, VolumeEstimate};

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::continuous::{area_of, bounce_from_area, dinv_of};
use crate::discrete::catalan_number_m;
use crate::error::{Error, Result};

/// Which pair of statistics maps `A_n` into the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MapChoice {
    #[serde(rename = "dinv-area")]
    DinvArea,
    #[serde(rename = "area-bounce")]
    AreaBounce,
}

impl MapChoice {
    /// Image of one area vector.
    pub fn apply(self, a: &[f64]) -> (f64, f64) {
        match self {
            MapChoice::DinvArea => (dinv_of(a), area_of(a)),
            MapChoice::AreaBounce => {
                let b = bounce_from_area(a).expect("sampled points lie in the area polytope");
                (area_of(a), area_of(&b))
            }
        }
    }
}

impl fmt::Display for MapChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapChoice::DinvArea => "dinv-area",
            MapChoice::AreaBounce => "area-bounce",
        })
    }
}

impl FromStr for MapChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dinv-area" => Ok(MapChoice::DinvArea),
            "area-bounce" => Ok(MapChoice::AreaBounce),
            other => Err(Error::Argument(format!(
                "unknown map {other:?}, expected dinv-area or area-bounce"
            ))),
        }
    }
}

/// `vol(A_n) = n^(n-2) / (n-1)!`.
pub fn polytope_volume(n: u32) -> BigRational {
    assert!(n >= 1, "height must be positive");
    if n == 1 {
        return BigRational::from_integer(1.into());
    }
    let num = num_traits::pow(BigInt::from(n), (n - 2) as usize);
    let den: BigInt = (1..n).map(BigInt::from).product();
    BigRational::new(num, den)
}

/// Side length of the square that holds every pushforward image:
/// `binom(n,2)`, the largest value of each statistic, but at least 1.
pub fn support_side(n: u32) -> u32 {
    (n * n.saturating_sub(1) / 2).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EhrhartReport {
    pub n: u32,
    pub m: u32,
    pub lattice_points: u64,
    #[serde(serialize_with = "crate::measure::ser_display")]
    pub catalan: BigUint,
    pub pass: bool,
}

/// Counts the points of `A_n` with coordinates in `(1/m)Z` by scanning the
/// bounding box `prod_i [0, i]` and compares with `C_n^(m)`.
pub fn ehrhart_check(n: u32, m: u32, cap: u64) -> Result<EhrhartReport> {
    if n == 0 || m == 0 {
        return Err(Error::Argument("n and m must be positive".into()));
    }
    let sides: Vec<u64> = (1..n as u64).map(|i| i * u64::from(m) + 1).collect();
    let box_size = sides
        .iter()
        .try_fold(1u64, |acc, s| acc.checked_mul(*s))
        .filter(|s| *s <= cap)
        .ok_or_else(|| Error::BudgetExceeded {
            predicted: sides.iter().map(|s| BigUint::from(*s)).product(),
            cap,
        })?;
    // Split on the first free coordinate and scan the remaining box per block.
    let m64 = i64::from(m);
    let count: u64 = if n == 1 {
        1
    } else {
        (0..sides[0] as i64)
            .into_par_iter()
            .map(|first| {
                let mut c = vec![0i64; n as usize];
                c[1] = first;
                count_box(&mut c, 2, m64)
            })
            .sum()
    };
    debug_assert!(count <= box_size);
    let catalan = catalan_number_m(n, m);
    Ok(EhrhartReport {
        n,
        m,
        lattice_points: count,
        pass: catalan == BigUint::from(count),
        catalan,
    })
}

/// Scans coordinates `k..` over their full box ranges `[0, k*m]` and counts
/// the integer points satisfying the scaled inequalities.
fn count_box(c: &mut [i64], k: usize, m: i64) -> u64 {
    if k == c.len() {
        let inside = c.windows(2).all(|w| w[1] >= 0 && w[1] <= w[0] + m);
        return u64::from(inside);
    }
    let mut total = 0;
    for v in 0..=(k as i64 * m) {
        c[k] = v;
        total += count_box(c, k + 1, m);
    }
    total
}

pub(crate) fn ser_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn volumes() {
        assert_eq!(polytope_volume(1), r(1, 1));
        assert_eq!(polytope_volume(2), r(1, 1));
        assert_eq!(polytope_volume(3), r(3, 2));
        assert_eq!(polytope_volume(4), r(8, 3));
        assert_eq!(polytope_volume(5), r(125, 24));
    }

    #[test]
    fn ehrhart_small_cases() {
        let rep = ehrhart_check(3, 1, 1000).unwrap();
        assert_eq!(rep.lattice_points, 5);
        assert!(rep.pass);
        for m in 1..6 {
            assert_eq!(
                ehrhart_check(2, m, 1000).unwrap().lattice_points,
                u64::from(m) + 1
            );
        }
        let rep = ehrhart_check(4, 3, 10_000).unwrap();
        assert_eq!(rep.lattice_points, 1820 / 13);
        assert!(rep.pass);
        assert!(ehrhart_check(1, 4, 10).unwrap().pass);
    }

    #[test]
    fn ehrhart_budget() {
        assert!(matches!(
            ehrhart_check(6, 10, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn map_choice_parsing() {
        assert_eq!(
            "dinv-area".parse::<MapChoice>().unwrap(),
            MapChoice::DinvArea
        );
        assert_eq!(MapChoice::AreaBounce.to_string(), "area-bounce");
        assert!("area".parse::<MapChoice>().is_err());
    }

    #[test]
    fn support_side_values() {
        assert_eq!(support_side(1), 1);
        assert_eq!(support_side(2), 1);
        assert_eq!(support_side(4), 6);
    }
}

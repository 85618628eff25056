//! Self-check suite behind `qtcat verify`.
//!
//! Every check that depends on a scoring kernel takes it from [`Kernels`], so
//! a mutated kernel can be injected and the failing check is named in the
//! report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::continuous::{self, bounce_from_area, check_bounce, BounceVector, ContinuousPath};
use crate::discrete::{self, bounce_path_of, catalan_number_m, MDyckPath, MDyckPaths};
use crate::error::{Error, Result};
use crate::measure::ehrhart_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            other => Err(Error::Argument(format!("unknown level {other:?}"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
        })
    }
}

/// Scoring kernels used by the checks.
#[derive(Clone, Copy)]
pub struct Kernels {
    /// Continuous kernel, `max(1 - |x|, 0)`.
    pub sc: fn(&BigRational) -> BigRational,
    /// Discrete kernel `sc_m(p, m)`.
    pub sc_m: fn(i64, u32) -> u64,
}

impl Default for Kernels {
    fn default() -> Self {
        Kernels {
            sc: continuous::sc::<BigRational>,
            sc_m: discrete::sc_m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }

    /// One `PASS name: detail` or `FAIL name: detail` line per check.
    pub fn log(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

type CheckResult = std::result::Result<String, String>;
type Check = (&'static str, fn(&Kernels) -> CheckResult);

const FAST: &[Check] = &[
    ("mdyck_example_statistics", mdyck_example_statistics),
    (
        "continuous_example_statistics",
        continuous_example_statistics,
    ),
    ("transform_example", transform_example),
    ("normalized_stats_011", normalized_stats_011),
    ("catalan_counts", catalan_counts),
    ("qt_symmetry_n4", qt_symmetry_n4),
];

const FULL: &[Check] = &[
    ("qt_definitions_agree", qt_definitions_agree),
    ("phi_transport", phi_transport),
    ("jacobian_oracle", jacobian_oracle),
    ("ehrhart_counts", ehrhart_counts),
    ("dinv_bound", dinv_bound),
];

pub fn run_checks(level: Level, kernels: &Kernels) -> VerifyReport {
    let mut checks: Vec<Check> = FAST.to_vec();
    if level == Level::Full {
        checks.extend_from_slice(FULL);
    }
    let checks = checks
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f(kernels) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                name,
                passed,
                detail,
            }
        })
        .collect();
    VerifyReport { level, checks }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn expect<T: PartialEq + fmt::Debug>(
    what: &str,
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn lib(e: Error) -> String {
    e.to_string()
}

fn dinv_m(area: &[u32], m: u32, k: &Kernels) -> u64 {
    discrete::dinv_with(area, m, k.sc_m)
}

fn dinv_cont(a: &[BigRational], k: &Kernels) -> BigRational {
    continuous::dinv_with(a, k.sc)
}

/// `T` built from the injected kernel: sort, then `a_j = sum_{i<j} sc(b_j - b_i)`.
fn transform_with(a: &[BigRational], k: &Kernels) -> Result<Vec<BigRational>> {
    let mut b = a.to_vec();
    b.sort();
    check_bounce(&b)?;
    Ok((0..b.len())
        .map(|j| {
            b[..j]
                .iter()
                .fold(BigRational::zero(), |acc, bi| acc + (k.sc)(&(&b[j] - bi)))
        })
        .collect())
}

fn mdyck_example_statistics(k: &Kernels) -> CheckResult {
    let area = [0, 1, 0, 2, 3];
    let p = MDyckPath::new(2, area.to_vec()).map_err(lib)?;
    expect("area", p.area(), 6)?;
    expect("dinv", dinv_m(&area, 2, k), 7)?;
    let bp = bounce_path_of(&area, 2);
    expect("v", bp.v.as_slice(), &[1, 1, 0, 2, 1, 0])?;
    expect("h", bp.h.as_slice(), &[1, 2, 1, 2, 3, 1])?;
    expect("bounce", p.bounce(), 11)?;
    Ok("area 6, dinv 7, bounce 11".into())
}

fn continuous_example_statistics(k: &Kernels) -> CheckResult {
    let a = vec![q(0, 1), q(3, 5), q(6, 5), q(1, 2)];
    let p = ContinuousPath::new(a.clone()).map_err(lib)?;
    expect("area", p.area(), q(23, 10))?;
    expect("dinv", dinv_cont(&a, k), q(5, 2))?;
    let b = p.bounce_vector().map_err(lib)?;
    expect(
        "bounce vector",
        b.values().to_vec(),
        vec![q(0, 1), q(2, 5), q(3, 5), q(5, 4)],
    )?;
    expect("bounce", b.sum(), q(9, 4))?;
    Ok("area 23/10, dinv 5/2, bounce 9/4".into())
}

fn transform_example(k: &Kernels) -> CheckResult {
    let a = vec![q(0, 1), q(3, 5), q(6, 5), q(1, 2)];
    let t = transform_with(&a, k).map_err(lib)?;
    expect(
        "T(a)",
        t.clone(),
        vec![q(0, 1), q(1, 2), q(13, 10), q(7, 10)],
    )?;
    expect("area", continuous::area_of(&t), q(5, 2))?;
    let b = bounce_from_area(&t).map_err(lib)?;
    let mut sorted = a;
    sorted.sort();
    expect("bounce vector of T(a)", b.clone(), sorted)?;
    expect("bounce", continuous::area_of(&b), q(23, 10))?;
    Ok("T = (0, 1/2, 13/10, 7/10), area 5/2, bounce 23/10".into())
}

fn normalized_stats_011(k: &Kernels) -> CheckResult {
    let p = ContinuousPath::new(vec![q(0, 1), q(1, 1), q(1, 1)]).map_err(lib)?;
    for m in 1..=12u32 {
        let d = p.to_m_dyck(m).map_err(lib)?;
        let mi = i64::from(m);
        expect("area", q(d.area() as i64, mi), q(2, 1))?;
        expect("dinv", q(dinv_m(d.area_vector(), m, k) as i64, mi), q(1, 1))?;
        let want = if m % 2 == 0 {
            q(1, 2)
        } else {
            q(mi + 1, 2 * mi)
        };
        expect("bounce", q(d.bounce() as i64, mi), want)?;
    }
    Ok("m = 1..12: area 2, dinv 1, bounce 1/2 or (m+1)/(2m)".into())
}

fn catalan_counts(_: &Kernels) -> CheckResult {
    for n in 1..=5usize {
        for m in 1..=3u32 {
            let count = MDyckPaths::new(n, m).count();
            expect(
                &format!("count n={n} m={m}"),
                num_bigint::BigUint::from(count),
                catalan_number_m(n as u32, m),
            )?;
        }
    }
    Ok("n <= 5, m <= 3".into())
}

type Counts = BTreeMap<(u64, u64), u64>;

fn stat_counts(n: usize, m: u32, f: impl Fn(&[u32]) -> (u64, u64)) -> Counts {
    let mut c = Counts::new();
    MDyckPaths::new(n, m).for_each_vector(|a| *c.entry(f(a)).or_default() += 1);
    c
}

fn compare_definitions(n: usize, m: u32, k: &Kernels) -> std::result::Result<(), String> {
    let da = stat_counts(n, m, |a| (dinv_m(a, m, k), discrete::area_of(a)));
    let ab = stat_counts(n, m, |a| (discrete::area_of(a), discrete::bounce_of(a, m)));
    if da != ab {
        return Err(format!("dinv-area and area-bounce differ at n={n} m={m}"));
    }
    let transposed: Counts = da.iter().map(|(&(x, y), &c)| ((y, x), c)).collect();
    if transposed != da {
        return Err(format!("not symmetric at n={n} m={m}"));
    }
    Ok(())
}

fn qt_symmetry_n4(k: &Kernels) -> CheckResult {
    for m in 1..=2 {
        compare_definitions(4, m, k)?;
    }
    Ok("n = 4, m <= 2".into())
}

fn qt_definitions_agree(k: &Kernels) -> CheckResult {
    for n in 1..=6 {
        for m in 1..=3 {
            compare_definitions(n, m, k)?;
        }
    }
    Ok("n <= 6, m <= 3, symmetric".into())
}

fn phi_transport(k: &Kernels) -> CheckResult {
    let mut total = 0;
    for n in 1..=5usize {
        for m in 1..=3u32 {
            let mut images = BTreeSet::new();
            let mut count = 0;
            for p in MDyckPaths::new(n, m) {
                let img = p.phi().map_err(lib)?;
                if img.area() != dinv_m(p.area_vector(), m, k) {
                    return Err(format!("area(phi(D)) != dinv(D) for D = {p}"));
                }
                if img.bounce() != p.area() {
                    return Err(format!("bounce(phi(D)) != area(D) for D = {p}"));
                }
                images.insert(img.into_area_vector());
                count += 1;
            }
            if images.len() != count {
                return Err(format!("phi is not injective at n={n} m={m}"));
            }
            total += count;
        }
    }
    Ok(format!("{total} paths, n <= 5, m <= 3"))
}

/// Seeded random bounce vectors at which the change of coordinates is
/// locally linear. Gaps are multiples of `1/denominator` in `(0, 1)`.
pub fn generic_bounce_vectors(n: usize, count: usize, seed: u64) -> Vec<BounceVector> {
    const DENOMINATOR: i64 = 997;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut b = vec![BigRational::zero()];
        for i in 1..n {
            let gap = q(rng.random_range(1..DENOMINATOR), DENOMINATOR);
            b.push(&b[i - 1] + gap);
        }
        if let Ok(v) = BounceVector::new(b) {
            if v.check_generic().is_ok() {
                out.push(v);
            }
        }
    }
    out
}

fn jacobian_oracle(_: &Kernels) -> CheckResult {
    for n in 3..=7 {
        for b in generic_bounce_vectors(n, 200, 0x5eed) {
            let d = b.jacobian_count().map_err(lib)?;
            let s = b.sort_preimage_count(8).map_err(lib)?;
            if d != s {
                return Err(format!("b = {b}: jacobian {d}, preimages {s}"));
            }
        }
    }
    Ok("200 generic vectors each for n = 3..7".into())
}

fn ehrhart_counts(_: &Kernels) -> CheckResult {
    for m in [1, 2, 3, 5, 10, 20, 50] {
        let rep = ehrhart_check(4, m, 10_000_000).map_err(lib)?;
        if !rep.pass {
            return Err(format!(
                "m={m}: {} lattice points, C = {}",
                rep.lattice_points, rep.catalan
            ));
        }
    }
    Ok("n = 4, m in {1,2,3,5,10,20,50}".into())
}

fn dinv_bound(k: &Kernels) -> CheckResult {
    for n in 1..=4usize {
        let pairs = (n * n.saturating_sub(1) / 2) as i64;
        for m in 1..=6u32 {
            let mi = i64::from(m);
            let bound = q(pairs, mi);
            for p in MDyckPaths::new(n, m) {
                let a: Vec<BigRational> = p
                    .area_vector()
                    .iter()
                    .map(|&x| q(i64::from(x), mi))
                    .collect();
                let gap = dinv_cont(&a, k) - q(dinv_m(p.area_vector(), m, k) as i64, mi);
                let gap = if gap < BigRational::zero() { -gap } else { gap };
                if gap > bound {
                    return Err(format!("n={n} m={m} D={p}: |difference| = {gap} > {bound}"));
                }
            }
        }
    }
    Ok("n <= 4, m <= 6".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn fast_suite_passes() {
        let rep = run_checks(Level::Fast, &Kernels::default());
        assert!(rep.passed(), "{}", rep.log());
    }

    #[test]
    fn mutated_continuous_kernel_is_named() {
        fn bad_sc(x: &BigRational) -> BigRational {
            let v = BigRational::one() - x;
            if v < BigRational::zero() {
                BigRational::zero()
            } else {
                v
            }
        }
        let k = Kernels {
            sc: bad_sc,
            ..Kernels::default()
        };
        let rep = run_checks(Level::Fast, &k);
        assert!(rep.failures().contains(&"continuous_example_statistics"));
        assert!(rep.log().contains("FAIL continuous_example_statistics"));
    }

    #[test]
    fn mutated_discrete_kernel_is_named() {
        let k = Kernels {
            sc_m: |p, m| discrete::sc_m(p, m) + u64::from(p == 0),
            ..Kernels::default()
        };
        let rep = run_checks(Level::Fast, &k);
        assert!(rep.failures().contains(&"mdyck_example_statistics"));
        assert!(rep.failures().contains(&"qt_symmetry_n4"));
    }

    #[test]
    fn generic_vectors_are_generic() {
        let v = generic_bounce_vectors(5, 50, 1);
        assert_eq!(v.len(), 50);
        assert_eq!(v, generic_bounce_vectors(5, 50, 1));
        for b in v {
            b.check_generic().unwrap();
        }
    }
}

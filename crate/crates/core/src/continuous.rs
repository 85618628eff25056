//! Continuous Dyck paths of height `n`, identified with points of the area
//! polytope
//!
//! ```text
//! A_n = { a : a_0 = 0, 0 <= a_{i+1} <= a_i + 1 }
//! ```
//!
//! and their bounce vectors, points of
//!
//! ```text
//! B_n = { b : b_0 = 0, b_i <= b_{i+1} <= b_i + 1 }.
//! ```
//!
//! The statistics are written once over [`Scalar`] so the same code runs on
//! exact rationals ([`ContinuousPath`], [`BounceVector`]) and on `f64` samples
//! in the measure engine.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::discrete::MDyckPath;
use crate::error::{Error, Result};

/// Ordered field used by the path statistics.
pub trait Scalar:
    Clone
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_usize(k: usize) -> Self;

    fn magnitude(&self) -> Self;

    /// Allowance for round-off in feasibility tests; zero for exact types.
    fn slack() -> Self;
}

impl Scalar for f64 {
    fn from_usize(k: usize) -> Self {
        k as f64
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn slack() -> Self {
        1e-9
    }
}

impl Scalar for BigRational {
    fn from_usize(k: usize) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn slack() -> Self {
        BigRational::zero()
    }
}

/// `max(1 - |x|, 0)`.
pub fn sc<S: Scalar>(x: &S) -> S {
    let v = S::one() - x.magnitude();
    if v > S::zero() {
        v
    } else {
        S::zero()
    }
}

pub fn area_of<S: Scalar>(a: &[S]) -> S {
    a.iter().fold(S::zero(), |acc, x| acc + x.clone())
}

pub fn dinv_of<S: Scalar>(a: &[S]) -> S {
    dinv_with(a, sc)
}

pub fn dinv_with<S: Scalar>(a: &[S], score: impl Fn(&S) -> S) -> S {
    let mut total = S::zero();
    for (i, ai) in a.iter().enumerate() {
        for aj in &a[i + 1..] {
            total = total + score(&(ai.clone() - aj.clone()));
        }
    }
    total
}

/// Membership in `A_n`, naming the first failed inequality.
pub fn check_area<S: Scalar>(a: &[S]) -> Result<()> {
    let tol = S::slack();
    match a.first() {
        None => return Err(Error::invariant("area vector", "height must be positive")),
        Some(a0) if a0.magnitude() > tol => {
            return Err(Error::invariant(
                "area vector",
                format!("a_0 = {a0}, expected 0"),
            ))
        }
        _ => {}
    }
    for (i, w) in a.windows(2).enumerate() {
        if w[1] < -tol.clone() {
            return Err(Error::invariant(
                "area vector",
                format!("a_{} >= 0 violated (a_{} = {})", i + 1, i + 1, w[1]),
            ));
        }
        if w[1] > w[0].clone() + S::one() + tol.clone() {
            return Err(Error::invariant(
                "area vector",
                format!(
                    "a_{} <= a_{} + 1 violated ({} > {} + 1)",
                    i + 1,
                    i,
                    w[1],
                    w[0]
                ),
            ));
        }
    }
    Ok(())
}

/// Membership in `B_n`, naming the first failed inequality.
pub fn check_bounce<S: Scalar>(b: &[S]) -> Result<()> {
    let tol = S::slack();
    match b.first() {
        None => return Err(Error::invariant("bounce vector", "height must be positive")),
        Some(b0) if b0.magnitude() > tol => {
            return Err(Error::invariant(
                "bounce vector",
                format!("b_0 = {b0}, expected 0"),
            ))
        }
        _ => {}
    }
    for (i, w) in b.windows(2).enumerate() {
        if w[1] < w[0].clone() - tol.clone() {
            return Err(Error::invariant(
                "bounce vector",
                format!("b_{} <= b_{} violated ({} > {})", i, i + 1, w[0], w[1]),
            ));
        }
        if w[1] > w[0].clone() + S::one() + tol.clone() {
            return Err(Error::invariant(
                "bounce vector",
                format!(
                    "b_{} <= b_{} + 1 violated ({} > {} + 1)",
                    i + 1,
                    i,
                    w[1],
                    w[0]
                ),
            ));
        }
    }
    Ok(())
}

/// Change of coordinates `B_n -> A_n`: `a_j = sum_{i<j} sc(b_j - b_i)`.
pub fn area_from_bounce<S: Scalar>(b: &[S]) -> Vec<S> {
    b.iter()
        .enumerate()
        .map(|(j, bj)| {
            b[..j]
                .iter()
                .fold(S::zero(), |acc, bi| acc + sc(&(bj.clone() - bi.clone())))
        })
        .collect()
}

/// Times of the north steps of the bounce parametrization.
///
/// Event-driven: between events the horizontal position moves at the number
/// of north steps taken in the trailing unit of time. Events are reaching the
/// next north step and an active step leaving the window. On a tie the north
/// step is taken first. The input is assumed to lie in `A_n`.
pub fn bounce_from_area<S: Scalar>(a: &[S]) -> Result<Vec<S>> {
    let n = a.len();
    let targets: Vec<S> = a
        .iter()
        .enumerate()
        .map(|(j, aj)| S::from_usize(j) - aj.clone())
        .collect();
    let mut out = Vec::with_capacity(n);
    // Expiry times b_i + 1; nondecreasing because the b_i are.
    let mut active: VecDeque<S> = VecDeque::with_capacity(n);
    let mut time = S::zero();
    let mut pos = S::zero();
    let mut j = 0;
    while j < n {
        if targets[j] <= pos {
            out.push(time.clone());
            active.push_back(time.clone() + S::one());
            j += 1;
            continue;
        }
        while active.front().is_some_and(|e| *e <= time) {
            active.pop_front();
        }
        let Some(expiry) = active.front().cloned() else {
            // Only round-off can leave a gap here for points of A_n.
            if targets[j].clone() - pos.clone() <= S::slack() {
                pos = targets[j].clone();
                continue;
            }
            return Err(Error::Stall {
                step: j,
                time: time.to_string(),
            });
        };
        let speed = S::from_usize(active.len());
        let arrival = time.clone() + (targets[j].clone() - pos.clone()) / speed.clone();
        if arrival <= expiry {
            time = arrival;
            pos = targets[j].clone();
        } else {
            pos = pos + speed * (expiry.clone() - time);
            time = expiry;
        }
    }
    Ok(out)
}

/// The measure-preserving map: sort the area vector, read it as a bounce
/// vector, return the area vector of that path.
pub fn transform_area<S: Scalar>(a: &[S]) -> Result<Vec<S>> {
    let mut sorted = a.to_vec();
    sorted.sort_by(|x, y| x.partial_cmp(y).expect("coordinates are comparable"));
    check_bounce(&sorted)?;
    Ok(area_from_bounce(&sorted))
}

/// Bounce times when north steps are only allowed at times in `(1/m)Z`.
pub fn discrete_bounce_times<S: Scalar>(a: &[S], m: u32) -> Result<Vec<S>> {
    if m == 0 {
        return Err(Error::Argument("m must be positive".into()));
    }
    let n = a.len();
    let targets: Vec<S> = a
        .iter()
        .enumerate()
        .map(|(j, aj)| S::from_usize(j) - aj.clone())
        .collect();
    let m_s = S::from_usize(m as usize);
    let mut window: VecDeque<usize> = VecDeque::with_capacity(m as usize);
    let mut out = Vec::with_capacity(n);
    let mut pos = S::zero();
    let mut tick = 0usize;
    let mut j = 0;
    loop {
        let now = S::from_usize(tick) / m_s.clone();
        let mut run = 0;
        while j < n && targets[j] <= pos.clone() + S::slack() {
            out.push(now.clone());
            j += 1;
            run += 1;
        }
        if j == n {
            return Ok(out);
        }
        if window.len() == m as usize {
            window.pop_front();
        }
        window.push_back(run);
        let speed: usize = window.iter().sum();
        if speed == 0 {
            return Err(Error::Stall {
                step: j,
                time: now.to_string(),
            });
        }
        pos = pos + S::from_usize(speed) / m_s.clone();
        tick += 1;
    }
}

/// Parses `"3/5"`, `"0.6"`, `"-2"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(num, den);
    Ok(if neg { -value } else { value })
}

pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuousPath {
    area: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BounceVector {
    b: Vec<BigRational>,
}

/// Normalized m-statistics of a 1/m-integral path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedStats {
    pub area: BigRational,
    pub dinv: BigRational,
    pub bounce: BigRational,
}

impl ContinuousPath {
    pub fn new(area: Vec<BigRational>) -> Result<Self> {
        check_area(&area)?;
        Ok(ContinuousPath { area })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_rational_list(s)?)
    }

    pub fn zero(n: usize) -> Self {
        ContinuousPath {
            area: vec![BigRational::zero(); n],
        }
    }

    /// `(0, 1, ..., n-1)`: every north step at `x = 0`.
    pub fn staircase(n: usize) -> Self {
        ContinuousPath {
            area: (0..n).map(BigRational::from_usize).collect(),
        }
    }

    /// Horizontal scaling by `1/m`.
    pub fn from_m_dyck(p: &MDyckPath) -> Self {
        let m = BigInt::from(p.m());
        ContinuousPath {
            area: p
                .area_vector()
                .iter()
                .map(|&a| BigRational::new(BigInt::from(a), m.clone()))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.area.len()
    }

    pub fn area_vector(&self) -> &[BigRational] {
        &self.area
    }

    /// x-coordinates of the north steps, `x_i = i - a_i`.
    pub fn north_x(&self) -> Vec<BigRational> {
        self.area
            .iter()
            .enumerate()
            .map(|(i, a)| BigRational::from_usize(i) - a)
            .collect()
    }

    pub fn area(&self) -> BigRational {
        area_of(&self.area)
    }

    pub fn dinv(&self) -> BigRational {
        dinv_of(&self.area)
    }

    pub fn bounce_vector(&self) -> Result<BounceVector> {
        Ok(BounceVector {
            b: bounce_from_area(&self.area)?,
        })
    }

    pub fn bounce(&self) -> Result<BigRational> {
        Ok(self.bounce_vector()?.sum())
    }

    pub fn transform(&self) -> Result<ContinuousPath> {
        Ok(ContinuousPath {
            area: transform_area(&self.area)?,
        })
    }

    pub fn is_integral(&self, m: u32) -> bool {
        self.scaled(m).is_ok()
    }

    fn scaled(&self, m: u32) -> Result<Vec<u32>> {
        let m_int = BigInt::from(m);
        self.area
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let scaled = a * BigRational::from_integer(m_int.clone());
                let not_integral = || Error::NotIntegral {
                    m,
                    index: i,
                    value: a.to_string(),
                };
                if !scaled.is_integer() {
                    return Err(not_integral());
                }
                scaled.to_integer().to_u32().ok_or_else(not_integral)
            })
            .collect()
    }

    /// The m-Dyck path obtained by stretching horizontally by `m`.
    pub fn to_m_dyck(&self, m: u32) -> Result<MDyckPath> {
        if m == 0 {
            return Err(Error::Argument("m must be positive".into()));
        }
        MDyckPath::new(m, self.scaled(m)?)
    }

    /// `1/m` times the area, dinv and bounce of the stretched m-Dyck path.
    pub fn normalized_m_stats(&self, m: u32) -> Result<NormalizedStats> {
        let p = self.to_m_dyck(m)?;
        let m_int = BigInt::from(m);
        let norm = |v: u64| BigRational::new(BigInt::from(v), m_int.clone());
        Ok(NormalizedStats {
            area: norm(p.area()),
            dinv: norm(p.dinv()),
            bounce: norm(p.bounce()),
        })
    }

    pub fn normalized_m_bounce_vector(&self, m: u32) -> Result<Vec<BigRational>> {
        discrete_bounce_times(&self.area, m)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.area
            .iter()
            .map(|a| a.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl fmt::Display for ContinuousPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.area.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl BounceVector {
    pub fn new(b: Vec<BigRational>) -> Result<Self> {
        check_bounce(&b)?;
        Ok(BounceVector { b })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.b
    }

    pub fn sum(&self) -> BigRational {
        area_of(&self.b)
    }

    /// The path with this bounce vector.
    pub fn to_path(&self) -> ContinuousPath {
        ContinuousPath {
            area: area_from_bounce(&self.b),
        }
    }

    /// Locally linear points of the change of coordinates: the coordinates
    /// `b_1..b_{n-1}` are distinct and nonzero and no `b_j = b_i + 1`.
    pub fn check_generic(&self) -> Result<()> {
        let b = &self.b;
        for j in 1..b.len() {
            if b[j].is_zero() {
                return Err(Error::Degenerate(format!("b_{j} = 0")));
            }
            for i in 0..j {
                if i > 0 && b[i] == b[j] {
                    return Err(Error::Degenerate(format!("b_{i} = b_{j}")));
                }
                if b[j] == b[i].clone() + BigRational::one() {
                    return Err(Error::Degenerate(format!("b_{j} = b_{i} + 1")));
                }
            }
        }
        Ok(())
    }

    /// `prod_j #{ i < j : b_j - b_i < 1 }`, the Jacobian magnitude of the
    /// bounce-to-area map at a generic point.
    pub fn jacobian_count(&self) -> Result<u64> {
        self.check_generic()?;
        let one = BigRational::one();
        let mut d = 1u64;
        for j in 1..self.b.len() {
            let close = self.b[..j]
                .iter()
                .filter(|bi| self.b[j].clone() - *bi < one)
                .count() as u64;
            d *= close;
        }
        Ok(d)
    }

    /// Counts orderings of `(b_1, .., b_{n-1})` that, after a leading zero,
    /// lie in `A_n`. Enumerates permutations; refuses more than `max_free`
    /// free coordinates.
    pub fn sort_preimage_count(&self, max_free: usize) -> Result<u64> {
        self.check_generic()?;
        let free = &self.b[1..];
        if free.len() > max_free {
            return Err(Error::BudgetExceeded {
                predicted: (1..=free.len() as u64).product::<u64>().into(),
                cap: (1..=max_free as u64).product(),
            });
        }
        let mut used = vec![false; free.len()];
        let mut count = 0;
        count_orderings(free, &mut used, &BigRational::zero(), 0, &mut count);
        Ok(count)
    }
}

fn count_orderings(
    free: &[BigRational],
    used: &mut [bool],
    last: &BigRational,
    placed: usize,
    count: &mut u64,
) {
    if placed == free.len() {
        *count += 1;
        return;
    }
    let ceiling = last.clone() + BigRational::one();
    for k in 0..free.len() {
        if used[k] || free[k] > ceiling || free[k].is_negative() {
            continue;
        }
        used[k] = true;
        count_orderings(free, used, &free[k], placed + 1, count);
        used[k] = false;
    }
}

impl fmt::Display for BounceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn qs(s: &str) -> Vec<BigRational> {
        parse_rational_list(s).unwrap()
    }

    fn fig4() -> ContinuousPath {
        ContinuousPath::parse("0,0.6,1.2,0.5").unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(q("0.6"), BigRational::new(3.into(), 5.into()));
        assert_eq!(q("-1.25"), BigRational::new((-5).into(), 4.into()));
        assert_eq!(q("7/14"), BigRational::new(1.into(), 2.into()));
        assert_eq!(q(".5"), BigRational::new(1.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn sc_values() {
        assert_eq!(sc(&q("0.6")), q("0.4"));
        assert_eq!(sc(&q("0")), q("1"));
        assert_eq!(sc(&q("-1.2")), q("0"));
        assert_eq!(sc(&-0.3f64), 0.7);
    }

    #[test]
    fn worked_continuous_path() {
        let p = fig4();
        assert_eq!(p.area(), q("2.3"));
        assert_eq!(p.dinv(), q("2.5"));
        assert_eq!(
            p.bounce_vector().unwrap().values(),
            qs("0,0.4,0.6,1.25").as_slice()
        );
        assert_eq!(p.bounce().unwrap(), q("2.25"));
        assert_eq!(p.north_x(), qs("0,0.4,0.8,2.5"));
    }

    #[test]
    fn example_three_path() {
        let p = ContinuousPath::parse("0,1,1").unwrap();
        assert_eq!(p.area(), q("2"));
        assert_eq!(p.dinv(), q("1"));
        assert_eq!(p.bounce().unwrap(), q("1/2"));
    }

    #[test]
    fn trivial_paths() {
        assert_eq!(ContinuousPath::zero(4).area(), q("0"));
        assert_eq!(ContinuousPath::zero(1).dinv(), q("0"));
        let s = ContinuousPath::staircase(5);
        assert_eq!(
            s.bounce_vector().unwrap().values(),
            vec![q("0"); 5].as_slice()
        );
        assert_eq!(s.bounce().unwrap(), q("0"));
    }

    #[test]
    fn tie_resolves_to_boundary_of_bounce_polytope() {
        let b = ContinuousPath::zero(2).bounce_vector().unwrap();
        assert_eq!(b.values(), qs("0,1").as_slice());
        let b = ContinuousPath::zero(4).bounce_vector().unwrap();
        assert_eq!(b.values(), qs("0,1,2,3").as_slice());
    }

    #[test]
    fn area_from_bounce_examples() {
        let b = BounceVector::new(qs("0,0.4,0.6,1.25")).unwrap();
        assert_eq!(b.to_path(), fig4());
        let b = BounceVector::new(qs("0,0.5,0.6,1.2")).unwrap();
        assert_eq!(b.to_path().area_vector(), qs("0,0.5,1.3,0.7").as_slice());
        let b = BounceVector::new(vec![q("0"); 5]).unwrap();
        assert_eq!(b.to_path(), ContinuousPath::staircase(5));
    }

    #[test]
    fn transform_examples() {
        let t = fig4().transform().unwrap();
        assert_eq!(t.area_vector(), qs("0,0.5,1.3,0.7").as_slice());
        assert_eq!(t.area(), q("2.5"));
        assert_eq!(t.bounce().unwrap(), q("2.3"));
        // Staircase: sorted vector is itself, read as a bounce vector.
        let s = ContinuousPath::staircase(4);
        let expected = BounceVector::new(s.area_vector().to_vec())
            .unwrap()
            .to_path();
        assert_eq!(s.transform().unwrap(), expected);
        assert_eq!(expected.area_vector(), qs("0,0,0,0").as_slice());
        assert_eq!(
            ContinuousPath::zero(4).transform().unwrap(),
            ContinuousPath::staircase(4)
        );
    }

    #[test]
    fn jacobian_examples() {
        let b = BounceVector::new(qs("0,0.3")).unwrap();
        assert_eq!(b.jacobian_count().unwrap(), 1);
        assert_eq!(b.sort_preimage_count(8).unwrap(), 1);
        let b = BounceVector::new(qs("0,0.5,0.6,1.2")).unwrap();
        assert_eq!(b.jacobian_count().unwrap(), 4);
        assert_eq!(b.sort_preimage_count(8).unwrap(), 4);
    }

    #[test]
    fn degenerate_points_rejected() {
        for s in ["0,0,0.5", "0,0.5,0.5", "0,0.5,1", "0,0.3,1.3"] {
            let b = BounceVector::new(qs(s)).unwrap();
            assert!(
                matches!(b.jacobian_count(), Err(Error::Degenerate(_))),
                "{s}"
            );
        }
        let b = BounceVector::new(qs("0,0.1,0.2,0.3")).unwrap();
        assert!(matches!(
            b.sort_preimage_count(2),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn invalid_inputs_name_the_inequality() {
        let err = ContinuousPath::parse("0,2,0").unwrap_err();
        assert!(err.to_string().contains("a_1 <= a_0 + 1"), "{err}");
        let err = ContinuousPath::parse("0.5,0").unwrap_err();
        assert!(err.to_string().contains("a_0"), "{err}");
        assert!(ContinuousPath::parse("0,-0.1").is_err());
        assert!(BounceVector::new(qs("0,0.5,0.2")).is_err());
        assert!(BounceVector::new(qs("0,1.5")).is_err());
    }

    #[test]
    fn scaling_from_m_dyck() {
        let p = MDyckPath::new(2, vec![0, 1, 0, 2, 3]).unwrap();
        let c = ContinuousPath::from_m_dyck(&p);
        assert_eq!(c.area_vector(), qs("0,1/2,0,1,3/2").as_slice());
        assert_eq!(c.to_m_dyck(2).unwrap(), p);
        assert!(c.is_integral(4));
        assert!(!c.is_integral(3));
        assert!(matches!(
            c.to_m_dyck(3),
            Err(Error::NotIntegral { m: 3, index: 1, .. })
        ));
    }

    #[test]
    fn normalized_statistics_of_zero_one_one() {
        let p = ContinuousPath::parse("0,1,1").unwrap();
        for m in 1..=12u32 {
            let s = p.normalized_m_stats(m).unwrap();
            assert_eq!(s.area, q("2"));
            // sc_m(-m) = 0, so dinv_m(0,m,m) = sc_m(0) = m.
            assert_eq!(s.dinv, q("1"), "m = {m}");
            let bounce = if m % 2 == 0 {
                q("1/2")
            } else {
                BigRational::new((m + 1).into(), (2 * m).into())
            };
            assert_eq!(s.bounce, bounce, "m = {m}");
            let bv = p.normalized_m_bounce_vector(m).unwrap();
            assert_eq!(area_of(&bv), bounce);
        }
    }

    #[test]
    fn normalized_bounce_of_staircase() {
        let bv = ContinuousPath::staircase(4)
            .normalized_m_bounce_vector(3)
            .unwrap();
        assert_eq!(bv, vec![q("0"); 4]);
    }

    #[test]
    fn float_kernel_matches_exact() {
        let a = [0.0, 0.6, 1.2, 0.5];
        let b = bounce_from_area(&a).unwrap();
        let expected = [0.0, 0.4, 0.6, 1.25];
        for (x, y) in b.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((dinv_of(&a) - 2.5).abs() < 1e-12);
        let t = transform_area(&a).unwrap();
        for (x, y) in t.iter().zip([0.0, 0.5, 1.3, 0.7]) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

//! m-Dyck paths and their integer statistics.
//!
//! A path of height `n` runs from `(0,0)` to `(mn,n)` with unit north and east
//! steps and never goes strictly below the line `y = x/m`. It is stored by its
//! area vector: `a_i` is the number of complete boxes in row `i` between the
//! path and the line. The north step of row `i` sits at `x_i = m*i - a_i`,
//! which is what the bounce simulation and the step-word conversions use.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Unit step of a lattice path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    North,
    East,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MDyckPath {
    m: u32,
    area: Vec<u32>,
}

/// Vertical runs `v_i` and horizontal runs `h_i` of a bounce path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BouncePath {
    pub v: Vec<u32>,
    pub h: Vec<u32>,
}

/// Checks `a_0 = 0` and `0 <= a_{i+1} <= a_i + m`.
pub fn check_area_vector(area: &[u32], m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::invariant("m-Dyck path", "m must be positive"));
    }
    match area.first() {
        None => return Err(Error::invariant("m-Dyck path", "height must be positive")),
        Some(&a0) if a0 != 0 => {
            return Err(Error::invariant(
                "m-Dyck path",
                format!("a_0 = {a0}, expected 0"),
            ))
        }
        _ => {}
    }
    for (i, w) in area.windows(2).enumerate() {
        if u64::from(w[1]) > u64::from(w[0]) + u64::from(m) {
            return Err(Error::invariant(
                "m-Dyck path",
                format!(
                    "a_{} <= a_{} + {m} violated ({} > {} + {m})",
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

impl MDyckPath {
    pub fn new(m: u32, area: Vec<u32>) -> Result<Self> {
        check_area_vector(&area, m)?;
        Ok(MDyckPath { m, area })
    }

    /// The path hugging the line, area vector all zeros.
    pub fn zero(n: usize, m: u32) -> Self {
        MDyckPath {
            m,
            area: vec![0; n],
        }
    }

    /// The maximal path `(0, m, 2m, ..., (n-1)m)`: all north steps first.
    pub fn staircase(n: usize, m: u32) -> Self {
        MDyckPath {
            m,
            area: (0..n as u32).map(|i| i * m).collect(),
        }
    }

    /// Reads a step word; the word must contain `n` north and `mn` east steps.
    pub fn from_steps(m: u32, steps: &[Step]) -> Result<Self> {
        let n = steps.iter().filter(|s| **s == Step::North).count();
        let east = steps.len() - n;
        if m == 0 || n == 0 || east as u64 != u64::from(m) * n as u64 {
            return Err(Error::invariant(
                "m-Dyck path",
                format!("step word has {n} north and {east} east steps (m = {m})"),
            ));
        }
        let mut x = 0u64;
        let mut area = Vec::with_capacity(n);
        for s in steps {
            match s {
                Step::East => x += 1,
                Step::North => {
                    let row = area.len() as u64;
                    let a = (row * u64::from(m)).checked_sub(x).ok_or_else(|| {
                        Error::invariant(
                            "m-Dyck path",
                            format!("north step {row} at x = {x} lies below the line"),
                        )
                    })?;
                    area.push(a as u32);
                }
            }
        }
        Self::new(m, area)
    }

    pub fn n(&self) -> usize {
        self.area.len()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn area_vector(&self) -> &[u32] {
        &self.area
    }

    pub fn into_area_vector(self) -> Vec<u32> {
        self.area
    }

    /// x-coordinates of the north steps.
    pub fn north_x(&self) -> Vec<u64> {
        north_x(&self.area, self.m)
    }

    pub fn steps(&self) -> Vec<Step> {
        let xs = self.north_x();
        let mut out = Vec::with_capacity(self.n() * (self.m as usize + 1));
        let mut x = 0u64;
        for xi in xs {
            while x < xi {
                out.push(Step::East);
                x += 1;
            }
            out.push(Step::North);
        }
        while x < u64::from(self.m) * self.n() as u64 {
            out.push(Step::East);
            x += 1;
        }
        out
    }

    pub fn area(&self) -> u64 {
        area_of(&self.area)
    }

    pub fn dinv(&self) -> u64 {
        dinv_of(&self.area, self.m)
    }

    pub fn bounce_path(&self) -> BouncePath {
        bounce_path_of(&self.area, self.m)
    }

    pub fn bounce(&self) -> u64 {
        bounce_of(&self.area, self.m)
    }

    /// Loehr's bijection. The image is rebuilt from its step word and
    /// re-validated, so a construction bug surfaces as an error.
    pub fn phi(&self) -> Result<MDyckPath> {
        let m = i64::from(self.m);
        let top = self.area.iter().copied().max().unwrap_or(0) as i64 + m;
        let mut steps = Vec::with_capacity(self.n() * (self.m as usize + 1));
        for level in 0..=top {
            for &a in &self.area {
                let a = i64::from(a);
                if a == level {
                    steps.push(Step::North);
                } else if a < level && a >= level - m {
                    steps.push(Step::East);
                }
            }
        }
        MDyckPath::from_steps(self.m, &steps)
    }
}

impl fmt::Display for MDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.area.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ") [m={}]", self.m)
    }
}

pub fn north_x(area: &[u32], m: u32) -> Vec<u64> {
    area.iter()
        .enumerate()
        .map(|(i, &a)| i as u64 * u64::from(m) - u64::from(a))
        .collect()
}

/// Scoring kernel of the m-dinv statistic.
pub fn sc_m(p: i64, m: u32) -> u64 {
    let m = i64::from(m);
    if (1..=m).contains(&p) {
        (m + 1 - p) as u64
    } else if (-m..=0).contains(&p) {
        (m + p) as u64
    } else {
        0
    }
}

pub fn area_of(area: &[u32]) -> u64 {
    area.iter().map(|&a| u64::from(a)).sum()
}

pub fn dinv_of(area: &[u32], m: u32) -> u64 {
    dinv_with(area, m, sc_m)
}

/// dinv with a caller-supplied scoring kernel.
pub fn dinv_with(area: &[u32], m: u32, score: impl Fn(i64, u32) -> u64) -> u64 {
    let mut total = 0;
    for (i, &ai) in area.iter().enumerate() {
        for &aj in &area[i + 1..] {
            total += score(i64::from(ai) - i64::from(aj), m);
        }
    }
    total
}

pub fn bounce_path_of(area: &[u32], m: u32) -> BouncePath {
    let n = area.len();
    let xs = north_x(area, m);
    let width = u64::from(m) * n as u64;
    let window = m as usize;
    let (mut x, mut y) = (0u64, 0usize);
    let mut v: Vec<u32> = Vec::new();
    let mut h: Vec<u32> = Vec::new();
    // Each round either climbs or is one of at most m-1 idle rounds after a climb.
    let max_rounds = (n + 1) * (window + 1);
    for _ in 0..max_rounds {
        let mut run = 0u32;
        // Keep climbing while the north step of row y is at or left of x;
        // reaching the top edge also ends the run.
        while y < n && xs[y] <= x {
            y += 1;
            run += 1;
        }
        v.push(run);
        let lo = v.len().saturating_sub(window);
        let step: u32 = v[lo..].iter().sum();
        h.push(step);
        x += u64::from(step);
        if y == n && x == width {
            return BouncePath { v, h };
        }
    }
    panic!("bounce path did not terminate for valid m-Dyck path {area:?} (m = {m})");
}

pub fn bounce_of(area: &[u32], m: u32) -> u64 {
    bounce_path_of(area, m)
        .v
        .iter()
        .enumerate()
        .map(|(i, &v)| i as u64 * u64::from(v))
        .sum()
}

/// Number of m-Dyck paths of height `n`: `binom((m+1)n, n) / (mn+1)`.
pub fn catalan_number_m(n: u32, m: u32) -> BigUint {
    let n_big = BigUint::from(n);
    let top = BigUint::from(m + 1) * &n_big;
    let binom = num_integer::binomial(top, n_big);
    let denom = BigUint::from(m) * BigUint::from(n) + 1u32;
    let (q, r) = binom.div_rem(&denom);
    assert!(
        r == BigUint::from(0u32),
        "inexact division in catalan_number_m"
    );
    q
}

/// Depth-first generator of area vectors in lexicographic order.
///
/// Coordinates before `frozen` are never changed, which lets callers split the
/// enumeration into disjoint blocks by fixing a prefix.
#[derive(Debug, Clone)]
pub struct MDyckPaths {
    m: u32,
    current: Vec<u32>,
    frozen: usize,
    done: bool,
}

impl MDyckPaths {
    /// All paths, without a budget check.
    pub fn new(n: usize, m: u32) -> Self {
        assert!(n >= 1 && m >= 1, "n and m must be positive");
        MDyckPaths {
            m,
            current: vec![0; n],
            frozen: 1,
            done: false,
        }
    }

    /// All paths whose area vector starts with `prefix`.
    pub fn with_prefix(n: usize, m: u32, prefix: &[u32]) -> Result<Self> {
        if prefix.len() > n {
            return Err(Error::Argument(format!("prefix longer than height {n}")));
        }
        let mut current = prefix.to_vec();
        if current.is_empty() {
            current.push(0);
        }
        check_area_vector(&current, m)?;
        let frozen = current.len();
        current.resize(n, 0);
        Ok(MDyckPaths {
            m,
            current,
            frozen,
            done: false,
        })
    }

    /// Advances `current` in place; returns false when exhausted.
    fn advance(&mut self) -> bool {
        let m = self.m;
        let cur = &mut self.current;
        let mut i = cur.len();
        while i > self.frozen {
            i -= 1;
            if cur[i] < cur[i - 1] + m {
                cur[i] += 1;
                for c in &mut cur[i + 1..] {
                    *c = 0;
                }
                return true;
            }
        }
        false
    }

    /// Visits every remaining area vector without allocating per path.
    pub fn for_each_vector(mut self, mut visit: impl FnMut(&[u32])) {
        if self.done {
            return;
        }
        loop {
            visit(&self.current);
            if !self.advance() {
                self.done = true;
                return;
            }
        }
    }
}

impl Iterator for MDyckPaths {
    type Item = MDyckPath;

    fn next(&mut self) -> Option<MDyckPath> {
        if self.done {
            return None;
        }
        let out = MDyckPath {
            m: self.m,
            area: self.current.clone(),
        };
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

/// Fails with [`Error::BudgetExceeded`] when `C_n^(m)` exceeds `cap`.
pub fn check_budget(n: usize, m: u32, cap: u64) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::Argument("n and m must be positive".into()));
    }
    let predicted = catalan_number_m(n as u32, m);
    match predicted.to_u64() {
        Some(c) if c <= cap => Ok(()),
        _ => Err(Error::BudgetExceeded { predicted, cap }),
    }
}

pub fn enumerate_m_dyck(n: usize, m: u32, cap: u64) -> Result<MDyckPaths> {
    check_budget(n, m, cap)?;
    Ok(MDyckPaths::new(n, m))
}

/// Disjoint prefix blocks covering all paths: one block per value of `a_1`.
pub fn partition_prefixes(n: usize, m: u32) -> Vec<Vec<u32>> {
    if n < 2 {
        vec![vec![0]]
    } else {
        (0..=m).map(|a1| vec![0, a1]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> MDyckPath {
        MDyckPath::new(2, vec![0, 1, 0, 2, 3]).unwrap()
    }

    #[test]
    fn worked_m_dyck_path() {
        let p = fig1();
        assert_eq!(p.area(), 6);
        assert_eq!(p.dinv(), 7);
        let bp = p.bounce_path();
        assert_eq!(bp.v, vec![1, 1, 0, 2, 1, 0]);
        assert_eq!(bp.h, vec![1, 2, 1, 2, 3, 1]);
        assert_eq!(p.bounce(), 11);
        assert_eq!(p.north_x(), vec![0, 1, 4, 4, 5]);
    }

    #[test]
    fn sc_m_branches() {
        assert_eq!(sc_m(-1, 2), 1);
        assert_eq!(sc_m(0, 7), 7);
        assert_eq!(sc_m(5, 3), 0);
        assert_eq!(sc_m(-2, 2), 0);
        assert_eq!(sc_m(1, 2), 2);
        assert_eq!(sc_m(3, 2), 0);
    }

    #[test]
    fn trivial_statistics() {
        let z = MDyckPath::zero(4, 3);
        assert_eq!(z.area(), 0);
        let s = MDyckPath::staircase(5, 3);
        assert_eq!(s.area(), 3 * 5 * 4 / 2);
        assert_eq!(s.bounce(), 0);
        assert_eq!(MDyckPath::new(1, vec![0]).unwrap().dinv(), 0);
    }

    #[test]
    fn staircase_bounces_once() {
        let bp = MDyckPath::staircase(4, 1).bounce_path();
        assert_eq!(bp.v, vec![4]);
        assert_eq!(bp.h, vec![4]);
        let bp = MDyckPath::staircase(4, 3).bounce_path();
        assert_eq!(bp.v, vec![4, 0, 0]);
        assert_eq!(bp.h, vec![4, 4, 4]);
    }

    #[test]
    fn zero_path_bounce() {
        let p = MDyckPath::zero(3, 1);
        let bp = p.bounce_path();
        assert_eq!(bp.v, vec![1, 1, 1]);
        assert_eq!(bp.h, vec![1, 1, 1]);
        assert_eq!(p.bounce(), 3);
    }

    #[test]
    fn phi_small_staircase() {
        // (0,1): symbols 0 and 1 once each, so the image has bounce runs v = (1,1).
        let p = MDyckPath::new(1, vec![0, 1]).unwrap();
        let img = p.phi().unwrap();
        assert_eq!(img.area_vector(), &[0, 0]);
        assert_eq!(img.bounce_path().v, vec![1, 1]);
        assert_eq!(img.area(), p.dinv());
        assert_eq!(img.bounce(), p.area());
    }

    #[test]
    fn invalid_vectors_rejected() {
        assert!(MDyckPath::new(1, vec![1]).is_err());
        assert!(MDyckPath::new(2, vec![0, 3]).is_err());
        assert!(MDyckPath::new(0, vec![0]).is_err());
        assert!(MDyckPath::new(1, vec![]).is_err());
        assert!(MDyckPath::from_steps(1, &[Step::East, Step::North]).is_err());
    }

    #[test]
    fn step_word_round_trip() {
        let p = fig1();
        let steps = p.steps();
        assert_eq!(steps.len(), 15);
        assert_eq!(MDyckPath::from_steps(2, &steps).unwrap(), p);
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan_number_m(4, 1), BigUint::from(14u32));
        assert_eq!(catalan_number_m(1, 7), BigUint::from(1u32));
        assert_eq!(catalan_number_m(3, 1), BigUint::from(5u32));
        assert_eq!(catalan_number_m(4, 2), BigUint::from(55u32));
        let expected = num_integer::binomial(BigUint::from(204u32), BigUint::from(4u32))
            / BigUint::from(201u32);
        assert_eq!(catalan_number_m(4, 50), expected);
        assert_eq!(catalan_number_m(4, 50), BigUint::from(348_551u32));
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let paths: Vec<_> = enumerate_m_dyck(3, 1, 100).unwrap().collect();
        assert_eq!(paths.len(), 5);
        let mut sorted = paths.clone();
        sorted.sort();
        assert_eq!(paths, sorted);
        assert_eq!(enumerate_m_dyck(1, 1, 10).unwrap().count(), 1);
        assert_eq!(enumerate_m_dyck(4, 2, 100).unwrap().count(), 55);
    }

    #[test]
    fn prefix_blocks_partition_the_set() {
        let total: usize = partition_prefixes(5, 2)
            .iter()
            .map(|p| MDyckPaths::with_prefix(5, 2, p).unwrap().count())
            .sum();
        assert_eq!(total, 273);
        assert_eq!(BigUint::from(total), catalan_number_m(5, 2));
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_m_dyck(6, 3, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 100, .. }));
    }
}

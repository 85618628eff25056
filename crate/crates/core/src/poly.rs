//! Sparse q,t-polynomials with big-integer coefficients and the two
//! combinatorial definitions of the higher q,t-Catalan numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discrete::{area_of, bounce_of, check_budget, dinv_of, partition_prefixes, MDyckPaths};
use crate::error::{Error, Result};

/// Exponent pair. Field order makes the derived ordering t-major, then q,
/// which is the canonical term order for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents {
    pub t: u32,
    pub q: u32,
}

impl Exponents {
    pub fn new(q: u32, t: u32) -> Self {
        Exponents { t, q }
    }
}

/// Polynomial in q and t with positive integer coefficients; zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QtPolynomial {
    terms: BTreeMap<Exponents, BigUint>,
}

impl QtPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigUint::one())
    }

    pub fn monomial(q: u32, t: u32, c: BigUint) -> Self {
        let mut p = Self::new();
        p.add_term(q, t, c);
        p
    }

    pub fn add_term(&mut self, q: u32, t: u32, c: BigUint) {
        if c.is_zero() {
            return;
        }
        *self.terms.entry(Exponents::new(q, t)).or_default() += c;
    }

    pub fn coeff(&self, q: u32, t: u32) -> BigUint {
        self.terms
            .get(&Exponents::new(q, t))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms as `(q, t, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigUint)> {
        self.terms.iter().map(|(e, c)| (e.q, e.t, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// Swaps the roles of q and t.
    pub fn transpose(&self) -> Self {
        QtPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponents::new(e.t, e.q), c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Value at q = t = 1.
    pub fn eval_one(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Sets q = 1; entry `j` is the coefficient of `t^j`.
    pub fn specialize_q1(&self) -> Vec<BigUint> {
        let len = self.max_t_degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![BigUint::zero(); len];
        for (e, c) in &self.terms {
            out[e.t as usize] += c;
        }
        out
    }

    /// Sets t = 1; entry `i` is the coefficient of `q^i`.
    pub fn specialize_t1(&self) -> Vec<BigUint> {
        self.transpose().specialize_q1()
    }

    pub fn max_q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.q).max()
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.t).max()
    }

    /// Point masses `coeff(i,j) / m^(n-1)` at `(i/m, j/m)`.
    pub fn to_normalized_measure(&self, n: u32, m: u32) -> DiscreteMeasure {
        let scale = BigInt::from(m);
        let norm = BigRational::from_integer(Pow::pow(BigInt::from(m), n.saturating_sub(1)));
        let atoms = self
            .terms
            .iter()
            .map(|(e, c)| Atom {
                x: BigRational::new(BigInt::from(e.q), scale.clone()),
                y: BigRational::new(BigInt::from(e.t), scale.clone()),
                weight: BigRational::from_integer(BigInt::from(c.clone())) / &norm,
            })
            .collect();
        DiscreteMeasure { atoms }
    }

    pub fn to_json(&self, n: u32, m: u32) -> String {
        serde_json::to_string(&self.document(n, m)).expect("polynomial document serializes")
    }

    pub fn document(&self, n: u32, m: u32) -> PolynomialDocument {
        PolynomialDocument {
            n,
            m,
            terms: self
                .terms()
                .map(|(q, t, c)| TermRecord {
                    q,
                    t,
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    /// Parses the JSON document; returns `(n, m, polynomial)`.
    pub fn from_json(text: &str) -> Result<(u32, u32, Self)> {
        let doc: PolynomialDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let poly = Self::from_document(&doc)?;
        Ok((doc.n, doc.m, poly))
    }

    pub fn from_document(doc: &PolynomialDocument) -> Result<Self> {
        let mut p = Self::new();
        for term in &doc.terms {
            let c: BigUint = term
                .c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", term.c)))?;
            p.add_term(term.q, term.t, c);
        }
        Ok(p)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,t,coeff\n");
        for (q, t, c) in self.terms() {
            out.push_str(&format!("{q},{t},{c}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some("q,t,coeff") => {}
            other => return Err(Error::Parse(format!("unexpected CSV header {other:?}"))),
        }
        let mut p = Self::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let fields: Vec<&str> = line.split(',').collect();
            let bad = || Error::Parse(format!("bad CSV row {line:?}"));
            if fields.len() != 3 {
                return Err(bad());
            }
            let q = fields[0].parse().map_err(|_| bad())?;
            let t = fields[1].parse().map_err(|_| bad())?;
            let c = fields[2].parse().map_err(|_| bad())?;
            p.add_term(q, t, c);
        }
        Ok(p)
    }

    fn from_counts(counts: HashMap<(u32, u32), u64>) -> Self {
        let mut p = Self::new();
        for ((q, t), c) in counts {
            p.add_term(q, t, BigUint::from(c));
        }
        p
    }
}

impl Add for QtPolynomial {
    type Output = QtPolynomial;

    fn add(mut self, rhs: QtPolynomial) -> QtPolynomial {
        for (e, c) in rhs.terms {
            self.add_term(e.q, e.t, c);
        }
        self
    }
}

impl fmt::Display for QtPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, t, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !c.is_one() || (q == 0 && t == 0) {
                factors.push(c.to_string());
            }
            match q {
                0 => {}
                1 => factors.push("q".into()),
                _ => factors.push(format!("q^{q}")),
            }
            match t {
                0 => {}
                1 => factors.push("t".into()),
                _ => factors.push(format!("t^{t}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub q: u32,
    pub t: u32,
    pub c: String,
}

/// Wire form: `{"n":..,"m":..,"terms":[{"q":i,"t":j,"c":"<decimal>"}..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDocument {
    pub n: u32,
    pub m: u32,
    pub terms: Vec<TermRecord>,
}

/// Sums `q^first * t^second` of `stat(area_vector)` over all m-Dyck paths.
/// Blocks with a fixed `a_1` are counted in parallel and merged.
fn accumulate(
    n: usize,
    m: u32,
    cap: u64,
    stat: impl Fn(&[u32], u32) -> (u64, u64) + Sync,
) -> Result<QtPolynomial> {
    check_budget(n, m, cap)?;
    let blocks = partition_prefixes(n, m);
    let partial: Vec<HashMap<(u32, u32), u64>> = blocks
        .par_iter()
        .map(|prefix| {
            let mut counts = HashMap::new();
            MDyckPaths::with_prefix(n, m, prefix)
                .expect("partition prefixes are valid")
                .for_each_vector(|a| {
                    let (x, y) = stat(a, m);
                    *counts.entry((x as u32, y as u32)).or_insert(0) += 1;
                });
            counts
        })
        .collect();
    let mut merged = HashMap::new();
    for block in partial {
        for (k, c) in block {
            *merged.entry(k).or_insert(0) += c;
        }
    }
    Ok(QtPolynomial::from_counts(merged))
}

/// `sum_D q^dinv_m(D) t^area_m(D)`.
pub fn qt_catalan_dinv_area(n: usize, m: u32, cap: u64) -> Result<QtPolynomial> {
    accumulate(n, m, cap, |a, m| (dinv_of(a, m), area_of(a)))
}

/// `sum_D q^area_m(D) t^bounce_m(D)`.
pub fn qt_catalan_area_bounce(n: usize, m: u32, cap: u64) -> Result<QtPolynomial> {
    accumulate(n, m, cap, |a, m| (area_of(a), bounce_of(a, m)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub x: BigRational,
    pub y: BigRational,
    pub weight: BigRational,
}

/// Finite weighted sum of point masses in the plane.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Adds an atom; non-positive weights are rejected.
    pub fn push(&mut self, x: BigRational, y: BigRational, weight: BigRational) -> Result<()> {
        if weight <= BigRational::zero() {
            return Err(Error::invariant(
                "measure atom",
                format!("weight {weight} is not positive"),
            ));
        }
        self.atoms.push(Atom { x, y, weight });
        Ok(())
    }

    pub fn total_weight(&self) -> BigRational {
        self.atoms
            .iter()
            .fold(BigRational::zero(), |acc, a| acc + &a.weight)
    }

    /// Merges atoms at equal locations; output sorted by location.
    pub fn consolidate(&self) -> DiscreteMeasure {
        let mut merged: BTreeMap<(BigRational, BigRational), BigRational> = BTreeMap::new();
        for a in &self.atoms {
            *merged
                .entry((a.x.clone(), a.y.clone()))
                .or_insert_with(BigRational::zero) += &a.weight;
        }
        DiscreteMeasure {
            atoms: merged
                .into_iter()
                .map(|((x, y), weight)| Atom { x, y, weight })
                .collect(),
        }
    }

    /// Integral of `f` against the measure, in floating point.
    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        use num_traits::ToPrimitive;
        self.atoms
            .iter()
            .map(|a| {
                let x = a.x.to_f64().unwrap_or(f64::NAN);
                let y = a.y.to_f64().unwrap_or(f64::NAN);
                a.weight.to_f64().unwrap_or(f64::NAN) * f(x, y)
            })
            .sum()
    }
}

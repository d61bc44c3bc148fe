//! Exact integer/rational helpers and finite-difference polynomial fitting.
//!
//! Everything here is arbitrary precision. Dimensions of Weyl modules leave
//! the 64-bit range for quite small parameters, so nothing downstream ever
//! touches a machine float.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(ExactInt::one(), |acc, i| acc * i)
}

/// C(n, k) with the conventions used throughout: zero for `k < 0`, for
/// `k > n >= 0`, and for every negative `n`.
pub fn binomial(n: i64, k: i64) -> ExactInt {
    if n < 0 || k < 0 || k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = ExactInt::one();
    for i in 0..k {
        // acc = C(n, i) here, and C(n, i) * (n - i) is divisible by i + 1.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// n! / (k_1! ... k_r!); zero if any part is negative.
pub fn multinomial(parts: &[i64]) -> ExactInt {
    if parts.iter().any(|&p| p < 0) {
        return ExactInt::zero();
    }
    let mut total = 0i64;
    let mut acc = ExactInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

pub fn catalan(n: i64) -> Result<ExactInt> {
    if n < 0 {
        return Err(Error::domain(format!("catalan({n}): n must be nonnegative")));
    }
    exact_div(&binomial(2 * n, n), &ExactInt::from(n + 1))
}

/// `a / b`, failing loudly when the division is not exact.
pub fn exact_div(a: &ExactInt, b: &ExactInt) -> Result<ExactInt> {
    if b.is_zero() {
        return Err(Error::inconsistent(format!("division of {a} by zero")));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::inconsistent(format!("{a} is not divisible by {b}")));
    }
    Ok(q)
}

/// Converts an exact rational to an integer, failing if it has a denominator.
pub fn rat_to_int(q: &ExactRat) -> Result<ExactInt> {
    if !q.is_integer() {
        return Err(Error::inconsistent(format!("{q} is not an integer")));
    }
    Ok(q.to_integer())
}

pub fn pow_int(base: i64, exp: u32) -> ExactInt {
    num_traits::pow(ExactInt::from(base), exp as usize)
}

/// A polynomial with rational coefficients recovered from samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittedPoly {
    pub variables: Vec<String>,
    /// Exponent vector -> coefficient. Zero coefficients are never stored.
    pub coefficients: BTreeMap<Vec<u32>, ExactRat>,
    pub degrees: Vec<u32>,
}

impl FittedPoly {
    pub fn constant(variables: Vec<String>, value: ExactRat) -> Self {
        let mut coefficients = BTreeMap::new();
        if !value.is_zero() {
            coefficients.insert(vec![0; variables.len()], value);
        }
        let degrees = vec![0; variables.len()];
        FittedPoly {
            variables,
            coefficients,
            degrees,
        }
    }

    pub fn evaluate(&self, point: &[i64]) -> ExactRat {
        self.coefficients
            .iter()
            .map(|(exps, c)| {
                let mut term = c.clone();
                for (&x, &e) in point.iter().zip(exps) {
                    term *= ExactRat::from_integer(pow_int(x, e));
                }
                term
            })
            .fold(ExactRat::zero(), |a, b| a + b)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.coefficients
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for FittedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.coefficients.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (exps, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let monomial: Vec<String> = exps
                .iter()
                .zip(&self.variables)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if monomial.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{abs}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Number of vanishing difference layers required above the detected degree.
pub const CONFIRMING_LAYERS: usize = 2;

/// Recovers the interpolating polynomial of samples on a full rectangular
/// grid of consecutive integers, using Newton forward differences along each
/// axis. The detected degree in a variable is the highest difference order
/// that is not identically zero; at least [`CONFIRMING_LAYERS`] vanishing
/// layers above it must fit in the grid.
pub fn finite_difference_fit(
    variables: &[&str],
    samples: &[(Vec<i64>, ExactRat)],
) -> Result<FittedPoly> {
    let v = variables.len();
    let names: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
    if samples.is_empty() {
        return Err(Error::domain("no samples"));
    }
    if let Some((p, _)) = samples.iter().find(|(p, _)| p.len() != v) {
        return Err(Error::LengthMismatch {
            expected: v,
            actual: p.len(),
        });
    }
    if samples.len() == 1 {
        return Ok(FittedPoly::constant(names, samples[0].1.clone()));
    }

    // Axis extents.
    let mut lo = vec![i64::MAX; v];
    let mut hi = vec![i64::MIN; v];
    for (p, _) in samples {
        for i in 0..v {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let lens: Vec<usize> = (0..v).map(|i| (hi[i] - lo[i] + 1) as usize).collect();
    let size: usize = lens.iter().product();
    if size != samples.len() {
        return Err(Error::domain(format!(
            "samples do not form a full grid of consecutive integers ({} samples, bounding box {size})",
            samples.len()
        )));
    }
    let strides: Vec<usize> = (0..v)
        .map(|i| lens[i + 1..].iter().product::<usize>())
        .collect();
    let mut table: Vec<Option<ExactRat>> = vec![None; size];
    for (p, val) in samples {
        let idx: usize = (0..v).map(|i| (p[i] - lo[i]) as usize * strides[i]).sum();
        if table[idx].replace(val.clone()).is_some() {
            return Err(Error::domain(format!("duplicate sample at {p:?}")));
        }
    }
    let mut table: Vec<ExactRat> = table.into_iter().map(|x| x.unwrap()).collect();

    // Difference table along every axis: entry j becomes Δ^j f(lo).
    for axis in 0..v {
        let len = lens[axis];
        let stride = strides[axis];
        for base in 0..size {
            if (base / stride) % len != 0 {
                continue;
            }
            let mut line: Vec<ExactRat> =
                (0..len).map(|t| table[base + t * stride].clone()).collect();
            for order in 1..len {
                for t in (order..len).rev() {
                    let d = &line[t] - &line[t - 1];
                    line[t] = d;
                }
            }
            for (t, val) in line.into_iter().enumerate() {
                table[base + t * stride] = val;
            }
        }
    }

    let mut degrees = vec![0u32; v];
    for (idx, c) in table.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for i in 0..v {
            let j = (idx / strides[i]) % lens[i];
            degrees[i] = degrees[i].max(j as u32);
        }
    }
    for i in 0..v {
        let deg = degrees[i] as usize;
        if deg + 1 == lens[i] && lens[i] > 1 {
            return Err(Error::NotPolynomial);
        }
    }
    for i in 0..v {
        let deg = degrees[i] as usize;
        if lens[i] < deg + 1 + CONFIRMING_LAYERS {
            return Err(Error::GridTooSmall {
                variable: names[i].clone(),
                points: lens[i],
                needed: deg + 1 + CONFIRMING_LAYERS,
            });
        }
    }

    // Newton basis C(x - lo, j) expanded into monomials, per axis and order.
    let newton: Vec<Vec<Vec<ExactRat>>> = (0..v)
        .map(|i| {
            (0..=degrees[i])
                .map(|j| shifted_binomial_poly(lo[i], j))
                .collect()
        })
        .collect();

    let mut coefficients: BTreeMap<Vec<u32>, ExactRat> = BTreeMap::new();
    for (idx, c) in table.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let orders: Vec<usize> = (0..v).map(|i| (idx / strides[i]) % lens[i]).collect();
        // Tensor product of the per-axis polynomials.
        let mut partial: Vec<(Vec<u32>, ExactRat)> = vec![(Vec::new(), c.clone())];
        for i in 0..v {
            let poly = &newton[i][orders[i]];
            let mut next = Vec::with_capacity(partial.len() * poly.len());
            for (exps, coef) in &partial {
                for (e, pc) in poly.iter().enumerate() {
                    if pc.is_zero() {
                        continue;
                    }
                    let mut ex = exps.clone();
                    ex.push(e as u32);
                    next.push((ex, coef * pc));
                }
            }
            partial = next;
        }
        for (exps, coef) in partial {
            *coefficients.entry(exps).or_insert_with(ExactRat::zero) += coef;
        }
    }
    coefficients.retain(|_, c| !c.is_zero());

    Ok(FittedPoly {
        variables: names,
        coefficients,
        degrees,
    })
}

/// Coefficients (constant term first) of C(x - a, j) as a polynomial in x.
fn shifted_binomial_poly(a: i64, j: u32) -> Vec<ExactRat> {
    let mut poly = vec![ExactRat::one()];
    for t in 0..j as i64 {
        // multiply by (x - a - t)
        let root = ExactRat::from_integer(ExactInt::from(a + t));
        let mut next = vec![ExactRat::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= c * &root;
        }
        poly = next;
    }
    let denom = ExactRat::from_integer(factorial(j as u64));
    poly.into_iter().map(|c| c / &denom).collect()
}

/// Parses a decimal string into an exact integer.
pub fn parse_int(s: &str) -> Result<ExactInt> {
    s.trim()
        .parse::<ExactInt>()
        .map_err(|e| Error::domain(format!("bad integer `{s}`: {e}")))
}

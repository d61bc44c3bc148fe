//! Closed-form dimensions and weight multiplicities of Weyl modules
//! W^d(n ω_1) for gl_r (d = 0..3), their sl_2 specializations, the
//! double-point decomposition, neighborhood Hilbert functions and the
//! truncated Catalan numbers.
//!
//! The d = 3 formulas are conjectural; [`is_conjectural`] lets callers label
//! results accordingly.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, catalan, exact_div, multinomial, pow_int, rat_to_int, ExactInt, ExactRat,
};
use crate::partitions::{compositions, WeightTable};

/// A graded algebra A with augmentation at the origin, presented by a
/// monomial ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraPresentation {
    /// C[x^1, ..., x^d]
    Polynomial(u32),
    /// C[x, y] / (xy)
    DoublePoint,
    /// C[x, y] / (x^l)
    XlLine(u32),
}

impl AlgebraPresentation {
    pub fn validate(self) -> Result<Self> {
        if let AlgebraPresentation::XlLine(0) = self {
            return Err(Error::domain("C[x,y]/x^l needs l >= 1"));
        }
        Ok(self)
    }

    /// Number of generators of the presentation.
    pub fn num_vars(self) -> usize {
        match self {
            AlgebraPresentation::Polynomial(d) => d as usize,
            AlgebraPresentation::DoublePoint | AlgebraPresentation::XlLine(_) => 2,
        }
    }

    /// Whether the monomial with these exponents is nonzero in A.
    pub fn admits(self, exps: &[u32]) -> bool {
        match self {
            AlgebraPresentation::Polynomial(_) => true,
            AlgebraPresentation::DoublePoint => exps[0] == 0 || exps[1] == 0,
            AlgebraPresentation::XlLine(l) => exps[0] < l,
        }
    }

    /// Dimension of the Krull-dimension-d smooth model, for the conjectured
    /// polynomiality degrees.
    pub fn krull_dim(self) -> u32 {
        match self {
            AlgebraPresentation::Polynomial(d) => d,
            AlgebraPresentation::DoublePoint | AlgebraPresentation::XlLine(_) => 1,
        }
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraPresentation::Polynomial(d) => write!(f, "poly:{d}"),
            AlgebraPresentation::DoublePoint => write!(f, "double-point"),
            AlgebraPresentation::XlLine(l) => write!(f, "xline:{l}"),
        }
    }
}

impl FromStr for AlgebraPresentation {
    type Err = Error;

    /// `poly:D`, `double-point`, `xline:L`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("unknown algebra `{s}` (poly:D, double-point, xline:L)"));
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<u32>().map_err(|_| bad())?)),
            None => (s, None),
        };
        match (head, arg) {
            ("poly", Some(d)) => Ok(AlgebraPresentation::Polynomial(d)),
            ("double-point", None) => Ok(AlgebraPresentation::DoublePoint),
            ("xline", Some(l)) => AlgebraPresentation::XlLine(l).validate(),
            _ => Err(bad()),
        }
    }
}

pub fn is_conjectural(d: u32) -> bool {
    d >= 3
}

fn check_d(d: u32) -> Result<()> {
    if d > 3 {
        return Err(Error::Unsupported(format!(
            "no closed formula for d = {d} (only d <= 3 is known)"
        )));
    }
    Ok(())
}

/// dim W^d(n ω_1) for gl_r.
pub fn dim_weyl(d: u32, r: u32, n: u32) -> Result<ExactInt> {
    check_d(d)?;
    if r < 1 {
        return Err(Error::domain("rank r must be at least 1"));
    }
    let (r, n) = (r as i64, n as i64);
    match d {
        // S^n V
        0 => Ok(binomial(n + r - 1, r - 1)),
        1 => Ok(pow_int(r, n as u32)),
        2 => exact_div(&binomial(r * (n + 1), n), &ExactInt::from(n + 1)),
        _ => {
            if n == 0 {
                return Ok(ExactInt::one());
            }
            let num = ExactInt::from(r) * binomial((2 * r - 1) * (n + 1), n - 1);
            exact_div(&num, &binomial(n + 1, 2))
        }
    }
}

/// dim W^d(n ω_1)^{k_1 ε_1 + ... + k_r ε_r}; zero unless Σ k_i = n.
pub fn weight_dim(d: u32, r: u32, n: u32, k: &[i64]) -> Result<ExactInt> {
    check_d(d)?;
    if k.len() != r as usize {
        return Err(Error::LengthMismatch {
            expected: r as usize,
            actual: k.len(),
        });
    }
    if k.iter().any(|&x| x < 0) || k.iter().sum::<i64>() != n as i64 {
        return Ok(ExactInt::zero());
    }
    let n = n as i64;
    match d {
        0 => Ok(ExactInt::one()),
        1 => Ok(multinomial(k)),
        2 => {
            let num: ExactInt = k.iter().map(|&ki| binomial(n + 1, ki)).product();
            exact_div(&num, &ExactInt::from(n + 1))
        }
        _ => {
            // 2^r (n+1)^{r-2} Π C(2(n+1) - k_i, k_i) / (2(n+1) - k_i)
            let two_n2 = 2 * (n + 1);
            let mut acc = ExactRat::from_integer(pow_int(2, r));
            let base = ExactRat::from_integer(ExactInt::from(n + 1));
            let e = r as i32 - 2;
            acc *= num_traits::pow::Pow::pow(&base, e);
            for &ki in k {
                acc *= ExactRat::new(binomial(two_n2 - ki, ki), ExactInt::from(two_n2 - ki));
            }
            rat_to_int(&acc)
        }
    }
}

/// The full weight table of W^d(n ω_1) assembled from [`weight_dim`].
pub fn weyl_weight_table(d: u32, r: u32, n: u32) -> Result<WeightTable> {
    let mut t = WeightTable::zero(r as usize);
    for k in compositions(n as i64, r as usize) {
        let m = weight_dim(d, r, n, &k)?;
        t.add_to(k, m);
    }
    Ok(t)
}

/// The sl_2 weight multiplicity formulas evaluated literally, with the
/// binomial conventions of [`binomial`].
pub fn sl2_binomial_form(d: u32, n: i64, k: i64) -> Result<ExactRat> {
    check_d(d)?;
    let q = |a: ExactInt, b: ExactInt| ExactRat::new(a, b);
    Ok(match d {
        0 => ExactRat::one(),
        1 => ExactRat::from_integer(binomial(n, k)),
        2 => q(
            binomial(n + 1, k) * binomial(n + 1, n - k),
            ExactInt::from(n + 1),
        ),
        _ => q(
            binomial(n + k + 2, 2 * k + 1) * binomial(2 * n - k + 1, k),
            ExactInt::from((k + 1) * (n + k + 2)),
        ),
    })
}

/// dim W_n^{n ω - k α} for sl_2; zero outside 0 <= k <= n.
pub fn sl2_weight_dim(d: u32, n: u32, k: i64) -> Result<ExactInt> {
    check_d(d)?;
    if k < 0 || k > n as i64 {
        return Ok(ExactInt::zero());
    }
    rat_to_int(&sl2_binomial_form(d, n as i64, k)?)
}

/// The product polynomial P (depending on k) whose ratio P(n)/P(k) gives the
/// sl_2 multiplicity.
fn product_poly(d: u32, k: i64, x: i64) -> ExactInt {
    let prod = |range: std::ops::RangeInclusive<i64>, f: &dyn Fn(i64) -> i64| -> ExactInt {
        range.map(|i| ExactInt::from(f(i))).product()
    };
    match d {
        0 => ExactInt::one(),
        1 => prod(0..=k - 1, &|i| x - i),
        2 => prod(-1..=k - 2, &|i| x - i) * prod(0..=k - 1, &|i| x - i),
        _ => prod(2..=2 * k + 1, &|i| x + i - k) * prod(-1..=k - 2, &|i| 2 * x - i - k),
    }
}

/// (P(n), P(k)) for the sl_2 product presentation, checked against the
/// binomial form: fails if the quotient disagrees.
pub fn product_form(d: u32, n: i64, k: i64) -> Result<(ExactInt, ExactInt)> {
    check_d(d)?;
    if k < 0 {
        return Err(Error::domain("k must be nonnegative"));
    }
    let pn = product_poly(d, k, n);
    let pk = product_poly(d, k, k);
    if pk.is_zero() {
        return Err(Error::inconsistent(format!("P(k) vanishes at d={d}, k={k}")));
    }
    let quotient = ExactRat::new(pn.clone(), pk.clone());
    let expected = sl2_binomial_form(d, n, k)?;
    if quotient != expected {
        return Err(Error::inconsistent(format!(
            "P(n)/P(k) = {quotient} but binomial form gives {expected} (d={d}, n={n}, k={k})"
        )));
    }
    Ok((pn, pk))
}

/// dim W^A(n ω_1) for A = C[x,y]/(xy): r^n + (n-1) C(r,2) r^{n-2}.
pub fn double_point_dim(r: u32, n: u32) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::domain("the double-point decomposition needs n > 0"));
    }
    let r = r as i64;
    let mut d = pow_int(r, n);
    if n >= 2 {
        d += ExactInt::from(n - 1) * binomial(r, 2) * pow_int(r, n - 2);
    }
    Ok(d)
}

/// V^{⊗n} ⊕ (n-1) (Λ²V ⊗ V^{⊗(n-2)}) as a weight table.
pub fn double_point_table(r: u32, n: u32) -> Result<WeightTable> {
    if n == 0 {
        return Err(Error::domain("the double-point decomposition needs n > 0"));
    }
    let r = r as usize;
    let v = WeightTable::exterior_power(r, 1);
    let mut t = v.pow(n);
    if n >= 2 {
        let extra = WeightTable::exterior_power(r, 2).convolve(&v.pow(n - 2))?;
        t = t.plus(&extra.scaled(&ExactInt::from(n - 1)))?;
    }
    Ok(t)
}

/// dim A / A_ε^n, counting monomials of degree < n in the presentation.
pub fn hilbert_nbhd(algebra: AlgebraPresentation, n: u32) -> Result<ExactInt> {
    let algebra = algebra.validate()?;
    let vars = algebra.num_vars();
    let mut count = ExactInt::zero();
    for deg in 0..n as i64 {
        for exps in compositions(deg, vars) {
            let exps: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
            if algebra.admits(&exps) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// C_n^{(l)} from the truncated Catalan recurrence
/// C_{n+1}^{(l)} = 2 C_n^{(l)} + Σ_{j=1}^{l-1} C_j C_{n-j}^{(l)},
/// seeded with C_n^{(l)} = C_n for 1 <= n <= l + 1.
pub fn truncated_catalan(l: u32, n: u32) -> Result<ExactInt> {
    if l < 1 || n < 1 {
        return Err(Error::domain("truncated Catalan numbers need l >= 1 and n >= 1"));
    }
    let (l, n) = (l as usize, n as usize);
    // vals[j] = C_j^{(l)}, index 0 unused
    let mut vals: Vec<ExactInt> = vec![ExactInt::zero()];
    for j in 1..=n {
        let v = if j <= l + 1 {
            catalan(j as i64)?
        } else {
            let m = j - 1;
            let mut acc = ExactInt::from(2) * &vals[m];
            for i in 1..l {
                acc += catalan(i as i64)? * &vals[m - i];
            }
            acc
        };
        vals.push(v);
    }
    Ok(vals.swap_remove(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::catalan;

    #[test]
    fn dim_examples() {
        assert_eq!(dim_weyl(1, 3, 2).unwrap(), 9.into());
        assert_eq!(dim_weyl(2, 2, 2).unwrap(), 5.into());
        assert_eq!(dim_weyl(3, 2, 2).unwrap(), 6.into());
        assert_eq!(dim_weyl(0, 2, 5).unwrap(), 6.into());
        assert_eq!(dim_weyl(3, 3, 0).unwrap(), 1.into());
        assert_eq!(dim_weyl(3, 4, 1).unwrap(), 4.into());
        assert!(matches!(dim_weyl(4, 2, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn d3_product_matches_binomial() {
        // r Π_{i=1}^{n-1} (2(n+1)r - n - i)/(n + 2 - i)
        for r in 1..=5i64 {
            for n in 1..=10i64 {
                let mut acc = ExactRat::from_integer(r.into());
                for i in 1..n {
                    acc *= ExactRat::new((2 * (n + 1) * r - n - i).into(), (n + 2 - i).into());
                }
                assert_eq!(
                    ExactRat::from_integer(dim_weyl(3, r as u32, n as u32).unwrap()),
                    acc
                );
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight_dim(1, 2, 3, &[2, 1]).unwrap(), 3.into());
        assert_eq!(weight_dim(2, 2, 4, &[2, 2]).unwrap(), 20.into());
        assert_eq!(weight_dim(3, 2, 2, &[1, 1]).unwrap(), 4.into());
        assert_eq!(weight_dim(2, 2, 4, &[2, 1]).unwrap(), 0.into());
        assert_eq!(weight_dim(3, 1, 5, &[5]).unwrap(), 1.into());
    }

    #[test]
    fn weights_sum_to_dimension() {
        for d in 0..=3 {
            for r in 1..=4 {
                for n in 0..=8 {
                    let t = weyl_weight_table(d, r, n).unwrap();
                    assert_eq!(t.total(), dim_weyl(d, r, n).unwrap(), "d={d} r={r} n={n}");
                    assert!(t.is_symmetric());
                }
            }
        }
    }

    #[test]
    fn gl2_reduces_to_narayana() {
        for n in 0..=10u32 {
            for k in 0..=n as i64 {
                assert_eq!(
                    weight_dim(2, 2, n, &[n as i64 - k, k]).unwrap(),
                    sl2_weight_dim(2, n, k).unwrap()
                );
                assert_eq!(
                    weight_dim(3, 2, n, &[n as i64 - k, k]).unwrap(),
                    sl2_weight_dim(3, n, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn sl2_examples() {
        assert_eq!(sl2_weight_dim(2, 4, 2).unwrap(), 20.into());
        assert_eq!(sl2_weight_dim(3, 2, 1).unwrap(), 4.into());
        assert_eq!(sl2_weight_dim(0, 5, 3).unwrap(), 1.into());
        assert_eq!(sl2_weight_dim(1, 5, 6).unwrap(), 0.into());
    }

    #[test]
    fn product_forms_agree() {
        for d in 0..=3 {
            for n in 0..=12 {
                for k in 0..=5.min(n) {
                    product_form(d, n, k).unwrap();
                }
            }
        }
        assert_eq!(product_form(1, 5, 2).unwrap(), (20.into(), 2.into()));
    }

    #[test]
    fn catalan_identities() {
        for n in 0..=10 {
            assert_eq!(dim_weyl(2, 2, n).unwrap(), catalan(n as i64 + 1).unwrap());
        }
    }

    #[test]
    fn double_point_examples() {
        assert_eq!(double_point_dim(2, 1).unwrap(), 2.into());
        assert_eq!(double_point_dim(2, 3).unwrap(), 12.into());
        let t = double_point_table(2, 2).unwrap();
        assert_eq!(t.get(&[2, 0]), 1.into());
        assert_eq!(t.get(&[1, 1]), 3.into());
        assert_eq!(t.get(&[0, 2]), 1.into());
        for r in 1..=4 {
            for n in 1..=6 {
                let t = double_point_table(r, n).unwrap();
                assert_eq!(t.total(), double_point_dim(r, n).unwrap());
                assert!(t.is_symmetric());
            }
        }
        assert!(double_point_dim(2, 0).is_err());
    }

    #[test]
    fn hilbert_examples() {
        use AlgebraPresentation::*;
        assert_eq!(hilbert_nbhd(Polynomial(2), 3).unwrap(), 6.into());
        assert_eq!(hilbert_nbhd(DoublePoint, 3).unwrap(), 5.into());
        assert_eq!(hilbert_nbhd(XlLine(2), 3).unwrap(), 5.into());
        for d in 0..=4u32 {
            for n in 0..=10u32 {
                let expected = if n == 0 {
                    0.into()
                } else {
                    binomial(n as i64 + d as i64 - 1, d as i64)
                };
                assert_eq!(hilbert_nbhd(Polynomial(d), n).unwrap(), expected);
            }
        }
    }

    #[test]
    fn truncated_catalan_examples() {
        assert_eq!(truncated_catalan(2, 3).unwrap(), 5.into());
        assert_eq!(truncated_catalan(1, 4).unwrap(), 8.into());
        assert_eq!(truncated_catalan(2, 4).unwrap(), 12.into());
        for l in 1..=4 {
            for n in 1..=l + 1 {
                assert_eq!(truncated_catalan(l, n).unwrap(), catalan(n as i64).unwrap());
            }
        }
        assert!(truncated_catalan(0, 3).is_err());
    }

    #[test]
    fn algebra_parsing() {
        use AlgebraPresentation::*;
        assert_eq!("poly:3".parse::<AlgebraPresentation>().unwrap(), Polynomial(3));
        assert_eq!("double-point".parse::<AlgebraPresentation>().unwrap(), DoublePoint);
        assert_eq!("xline:2".parse::<AlgebraPresentation>().unwrap(), XlLine(2));
        assert!("xline:0".parse::<AlgebraPresentation>().is_err());
        assert!("torus".parse::<AlgebraPresentation>().is_err());
        assert_eq!(XlLine(2).to_string(), "xline:2");
    }
}

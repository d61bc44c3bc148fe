//! Polynomiality of weight multiplicities in the highest weight.
//!
//! For a fixed μ = Σ μ^i α_i, the multiplicity of λ − μ in W(λ) is sampled
//! on a grid of dominant λ = Σ λ_i ω_i and interpolated exactly. The
//! detected degree in λ_i is compared with μ^i·d (d generators), or with μ^i
//! for the truncated families once λ_i exceeds l·μ^i + l.

use std::fmt;

use crate::characters::{c1_weight_table, c2_weight_table, cl_weight_table, TableMethod};
use crate::error::{Error, Result};
use crate::exactnum::{finite_difference_fit, ExactInt, ExactRat, FittedPoly};
use crate::formulas::weight_dim;
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitModel {
    /// W^d(λ) for C[x^1..x^d].
    Weyl(u32),
    /// C[x,y]/(x^l), through the truncated subset model.
    Truncated(u32),
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitModel::Weyl(d) => write!(f, "d={d}"),
            FitModel::Truncated(l) => write!(f, "xline:{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Detected degrees equal the expected ones.
    Confirmed,
    DegreeMismatch,
    NotPolynomial,
    GridTooSmall,
    /// The grid starts inside the range where no degree is predicted.
    NoPrediction,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Confirmed => "degree confirmed",
            Verdict::DegreeMismatch => "degree mismatch",
            Verdict::NotPolynomial => "not polynomial on this grid",
            Verdict::GridTooSmall => "grid too small",
            Verdict::NoPrediction => "no predicted degree on this range",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct FitOutcome {
    pub model: FitModel,
    pub mu: Vec<u32>,
    pub variables: Vec<String>,
    pub samples: Vec<(Vec<i64>, ExactInt)>,
    pub fit: std::result::Result<FittedPoly, String>,
    pub expected: Option<Vec<u32>>,
    pub verdict: Verdict,
}

impl FitOutcome {
    pub fn detected(&self) -> Option<&[u32]> {
        self.fit.as_ref().ok().map(|p| p.degrees.as_slice())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "model": self.model.to_string(),
            "mu": self.mu,
            "variables": self.variables,
            "samples": self.samples.iter()
                .map(|(p, v)| serde_json::json!({"at": p, "value": v.to_string()}))
                .collect::<Vec<_>>(),
            "polynomial": self.fit.as_ref().map(|p| p.to_string()).ok(),
            "error": self.fit.as_ref().err(),
            "detected_degrees": self.detected(),
            "expected_degrees": self.expected,
            "verdict": self.verdict.to_string(),
        })
    }
}

/// Multiplicity of λ − μ in the module of highest weight λ, where
/// `lambda[i]` and `mu[i]` are the coordinates on ω_{i+1} and α_{i+1}.
pub fn sample(model: FitModel, lambda: &[u32], mu: &[u32]) -> Result<ExactInt> {
    if lambda.len() != mu.len() {
        return Err(Error::LengthMismatch {
            expected: mu.len(),
            actual: lambda.len(),
        });
    }
    let r = mu.len() + 1;
    // ξ_i = λ_i + ... + λ_{r-1}
    let mut xi = vec![0u32; r];
    for i in (0..r - 1).rev() {
        xi[i] = xi[i + 1] + lambda[i];
    }
    let mut k: Vec<i64> = xi.iter().map(|&x| x as i64).collect();
    for (i, &m) in mu.iter().enumerate() {
        k[i] -= m as i64;
        k[i + 1] += m as i64;
    }
    let partition = Partition::new(xi.clone())?;
    match model {
        FitModel::Weyl(1) => Ok(c1_weight_table(r, lambda)?.get(&k)),
        FitModel::Weyl(2) => Ok(c2_weight_table(r, &partition)?.get(&k)),
        FitModel::Weyl(d) if r == 2 => weight_dim(d, 2, xi[0], &k),
        FitModel::Weyl(d) => Err(Error::Unsupported(format!(
            "weights of W^{d}(λ) are only available for sl_2"
        ))),
        FitModel::Truncated(l) => {
            Ok(cl_weight_table(r, &partition, l, TableMethod::Enumerate)?.get(&k))
        }
    }
}

/// Expected degree in each λ_i, if the range lies where one is predicted.
pub fn expected_degrees(model: FitModel, mu: &[u32], lo: i64) -> Option<Vec<u32>> {
    match model {
        FitModel::Weyl(d) => Some(mu.iter().map(|&m| m * d).collect()),
        FitModel::Truncated(l) => mu
            .iter()
            .all(|&m| lo > (l * m + l) as i64)
            .then(|| mu.to_vec()),
    }
}

/// Samples every λ in [lo, hi]^{r-1} and fits.
pub fn fit(model: FitModel, mu: &[u32], lo: i64, hi: i64) -> Result<FitOutcome> {
    if mu.is_empty() {
        return Err(Error::domain("μ needs at least one coordinate"));
    }
    if lo < 0 || hi < lo {
        return Err(Error::domain(format!("bad range {lo}..{hi}")));
    }
    let variables: Vec<String> = if mu.len() == 1 {
        vec!["n".into()]
    } else {
        (1..=mu.len()).map(|i| format!("l{i}")).collect()
    };
    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in mu {
        points = points
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let mut samples = Vec::with_capacity(points.len());
    for p in points {
        let lambda: Vec<u32> = p.iter().map(|&x| x as u32).collect();
        let v = sample(model, &lambda, mu)?;
        samples.push((p, v));
    }
    let rational: Vec<(Vec<i64>, ExactRat)> = samples
        .iter()
        .map(|(p, v)| (p.clone(), ExactRat::from_integer(v.clone())))
        .collect();
    let names: Vec<&str> = variables.iter().map(String::as_str).collect();
    let expected = expected_degrees(model, mu, lo);
    let (fit, verdict) = match finite_difference_fit(&names, &rational) {
        Ok(poly) => {
            let verdict = match &expected {
                None => Verdict::NoPrediction,
                Some(e) if *e == poly.degrees => Verdict::Confirmed,
                Some(_) => Verdict::DegreeMismatch,
            };
            (Ok(poly), verdict)
        }
        Err(e @ Error::NotPolynomial) => (Err(e.to_string()), Verdict::NotPolynomial),
        Err(e @ Error::GridTooSmall { .. }) => (Err(e.to_string()), Verdict::GridTooSmall),
        Err(e) => return Err(e),
    };
    Ok(FitOutcome {
        model,
        mu: mu.to_vec(),
        variables,
        samples,
        fit,
        expected,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> ExactRat {
        ExactRat::new(a.into(), b.into())
    }

    #[test]
    fn narayana_column() {
        let out = fit(FitModel::Weyl(2), &[1], 1, 8).unwrap();
        assert_eq!(out.verdict, Verdict::Confirmed);
        let p = out.fit.unwrap();
        assert_eq!(p.degrees, vec![2]);
        assert_eq!(p.evaluate(&[5]), q(15, 1));
        assert_eq!(p.to_string(), "1/2*n^2 + 1/2*n");
    }

    #[test]
    fn binomial_column() {
        let out = fit(FitModel::Weyl(1), &[2], 1, 8).unwrap();
        assert_eq!(out.verdict, Verdict::Confirmed);
        assert_eq!(out.fit.unwrap().to_string(), "1/2*n^2 - 1/2*n");
    }

    #[test]
    fn constant_for_d0() {
        for k in 0..=3u32 {
            let out = fit(FitModel::Weyl(0), &[k], k as i64, k as i64 + 5).unwrap();
            assert_eq!(out.verdict, Verdict::Confirmed);
            assert_eq!(out.fit.unwrap().to_string(), "1");
        }
    }

    #[test]
    fn sl2_degrees() {
        for d in 1..=3 {
            for k in 1..=3u32 {
                let out = fit(FitModel::Weyl(d), &[k], 0, (d * k) as i64 + 4).unwrap();
                assert_eq!(out.verdict, Verdict::Confirmed, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn truncated_linear_past_threshold() {
        let out = fit(FitModel::Truncated(2), &[1], 5, 12).unwrap();
        assert_eq!(out.verdict, Verdict::Confirmed);
        assert_eq!(out.detected(), Some(&[1][..]));
        let early = fit(FitModel::Truncated(2), &[1], 1, 8).unwrap();
        assert_eq!(early.verdict, Verdict::NoPrediction);
    }

    #[test]
    fn two_parameter_grid() {
        // gl_3, μ = α_1: degree (1, 0) for d = 1
        let out = fit(FitModel::Weyl(1), &[1, 0], 0, 4).unwrap();
        assert_eq!(out.verdict, Verdict::Confirmed);
        assert_eq!(out.detected(), Some(&[1, 0][..]));
    }

    #[test]
    fn small_grid_is_reported() {
        let out = fit(FitModel::Weyl(2), &[3], 1, 4).unwrap();
        assert!(matches!(out.verdict, Verdict::GridTooSmall | Verdict::NotPolynomial));
    }
}

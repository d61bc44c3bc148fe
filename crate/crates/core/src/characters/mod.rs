//! Characters of the one- and two-variable Weyl modules as weight tables:
//! the tensor model for d = 1, the subset model and its recurrences for
//! d = 2, and the truncated families behind C[x,y]/(x^l).

mod symfunc;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

pub use symfunc::{
    frobenius_char, mn_character, parking_traces, schur_expand, schur_to_json,
    weight_table_from_traces, z_lambda, SymFuncPS, MAX_SCHUR_DEGREE,
};

use crate::error::{Error, Result};
use crate::parking::{subset_table, CapacityVector, Family};
use crate::partitions::{Partition, WeightTable};

/// W^1(λ) ≅ ⊗_i Λ^i V^{⊗λ_i}; `lambda[i-1]` is the coefficient of ω_i
/// (λ_r multiplies the determinant).
pub fn c1_weight_table(r: usize, lambda: &[u32]) -> Result<WeightTable> {
    if r == 0 {
        return Err(Error::domain("rank r must be at least 1"));
    }
    if lambda.len() > r {
        return Err(Error::LengthMismatch {
            expected: r,
            actual: lambda.len(),
        });
    }
    let mut t = WeightTable::unit(r);
    for (i, &li) in lambda.iter().enumerate() {
        t = t.convolve(&WeightTable::exterior_power(r, i + 1).pow(li))?;
    }
    Ok(t)
}

/// Fundamental-weight coefficients λ_i = ξ_i − ξ_{i+1} of a partition with
/// at most r parts.
pub fn fundamental_coords(r: usize, xi: &Partition) -> Result<Vec<u32>> {
    let padded = xi.padded(r)?;
    Ok((0..r)
        .map(|i| (padded[i] - padded.get(i + 1).copied().unwrap_or(0)) as u32)
        .collect())
}

/// W^1(ξ) for a partition ξ.
pub fn c1_for_partition(r: usize, xi: &Partition) -> Result<WeightTable> {
    c1_weight_table(r, &fundamental_coords(r, xi)?)
}

fn check_rank(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::domain("rank r must be at least 1"));
    }
    Ok(())
}

/// c_ξ from the subset model with m = ξ^t.
pub fn c2_weight_table(r: usize, xi: &Partition) -> Result<WeightTable> {
    check_rank(r)?;
    if xi.is_empty() {
        return Ok(WeightTable::unit(r));
    }
    Ok(subset_table(&CapacityVector::from_partition(xi)?, r, Family::All))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMethod {
    Enumerate,
    Recurrence,
}

type MemoKey = (usize, Partition, Option<u32>);

fn memo() -> &'static RwLock<HashMap<MemoKey, WeightTable>> {
    static CACHE: OnceLock<RwLock<HashMap<MemoKey, WeightTable>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn memoized(key: MemoKey, compute: impl FnOnce() -> Result<WeightTable>) -> Result<WeightTable> {
    if let Some(t) = memo().read().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let t = compute()?;
    memo().write().unwrap().entry(key).or_insert_with(|| t.clone());
    Ok(t)
}

/// Lower summation limit shared by both recurrences: min(ξ_r, ξ_1 − 1).
///
/// With exactly r rows every term below ξ_r vanishes, because (ξ_{>i})'
/// then has r + 1 rows; capping at ξ_1 − 1 keeps the top term, which
/// otherwise disappears for rectangles with r rows.
fn lower_limit(r: usize, xi: &Partition) -> u32 {
    xi.part(r).min(xi.first() - 1)
}

/// c_ξ assembled from c_ξ = Σ_i c_{(ξ_{>i})'} · c_{ξ_{≤i}}, with single
/// columns computed by enumeration.
pub fn c2_recurrence(r: usize, xi: &Partition) -> Result<WeightTable> {
    check_rank(r)?;
    if xi.len() > r {
        return Ok(WeightTable::zero(r));
    }
    if xi.is_empty() {
        return Ok(WeightTable::unit(r));
    }
    memoized((r, xi.clone(), None), || {
        if xi.first() == 1 {
            return c2_weight_table(r, xi);
        }
        let mut acc = WeightTable::zero(r);
        for i in lower_limit(r, xi)..xi.first() {
            let (above, below) = xi.split_at(i)?;
            let left = c2_recurrence(r, &above.prime_surgery()?)?;
            if left.is_empty() {
                continue;
            }
            acc = acc.plus(&left.convolve(&c2_recurrence(r, &below)?)?)?;
        }
        Ok(acc)
    })
}

/// c_ξ − c_{ξ−α_k} minus the right-hand side of the second recurrence,
/// all terms taken from enumeration. Zero when the recurrence holds.
pub fn rec_ii_residual(r: usize, xi: &Partition, k: usize) -> Result<WeightTable> {
    check_rank(r)?;
    if k == 0 || k >= r || xi.len() > r {
        return Err(Error::domain(format!(
            "row index k = {k} out of range for {xi} in rank {r}"
        )));
    }
    let (xk, xk1) = (xi.part(k), xi.part(k + 1));
    if xk < xk1 + 2 {
        return Err(Error::domain(format!(
            "need xi_k - xi_(k+1) > 1, got {xk} - {xk1} at k = {k}"
        )));
    }
    let lhs = c2_weight_table(r, xi)?.minus(&c2_weight_table(r, &xi.minus_simple_root(k)?)?)?;
    let (above, below) = xi.split_at(xk - 1)?;
    let mut rhs = c2_weight_table(r, &above)?.convolve(&c2_weight_table(r, &below)?)?;
    for i in xk1 + 1..=xk.saturating_sub(2) {
        let (above, below) = xi.split_at(i)?;
        let shifted = above.minus_simple_root(k)?;
        let term = c2_weight_table(r, &shifted)?.convolve(&c2_weight_table(r, &below)?)?;
        rhs = rhs.plus(&term)?;
    }
    lhs.minus(&rhs)
}

/// Every (ξ, k) with |ξ| ≤ max_size, ℓ(ξ) ≤ r and ξ_k − ξ_{k+1} > 1,
/// 1 ≤ k ≤ r − 1.
pub fn rec_ii_admissible(r: usize, max_size: u32) -> Vec<(Partition, usize)> {
    let mut out = Vec::new();
    for xi in Partition::all_up_to(max_size, r) {
        for k in 1..r {
            if xi.part(k) >= xi.part(k + 1) + 2 {
                out.push((xi.clone(), k));
            }
        }
    }
    out
}

/// c_ξ^{(l)}, the character attached to PF^{(l)}(ξ^t).
pub fn cl_weight_table(r: usize, xi: &Partition, l: u32, method: TableMethod) -> Result<WeightTable> {
    check_rank(r)?;
    let family = Family::truncated(l)?;
    match method {
        TableMethod::Enumerate => {
            if xi.is_empty() {
                return Ok(WeightTable::unit(r));
            }
            Ok(subset_table(&CapacityVector::from_partition(xi)?, r, family))
        }
        TableMethod::Recurrence => cl_recurrence(r, xi, l),
    }
}

fn cl_recurrence(r: usize, xi: &Partition, l: u32) -> Result<WeightTable> {
    if xi.len() > r {
        return Ok(WeightTable::zero(r));
    }
    // at most l columns: no window fits inside [1, N-1]
    if xi.first() <= l {
        return c2_recurrence(r, xi);
    }
    memoized((r, xi.clone(), Some(l)), || {
        let lo = (xi.first() - l).max(lower_limit(r, xi));
        let mut acc = WeightTable::zero(r);
        for i in lo..xi.first() {
            let (above, below) = xi.split_at(i)?;
            let left = c2_recurrence(r, &above.prime_surgery()?)?;
            if left.is_empty() {
                continue;
            }
            acc = acc.plus(&left.convolve(&cl_recurrence(r, &below, l)?)?)?;
        }
        Ok(acc)
    })
}

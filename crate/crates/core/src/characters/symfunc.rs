//! Power-sum expansions of Σ_n class functions, Schur expansion through the
//! Murnaghan–Nakayama rule, and weight tables from traces.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, rat_to_int, ExactInt, ExactRat};
use crate::parking::{perm_trace, CapacityVector, Family};
use crate::partitions::{compositions, Partition, WeightTable};

/// Largest degree accepted by [`schur_expand`].
pub const MAX_SCHUR_DEGREE: u32 = 12;

/// A degree-n symmetric function in the power-sum basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFuncPS {
    pub n: u32,
    pub coefficients: BTreeMap<Partition, ExactRat>,
}

impl SymFuncPS {
    /// The Frobenius characteristic of a class function given by its values
    /// on cycle types: Σ_λ trace(λ)/z_λ p_λ.
    pub fn from_traces(n: u32, traces: &BTreeMap<Partition, ExactInt>) -> Result<Self> {
        let mut coefficients = BTreeMap::new();
        for lambda in Partition::all_of(n) {
            let t = traces
                .get(&lambda)
                .ok_or_else(|| Error::domain(format!("missing trace for cycle type {lambda}")))?;
            if !t.is_zero() {
                coefficients.insert(lambda.clone(), ExactRat::new(t.clone(), z_lambda(&lambda)));
            }
        }
        Ok(SymFuncPS { n, coefficients })
    }

    /// p_λ.
    pub fn power_sum(lambda: &Partition) -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(lambda.clone(), ExactRat::one());
        SymFuncPS {
            n: lambda.size(),
            coefficients,
        }
    }

    pub fn coefficient(&self, lambda: &Partition) -> ExactRat {
        self.coefficients.get(lambda).cloned().unwrap_or_default()
    }
}

/// z_λ = Π_i i^{m_i} m_i!, the centralizer order of a permutation of type λ.
pub fn z_lambda(lambda: &Partition) -> ExactInt {
    let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
    for &p in lambda.parts() {
        *mult.entry(p).or_default() += 1;
    }
    mult.iter()
        .map(|(&i, &m)| ExactInt::from(i).pow(m as u32) * factorial(m))
        .product()
}

fn mn_cache() -> &'static RwLock<HashMap<(Vec<u32>, Vec<u32>), i64>> {
    static CACHE: OnceLock<RwLock<HashMap<(Vec<u32>, Vec<u32>), i64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The irreducible character χ^λ evaluated at cycle type μ.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::domain(format!(
            "character {lambda} evaluated at class {mu} of a different degree"
        )));
    }
    Ok(mn_rec(lambda.parts(), mu.parts()))
}

fn mn_rec(lambda: &[u32], mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = mn_cache().read().unwrap().get(&key) {
        return v;
    }
    let h = mu[0] as i64;
    let len = lambda.len() as i64;
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + len - 1 - i as i64)
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        let target = b - h;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        // beads strictly between target and b give the leg length
        let leg = beta.iter().filter(|&&g| g > target && g < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<u32> = next
            .iter()
            .enumerate()
            .map(|(i, &g)| (g - (len - 1 - i as i64)) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sign = if leg % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&shape, &mu[1..]);
    }
    mn_cache().write().unwrap().insert(key, total);
    total
}

/// ⟨f, s_λ⟩ for every λ ⊢ n; coefficients must be integers.
pub fn schur_expand(f: &SymFuncPS) -> Result<BTreeMap<Partition, ExactInt>> {
    if f.n > MAX_SCHUR_DEGREE {
        return Err(Error::Unsupported(format!(
            "Schur expansion limited to degree {MAX_SCHUR_DEGREE}, got {}",
            f.n
        )));
    }
    for mu in f.coefficients.keys() {
        if mu.size() != f.n {
            return Err(Error::domain(format!("cycle type {mu} does not partition {}", f.n)));
        }
    }
    let mut out = BTreeMap::new();
    for lambda in Partition::all_of(f.n) {
        // p_μ = Σ_λ χ^λ(μ) s_λ
        let mut c = ExactRat::zero();
        for (mu, a) in &f.coefficients {
            let chi = mn_character(&lambda, mu)?;
            if chi != 0 {
                c += a * ExactRat::from_integer(chi.into());
            }
        }
        let c = rat_to_int(&c).map_err(|_| {
            Error::inconsistent(format!("Schur coefficient of s_{lambda} is {c}, not an integer"))
        })?;
        out.insert(lambda, c);
    }
    Ok(out)
}

/// `{"n":2,"schur":[{"lambda":[2],"mult":"1"},...]}`, nonzero terms only,
/// partitions in reverse lexicographic order.
pub fn schur_to_json(n: u32, expansion: &BTreeMap<Partition, ExactInt>) -> serde_json::Value {
    let terms: Vec<_> = Partition::all_of(n)
        .into_iter()
        .filter_map(|lambda| {
            let m = expansion.get(&lambda)?;
            (!m.is_zero()).then(|| json!({"lambda": lambda.parts(), "mult": m.to_string()}))
        })
        .collect();
    json!({"n": n, "schur": terms})
}

/// Traces of CPF(m) (optionally ⊗ Sign) on every cycle type of |m|.
pub fn parking_traces(
    m: &CapacityVector,
    sign_twist: bool,
    family: Family,
) -> Result<BTreeMap<Partition, ExactInt>> {
    Partition::all_of(m.total() as u32)
        .into_iter()
        .map(|lambda| {
            let t = perm_trace(m, &lambda, sign_twist, family)?;
            Ok((lambda, t))
        })
        .collect()
}

/// ch CPF(m) or ch (CPF(m) ⊗ Sign), restricted to PF^(l)(m) when
/// `family` is truncated.
pub fn frobenius_char(m: &CapacityVector, sign_twist: bool, family: Family) -> Result<SymFuncPS> {
    let traces = parking_traces(m, sign_twist, family)?;
    SymFuncPS::from_traces(m.total() as u32, &traces)
}

/// Partitions of k together with 1/z_ν.
fn class_weights(k: u32) -> Vec<(Partition, ExactRat)> {
    Partition::all_of(k)
        .into_iter()
        .map(|nu| {
            let w = ExactRat::new(ExactInt::one(), z_lambda(&nu));
            (nu, w)
        })
        .collect()
}

/// Weight table of ∇π for a Σ_n character π given on cycle types: the
/// weight-k multiplicity is the dimension of the Y_k-invariants,
/// Σ_{(ν^1,...,ν^r), ν^i ⊢ k_i} Π 1/z_{ν^i} · trace(ν^1 ∪ ... ∪ ν^r).
pub fn weight_table_from_traces(
    traces: &BTreeMap<Partition, ExactInt>,
    n: u32,
    r: usize,
) -> Result<WeightTable> {
    if r == 0 {
        return Err(Error::domain("rank r must be at least 1"));
    }
    for lambda in Partition::all_of(n) {
        if !traces.contains_key(&lambda) {
            return Err(Error::domain(format!("missing trace for cycle type {lambda}")));
        }
    }
    let weights: Vec<Vec<(Partition, ExactRat)>> = (0..=n).map(class_weights).collect();
    let mut table = WeightTable::zero(r);
    for k in compositions(n as i64, r) {
        let mut avg = ExactRat::zero();
        let mut choice = vec![0usize; r];
        loop {
            let mut parts: Vec<u32> = Vec::with_capacity(n as usize);
            let mut w = ExactRat::one();
            for (i, &c) in choice.iter().enumerate() {
                let (nu, wi) = &weights[k[i] as usize][c];
                parts.extend_from_slice(nu.parts());
                w *= wi;
            }
            let cycle_type = Partition::from_unsorted(parts);
            avg += w * ExactRat::from_integer(traces[&cycle_type].clone());
            // odometer over the per-block partitions
            let mut i = 0;
            while i < r {
                choice[i] += 1;
                if choice[i] < weights[k[i] as usize].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        let mult = rat_to_int(&avg).map_err(|_| {
            Error::inconsistent(format!(
                "Young-subgroup average {avg} at content {k:?} is not an integer; traces are not a character"
            ))
        })?;
        if mult.is_negative() {
            return Err(Error::inconsistent(format!(
                "negative multiplicity {mult} at content {k:?}; traces are not a character"
            )));
        }
        table.add_to(k, mult);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> ExactRat {
        ExactRat::new(a.into(), b.into())
    }

    #[test]
    fn z_values() {
        assert_eq!(z_lambda(&p(&[1, 1, 1])), 6.into());
        assert_eq!(z_lambda(&p(&[2, 1])), 2.into());
        assert_eq!(z_lambda(&p(&[2, 2])), 8.into());
        // class sizes sum to n!
        for n in 1..=8 {
            let s: ExactRat = Partition::all_of(n)
                .iter()
                .map(|l| q(1, 1) / ExactRat::from_integer(z_lambda(l)))
                .sum();
            assert_eq!(s, ExactRat::one());
        }
    }

    #[test]
    fn character_table_orthogonality() {
        for n in 1..=7 {
            let parts = Partition::all_of(n);
            for a in &parts {
                for b in &parts {
                    let s: ExactRat = parts
                        .iter()
                        .map(|mu| {
                            let x = mn_character(a, mu).unwrap() * mn_character(b, mu).unwrap();
                            ExactRat::new(x.into(), z_lambda(mu))
                        })
                        .sum();
                    let expected = if a == b { ExactRat::one() } else { ExactRat::zero() };
                    assert_eq!(s, expected, "{a} {b}");
                }
            }
        }
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
    }

    #[test]
    fn frobenius_examples() {
        let f = frobenius_char(&CapacityVector::new(vec![1, 1]).unwrap(), true, Family::All).unwrap();
        assert_eq!(f.coefficient(&p(&[1, 1])), q(3, 2));
        assert_eq!(f.coefficient(&p(&[2])), q(-1, 2));
        let f = frobenius_char(&CapacityVector::new(vec![1]).unwrap(), false, Family::All).unwrap();
        assert_eq!(f, SymFuncPS::power_sum(&p(&[1])));
        let f = frobenius_char(&CapacityVector::new(vec![2]).unwrap(), false, Family::All).unwrap();
        assert_eq!(f.coefficient(&p(&[1, 1])), q(1, 2));
        assert_eq!(f.coefficient(&p(&[2])), q(1, 2));
    }

    #[test]
    fn schur_examples() {
        let f = frobenius_char(&CapacityVector::new(vec![1, 1]).unwrap(), true, Family::All).unwrap();
        let s = schur_expand(&f).unwrap();
        assert_eq!(s[&p(&[2])], 1.into());
        assert_eq!(s[&p(&[1, 1])], 2.into());
        assert_eq!(
            schur_to_json(2, &s).to_string(),
            r#"{"n":2,"schur":[{"lambda":[2],"mult":"1"},{"lambda":[1,1],"mult":"2"}]}"#
        );

        let reg = schur_expand(&SymFuncPS::power_sum(&p(&[1, 1, 1]))).unwrap();
        assert_eq!(reg[&p(&[3])], 1.into());
        assert_eq!(reg[&p(&[2, 1])], 2.into());
        assert_eq!(reg[&p(&[1, 1, 1])], 1.into());

        let hooks = schur_expand(&SymFuncPS::power_sum(&p(&[3]))).unwrap();
        assert_eq!(hooks[&p(&[3])], 1.into());
        assert_eq!(hooks[&p(&[2, 1])], (-1).into());
        assert_eq!(hooks[&p(&[1, 1, 1])], 1.into());

        let half = SymFuncPS {
            n: 2,
            coefficients: [(p(&[2]), q(1, 2))].into_iter().collect(),
        };
        assert!(matches!(schur_expand(&half), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn parking_characters_are_representations() {
        for n in 1..=6u32 {
            for lambda in Partition::all_of(n) {
                let m = CapacityVector::from_partition(&lambda).unwrap();
                for twist in [false, true] {
                    let s = schur_expand(&frobenius_char(&m, twist, Family::All).unwrap()).unwrap();
                    assert!(s.values().all(|c| !c.is_negative()), "{lambda} {twist}");
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let m = CapacityVector::new(vec![1, 1]).unwrap();
        let traces = parking_traces(&m, true, Family::All).unwrap();
        let t = weight_table_from_traces(&traces, 2, 2).unwrap();
        assert_eq!(t.get(&[2, 0]), 1.into());
        assert_eq!(t.get(&[1, 1]), 3.into());
        assert_eq!(t.get(&[0, 2]), 1.into());

        let trivial: BTreeMap<_, _> = Partition::all_of(2).into_iter().map(|l| (l, 1.into())).collect();
        let t = weight_table_from_traces(&trivial, 2, 2).unwrap();
        assert_eq!(t.total(), 3.into());
        assert_eq!(t.get(&[1, 1]), 1.into());

        let regular: BTreeMap<_, _> = Partition::all_of(2)
            .into_iter()
            .map(|l| {
                let v = if l == p(&[1, 1]) { 2 } else { 0 };
                (l, v.into())
            })
            .collect();
        let t = weight_table_from_traces(&regular, 2, 2).unwrap();
        assert_eq!(t.total(), 4.into());
        assert_eq!(t.get(&[1, 1]), 2.into());

        let bogus: BTreeMap<_, _> = Partition::all_of(2)
            .into_iter()
            .map(|l| {
                let v = if l == p(&[1, 1]) { 1 } else { 0 };
                (l, v.into())
            })
            .collect();
        assert!(weight_table_from_traces(&bogus, 2, 2).is_err());
    }
}

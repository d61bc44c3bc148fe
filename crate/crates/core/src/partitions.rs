//! Partitions, the cut-and-shift surgeries used by the character
//! recurrences, and weight-multiplicity tables of gl_r modules.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::ExactInt;

/// A weakly decreasing sequence of nonnegative integers, stored without
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Builds a partition from parts given in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition (n).
    pub fn row(n: u32) -> Self {
        Partition::new(vec![n]).expect("single part")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The i-th part, 1-based, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> u32 {
        self.part(1)
    }

    /// The parts padded with zeros to length `r` (as a gl_r weight).
    pub fn padded(&self, r: usize) -> Result<Vec<i64>> {
        if self.len() > r {
            return Err(Error::domain(format!("{self} has more than {r} parts")));
        }
        let mut v: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        v.resize(r, 0);
        Ok(v)
    }

    /// xi^t_j = |{ i : xi_i >= j }|.
    pub fn transpose(&self) -> Partition {
        let cols = self.first();
        let t = (1..=cols)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition(t)
    }

    /// Splits at column `i`: returns (xi_{>i}, xi_{<=i}) with
    /// (xi_{>i})_j = max(xi_j - i, 0) and (xi_{<=i})_j = min(xi_j, i).
    pub fn split_at(&self, i: u32) -> Result<(Partition, Partition)> {
        if i > self.first() {
            return Err(Error::domain(format!(
                "split point {i} outside [0, {}] for {self}",
                self.first()
            )));
        }
        let above = self.0.iter().map(|&p| p.saturating_sub(i)).collect();
        let below = self.0.iter().map(|&p| p.min(i)).collect();
        Ok((Partition::new(above)?, Partition::new(below)?))
    }

    /// The partition xi' whose transpose is xi^t with the first column grown
    /// by one box and column xi_1 shrunk by one box (identity when xi_1 = 1).
    pub fn prime_surgery(&self) -> Result<Partition> {
        if self.is_empty() {
            return Err(Error::domain("prime surgery of the empty partition"));
        }
        let cols = self.first() as usize;
        if cols == 1 {
            return Ok(self.clone());
        }
        let mut t = self.transpose().0;
        t[0] += 1;
        t[cols - 1] -= 1;
        let t = Partition::new(t)
            .map_err(|_| Error::inconsistent(format!("prime surgery of {self} left no partition")))?;
        Ok(t.transpose())
    }

    /// xi - alpha_k for 1 <= k: moves one box from row k to row k + 1.
    pub fn minus_simple_root(&self, k: usize) -> Result<Partition> {
        if k == 0 {
            return Err(Error::domain("simple roots are indexed from 1"));
        }
        let mut v: Vec<u32> = self.0.clone();
        v.resize(v.len().max(k + 1), 0);
        if v[k - 1] == 0 {
            return Err(Error::domain(format!("{self} - alpha_{k} has a negative part")));
        }
        v[k - 1] -= 1;
        v[k] += 1;
        Partition::new(v).map_err(|_| Error::domain(format!("{self} - alpha_{k} is not dominant")))
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `n` with at most `max_len` parts.
    pub fn all_up_to(n: u32, max_len: usize) -> Vec<Partition> {
        (0..=n)
            .flat_map(Partition::all_of)
            .filter(|p| p.len() <= max_len)
            .collect()
    }

    /// Parses `a,b,c` (empty string is the empty partition).
    pub fn parse(s: &str) -> Result<Partition> {
        let parts = parse_list(s)?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| Error::domain(format!("bad list element `{t}` in `{s}`")))
        })
        .collect()
}

/// Weight multiplicities of a gl_r module: a finitely supported map from
/// Z^r to the integers. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    r: usize,
    entries: BTreeMap<Vec<i64>, ExactInt>,
}

impl WeightTable {
    pub fn zero(r: usize) -> Self {
        WeightTable {
            r,
            entries: BTreeMap::new(),
        }
    }

    /// The trivial one-dimensional module.
    pub fn unit(r: usize) -> Self {
        let mut t = WeightTable::zero(r);
        t.add_to(vec![0; r], ExactInt::one());
        t
    }

    /// Weights of the exterior power Λ^i V: 0/1 vectors with `i` ones.
    pub fn exterior_power(r: usize, i: usize) -> Self {
        let mut t = WeightTable::zero(r);
        if i > r {
            return t;
        }
        for mask in 0u32..(1 << r) {
            if mask.count_ones() as usize == i {
                let k = (0..r).map(|b| (mask >> b & 1) as i64).collect();
                t.add_to(k, ExactInt::one());
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn get(&self, k: &[i64]) -> ExactInt {
        self.entries.get(k).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<i64>, &ExactInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_to(&mut self, k: Vec<i64>, m: ExactInt) {
        assert_eq!(k.len(), self.r, "weight of wrong rank");
        if m.is_zero() {
            return;
        }
        let slot = self.entries.entry(k).or_default();
        *slot += m;
        if slot.is_zero() {
            self.entries.retain(|_, v| !v.is_zero());
        }
    }

    pub fn total(&self) -> ExactInt {
        self.entries.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| v.is_positive())
    }

    fn check_rank(&self, other: &WeightTable) -> Result<()> {
        if self.r != other.r {
            return Err(Error::RankMismatch(self.r, other.r));
        }
        Ok(())
    }

    /// Character of the tensor product: entries[k] = Σ_{u+v=k} a[u]·b[v].
    pub fn convolve(&self, other: &WeightTable) -> Result<WeightTable> {
        self.check_rank(other)?;
        let mut out = WeightTable::zero(self.r);
        for (u, a) in &self.entries {
            for (v, b) in &other.entries {
                let k = u.iter().zip(v).map(|(x, y)| x + y).collect();
                out.add_to(k, a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> WeightTable {
        let mut acc = WeightTable::unit(self.r);
        for _ in 0..e {
            acc = acc.convolve(self).expect("same rank");
        }
        acc
    }

    pub fn plus(&self, other: &WeightTable) -> Result<WeightTable> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_to(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &WeightTable) -> Result<WeightTable> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_to(k.clone(), -v);
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &ExactInt) -> WeightTable {
        let mut out = WeightTable::zero(self.r);
        for (k, v) in &self.entries {
            out.add_to(k.clone(), v * c);
        }
        out
    }

    /// Invariance under all r! permutations of the coordinates.
    pub fn is_symmetric(&self) -> bool {
        let perms = permutations(self.r);
        self.entries.iter().all(|(k, v)| {
            perms.iter().all(|p| {
                let pk: Vec<i64> = p.iter().map(|&i| k[i]).collect();
                self.entries.get(&pk) == Some(v)
            })
        })
    }

    /// Entries in decreasing lexicographic order of weights.
    pub fn sorted_entries(&self) -> Vec<(&Vec<i64>, &ExactInt)> {
        self.entries.iter().rev().collect()
    }

    /// `{"r":2,"entries":[{"k":[1,1],"dim":"3"}],"total":"5"}`
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .sorted_entries()
            .into_iter()
            .map(|(k, v)| json!({"k": k, "dim": v.to_string()}))
            .collect();
        json!({"r": self.r, "entries": entries, "total": self.total().to_string()})
    }
}

/// All permutations of 0..r in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..r).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..r).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// All vectors of `r` nonnegative integers summing to `n`.
pub fn compositions(n: i64, r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(rem: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 1 {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=rem).rev() {
            cur.push(v);
            rec(rem - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    if r == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, r, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn table(r: usize, e: &[(&[i64], i64)]) -> WeightTable {
        let mut t = WeightTable::zero(r);
        for (k, m) in e {
            t.add_to(k.to_vec(), (*m).into());
        }
        t
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(p(&[5]).transpose(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(p(&[]).transpose(), p(&[]));
        assert_eq!(p(&[2, 0, 0]), p(&[2]));
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn transpose_is_involution() {
        for n in 0..=12 {
            for xi in Partition::all_of(n) {
                assert_eq!(xi.transpose().transpose(), xi);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn split_examples() {
        assert_eq!(p(&[3, 1]).split_at(1).unwrap(), (p(&[2]), p(&[1, 1])));
        assert_eq!(p(&[3, 1]).split_at(0).unwrap(), (p(&[3, 1]), p(&[])));
        assert_eq!(
            p(&[4, 4, 2]).split_at(3).unwrap(),
            (p(&[1, 1]), p(&[3, 3, 2]))
        );
        assert!(p(&[3, 1]).split_at(4).is_err());
    }

    #[test]
    fn split_reassembles() {
        for n in 0..=12 {
            for xi in Partition::all_of(n) {
                for i in 0..=xi.first() {
                    let (above, below) = xi.split_at(i).unwrap();
                    for j in 1..=xi.len() {
                        assert_eq!(xi.part(j), above.part(j) + below.part(j));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_surgery_examples() {
        assert_eq!(p(&[1]).prime_surgery().unwrap(), p(&[1]));
        assert_eq!(p(&[1, 1, 1]).prime_surgery().unwrap(), p(&[1, 1, 1]));
        // (3,1)^t = (2,1,1) -> (3,1,0) -> transpose (2,1,1)
        assert_eq!(p(&[3, 1]).prime_surgery().unwrap(), p(&[2, 1, 1]));
        // (2)^t = (1,1) -> (2,0) -> (1,1)
        assert_eq!(p(&[2]).prime_surgery().unwrap(), p(&[1, 1]));
        assert!(p(&[]).prime_surgery().is_err());
        for n in 1..=10 {
            for xi in Partition::all_of(n) {
                let xp = xi.prime_surgery().unwrap();
                assert_eq!(xp.size(), xi.size());
            }
        }
    }

    #[test]
    fn minus_simple_root() {
        assert_eq!(p(&[3, 1]).minus_simple_root(1).unwrap(), p(&[2, 2]));
        assert_eq!(p(&[2]).minus_simple_root(1).unwrap(), p(&[1, 1]));
        assert!(p(&[2, 2]).minus_simple_root(1).is_err());
    }

    #[test]
    fn convolve_examples() {
        let v = table(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let sq = v.convolve(&v).unwrap();
        assert_eq!(sq, table(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert_eq!(sq.convolve(&WeightTable::unit(2)).unwrap(), sq);
        let l2 = WeightTable::exterior_power(3, 2);
        let v3 = WeightTable::exterior_power(3, 1);
        assert_eq!(l2.convolve(&v3).unwrap().total(), 9.into());
        assert!(matches!(
            v.convolve(&v3),
            Err(Error::RankMismatch(2, 3))
        ));
    }

    #[test]
    fn json_shape() {
        let t = table(2, &[(&[2, 0], 1), (&[1, 1], 3), (&[0, 2], 1)]);
        assert_eq!(
            t.to_json().to_string(),
            r#"{"r":2,"entries":[{"k":[2,0],"dim":"1"},{"k":[1,1],"dim":"3"},{"k":[0,2],"dim":"1"}],"total":"5"}"#
        );
    }

    #[test]
    fn symmetry_detection() {
        assert!(table(2, &[(&[2, 0], 1), (&[0, 2], 1)]).is_symmetric());
        assert!(!table(2, &[(&[2, 0], 1), (&[0, 2], 2)]).is_symmetric());
        assert!(!table(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]).is_symmetric());
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 0).len(), 1);
    }

    fn small_table() -> impl Strategy<Value = WeightTable> {
        proptest::collection::vec(((-2i64..3, -2i64..3), 1i64..4), 0..5).prop_map(|e| {
            let mut t = WeightTable::zero(2);
            for ((a, b), m) in e {
                t.add_to(vec![a, b], m.into());
            }
            t
        })
    }

    proptest! {
        #[test]
        fn convolution_laws(a in small_table(), b in small_table(), c in small_table()) {
            let ab = a.convolve(&b).unwrap();
            prop_assert_eq!(&ab, &b.convolve(&a).unwrap());
            prop_assert_eq!(
                ab.convolve(&c).unwrap(),
                a.convolve(&b.convolve(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(ab.total(), a.total() * b.total());
        }
    }
}

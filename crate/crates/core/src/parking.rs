//! Generalized parking functions PF(m), the dual subset model, boundary
//! points and the truncated families PF(m)^(l).
//!
//! Lots and cars are 1-based throughout, matching the usual conventions:
//! a parking function is stored as the array `(f(1), ..., f(|m|))`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::ExactInt;
use crate::partitions::{Partition, WeightTable};

/// Default cap on the number of candidate functions an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Lot capacities (m_1, ..., m_N).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CapacityVector(Vec<u32>);

impl CapacityVector {
    pub fn new(m: Vec<u32>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::domain("capacity vector needs at least one lot"));
        }
        Ok(CapacityVector(m))
    }

    /// m = xi^t.
    pub fn from_partition(xi: &Partition) -> Result<Self> {
        CapacityVector::new(xi.transpose().parts().to_vec())
    }

    /// (1, 1, ..., 1) with n lots.
    pub fn ones(n: usize) -> Result<Self> {
        CapacityVector::new(vec![1; n])
    }

    pub fn lots(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Prefix sums m_1 + ... + m_s for s = 1..N.
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0usize, |acc, &c| {
                *acc += c as usize;
                Some(*acc)
            })
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        CapacityVector::new(crate::partitions::parse_list(s)?)
    }
}

/// Which parking functions an enumeration keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    All,
    /// PF(m)^(l): every window [s+1, s+l] inside [1, N-1] holds a boundary point.
    Truncated(u32),
}

impl Family {
    pub fn truncated(l: u32) -> Result<Self> {
        if l < 1 {
            return Err(Error::domain("truncation level l must be at least 1"));
        }
        Ok(Family::Truncated(l))
    }
}

/// Per-lot preference counts of `f` (index 0 is lot 1); values above `lots`
/// are dropped.
fn lot_counts(f: &[u32], lots: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; lots];
    for &v in f {
        if v == 0 {
            return Err(Error::domain("parking preferences are 1-based"));
        }
        if (v as usize) <= lots {
            counts[v as usize - 1] += 1;
        }
    }
    Ok(counts)
}

fn check_len(f: &[u32], m: &CapacityVector) -> Result<()> {
    if f.len() != m.total() {
        return Err(Error::LengthMismatch {
            expected: m.total(),
            actual: f.len(),
        });
    }
    Ok(())
}

/// Prefix-count characterization: |f^{-1}({1..s})| >= m_1 + ... + m_s.
pub fn is_parking(f: &[u32], m: &CapacityVector) -> Result<bool> {
    check_len(f, m)?;
    let counts = lot_counts(f, m.lots())?;
    Ok(prefix_ok(&counts, &m.prefix_sums()))
}

fn prefix_ok(counts: &[usize], prefix: &[usize]) -> bool {
    let mut acc = 0;
    counts.iter().zip(prefix).all(|(&c, &p)| {
        acc += c;
        acc >= p
    })
}

/// Drives the cars one at a time: each goes to its preferred lot and takes
/// the first lot at or after it with a free space.
pub fn parks_by_simulation(f: &[u32], m: &CapacityVector) -> Result<bool> {
    check_len(f, m)?;
    let mut free: Vec<u32> = m.as_slice().to_vec();
    for &pref in f {
        if pref == 0 {
            return Err(Error::domain("parking preferences are 1-based"));
        }
        let start = pref as usize - 1;
        match (start..free.len()).find(|&lot| free[lot] > 0) {
            Some(lot) => free[lot] -= 1,
            None => return Ok(false),
        }
    }
    Ok(true)
}

fn boundary_from_counts(counts: &[usize], prefix: &[usize]) -> Vec<usize> {
    let n = prefix.len();
    let mut acc = 0;
    let mut out = Vec::new();
    for s in 0..n.saturating_sub(1) {
        acc += counts[s];
        if acc == prefix[s] {
            out.push(s + 1);
        }
    }
    out
}

/// s in {1..N-1} with |f^{-1}({1..s})| = m_1 + ... + m_s.
pub fn boundary_points(f: &[u32], m: &CapacityVector) -> Result<Vec<usize>> {
    if !is_parking(f, m)? {
        return Err(Error::domain(format!("{f:?} is not a parking function for {m:?}")));
    }
    let counts = lot_counts(f, m.lots())?;
    Ok(boundary_from_counts(&counts, &m.prefix_sums()))
}

/// Gap condition of PF^(l) given the boundary points of a member.
fn windows_covered(boundary: &[usize], lots: usize, l: u32) -> bool {
    let mut last = 0usize;
    for &b in boundary.iter().chain(std::iter::once(&lots)) {
        // positions last+1 .. b-1 carry no boundary point
        if b - last > l as usize {
            return false;
        }
        last = b;
    }
    true
}

pub fn in_family(f: &[u32], m: &CapacityVector, family: Family) -> Result<bool> {
    if !is_parking(f, m)? {
        return Ok(false);
    }
    Ok(match family {
        Family::All => true,
        Family::Truncated(l) => windows_covered(&boundary_points(f, m)?, m.lots(), l),
    })
}

fn candidate_count(lots: usize, len: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..len {
        acc = acc.saturating_mul(lots as u128);
    }
    acc
}

fn check_budget(m: &CapacityVector, budget: u128) -> Result<()> {
    let needed = candidate_count(m.lots(), m.total());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Depth-first walk over preference arrays in lexicographic order, pruning
/// branches whose prefix condition can no longer be met.
struct Search<'a> {
    prefix: Vec<usize>,
    lots: usize,
    len: usize,
    family: Family,
    visit: &'a mut dyn FnMut(&[u32]),
}

impl Search<'_> {
    fn run(&mut self, f: &mut Vec<u32>, counts: &mut Vec<usize>) {
        if f.len() == self.len {
            if prefix_ok(counts, &self.prefix) && self.family_ok(counts) {
                (self.visit)(f);
            }
            return;
        }
        let remaining = self.len - f.len();
        // Remaining cars can only raise prefix counts by `remaining`.
        let mut acc = 0;
        for s in 0..self.lots {
            acc += counts[s];
            if acc + remaining < self.prefix[s] {
                return;
            }
        }
        for v in 1..=self.lots as u32 {
            counts[v as usize - 1] += 1;
            f.push(v);
            self.run(f, counts);
            f.pop();
            counts[v as usize - 1] -= 1;
        }
    }

    fn family_ok(&self, counts: &[usize]) -> bool {
        match self.family {
            Family::All => true,
            Family::Truncated(l) => {
                windows_covered(&boundary_from_counts(counts, &self.prefix), self.lots, l)
            }
        }
    }
}

/// Streams the members of the family in lexicographic order.
pub fn for_each_pf(
    m: &CapacityVector,
    family: Family,
    budget: u128,
    mut visit: impl FnMut(&[u32]),
) -> Result<()> {
    check_budget(m, budget)?;
    let mut search = Search {
        prefix: m.prefix_sums(),
        lots: m.lots(),
        len: m.total(),
        family,
        visit: &mut visit,
    };
    search.run(&mut Vec::new(), &mut vec![0; m.lots()]);
    Ok(())
}

/// |PF(m)| (or |PF(m)^(l)|) by explicit enumeration, split over the value
/// of f(1) across threads.
pub fn enumerate_pf(m: &CapacityVector, family: Family, budget: u128) -> Result<ExactInt> {
    check_budget(m, budget)?;
    if m.total() == 0 {
        let ok = prefix_ok(&vec![0; m.lots()], &m.prefix_sums());
        return Ok(if ok { ExactInt::one() } else { ExactInt::zero() });
    }
    let total: u64 = (1..=m.lots() as u32)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            let mut visit = |_: &[u32]| count += 1;
            let mut search = Search {
                prefix: m.prefix_sums(),
                lots: m.lots(),
                len: m.total(),
                family,
                visit: &mut visit,
            };
            let mut counts = vec![0; m.lots()];
            counts[first as usize - 1] = 1;
            search.run(&mut vec![first], &mut counts);
            count
        })
        .sum();
    Ok(ExactInt::from(total))
}

/// Index k in {1..n+1} of the unique cyclic relabeling sigma_k, j -> j+k-1
/// (mod n+1), such that sigma_k o f satisfies |(sigma_k o f)^{-1}({1..s})| >= s
/// for 1 <= s <= n. Found as the minimizer s0 of
/// F(s) = |f^{-1}({1..s})| - n s/(n+1), with k = n + 2 - s0.
pub fn cycle_shift_index(f: &[u32]) -> Result<usize> {
    let n = f.len();
    let counts = lot_counts(f, n + 1)?;
    if f.iter().any(|&v| v as usize > n + 1) {
        return Err(Error::domain(format!("{f:?} has values beyond {}", n + 1)));
    }
    // (n+1) F(s) = (n+1)|f^{-1}({1..s})| - n s, all integers.
    let mut acc = 0i64;
    let mut best = (i64::MAX, 0usize);
    for s in 1..=n + 1 {
        acc += counts[s - 1] as i64;
        let scaled = (n as i64 + 1) * acc - n as i64 * s as i64;
        if scaled < best.0 {
            best = (scaled, s);
        }
    }
    let k = n + 2 - best.1;
    let shifted = cycle_shift(f, k);
    let shifted_counts = lot_counts(&shifted, n + 1)?;
    let mut acc = 0;
    for s in 1..=n {
        acc += shifted_counts[s - 1];
        if acc < s {
            return Err(Error::inconsistent(format!(
                "cycle shift {k} of {f:?} does not park"
            )));
        }
    }
    Ok(k)
}

/// sigma_k o f with sigma_k(j) = j + k - 1 reduced into {1..n+1}.
pub fn cycle_shift(f: &[u32], k: usize) -> Vec<u32> {
    let modulus = f.len() as u32 + 1;
    f.iter()
        .map(|&v| (v - 1 + k as u32 - 1) % modulus + 1)
        .collect()
}

/// Number of members of the family fixed by a permutation of the given cycle
/// type, times its sign when `sign_twist`; i.e. the character of CPF(m)
/// (or CPF(m) ⊗ Sign) at that class.
pub fn perm_trace(
    m: &CapacityVector,
    cycle_type: &Partition,
    sign_twist: bool,
    family: Family,
) -> Result<ExactInt> {
    if cycle_type.size() as usize != m.total() {
        return Err(Error::domain(format!(
            "cycle type {cycle_type} does not partition |m| = {}",
            m.total()
        )));
    }
    let cycles = cycle_type.parts();
    let lots = m.lots();
    let prefix = m.prefix_sums();
    // A fixed function is constant on cycles: enumerate lot per cycle.
    let mut fixed = 0u64;
    let mut assign = vec![0usize; cycles.len()];
    let mut counts = vec![0usize; lots];
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        for (c, &lot) in cycles.iter().zip(&assign) {
            counts[lot] += *c as usize;
        }
        if prefix_ok(&counts, &prefix) {
            let keep = match family {
                Family::All => true,
                Family::Truncated(l) => {
                    windows_covered(&boundary_from_counts(&counts, &prefix), lots, l)
                }
            };
            if keep {
                fixed += 1;
            }
        }
        // odometer
        let mut i = 0;
        while i < assign.len() {
            assign[i] += 1;
            if assign[i] < lots {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == assign.len() {
            break;
        }
    }
    let mut trace = ExactInt::from(fixed);
    let odd = (m.total() - cycles.len()) % 2 == 1;
    if sign_twist && odd {
        trace = -trace;
    }
    Ok(trace)
}

/// A finite subset of {1..r} x {1, 2, ...}, as (row, column) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubsetH {
    pub pairs: BTreeSet<(u32, u32)>,
}

impl SubsetH {
    pub fn content(&self, r: usize) -> Vec<i64> {
        let mut k = vec![0i64; r];
        for &(row, _) in &self.pairs {
            k[row as usize - 1] += 1;
        }
        k
    }

    fn column_counts(&self, lots: usize) -> Vec<usize> {
        let mut counts = vec![0usize; lots];
        for &(_, col) in &self.pairs {
            if (col as usize) <= lots {
                counts[col as usize - 1] += 1;
            }
        }
        counts
    }

    /// |H| = |m| and |H ∩ {1..r} x {1..s}| >= m_1 + ... + m_s for all s.
    pub fn satisfies(&self, m: &CapacityVector) -> bool {
        self.pairs.len() == m.total()
            && prefix_ok(&self.column_counts(m.lots()), &m.prefix_sums())
    }

    pub fn boundary_points(&self, m: &CapacityVector) -> Result<Vec<usize>> {
        if !self.satisfies(m) {
            return Err(Error::domain("subset violates the parking condition"));
        }
        Ok(boundary_from_counts(
            &self.column_counts(m.lots()),
            &m.prefix_sums(),
        ))
    }

    pub fn in_family(&self, m: &CapacityVector, family: Family) -> bool {
        if !self.satisfies(m) {
            return false;
        }
        match family {
            Family::All => true,
            Family::Truncated(l) => {
                let b = self.boundary_points(m).expect("checked");
                windows_covered(&b, m.lots(), l)
            }
        }
    }
}

/// Weight table of the subset model: entry k counts subsets H of
/// {1..r} x {1..N} with row contents k satisfying the parking condition
/// (and the window condition for a truncated family).
///
/// Columns beyond N never occur: the condition at s = N already requires
/// all |m| elements to sit in columns 1..N. Counting runs column by column
/// over (content, distance to last boundary point) states.
pub fn subset_table(m: &CapacityVector, r: usize, family: Family) -> WeightTable {
    let lots = m.lots();
    let prefix = m.prefix_sums();
    let total = m.total() as i64;
    let mut states: HashMap<(Vec<i64>, u32), ExactInt> = HashMap::new();
    states.insert((vec![0; r], 0), ExactInt::one());
    for s in 0..lots {
        let mut next: HashMap<(Vec<i64>, u32), ExactInt> = HashMap::new();
        for ((content, gap), ways) in &states {
            let used: i64 = content.iter().sum();
            for mask in 0u32..(1 << r) {
                let added = mask.count_ones() as i64;
                let now = used + added;
                if now > total || (now as usize) < prefix[s] {
                    continue;
                }
                let mut gap_next = 0;
                if s + 1 < lots {
                    let boundary = now as usize == prefix[s];
                    gap_next = if boundary { 0 } else { gap + 1 };
                    if let Family::Truncated(l) = family {
                        if gap_next >= l {
                            continue;
                        }
                    }
                }
                let mut k = content.clone();
                for (row, slot) in k.iter_mut().enumerate() {
                    *slot += (mask >> row & 1) as i64;
                }
                *next.entry((k, gap_next)).or_default() += ways;
            }
        }
        states = next;
    }
    let mut table = WeightTable::zero(r);
    for ((k, _), ways) in states {
        table.add_to(k, ways);
    }
    table
}

/// Number of subsets with row contents `k` satisfying the parking condition.
pub fn enumerate_subsets(m: &CapacityVector, r: usize, k: &[i64]) -> Result<ExactInt> {
    if k.len() != r {
        return Err(Error::LengthMismatch {
            expected: r,
            actual: k.len(),
        });
    }
    if k.iter().any(|&x| x < 0) || k.iter().sum::<i64>() != m.total() as i64 {
        return Err(Error::domain(format!(
            "content {k:?} does not sum to |m| = {}",
            m.total()
        )));
    }
    Ok(subset_table(m, r, Family::All).get(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(m: &[u32]) -> CapacityVector {
        CapacityVector::new(m.to_vec()).unwrap()
    }

    /// All functions {1..len} -> {1..lots}.
    fn all_functions(len: usize, lots: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|f| {
                    (1..=lots).map(move |v| {
                        let mut g = f.clone();
                        g.push(v);
                        g
                    })
                })
                .collect();
        }
        out
    }

    /// Every subset of {1..r} x {1..cols} with `size` elements.
    fn all_subsets(r: u32, cols: u32, size: usize) -> Vec<SubsetH> {
        let cells: Vec<(u32, u32)> = (1..=r)
            .flat_map(|i| (1..=cols).map(move |j| (i, j)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..(1 << cells.len()) {
            if mask.count_ones() as usize == size {
                let pairs = cells
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, c)| *c)
                    .collect();
                out.push(SubsetH { pairs });
            }
        }
        out
    }

    #[test]
    fn is_parking_examples() {
        assert!(is_parking(&[1, 2], &cv(&[1, 1])).unwrap());
        assert!(!is_parking(&[2, 2], &cv(&[1, 1])).unwrap());
        assert!(is_parking(&[1, 1, 3], &cv(&[1, 1, 1])).unwrap());
        assert!(parks_by_simulation(&[1, 1, 3], &cv(&[1, 1, 1])).unwrap());
        assert!(matches!(
            is_parking(&[1], &cv(&[1, 1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn simulation_agrees_with_prefix_condition() {
        let caps: Vec<Vec<u32>> = (1..=4usize)
            .flat_map(|lots| {
                let mut out = vec![vec![]];
                for _ in 0..lots {
                    out = out
                        .into_iter()
                        .flat_map(|m: Vec<u32>| {
                            (0..=3).map(move |c| {
                                let mut n = m.clone();
                                n.push(c);
                                n
                            })
                        })
                        .collect();
                }
                out
            })
            .filter(|m| m.iter().sum::<u32>() <= 5)
            .collect();
        for m in caps {
            let m = cv(&m);
            // preferences up to N+1 include cars that never find a lot
            for f in all_functions(m.total(), m.lots() as u32 + 1) {
                assert_eq!(
                    is_parking(&f, &m).unwrap(),
                    parks_by_simulation(&f, &m).unwrap(),
                    "f={f:?} m={m:?}"
                );
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let b = DEFAULT_BUDGET;
        assert_eq!(enumerate_pf(&cv(&[1, 1]), Family::All, b).unwrap(), 3.into());
        assert_eq!(enumerate_pf(&cv(&[1, 1, 1]), Family::All, b).unwrap(), 16.into());
        assert_eq!(enumerate_pf(&cv(&[2]), Family::All, b).unwrap(), 1.into());
        for n in 1..=6usize {
            let expected = (n as u64 + 1).pow(n as u32 - 1);
            let got = enumerate_pf(&CapacityVector::ones(n).unwrap(), Family::All, b).unwrap();
            assert_eq!(got, expected.into(), "n={n}");
            // cycle-lemma count: (n+1)^n functions into n+1 lots, one shift in n+1 parks
            let all = (n as u64 + 1).pow(n as u32);
            assert_eq!(all / (n as u64 + 1), expected);
        }
    }

    #[test]
    fn streaming_is_lexicographic_and_bounded() {
        let m = cv(&[2, 1, 1]);
        let mut seen: Vec<Vec<u32>> = Vec::new();
        for_each_pf(&m, Family::All, DEFAULT_BUDGET, |f| seen.push(f.to_vec())).unwrap();
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(
            ExactInt::from(seen.len()),
            enumerate_pf(&m, Family::All, DEFAULT_BUDGET).unwrap()
        );
        // no member ever prefers a lot beyond N
        assert!(seen.iter().flatten().all(|&v| v as usize <= m.lots()));
        let brute = all_functions(m.total(), m.lots() as u32)
            .into_iter()
            .filter(|f| is_parking(f, &m).unwrap())
            .count();
        assert_eq!(brute, seen.len());
    }

    #[test]
    fn budget_guard() {
        let err = enumerate_pf(&CapacityVector::ones(12).unwrap(), Family::All, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(err.to_string().contains("subset model"));
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_points(&[1, 2], &cv(&[1, 1])).unwrap(), vec![1]);
        assert_eq!(boundary_points(&[1, 1], &cv(&[1, 1])).unwrap(), Vec::<usize>::new());
        assert_eq!(boundary_points(&[1, 2, 2], &cv(&[1, 1, 1])).unwrap(), vec![1]);
        assert!(boundary_points(&[2, 2], &cv(&[1, 1])).is_err());
    }

    #[test]
    fn truncated_counts() {
        let b = DEFAULT_BUDGET;
        let m = cv(&[1, 1, 1]);
        assert_eq!(enumerate_pf(&m, Family::Truncated(1), b).unwrap(), 6.into());
        // l = 2: drop members with no boundary point in {1, 2}
        let none_in_window = all_functions(3, 3)
            .into_iter()
            .filter(|f| is_parking(f, &m).unwrap())
            .filter(|f| boundary_points(f, &m).unwrap().is_empty())
            .count();
        assert_eq!(
            enumerate_pf(&m, Family::Truncated(2), b).unwrap(),
            (16 - none_in_window).into()
        );
        // l >= N is vacuous
        for l in 3..6 {
            assert_eq!(enumerate_pf(&m, Family::Truncated(l), b).unwrap(), 16.into());
        }
        assert!(Family::truncated(0).is_err());
    }

    #[test]
    fn cycle_shift_examples() {
        assert_eq!(cycle_shift_index(&[1]).unwrap(), 1);
        assert_eq!(cycle_shift_index(&[2]).unwrap(), 2);
        assert_eq!(cycle_shift_index(&[3, 3]).unwrap(), 2);
        assert_eq!(cycle_shift(&[3, 3], 2), vec![1, 1]);
    }

    #[test]
    fn cycle_shift_unique_exhaustive() {
        for n in 1..=5usize {
            for f in all_functions(n, n as u32 + 1) {
                let parking: Vec<usize> = (1..=n + 1)
                    .filter(|&k| {
                        let g = cycle_shift(&f, k);
                        is_parking(&g, &CapacityVector::ones(n).unwrap()).unwrap()
                    })
                    .collect();
                assert_eq!(parking, vec![cycle_shift_index(&f).unwrap()], "f={f:?}");
            }
        }
    }

    #[test]
    fn subset_examples() {
        let m = cv(&[1, 1]);
        assert_eq!(enumerate_subsets(&m, 2, &[1, 1]).unwrap(), 3.into());
        assert_eq!(enumerate_subsets(&m, 2, &[2, 0]).unwrap(), 1.into());
        assert_eq!(enumerate_subsets(&cv(&[2]), 2, &[1, 1]).unwrap(), 1.into());
        assert!(enumerate_subsets(&m, 2, &[2, 1]).is_err());
    }

    #[test]
    fn subset_table_matches_brute_force() {
        let caps: [&[u32]; 6] = [&[1, 1, 1], &[2, 1], &[2, 1, 1], &[1, 1, 1, 1], &[3, 1], &[2, 2]];
        for m in caps {
            let m = cv(m);
            for r in 1..=3usize {
                for family in [Family::All, Family::Truncated(1), Family::Truncated(2)] {
                    let mut brute = WeightTable::zero(r);
                    for h in all_subsets(r as u32, m.lots() as u32 + 1, m.total()) {
                        if h.in_family(&m, family) {
                            brute.add_to(h.content(r), ExactInt::one());
                        }
                    }
                    assert_eq!(subset_table(&m, r, family), brute, "m={m:?} r={r} {family:?}");
                }
            }
        }
    }

    #[test]
    fn subset_totals_are_colored_parking_counts() {
        use crate::exactnum::binomial;
        for n in 1..=7usize {
            for r in 1..=4usize {
                let t = subset_table(&CapacityVector::ones(n).unwrap(), r, Family::All);
                let expected = binomial((r * (n + 1)) as i64, n as i64) / (n as i64 + 1);
                assert_eq!(t.total(), expected, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn perm_trace_examples() {
        let m = cv(&[1, 1]);
        let id = Partition::new(vec![1, 1]).unwrap();
        let swap = Partition::row(2);
        assert_eq!(perm_trace(&m, &id, false, Family::All).unwrap(), 3.into());
        assert_eq!(perm_trace(&m, &swap, false, Family::All).unwrap(), 1.into());
        assert_eq!(perm_trace(&m, &swap, true, Family::All).unwrap(), (-1).into());
        assert!(perm_trace(&m, &Partition::row(3), false, Family::All).is_err());
    }

    #[test]
    fn perm_trace_matches_fixed_point_count() {
        let m = cv(&[2, 1, 1]);
        for family in [Family::All, Family::Truncated(1)] {
            for ct in Partition::all_of(4) {
                // a representative permutation of the cycle type
                let mut sigma = Vec::new();
                let mut start = 0;
                for &c in ct.parts() {
                    for i in 0..c as usize {
                        sigma.push(start + (i + 1) % c as usize);
                    }
                    start += c as usize;
                }
                let mut fixed = 0;
                for_each_pf(&m, family, DEFAULT_BUDGET, |f| {
                    if (0..f.len()).all(|i| f[sigma[i]] == f[i]) {
                        fixed += 1;
                    }
                })
                .unwrap();
                assert_eq!(perm_trace(&m, &ct, false, family).unwrap(), fixed.into());
            }
            let id = Partition::new(vec![1; 4]).unwrap();
            assert_eq!(
                perm_trace(&m, &id, false, family).unwrap(),
                enumerate_pf(&m, family, DEFAULT_BUDGET).unwrap()
            );
        }
    }
}

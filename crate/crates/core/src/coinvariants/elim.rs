//! Fraction-free sparse row reduction over the integers.
//!
//! Rows are sorted lists of (column, coefficient) with nonzero coefficients.
//! The leading entry is the smallest column. Every stored row is primitive
//! (content 1) with a positive leading coefficient, so all arithmetic stays
//! in Z and coefficient growth is kept in check by dividing out contents.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::ExactInt;

pub(crate) type Row = Vec<(u32, ExactInt)>;

/// a·x − b·y, merged by column.
fn combine(x: &Row, a: &ExactInt, y: &Row, b: &ExactInt) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cy = y.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if cx < cy {
            out.push((cx, a * &x[i].1));
            i += 1;
        } else if cy < cx {
            out.push((cy, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((cx, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divides out the content and makes the leading coefficient positive.
fn make_primitive(row: &mut Row) {
    let Some(first) = row.first() else { return };
    let negative = first.1.is_negative();
    let mut g = ExactInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if negative {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Clears entry `at` of `row` using the pivot row whose leading column is
/// that entry's column, scaling by the cofactors of the gcd.
fn eliminate(row: &Row, pivot: &Row, at: usize) -> Row {
    let a = &row[at].1;
    let p = &pivot[0].1;
    let g = a.gcd(p);
    let (ra, rp) = (p / &g, a / &g);
    let mut out = combine(row, &ra, pivot, &rp);
    make_primitive(&mut out);
    out
}

/// An echelon basis of a growing row space, keyed by leading column.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: HashMap<u32, Row>,
}

impl Echelon {
    /// Adds a row; returns whether the rank increased.
    pub(crate) fn insert(&mut self, mut row: Row) -> bool {
        make_primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match self.rows.get(&lead) {
                Some(pivot) => row = eliminate(&row, pivot, 0),
                None => {
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduced form: no row has a nonzero entry in another row's pivot
    /// column.
    pub(crate) fn into_reduced(self) -> HashMap<u32, Row> {
        let mut pivots: Vec<u32> = self.rows.keys().copied().collect();
        pivots.sort_unstable_by(|a, b| b.cmp(a));
        let mut rows = self.rows;
        let mut done: HashMap<u32, Row> = HashMap::with_capacity(rows.len());
        for p in pivots {
            let mut row = rows.remove(&p).unwrap();
            // entries right of the lead that sit in (already reduced) pivot
            // columns; eliminating one never creates another
            while let Some(at) = row.iter().skip(1).position(|(c, _)| done.contains_key(c)) {
                let at = at + 1;
                let pivot = &done[&row[at].0];
                row = eliminate(&row, pivot, at);
            }
            done.insert(p, row);
        }
        done
    }
}

/// Coefficient of column `col` in a sorted row.
pub(crate) fn coefficient(row: &Row, col: u32) -> Option<&ExactInt> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[(u32, i64)]) -> Row {
        v.iter().map(|&(c, x)| (c, x.into())).collect()
    }

    #[test]
    fn rank_of_small_system() {
        let mut e = Echelon::default();
        assert!(e.insert(row(&[(0, 2), (1, 4)])));
        assert!(e.insert(row(&[(0, 3), (2, 3)])));
        assert!(!e.insert(row(&[(1, 6), (2, -3)])));
        assert!(!e.insert(row(&[])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn reduced_form() {
        let mut e = Echelon::default();
        e.insert(row(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(row(&[(1, 2), (2, 4)]));
        let red = e.into_reduced();
        assert_eq!(red[&0], row(&[(0, 1), (2, -1)]));
        assert_eq!(red[&1], row(&[(1, 1), (2, 2)]));
        assert_eq!(coefficient(&red[&1], 2), Some(&2.into()));
        assert_eq!(coefficient(&red[&1], 0), None);
    }

    #[test]
    fn rank_matches_rational_elimination() {
        // deterministic pseudo-random integer matrices against a dense
        // rational Gaussian elimination
        use crate::exactnum::ExactRat;
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for _ in 0..40 {
            let (rows_n, cols) = (6, 5);
            let m: Vec<Vec<i64>> = (0..rows_n)
                .map(|_| (0..cols).map(|_| if next() > 0 { next() } else { 0 }).collect())
                .collect();
            let mut e = Echelon::default();
            for r in &m {
                let sparse: Row = r
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, &x)| (c as u32, x.into()))
                    .collect();
                e.insert(sparse);
            }
            let mut dense: Vec<Vec<ExactRat>> = m
                .iter()
                .map(|r| r.iter().map(|&x| ExactRat::from_integer(x.into())).collect())
                .collect();
            let mut rank = 0;
            for c in 0..cols {
                let Some(p) = (rank..rows_n).find(|&i| !dense[i][c].is_zero()) else { continue };
                dense.swap(rank, p);
                for i in 0..rows_n {
                    if i != rank && !dense[i][c].is_zero() {
                        let f = &dense[i][c] / &dense[rank][c];
                        for j in 0..cols {
                            let sub = &f * &dense[rank][j];
                            dense[i][j] -= sub;
                        }
                    }
                }
                rank += 1;
            }
            assert_eq!(e.rank(), rank);
        }
    }
}

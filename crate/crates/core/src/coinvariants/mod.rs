//! The graded space DH_n(A) = A^{⊗n} / S^n(A)_ε · A^{⊗n} and its Σ_n
//! traces, by exact linear algebra on monomials.
//!
//! The ideal is generated by the polarized power sums Σ_i ι_i(m) over the
//! monomials m ∈ A_ε. It is multihomogeneous in the variable sets, so each
//! multidegree β is handled separately:
//!
//!   I_β = Σ_{a, i} x_{i,a} · I_{β − e_a} + C · p_{x^β},
//!
//! reusing the reduced basis of every lower piece. Standard (non-pivot)
//! monomials span the quotient, and reduced rows give normal forms for the
//! trace computation.
//!
//! Once a whole total degree D has zero quotient, every degree above D is
//! zero as well (each monomial of degree D + 1 is a variable times one of
//! degree D), and pieces whose lower neighbour is zero are marked full
//! without elimination.

mod elim;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::characters::weight_table_from_traces;
use crate::error::{Error, Result};
use crate::exactnum::{rat_to_int, ExactInt, ExactRat};
use crate::formulas::AlgebraPresentation;
use crate::parking::DEFAULT_BUDGET;
use crate::partitions::{compositions, Partition, WeightTable};

use elim::{coefficient, Echelon, Row};

/// Ring variables x_{i,a} (slot i, generator a) packed into one u128,
/// eight bits each, with variable 0 in the most significant byte so that
/// numeric order is lexicographic order.
const MAX_VARS: usize = 16;
const MAX_EXPONENT: u32 = 255;

type Mono = u128;

fn shift(var: usize) -> u32 {
    8 * (MAX_VARS - 1 - var) as u32
}

fn exponent(m: Mono, var: usize) -> u32 {
    ((m >> shift(var)) & 0xff) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoinvariantConfig {
    /// Consecutive zero total degrees required before stopping.
    pub stall: u32,
    /// Highest total degree examined.
    pub cap: u32,
    /// Upper bound on the number of monomials materialized.
    pub budget: u128,
}

impl CoinvariantConfig {
    /// stall = n·d and cap = d·n(n−1)/2 + stall + 4, d the number of
    /// generators of A.
    pub fn default_for(algebra: AlgebraPresentation, n: u32) -> Self {
        let d = algebra.num_vars() as u32;
        let stall = (n * d).max(1);
        CoinvariantConfig {
            stall,
            cap: d * n * n.saturating_sub(1) / 2 + stall + 4,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub degree: u32,
    /// Monomials of A^{⊗n} in this degree.
    pub ambient: u64,
    /// Spanning rows fed to elimination (zero for pieces settled without it).
    pub generators: u64,
    pub rank: u64,
}

#[derive(Clone, Debug)]
pub struct GradedReport {
    pub algebra: AlgebraPresentation,
    pub n: u32,
    /// Nonzero quotient dimensions by total degree.
    pub dims: BTreeMap<u32, ExactInt>,
    /// Nonzero quotient dimensions by multidegree.
    pub multigraded: BTreeMap<Vec<u32>, ExactInt>,
    pub total: ExactInt,
    pub converged: bool,
    pub stall: u32,
    pub cap: u32,
    pub stats: Vec<DegreeStats>,
    pub traces: Option<BTreeMap<Partition, ExactInt>>,
    pub wall_time: Duration,
}

impl GradedReport {
    pub fn to_json(&self, multigraded: bool, timings: bool) -> serde_json::Value {
        let mut v = json!({
            "algebra": self.algebra.to_string(),
            "n": self.n,
            "converged": self.converged,
            "stall": self.stall,
            "cap": self.cap,
            "dims": self.dims.iter()
                .map(|(d, x)| json!({"degree": d, "dim": x.to_string()}))
                .collect::<Vec<_>>(),
            "total": self.total.to_string(),
            "stats": self.stats.iter()
                .map(|s| json!({
                    "degree": s.degree,
                    "ambient": s.ambient,
                    "generators": s.generators,
                    "rank": s.rank,
                }))
                .collect::<Vec<_>>(),
        });
        let obj = v.as_object_mut().expect("object");
        if multigraded {
            obj.insert(
                "multigraded".into(),
                self.multigraded
                    .iter()
                    .map(|(b, x)| json!({"multidegree": b, "dim": x.to_string()}))
                    .collect(),
            );
        }
        if let Some(traces) = &self.traces {
            obj.insert(
                "traces".into(),
                traces
                    .iter()
                    .rev()
                    .map(|(l, t)| json!({"cycle_type": l.parts(), "trace": t.to_string()}))
                    .collect(),
            );
        }
        if timings {
            obj.insert("wall_time_ms".into(), json!(self.wall_time.as_millis() as u64));
        }
        v
    }
}

/// One multidegree component.
struct Piece {
    beta: Vec<u32>,
    /// Sorted in decreasing order; column j is `monomials[j]`. Empty for
    /// full pieces.
    monomials: Vec<Mono>,
    index: HashMap<Mono, u32>,
    /// Reduced rows keyed by pivot column.
    reduced: HashMap<u32, Row>,
    ambient: u64,
    generators: u64,
    /// Every monomial lies in the ideal.
    full: bool,
}

impl Piece {
    fn quotient_dim(&self) -> u64 {
        if self.full {
            0
        } else {
            self.ambient - self.reduced.len() as u64
        }
    }

    fn rank(&self) -> u64 {
        self.ambient - self.quotient_dim()
    }
}

struct Ring {
    algebra: AlgebraPresentation,
    n: usize,
    d: usize,
}

impl Ring {
    fn var(&self, slot: usize, a: usize) -> usize {
        slot * self.d + a
    }

    fn slot_exponents(&self, m: Mono, slot: usize) -> Vec<u32> {
        (0..self.d).map(|a| exponent(m, self.var(slot, a))).collect()
    }

    fn slot_admissible(&self, m: Mono, slot: usize) -> bool {
        self.algebra.admits(&self.slot_exponents(m, slot))
    }

    /// Admissible monomials of multidegree β, decreasing.
    fn monomials(&self, beta: &[u32]) -> Vec<Mono> {
        let per_var: Vec<Vec<Vec<i64>>> = beta
            .iter()
            .map(|&b| compositions(b as i64, self.n))
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; self.d];
        'outer: loop {
            let mut m: Mono = 0;
            for a in 0..self.d {
                for (slot, &e) in per_var[a][choice[a]].iter().enumerate() {
                    m |= (e as Mono) << shift(self.var(slot, a));
                }
            }
            if (0..self.n).all(|s| self.slot_admissible(m, s)) {
                out.push(m);
            }
            for a in 0..self.d {
                choice[a] += 1;
                if choice[a] < per_var[a].len() {
                    continue 'outer;
                }
                choice[a] = 0;
            }
            break;
        }
        out.sort_unstable_by(|x, y| y.cmp(x));
        out
    }

    /// Number of admissible monomials of multidegree β, without listing them.
    fn count(&self, beta: &[u32]) -> u64 {
        let slot_vectors: Vec<Vec<u32>> = box_vectors(beta)
            .into_iter()
            .filter(|e| self.algebra.admits(e))
            .collect();
        let mut states: HashMap<Vec<u32>, u64> = HashMap::new();
        states.insert(vec![0; self.d], 1);
        for _ in 0..self.n {
            let mut next: HashMap<Vec<u32>, u64> = HashMap::new();
            for (sum, ways) in &states {
                for e in &slot_vectors {
                    let s: Vec<u32> = sum.iter().zip(e).map(|(x, y)| x + y).collect();
                    if s.iter().zip(beta).all(|(x, b)| x <= b) {
                        *next.entry(s).or_default() += ways;
                    }
                }
            }
            states = next;
        }
        states.get(beta).copied().unwrap_or(0)
    }

    /// Applies the slot permutation: the block of slot i moves to slot perm[i].
    fn permute(&self, m: Mono, perm: &[usize]) -> Mono {
        let mut out: Mono = 0;
        for (i, &j) in perm.iter().enumerate() {
            for a in 0..self.d {
                let e = exponent(m, self.var(i, a)) as Mono;
                out |= e << shift(self.var(j, a));
            }
        }
        out
    }
}

/// All vectors componentwise between 0 and `beta`.
fn box_vectors(beta: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in beta {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=b).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

fn build_piece(ring: &Ring, beta: Vec<u32>, lower: &HashMap<Vec<u32>, Piece>) -> Piece {
    let below = |a: usize| {
        let mut b = beta.clone();
        b[a] -= 1;
        &lower[&b]
    };
    let active: Vec<usize> = (0..ring.d).filter(|&a| beta[a] > 0).collect();
    if active.iter().any(|&a| below(a).quotient_dim() == 0) {
        // every monomial is x_{i,a} times a monomial of the zero piece
        return Piece {
            ambient: ring.count(&beta),
            beta,
            monomials: Vec::new(),
            index: HashMap::new(),
            reduced: HashMap::new(),
            generators: 0,
            full: true,
        };
    }
    let monomials = ring.monomials(&beta);
    let index: HashMap<Mono, u32> = monomials
        .iter()
        .enumerate()
        .map(|(j, &m)| (m, j as u32))
        .collect();
    let mut rows: Vec<Row> = Vec::new();
    for &a in &active {
        let prev = below(a);
        for row in prev.reduced.values() {
            for slot in 0..ring.n {
                let step: Mono = 1 << shift(ring.var(slot, a));
                let lifted: Row = row
                    .iter()
                    .filter_map(|(c, v)| {
                        let m = prev.monomials[*c as usize] + step;
                        ring.slot_admissible(m, slot).then(|| (index[&m], v.clone()))
                    })
                    .collect();
                if !lifted.is_empty() {
                    rows.push(lifted);
                }
            }
        }
    }
    if !active.is_empty() && ring.algebra.admits(&beta) {
        let mut generator: Row = (0..ring.n)
            .map(|slot| {
                let m = (0..ring.d).fold(0 as Mono, |m, a| {
                    m | (beta[a] as Mono) << shift(ring.var(slot, a))
                });
                (index[&m], ExactInt::one())
            })
            .collect();
        generator.sort_unstable_by_key(|e| e.0);
        rows.push(generator);
    }
    rows.sort_by(|x, y| x[0].0.cmp(&y[0].0).then(x.len().cmp(&y.len())));
    let generators = rows.len() as u64;
    let mut echelon = Echelon::default();
    for row in rows {
        echelon.insert(row);
        if echelon.rank() == monomials.len() {
            break;
        }
    }
    Piece {
        beta,
        ambient: monomials.len() as u64,
        monomials,
        index,
        reduced: echelon.into_reduced(),
        generators,
        full: false,
    }
}

/// DH_n(A) with its reduced bases, ready for trace queries.
pub struct DiagonalCoinvariants {
    ring: Ring,
    levels: Vec<HashMap<Vec<u32>, Piece>>,
    report: GradedReport,
}

impl DiagonalCoinvariants {
    pub fn compute(
        algebra: AlgebraPresentation,
        n: u32,
        config: CoinvariantConfig,
    ) -> Result<Self> {
        let algebra = algebra.validate()?;
        if n < 1 {
            return Err(Error::domain("DH_n needs n >= 1"));
        }
        if config.stall < 1 || config.cap < config.stall {
            return Err(Error::domain(format!(
                "need cap >= stall >= 1, got stall {} and cap {}",
                config.stall, config.cap
            )));
        }
        if config.cap > MAX_EXPONENT {
            return Err(Error::domain(format!("degree cap above {MAX_EXPONENT}")));
        }
        let d = algebra.num_vars();
        if n as usize * d > MAX_VARS {
            return Err(Error::Unsupported(format!(
                "{} ring variables; at most {MAX_VARS} supported",
                n as usize * d
            )));
        }
        let start = Instant::now();
        let ring = Ring {
            algebra,
            n: n as usize,
            d,
        };
        let mut report = GradedReport {
            algebra,
            n,
            dims: BTreeMap::new(),
            multigraded: BTreeMap::new(),
            total: ExactInt::zero(),
            converged: false,
            stall: config.stall,
            cap: config.cap,
            stats: Vec::new(),
            traces: None,
            wall_time: Duration::ZERO,
        };
        let origin = Piece {
            beta: vec![0; d],
            monomials: vec![0],
            index: [(0, 0)].into_iter().collect(),
            reduced: HashMap::new(),
            ambient: 1,
            generators: 0,
            full: false,
        };
        let mut levels = vec![[(origin.beta.clone(), origin)].into_iter().collect()];
        record_level(&mut report, 0, &levels[0]);
        let mut materialized: u128 = 1;
        let mut zero_streak = 0;
        for degree in 1..=config.cap {
            let betas: Vec<Vec<u32>> = compositions(degree as i64, d)
                .into_iter()
                .map(|b| b.into_iter().map(|e| e as u32).collect())
                .collect();
            let lower: &HashMap<Vec<u32>, Piece> = levels.last().unwrap();
            let pieces: Vec<Piece> = betas
                .into_par_iter()
                .map(|b| build_piece(&ring, b, lower))
                .collect();
            materialized += pieces.iter().map(|p| p.monomials.len() as u128).sum::<u128>();
            if materialized > config.budget {
                return Err(Error::BudgetExceeded {
                    needed: materialized,
                    budget: config.budget,
                });
            }
            let level: HashMap<Vec<u32>, Piece> =
                pieces.into_iter().map(|p| (p.beta.clone(), p)).collect();
            let dim = record_level(&mut report, degree, &level);
            levels.push(level);
            zero_streak = if dim == 0 { zero_streak + 1 } else { 0 };
            if zero_streak >= config.stall {
                report.converged = true;
                break;
            }
        }
        report.wall_time = start.elapsed();
        if !report.converged {
            return Err(Error::NonConvergence {
                cap: config.cap,
                partial: Box::new(report),
            });
        }
        Ok(DiagonalCoinvariants {
            ring,
            levels,
            report,
        })
    }

    pub fn report(&self) -> &GradedReport {
        &self.report
    }

    pub fn into_report(self) -> GradedReport {
        self.report
    }

    /// Trace of a permutation of the given cycle type on DH_n(A).
    pub fn trace(&self, cycle_type: &Partition) -> Result<ExactInt> {
        let n = self.ring.n;
        if cycle_type.size() as usize != n {
            return Err(Error::domain(format!("cycle type {cycle_type} does not partition {n}")));
        }
        let mut perm = Vec::with_capacity(n);
        let mut start = 0;
        for &c in cycle_type.parts() {
            let c = c as usize;
            for j in 0..c {
                perm.push(start + (j + 1) % c);
            }
            start += c;
        }
        let pieces: Vec<&Piece> = self
            .levels
            .iter()
            .flat_map(|l| l.values())
            .filter(|p| p.quotient_dim() > 0)
            .collect();
        let total: ExactRat = pieces
            .par_iter()
            .map(|p| self.piece_trace(p, &perm))
            .sum();
        rat_to_int(&total).map_err(|_| {
            Error::inconsistent(format!("trace {total} of type {cycle_type} is not an integer"))
        })
    }

    fn piece_trace(&self, piece: &Piece, perm: &[usize]) -> ExactRat {
        let mut acc = ExactRat::zero();
        for (s, &m) in piece.monomials.iter().enumerate() {
            let s = s as u32;
            if piece.reduced.contains_key(&s) {
                continue;
            }
            let t = piece.index[&self.ring.permute(m, perm)];
            if t == s {
                acc += ExactRat::one();
            } else if let Some(row) = piece.reduced.get(&t) {
                // normal form of a pivot monomial is −tail / lead
                if let Some(v) = coefficient(row, s) {
                    acc -= ExactRat::new(v.clone(), row[0].1.clone());
                }
            }
        }
        acc
    }

    /// Traces on every cycle type of n.
    pub fn traces(&self) -> Result<BTreeMap<Partition, ExactInt>> {
        Partition::all_of(self.ring.n as u32)
            .into_iter()
            .map(|l| {
                let t = self.trace(&l)?;
                Ok((l, t))
            })
            .collect()
    }

    /// Stores the traces in the report.
    pub fn attach_traces(&mut self) -> Result<()> {
        self.report.traces = Some(self.traces()?);
        Ok(())
    }

    /// Weight table of ∇ DH_n(A), which is W^A(n ω_1).
    pub fn weight_table(&self, r: usize) -> Result<WeightTable> {
        let traces = match &self.report.traces {
            Some(t) => t.clone(),
            None => self.traces()?,
        };
        weight_table_from_traces(&traces, self.ring.n as u32, r)
    }
}

fn record_level(report: &mut GradedReport, degree: u32, level: &HashMap<Vec<u32>, Piece>) -> u64 {
    let mut stats = DegreeStats {
        degree,
        ambient: 0,
        generators: 0,
        rank: 0,
    };
    let mut dim = 0u64;
    for p in level.values() {
        stats.ambient += p.ambient;
        stats.generators += p.generators;
        stats.rank += p.rank();
        let q = p.quotient_dim();
        dim += q;
        if q > 0 {
            report.multigraded.insert(p.beta.clone(), q.into());
        }
    }
    report.stats.push(stats);
    if dim > 0 {
        report.dims.insert(degree, dim.into());
        report.total += dim;
    }
    dim
}

/// Graded dimensions of DH_n(A).
pub fn dh_graded_dims(
    algebra: AlgebraPresentation,
    n: u32,
    config: CoinvariantConfig,
) -> Result<GradedReport> {
    Ok(DiagonalCoinvariants::compute(algebra, n, config)?.into_report())
}

/// Trace of a permutation of type `cycle_type` on DH_n(A).
pub fn dh_trace(algebra: AlgebraPresentation, n: u32, cycle_type: &Partition) -> Result<ExactInt> {
    DiagonalCoinvariants::compute(algebra, n, CoinvariantConfig::default_for(algebra, n))?
        .trace(cycle_type)
}

/// Weight table of W^A(n ω_1) for gl_r through DH_n(A).
pub fn weyl_weight_oracle(algebra: AlgebraPresentation, r: usize, n: u32) -> Result<WeightTable> {
    DiagonalCoinvariants::compute(algebra, n, CoinvariantConfig::default_for(algebra, n))?
        .weight_table(r)
}

/// Candidate trace of a permutation with cycle lengths c_i on DH_n(C[x,y,z]),
/// reading the bracket as an ordinary binomial with k_i = c_i − 1:
/// 2^{n−Σk}(n+1)^{n−2−Σk} Π C(2k_i+1, k_i+1). This reading is an unverified
/// interpretation and is only reported next to computed traces.
pub fn candidate_trace_poly3(cycle_type: &Partition) -> ExactRat {
    let n = cycle_type.size() as i64;
    let ks: Vec<i64> = cycle_type.parts().iter().map(|&c| c as i64 - 1).collect();
    let sum_k: i64 = ks.iter().sum();
    let pow = |base: i64, e: i64| -> ExactRat {
        let b = ExactRat::from_integer(base.into());
        num_traits::pow::Pow::pow(&b, e as i32)
    };
    let mut v = pow(2, n - sum_k) * pow(n + 1, n - 2 - sum_k);
    for &k in &ks {
        v *= ExactRat::from_integer(crate::exactnum::binomial(2 * k + 1, k + 1));
    }
    v
}

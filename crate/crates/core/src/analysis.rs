//! Exact security analysis of splitting authentication codes and AMD codes.
//!
//! Keys are uniform over blocks and encodings are equiprobable within a
//! part, so key `B` and source `j` emit message `t in B_j` with probability
//! `Pr(s_j) / (b |B_j|)`.
//!
//! The substitution success of a strategy `sigma` is separable:
//! `eps(sigma) = sum_t gain(t, sigma(t))`, where `gain(t, u)` collects
//! `Pr(s_j) / (b |B_j|)` over every block with `t in B_j` and `u` in another
//! part. The optimal strategy therefore picks, for each message on its own,
//! the replacement `u != t` with the largest gain.

use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ENUMERATION_CAP;
use crate::designs::{AmdCode, SourceDistribution, SplittingSystem};
use crate::{Error, Rational, Result};

/// Default seed for sampled strategy checks.
pub const DEFAULT_SEED: u64 = 0x5EED;
/// Exhaustive strategy enumeration is used while `(v-1)^v` stays at or
/// below this.
pub const EXHAUSTIVE_STRATEGY_LIMIT: u64 = 10_000_000;
/// Number of random strategies drawn when enumeration is too large.
pub const DEFAULT_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Substitution strategy: `strategy[t]` replaces message `t`.
    Strategy(Vec<usize>),
    /// Optimal strategy against a known source.
    SourceStrategy { source: usize, strategy: Vec<usize> },
    /// Impersonation message.
    Message(usize),
    /// AMD offset, as a group enumeration index.
    Offset(usize),
    /// AMD offset against a known source.
    SourceOffset { source: usize, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackReport {
    pub value: Rational,
    pub witness: Witness,
    pub per_source: Option<Vec<Rational>>,
}

fn check_m(sys: &SplittingSystem, dist: &SourceDistribution) -> Result<()> {
    if sys.m() != dist.m() {
        return Err(Error::SourceCountMismatch {
            expected: sys.m(),
            found: dist.m(),
        });
    }
    Ok(())
}

/// Dense `v x v` table of `gain(t, u)`.
#[derive(Debug, Clone)]
pub struct SubstitutionGains {
    v: usize,
    gains: Vec<Rational>,
}

impl SubstitutionGains {
    pub fn new(sys: &SplittingSystem, dist: &SourceDistribution) -> Result<Self> {
        check_m(sys, dist)?;
        let v = sys.v();
        let b = sys.b() as i128;
        let mut gains = alloc::vec![Rational::zero(); v * v];
        for blk in sys.blocks() {
            for (j, part) in blk.parts().iter().enumerate() {
                let p = dist.probs()[j];
                if p.is_zero() {
                    continue;
                }
                let w = p / Rational::from_integer(b * part.len() as i128);
                for (j2, other) in blk.parts().iter().enumerate() {
                    if j2 == j {
                        continue;
                    }
                    for &t in part {
                        for &u in other {
                            gains[t * v + u] += w;
                        }
                    }
                }
            }
        }
        Ok(SubstitutionGains { v, gains })
    }

    pub fn get(&self, t: usize, u: usize) -> Rational {
        self.gains[t * self.v + u]
    }

    /// Success of a strategy, `sum_t gain(t, strategy[t])`.
    pub fn evaluate(&self, strategy: &[usize]) -> Rational {
        strategy
            .iter()
            .enumerate()
            .map(|(t, &u)| self.get(t, u))
            .sum()
    }

    /// Per-message best replacement (ties to the smallest `u != t`).
    pub fn best_strategy(&self) -> (Vec<usize>, Rational) {
        let mut strategy = Vec::with_capacity(self.v);
        let mut total = Rational::zero();
        for t in 0..self.v {
            let mut best: Option<(usize, Rational)> = None;
            for u in (0..self.v).filter(|&u| u != t) {
                let g = self.get(t, u);
                if best.is_none_or(|(_, bg)| g > bg) {
                    best = Some((u, g));
                }
            }
            let (u, g) = best.expect("a splitting system has at least two points");
            strategy.push(u);
            total += g;
        }
        (strategy, total)
    }

    /// Gains scaled to integers over a common denominator.
    fn scaled(&self) -> (Vec<i128>, i128) {
        let den = self.gains.iter().fold(1i128, |acc, g| acc.lcm(g.denom()));
        let nums = self
            .gains
            .iter()
            .map(|g| g.numer() * (den / g.denom()))
            .collect();
        (nums, den)
    }
}

/// Success probability of `strategy` evaluated straight from the sets
/// `X_{B,j} = { t in B_j : strategy[t] in B_j' for some j' != j }`.
pub fn strategy_success(
    sys: &SplittingSystem,
    dist: &SourceDistribution,
    strategy: &[usize],
) -> Result<Rational> {
    check_m(sys, dist)?;
    if strategy.len() != sys.v() {
        return Err(Error::InvalidPermutation(alloc::format!(
            "strategy covers {} messages, system has {}",
            strategy.len(),
            sys.v()
        )));
    }
    let b = sys.b() as i128;
    let mut total = Rational::zero();
    for blk in sys.blocks() {
        for (j, part) in blk.parts().iter().enumerate() {
            let hits = part
                .iter()
                .filter(|&&t| blk.position_of(strategy[t]).is_some_and(|j2| j2 != j))
                .count() as i128;
            total += dist.probs()[j] * Rational::new(hits, b * part.len() as i128);
        }
    }
    Ok(total)
}

/// Largest substitution success over all strategies with `sigma(t) != t`.
pub fn substitution_probability(
    sys: &SplittingSystem,
    dist: &SourceDistribution,
) -> Result<AttackReport> {
    let gains = SubstitutionGains::new(sys, dist)?;
    let (strategy, value) = gains.best_strategy();
    Ok(AttackReport {
        value,
        witness: Witness::Strategy(strategy),
        per_source: None,
    })
}

/// Worst case over all source distributions. Success is affine in the
/// distribution, so the maximum is attained at a point mass.
pub fn substitution_probability_any_distribution(sys: &SplittingSystem) -> Result<AttackReport> {
    let mut per_source = Vec::with_capacity(sys.m());
    let mut best: Option<(usize, Vec<usize>, Rational)> = None;
    for j in 0..sys.m() {
        let r = substitution_probability(sys, &SourceDistribution::point_mass(sys.m(), j))?;
        let Witness::Strategy(strategy) = r.witness else {
            unreachable!()
        };
        per_source.push(r.value);
        if best.as_ref().is_none_or(|(_, _, v)| r.value > *v) {
            best = Some((j, strategy, r.value));
        }
    }
    let (source, strategy, value) = best.expect("m >= 2");
    Ok(AttackReport {
        value,
        witness: Witness::SourceStrategy { source, strategy },
        per_source: Some(per_source),
    })
}

/// Largest fraction of keys accepting a single injected message.
pub fn impersonation_probability(sys: &SplittingSystem) -> AttackReport {
    let r = sys.replication();
    let (t, &count) = r
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|&(_, c)| *c)
        .expect("v >= 2");
    AttackReport {
        value: Rational::new(count as i128, sys.b() as i128),
        witness: Witness::Message(t),
        per_source: None,
    }
}

/// Lower bound on substitution success: the minimum over blocks of
/// `(|B| - max_j |B_j|) / (v - 1)`.
pub fn blundo_bound(sys: &SplittingSystem) -> Rational {
    sys.blocks()
        .iter()
        .map(|b| {
            let biggest = b.parts().iter().map(Vec::len).max().unwrap_or(0);
            Rational::new((b.size() - biggest) as i128, sys.v() as i128 - 1)
        })
        .min()
        .expect("b >= 1")
}

/// Lower bound on impersonation success: smallest block over `v`.
pub fn simmons_bound(sys: &SplittingSystem) -> Rational {
    let smallest = sys.blocks().iter().map(|b| b.size()).min().expect("b >= 1");
    Rational::new(smallest as i128, sys.v() as i128)
}

/// Lower bound `(1/b) sum_B (|B| - sum_j Pr(s_j) |B_j|) / (v - 1)`, the
/// mean success of the `v - 1` cyclic shift strategies.
pub fn new_substitution_bound(
    sys: &SplittingSystem,
    dist: &SourceDistribution,
) -> Result<Rational> {
    check_m(sys, dist)?;
    let mut total = Rational::zero();
    for blk in sys.blocks() {
        let avg: Rational = blk
            .parts()
            .iter()
            .zip(dist.probs())
            .map(|(p, pr)| pr * Rational::from_integer(p.len() as i128))
            .sum();
        total += Rational::from_integer(blk.size() as i128) - avg;
    }
    Ok(total / Rational::from_integer(sys.b() as i128 * (sys.v() as i128 - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageDistribution {
    /// `per_source[j][t] = Pr(t | s_j)`.
    pub per_source: Vec<Vec<Rational>>,
    /// `overall[t] = Pr(t)`.
    pub overall: Vec<Rational>,
}

pub fn message_distribution(
    sys: &SplittingSystem,
    dist: &SourceDistribution,
) -> Result<MessageDistribution> {
    check_m(sys, dist)?;
    let conditional = conditional_messages(sys);
    let overall = (0..sys.v())
        .map(|t| {
            conditional
                .iter()
                .zip(dist.probs())
                .map(|(row, p)| row[t] * p)
                .sum()
        })
        .collect();
    Ok(MessageDistribution {
        per_source: conditional,
        overall,
    })
}

fn conditional_messages(sys: &SplittingSystem) -> Vec<Vec<Rational>> {
    let b = sys.b() as i128;
    let mut rows = alloc::vec![alloc::vec![Rational::zero(); sys.v()]; sys.m()];
    for blk in sys.blocks() {
        for (j, part) in blk.parts().iter().enumerate() {
            let w = Rational::new(1, b * part.len() as i128);
            for &t in part {
                rows[j][t] += w;
            }
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecrecyReport {
    /// `Pr(s | t) = Pr(s)` under the given distribution (or universally,
    /// when no distribution was given).
    pub holds: bool,
    /// `Pr(t | s_j)` independent of `j` for every `t`.
    pub universal: bool,
    /// A violating `(source, message)` pair.
    pub witness: Option<(usize, usize)>,
}

pub fn perfect_secrecy(
    sys: &SplittingSystem,
    dist: Option<&SourceDistribution>,
) -> Result<SecrecyReport> {
    let cond = conditional_messages(sys);
    let m = Rational::from_integer(sys.m() as i128);
    let mut universal_witness = None;
    'outer: for t in 0..sys.v() {
        let mean: Rational = cond.iter().map(|row| row[t]).sum::<Rational>() / m;
        for (j, row) in cond.iter().enumerate() {
            if row[t] != mean {
                universal_witness = Some((j, t));
                break 'outer;
            }
        }
    }
    let universal = universal_witness.is_none();
    let Some(dist) = dist else {
        return Ok(SecrecyReport {
            holds: universal,
            universal,
            witness: universal_witness,
        });
    };
    check_m(sys, dist)?;
    let mut witness = None;
    'check: for t in 0..sys.v() {
        let pt: Rational = cond
            .iter()
            .zip(dist.probs())
            .map(|(row, p)| row[t] * p)
            .sum();
        if pt.is_zero() {
            continue;
        }
        for (j, p) in dist.probs().iter().enumerate() {
            if cond[j][t] * p / pt != *p {
                witness = Some((j, t));
                break 'check;
            }
        }
    }
    Ok(SecrecyReport {
        holds: witness.is_none(),
        universal,
        witness,
    })
}

/// `|X_s^Delta|` for every source, given the owner table.
fn amd_hits(code: &AmdCode, owner: &[Option<usize>], delta: usize) -> Vec<usize> {
    let group = code.group();
    code.encodings()
        .iter()
        .enumerate()
        .map(|(s, set)| {
            set.iter()
                .filter(|&&g| owner[group.add_indices(g, delta)].is_some_and(|s2| s2 != s))
                .count()
        })
        .collect()
}

fn amd_owner(code: &AmdCode) -> Result<Vec<Option<usize>>> {
    let n = code.group().order();
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            order: n,
            cap: ENUMERATION_CAP,
        });
    }
    if n < 2 {
        return Err(Error::TrivialGroup);
    }
    let mut owner = alloc::vec![None; n as usize];
    for (s, set) in code.encodings().iter().enumerate() {
        for &g in set {
            owner[g] = Some(s);
        }
    }
    Ok(owner)
}

/// Weak security: uniform sources unknown to the adversary,
/// `eps_Delta = sum_s |X_s^Delta| / (m |A(s)|)`, maximised over
/// `Delta != 0`.
pub fn amd_weak_epsilon(code: &AmdCode) -> Result<AttackReport> {
    let owner = amd_owner(code)?;
    let m = code.m() as i128;
    let mut best: Option<(usize, Rational, Vec<Rational>)> = None;
    for delta in 1..owner.len() {
        let per: Vec<Rational> = amd_hits(code, &owner, delta)
            .iter()
            .zip(code.encodings())
            .map(|(&x, a)| Rational::new(x as i128, a.len() as i128))
            .collect();
        let eps = per.iter().sum::<Rational>() / Rational::from_integer(m);
        if best.as_ref().is_none_or(|(_, e, _)| eps > *e) {
            best = Some((delta, eps, per));
        }
    }
    let (delta, value, per) = best.expect("group has a nonzero element");
    Ok(AttackReport {
        value,
        witness: Witness::Offset(delta),
        per_source: Some(per),
    })
}

/// Strong security: the adversary knows the source,
/// `eps_{s,Delta} = |X_s^Delta| / |A(s)|`.
pub fn amd_strong_epsilon(code: &AmdCode) -> Result<AttackReport> {
    let owner = amd_owner(code)?;
    let mut best: Option<(usize, usize, Rational)> = None;
    let mut per_source = alloc::vec![Rational::zero(); code.m()];
    for delta in 1..owner.len() {
        let hits = amd_hits(code, &owner, delta);
        for (s, (&x, a)) in hits.iter().zip(code.encodings()).enumerate() {
            let eps = Rational::new(x as i128, a.len() as i128);
            if eps > per_source[s] {
                per_source[s] = eps;
            }
            if best.is_none_or(|(_, _, e)| eps > e) {
                best = Some((s, delta, eps));
            }
        }
    }
    let (source, offset, value) = best.expect("group has a nonzero element");
    Ok(AttackReport {
        value,
        witness: Witness::SourceOffset { source, offset },
        per_source: Some(per_source),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmdModel {
    Weak,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ROptimality {
    pub c_regular: bool,
    pub c: Option<usize>,
    pub epsilon: Rational,
    /// `c (m - 1) / (n - 1)`, only for c-regular codes.
    pub bound: Option<Rational>,
    /// `None` when the code is not c-regular.
    pub r_optimal: Option<bool>,
}

pub fn amd_r_optimality(code: &AmdCode, model: AmdModel) -> Result<ROptimality> {
    let epsilon = match model {
        AmdModel::Weak => amd_weak_epsilon(code)?.value,
        AmdModel::Strong => amd_strong_epsilon(code)?.value,
    };
    let c = code.c_regular();
    let bound = c.map(|c| {
        Rational::new(
            c as i128 * (code.m() as i128 - 1),
            code.group().order() as i128 - 1,
        )
    });
    Ok(ROptimality {
        c_regular: c.is_some(),
        c,
        epsilon,
        bound,
        r_optimal: bound.map(|b| b == epsilon),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightnessOptions {
    pub seed: u64,
    pub samples: usize,
    pub exhaustive_limit: u64,
}

impl Default for TightnessOptions {
    fn default() -> Self {
        TightnessOptions {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            exhaustive_limit: EXHAUSTIVE_STRATEGY_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessReport {
    /// Optimal substitution success equals the lower bound.
    pub tight: bool,
    pub optimum: Rational,
    pub bound: Rational,
    /// Every checked strategy with `sigma(t) != t` succeeds with the
    /// optimum probability.
    pub all_derangements_equal: bool,
    pub exhaustive: bool,
    pub strategies_checked: u64,
    /// A strategy whose success differs from the optimum.
    pub counterexample: Option<Vec<usize>>,
}

/// Compares the optimum with [`new_substitution_bound`] and checks whether
/// every strategy avoiding fixed points does equally well, exhaustively
/// when `(v-1)^v` is within the limit and by seeded sampling otherwise.
pub fn bound_tightness_check(
    sys: &SplittingSystem,
    dist: &SourceDistribution,
    opts: &TightnessOptions,
) -> Result<TightnessReport> {
    let gains = SubstitutionGains::new(sys, dist)?;
    let (_, optimum) = gains.best_strategy();
    let bound = new_substitution_bound(sys, dist)?;
    let (scaled, den) = gains.scaled();
    let v = sys.v();
    let target = optimum * Rational::from_integer(den);
    debug_assert!(target.is_integer());
    let target = target.to_integer();
    let value =
        |s: &[usize]| -> i128 { s.iter().enumerate().map(|(t, &u)| scaled[t * v + u]).sum() };

    let space = (v as u64 - 1)
        .checked_pow(v as u32)
        .filter(|&n| n <= opts.exhaustive_limit);
    let mut counterexample = None;
    let mut checked = 0u64;
    let exhaustive = space.is_some();
    if exhaustive {
        // Odometer over choice[t] in 0..v-1, mapped to u != t.
        let mut choice = alloc::vec![0usize; v];
        let mut strategy: Vec<usize> = (0..v).map(|t| if t == 0 { 1 } else { 0 }).collect();
        loop {
            checked += 1;
            if value(&strategy) != target {
                counterexample = Some(strategy.clone());
                break;
            }
            let mut t = 0;
            loop {
                if t == v {
                    break;
                }
                choice[t] += 1;
                if choice[t] < v - 1 {
                    strategy[t] = skip(t, choice[t]);
                    break;
                }
                choice[t] = 0;
                strategy[t] = skip(t, 0);
                t += 1;
            }
            if t == v {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut strategy = alloc::vec![0usize; v];
        for _ in 0..opts.samples {
            for (t, slot) in strategy.iter_mut().enumerate() {
                *slot = skip(t, rng.gen_range(0..v - 1));
            }
            checked += 1;
            if value(&strategy) != target {
                counterexample = Some(strategy.clone());
                break;
            }
        }
    }
    debug_assert!(!(optimum - bound).is_negative());
    Ok(TightnessReport {
        tight: optimum == bound,
        optimum,
        bound,
        all_derangements_equal: counterexample.is_none(),
        exhaustive,
        strategies_checked: checked,
        counterexample,
    })
}

/// The `i`-th point of `0..v` other than `t`.
fn skip(t: usize, i: usize) -> usize {
    if i < t {
        i
    } else {
        i + 1
    }
}

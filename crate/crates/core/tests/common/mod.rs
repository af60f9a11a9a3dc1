//! Reference implementations written straight from the definitions, used
//! to cross-check the library.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use splitcode_core::designs::{Block, SplittingSystem};
use splitcode_core::{ratio, Rational};

/// Success probability of substitution strategy `sigma` from the joint
/// distribution `Pr(k, s_j, t) = Pr(s_j) / (b |B_j|)`: the attack wins when
/// `sigma(t)` is valid under `k` for a source other than `s_j`.
pub fn success(sys: &SplittingSystem, probs: &[Rational], sigma: &[usize]) -> Rational {
    let b = sys.b() as i128;
    let mut total = Rational::from_integer(0);
    for blk in sys.blocks() {
        for (j, part) in blk.parts().iter().enumerate() {
            for &t in part {
                let u = sigma[t];
                let wins = blk
                    .parts()
                    .iter()
                    .enumerate()
                    .any(|(i, p)| i != j && p.contains(&u));
                if wins {
                    total += probs[j] / ratio(b * part.len() as i128, 1);
                }
            }
        }
    }
    total
}

/// Maximum of [`success`] over every strategy with `sigma(t) != t`.
pub fn exhaustive_substitution(sys: &SplittingSystem, probs: &[Rational]) -> (Rational, u64) {
    let v = sys.v();
    let mut digits = vec![0usize; v];
    let mut best = Rational::from_integer(0);
    let mut count = 0;
    loop {
        let sigma: Vec<usize> = digits
            .iter()
            .enumerate()
            .map(|(t, &d)| if d < t { d } else { d + 1 })
            .collect();
        best = best.max(success(sys, probs, &sigma));
        count += 1;
        let mut i = 0;
        loop {
            if i == v {
                return (best, count);
            }
            digits[i] += 1;
            if digits[i] < v - 1 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Best substitution obtained message by message: for each observed `t`,
/// the replacement `u != t` maximising the joint probability of winning.
pub fn separable_substitution(sys: &SplittingSystem, probs: &[Rational]) -> Rational {
    let v = sys.v();
    let b = sys.b() as i128;
    let mut total = Rational::from_integer(0);
    for t in 0..v {
        let mut best = Rational::from_integer(0);
        for u in (0..v).filter(|&u| u != t) {
            let mut g = Rational::from_integer(0);
            for blk in sys.blocks() {
                let (Some(jt), Some(ju)) = (blk.position_of(t), blk.position_of(u)) else {
                    continue;
                };
                if jt != ju {
                    g += probs[jt] / ratio(b * blk.part(jt).len() as i128, 1);
                }
            }
            best = best.max(g);
        }
        total += best;
    }
    total
}

/// `max_t Pr(t is valid under the key)`.
pub fn impersonation(sys: &SplittingSystem) -> Rational {
    (0..sys.v())
        .map(|t| {
            ratio(
                sys.blocks()
                    .iter()
                    .filter(|b| b.position_of(t).is_some())
                    .count() as i128,
                sys.b() as i128,
            )
        })
        .max()
        .unwrap()
}

/// `Pr(t | s_j)` by summing over keys.
pub fn conditional(sys: &SplittingSystem, j: usize, t: usize) -> Rational {
    let b = sys.b() as i128;
    sys.blocks()
        .iter()
        .filter(|blk| blk.part(j).contains(&t))
        .map(|blk| ratio(1, b * blk.part(j).len() as i128))
        .sum()
}

/// Cyclic AMD code success for offset `delta` against source `s`.
pub fn amd_hit(n: usize, enc: &[Vec<usize>], s: usize, delta: usize) -> Rational {
    let hits = enc[s]
        .iter()
        .filter(|&&a| {
            let x = (a + delta) % n;
            enc.iter()
                .enumerate()
                .any(|(i, set)| i != s && set.contains(&x))
        })
        .count();
    ratio(hits as i128, enc[s].len() as i128)
}

pub fn amd_weak(n: usize, enc: &[Vec<usize>]) -> Rational {
    let m = enc.len() as i128;
    (1..n)
        .map(|d| {
            (0..enc.len())
                .map(|s| amd_hit(n, enc, s, d))
                .sum::<Rational>()
                / ratio(m, 1)
        })
        .max()
        .unwrap()
}

pub fn amd_strong(n: usize, enc: &[Vec<usize>]) -> Rational {
    (1..n)
        .flat_map(|d| (0..enc.len()).map(move |s| (s, d)))
        .map(|(s, d)| amd_hit(n, enc, s, d))
        .max()
        .unwrap()
}

/// All translates `g + B` of the base blocks over `Z_v`, kept even when
/// they repeat.
pub fn cyclic_development(v: usize, m: usize, base: &[Vec<Vec<usize>>]) -> SplittingSystem {
    let blocks = (0..v)
        .flat_map(|g| {
            base.iter().map(move |blk| {
                Block::new(
                    blk.iter()
                        .map(|p| p.iter().map(|&x| (x + g) % v).collect())
                        .collect(),
                )
            })
        })
        .collect();
    SplittingSystem::new(v, m, blocks).unwrap()
}

/// Random base block over `Z_v`: `m` disjoint parts of size 1 to 3.
pub fn random_base_block(rng: &mut impl Rng, v: usize, m: usize) -> Vec<Vec<usize>> {
    let mut pts: Vec<usize> = (0..v).collect();
    pts.shuffle(rng);
    let mut it = pts.into_iter();
    let mut parts = Vec::with_capacity(m);
    let mut left = v;
    for j in 0..m {
        let room = left - (m - j - 1);
        let size = rng.gen_range(1..=3.min(room));
        parts.push(it.by_ref().take(size).collect());
        left -= size;
    }
    parts
}

/// Random splitting system on `v` points: `b` blocks of random disjoint
/// nonempty parts.
pub fn random_system(rng: &mut impl Rng, v: usize, m: usize, b: usize) -> SplittingSystem {
    let blocks = (0..b)
        .map(|_| {
            let mut pts: Vec<usize> = (0..v).collect();
            pts.shuffle(rng);
            let n = rng.gen_range(m..=v);
            let mut parts: Vec<Vec<usize>> = pts[..m].iter().map(|&x| vec![x]).collect();
            for &x in &pts[m..n] {
                parts[rng.gen_range(0..m)].push(x);
            }
            Block::new(parts)
        })
        .collect();
    SplittingSystem::new(v, m, blocks).unwrap()
}

pub fn uniform(m: usize) -> Vec<Rational> {
    vec![ratio(1, m as i128); m]
}

/// Weights `1, 2, ..., m`, normalised.
pub fn increasing(m: usize) -> Vec<Rational> {
    let total = (m * (m + 1) / 2) as i128;
    (1..=m).map(|i| ratio(i as i128, total)).collect()
}

/// Weight `m` on the first source and 1 on the rest, normalised.
pub fn front_loaded(m: usize) -> Vec<Rational> {
    let total = (2 * m - 1) as i128;
    (0..m)
        .map(|i| ratio(if i == 0 { m as i128 } else { 1 }, total))
        .collect()
}

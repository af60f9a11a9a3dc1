//! Data model: splitting set systems, GDDs, AMD codes and source
//! distributions.
//!
//! A splitting set system doubles as an authentication code with
//! equiprobable encoding: points are messages, each block is a key, and
//! part `j` of a block is the set of encodings of source `j` under that key.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::algebra::{AbelianGroup, GroupElement};
use crate::{Error, Rational, Result};

/// An ordered list of pairwise disjoint point sets.
///
/// Parts keep the order they were given in so that documents round-trip;
/// use [`Block::canonical`] when comparing blocks as tuples of sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    parts: Vec<Vec<usize>>,
}

impl Block {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        Block { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &[usize] {
        &self.parts[j]
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    /// Total number of points, `|B|`.
    pub fn size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().flatten().copied()
    }

    /// Index of the part containing `x`.
    pub fn position_of(&self, x: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&x))
    }

    /// Same tuple of sets with every part sorted.
    pub fn canonical(&self) -> Block {
        let parts = self
            .parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                p
            })
            .collect();
        Block { parts }
    }

    /// Applies `f` to every point, keeping part order and in-part order.
    pub fn map_points(&self, mut f: impl FnMut(usize) -> usize) -> Block {
        Block {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|&x| f(x)).collect())
                .collect(),
        }
    }

    /// Reorders the parts: new part `i` is old part `perm[i]`.
    pub fn permute_parts(&self, perm: &[usize]) -> Block {
        Block {
            parts: perm.iter().map(|&i| self.parts[i].clone()).collect(),
        }
    }

    fn validate(&self, index: usize, v: usize, m: usize) -> Result<()> {
        if self.parts.len() != m {
            return Err(Error::PartCount {
                block: index,
                expected: m,
                found: self.parts.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for (j, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::EmptyPart {
                    block: index,
                    part: j,
                });
            }
            for &x in part {
                if x >= v {
                    return Err(Error::PointOutOfRange { point: x, v });
                }
                if !seen.insert(x) {
                    return Err(Error::OverlappingParts {
                        block: index,
                        point: x,
                    });
                }
            }
        }
        Ok(())
    }
}

/// `(v, b, m)`-splitting set system on points `0..v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingSystem {
    v: usize,
    m: usize,
    blocks: Vec<Block>,
}

impl SplittingSystem {
    pub fn new(v: usize, m: usize, blocks: Vec<Block>) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewSources(m));
        }
        if blocks.is_empty() {
            return Err(Error::EmptyBlockList);
        }
        for (i, b) in blocks.iter().enumerate() {
            b.validate(i, v, m)?;
        }
        Ok(SplittingSystem { v, m, blocks })
    }

    /// Convenience constructor from nested vectors.
    pub fn from_parts(v: usize, m: usize, blocks: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        Self::new(v, m, blocks.into_iter().map(Block::new).collect())
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    /// `Some(c)` if every part of every block has exactly `c` points.
    pub fn c_splitting_profile(&self) -> Option<usize> {
        let c = self.blocks[0].parts[0].len();
        self.blocks
            .iter()
            .flat_map(|b| b.parts.iter())
            .all(|p| p.len() == c)
            .then_some(c)
    }

    /// Number of blocks containing each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = alloc::vec![0; self.v];
        for x in self.blocks.iter().flat_map(Block::points) {
            r[x] += 1;
        }
        r
    }

    /// Pairs `(later, earlier)` of block indices that are equal as ordered
    /// tuples of sets.
    pub fn repeated_blocks(&self) -> Vec<(usize, usize)> {
        let mut first = BTreeMap::new();
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            match first.entry(b.canonical()) {
                alloc::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(i);
                }
                alloc::collections::btree_map::Entry::Occupied(e) => out.push((i, *e.get())),
            }
        }
        out
    }

    /// The same system with block `i`'s parts permuted by `perms[i]`.
    pub fn with_part_orders(&self, perms: &[Vec<usize>]) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .zip(perms)
            .map(|(b, p)| b.permute_parts(p))
            .collect();
        Self::new(self.v, self.m, blocks)
    }
}

/// Parameter identities of a `(v, m x c, lambda)`-splitting BIBD.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibdParams {
    pub v: usize,
    pub m: usize,
    pub c: usize,
    pub lambda: usize,
    /// Replication number `lambda (v-1) / ((m-1) c)`.
    pub r: Rational,
    /// Block count `lambda v (v-1) / (m (m-1) c^2)`.
    pub b: Rational,
}

impl BibdParams {
    pub fn new(v: usize, m: usize, c: usize, lambda: usize) -> Self {
        let (vi, mi, ci, li) = (v as i128, m as i128, c as i128, lambda as i128);
        BibdParams {
            v,
            m,
            c,
            lambda,
            r: Rational::new(li * (vi - 1), (mi - 1) * ci),
            b: Rational::new(li * vi * (vi - 1), mi * (mi - 1) * ci * ci),
        }
    }

    /// `lambda = b m c (mc - c) / (v (v-1))` for a system with `b` blocks.
    pub fn lambda_from_block_count(b: usize, v: usize, m: usize, c: usize) -> Rational {
        let (bi, vi, mi, ci) = (b as i128, v as i128, m as i128, c as i128);
        Rational::new(bi * mi * ci * (mi * ci - ci), vi * (vi - 1))
    }

    pub fn is_integral(&self) -> bool {
        self.r.is_integer() && self.b.is_integer()
    }
}

/// AMD code: pairwise disjoint encoding sets in an abelian group.
///
/// Encodings are stored as enumeration indices of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmdCode {
    group: AbelianGroup,
    encodings: Vec<Vec<usize>>,
}

impl AmdCode {
    pub fn new(group: AbelianGroup, encodings: Vec<Vec<usize>>) -> Result<Self> {
        if encodings.is_empty() {
            return Err(Error::TooFewSources(0));
        }
        let n = group.order();
        let mut seen = BTreeSet::new();
        for (s, set) in encodings.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyPart { block: 0, part: s });
            }
            for &g in set {
                if g as u64 >= n {
                    return Err(Error::PointOutOfRange {
                        point: g,
                        v: n as usize,
                    });
                }
                if !seen.insert(g) {
                    return Err(Error::OverlappingParts { block: 0, point: g });
                }
            }
        }
        Ok(AmdCode { group, encodings })
    }

    pub fn from_elements(group: AbelianGroup, encodings: Vec<Vec<GroupElement>>) -> Result<Self> {
        let idx = encodings
            .iter()
            .map(|set| {
                set.iter()
                    .map(|e| group.index_of(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, idx)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn encodings(&self) -> &[Vec<usize>] {
        &self.encodings
    }

    pub fn m(&self) -> usize {
        self.encodings.len()
    }

    /// `Some(c)` when every source has exactly `c` encodings.
    pub fn c_regular(&self) -> Option<usize> {
        let c = self.encodings[0].len();
        self.encodings.iter().all(|a| a.len() == c).then_some(c)
    }
}

/// Probability vector over the `m` sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDistribution {
    probs: Vec<Rational>,
}

impl SourceDistribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no sources".to_string()));
        }
        if probs.iter().any(|p| *p < Rational::zero()) {
            return Err(Error::InvalidDistribution(
                "negative probability".to_string(),
            ));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(alloc::format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(SourceDistribution { probs })
    }

    pub fn uniform(m: usize) -> Self {
        SourceDistribution {
            probs: alloc::vec![Rational::new(1, m as i128); m],
        }
    }

    /// All mass on source `j`.
    pub fn point_mass(m: usize, j: usize) -> Self {
        let mut probs = alloc::vec![Rational::zero(); m];
        probs[j] = Rational::one();
        SourceDistribution { probs }
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn m(&self) -> usize {
        self.probs.len()
    }
}

/// Group divisible design on points `0..n`.
///
/// Construction only enforces structure (partition, block size, range,
/// distinct points); the design property itself is checked by
/// [`crate::verify::check_gdd`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gdd {
    n: usize,
    design_groups: Vec<Vec<usize>>,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl Gdd {
    pub fn new(
        n: usize,
        design_groups: Vec<Vec<usize>>,
        k: usize,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut owner = alloc::vec![false; n];
        for &x in design_groups.iter().flatten() {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, v: n });
            }
            if core::mem::replace(&mut owner[x], true) {
                return Err(Error::NotPartition { point: x });
            }
        }
        if let Some(x) = owner.iter().position(|&o| !o) {
            return Err(Error::NotPartition { point: x });
        }
        for (i, blk) in blocks.iter().enumerate() {
            if blk.len() != k {
                return Err(Error::BlockSize {
                    block: i,
                    expected: k,
                    found: blk.len(),
                });
            }
            for (a, &x) in blk.iter().enumerate() {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, v: n });
                }
                if blk[..a].contains(&x) {
                    return Err(Error::OverlappingParts { block: i, point: x });
                }
            }
        }
        Ok(Gdd {
            n,
            design_groups,
            k,
            blocks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn design_groups(&self) -> &[Vec<usize>] {
        &self.design_groups
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Design group index of every point.
    pub fn group_of(&self) -> Vec<usize> {
        let mut g = alloc::vec![0; self.n];
        for (i, grp) in self.design_groups.iter().enumerate() {
            for &x in grp {
                g[x] = i;
            }
        }
        g
    }

    pub fn replication(&self) -> Vec<usize> {
        let mut r = alloc::vec![0; self.n];
        for &x in self.blocks.iter().flatten() {
            r[x] += 1;
        }
        r
    }
}

/// A GDD whose blocks are read as ordered `k`-tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGdd(Gdd);

impl OrderedGdd {
    pub fn new(gdd: Gdd) -> Self {
        OrderedGdd(gdd)
    }

    pub fn gdd(&self) -> &Gdd {
        &self.0
    }

    pub fn into_gdd(self) -> Gdd {
        self.0
    }

    /// `counts[x][j]`: how often point `x` sits in position `j`.
    pub fn position_counts(&self) -> Vec<Vec<usize>> {
        let mut t = alloc::vec![alloc::vec![0; self.0.k]; self.0.n];
        for blk in &self.0.blocks {
            for (j, &x) in blk.iter().enumerate() {
                t[x][j] += 1;
            }
        }
        t
    }
}

/// Splitting GDD: blocks are splitting blocks, design groups partition
/// the points, and cross-group pairs lie in different parts of exactly one
/// block. May have no blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingGdd {
    v: usize,
    m: usize,
    design_groups: Vec<Vec<usize>>,
    blocks: Vec<Block>,
}

impl SplittingGdd {
    pub fn new(
        v: usize,
        m: usize,
        design_groups: Vec<Vec<usize>>,
        blocks: Vec<Block>,
    ) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewSources(m));
        }
        let mut owner = alloc::vec![false; v];
        for &x in design_groups.iter().flatten() {
            if x >= v {
                return Err(Error::PointOutOfRange { point: x, v });
            }
            if core::mem::replace(&mut owner[x], true) {
                return Err(Error::NotPartition { point: x });
            }
        }
        if let Some(x) = owner.iter().position(|&o| !o) {
            return Err(Error::NotPartition { point: x });
        }
        for (i, b) in blocks.iter().enumerate() {
            b.validate(i, v, m)?;
        }
        Ok(SplittingGdd {
            v,
            m,
            design_groups,
            blocks,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn design_groups(&self) -> &[Vec<usize>] {
        &self.design_groups
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Common part size, if the GDD has blocks and they are c-splitting.
    pub fn c(&self) -> Option<usize> {
        let c = self.blocks.first()?.parts[0].len();
        self.blocks
            .iter()
            .flat_map(|b| b.parts.iter())
            .all(|p| p.len() == c)
            .then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn array9() -> SplittingSystem {
        let blocks = (0..9)
            .map(|i| vec![vec![i, (i + 1) % 9], vec![(i + 3) % 9, (i + 5) % 9]])
            .collect();
        SplittingSystem::from_parts(9, 2, blocks).unwrap()
    }

    #[test]
    fn c_splitting_profiles() {
        assert_eq!(array9().c_splitting_profile(), Some(2));
        let one = SplittingSystem::from_parts(2, 2, vec![vec![vec![0], vec![1]]]).unwrap();
        assert_eq!(one.c_splitting_profile(), Some(1));
        let mixed = SplittingSystem::from_parts(
            10,
            4,
            vec![vec![vec![0], vec![5], vec![1, 9], vec![2, 3]]],
        )
        .unwrap();
        assert_eq!(mixed.c_splitting_profile(), None);
    }

    #[test]
    fn rejects_malformed_blocks() {
        assert_eq!(
            SplittingSystem::from_parts(9, 2, vec![]),
            Err(Error::EmptyBlockList)
        );
        assert_eq!(
            SplittingSystem::from_parts(9, 2, vec![vec![vec![0, 1], vec![1, 2]]]),
            Err(Error::OverlappingParts { block: 0, point: 1 })
        );
        assert_eq!(
            SplittingSystem::from_parts(3, 2, vec![vec![vec![0], vec![3]]]),
            Err(Error::PointOutOfRange { point: 3, v: 3 })
        );
        assert!(matches!(
            SplittingSystem::from_parts(3, 2, vec![vec![vec![0], vec![]]]),
            Err(Error::EmptyPart { .. })
        ));
        assert!(SplittingSystem::from_parts(3, 1, vec![vec![vec![0]]]).is_err());
        assert!(matches!(
            SplittingSystem::from_parts(3, 2, vec![vec![vec![0], vec![1], vec![2]]]),
            Err(Error::PartCount { .. })
        ));
    }

    #[test]
    fn repeated_blocks_are_flagged_not_rejected() {
        let s = SplittingSystem::from_parts(
            4,
            2,
            vec![vec![vec![0, 2], vec![1, 3]], vec![vec![2, 0], vec![3, 1]]],
        )
        .unwrap();
        assert_eq!(s.repeated_blocks(), vec![(1, 0)]);
        assert!(array9().repeated_blocks().is_empty());
    }

    #[test]
    fn bibd_parameter_identities() {
        let p = BibdParams::new(25, 3, 2, 1);
        assert_eq!(p.r, Rational::from_integer(6));
        assert_eq!(p.b, Rational::from_integer(25));
        assert!(p.is_integral());
        assert_eq!(
            BibdParams::lambda_from_block_count(25, 25, 3, 2),
            Rational::from_integer(1)
        );
        assert!(!BibdParams::new(13, 2, 2, 1).is_integral());
    }

    #[test]
    fn amd_code_validation() {
        let g = AbelianGroup::cyclic(9).unwrap();
        let code = AmdCode::new(g.clone(), vec![vec![0, 1], vec![2, 4]]).unwrap();
        assert_eq!(code.m(), 2);
        assert_eq!(code.c_regular(), Some(2));
        assert!(AmdCode::new(g.clone(), vec![vec![0, 1], vec![1, 4]]).is_err());
        assert!(AmdCode::new(g.clone(), vec![vec![0], vec![]]).is_err());
        assert!(AmdCode::new(g, vec![vec![0], vec![9]]).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(SourceDistribution::new(vec![ratio(3, 4), ratio(1, 4)]).is_ok());
        assert!(SourceDistribution::new(vec![ratio(3, 4), ratio(1, 2)]).is_err());
        assert!(SourceDistribution::new(vec![ratio(5, 4), ratio(-1, 4)]).is_err());
        let u = SourceDistribution::uniform(4);
        assert_eq!(u.probs()[2], ratio(1, 4));
    }

    fn ratio(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn gdd_structure() {
        let ok = Gdd::new(4, vec![vec![0, 1], vec![2, 3]], 2, vec![vec![0, 2]]);
        assert!(ok.is_ok());
        assert!(matches!(
            Gdd::new(4, vec![vec![0, 1], vec![1, 3]], 2, vec![]),
            Err(Error::NotPartition { point: 1 })
        ));
        assert!(matches!(
            Gdd::new(4, vec![vec![0, 1], vec![2]], 2, vec![]),
            Err(Error::NotPartition { point: 3 })
        ));
        assert!(matches!(
            Gdd::new(4, vec![vec![0, 1], vec![2, 3]], 2, vec![vec![0, 2, 3]]),
            Err(Error::BlockSize { .. })
        ));
    }
}

//! Ground-truth checkers. Everything here is brute force over pairs,
//! blocks and group elements; no structure is assumed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AbelianGroup;
use crate::designs::{Block, Gdd, SplittingSystem};
use crate::{Error, Result};

/// Groups up to this order get a full homomorphism check; larger groups
/// are checked on sampled pairs.
pub const FULL_HOMOMORPHISM_CHECK: u64 = 512;
const SAMPLED_PAIRS: usize = 4096;
const SAMPLE_SEED: u64 = 0x5EED;

/// Lower-triangular table of counts indexed by unordered point pairs.
struct PairCounts {
    v: usize,
    counts: Vec<u32>,
}

impl PairCounts {
    fn new(v: usize) -> Self {
        PairCounts {
            v,
            counts: alloc::vec![0; v * v.saturating_sub(1) / 2],
        }
    }

    fn slot(x: usize, y: usize) -> usize {
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        hi * (hi - 1) / 2 + lo
    }

    fn bump(&mut self, x: usize, y: usize) {
        self.counts[Self::slot(x, y)] += 1;
    }

    fn get(&self, x: usize, y: usize) -> u32 {
        self.counts[Self::slot(x, y)]
    }

    /// Pairs `(x, y)` with `x < y` in lexicographic order.
    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.v).flat_map(move |x| (x + 1..self.v).map(move |y| (x, y)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub pair: (usize, usize),
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibdReport {
    pub is_bibd: bool,
    pub lambda: Option<usize>,
    pub c: Option<usize>,
    /// Smallest and largest cross-part pair count.
    pub count_range: (usize, usize),
    /// A pair achieving the smallest count when the counts are not constant.
    pub witness: Option<PairWitness>,
    pub repeated_blocks: Vec<(usize, usize)>,
}

/// Counts, for every unordered pair, the blocks placing the two points in
/// different parts. A splitting BIBD needs that count constant and the
/// system c-splitting.
pub fn check_splitting_bibd(sys: &SplittingSystem) -> BibdReport {
    let mut counts = PairCounts::new(sys.v());
    for blk in sys.blocks() {
        for_each_cross_pair(blk, |x, y| counts.bump(x, y));
    }
    let c = sys.c_splitting_profile();
    let mut min: Option<(u32, (usize, usize))> = None;
    let mut max = 0u32;
    for (x, y) in counts.pairs() {
        let n = counts.get(x, y);
        max = max.max(n);
        if min.is_none_or(|(m, _)| n < m) {
            min = Some((n, (x, y)));
        }
    }
    let repeated_blocks = sys.repeated_blocks();
    let Some((lo, pair)) = min else {
        return BibdReport {
            is_bibd: false,
            lambda: None,
            c,
            count_range: (0, 0),
            witness: None,
            repeated_blocks,
        };
    };
    let constant = lo == max;
    let witness = (!constant).then_some(PairWitness {
        pair,
        count: lo as usize,
    });
    BibdReport {
        is_bibd: constant && c.is_some(),
        lambda: constant.then_some(lo as usize),
        c,
        count_range: (lo as usize, max as usize),
        witness,
        repeated_blocks,
    }
}

fn for_each_cross_pair(blk: &Block, mut f: impl FnMut(usize, usize)) {
    let parts = blk.parts();
    for (i, pi) in parts.iter().enumerate() {
        for pj in &parts[i + 1..] {
            for &x in pi {
                for &y in pj {
                    f(x, y);
                }
            }
        }
    }
}

/// Multiset of design-group sizes, shown in exponential notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupType(pub Vec<(usize, usize)>);

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (size, mult)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{size}^{mult}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GddViolation {
    /// Block meets one design group in two points.
    SameGroup { block: usize, x: usize, y: usize },
    /// Cross-group pair covered `count != 1` times.
    Coverage { x: usize, y: usize, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GddReport {
    pub is_gdd: bool,
    pub group_type: GroupType,
    pub witness: Option<GddViolation>,
}

pub fn group_type(g: &Gdd) -> GroupType {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for grp in g.design_groups() {
        *sizes.entry(grp.len()).or_default() += 1;
    }
    GroupType(sizes.into_iter().collect())
}

pub fn check_gdd(g: &Gdd) -> GddReport {
    let owner = g.group_of();
    let mut counts = PairCounts::new(g.n());
    let mut witness = None;
    'blocks: for (i, blk) in g.blocks().iter().enumerate() {
        for (a, &x) in blk.iter().enumerate() {
            for &y in &blk[a + 1..] {
                if owner[x] == owner[y] {
                    witness = Some(GddViolation::SameGroup { block: i, x, y });
                    break 'blocks;
                }
                counts.bump(x, y);
            }
        }
    }
    if witness.is_none() {
        witness = counts
            .pairs()
            .filter(|&(x, y)| owner[x] != owner[y])
            .find(|&(x, y)| counts.get(x, y) != 1)
            .map(|(x, y)| GddViolation::Coverage {
                x,
                y,
                count: counts.get(x, y) as usize,
            });
    }
    GddReport {
        is_gdd: witness.is_none(),
        group_type: group_type(g),
        witness,
    }
}

/// A bijection on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut hit = alloc::vec![false; n];
        for &x in &map {
            if x >= n {
                return Err(Error::InvalidPermutation(alloc::format!(
                    "image {x} out of range"
                )));
            }
            if core::mem::replace(&mut hit[x], true) {
                return Err(Error::InvalidPermutation(alloc::format!("{x} hit twice")));
            }
        }
        Ok(Permutation(map))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Canonical block -> first index, for fast membership tests.
struct BlockIndex(BTreeMap<Block, usize>);

impl BlockIndex {
    fn new(sys: &SplittingSystem) -> Self {
        let mut map = BTreeMap::new();
        for (i, b) in sys.blocks().iter().enumerate() {
            map.entry(b.canonical()).or_insert(i);
        }
        BlockIndex(map)
    }

    fn image(&self, blk: &Block, perm: &Permutation) -> Option<usize> {
        self.0
            .get(&blk.map_points(|x| perm.apply(x)).canonical())
            .copied()
    }
}

/// True iff `perm` maps every block (as an ordered tuple of sets) to a block.
pub fn is_automorphism(sys: &SplittingSystem, perm: &Permutation) -> bool {
    if perm.len() != sys.v() {
        return false;
    }
    let index = BlockIndex::new(sys);
    sys.blocks().iter().all(|b| index.image(b, perm).is_some())
}

/// Action of a group on points, one permutation per element (by
/// enumeration index). Convention: `P^(g+h) = (P^g)^h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: AbelianGroup,
    perms: Vec<Permutation>,
}

impl GroupAction {
    /// Translation action on points labelled by enumeration index.
    pub fn translation(group: &AbelianGroup) -> Result<Self> {
        let n = group.order();
        if n > crate::algebra::ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                order: n,
                cap: crate::algebra::ENUMERATION_CAP,
            });
        }
        let n = n as usize;
        let perms = (0..n)
            .map(|g| Permutation((0..n).map(|x| group.add_indices(x, g)).collect()))
            .collect();
        Ok(GroupAction {
            group: group.clone(),
            perms,
        })
    }

    pub fn from_table(group: AbelianGroup, perms: Vec<Permutation>) -> Result<Self> {
        if perms.len() as u64 != group.order() {
            return Err(Error::InvalidAction(alloc::format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        if let Some(p) = perms.iter().find(|p| p.len() != perms[0].len()) {
            return Err(Error::InvalidAction(alloc::format!(
                "permutations of different degrees {} and {}",
                perms[0].len(),
                p.len()
            )));
        }
        Ok(GroupAction { group, perms })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn perm(&self, g: usize) -> &Permutation {
        &self.perms[g]
    }

    fn degree(&self) -> usize {
        self.perms[0].len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionWitness {
    /// `action(g + h) != action(g) then action(h)`.
    NotHomomorphism { g: usize, h: usize },
    /// `action(g)` sends `block` outside the system.
    NotAutomorphism { g: usize, block: usize },
    /// No element, or more than one, maps `from` to `to`.
    NotRegular { from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupGeneratedReport {
    pub ok: bool,
    pub homomorphism: bool,
    pub automorphisms: bool,
    pub regular: bool,
    /// Block orbits as lists of block indices (first copy of each distinct
    /// block). Empty unless every element acts as an automorphism.
    pub orbits: Vec<Vec<usize>>,
    /// All block orbits have size `|G|`.
    pub semiregular: bool,
    pub witness: Option<ActionWitness>,
}

pub fn check_group_generated(
    sys: &SplittingSystem,
    action: &GroupAction,
) -> Result<GroupGeneratedReport> {
    let group = action.group();
    let n = group.order();
    if n != sys.v() as u64 || action.degree() != sys.v() {
        return Err(Error::GroupSizeMismatch {
            group: n,
            points: sys.v(),
        });
    }
    let n = n as usize;
    let v = sys.v();
    let mut witness = None;

    let composes = |g: usize, h: usize| {
        let gh = action.perm(group.add_indices(g, h));
        (0..v).all(|p| gh.apply(p) == action.perm(h).apply(action.perm(g).apply(p)))
    };
    let homomorphism = if n as u64 <= FULL_HOMOMORPHISM_CHECK {
        let bad = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .find(|&(g, h)| !composes(g, h));
        if let Some((g, h)) = bad {
            witness = Some(ActionWitness::NotHomomorphism { g, h });
        }
        bad.is_none()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let mut ok = true;
        for _ in 0..SAMPLED_PAIRS {
            let (g, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if !composes(g, h) {
                witness = Some(ActionWitness::NotHomomorphism { g, h });
                ok = false;
                break;
            }
        }
        ok
    };

    let index = BlockIndex::new(sys);
    let mut automorphisms = true;
    'outer: for g in 0..n {
        for (bi, b) in sys.blocks().iter().enumerate() {
            if index.image(b, action.perm(g)).is_none() {
                automorphisms = false;
                witness.get_or_insert(ActionWitness::NotAutomorphism { g, block: bi });
                break 'outer;
            }
        }
    }

    let mut regular = true;
    'points: for p in 0..v {
        let mut hits = alloc::vec![0u32; v];
        for g in 0..n {
            hits[action.perm(g).apply(p)] += 1;
        }
        if let Some(q) = hits.iter().position(|&h| h != 1) {
            regular = false;
            witness.get_or_insert(ActionWitness::NotRegular { from: p, to: q });
            break 'points;
        }
    }

    let mut orbits = Vec::new();
    if automorphisms {
        let mut seen = alloc::vec![false; sys.b()];
        for (bi, b) in sys.blocks().iter().enumerate() {
            let first = index.0[&b.canonical()];
            if first != bi || seen[bi] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n)
                .filter_map(|g| index.image(b, action.perm(g)))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &i in &orbit {
                seen[i] = true;
            }
            orbits.push(orbit);
        }
    }
    let semiregular = automorphisms && orbits.iter().all(|o| o.len() == n);

    Ok(GroupGeneratedReport {
        ok: homomorphism && automorphisms && regular,
        homomorphism,
        automorphisms,
        regular,
        orbits,
        semiregular,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitableReport {
    pub ok: bool,
    /// `table[x][j]`: number of blocks with `x` in part `j`.
    pub table: Vec<Vec<usize>>,
    /// First point whose row is not constant.
    pub witness: Option<usize>,
}

/// Every point occurs equally often in each of the `m` positions.
pub fn check_equitably_ordered(sys: &SplittingSystem) -> EquitableReport {
    let mut table = alloc::vec![alloc::vec![0; sys.m()]; sys.v()];
    for blk in sys.blocks() {
        for (j, part) in blk.parts().iter().enumerate() {
            for &x in part {
                table[x][j] += 1;
            }
        }
    }
    let witness = table
        .iter()
        .position(|row| row.iter().any(|&c| c != row[0]));
    EquitableReport {
        ok: witness.is_none(),
        table,
        witness,
    }
}

/// `v = 1 (mod m (m-1) c^2)`, necessary for an equitably ordered
/// `(v, m x c, 1)`-splitting BIBD.
pub fn equitable_necessary_condition(v: usize, m: usize, c: usize) -> bool {
    let modulus = m * (m - 1) * c * c;
    v % modulus == 1 % modulus
}

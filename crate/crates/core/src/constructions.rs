//! Constructions: AMD developments, transversal designs, Steiner triple
//! systems, GDD inflation, splitting inflation and the fill recursion that
//! assembles an equitably ordered splitting BIBD, plus base-block search and
//! the built-in fixture catalog.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{AbelianGroup, ENUMERATION_CAP};
use crate::designs::{AmdCode, Block, Gdd, OrderedGdd, SplittingGdd, SplittingSystem};
use crate::verify::{check_equitably_ordered, check_gdd, check_splitting_bibd};
use crate::{Error, Result};

/// Development of an AMD code: one block `(g + A(s_1), ..., g + A(s_m))`
/// per group element, in enumeration order. Repeated blocks are kept and
/// can be listed with [`SplittingSystem::repeated_blocks`].
pub fn develop_amd(code: &AmdCode) -> Result<SplittingSystem> {
    let group = code.group();
    if group.order() > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            order: group.order(),
            cap: ENUMERATION_CAP,
        });
    }
    let n = group.order() as usize;
    let base = Block::new(code.encodings().to_vec());
    let blocks = (0..n)
        .map(|g| base.map_points(|x| group.add_indices(x, g)))
        .collect();
    SplittingSystem::new(n, code.m(), blocks)
}

/// TD(3, n) from the cyclic Latin square: groups `{0..n}`, `{n..2n}`,
/// `{2n..3n}`, blocks `(i, n + j, 2n + (i + j mod n))`.
pub fn latin_square_td(n: usize) -> Gdd {
    let blocks = (0..n)
        .flat_map(|i| (0..n).map(move |j| alloc::vec![i, n + j, 2 * n + (i + j) % n]))
        .collect();
    let groups = (0..3).map(|g| (g * n..(g + 1) * n).collect()).collect();
    Gdd::new(3 * n, groups, 3, blocks).expect("cyclic Latin square is well formed")
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

pub fn is_prime(n: u64) -> bool {
    smallest_prime_factor(n) == Some(n)
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = smallest_prime_factor(q)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// TD(k, p) over the prime field: block `(s, t)` holds `s i + t` in group
/// `i`; for `k = p + 1` the extra group holds the slope `s`.
pub fn prime_td(k: usize, p: u64) -> Result<Gdd> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    field_td(k, p)
}

/// TD(k, q) for a prime power `q`, built over GF(q) the same way as
/// [`prime_td`].
pub fn field_td(k: usize, q: u64) -> Result<Gdd> {
    let field = Gf::new(q)
        .ok_or_else(|| Error::Precondition(alloc::format!("{q} is not a prime power")))?;
    if k < 2 {
        return Err(Error::Precondition(alloc::format!(
            "TD block size {k} below 2"
        )));
    }
    if k as u64 > q + 1 {
        return Err(Error::BlockSizeTooLarge { k, n: q });
    }
    let q = q as usize;
    let mut blocks = Vec::with_capacity(q * q);
    for s in 0..q {
        for t in 0..q {
            let blk = (0..k)
                .map(|i| {
                    let y = if i < q {
                        field.add(field.mul(s, i), t)
                    } else {
                        s
                    };
                    i * q + y
                })
                .collect();
            blocks.push(blk);
        }
    }
    let groups = (0..k).map(|g| (g * q..(g + 1) * q).collect()).collect();
    Gdd::new(k * q, groups, k, blocks)
}

/// GF(p^e) with elements encoded as base-`p` digit vectors (coefficient of
/// `x^i` in digit `i`), via full addition and multiplication tables.
struct Gf {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl Gf {
    fn new(q: u64) -> Option<Gf> {
        let (p, e) = prime_power(q)?;
        let (p, e, q) = (p as usize, e as usize, q as usize);
        let modulus = irreducible(p, e);
        let digits = |x: usize| -> Vec<usize> {
            let mut d = alloc::vec![0; e];
            let mut r = x;
            for slot in d.iter_mut() {
                *slot = r % p;
                r /= p;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let mut add = alloc::vec![0; q * q];
        let mut mul = alloc::vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);
                let mut prod = alloc::vec![0; 2 * e];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                reduce(&mut prod, &modulus, p);
                mul[a * q + b] = encode(&prod[..e]);
            }
        }
        Some(Gf { q, add, mul })
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}

/// Reduces `poly` (low degree first) modulo a monic `modulus` of degree `e`.
fn reduce(poly: &mut [usize], modulus: &[usize], p: usize) {
    let e = modulus.len() - 1;
    for deg in (e..poly.len()).rev() {
        let lead = poly[deg];
        if lead == 0 {
            continue;
        }
        for (i, &c) in modulus.iter().enumerate() {
            let idx = deg - e + i;
            poly[idx] = (poly[idx] + p * p - (lead * c) % p) % p;
        }
    }
}

/// Lexicographically first monic irreducible polynomial of degree `e` over
/// GF(p), by trial division.
fn irreducible(p: usize, e: usize) -> Vec<usize> {
    if e == 1 {
        return alloc::vec![0, 1];
    }
    let monic = |deg: usize, code: usize| -> Vec<usize> {
        let mut c = Vec::with_capacity(deg + 1);
        let mut r = code;
        for _ in 0..deg {
            c.push(r % p);
            r /= p;
        }
        c.push(1);
        c
    };
    'candidate: for code in 0..p.pow(e as u32) {
        let f = monic(e, code);
        for d in 1..=e / 2 {
            for dcode in 0..p.pow(d as u32) {
                let mut rem = f.clone();
                reduce(&mut rem, &monic(d, dcode), p);
                if rem[..d].iter().all(|&c| c == 0) {
                    continue 'candidate;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Steiner triple system of order `u` as a 3-GDD with singleton groups:
/// Bose for `u = 3 (mod 6)`, Skolem for `u = 1 (mod 6)`.
pub fn sts(u: usize) -> Result<Gdd> {
    let blocks = match u % 6 {
        3 => bose(u),
        1 => skolem(u),
        _ => return Err(Error::InvalidStsOrder(u)),
    };
    let groups = (0..u).map(|x| alloc::vec![x]).collect();
    Gdd::new(u, groups, 3, blocks)
}

/// Points `(x, i)` in `Z_q x Z_3`, `q = 2n + 1`, labelled `i q + x`.
fn bose(u: usize) -> Vec<Vec<usize>> {
    let q = u / 3;
    let n = (q - 1) / 2;
    let pt = |x: usize, i: usize| (i % 3) * q + x;
    // idempotent commutative quasigroup: (x + y) / 2 mod q
    let op = |x: usize, y: usize| ((x + y) * (n + 1)) % q;
    let mut blocks: Vec<Vec<usize>> = (0..q)
        .map(|x| alloc::vec![pt(x, 0), pt(x, 1), pt(x, 2)])
        .collect();
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                blocks.push(alloc::vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Points `(x, i)` in `Z_2n x Z_3` labelled `i 2n + x`, plus infinity `6n`.
fn skolem(u: usize) -> Vec<Vec<usize>> {
    let n = (u - 1) / 6;
    if n == 0 {
        return Vec::new();
    }
    let h = 2 * n;
    let inf = 3 * h;
    let pt = |x: usize, i: usize| (i % 3) * h + x;
    // half-idempotent commutative quasigroup: x.x = (x+n).(x+n) = x
    let op = |x: usize, y: usize| {
        let s = (x + y) % h;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            n + s / 2
        }
    };
    let mut blocks: Vec<Vec<usize>> = (0..n)
        .map(|x| alloc::vec![pt(x, 0), pt(x, 1), pt(x, 2)])
        .collect();
    for x in 0..n {
        for i in 0..3 {
            blocks.push(alloc::vec![inf, pt(x + n, i), pt(x, i + 1)]);
        }
    }
    for x in 0..h {
        for y in x + 1..h {
            for i in 0..3 {
                blocks.push(alloc::vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// TD(k, w) from the built-in constructions, if one applies.
pub fn builtin_td(k: usize, w: usize) -> Option<Gdd> {
    if k < 2 || w == 0 {
        return None;
    }
    if w == 1 {
        let groups = (0..k).map(|g| alloc::vec![g]).collect();
        return Gdd::new(k, groups, k, alloc::vec![(0..k).collect()]).ok();
    }
    if k == 3 {
        return Some(latin_square_td(w));
    }
    field_td(k, w as u64).ok()
}

/// Constant-weight inflation: point `x` becomes `x w + a` for `a < w`, each
/// design group grows by a factor `w`, and every master block is replaced by
/// a copy of TD(k, w) on its inflated points. Without an explicit
/// `ingredient`, [`builtin_td`] is used.
pub fn inflate_gdd(master: &Gdd, w: usize, ingredient: Option<&Gdd>) -> Result<Gdd> {
    let k = master.k();
    if w == 0 {
        return Err(Error::Precondition("inflation weight 0".to_string()));
    }
    let td = match ingredient {
        Some(td) => td.clone(),
        None => builtin_td(k, w).ok_or(Error::NoIngredient { k, w })?,
    };
    let fits = td.k() == k
        && td.design_groups().len() == k
        && td.design_groups().iter().all(|g| g.len() == w)
        && check_gdd(&td).is_gdd;
    if !fits {
        return Err(Error::Precondition(alloc::format!(
            "ingredient is not a TD({k},{w})"
        )));
    }
    // ingredient point -> (group index, position within the group)
    let mut coord = alloc::vec![(0, 0); td.n()];
    for (gi, grp) in td.design_groups().iter().enumerate() {
        for (y, &p) in grp.iter().enumerate() {
            coord[p] = (gi, y);
        }
    }
    let groups = master
        .design_groups()
        .iter()
        .map(|g| {
            g.iter()
                .flat_map(|&x| (0..w).map(move |a| x * w + a))
                .collect()
        })
        .collect();
    let mut blocks = Vec::with_capacity(master.blocks().len() * td.blocks().len());
    for mb in master.blocks() {
        for tb in td.blocks() {
            blocks.push(
                tb.iter()
                    .map(|&p| {
                        let (gi, y) = coord[p];
                        mb[gi] * w + y
                    })
                    .collect(),
            );
        }
    }
    Gdd::new(master.n() * w, groups, k, blocks)
}

/// Replaces each point `x` by `x c + a` (`a < c`) and each ordered block
/// `(x_1, ..., x_m)` by the splitting block `({x_1} x c, ..., {x_m} x c)`.
pub fn splitting_inflate(og: &OrderedGdd, c: usize) -> Result<SplittingGdd> {
    if c == 0 {
        return Err(Error::Precondition("part size 0".to_string()));
    }
    let g = og.gdd();
    let expand = |x: usize| (0..c).map(move |a| x * c + a);
    let groups = g
        .design_groups()
        .iter()
        .map(|grp| grp.iter().flat_map(|&x| expand(x)).collect())
        .collect();
    let blocks = g
        .blocks()
        .iter()
        .map(|b| Block::new(b.iter().map(|&x| expand(x).collect()).collect()))
        .collect();
    SplittingGdd::new(g.n() * c, g.k(), groups, blocks)
}

/// Fills every design group of a splitting GDD with an equitably ordered
/// splitting BIBD on the group plus a shared new point (index `v - 1` of the
/// result). `fillers[i]` fills design group `i`: its points `0..|G_i|` go to
/// the group's points in listed order and its last point to the new point.
pub fn fill_groups(sg: &SplittingGdd, fillers: &[SplittingSystem]) -> Result<SplittingSystem> {
    if fillers.len() != sg.design_groups().len() {
        return Err(Error::Precondition(alloc::format!(
            "{} fillers for {} design groups",
            fillers.len(),
            sg.design_groups().len()
        )));
    }
    let c = sg.c();
    let inf = sg.v();
    let mut blocks = sg.blocks().to_vec();
    for (gi, (grp, filler)) in sg.design_groups().iter().zip(fillers).enumerate() {
        let mismatch = |reason: String| Error::FillerMismatch { group: gi, reason };
        if filler.v() != grp.len() + 1 {
            return Err(mismatch(alloc::format!(
                "has {} points, need {}",
                filler.v(),
                grp.len() + 1
            )));
        }
        if filler.m() != sg.m() {
            return Err(mismatch(alloc::format!(
                "has {} sources, need {}",
                filler.m(),
                sg.m()
            )));
        }
        let fc = filler.c_splitting_profile();
        let want_c = c.or(fillers[0].c_splitting_profile());
        if fc.is_none() || fc != want_c {
            return Err(mismatch(
                "part size differs from the splitting GDD".to_string(),
            ));
        }
        let bibd = check_splitting_bibd(filler);
        if !(bibd.is_bibd && bibd.lambda == Some(1)) {
            return Err(mismatch("not a lambda = 1 splitting BIBD".to_string()));
        }
        if !check_equitably_ordered(filler).ok {
            return Err(mismatch("not equitably ordered".to_string()));
        }
        blocks.extend(
            filler
                .blocks()
                .iter()
                .map(|b| b.map_points(|p| if p < grp.len() { grp[p] } else { inf })),
        );
    }
    SplittingSystem::new(sg.v() + 1, sg.m(), blocks)
}

/// Search limit for [`search_base_blocks`], in search nodes.
pub use crate::ordering::SearchBudget;

/// Depth-first search for base blocks over `group` whose cross-part
/// differences cover every nonzero element exactly once, so that their
/// development is a `(v, m x c, 1)`-splitting BIBD.
///
/// Canonical form: every base block's first part contains 0, parts hold
/// increasing elements, parts after the first are ordered by their least
/// element, and base blocks are ordered by their second element. Elements
/// are tried in increasing order, so the first witness is the
/// lexicographically least canonical one.
pub fn search_base_blocks(
    v: usize,
    m: usize,
    c: usize,
    group: &AbelianGroup,
    budget: SearchBudget,
) -> Result<Option<Vec<Block>>> {
    if group.order() != v as u64 {
        return Err(Error::GroupSizeMismatch {
            group: group.order(),
            points: v,
        });
    }
    if m < 2 || c < 1 {
        return Err(Error::Precondition(alloc::format!(
            "need m >= 2 and c >= 1, got m={m} c={c}"
        )));
    }
    let per_block = m * (m - 1) * c * c;
    if v < 2 || !(v - 1).is_multiple_of(per_block) {
        return Err(Error::Precondition(alloc::format!(
            "v - 1 = {} is not a multiple of m(m-1)c^2 = {per_block}",
            v.saturating_sub(1)
        )));
    }
    let t = (v - 1) / per_block;
    let mut s = BaseSearch {
        group,
        m,
        c,
        slots: alloc::vec![0; t * m * c],
        used: alloc::vec![false; v],
        nodes: 0,
        budget: budget.max_nodes,
    };
    s.used[0] = true;
    if !s.fill(0)? {
        return Ok(None);
    }
    let blocks = (0..t)
        .map(|b| {
            Block::new(
                (0..m)
                    .map(|j| (0..c).map(|p| s.slots[(b * m + j) * c + p]).collect())
                    .collect(),
            )
        })
        .collect();
    Ok(Some(blocks))
}

struct BaseSearch<'a> {
    group: &'a AbelianGroup,
    m: usize,
    c: usize,
    slots: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl BaseSearch<'_> {
    fn fill(&mut self, slot: usize) -> Result<bool> {
        if slot == self.slots.len() {
            return Ok(true);
        }
        let (m, c) = (self.m, self.c);
        let block = slot / (m * c);
        let part = (slot / c) % m;
        let pos = slot % c;
        let v = self.used.len();

        let lo = if part == 0 && pos == 0 {
            // first element of a block is always 0
            0
        } else if pos > 0 {
            self.slots[slot - 1] + 1
        } else if part >= 2 {
            self.slots[slot - c] + 1
        } else {
            1
        };
        let hi = if part == 0 && pos == 0 { 1 } else { v };
        // base blocks ordered by their second element; with c = 1 that
        // element is a difference, so the order is strict
        let lo = if block > 0 && slot % (m * c) == 1 {
            lo.max(self.slots[slot - m * c] + usize::from(c == 1))
        } else {
            lo
        };

        for x in lo..hi {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    explored: self.nodes,
                });
            }
            if let Some(marked) = self.try_place(slot, block, part, x) {
                self.slots[slot] = x;
                if self.fill(slot + 1)? {
                    return Ok(true);
                }
                for d in marked {
                    self.used[d] = false;
                }
            }
        }
        Ok(false)
    }

    /// Marks the new differences created by `x`, or returns `None` (with
    /// nothing marked) if any repeats.
    fn try_place(
        &mut self,
        slot: usize,
        block: usize,
        part: usize,
        x: usize,
    ) -> Option<Vec<usize>> {
        let (m, c) = (self.m, self.c);
        let start = block * m * c;
        let mut marked = Vec::new();
        for s in start..slot {
            if (s / c) % m == part {
                continue;
            }
            let y = self.slots[s];
            let d1 = self.group.sub_indices(x, y);
            let d2 = self.group.sub_indices(y, x);
            if d1 == d2 || self.used[d1] || self.used[d2] {
                for d in marked {
                    self.used[d] = false;
                }
                return None;
            }
            self.used[d1] = true;
            self.used[d2] = true;
            marked.push(d1);
            marked.push(d2);
        }
        Some(marked)
    }
}

/// Base blocks together with the group they develop over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseBlocks {
    pub group: AbelianGroup,
    pub blocks: Vec<Block>,
}

impl BaseBlocks {
    pub fn develop(&self) -> Result<SplittingSystem> {
        crate::ordering::order_development(&self.blocks, &self.group)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogEntry {
    System(SplittingSystem),
    Amd(AmdCode),
    BaseBlocks(BaseBlocks),
}

/// Names accepted by [`catalog`], with a one-line description.
pub const CATALOG: &[(&str, &str)] = &[
    (
        "acode5",
        "5-key 2-splitting authentication code on 5 messages",
    ),
    (
        "array9",
        "nine-block array on Z_9 developed from ({0,1},{3,5}); pair counts range over 0..2, not a BIBD",
    ),
    (
        "sbibd9",
        "(9, 2x2, 1)-splitting BIBD: development of ({0,1},{2,4}) over Z_9",
    ),
    ("amd_z9", "AMD code {{0,1},{2,4}} in Z_9"),
    ("amd_z10", "AMD code {0},{5},{1,9},{2,3} in Z_10"),
    ("sbibd25_base", "base block ({0,1},{2,4},{12,20}) over Z_25"),
    (
        "sbibd25",
        "equitably ordered (25, 3x2, 1)-splitting BIBD developed from sbibd25_base",
    ),
];

/// Slots for literature data that is not transcribed; ingest these from
/// files.
pub const UNTRANSCRIBED: &[&str] = &[
    "sbibd49_3x2",
    "base_blocks_4x2",
    "base_blocks_3x3",
    "base_blocks_3x4",
    "gdd4_type48",
    "gdd4_type12_18",
    "gdd3_type36_54",
];

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let z = |n: u64| AbelianGroup::cyclic(n).expect("nonzero order");
    match name {
        "acode5" => {
            let rows: [[[usize; 2]; 2]; 5] = [
                [[1, 4], [2, 3]],
                [[2, 0], [3, 4]],
                [[3, 1], [4, 0]],
                [[4, 2], [0, 1]],
                [[0, 3], [1, 2]],
            ];
            let blocks = rows
                .iter()
                .map(|r| Block::new(r.iter().map(|p| p.to_vec()).collect()))
                .collect();
            SplittingSystem::new(5, 2, blocks).map(CatalogEntry::System)
        }
        "array9" => cyclic_system(9, &[&[0, 1], &[3, 5]]),
        "sbibd9" => cyclic_system(9, &[&[0, 1], &[2, 4]]),
        "amd_z9" => AmdCode::new(z(9), alloc::vec![alloc::vec![0, 1], alloc::vec![2, 4]])
            .map(CatalogEntry::Amd),
        "amd_z10" => AmdCode::new(
            z(10),
            alloc::vec![
                alloc::vec![0],
                alloc::vec![5],
                alloc::vec![1, 9],
                alloc::vec![2, 3]
            ],
        )
        .map(CatalogEntry::Amd),
        "sbibd25_base" => Ok(CatalogEntry::BaseBlocks(sbibd25_base())),
        "sbibd25" => sbibd25_base().develop().map(CatalogEntry::System),
        _ if UNTRANSCRIBED.contains(&name) => Err(Error::NotTranscribed(name.to_string())),
        _ => Err(Error::UnknownCatalogEntry(name.to_string())),
    }
}

fn sbibd25_base() -> BaseBlocks {
    BaseBlocks {
        group: AbelianGroup::cyclic(25).expect("nonzero order"),
        blocks: alloc::vec![Block::new(alloc::vec![
            alloc::vec![0, 1],
            alloc::vec![2, 4],
            alloc::vec![12, 20]
        ])],
    }
}

fn cyclic_system(v: usize, base: &[&[usize]]) -> Result<CatalogEntry> {
    let base = Block::new(base.iter().map(|p| p.to_vec()).collect());
    let group = AbelianGroup::cyclic(v as u64).expect("nonzero order");
    crate::ordering::order_development(&[base], &group).map(CatalogEntry::System)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{check_group_generated, GroupAction};
    use alloc::vec;

    #[test]
    fn develops_amd_codes() {
        let Ok(CatalogEntry::Amd(z9)) = catalog("amd_z9") else {
            panic!()
        };
        let d = develop_amd(&z9).unwrap();
        assert_eq!(d.b(), 9);
        assert!(d.repeated_blocks().is_empty());
        assert_eq!(d.blocks()[1].parts(), &[vec![1, 2], vec![3, 5]]);

        let Ok(CatalogEntry::Amd(z10)) = catalog("amd_z10") else {
            panic!()
        };
        let d = develop_amd(&z10).unwrap();
        assert_eq!(d.b(), 10);
        assert!(d.blocks().iter().all(|b| b.size() == 6));

        let z4 = AmdCode::new(
            AbelianGroup::cyclic(4).unwrap(),
            vec![vec![0, 2], vec![1, 3]],
        )
        .unwrap();
        let d = develop_amd(&z4).unwrap();
        assert_eq!(d.repeated_blocks(), vec![(2, 0), (3, 1)]);
    }

    #[test]
    fn development_is_group_generated() {
        let Ok(CatalogEntry::Amd(z10)) = catalog("amd_z10") else {
            panic!()
        };
        let d = develop_amd(&z10).unwrap();
        let act = GroupAction::translation(z10.group()).unwrap();
        let r = check_group_generated(&d, &act).unwrap();
        assert!(r.ok && r.semiregular && r.orbits.len() == 1);
    }

    #[test]
    fn transversal_designs() {
        for n in [1, 3, 12] {
            let td = latin_square_td(n);
            let r = check_gdd(&td);
            assert!(r.is_gdd, "n = {n}");
            assert_eq!(alloc::format!("{}", r.group_type), alloc::format!("{n}^3"));
            assert_eq!(td.blocks().len(), n * n);
        }
        assert!(latin_square_td(12).replication().iter().all(|&r| r == 12));

        let p = prime_td(3, 3).unwrap();
        assert_eq!(alloc::format!("{}", check_gdd(&p).group_type), "3^3");
        let p = prime_td(4, 5).unwrap();
        let r = check_gdd(&p);
        assert!(r.is_gdd);
        assert_eq!(alloc::format!("{}", r.group_type), "5^4");
        assert_eq!(p.blocks().len(), 25);
        assert!(check_gdd(&prime_td(6, 5).unwrap()).is_gdd);
        assert!(matches!(
            prime_td(7, 5),
            Err(Error::BlockSizeTooLarge { k: 7, n: 5 })
        ));
        assert!(matches!(prime_td(3, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn prime_power_fields() {
        for (k, q) in [(4, 4), (5, 4), (3, 8), (9, 8), (4, 9)] {
            let td = field_td(k, q).unwrap();
            assert!(check_gdd(&td).is_gdd, "TD({k},{q})");
        }
        assert!(field_td(3, 6).is_err());
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn steiner_triple_systems() {
        for u in [1, 3, 7, 9, 13, 15, 19, 21, 25, 27, 31, 33] {
            let s = sts(u).unwrap();
            assert!(check_gdd(&s).is_gdd, "STS({u})");
            assert_eq!(s.blocks().len(), u * (u - 1) / 6);
        }
        assert_eq!(sts(7).unwrap().blocks().len(), 7);
        assert_eq!(sts(9).unwrap().blocks().len(), 12);
        assert_eq!(sts(5), Err(Error::InvalidStsOrder(5)));
    }

    #[test]
    fn inflations() {
        let g = inflate_gdd(&sts(9).unwrap(), 12, None).unwrap();
        let r = check_gdd(&g);
        assert!(r.is_gdd);
        assert_eq!(alloc::format!("{}", r.group_type), "12^9");

        let master = prime_td(4, 5).unwrap();
        let g = inflate_gdd(&master, 4, None).unwrap();
        let r = check_gdd(&g);
        assert!(r.is_gdd);
        assert_eq!(alloc::format!("{}", r.group_type), "20^4");
        let g = inflate_gdd(&master, 4, Some(&field_td(4, 4).unwrap())).unwrap();
        assert!(check_gdd(&g).is_gdd);

        let same = inflate_gdd(&master, 1, None).unwrap();
        assert_eq!(same.blocks().len(), master.blocks().len());
        assert!(check_gdd(&same).is_gdd);

        assert!(matches!(
            inflate_gdd(&master, 6, None),
            Err(Error::NoIngredient { k: 4, w: 6 })
        ));
        assert!(inflate_gdd(&master, 4, Some(&latin_square_td(4))).is_err());
    }

    #[test]
    fn splitting_inflation() {
        let og = crate::ordering::order_gdd(&latin_square_td(3)).unwrap();
        let sg = splitting_inflate(&og, 3).unwrap();
        assert_eq!(sg.v(), 27);
        assert_eq!(sg.c(), Some(3));
        let sg1 = splitting_inflate(&og, 1).unwrap();
        assert_eq!(sg1.blocks().len(), og.gdd().blocks().len());
        assert!(sg1
            .blocks()
            .iter()
            .zip(og.gdd().blocks())
            .all(|(b, o)| { b.parts().iter().map(|p| p[0]).eq(o.iter().copied()) }));
    }

    #[test]
    fn degenerate_fill_returns_filler() {
        let Ok(CatalogEntry::System(f)) = catalog("sbibd25") else {
            panic!()
        };
        let sg = SplittingGdd::new(24, 3, vec![(0..24).collect()], vec![]).unwrap();
        assert_eq!(fill_groups(&sg, core::slice::from_ref(&f)).unwrap(), f);
        let sg = SplittingGdd::new(23, 3, vec![(0..23).collect()], vec![]).unwrap();
        assert!(matches!(
            fill_groups(&sg, &[f]),
            Err(Error::FillerMismatch { group: 0, .. })
        ));
    }

    #[test]
    fn searches_small_cases() {
        let z9 = AbelianGroup::cyclic(9).unwrap();
        let found = search_base_blocks(9, 2, 2, &z9, SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(found, vec![Block::new(vec![vec![0, 1], vec![2, 4]])]);
        let z13 = AbelianGroup::cyclic(13).unwrap();
        assert!(matches!(
            search_base_blocks(13, 2, 2, &z13, SearchBudget::default()),
            Err(Error::Precondition(_))
        ));
        let z3 = AbelianGroup::cyclic(3).unwrap();
        let found = search_base_blocks(3, 2, 1, &z3, SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(found, vec![Block::new(vec![vec![0], vec![1]])]);
    }

    #[test]
    fn search_over_noncyclic_groups() {
        // no (9, 2x2, 1) difference family over Z_3 x Z_3
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        assert_eq!(
            search_base_blocks(9, 2, 2, &g, SearchBudget::default()).unwrap(),
            None
        );
        let g = AbelianGroup::new(vec![5, 5]).unwrap();
        let blocks = search_base_blocks(25, 3, 2, &g, SearchBudget::default())
            .unwrap()
            .unwrap();
        let sys = BaseBlocks { group: g, blocks }.develop().unwrap();
        assert!(check_splitting_bibd(&sys).is_bibd);
        // in Z_2^2 every difference is its own negative
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        assert!(search_base_blocks(4, 2, 1, &g, SearchBudget::default()).is_err());
    }

    #[test]
    fn search_budget() {
        let z25 = AbelianGroup::cyclic(25).unwrap();
        let r = search_base_blocks(25, 3, 2, &z25, SearchBudget { max_nodes: 10 });
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
        let found = search_base_blocks(25, 3, 2, &z25, SearchBudget::default())
            .unwrap()
            .unwrap();
        let sys = crate::ordering::order_development(&found, &z25).unwrap();
        assert!(check_splitting_bibd(&sys).is_bibd);
        assert!(check_equitably_ordered(&sys).ok);
    }

    #[test]
    fn catalog_names() {
        for (name, _) in CATALOG {
            assert!(catalog(name).is_ok(), "{name}");
        }
        assert!(matches!(
            catalog("sbibd49_3x2"),
            Err(Error::NotTranscribed(_))
        ));
        assert!(matches!(
            catalog("nope"),
            Err(Error::UnknownCatalogEntry(_))
        ));
        let Ok(CatalogEntry::System(f)) = catalog("acode5") else {
            panic!()
        };
        assert_eq!(f.blocks()[0].parts(), &[vec![1, 4], vec![2, 3]]);
        let Ok(CatalogEntry::System(h)) = catalog("array9") else {
            panic!()
        };
        assert_eq!(h.blocks()[0].parts(), &[vec![0, 1], vec![3, 5]]);
        assert_eq!(h.blocks()[8].parts(), &[vec![8, 0], vec![2, 4]]);
    }
}

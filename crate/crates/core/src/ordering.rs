//! Equitable orderings.
//!
//! Three routes: developments of base blocks are equitable for any fixed
//! base-block order; GDD blocks are ordered by splitting the point side of
//! the incidence graph into degree-`m` slots and `m`-edge-colouring the
//! resulting regular bipartite multigraph; arbitrary small systems go
//! through exact backtracking.

use alloc::vec::Vec;

use crate::algebra::AbelianGroup;
use crate::designs::{Block, Gdd, OrderedGdd, SplittingSystem};
use crate::{Error, Result};

/// Bipartite multigraph: left vertices are blocks, right vertices are
/// point slots. `edges[e] = (left, right)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut l = alloc::vec![0; self.left];
        let mut r = alloc::vec![0; self.right];
        for &(a, b) in &self.edges {
            l[a] += 1;
            r[b] += 1;
        }
        (l, r)
    }
}

/// Incidence graph of a GDD with every point split into slots of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIncidence {
    pub graph: BipartiteMultigraph,
    /// Point owning each right-hand slot.
    pub slot_point: Vec<usize>,
    /// `(block, index within the block)` for each edge.
    pub edge_incidence: Vec<(usize, usize)>,
}

/// Splits every point `x` into `r_x / k` slots; a point's incidences go to
/// its slots in block order, `k` consecutive incidences per slot.
pub fn gdd_incidence_split(g: &Gdd) -> Result<SplitIncidence> {
    let m = g.k();
    let r = g.replication();
    if let Some((x, &rx)) = r.iter().enumerate().find(|&(_, &rx)| m == 0 || rx % m != 0) {
        return Err(Error::ReplicationNotDivisible {
            point: x,
            replication: rx,
            m,
        });
    }
    let mut first_slot = Vec::with_capacity(g.n());
    let mut slot_point = Vec::new();
    for (x, &rx) in r.iter().enumerate() {
        first_slot.push(slot_point.len());
        slot_point.extend(core::iter::repeat_n(x, rx / m));
    }
    let mut seen = alloc::vec![0usize; g.n()];
    let mut edges = Vec::with_capacity(g.blocks().len() * m);
    let mut edge_incidence = Vec::with_capacity(edges.capacity());
    for (bi, blk) in g.blocks().iter().enumerate() {
        for (pos, &x) in blk.iter().enumerate() {
            edges.push((bi, first_slot[x] + seen[x] / m));
            edge_incidence.push((bi, pos));
            seen[x] += 1;
        }
    }
    Ok(SplitIncidence {
        graph: BipartiteMultigraph {
            left: g.blocks().len(),
            right: slot_point.len(),
            edges,
        },
        slot_point,
        edge_incidence,
    })
}

/// Proper `m`-edge-colouring of an `m`-regular bipartite multigraph by
/// peeling off `m` perfect matchings. Colours are `0..m`.
pub fn edge_color(g: &BipartiteMultigraph, m: usize) -> Result<Vec<usize>> {
    let (ldeg, rdeg) = g.degrees();
    if let Some(v) = ldeg.iter().position(|&d| d != m) {
        return Err(Error::NotRegular {
            vertex: v,
            degree: ldeg[v],
            expected: m,
        });
    }
    if let Some(v) = rdeg.iter().position(|&d| d != m) {
        return Err(Error::NotRegular {
            vertex: g.left + v,
            degree: rdeg[v],
            expected: m,
        });
    }
    let mut color = alloc::vec![usize::MAX; g.edges.len()];
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); g.left];
    for (e, &(a, _)) in g.edges.iter().enumerate() {
        adj[a].push(e);
    }
    for round in 0..m {
        let matching = perfect_matching(g, &adj, &color)?;
        for e in matching {
            color[e] = round;
        }
    }
    Ok(color)
}

/// Kuhn's augmenting-path matching over uncoloured edges. Returns one edge
/// per left vertex.
fn perfect_matching(
    g: &BipartiteMultigraph,
    adj: &[Vec<usize>],
    color: &[usize],
) -> Result<Vec<usize>> {
    // right vertex -> matched edge
    let mut right_match: Vec<Option<usize>> = alloc::vec![None; g.right];
    for root in 0..g.left {
        let mut visited = alloc::vec![false; g.right];
        if !augment(g, adj, color, root, &mut visited, &mut right_match) {
            return Err(Error::NotRegular {
                vertex: root,
                degree: 0,
                expected: 1,
            });
        }
    }
    let mut by_left = alloc::vec![usize::MAX; g.left];
    for e in right_match.into_iter().flatten() {
        by_left[g.edges[e].0] = e;
    }
    Ok(by_left)
}

fn augment(
    g: &BipartiteMultigraph,
    adj: &[Vec<usize>],
    color: &[usize],
    left: usize,
    visited: &mut [bool],
    right_match: &mut [Option<usize>],
) -> bool {
    for &e in &adj[left] {
        if color[e] != usize::MAX {
            continue;
        }
        let r = g.edges[e].1;
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match right_match[r] {
            None => true,
            Some(prev) => augment(g, adj, color, g.edges[prev].0, visited, right_match),
        };
        if free {
            right_match[r] = Some(e);
            return true;
        }
    }
    false
}

/// Orders every block so each point occupies each position `r_x / k` times.
pub fn order_gdd(g: &Gdd) -> Result<OrderedGdd> {
    let m = g.k();
    let split = gdd_incidence_split(g)?;
    let colors = edge_color(&split.graph, m)?;
    let mut blocks: Vec<Vec<usize>> = alloc::vec![alloc::vec![usize::MAX; m]; g.blocks().len()];
    for (e, &(bi, pos)) in split.edge_incidence.iter().enumerate() {
        blocks[bi][colors[e]] = g.blocks()[bi][pos];
    }
    let gdd = Gdd::new(g.n(), g.design_groups().to_vec(), m, blocks)?;
    Ok(OrderedGdd::new(gdd))
}

/// Develops ordered base blocks over `group`, keeping each base block's part
/// order in every translate. Base blocks are given by group enumeration
/// index; translates follow the enumeration order of `g`.
pub fn order_development(base_blocks: &[Block], group: &AbelianGroup) -> Result<SplittingSystem> {
    let v = group.order();
    if v > crate::algebra::ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            order: v,
            cap: crate::algebra::ENUMERATION_CAP,
        });
    }
    let v = v as usize;
    let m = base_blocks.first().map_or(0, Block::m);
    if let Some(x) = base_blocks.iter().flat_map(Block::points).find(|&x| x >= v) {
        return Err(Error::PointOutOfRange { point: x, v });
    }
    let mut blocks = Vec::with_capacity(base_blocks.len() * v);
    for base in base_blocks {
        for g in 0..v {
            blocks.push(base.map_points(|x| group.add_indices(x, g)));
        }
    }
    let sys = SplittingSystem::new(v, m, blocks)?;
    if let Some(&(block, other)) = sys.repeated_blocks().first() {
        return Err(Error::OrbitCollision { block, other });
    }
    Ok(sys)
}

/// Limit for [`reorder_exact`], counted in search nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
        }
    }
}

/// Finds part orders making `sys` equitably ordered.
///
/// Blocks are visited in index order and part permutations in
/// lexicographic order, with per-point per-position counters capped at
/// `r_x / m`. `Ok(None)` means no ordering exists (proved by exhaustion or
/// by some `r_x` not divisible by `m`).
pub fn reorder_exact(
    sys: &SplittingSystem,
    budget: SearchBudget,
) -> Result<Option<SplittingSystem>> {
    if sys.c_splitting_profile().is_none() {
        return Err(Error::NotCSplitting);
    }
    let m = sys.m();
    let r = sys.replication();
    if r.iter().any(|&rx| rx % m != 0) {
        return Ok(None);
    }
    let cap: Vec<usize> = r.iter().map(|&rx| rx / m).collect();
    let perms = permutations(m);
    let mut search = Reorder {
        sys,
        perms: &perms,
        cap,
        counts: alloc::vec![0; sys.v() * m],
        choice: alloc::vec![0; sys.b()],
        nodes: 0,
        budget: budget.max_nodes,
    };
    if !search.run(0)? {
        return Ok(None);
    }
    let orders: Vec<Vec<usize>> = search.choice.iter().map(|&c| perms[c].clone()).collect();
    sys.with_part_orders(&orders).map(Some)
}

struct Reorder<'a> {
    sys: &'a SplittingSystem,
    perms: &'a [Vec<usize>],
    cap: Vec<usize>,
    counts: Vec<usize>,
    choice: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Reorder<'_> {
    fn run(&mut self, bi: usize) -> Result<bool> {
        if bi == self.sys.b() {
            return Ok(true);
        }
        let m = self.sys.m();
        let blk = &self.sys.blocks()[bi];
        for (pi, perm) in self.perms.iter().enumerate() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    explored: self.nodes,
                });
            }
            // position `pos` holds old part `perm[pos]`
            let fits = perm.iter().enumerate().all(|(pos, &old)| {
                blk.part(old)
                    .iter()
                    .all(|&x| self.counts[x * m + pos] < self.cap[x])
            });
            if !fits {
                continue;
            }
            self.apply(blk, perm, true);
            self.choice[bi] = pi;
            if self.run(bi + 1)? {
                return Ok(true);
            }
            self.apply(blk, perm, false);
        }
        Ok(false)
    }

    fn apply(&mut self, blk: &Block, perm: &[usize], add: bool) {
        let m = self.sys.m();
        for (pos, &old) in perm.iter().enumerate() {
            for &x in blk.part(old) {
                let c = &mut self.counts[x * m + pos];
                if add {
                    *c += 1;
                } else {
                    *c -= 1;
                }
            }
        }
    }
}

/// All permutations of `0..m` in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..m)
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::check_equitably_ordered;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn td(n: usize) -> Gdd {
        let blocks = (0..n)
            .flat_map(|i| (0..n).map(move |j| vec![i, n + j, 2 * n + (i + j) % n]))
            .collect();
        let groups = (0..3).map(|g| (g * n..(g + 1) * n).collect()).collect();
        Gdd::new(3 * n, groups, 3, blocks).unwrap()
    }

    fn assert_proper(g: &BipartiteMultigraph, colors: &[usize], m: usize) {
        let mut seen_l = BTreeMap::new();
        let mut seen_r = BTreeMap::new();
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            assert!(colors[e] < m);
            assert!(
                seen_l.insert((a, colors[e]), e).is_none(),
                "left clash at {a}"
            );
            assert!(
                seen_r.insert((b, colors[e]), e).is_none(),
                "right clash at {b}"
            );
        }
    }

    #[test]
    fn split_of_td33() {
        let s = gdd_incidence_split(&td(3)).unwrap();
        assert_eq!((s.graph.left, s.graph.right), (9, 9));
        let (l, r) = s.graph.degrees();
        assert!(l.iter().chain(&r).all(|&d| d == 3));
    }

    #[test]
    fn split_of_td12_has_four_slots_per_point() {
        let s = gdd_incidence_split(&td(12)).unwrap();
        assert_eq!(s.graph.right, 36 * 4);
        assert!(s.slot_point.iter().filter(|&&x| x == 0).count() == 4);
    }

    #[test]
    fn split_rejects_bad_replication() {
        let g = Gdd::new(3, vec![vec![0], vec![1], vec![2]], 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            gdd_incidence_split(&g),
            Err(Error::ReplicationNotDivisible {
                point: 0,
                replication: 1,
                m: 3
            })
        ));
        assert!(order_gdd(&g).is_err());
    }

    #[test]
    fn colours_even_cycle_and_matching() {
        let cycle = BipartiteMultigraph {
            left: 3,
            right: 3,
            edges: vec![(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)],
        };
        let c = edge_color(&cycle, 2).unwrap();
        assert_proper(&cycle, &c, 2);
        let matching = BipartiteMultigraph {
            left: 2,
            right: 2,
            edges: vec![(0, 1), (1, 0)],
        };
        assert_eq!(edge_color(&matching, 1).unwrap(), vec![0, 0]);
    }

    #[test]
    fn colours_parallel_edges() {
        let g = BipartiteMultigraph {
            left: 1,
            right: 1,
            edges: vec![(0, 0), (0, 0)],
        };
        assert_eq!(edge_color(&g, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn colour_rejects_irregular_graph() {
        let g = BipartiteMultigraph {
            left: 2,
            right: 2,
            edges: vec![(0, 0), (0, 1), (1, 1)],
        };
        assert!(matches!(edge_color(&g, 2), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn td33_colouring_is_proper() {
        let s = gdd_incidence_split(&td(3)).unwrap();
        let c = edge_color(&s.graph, 3).unwrap();
        assert_proper(&s.graph, &c, 3);
        for k in 0..3 {
            assert_eq!(c.iter().filter(|&&x| x == k).count(), 9);
        }
    }

    #[test]
    fn ordered_td_balances_positions() {
        for (n, each) in [(3, 1), (12, 4)] {
            let og = order_gdd(&td(n)).unwrap();
            for row in og.position_counts() {
                assert_eq!(row, vec![each; 3]);
            }
        }
    }

    #[test]
    fn development_orders() {
        let g = AbelianGroup::cyclic(25).unwrap();
        let base = Block::new(vec![vec![0, 1], vec![2, 4], vec![12, 20]]);
        let sys = order_development(&[base], &g).unwrap();
        assert_eq!(sys.b(), 25);
        assert_eq!(
            sys.blocks()[1].parts(),
            &[vec![1, 2], vec![3, 5], vec![13, 21]]
        );
        assert_eq!(
            sys.blocks()[24].parts(),
            &[vec![24, 0], vec![1, 3], vec![11, 19]]
        );
        assert!(check_equitably_ordered(&sys).ok);
    }

    #[test]
    fn development_rejects_collisions_and_overlaps() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let base = Block::new(vec![vec![0, 2], vec![1, 3]]);
        assert!(matches!(
            order_development(&[base], &g),
            Err(Error::OrbitCollision { .. })
        ));
        let g9 = AbelianGroup::cyclic(9).unwrap();
        let bad = Block::new(vec![vec![0, 1], vec![1, 3]]);
        assert!(matches!(
            order_development(&[bad], &g9),
            Err(Error::OverlappingParts { .. })
        ));
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(
            permutations(3),
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }

    #[test]
    fn exact_reordering() {
        // Corrected nine-point design with every other block reversed.
        let blocks = (0..9)
            .map(|i| {
                let b = Block::new(vec![vec![i, (i + 1) % 9], vec![(i + 2) % 9, (i + 4) % 9]]);
                if i % 2 == 0 {
                    b.permute_parts(&[1, 0])
                } else {
                    b
                }
            })
            .collect();
        let scrambled = SplittingSystem::new(9, 2, blocks).unwrap();
        assert!(!check_equitably_ordered(&scrambled).ok);
        let fixed = reorder_exact(&scrambled, SearchBudget::default())
            .unwrap()
            .unwrap();
        assert!(check_equitably_ordered(&fixed).ok);

        let single = SplittingSystem::from_parts(2, 2, vec![vec![vec![0], vec![1]]]).unwrap();
        assert_eq!(
            reorder_exact(&single, SearchBudget::default()).unwrap(),
            None
        );

        let tiny = SearchBudget { max_nodes: 3 };
        assert!(matches!(
            reorder_exact(&scrambled, tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}

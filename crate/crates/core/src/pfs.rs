//! Partial-order sanitization: reorder the blocks of the total-order output
//! and merge blocks whose `k-1`-letter suffix and prefix agree.
//!
//! Each block is renamed to a two-letter string (rank of its length-ℓ prefix,
//! rank of its length-ℓ suffix). The shortest arrangement is a minimum path
//! decomposition of the de Bruijn multigraph with one edge per block: first
//! peel paths from nodes with more outgoing than incoming edges, then splice
//! the remaining cycles into paths they touch; cycles touching no path
//! become paths of their own.

use crate::alphabet::{Sym, SEP};
use crate::error::{Error, Result};
use crate::instance::SanitizationInstance;
use crate::tfs::{tfs_segments, SanitizedString, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankPair {
    pub block_id: usize,
    pub prefix_rank: u32,
    pub suffix_rank: u32,
}

/// Splits `X₁#…#X_N` into its blocks.
pub fn split_blocks(x: &SanitizedString) -> Vec<&[Sym]> {
    x.blocks()
}

/// Renames every block to the 1-based lexicographic ranks of its length-`overlap`
/// prefix and suffix, ranked among all such prefixes and suffixes.
pub fn rank_blocks(blocks: &[&[Sym]], overlap: usize) -> Result<Vec<RankPair>> {
    if let Some((block, b)) = blocks.iter().enumerate().find(|(_, b)| b.len() <= overlap) {
        return Err(Error::BlockTooShort {
            block,
            len: b.len(),
            overlap,
        });
    }
    let mut grams: Vec<&[Sym]> = blocks
        .iter()
        .flat_map(|b| [&b[..overlap], &b[b.len() - overlap..]])
        .collect();
    grams.sort_unstable();
    grams.dedup();
    let rank = |g: &[Sym]| grams.binary_search(&g).expect("gram was collected") as u32 + 1;
    Ok(blocks
        .iter()
        .enumerate()
        .map(|(block_id, b)| RankPair {
            block_id,
            prefix_rank: rank(&b[..overlap]),
            suffix_rank: rank(&b[b.len() - overlap..]),
        })
        .collect())
}

/// Directed multigraph on ranks with one edge per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnMultigraph {
    /// `out[v]`: `(target, block_id)` sorted ascending.
    out: Vec<Vec<(u32, usize)>>,
    in_degree: Vec<usize>,
    edges: usize,
}

impl DeBruijnMultigraph {
    pub fn new(pairs: &[RankPair]) -> Self {
        let nodes = pairs
            .iter()
            .map(|p| p.prefix_rank.max(p.suffix_rank) as usize + 1)
            .max()
            .unwrap_or(0);
        let mut out = vec![Vec::new(); nodes];
        let mut in_degree = vec![0; nodes];
        for p in pairs {
            out[p.prefix_rank as usize].push((p.suffix_rank, p.block_id));
            in_degree[p.suffix_rank as usize] += 1;
        }
        for o in &mut out {
            o.sort_unstable();
        }
        DeBruijnMultigraph {
            out,
            in_degree,
            edges: pairs.len(),
        }
    }

    pub fn node_bound(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.in_degree.get(v as usize).copied().unwrap_or(0)
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.out.get(v as usize).map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Junction {
    Merge,
    Concat,
}

/// Arrangement of the blocks: consecutive blocks inside a path are merged,
/// consecutive paths are concatenated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockOrdering {
    pub paths: Vec<Vec<usize>>,
}

impl BlockOrdering {
    pub fn merges(&self) -> usize {
        self.paths.iter().map(|p| p.len().saturating_sub(1)).sum()
    }

    pub fn concats(&self) -> usize {
        self.paths.len().saturating_sub(1)
    }

    /// Block order and the junction between each consecutive pair.
    pub fn junctions(&self) -> (Vec<usize>, Vec<Junction>) {
        let mut order = Vec::new();
        let mut tags = Vec::new();
        for (pi, path) in self.paths.iter().enumerate() {
            if pi > 0 {
                tags.push(Junction::Concat);
            }
            for (bi, &b) in path.iter().enumerate() {
                if bi > 0 {
                    tags.push(Junction::Merge);
                }
                order.push(b);
            }
        }
        (order, tags)
    }

    /// Length of the string spelled by this ordering.
    pub fn induced_len(&self, block_lens: &[usize], overlap: usize) -> usize {
        let letters: usize = self.paths.iter().flatten().map(|&b| block_lens[b]).sum();
        letters - overlap * self.merges() + self.concats()
    }
}

/// Fixed-overlap shortest string with multiplicities on two-letter rank strings.
///
/// Ties are broken by smallest rank, then smallest block id. Paths are
/// returned in discovery order.
pub fn fo_ssm(pairs: &[RankPair]) -> BlockOrdering {
    let g = DeBruijnMultigraph::new(pairs);
    let nodes = g.node_bound();
    // Reverse so that `pop` yields the smallest (target, block).
    let mut out: Vec<Vec<(u32, usize)>> = g.out.iter().map(|o| o.iter().rev().copied().collect()).collect();
    let mut in_rem = g.in_degree.clone();

    // Step 1: peel paths from nodes with a surplus of outgoing edges.
    let mut peeled: Vec<(u32, Vec<usize>)> = Vec::new();
    for v in 0..nodes {
        while out[v].len() > in_rem[v] {
            let mut cur = v;
            let mut blocks = Vec::new();
            while let Some((to, b)) = out[cur].pop() {
                in_rem[to as usize] -= 1;
                blocks.push(b);
                cur = to as usize;
            }
            peeled.push((v as u32, blocks));
        }
    }

    // What is left is balanced. Splice closed walks into the paths wherever
    // a path visits a node with unused edges.
    let mut paths = Vec::with_capacity(peeled.len());
    for (start, blocks) in peeled {
        let mut spliced = Vec::with_capacity(blocks.len());
        let mut cur = start;
        spliced.extend(closed_walk(cur, &mut out, &mut in_rem));
        for b in blocks {
            spliced.push(b);
            cur = pairs[b].suffix_rank;
            spliced.extend(closed_walk(cur, &mut out, &mut in_rem));
        }
        paths.push(spliced);
    }
    for v in 0..nodes {
        if !out[v].is_empty() {
            paths.push(closed_walk(v as u32, &mut out, &mut in_rem));
        }
    }
    BlockOrdering { paths }
}

/// Hierholzer: an Eulerian circuit from `start` over the remaining edges of its
/// component (empty if `start` has no remaining edges).
fn closed_walk(start: u32, out: &mut [Vec<(u32, usize)>], in_rem: &mut [usize]) -> Vec<usize> {
    if out[start as usize].is_empty() {
        return Vec::new();
    }
    let mut stack: Vec<(u32, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(u, _)) = stack.last() {
        if let Some((to, b)) = out[u as usize].pop() {
            in_rem[to as usize] -= 1;
            stack.push((to, Some(b)));
        } else if let Some((_, Some(b))) = stack.pop() {
            circuit.push(b);
        }
    }
    circuit.reverse();
    circuit
}

/// Spells an ordering of explicit blocks. Paths are emitted in order of their
/// smallest block id, separated by `#`.
pub fn assemble(blocks: &[&[Sym]], ordering: &BlockOrdering, overlap: usize) -> SanitizedString {
    let mut paths: Vec<&Vec<usize>> = ordering.paths.iter().collect();
    paths.sort_by_key(|p| p.iter().min().copied());
    let mut out = Vec::new();
    for (pi, path) in paths.into_iter().enumerate() {
        if pi > 0 {
            out.push(SEP);
        }
        for (bi, &b) in path.iter().enumerate() {
            let skip = if bi == 0 { 0 } else { overlap };
            out.extend_from_slice(&blocks[b][skip..]);
        }
    }
    SanitizedString::from_raw(out)
}

/// Partial-order sanitization of explicit blocks.
pub fn pfs_from_blocks(blocks: &[&[Sym]], overlap: usize) -> Result<SanitizedString> {
    let pairs = rank_blocks(blocks, overlap)?;
    Ok(assemble(blocks, &fo_ssm(&pairs), overlap))
}

/// Partial-order sanitization. Works on the compact total-order output and
/// ranks block ends with the gram ranks of `W`, so it runs in
/// `O(n log k + |Y|)` without building the intermediate string.
pub fn pfs_sanitize(inst: &SanitizationInstance) -> SanitizedString {
    let w = inst.w();
    let k = inst.k();
    let overlap = k - 1;
    let compact = tfs_segments(inst);
    let blocks = compact.blocks();
    if blocks.is_empty() {
        return SanitizedString::default();
    }

    // Every block opens with a full window and closes with a full window of W,
    // so both of its (k-1)-grams are substrings of W.
    let ends: Vec<(usize, usize)> = blocks
        .iter()
        .map(|b| {
            let Some(Segment::Interval(first, _)) = b.first() else {
                unreachable!("blocks start with an interval")
            };
            let Some(Segment::Interval(_, last)) = b.last() else {
                unreachable!("blocks end with an interval")
            };
            (*first, last + 1 - overlap)
        })
        .collect();

    // Only the block ends need ranks; sort their grams and number them densely.
    let gram = |p: usize| &w[p..p + overlap];
    let mut used: Vec<&[Sym]> = ends.iter().flat_map(|&(p, s)| [gram(p), gram(s)]).collect();
    used.sort_unstable();
    used.dedup();
    let dense = |p: usize| used.binary_search(&gram(p)).expect("gram was collected") as u32 + 1;
    let pairs: Vec<RankPair> = ends
        .iter()
        .enumerate()
        .map(|(block_id, &(p, s))| RankPair {
            block_id,
            prefix_rank: dense(p),
            suffix_rank: dense(s),
        })
        .collect();
    let ordering = fo_ssm(&pairs);

    let mut paths: Vec<&Vec<usize>> = ordering.paths.iter().collect();
    paths.sort_by_key(|p| p.iter().min().copied());
    let mut out = Vec::with_capacity(ordering.induced_len(&block_lens(&blocks), overlap));
    for (pi, path) in paths.into_iter().enumerate() {
        if pi > 0 {
            out.push(SEP);
        }
        for (bi, &b) in path.iter().enumerate() {
            let mut skip = if bi == 0 { 0 } else { overlap };
            for seg in blocks[b] {
                let Segment::Interval(i, j) = *seg else { continue };
                let len = j - i + 1;
                if skip >= len {
                    skip -= len;
                    continue;
                }
                out.extend_from_slice(&w[i + skip..=j]);
                skip = 0;
            }
        }
    }
    SanitizedString::from_raw(out)
}

fn block_lens(blocks: &[&[Segment]]) -> Vec<usize> {
    blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|s| match *s {
                    Segment::Interval(i, j) => j - i + 1,
                    Segment::Separator => 0,
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfs::tfs_sanitize;

    fn pairs(list: &[(u32, u32)]) -> Vec<RankPair> {
        list.iter()
            .enumerate()
            .map(|(block_id, &(p, s))| RankPair {
                block_id,
                prefix_rank: p,
                suffix_rank: s,
            })
            .collect()
    }

    fn example() -> SanitizationInstance {
        SanitizationInstance::from_text("aabaaacbcbbbaabbacaab", 4, &["baaa", "bbaa"]).unwrap()
    }

    #[test]
    fn splits_example_blocks() {
        let inst = example();
        let x = tfs_sanitize(&inst);
        let blocks: Vec<String> = split_blocks(&x).iter().map(|b| inst.render(b)).collect();
        assert_eq!(blocks, ["aabaa", "aaacbcbbba", "baabbacaab"]);
        assert!(split_blocks(&SanitizedString::default()).is_empty());
        let single = SanitizedString::new(vec![0, 1, 2], 3).unwrap();
        assert_eq!(split_blocks(&single).len(), 1);
    }

    #[test]
    fn ranks_of_example_blocks() {
        let inst = example();
        let x = tfs_sanitize(&inst);
        let r = rank_blocks(&split_blocks(&x), 3).unwrap();
        let two: Vec<(u32, u32)> = r.iter().map(|p| (p.prefix_rank, p.suffix_rank)).collect();
        assert_eq!(two, [(2, 3), (1, 4), (3, 2)]);
    }

    #[test]
    fn rank_edge_cases() {
        let r = rank_blocks(&[&[0, 1, 2, 3]], 2).unwrap();
        assert_eq!((r[0].prefix_rank, r[0].suffix_rank), (1, 2));
        let r = rank_blocks(&[&[0, 1, 0], &[0, 1, 0]], 2).unwrap();
        assert_eq!(
            (r[0].prefix_rank, r[0].suffix_rank),
            (r[1].prefix_rank, r[1].suffix_rank)
        );
        assert_eq!(
            rank_blocks(&[&[0, 1, 2], &[0, 1]], 2),
            Err(Error::BlockTooShort {
                block: 1,
                len: 2,
                overlap: 2
            })
        );
    }

    #[test]
    fn multigraph_degrees() {
        let g = DeBruijnMultigraph::new(&pairs(&[(2, 3), (1, 4), (3, 2), (2, 3)]));
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.out_degree(2), 2);
        assert_eq!(g.in_degree(3), 2);
        let total_in: usize = (0..g.node_bound() as u32).map(|v| g.in_degree(v)).sum();
        let total_out: usize = (0..g.node_bound() as u32).map(|v| g.out_degree(v)).sum();
        assert_eq!((total_in, total_out), (4, 4));
    }

    #[test]
    fn example_ordering() {
        let o = fo_ssm(&pairs(&[(2, 3), (1, 4), (3, 2)]));
        assert_eq!(o.paths, vec![vec![1], vec![0, 2]]);
        assert_eq!(o.merges(), 1);
        let (order, tags) = o.junctions();
        assert_eq!(order, [1, 0, 2]);
        assert_eq!(tags, [Junction::Concat, Junction::Merge]);
    }

    #[test]
    fn single_and_cyclic_pairs() {
        assert_eq!(fo_ssm(&pairs(&[(1, 2)])).paths, vec![vec![0]]);
        let o = fo_ssm(&pairs(&[(1, 2), (2, 1)]));
        assert_eq!(o.paths, vec![vec![0, 1]]);
        assert_eq!(o.concats(), 0);
        assert!(fo_ssm(&[]).paths.is_empty());
    }

    #[test]
    fn cycles_are_spliced_into_paths() {
        // path 1->2->3 plus cycle 2->4->2 hanging off node 2
        let o = fo_ssm(&pairs(&[(1, 2), (2, 3), (2, 4), (4, 2)]));
        assert_eq!(o.paths.len(), 1);
        assert_eq!(o.paths[0], vec![0, 2, 3, 1]);
    }

    #[test]
    fn example_partial_order_output() {
        let inst = example();
        let y = pfs_sanitize(&inst);
        assert_eq!(y.len(), 23);
        assert_eq!(y.separator_count(), 1);
        assert_eq!(inst.render(y.tokens()), "aabaabbacaab#aaacbcbbba");

        let x = tfs_sanitize(&inst);
        assert_eq!(pfs_from_blocks(&split_blocks(&x), 3).unwrap(), y);
    }

    #[test]
    fn identity_without_sensitive_patterns() {
        let inst = SanitizationInstance::from_text("abcabcab", 3, &[]).unwrap();
        assert_eq!(inst.render(pfs_sanitize(&inst).tokens()), "abcabcab");
    }

    #[test]
    fn no_overlaps_keeps_length() {
        let inst = SanitizationInstance::from_text_positions("baaabbbaba", 4, &[1, 3, 5]).unwrap();
        let y = pfs_sanitize(&inst);
        assert_eq!(y.len(), tfs_sanitize(&inst).len());
    }
}

//! Γ-connected set partitions: the combinatorial shadow of the intersection
//! lattice of a graphic arrangement.
//!
//! A partition of the vertex set is *Γ-connected* when every block induces
//! a connected subgraph.  Ordered by refinement these form a poset (a
//! lattice together with a bottom element), and the codimension
//! `Σ (|B| - 1)` of a partition equals the codimension of the subspace it
//! cuts out — see [`crate::linoracle`] for the exact linear-algebra
//! cross-check.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// A partition of a graph's vertex set with every block Γ-connected.
///
/// Blocks are bitmasks sorted by smallest element, so equality and hashing
/// are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectedPartition {
    ground: u64,
    blocks: Vec<u64>,
}

impl ConnectedPartition {
    /// Build from explicit blocks, validating that the blocks are disjoint,
    /// cover the vertex set exactly, and each induce a connected subgraph.
    pub fn from_blocks(g: &Graph, blocks: &[Vec<u32>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(blocks.len());
        let mut seen = 0u64;
        for block in blocks {
            if block.is_empty() {
                return Err(Error::NotInPoset("empty block".into()));
            }
            let mut mask = 0u64;
            for &v in block {
                if !g.has_label(v) {
                    return Err(Error::NotInPoset(format!("unknown vertex {v}")));
                }
                mask |= 1 << v;
            }
            if mask.count_ones() as usize != block.len() {
                return Err(Error::NotInPoset(format!("repeated vertex in block {block:?}")));
            }
            if mask & seen != 0 {
                return Err(Error::NotInPoset(format!("block {block:?} overlaps another")));
            }
            if !g.is_connected_induced(block)? {
                return Err(Error::NotInPoset(format!(
                    "block {block:?} induces a disconnected subgraph"
                )));
            }
            seen |= mask;
            masks.push(mask);
        }
        if seen != g.vertex_mask() {
            return Err(Error::NotInPoset("blocks do not cover the vertex set".into()));
        }
        Ok(Self::from_masks(g.vertex_mask(), masks))
    }

    /// The partition into singletons (the bottom of the refinement order).
    pub fn all_singletons(g: &Graph) -> Self {
        let blocks = g.labels().iter().map(|&v| 1u64 << v).collect();
        ConnectedPartition {
            ground: g.vertex_mask(),
            blocks,
        }
    }

    /// The partition with a single non-trivial block (given as a mask) and
    /// singletons elsewhere.  The caller guarantees connectivity.
    pub(crate) fn one_block(ground: u64, block: u64) -> Self {
        debug_assert!(block & !ground == 0 && block != 0);
        let mut blocks = vec![block];
        let mut rest = ground & !block;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            blocks.push(v);
            rest ^= v;
        }
        Self::from_masks(ground, blocks)
    }

    pub(crate) fn from_masks(ground: u64, mut blocks: Vec<u64>) -> Self {
        blocks.sort_unstable_by_key(|b| b.trailing_zeros());
        debug_assert_eq!(blocks.iter().copied().fold(0, |a, b| a | b), ground);
        ConnectedPartition { ground, blocks }
    }

    /// Blocks as sorted label lists, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<u32>> {
        self.blocks.iter().map(|&m| mask_to_labels(m)).collect()
    }

    pub(crate) fn block_masks(&self) -> &[u64] {
        &self.blocks
    }

    pub(crate) fn ground_mask(&self) -> u64 {
        self.ground
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `Σ (|B| - 1)` over the blocks: the codimension of the associated
    /// subspace.
    pub fn codim(&self) -> usize {
        self.ground.count_ones() as usize - self.blocks.len()
    }

    /// Whether every block of `self` is contained in a block of `other`.
    /// Partitions over different ground sets are never comparable.
    pub fn refines(&self, other: &ConnectedPartition) -> bool {
        if self.ground != other.ground {
            return false;
        }
        self.blocks
            .iter()
            .all(|&b| other.blocks.iter().any(|&c| b & !c == 0))
    }

    /// Least common coarsening.  The join of Γ-connected partitions is again
    /// Γ-connected (merged blocks are chained through shared vertices), so
    /// no connectivity check is needed.
    pub fn join(&self, other: &ConnectedPartition) -> Result<ConnectedPartition> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(format!(
                "cannot join partitions of {:?} and {:?}",
                mask_to_labels(self.ground),
                mask_to_labels(other.ground)
            )));
        }
        let mut merged: Vec<u64> = self.blocks.clone();
        for &b in &other.blocks {
            let mut acc = b;
            merged.retain(|&m| {
                if m & acc != 0 {
                    acc |= m;
                    false
                } else {
                    true
                }
            });
            // Absorb transitive overlaps the first pass may have missed.
            loop {
                let before = merged.len();
                merged.retain(|&m| {
                    if m & acc != 0 {
                        acc |= m;
                        false
                    } else {
                        true
                    }
                });
                if merged.len() == before {
                    break;
                }
            }
            merged.push(acc);
        }
        Ok(Self::from_masks(self.ground, merged))
    }

    /// JSON form `[[1, 2], [3]]`: blocks sorted by smallest element.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.blocks
                .iter()
                .map(|&m| {
                    Value::Array(mask_to_labels(m).into_iter().map(|v| v.into()).collect())
                })
                .collect(),
        )
    }
}

impl fmt::Display for ConnectedPartition {
    /// Blocks separated by `|`, e.g. `1 2 | 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &m) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let labels = mask_to_labels(m);
            for (j, v) in labels.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn mask_to_labels(mut mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros());
        mask &= mask - 1;
    }
    out
}

/// Every Γ-connected partition of the vertex set of `g`, each exactly once,
/// in a deterministic order (the all-singletons partition comes first).
///
/// Blocks are grown along edges only, so no connectivity filtering happens
/// after the fact: for each partition the block of the smallest unassigned
/// vertex ranges over the connected subsets having it as minimum.
pub fn enumerate_connected_partitions(g: &Graph) -> Vec<ConnectedPartition> {
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    recurse(g, g.vertex_mask(), &mut blocks, &mut out);
    out
}

fn recurse(g: &Graph, unassigned: u64, blocks: &mut Vec<u64>, out: &mut Vec<ConnectedPartition>) {
    if unassigned == 0 {
        out.push(ConnectedPartition::from_masks(
            g.vertex_mask(),
            blocks.clone(),
        ));
        return;
    }
    let v = unassigned.trailing_zeros();
    for s in g.connected_subsets_with_min(unassigned, v) {
        blocks.push(s);
        recurse(g, unassigned & !s, blocks, out);
        blocks.pop();
    }
}

/// Reference enumeration of *all* set partitions of `items` (no graph in
/// sight), via restricted growth strings.  This is the brute-force oracle
/// the Γ-connected enumeration is tested against, and the partition source
/// for admissible-tree enumeration.
pub fn all_set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let n = items.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let block_count = rgs.iter().copied().max().unwrap() + 1;
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(items[i]);
        }
        out.push(blocks);

        // Advance the restricted growth string: rgs[i] <= max(rgs[..i]) + 1.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for r in rgs[i + 1..].iter_mut() {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

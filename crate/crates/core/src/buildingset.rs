//! Building sets of graphic arrangements, nested sets, and blow-up orders.
//!
//! For a graph Γ the *one-block building set* 𝒢(Γ) consists of the
//! partitions with a single non-trivial block, one for each connected
//! vertex subset of size ≥ 2.  On the torus side these index the subtori
//! that get blown up; on the linear side of a cone graph the same
//! construction contains both hyperplane-type elements (apex-free blocks)
//! and subspace-type elements (blocks through the apex), and the two
//! flavours are tracked by [`ElementKind`].
//!
//! A set of subspaces is *building* when, for every intersection of its
//! members, the minimal members containing that intersection meet
//! transversally and cut it out exactly.  In partition language the
//! intersection is the join, and transversality is codimension additivity
//! — which is how [`is_building`] decides it, with the exact linear
//! algebra of [`crate::linoracle`] available as an independent
//! cross-check.  A *nested set* is a subset whose antichains are exactly
//! the factor sets of their joins; for one-block building sets this is
//! the pairwise comparable-or-disjoint condition that [`is_nested`]
//! tests, while [`is_nested_by_factors`] runs the lattice definition
//! literally.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::partitions::{
    enumerate_connected_partitions, mask_to_labels, ConnectedPartition,
};

/// Where a building-set element lives.
///
/// * `Torus(n)`: the quotient torus of a graph on `1..=n`; ambient
///   dimension `n - 1`.
/// * `ConedLinear(n)`: the quotient vector space for the cone over a graph
///   on `1..=n` (so the cone has `n + 1` vertices including the apex `0`);
///   ambient dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmbientKind {
    Torus(usize),
    ConedLinear(usize),
}

impl AmbientKind {
    pub fn dim(&self) -> usize {
        match *self {
            AmbientKind::Torus(n) => n - 1,
            AmbientKind::ConedLinear(n) => n,
        }
    }

    /// Check that a graph matches this ambient: labels exactly `1..=n` for
    /// the torus, `0..=n` for the coned linear space.
    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        let ok = match *self {
            AmbientKind::Torus(n) => g.labels().iter().copied().eq(1..=n as u32),
            AmbientKind::ConedLinear(n) => g.labels().iter().copied().eq(0..=n as u32),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBuilding(format!(
                "graph labels {:?} do not match ambient {self:?}",
                g.labels()
            )))
        }
    }
}

/// Which stratum an element blows up.
///
/// `Type2` elements have the apex `0` in their block (subspace-type on the
/// linear side); `Type1` elements do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Type1,
    Type2,
}

/// One element of a building set: a connected block of size ≥ 2 together
/// with the ambient it lives in.  The kind is determined by the block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BuildingElement {
    block: u64,
    ambient: AmbientKind,
    kind: ElementKind,
}

impl BuildingElement {
    pub fn new(block: &[u32], ambient: AmbientKind) -> Result<Self> {
        let mut mask = 0u64;
        for &v in block {
            if v >= 64 {
                return Err(Error::InvalidBuilding(format!("label {v} out of range")));
            }
            mask |= 1 << v;
        }
        if (mask.count_ones() as usize) < 2 || mask.count_ones() as usize != block.len() {
            return Err(Error::InvalidBuilding(format!(
                "block {block:?} must have at least 2 distinct vertices"
            )));
        }
        let top = match ambient {
            AmbientKind::Torus(n) => {
                if mask & 1 != 0 {
                    return Err(Error::InvalidBuilding(
                        "torus elements cannot contain the apex 0".into(),
                    ));
                }
                n as u32
            }
            AmbientKind::ConedLinear(n) => n as u32,
        };
        if mask >> (top + 1) != 0 {
            return Err(Error::InvalidBuilding(format!(
                "block {block:?} does not fit in {ambient:?}"
            )));
        }
        Ok(Self::from_mask(mask, ambient))
    }

    pub(crate) fn from_mask(mask: u64, ambient: AmbientKind) -> Self {
        debug_assert!(mask.count_ones() >= 2);
        let kind = if mask & 1 != 0 {
            ElementKind::Type2
        } else {
            ElementKind::Type1
        };
        BuildingElement {
            block: mask,
            ambient,
            kind,
        }
    }

    pub fn block_labels(&self) -> Vec<u32> {
        mask_to_labels(self.block)
    }

    pub(crate) fn block_mask(&self) -> u64 {
        self.block
    }

    pub fn ambient(&self) -> AmbientKind {
        self.ambient
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn block_size(&self) -> usize {
        self.block.count_ones() as usize
    }

    /// Codimension of the blown-up stratum: `|block| - 1`.
    pub fn codim(&self) -> usize {
        self.block_size() - 1
    }

    /// Dimension of the stratum inside its ambient.
    pub fn dim(&self) -> usize {
        self.ambient.dim() - self.codim()
    }

    /// Whether the block of `other` is a subset of this block.  (On
    /// strata the containment reverses: a bigger block cuts out a
    /// smaller stratum.)
    pub fn block_contains(&self, other: &BuildingElement) -> bool {
        other.block & !self.block == 0
    }

    pub fn comparable_or_disjoint(&self, other: &BuildingElement) -> bool {
        let meet = self.block & other.block;
        meet == 0 || meet == self.block || meet == other.block
    }

    /// The one-block partition this element cuts out in its graph.
    pub(crate) fn to_partition(&self, g: &Graph) -> ConnectedPartition {
        ConnectedPartition::one_block(g.vertex_mask(), self.block)
    }

    /// JSON form `{"block": [...], "kind": "TYPE1" | "TYPE2"}`.
    pub fn to_json_value(&self) -> Value {
        let kind = match self.kind {
            ElementKind::Type1 => "TYPE1",
            ElementKind::Type2 => "TYPE2",
        };
        json!({ "block": self.block_labels(), "kind": kind })
    }

    /// Canonical order: by block size, then lexicographically by labels.
    fn canonical_key(&self) -> (usize, Vec<u32>) {
        (self.block_size(), self.block_labels())
    }
}

impl PartialOrd for BuildingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BuildingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

/// The one-block building set of `g` in the given ambient: one element per
/// connected vertex subset of size ≥ 2, sorted by (size, lex).
pub fn building_set(g: &Graph, ambient: AmbientKind) -> Result<Vec<BuildingElement>> {
    ambient.check_graph(g)?;
    let mut out: Vec<BuildingElement> = g
        .connected_subsets()
        .into_iter()
        .filter(|m| m.count_ones() >= 2)
        .map(|m| BuildingElement::from_mask(m, ambient))
        .collect();
    out.sort();
    Ok(out)
}

/// The building set of the cone of `g`, constructed directly on the base
/// graph: the images of the elements of 𝒢(g) (Type1) together with
/// `{0} ∪ S` for every non-empty subset `S` of the vertices (Type2).
///
/// This must coincide with `building_set(g.cone(), ConedLinear(n))` — the
/// cone of a connected subset is connected, and a connected subset through
/// the apex is `{0} ∪ S` for arbitrary `S` — and that equality is one of
/// the structural checks the test suite sweeps.
pub fn cone_building_set(g: &Graph) -> Result<Vec<BuildingElement>> {
    let n = g.vertex_count();
    let ambient = AmbientKind::ConedLinear(n);
    ambient.check_graph(&g.cone()?)?;
    let mut out: Vec<BuildingElement> = g
        .connected_subsets()
        .into_iter()
        .filter(|m| m.count_ones() >= 2)
        .map(|m| BuildingElement::from_mask(m, ambient))
        .collect();
    // Every {0} ∪ S with S non-empty: sweep the 2^n - 1 subsets directly.
    let labels = g.labels().to_vec();
    for mask in 1u64..(1 << n) {
        let mut block = 1u64; // the apex
        for (i, &v) in labels.iter().enumerate() {
            if mask & (1 << i) != 0 {
                block |= 1 << v;
            }
        }
        out.push(BuildingElement::from_mask(block, ambient));
    }
    out.sort();
    Ok(out)
}

/// The non-trivial factors of a partition inside a one-block building set:
/// the elements whose blocks are exactly the non-singleton blocks of `p`.
///
/// Errors if some non-singleton block is missing from `building` (in
/// particular if `p` is not in the poset the building set came from).
pub fn g_factors(
    p: &ConnectedPartition,
    building: &[BuildingElement],
) -> Result<Vec<BuildingElement>> {
    let mut out = Vec::new();
    for &mask in p.block_masks() {
        if mask.count_ones() < 2 {
            continue;
        }
        match building.iter().find(|e| e.block_mask() == mask) {
            Some(e) => out.push(e.clone()),
            None => {
                return Err(Error::NotInPoset(format!(
                    "block {:?} is not a building-set element",
                    mask_to_labels(mask)
                )))
            }
        }
    }
    Ok(out)
}

/// Pairwise nestedness: every two elements are comparable or disjoint.
/// This is the right notion for one-block building sets.
pub fn is_nested(elements: &[BuildingElement]) -> bool {
    elements.iter().enumerate().all(|(i, a)| {
        elements[i + 1..]
            .iter()
            .all(|b| a.comparable_or_disjoint(b))
    })
}

/// The lattice definition of nestedness, run literally: every subset of
/// ≥ 2 pairwise incomparable elements must be exactly the factor set of
/// some element of the Γ-connected partition poset.
///
/// Exponential in `|elements|` and linear in the poset — this is the slow
/// oracle that certifies [`is_nested`], not a routine to call in loops.
pub fn is_nested_by_factors(elements: &[BuildingElement], g: &Graph) -> bool {
    let poset = enumerate_connected_partitions(g);
    // Factor blocks of every lattice element, as sorted mask sets.
    let factor_sets: Vec<BTreeSet<u64>> = poset
        .iter()
        .map(|p| {
            p.block_masks()
                .iter()
                .copied()
                .filter(|m| m.count_ones() >= 2)
                .collect()
        })
        .collect();
    let k = elements.len();
    'subsets: for subset in 1u32..(1 << k) {
        if subset.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<&BuildingElement> = (0..k)
            .filter(|i| subset & (1 << i) != 0)
            .map(|i| &elements[i])
            .collect();
        for (i, a) in chosen.iter().enumerate() {
            for b in &chosen[i + 1..] {
                if a.block_contains(b) || b.block_contains(a) {
                    // Not an antichain; the condition does not apply.
                    continue 'subsets;
                }
            }
        }
        let wanted: BTreeSet<u64> = chosen.iter().map(|e| e.block_mask()).collect();
        if wanted.len() < chosen.len() {
            return false; // repeated blocks can never be a factor set
        }
        if !factor_sets.contains(&wanted) {
            return false;
        }
    }
    true
}

/// A nested set: elements of one building set, pairwise comparable or
/// disjoint, kept in canonical (size, lex) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NestedSet {
    elements: Vec<BuildingElement>,
}

impl NestedSet {
    pub fn empty() -> Self {
        NestedSet::default()
    }

    pub fn new(mut elements: Vec<BuildingElement>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0].ambient() != w[1].ambient()) {
            return Err(Error::InvalidBuilding(
                "nested set mixes elements of different ambients".into(),
            ));
        }
        elements.sort();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBuilding("repeated element".into()));
        }
        if !is_nested(&elements) {
            return Err(Error::InvalidBuilding(
                "elements are not pairwise comparable-or-disjoint".into(),
            ));
        }
        Ok(NestedSet { elements })
    }

    pub fn elements(&self) -> &[BuildingElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Every nested subset of `building` (the empty set included), each exactly
/// once, in depth-first order over the canonical element order.
pub fn enumerate_nested_sets(building: &[BuildingElement]) -> Vec<NestedSet> {
    let mut sorted = building.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    let mut current: Vec<BuildingElement> = Vec::new();
    fn rec(
        sorted: &[BuildingElement],
        start: usize,
        current: &mut Vec<BuildingElement>,
        out: &mut Vec<NestedSet>,
    ) {
        out.push(NestedSet {
            elements: current.clone(),
        });
        for i in start..sorted.len() {
            if current.iter().all(|e| e.comparable_or_disjoint(&sorted[i])) {
                current.push(sorted[i].clone());
                rec(sorted, i + 1, current, out);
                current.pop();
            }
        }
    }
    rec(&sorted, 0, &mut current, &mut out);
    out
}

/// Decide whether a set of Γ-connected partitions is building, by the
/// factor condition: for every join `L` of a subset, the maximal candidates
/// refining `L` must be transversal (codimensions add up to `codim L`) and
/// must join back to `L`.
pub fn is_building(candidates: &[ConnectedPartition], g: &Graph) -> Result<bool> {
    let mut set: Vec<ConnectedPartition> = Vec::new();
    for p in candidates {
        if p.ground_mask() != g.vertex_mask() {
            return Err(Error::GroundMismatch(
                "candidate partition is not over the graph's vertex set".into(),
            ));
        }
        if !set.contains(p) {
            set.push(p.clone());
        }
    }
    let closure = join_closure(&set)?;
    Ok(closure.iter().all(|l| factors_ok(l, &set)))
}

/// Same as [`is_building`] for one-block elements.
pub fn is_building_elements(elements: &[BuildingElement], g: &Graph) -> Result<bool> {
    let parts: Vec<ConnectedPartition> =
        elements.iter().map(|e| e.to_partition(g)).collect();
    is_building(&parts, g)
}

/// All joins of non-empty subsets of `set`.
fn join_closure(set: &[ConnectedPartition]) -> Result<Vec<ConnectedPartition>> {
    let mut closure: Vec<ConnectedPartition> = Vec::new();
    let mut queue: Vec<ConnectedPartition> = set.to_vec();
    while let Some(x) = queue.pop() {
        if closure.contains(&x) {
            continue;
        }
        for y in &closure {
            queue.push(x.join(y)?);
        }
        closure.push(x);
    }
    Ok(closure)
}

/// The building condition at a single join `l`.
fn factors_ok(l: &ConnectedPartition, set: &[ConnectedPartition]) -> bool {
    let candidates: Vec<&ConnectedPartition> =
        set.iter().filter(|p| p.refines(l)).collect();
    // Minimal subspaces containing l = maximal partitions refining l.
    // `set` holds no duplicates, so index inequality is value inequality.
    let maximal: Vec<&ConnectedPartition> = (0..candidates.len())
        .filter(|&i| {
            (0..candidates.len()).all(|j| j == i || !candidates[i].refines(candidates[j]))
        })
        .map(|i| candidates[i])
        .collect();
    let codim_sum: usize = maximal.iter().map(|p| p.codim()).sum();
    if codim_sum != l.codim() {
        return false;
    }
    let Some((first, rest)) = maximal.split_first() else {
        return false; // a join with no candidates below it
    };
    let mut acc = (*first).clone();
    for p in rest {
        let Ok(j) = acc.join(p) else { return false };
        acc = j;
    }
    acc == *l
}

/// Index (length) of the first prefix of `ordered` that is not building,
/// or `None` when every prefix is building.  Duplicate elements are an
/// error.  The closure is grown incrementally, so a full pass costs about
/// one closure computation, not one per prefix.
pub fn building_order_failure(
    ordered: &[BuildingElement],
    g: &Graph,
) -> Result<Option<usize>> {
    let mut seen = BTreeSet::new();
    for e in ordered {
        if !seen.insert(e.block_mask()) {
            return Err(Error::InvalidBuilding(format!(
                "element {:?} repeats in the order",
                e.block_labels()
            )));
        }
    }
    let mut set: Vec<ConnectedPartition> = Vec::new();
    let mut closure: Vec<ConnectedPartition> = Vec::new();
    for (k, e) in ordered.iter().enumerate() {
        let p = e.to_partition(g);
        // Extend the closure with every join involving the new element.
        let mut queue = vec![p.clone()];
        while let Some(x) = queue.pop() {
            if closure.contains(&x) {
                continue;
            }
            for y in &closure {
                queue.push(x.join(y)?);
            }
            closure.push(x);
        }
        set.push(p);
        if !closure.iter().all(|l| factors_ok(l, &set)) {
            return Ok(Some(k + 1));
        }
    }
    Ok(None)
}

/// Whether every prefix of `ordered` is building (a valid blow-up order).
pub fn is_building_order(ordered: &[BuildingElement], g: &Graph) -> Result<bool> {
    Ok(building_order_failure(ordered, g)?.is_none())
}

/// The canonical inclusion-refining order: biggest blocks (smallest
/// subspaces) first, ties broken lexicographically.
pub fn order_by_inclusion(building: &[BuildingElement]) -> Vec<BuildingElement> {
    let mut out = building.to_vec();
    out.sort_by(|a, b| {
        b.block_size()
            .cmp(&a.block_size())
            .then_with(|| a.block_labels().cmp(&b.block_labels()))
    });
    out
}

/// The two-segment order used on the toric side of the comparison: all
/// apex (Type2) elements first, then all Type1 elements, each segment by
/// decreasing block size with lexicographic ties.
///
/// Apex blocks are never contained in apex-free blocks, so this still
/// refines the inclusion order.
pub fn order_toric_style(building: &[BuildingElement]) -> Vec<BuildingElement> {
    let mut out = building.to_vec();
    out.sort_by(|a, b| {
        let seg = |e: &BuildingElement| match e.kind() {
            ElementKind::Type2 => 0,
            ElementKind::Type1 => 1,
        };
        seg(a)
            .cmp(&seg(b))
            .then_with(|| b.block_size().cmp(&a.block_size()))
            .then_with(|| a.block_labels().cmp(&b.block_labels()))
    });
    out
}

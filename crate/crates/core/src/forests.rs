//! Admissible trees and forests, special forests with an apex leaf, and
//! the degree-preserving bijection between triples (forest, forest,
//! permutation) and special forests.
//!
//! An *admissible tree* is a rooted tree with distinctly labeled leaves
//! in which every internal vertex has `k ≥ 3` children and carries an
//! exponent `e` with `1 ≤ e ≤ k - 2`; a single leaf is admissible.  The
//! *degree* of a tree is the sum of its exponents.  An *admissible
//! forest* is a set of admissible trees with pairwise disjoint leaf
//! sets.  These are in degree-preserving bijection with admissible
//! functions over the building set of a complete graph
//! ([`forest_of_admissible_function`]).
//!
//! A *special forest of type (n, m)* lives on leaves `{0, ..., n+m}`:
//! every tree avoiding the apex leaf 0 is one-sided (leaves inside
//! `{1..n}` or inside `{n+1..n+m}`), and cutting the apex's ancestor
//! chain out of its tree leaves only one-sided trees.  The bijection
//! [`triple_to_special_forest`] matches triples `(F1, F2, σ)` — with
//! `σ` permuting the combined tree list — to special forests, sending
//! `deg F1 + deg F2 + lec(σ)` to the forest degree; its inverse is
//! [`special_forest_to_triple`].

use std::collections::HashMap;

use itertools::Itertools;

use serde_json::{json, Value};

use crate::buildingset::AmbientKind;
use crate::cohomology::AdmissibleFunction;
use crate::error::{Error, Result};
use crate::partitions::mask_to_labels;
use crate::permstats::{hook_factorization, hook_with_inversions, NumberList};

/// A rooted tree with distinctly labeled leaves where every internal
/// vertex has at least 3 children and an exponent between 1 and
/// (children − 2).  Construct with [`AdmissibleTree::leaf`] and
/// [`AdmissibleTree::node`]; children are kept sorted by minimum leaf,
/// so structural equality is equality of unordered trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleTree(TreeRepr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum TreeRepr {
    Leaf(u32),
    Node { e: u32, children: Vec<AdmissibleTree> },
}

impl AdmissibleTree {
    /// The single-leaf tree.
    pub fn leaf(label: u32) -> Result<Self> {
        if label >= 64 {
            return Err(Error::InvalidForest(format!(
                "leaf label {label} out of range (labels must be < 64)"
            )));
        }
        Ok(AdmissibleTree(TreeRepr::Leaf(label)))
    }

    /// An internal vertex over `children` with exponent `e`.
    pub fn node(e: u32, mut children: Vec<AdmissibleTree>) -> Result<Self> {
        let k = children.len();
        if k < 3 {
            return Err(Error::InvalidForest(format!(
                "internal vertex needs at least 3 children, got {k}"
            )));
        }
        if e == 0 || e as usize > k - 2 {
            return Err(Error::InvalidForest(format!(
                "exponent {e} outside 1..={} for {k} children",
                k - 2
            )));
        }
        let mut seen = 0u64;
        for c in &children {
            let m = c.leaf_mask();
            if seen & m != 0 {
                return Err(Error::InvalidForest(format!(
                    "children leaf sets overlap on {:?}",
                    mask_to_labels(seen & m)
                )));
            }
            seen |= m;
        }
        children.sort_by_key(AdmissibleTree::min_leaf);
        Ok(AdmissibleTree(TreeRepr::Node { e, children }))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.0, TreeRepr::Leaf(_))
    }

    /// The label if this is a leaf.
    pub fn leaf_label(&self) -> Option<u32> {
        match self.0 {
            TreeRepr::Leaf(v) => Some(v),
            TreeRepr::Node { .. } => None,
        }
    }

    /// The root exponent if this is an internal vertex.
    pub fn exponent(&self) -> Option<u32> {
        match self.0 {
            TreeRepr::Leaf(_) => None,
            TreeRepr::Node { e, .. } => Some(e),
        }
    }

    /// Children in canonical order (empty slice for a leaf).
    pub fn children(&self) -> &[AdmissibleTree] {
        match &self.0 {
            TreeRepr::Leaf(_) => &[],
            TreeRepr::Node { children, .. } => children,
        }
    }

    /// Bitmask of the leaf labels.
    pub fn leaf_mask(&self) -> u64 {
        match &self.0 {
            TreeRepr::Leaf(v) => 1 << v,
            TreeRepr::Node { children, .. } => {
                children.iter().map(AdmissibleTree::leaf_mask).fold(0, |a, b| a | b)
            }
        }
    }

    /// Sorted leaf labels.
    pub fn leaf_labels(&self) -> Vec<u32> {
        mask_to_labels(self.leaf_mask())
    }

    pub fn min_leaf(&self) -> u32 {
        self.leaf_mask().trailing_zeros()
    }

    /// Sum of the exponents over all internal vertices.
    pub fn degree(&self) -> usize {
        match &self.0 {
            TreeRepr::Leaf(_) => 0,
            TreeRepr::Node { e, children } => {
                *e as usize + children.iter().map(AdmissibleTree::degree).sum::<usize>()
            }
        }
    }

    /// Apply a relabeling to every leaf; the images must stay distinct
    /// and below 64.
    fn map_labels(&self, f: &impl Fn(u32) -> u32) -> Result<Self> {
        match &self.0 {
            TreeRepr::Leaf(v) => AdmissibleTree::leaf(f(*v)),
            TreeRepr::Node { e, children } => {
                let mapped: Result<Vec<AdmissibleTree>> =
                    children.iter().map(|c| c.map_labels(f)).collect();
                AdmissibleTree::node(*e, mapped?)
            }
        }
    }

    /// JSON form: a leaf is a bare integer, an internal vertex is
    /// `{"e": exponent, "children": [...]}`.
    pub fn to_json_value(&self) -> Value {
        match &self.0 {
            TreeRepr::Leaf(v) => (*v).into(),
            TreeRepr::Node { e, children } => json!({
                "e": e,
                "children": children.iter().map(AdmissibleTree::to_json_value).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Parse a tree from the JSON form of [`AdmissibleTree::to_json_value`],
/// revalidating every invariant.
pub fn tree_from_json(v: &Value) -> Result<AdmissibleTree> {
    match v {
        Value::Number(num) => {
            let label = num
                .as_u64()
                .ok_or_else(|| Error::InvalidForest(format!("bad leaf label {num}")))?;
            let label = u32::try_from(label)
                .map_err(|_| Error::InvalidForest(format!("leaf label {label} too large")))?;
            AdmissibleTree::leaf(label)
        }
        Value::Object(map) => {
            let e = map
                .get("e")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::InvalidForest("node is missing \"e\"".into()))?;
            let e = u32::try_from(e)
                .map_err(|_| Error::InvalidForest(format!("exponent {e} too large")))?;
            let children = map
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidForest("node is missing \"children\"".into()))?;
            let children: Result<Vec<AdmissibleTree>> =
                children.iter().map(tree_from_json).collect();
            AdmissibleTree::node(e, children?)
        }
        other => Err(Error::InvalidForest(format!(
            "expected integer leaf or node object, got {other}"
        ))),
    }
}

/// A set of admissible trees with pairwise disjoint leaf sets, kept
/// sorted by minimum leaf.  The ground set is the union of the leaf
/// labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleForest {
    trees: Vec<AdmissibleTree>,
}

impl AdmissibleForest {
    pub fn from_trees(mut trees: Vec<AdmissibleTree>) -> Result<Self> {
        let mut seen = 0u64;
        for t in &trees {
            let m = t.leaf_mask();
            if seen & m != 0 {
                return Err(Error::InvalidForest(format!(
                    "trees overlap on leaves {:?}",
                    mask_to_labels(seen & m)
                )));
            }
            seen |= m;
        }
        trees.sort_by_key(AdmissibleTree::min_leaf);
        Ok(AdmissibleForest { trees })
    }

    /// The all-singleton forest on the given labels.
    pub fn singletons(labels: &[u32]) -> Result<Self> {
        let trees: Result<Vec<AdmissibleTree>> =
            labels.iter().map(|&v| AdmissibleTree::leaf(v)).collect();
        AdmissibleForest::from_trees(trees?)
    }

    pub fn trees(&self) -> &[AdmissibleTree] {
        &self.trees
    }

    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }

    pub fn ground_mask(&self) -> u64 {
        self.trees.iter().map(AdmissibleTree::leaf_mask).fold(0, |a, b| a | b)
    }

    pub fn labels(&self) -> Vec<u32> {
        mask_to_labels(self.ground_mask())
    }

    pub fn degree(&self) -> usize {
        self.trees.iter().map(AdmissibleTree::degree).sum()
    }

    /// Shift every leaf label by `delta` (used to move a forest between
    /// the two sides of a special forest).
    pub fn shift_labels(&self, delta: i64) -> Result<Self> {
        let trees: Result<Vec<AdmissibleTree>> = self
            .trees
            .iter()
            .map(|t| {
                t.map_labels(&|v| {
                    let shifted = v as i64 + delta;
                    u32::try_from(shifted).unwrap_or(u32::MAX)
                })
            })
            .collect();
        AdmissibleForest::from_trees(trees?)
    }

    /// JSON form: array of trees.
    pub fn to_json_value(&self) -> Value {
        Value::Array(self.trees.iter().map(AdmissibleTree::to_json_value).collect())
    }
}

/// Parse a forest from a JSON array of trees.
pub fn forest_from_json(v: &Value) -> Result<AdmissibleForest> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidForest(format!("expected array of trees, got {v}")))?;
    let trees: Result<Vec<AdmissibleTree>> = arr.iter().map(tree_from_json).collect();
    AdmissibleForest::from_trees(trees?)
}

fn labels_to_mask(labels: &[u32]) -> Result<u64> {
    let mut mask = 0u64;
    for &v in labels {
        if v >= 64 {
            return Err(Error::InvalidForest(format!("label {v} out of range")));
        }
        if mask & (1 << v) != 0 {
            return Err(Error::InvalidForest(format!("duplicate label {v}")));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// All set partitions of the bits of `mask`, each part a submask.
fn partitions_of_mask(mask: u64) -> Vec<Vec<u64>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask & !low;
    let mut out = Vec::new();
    // The part containing the lowest bit is `low | s` for a submask `s`
    // of the remaining bits; the other parts partition what is left.
    let mut s = rest;
    loop {
        for mut p in partitions_of_mask(rest & !s) {
            p.push(low | s);
            out.push(p);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & rest;
    }
    out
}

fn trees_on_mask(mask: u64, cache: &mut HashMap<u64, Vec<AdmissibleTree>>) -> Vec<AdmissibleTree> {
    if mask.count_ones() == 1 {
        return vec![AdmissibleTree(TreeRepr::Leaf(mask.trailing_zeros()))];
    }
    if let Some(hit) = cache.get(&mask) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for parts in partitions_of_mask(mask) {
        let k = parts.len();
        if k < 3 {
            continue;
        }
        let options: Vec<Vec<AdmissibleTree>> = parts
            .iter()
            .map(|&p| trees_on_mask(p, cache))
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue; // some part (e.g. of size 2) admits no tree
        }
        for combo in options.iter().multi_cartesian_product() {
            let children: Vec<AdmissibleTree> = combo.into_iter().cloned().collect();
            for e in 1..=(k - 2) as u32 {
                out.push(
                    AdmissibleTree::node(e, children.clone())
                        .expect("enumerated vertices satisfy the arity bounds"),
                );
            }
        }
    }
    cache.insert(mask, out.clone());
    out
}

/// Every admissible tree whose leaf set is exactly `labels`, once each.
pub fn enumerate_admissible_trees(labels: &[u32]) -> Result<Vec<AdmissibleTree>> {
    let mask = labels_to_mask(labels)?;
    if mask == 0 {
        return Err(Error::InvalidForest("a tree needs at least one leaf".into()));
    }
    let mut cache = HashMap::new();
    Ok(trees_on_mask(mask, &mut cache))
}

/// Every admissible forest on the given ground labels, once each.
pub fn enumerate_admissible_forests_on(labels: &[u32]) -> Result<Vec<AdmissibleForest>> {
    let mask = labels_to_mask(labels)?;
    if mask == 0 {
        return Err(Error::InvalidForest("a forest needs at least one leaf".into()));
    }
    let mut cache = HashMap::new();
    let mut out = Vec::new();
    for parts in partitions_of_mask(mask) {
        let options: Vec<Vec<AdmissibleTree>> = parts
            .iter()
            .map(|&p| trees_on_mask(p, &mut cache))
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        for combo in options.iter().multi_cartesian_product() {
            let trees: Vec<AdmissibleTree> = combo.into_iter().cloned().collect();
            out.push(AdmissibleForest::from_trees(trees).expect("parts are disjoint"));
        }
    }
    Ok(out)
}

/// Every admissible forest on `{1, ..., n}`, once each.
pub fn enumerate_admissible_forests(n: u32) -> Result<Vec<AdmissibleForest>> {
    let labels: Vec<u32> = (1..=n).collect();
    enumerate_admissible_forests_on(&labels)
}

/// Translate an admissible function into the forest whose internal
/// vertices are its support blocks (ancestry = block nesting, exponent =
/// function value) and whose leaves are the ambient coordinates.  Degree
/// is preserved.  Over the building set of a complete graph this is a
/// bijection onto admissible forests.
pub fn forest_of_admissible_function(f: &AdmissibleFunction) -> AdmissibleForest {
    let all_labels: Vec<u32> = match f.ambient() {
        AmbientKind::Torus(n) => (1..=n as u32).collect(),
        AmbientKind::ConedLinear(n) => (0..=n as u32).collect(),
    };
    // Support elements arrive sorted by block size, so the blocks nested
    // inside each block are already built when it is processed.
    let mut roots: Vec<(u64, AdmissibleTree)> = Vec::new();
    for (a, &e) in f.support().elements().iter().zip(f.exponents()) {
        let amask = a.block_mask();
        let (inside, keep): (Vec<_>, Vec<_>) =
            roots.into_iter().partition(|&(m, _)| m & !amask == 0);
        let covered = inside.iter().fold(0u64, |acc, &(m, _)| acc | m);
        let mut children: Vec<AdmissibleTree> = inside.into_iter().map(|(_, t)| t).collect();
        for v in mask_to_labels(amask & !covered) {
            children.push(AdmissibleTree(TreeRepr::Leaf(v)));
        }
        let node = AdmissibleTree::node(e, children)
            .expect("admissible exponents satisfy the arity bounds");
        roots = keep;
        roots.push((amask, node));
    }
    let covered = roots.iter().fold(0u64, |acc, &(m, _)| acc | m);
    let mut trees: Vec<AdmissibleTree> = roots.into_iter().map(|(_, t)| t).collect();
    for v in all_labels {
        if covered & (1 << v) == 0 {
            trees.push(AdmissibleTree(TreeRepr::Leaf(v)));
        }
    }
    AdmissibleForest::from_trees(trees).expect("support blocks are disjoint or nested")
}

/// An admissible forest on `{0, ..., n+m}` in which every tree avoiding
/// the apex leaf 0 is one-sided — leaves inside `{1..n}` or inside
/// `{n+1..n+m}` — and removing the apex's ancestor chain from its tree
/// leaves only one-sided trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialAdmissibleForest {
    forest: AdmissibleForest,
    n: u32,
    m: u32,
}

impl SpecialAdmissibleForest {
    pub fn new(forest: AdmissibleForest, n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 || n + m >= 64 {
            return Err(Error::InvalidForest(format!(
                "side sizes ({n}, {m}) out of range"
            )));
        }
        let expected = (1u64 << (n + m + 1)) - 1; // {0, ..., n+m}
        if forest.ground_mask() != expected {
            return Err(Error::InvalidForest(format!(
                "ground set {:?} is not {{0, ..., {}}}",
                forest.labels(),
                n + m
            )));
        }
        for tree in forest.trees() {
            if tree.leaf_mask() & 1 != 0 {
                for (_, attached) in spine_of(tree)? {
                    for sub in attached {
                        check_one_sided(sub, n, m)?;
                    }
                }
            } else {
                check_one_sided(tree, n, m)?;
            }
        }
        Ok(SpecialAdmissibleForest { forest, n, m })
    }

    pub fn forest(&self) -> &AdmissibleForest {
        &self.forest
    }

    /// The side sizes `(n, m)`.
    pub fn side_sizes(&self) -> (u32, u32) {
        (self.n, self.m)
    }

    pub fn degree(&self) -> usize {
        self.forest.degree()
    }

    /// JSON form: `{"n": ..., "m": ..., "trees": [...]}`.
    pub fn to_json_value(&self) -> Value {
        json!({ "n": self.n, "m": self.m, "trees": self.forest.to_json_value() })
    }
}

/// Parse a special forest from the JSON form of
/// [`SpecialAdmissibleForest::to_json_value`].
pub fn special_forest_from_json(v: &Value) -> Result<SpecialAdmissibleForest> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidForest(format!("expected special-forest object, got {v}")))?;
    let side = |key: &str| -> Result<u32> {
        let raw = obj
            .get(key)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidForest(format!("missing side size \"{key}\"")))?;
        u32::try_from(raw).map_err(|_| Error::InvalidForest(format!("side size {raw} too large")))
    };
    let trees = obj
        .get("trees")
        .ok_or_else(|| Error::InvalidForest("missing \"trees\"".into()))?;
    SpecialAdmissibleForest::new(forest_from_json(trees)?, side("n")?, side("m")?)
}

fn check_one_sided(tree: &AdmissibleTree, n: u32, m: u32) -> Result<()> {
    let side1 = ((1u64 << (n + 1)) - 1) & !1; // {1..n}
    let side2 = ((1u64 << (n + m + 1)) - 1) & !((1u64 << (n + 1)) - 1); // {n+1..n+m}
    let mask = tree.leaf_mask();
    if mask & !side1 == 0 || mask & !side2 == 0 {
        Ok(())
    } else {
        Err(Error::InvalidForest(format!(
            "tree on {:?} straddles the sides {{1..{n}}} and {{{}..{}}}",
            tree.leaf_labels(),
            n + 1,
            n + m
        )))
    }
}

/// Walk the ancestor chain of the apex leaf 0 from the root inward,
/// returning `(exponent, attached subtrees)` per chain vertex — the
/// subtrees are the children *not* containing 0.  A bare apex leaf has
/// an empty chain.
fn spine_of(tree: &AdmissibleTree) -> Result<Vec<(u32, Vec<&AdmissibleTree>)>> {
    let mut levels = Vec::new();
    let mut cur = tree;
    loop {
        match &cur.0 {
            TreeRepr::Leaf(0) => return Ok(levels),
            TreeRepr::Leaf(v) => {
                return Err(Error::InvalidForest(format!(
                    "walked to leaf {v} while looking for the apex 0"
                )))
            }
            TreeRepr::Node { e, children } => {
                let mut zero_child = None;
                let mut attached = Vec::new();
                for c in children {
                    if c.leaf_mask() & 1 != 0 {
                        zero_child = Some(c);
                    } else {
                        attached.push(c);
                    }
                }
                let Some(next) = zero_child else {
                    return Err(Error::InvalidForest(
                        "tree does not contain the apex leaf 0".into(),
                    ));
                };
                levels.push((*e, attached));
                cur = next;
            }
        }
    }
}

/// Every special forest of type `(n, m)`, once each.
pub fn enumerate_special_forests(n: u32, m: u32) -> Result<Vec<SpecialAdmissibleForest>> {
    if n == 0 || m == 0 || n + m >= 64 {
        return Err(Error::InvalidForest(format!(
            "side sizes ({n}, {m}) out of range"
        )));
    }
    let labels: Vec<u32> = (0..=n + m).collect();
    Ok(enumerate_admissible_forests_on(&labels)?
        .into_iter()
        .filter_map(|f| SpecialAdmissibleForest::new(f, n, m).ok())
        .collect())
}

fn contiguous_ground_from_one(forest: &AdmissibleForest, what: &str) -> Result<u32> {
    let mask = forest.ground_mask();
    let n = mask.count_ones();
    if n == 0 || mask != ((1u64 << (n + 1)) - 2) {
        return Err(Error::InvalidForest(format!(
            "{what} must live on {{1, ..., k}}, got labels {:?}",
            forest.labels()
        )));
    }
    Ok(n)
}

/// Combine two admissible forests and a permutation of their combined
/// tree list into the special forest of type `(n, m)` they encode.
///
/// The trees of `f1` (on `{1..n}`) are listed before those of `f2` (on
/// `{1..m}`, relabeled to `{n+1..n+m}`), each side ordered by minimum
/// leaf.  The permutation factors uniquely into an increasing prefix and
/// hooks; the prefix trees stay detached, while the hooks build the
/// apex's ancestor chain from the inside out — a hook `η` becomes a
/// vertex with exponent `|inv(η)|` whose children are the previous chain
/// (initially the apex leaf 0) plus the trees indexed by `η`.
///
/// The degree of the output is `deg f1 + deg f2 + lec(s)`.
pub fn triple_to_special_forest(
    f1: &AdmissibleForest,
    f2: &AdmissibleForest,
    s: &NumberList,
) -> Result<SpecialAdmissibleForest> {
    let n = contiguous_ground_from_one(f1, "the first forest")?;
    let m = contiguous_ground_from_one(f2, "the second forest")?;
    if n + m >= 64 {
        return Err(Error::InvalidForest(format!(
            "combined ground {{0, ..., {}}} out of range",
            n + m
        )));
    }
    let shifted = f2.shift_labels(n as i64)?;
    let taus: Vec<&AdmissibleTree> = f1.trees().iter().chain(shifted.trees()).collect();
    if !s.is_permutation_of(taus.len()) {
        return Err(Error::InvalidList(format!(
            "expected a permutation of 1..={}, got {:?}",
            taus.len(),
            s.values()
        )));
    }
    let factorization = hook_factorization(s);
    let mut spine: Option<AdmissibleTree> = None;
    for hook in factorization.hooks.iter().rev() {
        let inner = match spine.take() {
            Some(t) => t,
            None => AdmissibleTree::leaf(0)?,
        };
        let mut children = vec![inner];
        children.extend(hook.values().iter().map(|&j| taus[j as usize - 1].clone()));
        spine = Some(AdmissibleTree::node(
            hook.inversion_count() as u32,
            children,
        )?);
    }
    let mut trees: Vec<AdmissibleTree> = factorization
        .prefix
        .values()
        .iter()
        .map(|&j| taus[j as usize - 1].clone())
        .collect();
    match spine {
        Some(t) => trees.push(t),
        None => trees.push(AdmissibleTree::leaf(0)?),
    }
    SpecialAdmissibleForest::new(AdmissibleForest::from_trees(trees)?, n, m)
}

/// Invert [`triple_to_special_forest`]: peel the apex's ancestor chain
/// from the root inward, turning each chain vertex with exponent `i` and
/// attached trees at positions `V` (in the canonical combined order)
/// into the unique hook on `V` with `i` inversions; the permutation is
/// the detached trees' positions followed by the hooks, and the attached
/// and detached trees split back into the two side forests.
pub fn special_forest_to_triple(
    sf: &SpecialAdmissibleForest,
) -> Result<(AdmissibleForest, AdmissibleForest, NumberList)> {
    let (n, _) = sf.side_sizes();
    let side1 = ((1u64 << (n + 1)) - 1) & !1;
    let mut detached: Vec<&AdmissibleTree> = Vec::new();
    let mut spine_levels: Vec<(u32, Vec<&AdmissibleTree>)> = Vec::new();
    for tree in sf.forest().trees() {
        if tree.leaf_mask() & 1 != 0 {
            spine_levels = spine_of(tree)?;
        } else {
            detached.push(tree);
        }
    }
    // Reconstruct the canonical combined order: side-1 trees then side-2
    // trees, each by minimum leaf.  Minimum leaves are distinct, so they
    // identify positions.
    let mut side_trees: Vec<&AdmissibleTree> = detached.clone();
    for (_, attached) in &spine_levels {
        side_trees.extend(attached.iter().copied());
    }
    side_trees.sort_by_key(|t| {
        let one_sided = t.leaf_mask() & !side1 == 0;
        (!one_sided, t.min_leaf())
    });
    let position: HashMap<u32, u32> = side_trees
        .iter()
        .enumerate()
        .map(|(i, t)| (t.min_leaf(), i as u32 + 1))
        .collect();

    let mut word: Vec<u32> = detached.iter().map(|t| position[&t.min_leaf()]).collect();
    word.sort_unstable();
    for (e, attached) in &spine_levels {
        let mut v: Vec<u32> = attached.iter().map(|t| position[&t.min_leaf()]).collect();
        v.sort_unstable();
        word.extend(hook_with_inversions(&v, *e as usize)?.values());
    }
    let s = NumberList::new(word)?;

    let f1 = AdmissibleForest::from_trees(
        side_trees
            .iter()
            .filter(|t| t.leaf_mask() & !side1 == 0)
            .map(|&t| t.clone())
            .collect(),
    )?;
    let f2 = AdmissibleForest::from_trees(
        side_trees
            .iter()
            .filter(|t| t.leaf_mask() & !side1 != 0)
            .map(|&t| t.clone())
            .collect(),
    )?
    .shift_labels(-(n as i64))?;
    Ok((f1, f2, s))
}

//! Finite simple graphs with small integer labels, their cones, and the
//! connectivity queries everything downstream is built on.
//!
//! Vertices are labelled by distinct integers below 64, so vertex subsets
//! are `u64` bitmasks and connectivity checks are a few word operations.
//! Ordinary graphs are labelled `1..=n`; the label `0` is reserved for the
//! apex introduced by [`Graph::cone`], which is how the linear side of the
//! toric/linear comparison is produced.

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A simple undirected graph on distinct labels `< 64`.
///
/// Edges are stored normalized as `(min, max)` pairs in sorted order, so
/// structural equality compares graphs up to nothing — identical labelled
/// graphs are identical values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u32>,
    edges: Vec<(u32, u32)>,
    vmask: u64,
    adj: Vec<u64>,
}

impl Graph {
    /// Build a graph from explicit labels and edges.
    ///
    /// Rejects fewer than 2 vertices, labels ≥ 64, duplicate labels, loop
    /// edges, duplicate edges, and edges with undeclared endpoints.
    pub fn new(labels: Vec<u32>, edges: Vec<(u32, u32)>) -> Result<Graph> {
        if labels.len() < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {}",
                labels.len()
            )));
        }
        let mut vmask = 0u64;
        for &v in &labels {
            if v >= 64 {
                return Err(Error::InvalidGraph(format!("label {v} out of range (max 63)")));
            }
            if vmask & (1 << v) != 0 {
                return Err(Error::InvalidGraph(format!("duplicate label {v}")));
            }
            vmask |= 1 << v;
        }
        let mut labels = labels;
        labels.sort_unstable();

        let top = *labels.last().expect("non-empty") as usize;
        let mut adj = vec![0u64; top + 1];
        let mut norm: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop edge at vertex {a}")));
            }
            for v in [a, b] {
                if v >= 64 || vmask & (1 << v) == 0 {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({a}, {b}) uses undeclared vertex {v}"
                    )));
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        for &(a, b) in &norm {
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
        Ok(Graph {
            labels,
            edges: norm,
            vmask,
            adj,
        })
    }

    /// The complete graph `K_n` on `1..=n`.
    pub fn complete(n: u32) -> Result<Graph> {
        let labels: Vec<u32> = (1..=n).collect();
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                edges.push((i, j));
            }
        }
        Graph::new(labels, edges)
    }

    /// The path `1 - 2 - ... - n`.
    pub fn path(n: u32) -> Result<Graph> {
        let labels: Vec<u32> = (1..=n).collect();
        let edges: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::new(labels, edges)
    }

    /// The cycle on `1..=n` (for `n = 2` this is a single edge, i.e. `K_2`).
    pub fn cycle(n: u32) -> Result<Graph> {
        let labels: Vec<u32> = (1..=n).collect();
        let mut edges: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        if n > 2 {
            edges.push((1, n));
        }
        Graph::new(labels, edges)
    }

    /// `n` isolated vertices `1..=n`.
    pub fn edgeless(n: u32) -> Result<Graph> {
        Graph::new((1..=n).collect(), Vec::new())
    }

    /// The disjoint union `K_n ⊔ K_m`: a complete graph on `1..=n` and a
    /// complete graph on `n+1..=n+m`, with no edges between the parts.
    pub fn disjoint_complete(n: u32, m: u32) -> Result<Graph> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidGraph(
                "disjoint-complete needs both part sizes positive".into(),
            ));
        }
        let labels: Vec<u32> = (1..=n + m).collect();
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                edges.push((i, j));
            }
        }
        for i in (n + 1)..=(n + m) {
            for j in (i + 1)..=(n + m) {
                edges.push((i, j));
            }
        }
        Graph::new(labels, edges)
    }

    /// The cone: a new apex vertex `0` joined to every existing vertex.
    ///
    /// Coning is a one-shot operation; a graph that already contains the
    /// apex label cannot be coned again.
    pub fn cone(&self) -> Result<Graph> {
        if self.has_label(0) {
            return Err(Error::InvalidGraph(
                "graph already contains the apex label 0".into(),
            ));
        }
        let mut labels = self.labels.clone();
        labels.push(0);
        let mut edges = self.edges.clone();
        for &v in &self.labels {
            edges.push((0, v));
        }
        Graph::new(labels, edges)
    }

    /// Sorted vertex labels.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Sorted normalized edge list.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn has_label(&self, v: u32) -> bool {
        v < 64 && self.vmask & (1 << v) != 0
    }

    /// Bitmask of all vertex labels.
    pub(crate) fn vertex_mask(&self) -> u64 {
        self.vmask
    }

    /// Bitmask of the neighbours of `v`.
    pub(crate) fn adjacency(&self, v: u32) -> u64 {
        self.adj.get(v as usize).copied().unwrap_or(0)
    }

    /// Whether the subgraph induced by the non-empty subset `mask ⊆ vertices`
    /// is connected.
    pub(crate) fn connected_mask(&self, mask: u64) -> bool {
        debug_assert!(mask != 0 && mask & !self.vmask == 0);
        let start = 1u64 << mask.trailing_zeros();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros();
            frontier &= frontier - 1;
            let new = self.adj[v as usize] & mask & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == mask
    }

    /// Whether the subgraph induced by `subset` is connected.
    ///
    /// Errors on an empty subset or on labels the graph does not have;
    /// repeated labels are treated as a set.
    pub fn is_connected_induced(&self, subset: &[u32]) -> Result<bool> {
        if subset.is_empty() {
            return Err(Error::InvalidSubset("empty subset".into()));
        }
        let mut mask = 0u64;
        for &v in subset {
            if !self.has_label(v) {
                return Err(Error::InvalidSubset(format!("unknown vertex {v}")));
            }
            mask |= 1 << v;
        }
        Ok(self.connected_mask(mask))
    }

    /// All connected subsets `S ⊆ allowed` with `min(S) = v`, as bitmasks.
    ///
    /// Enumerates each subset exactly once by growing `S` along edges and
    /// permanently excluding a candidate from all later branches once the
    /// branch that adds it has been explored.
    pub(crate) fn connected_subsets_with_min(&self, allowed: u64, v: u32) -> Vec<u64> {
        debug_assert!(allowed & (1 << v) != 0);
        // Nothing below v may appear, otherwise v is not the minimum.
        let allowed = allowed & !((1u64 << v) - 1) & self.vmask;
        let start = 1u64 << v;
        let mut out = Vec::new();
        self.grow(start, self.adjacency(v) & allowed & !start, allowed, &mut out);
        out
    }

    fn grow(&self, s: u64, ext: u64, allowed: u64, out: &mut Vec<u64>) {
        out.push(s);
        let mut allowed = allowed;
        let mut rest = ext;
        while rest != 0 {
            let u = rest.trailing_zeros();
            let ubit = 1u64 << u;
            rest &= rest - 1;
            let s2 = s | ubit;
            // Candidates for the subtree: the untried remainder of the
            // current frontier plus the new neighbours u brings in.
            let ext2 = (rest | (self.adjacency(u) & allowed)) & !s2;
            self.grow(s2, ext2, allowed, out);
            // Everything reachable through u has been enumerated; ban u
            // from all later branches and their descendants, otherwise a
            // subset would be found once per spanning order.
            allowed &= !ubit;
        }
    }

    /// All connected induced subsets of the whole graph, as bitmasks,
    /// smallest minimum label first.
    pub(crate) fn connected_subsets(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &v in &self.labels {
            out.extend(self.connected_subsets_with_min(self.vmask, v));
        }
        out
    }

    /// Canonical JSON form `{"n": N, "edges": [[i, j], ...]}`.
    ///
    /// Only graphs labelled exactly `1..=n` have this form; a cone graph
    /// (which contains the apex `0`) must be reconstructed from its base.
    pub fn to_json_value(&self) -> Result<Value> {
        let n = self.labels.len() as u32;
        if self.labels.iter().copied().ne(1..=n) {
            return Err(Error::InvalidGraph(
                "only graphs labelled 1..=n have a canonical JSON form".into(),
            ));
        }
        let edges: Vec<Value> = self.edges.iter().map(|&(a, b)| json!([a, b])).collect();
        Ok(json!({ "n": n, "edges": edges }))
    }
}

/// Parse a graph from either a family string or canonical JSON.
///
/// Family strings: `complete:N`, `path:N`, `cycle:N`, `edgeless:N`,
/// `disjoint-complete:N,M`, and `cone:<family>` (applied recursively, e.g.
/// `cone:complete:3`).  JSON input is `{"n": N, "edges": [[i, j], ...]}`
/// with vertices `1..=N`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let text = text.trim();
    if text.starts_with('{') {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        return graph_from_json(&v);
    }
    parse_family(text)
}

/// Parse the canonical JSON form `{"n": N, "edges": [[i, j], ...]}`.
pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("graph JSON needs a numeric \"n\" field".into()))?;
    if n > 63 {
        return Err(Error::Parse(format!("n = {n} out of range")));
    }
    let edges_v = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("graph JSON needs an \"edges\" array".into()))?;
    let mut edges = Vec::with_capacity(edges_v.len());
    for e in edges_v {
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
            Error::Parse(format!("edge {e} is not a two-element array"))
        })?;
        let a = pair[0]
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("edge endpoint {} is not an integer", pair[0])))?;
        let b = pair[1]
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("edge endpoint {} is not an integer", pair[1])))?;
        if a < 1 || a > n || b < 1 || b > n {
            return Err(Error::Parse(format!(
                "edge [{a}, {b}] out of range for n = {n} (vertices are 1-indexed)"
            )));
        }
        edges.push((a as u32, b as u32));
    }
    Graph::new((1..=n as u32).collect(), edges)
}

fn parse_family(text: &str) -> Result<Graph> {
    let (name, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unknown graph family {text:?}")))?;
    match name {
        "cone" => parse_family(rest)?.cone(),
        "complete" => Graph::complete(parse_count(rest)?),
        "path" => Graph::path(parse_count(rest)?),
        "cycle" => Graph::cycle(parse_count(rest)?),
        "edgeless" => Graph::edgeless(parse_count(rest)?),
        "disjoint-complete" => {
            let (a, b) = rest.split_once(',').ok_or_else(|| {
                Error::Parse("disjoint-complete takes two sizes, e.g. disjoint-complete:3,4".into())
            })?;
            Graph::disjoint_complete(parse_count(a)?, parse_count(b)?)
        }
        _ => Err(Error::Parse(format!("unknown graph family {name:?}"))),
    }
}

fn parse_count(s: &str) -> Result<u32> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| Error::Parse(format!("invalid size {s:?}")))
}

/// All `2^binom(n,2)` labelled graphs on vertices `1..=n`, by edge subset.
///
/// The edge order is the normalized sorted order, so
/// [`graph_from_edge_mask`] with masks `0..total` replays the same sweep.
pub fn enumerate_graphs(n: u32) -> Vec<Graph> {
    let pairs = all_pairs(n);
    (0..(1u64 << pairs.len()))
        .map(|mask| from_mask(n, &pairs, mask))
        .collect()
}

/// The graph on `1..=n` whose edge set is selected by `mask` over the
/// sorted list of all vertex pairs.  Masks beyond `2^binom(n,2)` wrap.
pub fn graph_from_edge_mask(n: u32, mask: u64) -> Graph {
    let pairs = all_pairs(n);
    from_mask(n, &pairs, mask & ((1u64 << pairs.len()) - 1))
}

fn all_pairs(n: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            pairs.push((i, j));
        }
    }
    debug_assert!(pairs.len() < 64, "edge masks only cover n <= 11");
    pairs
}

fn from_mask(n: u32, pairs: &[(u32, u32)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &e)| e)
        .collect();
    Graph::new((1..=n).collect(), edges).expect("edge-mask graphs are always valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(Graph::complete(4).unwrap().edges().len(), 6);
        assert_eq!(Graph::path(3).unwrap().edges(), &[(1, 2), (2, 3)]);
        // The 3-cycle and the triangle are the same labelled graph.
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3).unwrap());
        assert_eq!(Graph::edgeless(3).unwrap().edges().len(), 0);
        let g = Graph::disjoint_complete(3, 4).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edges().len(), 3 + 6);
        assert!(!g.is_connected_induced(&[3, 4]).unwrap());
        assert!(Graph::complete(1).is_err());
        assert!(Graph::disjoint_complete(0, 4).is_err());
    }

    #[test]
    fn cone_adds_an_apex_joined_to_everything() {
        let k2 = Graph::complete(2).unwrap();
        let c = k2.cone().unwrap();
        assert_eq!(c.labels(), &[0, 1, 2]);
        assert_eq!(c.edges(), &[(0, 1), (0, 2), (1, 2)]);
        // cone(K_n) is K_{n+1} up to the 0-based labelling.
        assert_eq!(c.edges().len(), 3);
        assert!(c.cone().is_err());
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(Graph::new(vec![1], vec![]).is_err());
        assert!(Graph::new(vec![1, 2, 2], vec![]).is_err());
        assert!(Graph::new(vec![1, 64], vec![]).is_err());
        assert!(Graph::new(vec![1, 2], vec![(1, 1)]).is_err());
        assert!(Graph::new(vec![1, 2], vec![(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(vec![1, 2], vec![(1, 3)]).is_err());
    }

    #[test]
    fn parse_families_and_json() {
        assert_eq!(parse_graph("complete:3").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(
            parse_graph("cone:complete:3").unwrap(),
            Graph::complete(3).unwrap().cone().unwrap()
        );
        assert_eq!(
            parse_graph("disjoint-complete:3,4").unwrap(),
            Graph::disjoint_complete(3, 4).unwrap()
        );
        let g = parse_graph(r#"{"n": 3, "edges": [[1, 2], [2, 3]]}"#).unwrap();
        assert_eq!(g, Graph::path(3).unwrap());

        assert!(parse_graph("complete:1").is_err());
        assert!(parse_graph("complete:x").is_err());
        assert!(parse_graph("frobnicate:3").is_err());
        assert!(parse_graph(r#"{"n": 1, "edges": []}"#).is_err());
        assert!(parse_graph(r#"{"n": 3, "edges": [[1, 1]]}"#).is_err());
        assert!(parse_graph(r#"{"n": 3, "edges": [[0, 1]]}"#).is_err());
        assert!(parse_graph(r#"{"n": 3, "edges": [[1, 2], [1, 2]]}"#).is_err());
    }

    #[test]
    fn json_round_trip_is_identity() {
        for text in ["complete:4", "path:5", "disjoint-complete:2,3"] {
            let g = parse_graph(text).unwrap();
            let v = g.to_json_value().unwrap();
            assert_eq!(graph_from_json(&v).unwrap(), g);
        }
        // Cone graphs contain 0 and have no canonical {"n", "edges"} form.
        assert!(parse_graph("cone:path:3").unwrap().to_json_value().is_err());
    }

    #[test]
    fn induced_connectivity() {
        let p3 = Graph::path(3).unwrap();
        assert!(p3.is_connected_induced(&[1, 2]).unwrap());
        assert!(p3.is_connected_induced(&[2]).unwrap());
        assert!(p3.is_connected_induced(&[1, 2, 3]).unwrap());
        assert!(!p3.is_connected_induced(&[1, 3]).unwrap());
        assert!(p3.is_connected_induced(&[]).is_err());
        assert!(p3.is_connected_induced(&[1, 7]).is_err());
    }

    #[test]
    fn connected_subset_enumeration_matches_brute_force() {
        for g in [
            Graph::path(4).unwrap(),
            Graph::complete(4).unwrap(),
            Graph::cycle(5).unwrap(),
            Graph::disjoint_complete(2, 3).unwrap(),
            Graph::path(3).unwrap().cone().unwrap(),
        ] {
            let mut fast = g.connected_subsets();
            fast.sort_unstable();
            let brute: Vec<u64> = (1..=g.vertex_mask())
                .filter(|m| m & !g.vertex_mask() == 0 && g.connected_mask(*m))
                .collect();
            assert_eq!(fast.len(), brute.len(), "duplicate or missing subsets");
            assert_eq!(fast, brute, "wrong subset family for {g:?}");
        }
        // Every non-empty subset of a complete graph is connected.
        assert_eq!(Graph::complete(5).unwrap().connected_subsets().len(), 31);
        // Connected subsets of a path are exactly the intervals.
        assert_eq!(Graph::path(4).unwrap().connected_subsets().len(), 10);
    }

    #[test]
    fn graph_sweep_has_full_size() {
        assert_eq!(enumerate_graphs(3).len(), 8);
        assert_eq!(enumerate_graphs(5).len(), 1024);
        let g = graph_from_edge_mask(4, 0b111111);
        assert_eq!(g, Graph::complete(4).unwrap());
    }
}

//! Admissible functions over a building set and the Poincaré polynomials
//! of both wonderful models.
//!
//! An *admissible function* assigns a positive exponent to each element of
//! a nested support, subject to `f(A) < dim M_f(A) - dim A`, where
//! `M_f(A)` is the intersection of the support elements properly
//! containing the stratum of `A` (the ambient space if there are none).
//! The associated monomials form additive bases of the cohomology of the
//! wonderful models, so Poincaré polynomials are computed by pure
//! counting:
//!
//! * linear side: each admissible `f` contributes `q^{Σ f}`;
//! * toric side: each admissible `f` contributes `q^{Σ f} · A_k(q)/q`,
//!   where `A_k` is an Eulerian polynomial and `k` counts the blocks of
//!   the partition joined from the support (see [`k_of_admissible`]).
//!
//! The toric model of a graph and the linear model of its cone have equal
//! Poincaré polynomials; [`verify_model_iso`] checks that equality on any
//! graph, and the test suite sweeps it exhaustively.

use std::fmt;

use serde_json::{json, Value};

use crate::buildingset::{
    building_set, cone_building_set, AmbientKind, BuildingElement, NestedSet,
};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::permstats::eulerian_poly;
use crate::qpoly::QPoly;

/// An admissible function: a nested support with a positive exponent per
/// element, each below the element's allowance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFunction {
    support: NestedSet,
    exponents: Vec<u32>,
    ambient: AmbientKind,
}

impl AdmissibleFunction {
    /// The function `f ≡ 0` (empty support), always admissible.
    pub fn zero(ambient: AmbientKind) -> Self {
        AdmissibleFunction {
            support: NestedSet::empty(),
            exponents: Vec::new(),
            ambient,
        }
    }

    /// Build from a support and parallel exponent vector, validating
    /// admissibility of every exponent.
    pub fn new(support: NestedSet, exponents: Vec<u32>, ambient: AmbientKind) -> Result<Self> {
        if support.len() != exponents.len() {
            return Err(Error::InvalidBuilding(format!(
                "{} support elements but {} exponents",
                support.len(),
                exponents.len()
            )));
        }
        if let Some(e) = support.elements().iter().find(|e| e.ambient() != ambient) {
            return Err(Error::InvalidBuilding(format!(
                "support element {:?} lives in {:?}, not {ambient:?}",
                e.block_labels(),
                e.ambient()
            )));
        }
        for (a, &e) in support.elements().iter().zip(&exponents) {
            let allow = allowance(a, &support, ambient);
            if e == 0 || e as usize >= allow {
                return Err(Error::InvalidBuilding(format!(
                    "exponent {e} on block {:?} outside 1..={}",
                    a.block_labels(),
                    allow.saturating_sub(1)
                )));
            }
        }
        Ok(AdmissibleFunction {
            support,
            exponents,
            ambient,
        })
    }

    pub fn support(&self) -> &NestedSet {
        &self.support
    }

    /// Exponents parallel to `support().elements()`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn ambient(&self) -> AmbientKind {
        self.ambient
    }

    /// The value of the function on an element (0 off the support).
    pub fn value(&self, a: &BuildingElement) -> u32 {
        self.support
            .elements()
            .iter()
            .position(|e| e == a)
            .map_or(0, |i| self.exponents[i])
    }

    /// `Σ_A f(A)`: the q-degree of the associated monomial.
    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    /// JSON form: `{"support": [{"block": [...], "kind": ..., "e": k}, ...],
    /// "degree": d}`.
    pub fn to_json_value(&self) -> Value {
        let support: Vec<Value> = self
            .support
            .elements()
            .iter()
            .zip(&self.exponents)
            .map(|(a, &e)| {
                let mut v = a.to_json_value();
                v["e"] = e.into();
                v
            })
            .collect();
        json!({ "support": support, "degree": self.degree() })
    }
}

impl fmt::Display for AdmissibleFunction {
    /// Monomial notation, e.g. `{1 2 3}^1 {1 2 3 4}^2`; `f ≡ 0` prints `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, e)) in self.support.elements().iter().zip(&self.exponents).enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, v) in a.block_labels().iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}^{e}")?;
        }
        Ok(())
    }
}

/// `dim M_f(a) - dim a` for `a` relative to a (candidate) support: the
/// codimension of `a` minus the codimension of the join of the support
/// blocks strictly contained in `a`'s block.  When nothing in the support
/// properly contains the stratum of `a`, that join is the ambient space
/// and the allowance is the full codimension of `a`.
///
/// Exponents on `a` range over `1..=allowance - 1`, so an element can
/// carry an exponent only if its allowance is at least 2 — which rules
/// out every block of size 2.
pub fn allowance(a: &BuildingElement, support: &NestedSet, ambient: AmbientKind) -> usize {
    debug_assert_eq!(a.ambient(), ambient);
    let inside: Vec<u64> = support
        .elements()
        .iter()
        .map(BuildingElement::block_mask)
        .filter(|&m| m != a.block_mask() && m & !a.block_mask() == 0)
        .collect();
    a.codim() - codim_of_join(&inside)
}

/// Codimension of the join of one-block partitions given by `blocks`:
/// the sum of `|B| - 1` over the maximal blocks.  The blocks come from a
/// nested set, so the maximal ones are pairwise disjoint.
fn codim_of_join(blocks: &[u64]) -> usize {
    blocks
        .iter()
        .filter(|&&m| {
            !blocks
                .iter()
                .any(|&other| other != m && m & !other == 0)
        })
        .map(|&m| m.count_ones() as usize - 1)
        .sum()
}

/// Walk every admissible support of `building`: nested subsets in which
/// each element has allowance ≥ 2.  The callback receives, per element,
/// the index into the canonically sorted building list and the allowance.
///
/// Elements are inserted in canonical order (block size ascending), so
/// every support block strictly inside a block is already present when
/// the larger block is considered, and the allowance computed at
/// insertion is final.
fn for_each_admissible_support<F: FnMut(&[(usize, usize)])>(
    sorted: &[BuildingElement],
    callback: &mut F,
) {
    fn rec<F: FnMut(&[(usize, usize)])>(
        sorted: &[BuildingElement],
        start: usize,
        chosen: &mut Vec<(usize, usize)>,
        callback: &mut F,
    ) {
        callback(chosen);
        for i in start..sorted.len() {
            let e = &sorted[i];
            if !chosen
                .iter()
                .all(|&(j, _)| sorted[j].comparable_or_disjoint(e))
            {
                continue;
            }
            let inside: Vec<u64> = chosen
                .iter()
                .map(|&(j, _)| sorted[j].block_mask())
                .filter(|&m| m & !e.block_mask() == 0)
                .collect();
            let allow = e.codim() - codim_of_join(&inside);
            if allow >= 2 {
                chosen.push((i, allow));
                rec(sorted, i + 1, chosen, callback);
                chosen.pop();
            }
        }
    }
    let mut chosen = Vec::new();
    rec(sorted, 0, &mut chosen, callback);
}

fn canonical(building: &[BuildingElement]) -> Vec<BuildingElement> {
    let mut sorted = building.to_vec();
    sorted.sort();
    sorted
}

/// Every admissible function over `building`, `f ≡ 0` included, each
/// exactly once.  Supports are visited depth-first in canonical order and
/// exponent tuples lexicographically, so the output order is
/// deterministic.
pub fn enumerate_admissible(
    building: &[BuildingElement],
    ambient: AmbientKind,
) -> Result<Vec<AdmissibleFunction>> {
    for e in building {
        if e.ambient() != ambient {
            return Err(Error::InvalidBuilding(format!(
                "building element {:?} lives in {:?}, not {ambient:?}",
                e.block_labels(),
                e.ambient()
            )));
        }
    }
    let sorted = canonical(building);
    let mut out = Vec::new();
    for_each_admissible_support(&sorted, &mut |chosen| {
        // Spread every exponent combination, lexicographically.
        let elements: Vec<BuildingElement> =
            chosen.iter().map(|&(i, _)| sorted[i].clone()).collect();
        let support = NestedSet::new(elements).expect("supports are nested by construction");
        let mut exps: Vec<u32> = vec![1; chosen.len()];
        loop {
            out.push(AdmissibleFunction {
                support: support.clone(),
                exponents: exps.clone(),
                ambient,
            });
            // Odometer over 1..=allowance-1 per position.
            let mut pos = chosen.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                if (exps[pos] as usize) < chosen[pos].1 - 1 {
                    exps[pos] += 1;
                    for e in exps[pos + 1..].iter_mut() {
                        *e = 1;
                    }
                    break;
                }
            }
        }
    });
    Ok(out)
}

/// The number of blocks of the partition generated by the support of `f`
/// on a graph with `n` vertices: `n - Σ (|B| - 1)` over the maximal
/// support blocks.
///
/// This is the rank of the fan attached to `f` on the toric side: the
/// model contributes `A_k(q)/q` for the corresponding permutohedral
/// variety.  The equality of the two model polynomials over every tested
/// graph is what certifies this rule.
pub fn k_of_admissible(f: &AdmissibleFunction, n: usize) -> usize {
    let blocks: Vec<u64> = f
        .support()
        .elements()
        .iter()
        .map(BuildingElement::block_mask)
        .collect();
    n - codim_of_join(&blocks)
}

/// Poincaré polynomial of the linear wonderful model of a cone graph:
/// `Σ_f q^{Σ f}` over the admissible functions of `building`.
pub fn poincare_hyperplane(coned: &Graph, building: &[BuildingElement]) -> Result<QPoly> {
    if !coned.has_label(0) {
        return Err(Error::InvalidGraph(
            "the linear model is computed on a cone graph (apex 0 missing); \
             cone the graph first"
                .into(),
        ));
    }
    let ambient = AmbientKind::ConedLinear(coned.vertex_count() - 1);
    ambient.check_graph(coned)?;
    check_building_ambient(building, ambient)?;
    let sorted = canonical(building);
    let mut total = QPoly::zero();
    for_each_admissible_support(&sorted, &mut |chosen| {
        total += &support_factor(chosen);
    });
    Ok(total)
}

/// Poincaré polynomial of the toric wonderful model of `g`:
/// `Σ_f q^{Σ f} · A_{k(f)}(q)/q` over the admissible functions.
pub fn poincare_toric(g: &Graph, building: &[BuildingElement]) -> Result<QPoly> {
    let n = g.vertex_count();
    let ambient = AmbientKind::Torus(n);
    ambient.check_graph(g)?;
    check_building_ambient(building, ambient)?;
    let sorted = canonical(building);
    let mut total = QPoly::zero();
    for_each_admissible_support(&sorted, &mut |chosen| {
        let blocks: Vec<u64> = chosen.iter().map(|&(i, _)| sorted[i].block_mask()).collect();
        let k = n - codim_of_join(&blocks);
        let eulerian_part = eulerian_poly(k)
            .div_q()
            .expect("A_k has zero constant term for k >= 1");
        total += &(&support_factor(chosen) * &eulerian_part);
    });
    Ok(total)
}

/// `Π_A (q + q² + ... + q^{allowance(A)-1})`: the generating polynomial
/// of all exponent choices on a fixed support.
fn support_factor(chosen: &[(usize, usize)]) -> QPoly {
    let mut acc = QPoly::one();
    for &(_, allow) in chosen {
        acc = &acc * &QPoly::geometric_range(1, allow - 1);
    }
    acc
}

fn check_building_ambient(building: &[BuildingElement], ambient: AmbientKind) -> Result<()> {
    match building.iter().find(|e| e.ambient() != ambient) {
        None => Ok(()),
        Some(e) => Err(Error::InvalidBuilding(format!(
            "building element {:?} lives in {:?}, expected {ambient:?}",
            e.block_labels(),
            e.ambient()
        ))),
    }
}

/// The two sides of the model comparison for one graph.
#[derive(Debug, Clone)]
pub struct ModelIsoReport {
    pub toric: QPoly,
    pub hyper: QPoly,
    pub equal: bool,
}

/// Compute both Poincaré polynomials for `g` — toric model of `g`, linear
/// model of `cone(g)` — and compare.  They must be equal for every graph;
/// an inequality would falsify either the model isomorphism or the
/// `k`-rule of [`k_of_admissible`].
pub fn verify_model_iso(g: &Graph) -> Result<ModelIsoReport> {
    let n = g.vertex_count();
    let gs = building_set(g, AmbientKind::Torus(n))?;
    let toric = poincare_toric(g, &gs)?;
    let cone = g.cone()?;
    let gs_hat = cone_building_set(g)?;
    let hyper = poincare_hyperplane(&cone, &gs_hat)?;
    let equal = toric == hyper;
    Ok(ModelIsoReport {
        toric,
        hyper,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;
    use num_bigint::BigInt;

    fn torus_building(g: &Graph) -> Vec<BuildingElement> {
        building_set(g, AmbientKind::Torus(g.vertex_count())).unwrap()
    }

    #[test]
    fn allowance_examples() {
        // Full block of cone(K_2) alone in its support: codim 2.
        let amb = AmbientKind::ConedLinear(2);
        let full = BuildingElement::new(&[0, 1, 2], amb).unwrap();
        let support = NestedSet::new(vec![full.clone()]).unwrap();
        assert_eq!(allowance(&full, &support, amb), 2);

        // A block of size 2 never has room for an exponent.
        let amb3 = AmbientKind::Torus(3);
        let h12 = BuildingElement::new(&[1, 2], amb3).unwrap();
        let s = NestedSet::new(vec![h12.clone()]).unwrap();
        assert_eq!(allowance(&h12, &s, amb3), 1);

        // A contained support element eats allowance: codim 2 - codim 1.
        let amb4 = AmbientKind::Torus(4);
        let h12 = BuildingElement::new(&[1, 2], amb4).unwrap();
        let h123 = BuildingElement::new(&[1, 2, 3], amb4).unwrap();
        let s = NestedSet::new(vec![h12.clone(), h123.clone()]).unwrap();
        assert_eq!(allowance(&h123, &s, amb4), 1);
        // Without the small block the allowance is the full codim.
        let s2 = NestedSet::new(vec![h123.clone()]).unwrap();
        assert_eq!(allowance(&h123, &s2, amb4), 2);
    }

    #[test]
    fn admissible_enumeration_small_cases() {
        // cone(K_2): only f ≡ 0 and the full block with exponent 1.
        let g = Graph::complete(2).unwrap();
        let bs = cone_building_set(&g).unwrap();
        let fns = enumerate_admissible(&bs, AmbientKind::ConedLinear(2)).unwrap();
        assert_eq!(fns.len(), 2);
        let degrees: Vec<usize> = fns.iter().map(AdmissibleFunction::degree).collect();
        assert_eq!(degrees, vec![0, 1]);

        // Edgeless: no building elements at all, only f ≡ 0.
        let e3 = Graph::edgeless(3).unwrap();
        let fns = enumerate_admissible(&torus_building(&e3), AmbientKind::Torus(3)).unwrap();
        assert_eq!(fns.len(), 1);
        assert_eq!(fns[0], AdmissibleFunction::zero(AmbientKind::Torus(3)));

        // P_3: the two edge blocks have allowance 1 and never enter.
        let p3 = Graph::path(3).unwrap();
        let fns = enumerate_admissible(&torus_building(&p3), AmbientKind::Torus(3)).unwrap();
        assert_eq!(fns.len(), 2);
        assert_eq!(fns[1].to_string(), "{1 2 3}^1");
    }

    #[test]
    fn size_two_blocks_never_in_support() {
        for text in ["complete:4", "cycle:5", "cone:complete:3"] {
            let g = parse_graph(text).unwrap();
            let (bs, amb) = if g.has_label(0) {
                let n = g.vertex_count() - 1;
                (
                    building_set(&g, AmbientKind::ConedLinear(n)).unwrap(),
                    AmbientKind::ConedLinear(n),
                )
            } else {
                (torus_building(&g), AmbientKind::Torus(g.vertex_count()))
            };
            for f in enumerate_admissible(&bs, amb).unwrap() {
                assert!(
                    f.support().elements().iter().all(|e| e.block_size() >= 3),
                    "{text}: {f}"
                );
            }
        }
    }

    #[test]
    fn admissible_function_constructor_validates() {
        let amb = AmbientKind::Torus(4);
        let h1234 = BuildingElement::new(&[1, 2, 3, 4], amb).unwrap();
        let support = NestedSet::new(vec![h1234.clone()]).unwrap();
        assert!(AdmissibleFunction::new(support.clone(), vec![1], amb).is_ok());
        assert!(AdmissibleFunction::new(support.clone(), vec![2], amb).is_ok());
        assert!(AdmissibleFunction::new(support.clone(), vec![3], amb).is_err());
        assert!(AdmissibleFunction::new(support.clone(), vec![0], amb).is_err());
        assert!(AdmissibleFunction::new(support, vec![1, 1], amb).is_err());
    }

    #[test]
    fn hyperplane_poincare_known_values() {
        let k2 = Graph::complete(2).unwrap();
        let p = poincare_hyperplane(&k2.cone().unwrap(), &cone_building_set(&k2).unwrap())
            .unwrap();
        assert_eq!(p, QPoly::from_i64_coeffs(&[1, 1]));

        // cone(K_3) = K_4: the minimal projective model of the A_3
        // braid arrangement has Betti numbers 1, 5, 1.
        let k3 = Graph::complete(3).unwrap();
        let p = poincare_hyperplane(&k3.cone().unwrap(), &cone_building_set(&k3).unwrap())
            .unwrap();
        assert_eq!(p, QPoly::from_i64_coeffs(&[1, 5, 1]));

        // Coning an edgeless graph gives the Boolean star: A_n(q)/q.
        for n in 2..=5u32 {
            let g = Graph::edgeless(n).unwrap();
            let p = poincare_hyperplane(&g.cone().unwrap(), &cone_building_set(&g).unwrap())
                .unwrap();
            assert_eq!(
                p,
                eulerian_poly(n as usize).div_q().unwrap(),
                "edgeless n = {n}"
            );
        }

        // A plain graph is rejected.
        assert!(poincare_hyperplane(&k3, &torus_building(&k3)).is_err());
    }

    #[test]
    fn toric_poincare_known_values() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(
            poincare_toric(&k2, &torus_building(&k2)).unwrap(),
            QPoly::from_i64_coeffs(&[1, 1])
        );
        let p3 = Graph::path(3).unwrap();
        assert_eq!(
            poincare_toric(&p3, &torus_building(&p3)).unwrap(),
            QPoly::from_i64_coeffs(&[1, 5, 1])
        );
        let k21 = Graph::disjoint_complete(2, 1).unwrap();
        assert_eq!(
            poincare_toric(&k21, &torus_building(&k21)).unwrap(),
            QPoly::from_i64_coeffs(&[1, 4, 1])
        );
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            poincare_toric(&k3, &torus_building(&k3)).unwrap(),
            QPoly::from_i64_coeffs(&[1, 5, 1])
        );
    }

    #[test]
    fn k_rule() {
        let p3 = Graph::path(3).unwrap();
        let fns = enumerate_admissible(&torus_building(&p3), AmbientKind::Torus(3)).unwrap();
        assert_eq!(k_of_admissible(&fns[0], 3), 3); // f ≡ 0
        assert_eq!(k_of_admissible(&fns[1], 3), 1); // support {1,2,3}
    }

    #[test]
    fn model_iso_spot_checks() {
        for text in [
            "complete:2",
            "path:3",
            "complete:3",
            "complete:4",
            "cycle:4",
            "edgeless:4",
            "disjoint-complete:2,2",
        ] {
            let g = parse_graph(text).unwrap();
            let report = verify_model_iso(&g).unwrap();
            assert!(
                report.equal,
                "{text}: toric {} vs hyper {}",
                report.toric, report.hyper
            );
            assert!(report.toric.is_palindromic(), "{text}");
            assert_eq!(report.toric.coeff(0), BigInt::from(1), "{text}");
        }
    }

    #[test]
    fn enumeration_agrees_with_polynomial_aggregation() {
        // Summing q^deg · A_k/q function by function must give the same
        // polynomial as the per-support product aggregation — two routes.
        for text in ["complete:4", "cycle:4", "disjoint-complete:2,2"] {
            let g = parse_graph(text).unwrap();
            let n = g.vertex_count();
            let bs = torus_building(&g);
            let direct = poincare_toric(&g, &bs).unwrap();
            let mut by_functions = QPoly::zero();
            for f in enumerate_admissible(&bs, AmbientKind::Torus(n)).unwrap() {
                let a_k = eulerian_poly(k_of_admissible(&f, n)).div_q().unwrap();
                by_functions += &a_k.shift_up(f.degree());
            }
            assert_eq!(direct, by_functions, "{text}");
        }
    }
}

//! End-to-end acceptance suite: every structural identity the crate
//! claims, checked exhaustively on small inputs and on seeded random
//! inputs.  Each test prints one PASS line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::collections::HashSet;

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wonder::buildingset::{
    building_order_failure, building_set, cone_building_set, is_building_elements,
    is_building_order, order_by_inclusion, order_toric_style, AmbientKind, BuildingElement,
};
use wonder::cohomology::{poincare_hyperplane, poincare_toric, verify_model_iso};
use wonder::forests::{
    enumerate_admissible_forests, enumerate_special_forests, special_forest_to_triple,
    triple_to_special_forest, AdmissibleForest, AdmissibleTree,
};
use wonder::graphs::{enumerate_graphs, graph_from_edge_mask, Graph};
use wonder::linoracle::verify_lattice_iso;
use wonder::permstats::{eulerian_poly, lec, lec_distribution, NumberList};
use wonder::qpoly::QPoly;
use wonder::series::{extract_lec_identity, lambda_series, phi_hyper, phi_toric};

fn random_graphs(n: u32, count: usize, rng: &mut ChaCha8Rng) -> Vec<Graph> {
    let pairs = n * (n - 1) / 2;
    (0..count)
        .map(|_| graph_from_edge_mask(n, rng.next_u64() & ((1u64 << pairs) - 1)))
        .collect()
}

#[test]
fn criterion_1_model_isomorphism() {
    // Toric model of Γ and linear model of cone(Γ) have equal Poincaré
    // polynomials: every labeled graph on 2..=5 vertices, then 200
    // seeded random graphs on 6 and 7 vertices.
    let mut checked = 0usize;
    for n in 2..=5 {
        for g in enumerate_graphs(n) {
            let report = verify_model_iso(&g).unwrap();
            assert!(
                report.equal,
                "n = {n}, edges {:?}: toric {} vs linear {}",
                g.edges(),
                report.toric,
                report.hyper
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 2 + 8 + 64 + 1024);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for n in [6u32, 7] {
        for g in random_graphs(n, 100, &mut rng) {
            let report = verify_model_iso(&g).unwrap();
            assert!(
                report.equal,
                "n = {n}, edges {:?}: toric {} vs linear {}",
                g.edges(),
                report.toric,
                report.hyper
            );
            checked += 1;
        }
    }
    println!("PASS: model isomorphism on {checked} graphs (all n <= 5 plus 200 random n in 6..7)");
}

#[test]
fn criterion_2_lec_is_eulerian() {
    for l in 1..=8 {
        assert_eq!(
            lec_distribution(l),
            eulerian_poly(l).div_q().unwrap(),
            "l = {l}"
        );
    }
    println!("PASS: lec distribution equals A_l(q)/q for all l <= 8 (exhaustive sweeps)");
}

#[test]
fn criterion_3_lambda_series() {
    let lambda = lambda_series(7).unwrap();
    // Leading cells, written out by hand: t + q t^3/3! + (q+q^2) t^4/4!.
    let expected_low: Vec<QPoly> = vec![
        QPoly::zero(),
        QPoly::one(),
        QPoly::zero(),
        QPoly::from_i64_coeffs(&[0, 1]),
        QPoly::from_i64_coeffs(&[0, 1, 1]),
    ];
    for (k, want) in expected_low.iter().enumerate() {
        assert_eq!(lambda.coeff(k).to_int().unwrap(), *want, "cell {k}");
    }
    // Independent oracle through t^7: admissible functions over the
    // complete graph whose support contains the full block are exactly
    // the single-tree forests.
    for k in 2..=7usize {
        let g = Graph::complete(k as u32).unwrap();
        let amb = AmbientKind::Torus(k);
        let bs = building_set(&g, amb).unwrap();
        let full: Vec<u32> = (1..=k as u32).collect();
        let full_block = BuildingElement::new(&full, amb).unwrap();
        let mut oracle = QPoly::zero();
        for f in wonder::cohomology::enumerate_admissible(&bs, amb).unwrap() {
            if f.support().elements().contains(&full_block) {
                oracle += &QPoly::one().shift_up(f.degree());
            }
        }
        assert_eq!(lambda.coeff(k).to_int().unwrap(), oracle, "cell {k}");
    }
    println!("PASS: lambda matches the written-out expansion to t^4 and the function-counting oracle to t^7");
}

#[test]
fn criterion_4_series_equality() {
    // Three computation paths for each cell (n, m) with n + m <= 7:
    // the toric series, the linear-model series, and the direct model
    // Poincaré polynomials of K_n ⊔ K_m.
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    for nx in 1..=6usize {
        let ny = 7 - nx;
        let toric = phi_toric(nx, ny).unwrap();
        let hyper = phi_hyper(nx, ny).unwrap();
        assert_eq!(toric, hyper, "orders ({nx}, {ny})");
        for a in 1..=nx {
            for b in 1..=ny {
                if !done.insert((a, b)) {
                    continue;
                }
                let cell = toric.coeff(a, b).to_int().unwrap();
                let g = Graph::disjoint_complete(a as u32, b as u32).unwrap();
                let amb = AmbientKind::Torus(a + b);
                let direct_toric =
                    poincare_toric(&g, &building_set(&g, amb).unwrap()).unwrap();
                assert_eq!(cell, direct_toric, "toric cell ({a}, {b})");
                let direct_hyper = poincare_hyperplane(
                    &g.cone().unwrap(),
                    &cone_building_set(&g).unwrap(),
                )
                .unwrap();
                assert_eq!(cell, direct_hyper, "linear cell ({a}, {b})");
            }
        }
    }
    // And composing back with the reverted tree series exposes the
    // lec-Eulerian identity for every total degree.
    for (l, (toric, hyper)) in extract_lec_identity(7).unwrap().into_iter().enumerate() {
        let total = l + 2;
        assert_eq!(toric, hyper, "total {total}");
        assert_eq!(toric, eulerian_poly(total).div_q().unwrap(), "total {total}");
    }
    println!("PASS: phi series agree with each other and with direct model polynomials for n+m <= 7");
}

#[test]
fn criterion_5_bijection() {
    use itertools::Itertools;
    // Exhaustive round trips and per-degree cardinality for n, m <= 3.
    for n in 1..=3u32 {
        for m in 1..=3u32 {
            let forests1 = enumerate_admissible_forests(n).unwrap();
            let forests2 = enumerate_admissible_forests(m).unwrap();
            let mut by_degree_triples = QPoly::zero();
            let mut images = HashSet::new();
            for f1 in &forests1 {
                for f2 in &forests2 {
                    let l = f1.tree_count() + f2.tree_count();
                    for perm in (1..=l as u32).permutations(l) {
                        let s = NumberList::new(perm).unwrap();
                        let sf = triple_to_special_forest(f1, f2, &s).unwrap();
                        assert_eq!(sf.degree(), f1.degree() + f2.degree() + lec(&s));
                        let (g1, g2, t) = special_forest_to_triple(&sf).unwrap();
                        assert_eq!((&g1, &g2, &t), (f1, f2, &s));
                        by_degree_triples += &QPoly::one().shift_up(sf.degree());
                        images.insert(sf.to_json_value().to_string());
                    }
                }
            }
            let all = enumerate_special_forests(n, m).unwrap();
            assert_eq!(images.len(), all.len(), "({n}, {m}): not onto");
            let mut by_degree_forests = QPoly::zero();
            for sf in &all {
                by_degree_forests += &QPoly::one().shift_up(sf.degree());
                let (g1, g2, t) = special_forest_to_triple(sf).unwrap();
                assert_eq!(&triple_to_special_forest(&g1, &g2, &t).unwrap(), sf);
            }
            assert_eq!(by_degree_triples, by_degree_forests, "({n}, {m})");
        }
    }
    // 1000 seeded random round trips with n, m <= 5.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let pools: Vec<Vec<AdmissibleForest>> = (1..=5)
        .map(|n| enumerate_admissible_forests(n).unwrap())
        .collect();
    for _ in 0..1000 {
        let n = 1 + (rng.next_u32() % 5) as usize;
        let m = 1 + (rng.next_u32() % 5) as usize;
        let f1 = &pools[n - 1][rng.next_u32() as usize % pools[n - 1].len()];
        let f2 = &pools[m - 1][rng.next_u32() as usize % pools[m - 1].len()];
        let l = f1.tree_count() + f2.tree_count();
        let mut perm: Vec<u32> = (1..=l as u32).collect();
        for i in (1..l).rev() {
            perm.swap(i, rng.next_u32() as usize % (i + 1));
        }
        let s = NumberList::new(perm).unwrap();
        let sf = triple_to_special_forest(f1, f2, &s).unwrap();
        assert_eq!(sf.degree(), f1.degree() + f2.degree() + lec(&s));
        let (g1, g2, t) = special_forest_to_triple(&sf).unwrap();
        assert_eq!((&g1, &g2, &t), (f1, f2, &s));
    }
    // The worked instance: σ = [1,5,6,7,3,8,2,4] on two four-tree
    // forests produces the documented chain (exponents 1 over 2 from the
    // root) with trees 1, 5, 6 detached.
    let star = |labels: &[u32], e: u32| {
        AdmissibleTree::node(
            e,
            labels
                .iter()
                .map(|&v| AdmissibleTree::leaf(v).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let f1 = AdmissibleForest::from_trees(vec![
        star(&[1, 2, 3], 1),
        AdmissibleTree::leaf(4).unwrap(),
        star(&[5, 6, 7], 1),
        AdmissibleTree::leaf(8).unwrap(),
    ])
    .unwrap();
    let f2 = AdmissibleForest::from_trees(vec![
        star(&[1, 2, 3, 4], 1),
        star(&[5, 6, 7], 1),
        AdmissibleTree::leaf(8).unwrap(),
        AdmissibleTree::leaf(9).unwrap(),
    ])
    .unwrap();
    let s = NumberList::new(vec![1, 5, 6, 7, 3, 8, 2, 4]).unwrap();
    let sf = triple_to_special_forest(&f1, &f2, &s).unwrap();
    let apex_tree = sf
        .forest()
        .trees()
        .iter()
        .find(|t| t.leaf_mask() & 1 != 0)
        .unwrap();
    assert_eq!(apex_tree.exponent(), Some(1), "root chain vertex");
    let inner = apex_tree
        .children()
        .iter()
        .find(|c| c.leaf_mask() & 1 != 0)
        .unwrap();
    assert_eq!(inner.exponent(), Some(2), "inner chain vertex");
    let detached: HashSet<u64> = sf
        .forest()
        .trees()
        .iter()
        .filter(|t| t.leaf_mask() & 1 == 0)
        .map(|t| t.leaf_mask())
        .collect();
    let tau1 = star(&[1, 2, 3], 1).leaf_mask();
    let tau5 = star(&[9, 10, 11, 12], 1).leaf_mask();
    let tau6 = star(&[13, 14, 15], 1).leaf_mask();
    assert_eq!(detached, HashSet::from([tau1, tau5, tau6]));
    println!("PASS: bijection round-trips exhaustively (n,m <= 3), on 1000 random triples (n,m <= 5), and on the worked instance");
}

#[test]
fn criterion_6_lattice_oracle() {
    let mut checked = 0usize;
    for n in 2..=5 {
        for g in enumerate_graphs(n) {
            let report = verify_lattice_iso(&g);
            assert!(
                report.ok,
                "n = {n}, edges {:?}: {}",
                g.edges(),
                report.failure.unwrap_or_default()
            );
            checked += 1;
        }
    }
    println!("PASS: partition poset matches the intersection lattice (orders and codimensions) on {checked} graphs");
}

#[test]
fn criterion_7_building_machinery() {
    // The one-block construction is a building set for every graph on
    // up to 6 vertices, and coning commutes with building.
    for n in 2..=6 {
        for g in enumerate_graphs(n) {
            let amb = AmbientKind::Torus(n as usize);
            let bs = building_set(&g, amb).unwrap();
            assert!(
                is_building_elements(&bs, &g).unwrap(),
                "n = {n}, edges {:?}",
                g.edges()
            );
            let via_cone = building_set(
                &g.cone().unwrap(),
                AmbientKind::ConedLinear(n as usize),
            )
            .unwrap();
            assert_eq!(
                cone_building_set(&g).unwrap(),
                via_cone,
                "n = {n}, edges {:?}",
                g.edges()
            );
        }
    }
    // Both canonical orders are valid blow-up orders on every graph on
    // up to 5 vertices (checked on the cone side, where blow-ups happen).
    for n in 2..=5 {
        for g in enumerate_graphs(n) {
            let cone = g.cone().unwrap();
            let bs = cone_building_set(&g).unwrap();
            for order in [order_by_inclusion(&bs), order_toric_style(&bs)] {
                assert!(
                    is_building_order(&order, &cone).unwrap(),
                    "n = {n}, edges {:?}",
                    g.edges()
                );
            }
        }
    }
    // And the known bad order on cone(K_2) is rejected at the right
    // prefix: blowing up a same-size block before the one that contains
    // the growing intersection fails.
    let k2 = Graph::complete(2).unwrap();
    let cone = k2.cone().unwrap();
    let amb = AmbientKind::ConedLinear(2);
    let bad: Vec<BuildingElement> = [vec![0, 1, 2], vec![0, 1], vec![0, 2], vec![1, 2]]
        .iter()
        .map(|b| BuildingElement::new(b, amb).unwrap())
        .collect();
    let reordered = vec![bad[1].clone(), bad[2].clone(), bad[3].clone(), bad[0].clone()];
    assert_eq!(
        building_order_failure(&reordered, &cone).unwrap(),
        Some(3),
        "three size-2 blocks before the full block must fail"
    );
    println!("PASS: building sets verified for n <= 6, cone compatibility for n <= 6, canonical orders for n <= 5, counterexample rejected");
}

#[test]
fn criterion_8_palindromicity() {
    for n in 2..=5 {
        for g in enumerate_graphs(n) {
            let report = verify_model_iso(&g).unwrap();
            assert!(
                report.toric.is_palindromic(),
                "toric, n = {n}, edges {:?}: {}",
                g.edges(),
                report.toric
            );
            assert!(
                report.hyper.is_palindromic(),
                "linear, n = {n}, edges {:?}: {}",
                g.edges(),
                report.hyper
            );
        }
    }
    println!("PASS: every model Poincaré polynomial on n <= 5 is palindromic");
}

#[test]
fn criterion_9_known_values() {
    // cone(K_3) = K_4: the linear model has Poincaré 1 + 5q + q²,
    // matching the toric model of K_3.
    let k3 = Graph::complete(3).unwrap();
    let hyper = poincare_hyperplane(&k3.cone().unwrap(), &cone_building_set(&k3).unwrap())
        .unwrap();
    assert_eq!(hyper, QPoly::from_i64_coeffs(&[1, 5, 1]));
    let amb = AmbientKind::Torus(3);
    let toric = poincare_toric(&k3, &building_set(&k3, amb).unwrap()).unwrap();
    assert_eq!(toric, hyper);
    // Coned edgeless graphs give Eulerian numerators: A_n(q)/q.
    for n in 2..=6u32 {
        let g = Graph::edgeless(n).unwrap();
        let p = poincare_hyperplane(&g.cone().unwrap(), &cone_building_set(&g).unwrap())
            .unwrap();
        assert_eq!(p, eulerian_poly(n as usize).div_q().unwrap(), "n = {n}");
    }
    println!("PASS: known values reproduced (cone K_3 -> 1+5q+q^2 = toric K_3; coned edgeless -> A_n/q for n <= 6)");
}

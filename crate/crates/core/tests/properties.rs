//! Randomized property tests: algebraic laws and cross-checks that
//! should hold on arbitrary inputs, not just the curated examples.

use proptest::prelude::*;

use wonder::buildingset::{building_set, is_nested, is_nested_by_factors, AmbientKind, BuildingElement};
use wonder::cohomology::poincare_toric;
use wonder::graphs::{graph_from_edge_mask, graph_from_json, parse_graph, Graph};
use wonder::partitions::enumerate_connected_partitions;
use wonder::permstats::{hook_factorization, hook_with_inversions, lec, NumberList};
use wonder::qpoly::QPoly;

/// An ordered list of distinct positive integers.
fn distinct_list() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::btree_set(1u32..=200, 0..=9)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_shuffle()
}

fn edge_mask_graph(n: u32, mask: u64) -> Graph {
    let pairs = n * (n - 1) / 2;
    graph_from_edge_mask(n, mask & ((1u64 << pairs) - 1))
}

/// Palindromic coefficient vector built by mirroring a nonzero half.
fn palindrome() -> impl Strategy<Value = QPoly> {
    (1i64..=9, proptest::collection::vec(-9i64..=9, 0..=4)).prop_map(|(first, rest)| {
        let mut half = vec![first];
        half.extend(rest);
        let mut coeffs = half.clone();
        coeffs.extend(half.iter().rev().skip(1));
        QPoly::from_i64_coeffs(&coeffs)
    })
}

proptest! {
    #[test]
    fn hook_factorization_recombines(list in distinct_list()) {
        let w = NumberList::new(list.clone()).unwrap();
        let fact = hook_factorization(&w);
        let prefix = fact.prefix.values();
        prop_assert!(prefix.windows(2).all(|p| p[0] < p[1]), "prefix not increasing");
        let mut rebuilt = prefix.to_vec();
        let mut total_inversions = 0usize;
        for hook in &fact.hooks {
            prop_assert!(hook.is_hook());
            prop_assert!(hook.inversion_count() >= 1);
            rebuilt.extend_from_slice(hook.values());
            total_inversions += hook.inversion_count();
        }
        prop_assert_eq!(rebuilt, list);
        prop_assert_eq!(lec(&w), total_inversions);
        prop_assert_eq!(lec(&w) == 0, w.values().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn hook_construction_roundtrips(
        set in proptest::collection::btree_set(1u32..=200, 2..=10),
        pick in any::<u64>(),
    ) {
        let values: Vec<u32> = set.into_iter().collect();
        let i = 1 + (pick as usize) % (values.len() - 1);
        let hook = hook_with_inversions(&values, i).unwrap();
        prop_assert!(hook.is_hook());
        prop_assert_eq!(hook.inversion_count(), i);
        let mut sorted = hook.values().to_vec();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, values);
        let fact = hook_factorization(&hook);
        prop_assert!(fact.prefix.is_empty());
        prop_assert_eq!(fact.hooks, vec![hook]);
    }

    #[test]
    fn graph_json_roundtrips(n in 2u32..=7, mask in any::<u64>()) {
        let g = edge_mask_graph(n, mask);
        let v = g.to_json_value().unwrap();
        prop_assert_eq!(graph_from_json(&v).unwrap(), g);
    }

    #[test]
    fn family_strings_parse_to_constructors(n in 2u32..=6, m in 2u32..=4) {
        prop_assert_eq!(parse_graph(&format!("complete:{n}")).unwrap(), Graph::complete(n).unwrap());
        prop_assert_eq!(parse_graph(&format!("path:{n}")).unwrap(), Graph::path(n).unwrap());
        prop_assert_eq!(parse_graph(&format!("edgeless:{n}")).unwrap(), Graph::edgeless(n).unwrap());
        prop_assert_eq!(
            parse_graph(&format!("disjoint-complete:{n},{m}")).unwrap(),
            Graph::disjoint_complete(n, m).unwrap()
        );
        prop_assert_eq!(
            parse_graph(&format!("cone:path:{n}")).unwrap(),
            Graph::path(n).unwrap().cone().unwrap()
        );
    }

    #[test]
    fn cone_adds_one_edge_per_vertex_and_connects(n in 2u32..=7, mask in any::<u64>()) {
        let g = edge_mask_graph(n, mask);
        let cone = g.cone().unwrap();
        prop_assert_eq!(cone.edges().len(), g.edges().len() + g.labels().len());
        // Connectivity: the all-vertex block is an element of the cone's
        // building set exactly when the cone is connected.
        let amb = AmbientKind::ConedLinear(n as usize);
        let full: Vec<u32> = (0..=n).collect();
        let full_elem = BuildingElement::new(&full, amb).unwrap();
        prop_assert!(building_set(&cone, amb).unwrap().contains(&full_elem));
    }

    #[test]
    fn qpoly_ring_laws(
        a in proptest::collection::vec(-9i64..=9, 0..=5),
        b in proptest::collection::vec(-9i64..=9, 0..=5),
        c in proptest::collection::vec(-9i64..=9, 0..=5),
    ) {
        let a = QPoly::from_i64_coeffs(&a);
        let b = QPoly::from_i64_coeffs(&b);
        let c = QPoly::from_i64_coeffs(&c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn palindromic_product_is_palindromic(p in palindrome(), r in palindrome()) {
        prop_assert!(p.is_palindromic());
        prop_assert!(r.is_palindromic());
        prop_assert!((&p * &r).is_palindromic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_commutes_and_coarsens(
        n in 2u32..=5,
        mask in any::<u64>(),
        i in any::<u64>(),
        j in any::<u64>(),
    ) {
        let g = edge_mask_graph(n, mask);
        let parts = enumerate_connected_partitions(&g);
        let p = &parts[(i % parts.len() as u64) as usize];
        let r = &parts[(j % parts.len() as u64) as usize];
        let join = p.join(r).unwrap();
        prop_assert_eq!(&join, &r.join(p).unwrap());
        prop_assert!(p.refines(&join));
        prop_assert!(r.refines(&join));
        prop_assert!(join.codim() >= p.codim().max(r.codim()));
    }

    #[test]
    fn nested_checkers_agree(n in 2u32..=5, mask in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = edge_mask_graph(n, mask);
        let bs = building_set(&g, AmbientKind::Torus(n as usize)).unwrap();
        // AND of two selectors biases towards small subsets, which have a
        // real chance of being nested; both answers must agree either way.
        let selector = s1 & s2;
        let subset: Vec<BuildingElement> = bs
            .iter()
            .enumerate()
            .filter(|(k, _)| selector >> k & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        prop_assert_eq!(is_nested(&subset), is_nested_by_factors(&subset, &g));
    }

    #[test]
    fn toric_poincare_shape(n in 2u32..=5, mask in any::<u64>()) {
        let g = edge_mask_graph(n, mask);
        let p = poincare_toric(&g, &building_set(&g, AmbientKind::Torus(n as usize)).unwrap()).unwrap();
        prop_assert_eq!(p.coeff(0), 1.into());
        prop_assert_eq!(p.coeffs().len(), n as usize, "degree must be n - 1");
        prop_assert!(p.is_palindromic());
    }
}

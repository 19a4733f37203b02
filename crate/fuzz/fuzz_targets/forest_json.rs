//! The tree, forest, and special-forest decoders must reject arbitrary
//! JSON cleanly and round-trip everything they accept.

#![no_main]

use libfuzzer_sys::fuzz_target;
use wonder::forests::{forest_from_json, special_forest_from_json, tree_from_json};

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(tree) = tree_from_json(&v) {
        let back = tree_from_json(&tree.to_json_value()).expect("tree JSON must reparse");
        assert_eq!(back, tree, "tree round trip must be the identity");
    }
    if let Ok(forest) = forest_from_json(&v) {
        let back = forest_from_json(&forest.to_json_value()).expect("forest JSON must reparse");
        assert_eq!(back, forest, "forest round trip must be the identity");
    }
    if let Ok(sf) = special_forest_from_json(&v) {
        let back =
            special_forest_from_json(&sf.to_json_value()).expect("special JSON must reparse");
        assert_eq!(back, sf, "special-forest round trip must be the identity");
    }
});

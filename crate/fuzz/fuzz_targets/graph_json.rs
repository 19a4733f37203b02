//! Arbitrary JSON fed to the graph decoder must be rejected cleanly or
//! produce a graph whose canonical form reparses to itself.

#![no_main]

use libfuzzer_sys::fuzz_target;
use wonder::graphs::graph_from_json;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    let Ok(g) = graph_from_json(&v) else {
        return;
    };
    let canonical = g.to_json_value().expect("decoded graphs are canonical");
    assert_eq!(
        graph_from_json(&canonical).expect("canonical JSON must reparse"),
        g,
        "round trip must be the identity"
    );
});

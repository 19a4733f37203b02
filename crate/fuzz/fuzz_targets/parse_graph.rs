//! Graph parsing (family strings and inline JSON) must never panic,
//! and every accepted canonical graph must survive a JSON round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use wonder::graphs::{graph_from_json, parse_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_graph(text) else {
        return;
    };
    // Cone graphs carry the apex label 0 and have no canonical JSON form.
    if let Ok(v) = g.to_json_value() {
        let back = graph_from_json(&v).expect("canonical JSON must reparse");
        assert_eq!(back, g, "round trip must be the identity");
    }
});

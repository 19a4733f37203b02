//! Number-list parsing must never panic, and on every accepted list the
//! hook factorization must concatenate back to the input with lec equal
//! to the total hook inversion count.

#![no_main]

use libfuzzer_sys::fuzz_target;
use wonder::permstats::{hook_factorization, lec, NumberList};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(list) = NumberList::parse(text) else {
        return;
    };
    let fact = hook_factorization(&list);
    let mut rebuilt = fact.prefix.values().to_vec();
    let mut inversions = 0;
    for hook in &fact.hooks {
        assert!(hook.is_hook(), "factor must be a hook");
        rebuilt.extend_from_slice(hook.values());
        inversions += hook.inversion_count();
    }
    assert_eq!(rebuilt, list.values(), "factors must concatenate to the input");
    assert_eq!(lec(&list), inversions, "lec must equal total hook inversions");
});

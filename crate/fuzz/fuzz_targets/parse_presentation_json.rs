//! Fuzzes the presentation JSON decoder: arbitrary JSON must decode or
//! error without panicking, and decoded presentations must round-trip.

#![no_main]

use invar::presentation::Presentation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(p) = Presentation::from_json(&value) {
        let encoded = p.to_json().unwrap();
        let back = Presentation::from_json(&encoded).unwrap();
        assert_eq!(back.generators, p.generators);
        assert_eq!(back.relations.len(), p.relations.len());
    }
});

//! Fuzzes the JSON polynomial decoder: arbitrary JSON must decode or
//! error without panicking, and decoded values must round-trip.

#![no_main]

use invar::gf::FieldCtx;
use invar::mpoly::BiPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    let field = FieldCtx::new(3, 1).unwrap();
    if let Ok(poly) = BiPoly::from_json(field.clone(), &value) {
        let back = BiPoly::from_json(field, &poly.to_json()).unwrap();
        assert_eq!(back, poly);
    }
});

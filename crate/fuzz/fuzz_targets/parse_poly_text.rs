//! Fuzzes the textual polynomial parser: arbitrary input must either
//! parse or return an error, never panic, and a successful parse must
//! survive a render/parse round trip.

#![no_main]

use invar::gf::FieldCtx;
use invar::mpoly::BiPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for (p, e, n) in [(2u64, 1u32, 2usize), (3, 1, 3), (2, 2, 2)] {
        let field = FieldCtx::new(p, e).unwrap();
        if let Ok(poly) = BiPoly::parse(field.clone(), n, text) {
            let back = BiPoly::parse(field, n, &poly.render()).unwrap();
            assert_eq!(back, poly);
        }
    }
});

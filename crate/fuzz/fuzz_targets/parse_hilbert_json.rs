//! Fuzzes the Hilbert-series JSON decoder, plus a bounded expansion of
//! whatever decodes successfully.

#![no_main]

use invar::hilbert::{expand, HilbertRational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(h) = HilbertRational::from_json(&value) {
        let back = HilbertRational::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        if h.numerator.len() <= 8 && h.denominator.len() <= 8 {
            let _ = expand(&h, 6, 6);
        }
    }
});

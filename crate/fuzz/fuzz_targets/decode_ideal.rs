//! Decoder must never panic, and accepted ideals must survive an
//! encode/decode round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(ideal) = ephi::json::decode_ideal(text) else {
        return;
    };
    let encoded = ephi::json::to_json(&ephi::json::ideal_to_doc(&ideal), false)
        .expect("accepted ideals re-encode");
    let again = ephi::json::decode_ideal(&encoded).expect("canonical encoding decodes");
    assert_eq!(again, ideal);
});

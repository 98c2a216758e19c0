//! Decoder must never panic, and accepted elements must survive an
//! encode/decode round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(element) = ephi::json::decode_element(text) else {
        return;
    };
    let encoded = ephi::json::to_json(&ephi::json::element_to_doc(&element), false)
        .expect("accepted elements re-encode");
    let again = ephi::json::decode_element(&encoded).expect("canonical encoding decodes");
    assert_eq!(again, element);
});

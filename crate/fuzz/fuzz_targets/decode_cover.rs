//! Decoder must never panic, and accepted covers must survive an
//! encode/decode round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cover) = ephi::json::decode_cover(text) else {
        return;
    };
    let encoded = ephi::json::to_json(&ephi::json::cover_to_doc(&cover), false)
        .expect("accepted covers re-encode");
    let again = ephi::json::decode_cover(&encoded).expect("canonical encoding decodes");
    assert_eq!(again, cover);
});
